//! Choi-type checkers: the normal-matrix Kadison extension and the two
//! Schwarz-type inequalities.

use serde::{Deserialize, Serialize};

use super::payload::WitnessPayload;
use super::{run_sampled, CheckResult};
use crate::eig::{sqrt_psd, Interval};
use crate::error::Result;
use crate::matrix::ComplexMatrix;
use crate::multilinear::MapDescriptor;
use crate::random::{random_contraction, random_hermitian, random_normal, random_positive};

/// `Phi(A*A...) >= Phi(A...) Phi(A*...)` and the swapped product, for
/// normal inputs.
pub fn check_choi_normal(
    map: &MapDescriptor,
    modulus: Interval,
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<CheckResult> {
    let map = map.clone();
    run_sampled(
        &format!("choi-normal/{}", map.label()),
        trials,
        seed,
        tol,
        move |rng| {
            let inputs = (0..map.arity)
                .map(|_| random_normal(map.input_dim, modulus, rng))
                .collect();
            Ok(WitnessPayload::ChoiNormal {
                map: map.clone(),
                inputs,
            })
        },
    )
}

/// Which Schwarz-type hypothesis to sample.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SchwarzVariant {
    /// Random Hermitian `H_i`:
    /// `Phi(H...) Phi(A...)^{-1} Phi(H...) <= Phi(H_1 A_1^{-1} H_1, ...)`.
    Hermitian,
    /// `X_i = A_i^{1/2} C_i A_i^{1/2}` for contractions `C_i`, so that
    /// `A_i >= X_i* A_i^{-1} X_i` holds by construction:
    /// `Phi(A...) >= Phi(X...)* Phi(A...)^{-1} Phi(X...)`.
    General,
}

pub fn check_schwarz_multilinear(
    map: &MapDescriptor,
    variant: SchwarzVariant,
    interval: Interval,
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<CheckResult> {
    let map = map.clone();
    let name = match variant {
        SchwarzVariant::Hermitian => format!("schwarz-hermitian/{}", map.label()),
        SchwarzVariant::General => format!("schwarz-general/{}", map.label()),
    };
    run_sampled(&name, trials, seed, tol, move |rng| {
        let a: Vec<_> = (0..map.arity)
            .map(|_| random_positive(map.input_dim, interval, rng))
            .collect();
        match variant {
            SchwarzVariant::Hermitian => {
                let h = (0..map.arity)
                    .map(|_| random_hermitian(map.input_dim, rng))
                    .collect();
                Ok(WitnessPayload::SchwarzHermitian {
                    map: map.clone(),
                    a,
                    h,
                })
            }
            SchwarzVariant::General => {
                let x = a
                    .iter()
                    .map(|ai| -> Result<ComplexMatrix> {
                        let half = sqrt_psd(ai)?;
                        let c = random_contraction(map.input_dim, rng);
                        half.matrix().matmul(&c)?.matmul(half.matrix())
                    })
                    .collect::<Result<_>>()?;
                Ok(WitnessPayload::SchwarzGeneral {
                    map: map.clone(),
                    a,
                    x,
                })
            }
        }
    })
}
