//! Ando-type mean inequalities: the multilinear Ando inequality, the mean
//! symmetrization bound, and the Fiedler-extension family.

use super::payload::WitnessPayload;
use super::{run_sampled, CheckResult};
use crate::eig::Interval;
use crate::error::{Error, Result};
use crate::functions::{verify_multiplicativity, Multiplicativity};
use crate::means::MeanDescriptor;
use crate::multilinear::MapDescriptor;
use crate::random::random_positive;

/// `Phi(A_1 sigma B_1, ..., A_k sigma B_k) <= Phi(A...) sigma Phi(B...)`
/// for a super-multiplicative representing function.
pub fn check_ando_multilinear(
    map: &MapDescriptor,
    mean: &MeanDescriptor,
    interval: Interval,
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<CheckResult> {
    verify_multiplicativity(&mean.representing, Multiplicativity::Super, interval)?;
    let (map, mean) = (map.clone(), mean.clone());
    run_sampled(
        &format!("ando/{}/{}", map.label(), mean.name),
        trials,
        seed,
        tol,
        move |rng| {
            let a = (0..map.arity)
                .map(|_| random_positive(map.input_dim, interval, rng))
                .collect();
            let b = (0..map.arity)
                .map(|_| random_positive(map.input_dim, interval, rng))
                .collect();
            Ok(WitnessPayload::Ando {
                map: map.clone(),
                mean: mean.clone(),
                a,
                b,
            })
        },
    )
}

/// `Phi(A, B) + Phi(B, A) >= Phi(A s B, A s^o B) + Phi(A s^o B, A s B)`
/// for two-variable maps and super-multiplicative means.
pub fn check_mean_symmetrization(
    map: &MapDescriptor,
    mean: &MeanDescriptor,
    interval: Interval,
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<CheckResult> {
    if map.arity != 2 {
        return Err(Error::Precondition(
            "mean symmetrization requires a two-variable map".into(),
        ));
    }
    verify_multiplicativity(&mean.representing, Multiplicativity::Super, interval)?;
    let (map, mean) = (map.clone(), mean.clone());
    run_sampled(
        &format!("mean-symmetrization/{}/{}", map.label(), mean.name),
        trials,
        seed,
        tol,
        move |rng| {
            Ok(WitnessPayload::MeanSymmetrization {
                map: map.clone(),
                mean: mean.clone(),
                a: random_positive(map.input_dim, interval, rng),
                b: random_positive(map.input_dim, interval, rng),
            })
        },
    )
}

/// The Fiedler-extension inequality
/// `Phi(A^a, A^b) + Phi(A^b, A^a) >= Phi(A^g, A^d) + Phi(A^d, A^g)` with
/// `g, d` the lambda-interpolations of the exponents; `(a, b, lambda) =
/// (1, -1, 1/2)` specializes to `Phi(A, A^{-1}) + Phi(A^{-1}, A) >= 2I`
/// for unital maps.
pub fn check_fiedler_extension(
    map: &MapDescriptor,
    alpha: f64,
    beta: f64,
    lambda: f64,
    interval: Interval,
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<CheckResult> {
    if map.arity != 2 {
        return Err(Error::Precondition(
            "fiedler extension requires a two-variable map".into(),
        ));
    }
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::InvalidArgument(format!(
            "lambda must lie in [0, 1], got {lambda}"
        )));
    }
    let map = map.clone();
    run_sampled(
        &format!("fiedler-extension/{}", map.label()),
        trials,
        seed,
        tol,
        move |rng| {
            Ok(WitnessPayload::FiedlerExtension {
                map: map.clone(),
                alpha,
                beta,
                lambda,
                a: random_positive(map.input_dim, interval, rng),
            })
        },
    )
}
