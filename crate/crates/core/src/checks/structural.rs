//! Structural checks of a map descriptor: unitality, adjoint preservation,
//! monotonicity, multilinearity, positivity, and the Russo-Dye norm bound.

use num_complex::Complex64;

use super::payload::{wire_vec, WitnessPayload};
use super::{run_fixed, run_sampled, CheckResult};
use crate::eig::{psd_margin, Interval};
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::multilinear::{MapDescriptor, MapKind};
use crate::random::{ginibre, random_contraction, random_positive, random_unit_vector};

/// `Phi(I, ..., I) = I` as a deterministic single-margin check.
pub fn check_unital(map: &MapDescriptor, seed: u64, tol: f64) -> Result<CheckResult> {
    run_fixed(
        &format!("unital/{}", map.label()),
        WitnessPayload::Unital { map: map.clone() },
        seed,
        tol,
    )
}

/// `Phi(T_1, ..., T_k)* = Phi(T_1*, ..., T_k*)` on random complex tuples.
pub fn check_adjoint_preserving(
    map: &MapDescriptor,
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<CheckResult> {
    let map = map.clone();
    run_sampled(
        &format!("adjoint-preserving/{}", map.label()),
        trials,
        seed,
        tol,
        move |rng| {
            let inputs = (0..map.arity).map(|_| ginibre(map.input_dim, rng)).collect();
            Ok(WitnessPayload::AdjointPreserving {
                map: map.clone(),
                inputs,
            })
        },
    )
}

/// Monotonicity: `0 <= A_i <= B_i` implies `Phi(A...) <= Phi(B...)`.
/// Pairs are built by subtracting a positive perturbation small enough to
/// keep the lower matrix positive semidefinite.
pub fn check_monotone(
    map: &MapDescriptor,
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<CheckResult> {
    let map = map.clone();
    let iv = Interval::new(1.0, 2.0).expect("static interval");
    let small = Interval::new(0.1, 1.0).expect("static interval");
    run_sampled(
        &format!("monotone/{}", map.label()),
        trials,
        seed,
        tol,
        move |rng| {
            let mut lower = Vec::with_capacity(map.arity);
            let mut upper = Vec::with_capacity(map.arity);
            for _ in 0..map.arity {
                let b = random_positive(map.input_dim, iv, rng);
                let headroom = psd_margin(&b)?;
                let bump = random_positive(map.input_dim, small, rng);
                let shrink = rng.uniform(0.0, 1.0) * headroom / crate::eig::operator_norm(&bump)?;
                let a = b.sub(&bump.scale(shrink));
                lower.push(a);
                upper.push(b);
            }
            Ok(WitnessPayload::Monotone {
                map: map.clone(),
                lower,
                upper,
            })
        },
    )
}

/// Sampled Russo-Dye bound: `||Phi|| = 1` for unital maps. Trial 0 is the
/// identity tuple (norm exactly 1, so the supremum is attained); remaining
/// trials draw random contraction tuples.
pub fn russo_dye_check(map: &MapDescriptor, trials: usize, seed: u64) -> Result<CheckResult> {
    if !map.is_unital(1e-8)? {
        return Err(Error::Precondition(format!(
            "russo-dye requires a unital map; {} is not",
            map.label()
        )));
    }
    let map_for_sampler = map.clone();
    run_sampled(
        &format!("russo-dye/{}", map.label()),
        trials,
        seed,
        0.0,
        move |rng| {
            let map = &map_for_sampler;
            // mostly random contractions, occasionally unitary tuples
            // (extreme points of the unit ball)
            let inputs = if rng.uniform(0.0, 1.0) < 1.0 / 64.0 {
                (0..map.arity)
                    .map(|_| crate::random::haar_unitary(map.input_dim, rng))
                    .collect()
            } else {
                (0..map.arity)
                    .map(|_| random_contraction(map.input_dim, rng))
                    .collect()
            };
            Ok(WitnessPayload::RussoDye {
                map: map.clone(),
                inputs,
            })
        },
    )
    .map(|mut res| {
        // Fold in the deterministic identity-tuple evaluation: the norm is 1
        // there, so the bound is attained.
        let identity_margin = WitnessPayload::RussoDye {
            map: map.clone(),
            inputs: vec![ComplexMatrix::identity(map.input_dim); map.arity],
        }
        .evaluate_margin()
        .expect("identity tuple evaluates");
        if identity_margin.scaled() < res.worst_margin {
            res.worst_margin = identity_margin.scaled();
            res.worst_margin_raw = identity_margin.raw;
            res.scale = identity_margin.scale;
            res.holds = res.worst_margin >= -res.tol;
        }
        res
    })
}

/// Linearity in one slot over random complex scalars, exercised for every
/// slot in rotation across trials.
pub fn check_multilinearity(
    map: &MapDescriptor,
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<CheckResult> {
    let map = map.clone();
    run_sampled(
        &format!("multilinearity/{}", map.label()),
        trials,
        seed,
        tol,
        move |rng| {
            let slot = (rng.uniform(0.0, map.arity as f64) as usize).min(map.arity - 1);
            let tuple = (0..map.arity).map(|_| ginibre(map.input_dim, rng)).collect();
            let x = ginibre(map.input_dim, rng);
            let y = ginibre(map.input_dim, rng);
            let alpha = Complex64::new(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
            let beta = Complex64::new(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
            Ok(WitnessPayload::Multilinearity {
                map: map.clone(),
                slot,
                tuple,
                x,
                y,
                alpha: [alpha.re, alpha.im],
                beta: [beta.re, beta.im],
            })
        },
    )
}

/// Positive inputs produce positive outputs. The rank-one kind is checked
/// through its defining quadratic form on random unit vectors.
pub fn check_positivity(
    map: &MapDescriptor,
    interval: Interval,
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<CheckResult> {
    let map = map.clone();
    run_sampled(
        &format!("positivity/{}", map.label()),
        trials,
        seed,
        tol,
        move |rng| {
            let inputs = (0..map.arity)
                .map(|_| random_positive(map.input_dim, interval, rng))
                .collect();
            let probes = if matches!(map.kind, MapKind::RankOne) {
                (0..8)
                    .map(|_| wire_vec(&random_unit_vector(map.input_dim, rng)))
                    .collect()
            } else {
                Vec::new()
            };
            Ok(WitnessPayload::Positivity {
                map: map.clone(),
                inputs,
                probes,
            })
        },
    )
}
