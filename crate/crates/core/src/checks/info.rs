//! Information monotonicity of matrix power means and the Karcher mean
//! under unital positive multilinear maps.
//!
//! The map has arity `n`; the trial data is `n` weight vectors and `n`
//! tuples of `k` strictly positive matrices each. The comparison mean on
//! the map side ranges over all `k^n` slotwise evaluations
//! `Phi(A^{(1)}_{j_1}, ..., A^{(n)}_{j_n})` with the product weights, which
//! is the family the fixed-point argument in the source material actually
//! contracts over.

use super::payload::WitnessPayload;
use super::{run_fixed, run_sampled, CheckResult};
use crate::eig::Interval;
use crate::error::{Error, Result};
use crate::matrix::HermitianMatrix;
use crate::means::WeightVector;
use crate::multilinear::MapDescriptor;
use crate::random::{random_positive, random_weights};

fn require_unital(map: &MapDescriptor) -> Result<()> {
    if !map.is_unital(1e-8)? {
        return Err(Error::Precondition(format!(
            "information monotonicity requires a unital map; {} is not",
            map.label()
        )));
    }
    Ok(())
}

/// Power-mean information monotonicity at explicit weights and tuples:
/// for `t in (0, 1]`,
/// `Phi(P_t(w^{(1)}; A^{(1)}), ..., P_t(w^{(n)}; A^{(n)}))
///   <= P_t(w^{(1)}...w^{(n)}; Phi(...))`,
/// and for `t in [-1, 0)` the reverse with factor
/// `(M^n + m^n)^2 / (4 M^n m^n)`.
pub fn info_power_result(
    map: &MapDescriptor,
    t: f64,
    interval: Interval,
    weights: Vec<WeightVector>,
    tuples: Vec<Vec<HermitianMatrix>>,
    seed: u64,
    tol: f64,
) -> Result<CheckResult> {
    require_unital(map)?;
    if t == 0.0 || !(-1.0..=1.0).contains(&t) {
        return Err(Error::InvalidArgument(format!(
            "power information monotonicity requires t in [-1, 1] \\ {{0}}, got {t}"
        )));
    }
    run_fixed(
        &format!("info-power/{}", map.label()),
        WitnessPayload::InfoPower {
            map: map.clone(),
            t,
            interval,
            weights,
            tuples,
        },
        seed,
        tol,
    )
}

/// Sampled wrapper: random weights and random tuples in the interval.
pub fn check_info_monotonicity_power(
    map: &MapDescriptor,
    t: f64,
    k: usize,
    interval: Interval,
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<CheckResult> {
    require_unital(map)?;
    if t == 0.0 || !(-1.0..=1.0).contains(&t) {
        return Err(Error::InvalidArgument(format!(
            "power information monotonicity requires t in [-1, 1] \\ {{0}}, got {t}"
        )));
    }
    let map = map.clone();
    run_sampled(
        &format!("info-power/{}", map.label()),
        trials,
        seed,
        tol,
        move |rng| {
            let weights = (0..map.arity)
                .map(|_| WeightVector::new(random_weights(k, rng)).expect("normalized draw"))
                .collect();
            let tuples = (0..map.arity)
                .map(|_| {
                    (0..k)
                        .map(|_| random_positive(map.input_dim, interval, rng))
                        .collect()
                })
                .collect();
            Ok(WitnessPayload::InfoPower {
                map: map.clone(),
                t,
                interval,
                weights,
                tuples,
            })
        },
    )
}

/// Karcher-mean information monotonicity at explicit weights and tuples:
/// both `Phi(G(...)) <= G(prod w; Phi(...))` and
/// `G(prod w; Phi(...)) <= (M^n+m^n)^2/(4 M^n m^n) Phi(G(...))`.
pub fn info_karcher_result(
    map: &MapDescriptor,
    interval: Interval,
    weights: Vec<WeightVector>,
    tuples: Vec<Vec<HermitianMatrix>>,
    seed: u64,
    tol: f64,
) -> Result<CheckResult> {
    require_unital(map)?;
    run_fixed(
        &format!("info-karcher/{}", map.label()),
        WitnessPayload::InfoKarcher {
            map: map.clone(),
            interval,
            weights,
            tuples,
        },
        seed,
        tol,
    )
}

/// Sampled wrapper for the Karcher information monotonicity.
pub fn check_info_monotonicity_karcher(
    map: &MapDescriptor,
    k: usize,
    interval: Interval,
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<CheckResult> {
    require_unital(map)?;
    let map = map.clone();
    run_sampled(
        &format!("info-karcher/{}", map.label()),
        trials,
        seed,
        tol,
        move |rng| {
            let weights = (0..map.arity)
                .map(|_| WeightVector::new(random_weights(k, rng)).expect("normalized draw"))
                .collect();
            let tuples = (0..map.arity)
                .map(|_| {
                    (0..k)
                        .map(|_| random_positive(map.input_dim, interval, rng))
                        .collect()
                })
                .collect();
            Ok(WitnessPayload::InfoKarcher {
                map: map.clone(),
                interval,
                weights,
                tuples,
            })
        },
    )
}
