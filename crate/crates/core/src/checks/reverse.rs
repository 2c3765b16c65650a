//! Reverse inequalities: multiplicative-Jensen reverses with the
//! chord-ratio constants, the reverse Ando bound, reverse mean additivity,
//! and the reverse symmetrization bound.

use super::payload::WitnessPayload;
use super::{run_sampled, CheckResult, Direction};
use crate::eig::Interval;
use crate::error::{Error, Result};
use crate::functions::{verify_multiplicativity, Multiplicativity, ScalarFunction};
use crate::means::MeanDescriptor;
use crate::multilinear::MapDescriptor;
use crate::random::random_positive;

fn require_unital(map: &MapDescriptor) -> Result<()> {
    if !map.is_unital(1e-8)? {
        return Err(Error::Precondition(format!(
            "reverse checks require a unital map; {} is not",
            map.label()
        )));
    }
    Ok(())
}

/// Reverse Jensen: `Phi(f(A)...) <= alpha(m^k, M^k, f) f(Phi(A...))` for
/// super-multiplicative convex `f`, and
/// `beta(m^k, M^k, f) f(Phi(A...)) <= Phi(f(A)...)` for sub-multiplicative
/// concave `f`.
pub fn check_reverse_cdj(
    map: &MapDescriptor,
    f: &ScalarFunction,
    direction: Direction,
    interval: Interval,
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<CheckResult> {
    require_unital(map)?;
    let which = match direction {
        Direction::Convex => Multiplicativity::Super,
        Direction::Concave => Multiplicativity::Sub,
    };
    verify_multiplicativity(f, which, interval)?;
    let (map, f) = (map.clone(), f.clone());
    run_sampled(
        &format!("reverse-cdj/{}", map.label()),
        trials,
        seed,
        tol,
        move |rng| {
            let inputs = (0..map.arity)
                .map(|_| random_positive(map.input_dim, interval, rng))
                .collect();
            Ok(WitnessPayload::ReverseCdj {
                map: map.clone(),
                f: f.clone(),
                direction,
                interval,
                inputs,
            })
        },
    )
}

/// Reverse Ando:
/// `Phi(A sigma B ...) >= beta(m^k/M^k, M^k/m^k, f) (Phi(A...) sigma Phi(B...))`
/// for sub-multiplicative representing functions.
pub fn check_reverse_ando(
    map: &MapDescriptor,
    mean: &MeanDescriptor,
    interval: Interval,
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<CheckResult> {
    require_unital(map)?;
    verify_multiplicativity(&mean.representing, Multiplicativity::Sub, interval.ratio())?;
    let (map, mean) = (map.clone(), mean.clone());
    run_sampled(
        &format!("reverse-ando/{}/{}", map.label(), mean.name),
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
            Ok(WitnessPayload::ReverseAndo {
                map: map.clone(),
                mean: mean.clone(),
                interval,
                a,
                b,
            })
        },
    )
}

/// Reverse subadditivity of means:
/// `beta(m/M, M/m, f) [(A+B) sigma (C+D)] <= A sigma C + B sigma D`.
pub fn check_reverse_mean_additivity(
    mean: &MeanDescriptor,
    dim: usize,
    interval: Interval,
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<CheckResult> {
    let mean = mean.clone();
    run_sampled(
        &format!("reverse-mean-additivity/{}", mean.name),
        trials,
        seed,
        tol,
        move |rng| {
            Ok(WitnessPayload::ReverseMeanAdditivity {
                mean: mean.clone(),
                interval,
                a: random_positive(dim, interval, rng),
                b: random_positive(dim, interval, rng),
                c: random_positive(dim, interval, rng),
                d: random_positive(dim, interval, rng),
            })
        },
    )
}

/// Reverse symmetrization:
/// `Phi(A,B) + Phi(B,A) <= beta(m^2/M^2, M^2/m^2, f)^{-2}
///  [Phi(A s B, A s^o B) + Phi(A s^o B, A s B)]`.
pub fn check_reverse_symmetrization(
    map: &MapDescriptor,
    mean: &MeanDescriptor,
    interval: Interval,
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<CheckResult> {
    require_unital(map)?;
    if map.arity != 2 {
        return Err(Error::Precondition(
            "reverse symmetrization requires a two-variable map".into(),
        ));
    }
    verify_multiplicativity(
        &mean.representing,
        Multiplicativity::Sub,
        interval.power(2).ratio(),
    )?;
    let (map, mean) = (map.clone(), mean.clone());
    run_sampled(
        &format!("reverse-symmetrization/{}/{}", map.label(), mean.name),
        trials,
        seed,
        tol,
        move |rng| {
            Ok(WitnessPayload::ReverseSymmetrization {
                map: map.clone(),
                mean: mean.clone(),
                interval,
                a: random_positive(map.input_dim, interval, rng),
                b: random_positive(map.input_dim, interval, rng),
            })
        },
    )
}
