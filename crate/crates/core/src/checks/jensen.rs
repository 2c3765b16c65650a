//! Jensen-type checkers: the multilinear Choi-Davis-Jensen inequality for
//! sub/super-multiplicative convex/concave functions, its power-function
//! family, and the power monotonicity corollary.

use super::payload::WitnessPayload;
use super::{run_fixed, run_sampled, CheckResult, Direction};
use crate::eig::Interval;
use crate::error::{Error, Result};
use crate::functions::{verify_multiplicativity, Multiplicativity, ScalarFunction};
use crate::matrix::HermitianMatrix;
use crate::multilinear::MapDescriptor;
use crate::random::random_positive;

fn require_unital(map: &MapDescriptor) -> Result<()> {
    if !map.is_unital(1e-8)? {
        return Err(Error::Precondition(format!(
            "check requires a unital map; {} is not",
            map.label()
        )));
    }
    Ok(())
}

/// Multilinear Jensen: `f(Phi(A...)) <= Phi(f(A_1), ..., f(A_k))` for
/// sub-multiplicative matrix convex `f` (reversed for super-multiplicative
/// concave `f`). When `f` carries the matching multiplicativity tag it is
/// re-validated by scalar sampling on the draw interval; an untagged `f`
/// runs as-is, which is how the counterexample catalog exercises expected
/// violations.
pub fn check_cdj(
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
        Direction::Convex => Multiplicativity::Sub,
        Direction::Concave => Multiplicativity::Super,
    };
    let tagged = match which {
        Multiplicativity::Sub => f.tags.sub_multiplicative,
        Multiplicativity::Super => f.tags.super_multiplicative,
    };
    if tagged {
        verify_multiplicativity(f, which, interval)?;
    }
    let (map, f) = (map.clone(), f.clone());
    run_sampled(
        &format!("cdj/{}", map.label()),
        trials,
        seed,
        tol,
        move |rng| {
            let inputs = (0..map.arity)
                .map(|_| random_positive(map.input_dim, interval, rng))
                .collect();
            Ok(WitnessPayload::Cdj {
                map: map.clone(),
                f: f.clone(),
                direction,
                inputs,
            })
        },
    )
}

/// Jensen margin at explicit inputs; pins the paper's counterexample
/// witness in the expected-violation catalog.
pub fn check_cdj_at(
    map: &MapDescriptor,
    f: &ScalarFunction,
    direction: Direction,
    inputs: Vec<HermitianMatrix>,
    seed: u64,
    tol: f64,
) -> Result<CheckResult> {
    require_unital(map)?;
    run_fixed(
        &format!("cdj-at/{}", map.label()),
        WitnessPayload::Cdj {
            map: map.clone(),
            f: f.clone(),
            direction,
            inputs,
        },
        seed,
        tol,
    )
}

/// Power-function Jensen family: `Phi(A^r...) <= Phi(A...)^r` for
/// `r in [0, 1]` and the reversed inequality for `r in [-1, 0] u [1, 2]`.
pub fn check_power_family(
    map: &MapDescriptor,
    r: f64,
    interval: Interval,
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<CheckResult> {
    require_unital(map)?;
    if !(-1.0..=2.0).contains(&r) {
        return Err(Error::InvalidArgument(format!(
            "power family requires r in [-1, 2], got {r}"
        )));
    }
    let map = map.clone();
    run_sampled(
        &format!("power-family/{}", map.label()),
        trials,
        seed,
        tol,
        move |rng| {
            let inputs = (0..map.arity)
                .map(|_| random_positive(map.input_dim, interval, rng))
                .collect();
            Ok(WitnessPayload::PowerFamily {
                map: map.clone(),
                r,
                inputs,
            })
        },
    )
}

/// Validates the `(s, t)` hypothesis of the power-monotonicity corollary:
/// `s <= t` with both outside `(-1, 1)`, or `1/2 <= s <= 1 <= t`, or
/// `s <= -1 <= t <= -1/2`. Returns the failing condition by name.
fn validate_power_monotonicity_hypothesis(s: f64, t: f64) -> Result<()> {
    if s == 0.0 || t == 0.0 {
        return Err(Error::Precondition("s and t must be nonzero".into()));
    }
    let outside = |v: f64| !(-1.0 < v && v < 1.0);
    let set1 = s <= t && outside(s) && outside(t);
    let set2 = (0.5..=1.0).contains(&s) && t >= 1.0;
    let set3 = s <= -1.0 && (-1.0..=-0.5).contains(&t);
    if set1 || set2 || set3 {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "(s, t) = ({s}, {t}) satisfies none of: s <= t with s, t outside (-1, 1); \
             1/2 <= s <= 1 <= t; s <= -1 <= t <= -1/2"
        )))
    }
}

/// `Phi(A^s...)^{1/s} <= Phi(A^t...)^{1/t}` under the corollary's
/// hypothesis sets.
pub fn check_power_monotonicity(
    map: &MapDescriptor,
    s: f64,
    t: f64,
    interval: Interval,
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<CheckResult> {
    require_unital(map)?;
    validate_power_monotonicity_hypothesis(s, t)?;
    let map = map.clone();
    run_sampled(
        &format!("power-monotonicity/{}", map.label()),
        trials,
        seed,
        tol,
        move |rng| {
            let inputs = (0..map.arity)
                .map(|_| random_positive(map.input_dim, interval, rng))
                .collect();
            Ok(WitnessPayload::PowerMonotonicity {
                map: map.clone(),
                s,
                t,
                inputs,
            })
        },
    )
}
