//! Kantorovich-type bounds for two-variable maps, and the exponent-profile
//! convexity check (minimum at the symmetric point, midpoint convexity,
//! symmetry).

use serde::{Deserialize, Serialize};

use super::payload::{wire_vec, KantorovichInputs, WitnessPayload};
use super::{run_fixed, run_sampled, CheckResult};
use crate::eig::Interval;
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, HermitianMatrix};
use crate::multilinear::MapDescriptor;
use crate::random::{ginibre, random_positive, random_unit_vector};

/// Which Kantorovich assertion to sample.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KantorovichVariant {
    /// The two-term congruence-weighted bound with factor `(m^2+M^2)/(mM)`.
    Congruence,
    /// Scalar weights `t_i`: factor `(m^2+M^2)/(2mM)`.
    ScalarWeights,
    /// `<x, B^{-1}x><Ax, x> + <x, Bx><A^{-1}x, x> <= (m^2+M^2)/(mM)` on
    /// unit vectors.
    RankOne,
}

pub fn check_kantorovich(
    map: &MapDescriptor,
    variant: KantorovichVariant,
    n_terms: usize,
    interval: Interval,
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<CheckResult> {
    if map.arity != 2 {
        return Err(Error::Precondition(
            "kantorovich checks require a two-variable map".into(),
        ));
    }
    if n_terms == 0 {
        return Err(Error::InvalidArgument("n_terms must be >= 1".into()));
    }
    let map = map.clone();
    let name = match variant {
        KantorovichVariant::Congruence => format!("kantorovich-congruence/{}", map.label()),
        KantorovichVariant::ScalarWeights => format!("kantorovich-scalar-weights/{}", map.label()),
        KantorovichVariant::RankOne => "kantorovich-rank-one".to_string(),
    };
    run_sampled(&name, trials, seed, tol, move |rng| {
        let q = map.input_dim;
        let draw = |rng: &mut crate::random::RngStream, count: usize| -> Vec<HermitianMatrix> {
            (0..count).map(|_| random_positive(q, interval, rng)).collect()
        };
        let inputs = match variant {
            KantorovichVariant::Congruence => KantorovichInputs::Congruence {
                a: draw(rng, n_terms),
                b: draw(rng, n_terms),
                x: draw(rng, n_terms),
                y: draw(rng, n_terms),
            },
            KantorovichVariant::ScalarWeights => KantorovichInputs::ScalarWeights {
                a: draw(rng, n_terms),
                t: (0..n_terms).map(|_| rng.uniform(0.1, 2.0)).collect(),
            },
            KantorovichVariant::RankOne => KantorovichInputs::RankOne {
                a: random_positive(q, interval, rng),
                b: random_positive(q, interval, rng),
                x: wire_vec(&random_unit_vector(q, rng)),
            },
        };
        Ok(WitnessPayload::Kantorovich {
            map: map.clone(),
            interval,
            inputs,
        })
    })
}

/// Evaluates the exponent profile
/// `f(t) = Phi(X*A^{1+t}X, Y*B^{1-t}Y) + Phi(X*A^{1-t}X, Y*B^{1+t}Y)`
/// on the given grid and asserts midpoint convexity, the minimum at
/// `t = 0`, and the symmetry `f(-t) = f(t)` (all within `tol`).
pub fn convexity_profile(
    map: &MapDescriptor,
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    x: &ComplexMatrix,
    y: &ComplexMatrix,
    grid: &[f64],
    seed: u64,
    tol: f64,
) -> Result<CheckResult> {
    if map.arity != 2 {
        return Err(Error::Precondition(
            "convexity profile requires a two-variable map".into(),
        ));
    }
    if grid.is_empty() {
        return Err(Error::InvalidArgument("grid must be non-empty".into()));
    }
    run_fixed(
        &format!("convexity-profile/{}", map.label()),
        WitnessPayload::ConvexityProfile {
            map: map.clone(),
            a: a.clone(),
            b: b.clone(),
            x: x.clone(),
            y: y.clone(),
            grid: grid.to_vec(),
            tol,
        },
        seed,
        tol,
    )
}

/// Suite wrapper: random strictly positive `A, B` and random `X, Y` per
/// trial, fixed grid.
pub fn convexity_profile_sampled(
    map: &MapDescriptor,
    interval: Interval,
    grid: &[f64],
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<CheckResult> {
    if map.arity != 2 {
        return Err(Error::Precondition(
            "convexity profile requires a two-variable map".into(),
        ));
    }
    let map = map.clone();
    let grid = grid.to_vec();
    run_sampled(
        &format!("convexity-profile/{}", map.label()),
        trials,
        seed,
        tol,
        move |rng| {
            Ok(WitnessPayload::ConvexityProfile {
                map: map.clone(),
                a: random_positive(map.input_dim, interval, rng),
                b: random_positive(map.input_dim, interval, rng),
                x: ginibre(map.input_dim, rng),
                y: ginibre(map.input_dim, rng),
                grid: grid.clone(),
                tol,
            })
        },
    )
}
