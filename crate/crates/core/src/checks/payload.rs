//! Witness payloads: the exact inputs of one trial, serializable, with the
//! pure margin evaluation used both by the live checker and by replay.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{Direction, Margin};
use crate::eig::{
    inverse_pos, loewner_scale, operator_norm, operator_norm_general, power_pos, psd_margin,
    sqrt_psd, Interval,
};
use crate::error::{Error, Result};
use crate::functions::{matrix_function, ScalarFunction};
use crate::matrix::{ComplexMatrix, HermitianMatrix};
use crate::means::{
    alpha_bound_iv, beta_bound_iv, karcher_mean, kubo_ando_mean, power_mean, MeanDescriptor,
    WeightVector,
};
use crate::multilinear::{rank_one_apply, MapDescriptor, MapKind};

/// A complex scalar on the wire: `[re, im]`.
pub type WireComplex = [f64; 2];

fn wire(z: Complex64) -> WireComplex {
    [z.re, z.im]
}

fn unwire(z: WireComplex) -> Complex64 {
    Complex64::new(z[0], z[1])
}

pub(crate) fn wire_vec(v: &[Complex64]) -> Vec<WireComplex> {
    v.iter().map(|&z| wire(z)).collect()
}

fn unwire_vec(v: &[WireComplex]) -> Vec<Complex64> {
    v.iter().map(|&z| unwire(z)).collect()
}

/// Which of the Kantorovich-type assertions a payload carries.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "kebab-case")]
pub enum KantorovichInputs {
    Congruence {
        a: Vec<HermitianMatrix>,
        b: Vec<HermitianMatrix>,
        x: Vec<HermitianMatrix>,
        y: Vec<HermitianMatrix>,
    },
    ScalarWeights {
        a: Vec<HermitianMatrix>,
        t: Vec<f64>,
    },
    RankOne {
        a: HermitianMatrix,
        b: HermitianMatrix,
        x: Vec<WireComplex>,
    },
}

/// The serialized inputs of one trial plus everything needed to re-evaluate
/// its margin: map descriptor, function/mean descriptors, parameters.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "kebab-case")]
pub enum WitnessPayload {
    Unital {
        map: MapDescriptor,
    },
    AdjointPreserving {
        map: MapDescriptor,
        inputs: Vec<ComplexMatrix>,
    },
    Monotone {
        map: MapDescriptor,
        lower: Vec<HermitianMatrix>,
        upper: Vec<HermitianMatrix>,
    },
    RussoDye {
        map: MapDescriptor,
        inputs: Vec<ComplexMatrix>,
    },
    Multilinearity {
        map: MapDescriptor,
        slot: usize,
        tuple: Vec<ComplexMatrix>,
        x: ComplexMatrix,
        y: ComplexMatrix,
        alpha: WireComplex,
        beta: WireComplex,
    },
    Positivity {
        map: MapDescriptor,
        inputs: Vec<HermitianMatrix>,
        /// Probe vectors for quadratic-form positivity (rank-one kind).
        probes: Vec<Vec<WireComplex>>,
    },
    Cdj {
        map: MapDescriptor,
        f: ScalarFunction,
        direction: Direction,
        inputs: Vec<HermitianMatrix>,
    },
    PowerFamily {
        map: MapDescriptor,
        r: f64,
        inputs: Vec<HermitianMatrix>,
    },
    PowerMonotonicity {
        map: MapDescriptor,
        s: f64,
        t: f64,
        inputs: Vec<HermitianMatrix>,
    },
    Ando {
        map: MapDescriptor,
        mean: MeanDescriptor,
        a: Vec<HermitianMatrix>,
        b: Vec<HermitianMatrix>,
    },
    MeanSymmetrization {
        map: MapDescriptor,
        mean: MeanDescriptor,
        a: HermitianMatrix,
        b: HermitianMatrix,
    },
    FiedlerExtension {
        map: MapDescriptor,
        alpha: f64,
        beta: f64,
        lambda: f64,
        a: HermitianMatrix,
    },
    ChoiNormal {
        map: MapDescriptor,
        inputs: Vec<ComplexMatrix>,
    },
    SchwarzHermitian {
        map: MapDescriptor,
        a: Vec<HermitianMatrix>,
        h: Vec<HermitianMatrix>,
    },
    SchwarzGeneral {
        map: MapDescriptor,
        a: Vec<HermitianMatrix>,
        x: Vec<ComplexMatrix>,
    },
    Kantorovich {
        map: MapDescriptor,
        interval: Interval,
        inputs: KantorovichInputs,
    },
    ConvexityProfile {
        map: MapDescriptor,
        a: HermitianMatrix,
        b: HermitianMatrix,
        x: ComplexMatrix,
        y: ComplexMatrix,
        grid: Vec<f64>,
        tol: f64,
    },
    ReverseCdj {
        map: MapDescriptor,
        f: ScalarFunction,
        direction: Direction,
        interval: Interval,
        inputs: Vec<HermitianMatrix>,
    },
    ReverseAndo {
        map: MapDescriptor,
        mean: MeanDescriptor,
        interval: Interval,
        a: Vec<HermitianMatrix>,
        b: Vec<HermitianMatrix>,
    },
    ReverseMeanAdditivity {
        mean: MeanDescriptor,
        interval: Interval,
        a: HermitianMatrix,
        b: HermitianMatrix,
        c: HermitianMatrix,
        d: HermitianMatrix,
    },
    ReverseSymmetrization {
        map: MapDescriptor,
        mean: MeanDescriptor,
        interval: Interval,
        a: HermitianMatrix,
        b: HermitianMatrix,
    },
    InfoPower {
        map: MapDescriptor,
        t: f64,
        interval: Interval,
        weights: Vec<WeightVector>,
        tuples: Vec<Vec<HermitianMatrix>>,
    },
    InfoKarcher {
        map: MapDescriptor,
        interval: Interval,
        weights: Vec<WeightVector>,
        tuples: Vec<Vec<HermitianMatrix>>,
    },
}

/// `LHS <= RHS`: margin is the minimum eigenvalue of `RHS - LHS` against
/// `max(1, ||LHS||, ||RHS||)`.
fn leq_margin(lhs: &HermitianMatrix, rhs: &HermitianMatrix) -> Result<Margin> {
    Ok(Margin {
        raw: psd_margin(&rhs.sub(lhs))?,
        scale: loewner_scale(lhs, rhs)?,
    })
}

/// An identity that should hold exactly: margin is minus the deviation.
fn deviation_margin(dev: f64, scale: f64) -> Margin {
    Margin {
        raw: -dev,
        scale: scale.max(1.0),
    }
}

fn map_inputs(
    inputs: &[HermitianMatrix],
    f: impl Fn(&HermitianMatrix) -> Result<HermitianMatrix>,
) -> Result<Vec<HermitianMatrix>> {
    inputs.iter().map(f).collect()
}

impl WitnessPayload {
    /// Pure margin evaluation from the stored inputs.
    pub fn evaluate_margin(&self) -> Result<Margin> {
        match self {
            WitnessPayload::Unital { map } => {
                let identity = vec![ComplexMatrix::identity(map.input_dim); map.arity];
                let out = map.evaluate(&identity)?;
                let dev =
                    operator_norm_general(&(&out - &ComplexMatrix::identity(map.output_dim())))?;
                Ok(deviation_margin(dev, 1.0))
            }

            WitnessPayload::AdjointPreserving { map, inputs } => {
                let lhs = map.evaluate(inputs)?.adjoint();
                let adjoints: Vec<ComplexMatrix> =
                    inputs.iter().map(ComplexMatrix::adjoint).collect();
                let rhs = map.evaluate(&adjoints)?;
                let dev = operator_norm_general(&(&lhs - &rhs))?;
                let scale = operator_norm_general(&lhs)?;
                Ok(deviation_margin(dev, scale))
            }

            WitnessPayload::Monotone { map, lower, upper } => {
                let lo = map.evaluate_hermitian(lower)?;
                let hi = map.evaluate_hermitian(upper)?;
                leq_margin(&lo, &hi)
            }

            WitnessPayload::RussoDye { map, inputs } => {
                let norm = operator_norm_general(&map.evaluate(inputs)?)?;
                Ok(Margin {
                    raw: 1.0 + 1e-8 - norm,
                    scale: 1.0,
                })
            }

            WitnessPayload::Multilinearity {
                map,
                slot,
                tuple,
                x,
                y,
                alpha,
                beta,
            } => {
                let (alpha, beta) = (unwire(*alpha), unwire(*beta));
                let with = |m: ComplexMatrix| -> Vec<ComplexMatrix> {
                    let mut t = tuple.clone();
                    t[*slot] = m;
                    t
                };
                let combined = map.evaluate(&with(&x.scale(alpha) + &y.scale(beta)))?;
                let ex = map.evaluate(&with(x.clone()))?;
                let ey = map.evaluate(&with(y.clone()))?;
                let linear = &ex.scale(alpha) + &ey.scale(beta);
                let dev = operator_norm_general(&(&combined - &linear))?;
                let scale = operator_norm_general(&combined)?
                    .max(operator_norm_general(&ex)? * alpha.norm())
                    .max(operator_norm_general(&ey)? * beta.norm());
                Ok(deviation_margin(dev, scale))
            }

            WitnessPayload::Positivity {
                map,
                inputs,
                probes,
            } => {
                if matches!(map.kind, MapKind::RankOne) {
                    // The rank-one pair map is positive through its defining
                    // quadratic form, not through a Hermitian matrix.
                    let (t, s) = (&inputs[0], &inputs[1]);
                    let mut worst = f64::INFINITY;
                    for probe in probes {
                        let x = unwire_vec(probe);
                        let image = rank_one_apply(t.matrix(), s.matrix(), &x)?;
                        let form: Complex64 = image
                            .iter()
                            .zip(x.iter())
                            .map(|(a, b)| a * b.conj())
                            .sum();
                        worst = worst.min(form.re);
                    }
                    let scale = operator_norm(t)?.max(operator_norm(s)?).max(1.0);
                    Ok(Margin { raw: worst, scale })
                } else {
                    let out = map.evaluate_hermitian(inputs)?;
                    Ok(Margin {
                        raw: psd_margin(&out)?,
                        scale: operator_norm(&out)?.max(1.0),
                    })
                }
            }

            WitnessPayload::Cdj {
                map,
                f,
                direction,
                inputs,
            } => {
                let phi = map.evaluate_hermitian(inputs)?;
                let f_phi = matrix_function(&phi, f)?;
                let phi_f =
                    map.evaluate_hermitian(&map_inputs(inputs, |a| matrix_function(a, f))?)?;
                match direction {
                    Direction::Convex => leq_margin(&f_phi, &phi_f),
                    Direction::Concave => leq_margin(&phi_f, &f_phi),
                }
            }

            WitnessPayload::PowerFamily { map, r, inputs } => {
                let phi = map.evaluate_hermitian(inputs)?;
                let phi_pow = power_pos(&phi, *r)?;
                let pow_phi =
                    map.evaluate_hermitian(&map_inputs(inputs, |a| power_pos(a, *r))?)?;
                if (0.0..=1.0).contains(r) {
                    leq_margin(&pow_phi, &phi_pow)
                } else {
                    leq_margin(&phi_pow, &pow_phi)
                }
            }

            WitnessPayload::PowerMonotonicity { map, s, t, inputs } => {
                let lhs = power_pos(
                    &map.evaluate_hermitian(&map_inputs(inputs, |a| power_pos(a, *s))?)?,
                    1.0 / s,
                )?;
                let rhs = power_pos(
                    &map.evaluate_hermitian(&map_inputs(inputs, |a| power_pos(a, *t))?)?,
                    1.0 / t,
                )?;
                leq_margin(&lhs, &rhs)
            }

            WitnessPayload::Ando { map, mean, a, b } => {
                let mixed: Vec<HermitianMatrix> = a
                    .iter()
                    .zip(b)
                    .map(|(ai, bi)| kubo_ando_mean(mean, ai, bi))
                    .collect::<Result<_>>()?;
                let lhs = map.evaluate_hermitian(&mixed)?;
                let rhs = kubo_ando_mean(
                    mean,
                    &map.evaluate_hermitian(a)?,
                    &map.evaluate_hermitian(b)?,
                )?;
                leq_margin(&lhs, &rhs)
            }

            WitnessPayload::MeanSymmetrization { map, mean, a, b } => {
                let ab = kubo_ando_mean(mean, a, b)?;
                let ba = kubo_ando_mean(mean, b, a)?; // A sigma^o B
                let lhs = map
                    .evaluate_hermitian(&[ab.clone(), ba.clone()])?
                    .add(&map.evaluate_hermitian(&[ba, ab])?);
                let rhs = map
                    .evaluate_hermitian(&[a.clone(), b.clone()])?
                    .add(&map.evaluate_hermitian(&[b.clone(), a.clone()])?);
                leq_margin(&lhs, &rhs)
            }

            WitnessPayload::FiedlerExtension {
                map,
                alpha,
                beta,
                lambda,
                a,
            } => {
                let gamma = (1.0 - lambda) * alpha + lambda * beta;
                let delta = (1.0 - lambda) * beta + lambda * alpha;
                let pair = |p: f64, q: f64| -> Result<HermitianMatrix> {
                    let ap = power_pos(a, p)?;
                    let aq = power_pos(a, q)?;
                    Ok(map
                        .evaluate_hermitian(&[ap.clone(), aq.clone()])?
                        .add(&map.evaluate_hermitian(&[aq, ap])?))
                };
                let lhs = pair(gamma, delta)?;
                let rhs = pair(*alpha, *beta)?;
                leq_margin(&lhs, &rhs)
            }

            WitnessPayload::ChoiNormal { map, inputs } => {
                let gram: Vec<ComplexMatrix> = inputs
                    .iter()
                    .map(|a| a.adjoint().matmul(a))
                    .collect::<Result<_>>()?;
                let m = HermitianMatrix::symmetrize(&map.evaluate(&gram)?);
                let x = map.evaluate(inputs)?;
                let adjoints: Vec<ComplexMatrix> =
                    inputs.iter().map(ComplexMatrix::adjoint).collect();
                let xs = map.evaluate(&adjoints)?;
                let d1 = HermitianMatrix::symmetrize(&(m.matrix() - &x.matmul(&xs)?));
                let d2 = HermitianMatrix::symmetrize(&(m.matrix() - &xs.matmul(&x)?));
                let scale = operator_norm(&m)?
                    .max(operator_norm_general(&x)?.powi(2))
                    .max(1.0);
                Ok(Margin::worst([
                    Margin {
                        raw: psd_margin(&d1)?,
                        scale,
                    },
                    Margin {
                        raw: psd_margin(&d2)?,
                        scale,
                    },
                ]))
            }

            WitnessPayload::SchwarzHermitian { map, a, h } => {
                let phi_a = map.evaluate_hermitian(a)?;
                let phi_a_inv = inverse_pos(&phi_a)?;
                let phi_h = map.evaluate_hermitian(h)?;
                let lhs = HermitianMatrix::symmetrize(
                    &phi_h
                        .matrix()
                        .matmul(phi_a_inv.matrix())?
                        .matmul(phi_h.matrix())?,
                );
                let sandwiched: Vec<HermitianMatrix> = a
                    .iter()
                    .zip(h)
                    .map(|(ai, hi)| {
                        let ai_inv = inverse_pos(ai)?;
                        Ok(HermitianMatrix::symmetrize(
                            &hi.matrix()
                                .matmul(ai_inv.matrix())?
                                .matmul(hi.matrix())?,
                        ))
                    })
                    .collect::<Result<_>>()?;
                let rhs = map.evaluate_hermitian(&sandwiched)?;
                leq_margin(&lhs, &rhs)
            }

            WitnessPayload::SchwarzGeneral { map, a, x } => {
                let phi_a = map.evaluate_hermitian(a)?;
                let phi_a_inv = inverse_pos(&phi_a)?;
                let phi_x = map.evaluate(x)?;
                let lhs = HermitianMatrix::symmetrize(
                    &phi_x
                        .adjoint()
                        .matmul(phi_a_inv.matrix())?
                        .matmul(&phi_x)?,
                );
                leq_margin(&lhs, &phi_a)
            }

            WitnessPayload::Kantorovich {
                map,
                interval,
                inputs,
            } => kantorovich_margin(map, *interval, inputs),

            WitnessPayload::ConvexityProfile {
                map,
                a,
                b,
                x,
                y,
                grid,
                tol,
            } => convexity_margin(map, a, b, x, y, grid, *tol),

            WitnessPayload::ReverseCdj {
                map,
                f,
                direction,
                interval,
                inputs,
            } => {
                let widened = interval.power(map.arity as u32);
                let phi = map.evaluate_hermitian(inputs)?;
                let f_phi = matrix_function(&phi, f)?;
                let phi_f =
                    map.evaluate_hermitian(&map_inputs(inputs, |a| matrix_function(a, f))?)?;
                match direction {
                    Direction::Convex => {
                        let alpha = alpha_bound_iv(widened, f)?;
                        leq_margin(&phi_f, &f_phi.scale(alpha))
                    }
                    Direction::Concave => {
                        let beta = beta_bound_iv(widened, f)?;
                        leq_margin(&f_phi.scale(beta), &phi_f)
                    }
                }
            }

            WitnessPayload::ReverseAndo {
                map,
                mean,
                interval,
                a,
                b,
            } => {
                let beta = beta_bound_iv(interval.power(map.arity as u32).ratio(), &mean.representing)?;
                let mixed: Vec<HermitianMatrix> = a
                    .iter()
                    .zip(b)
                    .map(|(ai, bi)| kubo_ando_mean(mean, ai, bi))
                    .collect::<Result<_>>()?;
                let rhs = map.evaluate_hermitian(&mixed)?;
                let lhs = kubo_ando_mean(
                    mean,
                    &map.evaluate_hermitian(a)?,
                    &map.evaluate_hermitian(b)?,
                )?
                .scale(beta);
                leq_margin(&lhs, &rhs)
            }

            WitnessPayload::ReverseMeanAdditivity {
                mean,
                interval,
                a,
                b,
                c,
                d,
            } => {
                let beta = beta_bound_iv(interval.ratio(), &mean.representing)?;
                let lhs = kubo_ando_mean(mean, &a.add(b), &c.add(d))?.scale(beta);
                let rhs = kubo_ando_mean(mean, a, c)?.add(&kubo_ando_mean(mean, b, d)?);
                leq_margin(&lhs, &rhs)
            }

            WitnessPayload::ReverseSymmetrization {
                map,
                mean,
                interval,
                a,
                b,
            } => {
                let beta = beta_bound_iv(interval.power(2).ratio(), &mean.representing)?;
                let ab = kubo_ando_mean(mean, a, b)?;
                let ba = kubo_ando_mean(mean, b, a)?;
                let lhs = map
                    .evaluate_hermitian(&[a.clone(), b.clone()])?
                    .add(&map.evaluate_hermitian(&[b.clone(), a.clone()])?);
                let rhs = map
                    .evaluate_hermitian(&[ab.clone(), ba.clone()])?
                    .add(&map.evaluate_hermitian(&[ba, ab])?)
                    .scale(beta.powi(-2));
                leq_margin(&lhs, &rhs)
            }

            WitnessPayload::InfoPower {
                map,
                t,
                interval,
                weights,
                tuples,
            } => info_power_margin(map, *t, *interval, weights, tuples),

            WitnessPayload::InfoKarcher {
                map,
                interval,
                weights,
                tuples,
            } => info_karcher_margin(map, *interval, weights, tuples),
        }
    }
}

fn kantorovich_margin(
    map: &MapDescriptor,
    interval: Interval,
    inputs: &KantorovichInputs,
) -> Result<Margin> {
    let (m, mx) = (interval.m, interval.max);
    let kappa = (m * m + mx * mx) / (m * mx);
    match inputs {
        KantorovichInputs::Congruence { a, b, x, y } => {
            let dim = map.input_dim;
            let mut s1 = ComplexMatrix::zeros(dim);
            let mut s2 = ComplexMatrix::zeros(dim);
            let mut s3 = ComplexMatrix::zeros(dim);
            let mut s4 = ComplexMatrix::zeros(dim);
            let mut sx = ComplexMatrix::zeros(dim);
            let mut sy = ComplexMatrix::zeros(dim);
            for i in 0..a.len() {
                let xh = sqrt_psd(&x[i])?;
                let yh = sqrt_psd(&y[i])?;
                let a_inv = inverse_pos(&a[i])?;
                let b_inv = inverse_pos(&b[i])?;
                s1 = &s1 + a[i].congruence(xh.matrix())?.matrix();
                s2 = &s2 + b_inv.congruence(yh.matrix())?.matrix();
                s3 = &s3 + a_inv.congruence(xh.matrix())?.matrix();
                s4 = &s4 + b[i].congruence(yh.matrix())?.matrix();
                sx = &sx + x[i].matrix();
                sy = &sy + y[i].matrix();
            }
            let h = HermitianMatrix::symmetrize;
            let lhs = map
                .evaluate_hermitian(&[h(&s1), h(&s2)])?
                .add(&map.evaluate_hermitian(&[h(&s3), h(&s4)])?);
            let rhs = map.evaluate_hermitian(&[h(&sx), h(&sy)])?.scale(kappa);
            leq_margin(&lhs, &rhs)
        }
        KantorovichInputs::ScalarWeights { a, t } => {
            let dim = map.input_dim;
            let mut sum = ComplexMatrix::zeros(dim);
            let mut sum_inv = ComplexMatrix::zeros(dim);
            for (ai, ti) in a.iter().zip(t) {
                sum = &sum + &ai.matrix().scale_re(*ti);
                sum_inv = &sum_inv + &inverse_pos(ai)?.matrix().scale_re(*ti);
            }
            let h = HermitianMatrix::symmetrize;
            let lhs = map.evaluate_hermitian(&[h(&sum), h(&sum_inv)])?;
            let total: f64 = t.iter().sum();
            let identity = HermitianMatrix::identity(dim);
            let rhs = map
                .evaluate_hermitian(&[identity.clone(), identity])?
                .scale(kappa / 2.0 * total * total);
            leq_margin(&lhs, &rhs)
        }
        KantorovichInputs::RankOne { a, b, x } => {
            let x = unwire_vec(x);
            let b_inv = inverse_pos(b)?;
            let a_inv = inverse_pos(a)?;
            let lhs = b_inv.matrix().quadratic_form(&x)?.re * a.matrix().quadratic_form(&x)?.re
                + b.matrix().quadratic_form(&x)?.re * a_inv.matrix().quadratic_form(&x)?.re;
            Ok(Margin {
                raw: kappa - lhs,
                scale: kappa.max(lhs.abs()).max(1.0),
            })
        }
    }
}

fn convexity_margin(
    map: &MapDescriptor,
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    x: &ComplexMatrix,
    y: &ComplexMatrix,
    grid: &[f64],
    tol: f64,
) -> Result<Margin> {
    let profile = |t: f64| -> Result<HermitianMatrix> {
        let term = |p: f64, q: f64| -> Result<HermitianMatrix> {
            let left = power_pos(a, p)?.congruence(x)?;
            let right = power_pos(b, q)?.congruence(y)?;
            map.evaluate_hermitian(&[left, right])
        };
        Ok(term(1.0 + t, 1.0 - t)?.add(&term(1.0 - t, 1.0 + t)?))
    };

    let mut margins = Vec::new();
    let f0 = profile(0.0)?;
    for &t in grid {
        let ft = profile(t)?;
        // minimum at t = 0
        margins.push(leq_margin(&f0, &ft)?);
        // symmetry f(-t) = f(t)
        let fmt = profile(-t)?;
        let dev = operator_norm(&ft.sub(&fmt))?;
        let scale = loewner_scale(&ft, &fmt)?;
        // a deviation check at the caller's tolerance: fold tol in so the
        // margin comparison stays uniform
        margins.push(Margin {
            raw: tol * scale - dev,
            scale,
        });
    }
    // midpoint convexity on grid-compatible pairs
    let on_grid = |v: f64| grid.iter().any(|&g| (g - v).abs() < 1e-12);
    for &s in grid {
        for &t in grid {
            if t == 0.0 || !on_grid(s + t) || !on_grid(s - t) {
                continue;
            }
            let lhs = profile(s)?.scale(2.0);
            let rhs = profile(s + t)?.add(&profile(s - t)?);
            margins.push(leq_margin(&lhs, &rhs)?);
        }
    }
    Ok(Margin::worst(margins))
}

/// Multi-index expansion shared by the information-monotonicity margins:
/// all `k^n` evaluations `Phi(A^{(1)}_{j_1}, ..., A^{(n)}_{j_n})` in the
/// lexicographic order matching [`WeightVector::grid_product`].
fn grid_tuple(
    map: &MapDescriptor,
    tuples: &[Vec<HermitianMatrix>],
) -> Result<Vec<HermitianMatrix>> {
    let n = tuples.len();
    let k = tuples[0].len();
    let mut indices: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::with_capacity(indices.len() * k);
        for prefix in &indices {
            for j in 0..k {
                let mut idx = prefix.clone();
                idx.push(j);
                next.push(idx);
            }
        }
        indices = next;
    }
    indices
        .iter()
        .map(|idx| {
            let slot_inputs: Vec<HermitianMatrix> = idx
                .iter()
                .enumerate()
                .map(|(i, &j)| tuples[i][j].clone())
                .collect();
            map.evaluate_hermitian(&slot_inputs)
        })
        .collect()
}

fn info_validate(
    map: &MapDescriptor,
    weights: &[WeightVector],
    tuples: &[Vec<HermitianMatrix>],
) -> Result<usize> {
    if weights.len() != map.arity || tuples.len() != map.arity {
        return Err(Error::DimensionMismatch(format!(
            "expected {} weight vectors and tuples for map arity {}",
            map.arity, map.arity
        )));
    }
    let k = tuples[0].len();
    for (w, t) in weights.iter().zip(tuples) {
        if w.len() != k || t.len() != k {
            return Err(Error::DimensionMismatch(
                "weight vector length must match its tuple length".into(),
            ));
        }
    }
    Ok(k)
}

fn info_power_margin(
    map: &MapDescriptor,
    t: f64,
    interval: Interval,
    weights: &[WeightVector],
    tuples: &[Vec<HermitianMatrix>],
) -> Result<Margin> {
    info_validate(map, weights, tuples)?;
    let slot_means: Vec<HermitianMatrix> = weights
        .iter()
        .zip(tuples)
        .map(|(w, tu)| power_mean(t, w, tu))
        .collect::<Result<_>>()?;
    let phi_of_means = map.evaluate_hermitian(&slot_means)?;
    let grid_w = WeightVector::grid_product(weights);
    let grid_t = grid_tuple(map, tuples)?;
    let grid_mean = power_mean(t, &grid_w, &grid_t)?;
    if t > 0.0 {
        leq_margin(&phi_of_means, &grid_mean)
    } else {
        let n = map.arity as i32;
        let factor = (interval.max.powi(n) + interval.m.powi(n)).powi(2)
            / (4.0 * interval.max.powi(n) * interval.m.powi(n));
        leq_margin(&grid_mean, &phi_of_means.scale(factor))
    }
}

fn info_karcher_margin(
    map: &MapDescriptor,
    interval: Interval,
    weights: &[WeightVector],
    tuples: &[Vec<HermitianMatrix>],
) -> Result<Margin> {
    info_validate(map, weights, tuples)?;
    let slot_means: Vec<HermitianMatrix> = weights
        .iter()
        .zip(tuples)
        .map(|(w, tu)| karcher_mean(w, tu))
        .collect::<Result<_>>()?;
    let phi_of_means = map.evaluate_hermitian(&slot_means)?;
    let grid_w = WeightVector::grid_product(weights);
    let grid_t = grid_tuple(map, tuples)?;
    let grid_mean = karcher_mean(&grid_w, &grid_t)?;
    let n = map.arity as i32;
    let factor = (interval.max.powi(n) + interval.m.powi(n)).powi(2)
        / (4.0 * interval.max.powi(n) * interval.m.powi(n));
    Ok(Margin::worst([
        leq_margin(&phi_of_means, &grid_mean)?,
        leq_margin(&grid_mean, &phi_of_means.scale(factor))?,
    ]))
}
