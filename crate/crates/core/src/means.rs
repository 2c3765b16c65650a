//! Kubo-Ando matrix means from representing functions, weighted geometric
//! means, matrix power means, the Karcher mean, and the reverse-inequality
//! constants K(m, M, r), alpha(m, M, f), beta(m, M, f).

use serde::{Deserialize, Serialize};

use crate::eig::{
    exp_herm, inv_sqrt_pos, inverse_pos, log_pos, operator_norm, power_pos, sqrt_psd, Interval,
};
use crate::error::{Error, Result};
use crate::functions::{matrix_function, ScalarFunction};
use crate::matrix::{ComplexMatrix, HermitianMatrix};

/// A Kubo-Ando mean named by its representing function `f` with `f(1) = 1`,
/// nonnegative and matrix monotone on `(0, oo)` (caller-asserted).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeanDescriptor {
    pub name: String,
    pub representing: ScalarFunction,
}

impl MeanDescriptor {
    pub fn new(name: impl Into<String>, representing: ScalarFunction) -> Result<Self> {
        let at_one = representing.eval(1.0);
        if (at_one - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidArgument(format!(
                "representing function must satisfy f(1) = 1, got {at_one}"
            )));
        }
        Ok(Self {
            name: name.into(),
            representing,
        })
    }

    pub fn arithmetic() -> Self {
        Self::new("arithmetic", ScalarFunction::arithmetic_rep()).expect("f(1)=1")
    }

    pub fn geometric() -> Self {
        Self::geometric_weighted(0.5)
    }

    /// The alpha-geometric mean `#_alpha` with representing function `t^alpha`.
    pub fn geometric_weighted(alpha: f64) -> Self {
        Self::new(format!("geometric-{alpha}"), ScalarFunction::power(alpha)).expect("f(1)=1")
    }

    pub fn harmonic() -> Self {
        Self::new("harmonic", ScalarFunction::harmonic_rep()).expect("f(1)=1")
    }

    /// The transpose mean `sigma^o` with `A sigma^o B = B sigma A`.
    pub fn transpose(&self) -> Self {
        Self {
            name: format!("{}-transpose", self.name),
            representing: self.representing.transpose(),
        }
    }
}

/// Nonnegative weights summing to one.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidArgument("weight vector must be non-empty".into()));
        }
        if weights.iter().any(|&w| w < 0.0) {
            return Err(Error::InvalidArgument("weights must be nonnegative".into()));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidArgument(format!(
                "weights must sum to 1, got {total}"
            )));
        }
        Ok(Self(weights))
    }

    pub fn uniform(k: usize) -> Self {
        Self(vec![1.0 / k as f64; k])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weights(&self) -> &[f64] {
        &self.0
    }

    /// Entrywise product of several weight vectors, flattened over the full
    /// index grid: entry `(j_1, ..., j_n)` carries `prod_i w^{(i)}_{j_i}`.
    /// The result sums to one by distributivity.
    pub fn grid_product(vectors: &[WeightVector]) -> WeightVector {
        let mut acc = vec![1.0];
        for v in vectors {
            let mut next = Vec::with_capacity(acc.len() * v.len());
            for &a in &acc {
                for &w in v.weights() {
                    next.push(a * w);
                }
            }
            acc = next;
        }
        WeightVector(acc)
    }
}

/// `A sigma B = A^{1/2} f(A^{-1/2} B A^{-1/2}) A^{1/2}` for `A > 0`, `B >= 0`.
pub fn kubo_ando_mean(
    mean: &MeanDescriptor,
    a: &HermitianMatrix,
    b: &HermitianMatrix,
) -> Result<HermitianMatrix> {
    let a_half = sqrt_psd(a)?;
    let a_inv_half = inv_sqrt_pos(a)?;
    let inner = b.congruence(a_inv_half.matrix())?;
    let f_inner = matrix_function(&inner, &mean.representing)?;
    f_inner.congruence(a_half.matrix())
}

/// The weighted geometric mean `A #_alpha B`.
pub fn weighted_geometric(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    alpha: f64,
) -> Result<HermitianMatrix> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidArgument(format!(
            "geometric weight must lie in [0, 1], got {alpha}"
        )));
    }
    let a_half = sqrt_psd(a)?;
    let a_inv_half = inv_sqrt_pos(a)?;
    let inner = b.congruence(a_inv_half.matrix())?;
    let powered = power_pos(&inner, alpha)?;
    powered.congruence(a_half.matrix())
}

fn weighted_sum(weights: &WeightVector, tuple: &[HermitianMatrix]) -> HermitianMatrix {
    let dim = tuple[0].dim();
    let mut acc = ComplexMatrix::zeros(dim);
    for (w, a) in weights.weights().iter().zip(tuple) {
        acc = &acc + &a.matrix().scale_re(*w);
    }
    HermitianMatrix::symmetrize(&acc)
}

fn check_tuple(weights: &WeightVector, tuple: &[HermitianMatrix]) -> Result<()> {
    if weights.len() != tuple.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} weights for {} matrices",
            weights.len(),
            tuple.len()
        )));
    }
    if tuple.is_empty() {
        return Err(Error::InvalidArgument("empty matrix tuple".into()));
    }
    let dim = tuple[0].dim();
    if tuple.iter().any(|a| a.dim() != dim) {
        return Err(Error::DimensionMismatch("mixed dimensions in tuple".into()));
    }
    Ok(())
}

const POWER_MEAN_REL_TOL: f64 = 1e-12;

/// The matrix power mean `P_t(w; A)`, the unique positive fixed point of
/// `X = sum_i w_i (X #_t A_i)` for `t in (0, 1]`, extended to `t in [-1, 0)`
/// by `P_t(w; A) = P_{-t}(w; A^{-1})^{-1}`.
///
/// The fixed point is reached from the arithmetic mean by plain iteration;
/// the map contracts the Thompson metric with ratio `1 - t`, so the
/// iteration budget scales like `1/t`.
pub fn power_mean(
    t: f64,
    weights: &WeightVector,
    tuple: &[HermitianMatrix],
) -> Result<HermitianMatrix> {
    if t == 0.0 || !(-1.0..=1.0).contains(&t) {
        return Err(Error::InvalidArgument(format!(
            "power mean requires t in [-1, 1] \\ {{0}}, got {t}"
        )));
    }
    check_tuple(weights, tuple)?;
    if t < 0.0 {
        let inverted: Vec<HermitianMatrix> =
            tuple.iter().map(inverse_pos).collect::<Result<_>>()?;
        let positive = power_mean(-t, weights, &inverted)?;
        return inverse_pos(&positive);
    }

    let mut x = weighted_sum(weights, tuple);
    let max_iter = 1000usize.max((40.0 / t).ceil() as usize);
    let mut residual = f64::INFINITY;
    for _ in 0..max_iter {
        let x_half = sqrt_psd(&x)?;
        let x_inv_half = inv_sqrt_pos(&x)?;
        let dim = x.dim();
        let mut next = ComplexMatrix::zeros(dim);
        for (w, a) in weights.weights().iter().zip(tuple) {
            let inner = a.congruence(x_inv_half.matrix())?;
            let powered = power_pos(&inner, t)?;
            let term = powered.congruence(x_half.matrix())?;
            next = &next + &term.matrix().scale_re(*w);
        }
        let next = HermitianMatrix::symmetrize(&next);
        let step = operator_norm(&next.sub(&x))?;
        let scale = operator_norm(&x)?.max(f64::MIN_POSITIVE);
        residual = step / scale;
        if residual <= POWER_MEAN_REL_TOL {
            // The residual ||X - sum w_i (X #_t A_i)|| at the returned X is
            // exactly the step just measured.
            return Ok(x);
        }
        x = next;
    }
    Err(Error::NonConvergence {
        residual,
        iterations: max_iter,
    })
}

const KARCHER_RESIDUAL_TOL: f64 = 1e-10;
const KARCHER_MAX_ITER: usize = 2000;

/// The Karcher mean: the unique positive solution of
/// `sum_i w_i log(X^{-1/2} A_i X^{-1/2}) = 0`, computed by the
/// exponential-barycenter fixed point from the arithmetic mean.
///
/// The returned matrix satisfies the Karcher equation with operator-norm
/// residual at most `1e-10`.
pub fn karcher_mean(
    weights: &WeightVector,
    tuple: &[HermitianMatrix],
) -> Result<HermitianMatrix> {
    check_tuple(weights, tuple)?;
    let dim = tuple[0].dim();
    let mut x = weighted_sum(weights, tuple);
    let mut residual = f64::INFINITY;
    for _ in 0..KARCHER_MAX_ITER {
        let x_half = sqrt_psd(&x)?;
        let x_inv_half = inv_sqrt_pos(&x)?;
        let mut tangent = ComplexMatrix::zeros(dim);
        for (w, a) in weights.weights().iter().zip(tuple) {
            let inner = a.congruence(x_inv_half.matrix())?;
            tangent = &tangent + &log_pos(&inner)?.matrix().scale_re(*w);
        }
        let tangent = HermitianMatrix::symmetrize(&tangent);
        residual = operator_norm(&tangent)?;
        if residual <= KARCHER_RESIDUAL_TOL {
            return Ok(x);
        }
        x = exp_herm(&tangent)?.congruence(x_half.matrix())?;
    }
    Err(Error::NonConvergence {
        residual,
        iterations: KARCHER_MAX_ITER,
    })
}

/// Karcher-equation residual `||sum_i w_i log(X^{-1/2} A_i X^{-1/2})||`.
pub fn karcher_residual(
    x: &HermitianMatrix,
    weights: &WeightVector,
    tuple: &[HermitianMatrix],
) -> Result<f64> {
    let x_inv_half = inv_sqrt_pos(x)?;
    let mut tangent = ComplexMatrix::zeros(x.dim());
    for (w, a) in weights.weights().iter().zip(tuple) {
        let inner = a.congruence(x_inv_half.matrix())?;
        tangent = &tangent + &log_pos(&inner)?.matrix().scale_re(*w);
    }
    operator_norm(&HermitianMatrix::symmetrize(&tangent))
}

/// The generalized Kantorovich constant
/// `K(m, M, r) = (m M^r - M m^r) / ((r-1)(M-m)) *
///  ((r-1)/r * (M^r - m^r) / (m M^r - M m^r))^r`,
/// with the removable singularities `m = M`, `r = 0`, `r = 1` set to 1.
pub fn kantorovich_constant(m: f64, max: f64, r: f64) -> f64 {
    assert!(m > 0.0 && max >= m, "requires 0 < m <= M");
    if m == max || r == 0.0 || r == 1.0 {
        return 1.0;
    }
    let first = (m * max.powf(r) - max * m.powf(r)) / ((r - 1.0) * (max - m));
    let inner = (r - 1.0) / r * (max.powf(r) - m.powf(r)) / (m * max.powf(r) - max * m.powf(r));
    first * inner.powf(r)
}

/// Chord of `f` over `[m, M]`: the line through `(m, f(m))` and `(M, f(M))`.
fn chord(f: &ScalarFunction, m: f64, max: f64, t: f64) -> f64 {
    (f.eval(max) - f.eval(m)) / (max - m) * (t - m) + f.eval(m)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Extremum {
    Max,
    Min,
}

/// Extremum of `chord(t) / f(t)` over `[m, M]` by a 1e5-point grid scan
/// followed by golden-section refinement to abscissa tolerance 1e-10.
fn chord_ratio_extremum(
    m: f64,
    max: f64,
    f: &ScalarFunction,
    which: Extremum,
) -> Result<f64> {
    let valid = m > 0.0 && max >= m;
    if !valid {
        return Err(Error::InvalidArgument(format!(
            "bounds require 0 < m <= M, got [{m}, {max}]"
        )));
    }
    if m == max {
        return Ok(1.0);
    }
    if !f.domain.contains(m) || !f.domain.contains(max) {
        return Err(Error::Precondition(format!(
            "[{m}, {max}] not inside function domain {}",
            f.domain
        )));
    }
    let ratio = |t: f64| -> Result<f64> {
        let ft = f.eval(t);
        if ft <= 0.0 {
            return Err(Error::Precondition(format!(
                "function must be positive on [{m}, {max}]; f({t}) = {ft}"
            )));
        }
        Ok(chord(f, m, max, t) / ft)
    };
    // signed so both extrema run as maximization
    let sign = match which {
        Extremum::Max => 1.0,
        Extremum::Min => -1.0,
    };

    let n = 100_000usize;
    let step = (max - m) / n as f64;
    let mut best_idx = 0usize;
    let mut best = f64::NEG_INFINITY;
    for i in 0..=n {
        let t = m + step * i as f64;
        let v = sign * ratio(t)?;
        if v > best {
            best = v;
            best_idx = i;
        }
    }

    // golden-section on the bracket around the best grid point
    let mut lo = m + step * best_idx.saturating_sub(1) as f64;
    let mut hi = (m + step * (best_idx + 1) as f64).min(max);
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - phi * (hi - lo);
    let mut x2 = lo + phi * (hi - lo);
    let mut f1 = sign * ratio(x1)?;
    let mut f2 = sign * ratio(x2)?;
    while hi - lo > 1e-10 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = sign * ratio(x2)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = sign * ratio(x1)?;
        }
    }
    Ok(best.max(f1.max(f2)) * sign)
}

/// `alpha(m, M, f)`: the largest ratio of the chord of `f` over `[m, M]`
/// to `f` itself. At least 1 for convex positive `f`.
pub fn alpha_bound(m: f64, max: f64, f: &ScalarFunction) -> Result<f64> {
    chord_ratio_extremum(m, max, f, Extremum::Max)
}

/// `beta(m, M, f)`: the smallest chord-to-function ratio over `[m, M]`.
/// At most 1 for concave positive `f`.
pub fn beta_bound(m: f64, max: f64, f: &ScalarFunction) -> Result<f64> {
    chord_ratio_extremum(m, max, f, Extremum::Min)
}

/// Convenience: `alpha`/`beta` over an [`Interval`].
pub fn alpha_bound_iv(iv: Interval, f: &ScalarFunction) -> Result<f64> {
    alpha_bound(iv.m, iv.max, f)
}

pub fn beta_bound_iv(iv: Interval, f: &ScalarFunction) -> Result<f64> {
    beta_bound(iv.m, iv.max, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eig::{eigenvalues, loewner_scale};
    use crate::random::{random_positive, RngStream};

    fn iv(m: f64, max: f64) -> Interval {
        Interval::new(m, max).unwrap()
    }

    #[test]
    fn geometric_mean_with_identity_is_sqrt() {
        let b = HermitianMatrix::from_real(2, &[2.0, 1.0, 1.0, 2.0]).unwrap();
        let g = kubo_ando_mean(&MeanDescriptor::geometric(), &HermitianMatrix::identity(2), &b)
            .unwrap();
        let sq = HermitianMatrix::symmetrize(&g.matrix().matmul(g.matrix()).unwrap());
        assert!(sq.sub(&b).matrix().max_abs() < 1e-10);
    }

    #[test]
    fn commuting_geometric_mean() {
        let a = HermitianMatrix::diag(&[1.0, 4.0]);
        let b = HermitianMatrix::diag(&[4.0, 1.0]);
        let g = kubo_ando_mean(&MeanDescriptor::geometric(), &a, &b).unwrap();
        assert!(g.sub(&HermitianMatrix::diag(&[2.0, 2.0])).matrix().max_abs() < 1e-10);
    }

    #[test]
    fn arithmetic_mean_is_average() {
        let mut rng = RngStream::from_seed(2);
        let a = random_positive(3, iv(1.0, 2.0), &mut rng);
        let b = random_positive(3, iv(1.0, 2.0), &mut rng);
        let m = kubo_ando_mean(&MeanDescriptor::arithmetic(), &a, &b).unwrap();
        let avg = a.add(&b).scale(0.5);
        assert!(m.sub(&avg).matrix().max_abs() < 1e-10);
    }

    #[test]
    fn weighted_geometric_endpoints_and_commuting() {
        let mut rng = RngStream::from_seed(3);
        let a = random_positive(3, iv(1.0, 2.0), &mut rng);
        let b = random_positive(3, iv(1.0, 2.0), &mut rng);
        assert!(weighted_geometric(&a, &b, 0.0).unwrap().sub(&a).matrix().max_abs() < 1e-10);
        assert!(weighted_geometric(&a, &b, 1.0).unwrap().sub(&b).matrix().max_abs() < 1e-10);

        let da = HermitianMatrix::diag(&[1.0, 8.0]);
        let db = HermitianMatrix::diag(&[4.0, 2.0]);
        let g = weighted_geometric(&da, &db, 0.25).unwrap();
        let expect = HermitianMatrix::diag(&[4f64.powf(0.25), 8f64.powf(0.75) * 2f64.powf(0.25)]);
        assert!(g.sub(&expect).matrix().max_abs() < 1e-10);
    }

    #[test]
    fn weighted_geometric_transpose_identity() {
        let mut rng = RngStream::from_seed(4);
        let a = random_positive(3, iv(0.5, 2.0), &mut rng);
        let b = random_positive(3, iv(0.5, 2.0), &mut rng);
        for alpha in [0.25, 0.5, 0.9] {
            let lhs = weighted_geometric(&a, &b, alpha).unwrap();
            let rhs = weighted_geometric(&b, &a, 1.0 - alpha).unwrap();
            let scale = loewner_scale(&lhs, &rhs).unwrap();
            assert!(lhs.sub(&rhs).matrix().max_abs() <= 1e-9 * scale);
        }
    }

    #[test]
    fn power_mean_degenerate_cases() {
        let mut rng = RngStream::from_seed(5);
        let a = random_positive(3, iv(1.0, 2.0), &mut rng);
        let tuple = vec![a.clone(), a.clone(), a.clone()];
        let w = WeightVector::uniform(3);
        // idempotency
        let p = power_mean(0.5, &w, &tuple).unwrap();
        assert!(p.sub(&a).matrix().max_abs() < 1e-9);
        // t = 1 is the arithmetic mean
        let b = random_positive(3, iv(1.0, 2.0), &mut rng);
        let c = random_positive(3, iv(1.0, 2.0), &mut rng);
        let tuple = vec![a.clone(), b.clone(), c.clone()];
        let p1 = power_mean(1.0, &w, &tuple).unwrap();
        let arith = weighted_sum(&w, &tuple);
        assert!(p1.sub(&arith).matrix().max_abs() < 1e-11);
        // t = -1 is the harmonic mean
        let pm1 = power_mean(-1.0, &w, &tuple).unwrap();
        let hsum = weighted_sum(
            &w,
            &tuple.iter().map(|x| inverse_pos(x).unwrap()).collect::<Vec<_>>(),
        );
        let harm = inverse_pos(&hsum).unwrap();
        assert!(pm1.sub(&harm).matrix().max_abs() < 1e-9);
    }

    #[test]
    fn power_mean_residual_certificate() {
        let mut rng = RngStream::from_seed(6);
        let tuple: Vec<_> = (0..3).map(|_| random_positive(3, iv(1.0, 2.0), &mut rng)).collect();
        let w = WeightVector::new(vec![0.5, 0.3, 0.2]).unwrap();
        let t = 0.3;
        let x = power_mean(t, &w, &tuple).unwrap();
        // residual ||X - sum w_i (X #_t A_i)||
        let mut fixed = ComplexMatrix::zeros(3);
        for (wi, ai) in w.weights().iter().zip(&tuple) {
            fixed = &fixed + &weighted_geometric(&x, ai, t).unwrap().matrix().scale_re(*wi);
        }
        let fixed = HermitianMatrix::symmetrize(&fixed);
        let res = operator_norm(&x.sub(&fixed)).unwrap();
        assert!(res <= 1e-10 * operator_norm(&x).unwrap());
    }

    #[test]
    fn karcher_commuting_diagonal() {
        let a1 = HermitianMatrix::diag(&[1.0, 8.0]);
        let a2 = HermitianMatrix::diag(&[4.0, 2.0]);
        let w = WeightVector::uniform(2);
        let g = karcher_mean(&w, &[a1, a2]).unwrap();
        assert!(g.sub(&HermitianMatrix::diag(&[2.0, 4.0])).matrix().max_abs() < 1e-9);
    }

    #[test]
    fn karcher_two_points_is_geometric_mean() {
        let mut rng = RngStream::from_seed(7);
        for _ in 0..5 {
            let a = random_positive(3, iv(0.5, 2.0), &mut rng);
            let b = random_positive(3, iv(0.5, 2.0), &mut rng);
            let g = karcher_mean(&WeightVector::uniform(2), &[a.clone(), b.clone()]).unwrap();
            let sharp = weighted_geometric(&a, &b, 0.5).unwrap();
            let scale = loewner_scale(&g, &sharp).unwrap();
            assert!(g.sub(&sharp).matrix().max_abs() <= 1e-8 * scale);
        }
    }

    #[test]
    fn karcher_congruence_equivariance() {
        let mut rng = RngStream::from_seed(8);
        let tuple: Vec<_> = (0..3).map(|_| random_positive(3, iv(1.0, 2.0), &mut rng)).collect();
        let w = WeightVector::new(vec![0.2, 0.5, 0.3]).unwrap();
        let u = crate::random::haar_unitary(3, &mut rng);
        let g = karcher_mean(&w, &tuple).unwrap();
        let conj_tuple: Vec<_> = tuple.iter().map(|a| a.congruence(&u).unwrap()).collect();
        let g_conj = karcher_mean(&w, &conj_tuple).unwrap();
        let expect = g.congruence(&u).unwrap();
        assert!(g_conj.sub(&expect).matrix().max_abs() <= 1e-8 * operator_norm(&g).unwrap());
    }

    #[test]
    fn kantorovich_constant_values() {
        assert!((kantorovich_constant(1.0, 2.0, 2.0) - 1.125).abs() < 1e-15);
        // K(m, M, 2) = K(m, M, -1) = (M+m)^2 / (4Mm)
        for (m, max) in [(1.0, 2.0), (0.5, 3.0), (1.0, 4.0)] {
            let classic = (max + m) * (max + m) / (4.0 * max * m);
            assert!((kantorovich_constant(m, max, 2.0) - classic).abs() < 1e-12);
            assert!((kantorovich_constant(m, max, -1.0) - classic).abs() < 1e-12);
        }
        // degenerate and limit cases
        assert_eq!(kantorovich_constant(2.0, 2.0, 3.0), 1.0);
        assert_eq!(kantorovich_constant(1.0, 2.0, 1.0), 1.0);
        assert_eq!(kantorovich_constant(1.0, 2.0, 0.0), 1.0);
    }

    #[test]
    fn alpha_matches_kantorovich_for_powers() {
        for (m, max) in [(1.0, 2.0), (1.0, 4.0)] {
            for r in [-1.0, 2.0, 3.0] {
                let a = alpha_bound(m, max, &ScalarFunction::power(r)).unwrap();
                let k = kantorovich_constant(m, max, r);
                assert!((a - k).abs() < 1e-9, "m={m} M={max} r={r}: {a} vs {k}");
            }
        }
    }

    #[test]
    fn alpha_square_on_1_2() {
        let a = alpha_bound(1.0, 2.0, &ScalarFunction::power(2.0)).unwrap();
        assert!((a - 1.125).abs() < 1e-10);
    }

    #[test]
    fn affine_chord_ratio_is_one() {
        let f = ScalarFunction::affine(2.0, 1.0);
        assert!((alpha_bound(1.0, 3.0, &f).unwrap() - 1.0).abs() < 1e-12);
        assert!((beta_bound(1.0, 3.0, &f).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn beta_sqrt_on_1_4() {
        let b = beta_bound(1.0, 4.0, &ScalarFunction::sqrt()).unwrap();
        let expect = 4.0 / (3.0 * 2f64.sqrt());
        assert!((b - expect).abs() < 1e-9);
        // matches K(1, 4, 1/2)
        assert!((b - kantorovich_constant(1.0, 4.0, 0.5)).abs() < 1e-9);
    }

    #[test]
    fn beta_ratio_interval_closed_form() {
        // beta(m/M, M/m, sqrt) = 2 sqrt(Mm) / (M + m) = K(m/M, M/m, 1/2)
        for (m, max) in [(1.0, 4.0), (1.0, 2.0), (0.5, 3.0)] {
            let b = beta_bound(m / max, max / m, &ScalarFunction::sqrt()).unwrap();
            let closed = 2.0 * (m * max).sqrt() / (m + max);
            assert!((b - closed).abs() < 1e-9, "m={m} M={max}: {b} vs {closed}");
            assert!((b - kantorovich_constant(m / max, max / m, 0.5)).abs() < 1e-9);
        }
    }

    #[test]
    fn mean_bounds_harmonic_below_arithmetic() {
        // harmonic <= geometric <= arithmetic on random positive pairs
        let mut rng = RngStream::from_seed(10);
        for _ in 0..20 {
            let a = random_positive(3, iv(0.5, 2.5), &mut rng);
            let b = random_positive(3, iv(0.5, 2.5), &mut rng);
            let h = kubo_ando_mean(&MeanDescriptor::harmonic(), &a, &b).unwrap();
            let g = kubo_ando_mean(&MeanDescriptor::geometric(), &a, &b).unwrap();
            let m = kubo_ando_mean(&MeanDescriptor::arithmetic(), &a, &b).unwrap();
            assert!(crate::eig::loewner_leq(&h, &g, 1e-8).unwrap());
            assert!(crate::eig::loewner_leq(&g, &m, 1e-8).unwrap());
        }
    }

    #[test]
    fn power_mean_monotone_in_t() {
        let mut rng = RngStream::from_seed(11);
        let tuple: Vec<_> = (0..3).map(|_| random_positive(3, iv(1.0, 2.0), &mut rng)).collect();
        let w = WeightVector::uniform(3);
        let ts = [-1.0, -0.5, 0.5, 1.0];
        let means: Vec<_> = ts.iter().map(|&t| power_mean(t, &w, &tuple).unwrap()).collect();
        for i in 0..means.len() - 1 {
            assert!(crate::eig::loewner_leq(&means[i], &means[i + 1], 1e-8).unwrap());
        }
    }

    #[test]
    fn karcher_is_power_mean_limit() {
        let mut rng = RngStream::from_seed(12);
        let tuple: Vec<_> = (0..3).map(|_| random_positive(2, iv(1.0, 2.0), &mut rng)).collect();
        let w = WeightVector::uniform(3);
        let g = karcher_mean(&w, &tuple).unwrap();
        let mut last = f64::INFINITY;
        for t in [0.1, 0.01, 0.001] {
            let p = power_mean(t, &w, &tuple).unwrap();
            let dist = operator_norm(&g.sub(&p)).unwrap();
            assert!(dist < last, "t={t}: {dist} !< {last}");
            last = dist;
        }
    }

    #[test]
    fn subadditivity_of_means() {
        let mut rng = RngStream::from_seed(13);
        for mean in [
            MeanDescriptor::geometric(),
            MeanDescriptor::harmonic(),
            MeanDescriptor::geometric_weighted(0.3),
        ] {
            for _ in 0..10 {
                let a = random_positive(3, iv(0.5, 2.0), &mut rng);
                let b = random_positive(3, iv(0.5, 2.0), &mut rng);
                let c = random_positive(3, iv(0.5, 2.0), &mut rng);
                let d = random_positive(3, iv(0.5, 2.0), &mut rng);
                let lhs = kubo_ando_mean(&mean, &a, &c).unwrap().add(&kubo_ando_mean(&mean, &b, &d).unwrap());
                let rhs = kubo_ando_mean(&mean, &a.add(&b), &c.add(&d)).unwrap();
                assert!(crate::eig::loewner_leq(&lhs, &rhs, 1e-8).unwrap());
            }
        }
    }

    #[test]
    fn weight_vector_validation() {
        assert!(WeightVector::new(vec![0.5, 0.5]).is_ok());
        assert!(WeightVector::new(vec![0.5, 0.4]).is_err());
        assert!(WeightVector::new(vec![1.5, -0.5]).is_err());
        let grid = WeightVector::grid_product(&[
            WeightVector::new(vec![0.25, 0.75]).unwrap(),
            WeightVector::new(vec![0.5, 0.5]).unwrap(),
        ]);
        assert_eq!(grid.len(), 4);
        assert!((grid.weights().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!((grid.weights()[1] - 0.125).abs() < 1e-15);
    }

    #[test]
    fn mean_descriptor_rejects_unnormalized() {
        assert!(MeanDescriptor::new("bad", ScalarFunction::affine(2.0, 1.0)).is_err());
    }

    #[test]
    fn spectrum_of_power_mean_stays_in_bounds() {
        let mut rng = RngStream::from_seed(14);
        let tuple: Vec<_> = (0..2).map(|_| random_positive(2, iv(1.0, 2.0), &mut rng)).collect();
        let p = power_mean(0.5, &WeightVector::uniform(2), &tuple).unwrap();
        let eigs = eigenvalues(&p).unwrap();
        assert!(eigs[0] >= 1.0 - 1e-8 && eigs[1] <= 2.0 + 1e-8);
    }
}
