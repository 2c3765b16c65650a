//! Hermitian spectral calculus: a cyclic Jacobi eigensolver for dense complex
//! Hermitian matrices, spectral decompositions with merged near-degenerate
//! projections, and the Loewner-order comparisons built on top of them.
//!
//! Robustness is preferred over speed throughout; input dimensions stay small
//! (inputs <= ~16, map outputs in the hundreds at most).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, HermitianMatrix};

/// Iteration cap for the Jacobi sweep loop.
const MAX_SWEEPS: usize = 100;

/// Off-diagonal Frobenius threshold, relative to the input Frobenius norm.
const SWEEP_TOL: f64 = 1e-13;

/// Relative gap below which adjacent eigenvalues share one projection.
const MERGE_GAP: f64 = 1e-9;

/// Spectrum bounds `0 < m <= M` for random draws and reverse constants.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub m: f64,
    pub max: f64,
}

impl Interval {
    pub fn new(m: f64, max: f64) -> Result<Self> {
        // NaN bounds fail every comparison and land here too
        let valid = m > 0.0 && max >= m && max.is_finite();
        if !valid {
            return Err(Error::InvalidArgument(format!(
                "interval requires 0 < m <= M, got [{m}, {max}]"
            )));
        }
        Ok(Self { m, max })
    }

    /// `[m^k, M^k]`, the spectrum interval of a unital map output for
    /// inputs bounded in `[m, M]`.
    pub fn power(&self, k: u32) -> Self {
        Self {
            m: self.m.powi(k as i32),
            max: self.max.powi(k as i32),
        }
    }

    /// `[m/M, M/m]`, the spectrum interval of `A^{-1/2} B A^{-1/2}`.
    pub fn ratio(&self) -> Self {
        Self {
            m: self.m / self.max,
            max: self.max / self.m,
        }
    }
}

/// Eigenvalues with orthogonal spectral projections summing to the identity.
///
/// Near-degenerate eigenvalues (relative gap below `1e-9`) are merged into a
/// single projection so each projection is well conditioned.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub projections: Vec<HermitianMatrix>,
}

impl SpectralDecomposition {
    /// Rebuilds `sum_j lambda_j P_j`.
    pub fn synthesize(&self) -> HermitianMatrix {
        let dim = self.projections[0].dim();
        let mut acc = ComplexMatrix::zeros(dim);
        for (lam, p) in self.eigenvalues.iter().zip(&self.projections) {
            acc = &acc + &p.matrix().scale_re(*lam);
        }
        HermitianMatrix::symmetrize(&acc)
    }

    /// Applies a scalar function through the spectral resolution.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> HermitianMatrix {
        let dim = self.projections[0].dim();
        let mut acc = ComplexMatrix::zeros(dim);
        for (lam, p) in self.eigenvalues.iter().zip(&self.projections) {
            acc = &acc + &p.matrix().scale_re(f(*lam));
        }
        HermitianMatrix::symmetrize(&acc)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues
            .iter()
            .cloned()
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// One Jacobi rotation zeroing the (p,q) pivot. The complex phase of the
/// pivot is folded into the rotation so only real 2x2 trigonometry remains.
#[derive(Clone, Copy)]
struct Rotation {
    c: f64,
    s: f64,
    w: Complex64, // unit phase; the 2x2 unitary is [[c, s],[-s*w, c*w]]
}

fn plan_rotation(app: f64, aqq: f64, apq: Complex64) -> Rotation {
    let b = apq.norm();
    let w = apq.conj() / b;
    let tau = (aqq - app) / (2.0 * b);
    let t = if tau == 0.0 {
        1.0
    } else {
        tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    Rotation { c, s: t * c, w }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a.get(i, j).norm_sqr();
            }
        }
    }
    acc.sqrt()
}

fn jacobi(a: &HermitianMatrix, want_vectors: bool) -> Result<(Vec<f64>, Option<ComplexMatrix>)> {
    let n = a.dim();
    let mut m = a.matrix().clone();
    let mut q = want_vectors.then(|| ComplexMatrix::identity(n));

    if n == 1 {
        return Ok((vec![m.get(0, 0).re], q));
    }

    let norm = m.frobenius_norm();
    if norm == 0.0 {
        return Ok((vec![0.0; n], q));
    }
    let target = SWEEP_TOL * norm;

    for _sweep in 0..MAX_SWEEPS {
        if off_diagonal_norm(&m) <= target {
            let eig = (0..n).map(|i| m.get(i, i).re).collect();
            return Ok((eig, q));
        }
        for p in 0..n {
            for qi in (p + 1)..n {
                let apq = m.get(p, qi);
                if apq.norm() == 0.0 {
                    continue;
                }
                let rot = plan_rotation(m.get(p, p).re, m.get(qi, qi).re, apq);
                apply_rotation(&mut m, p, qi, rot);
                if let Some(qmat) = q.as_mut() {
                    apply_rotation_columns(qmat, p, qi, rot);
                }
            }
        }
    }

    let off = off_diagonal_norm(&m);
    if off <= target.max(1e-11 * norm) {
        // Stalled within a digit of the target: accept, the functional
        // calculus tolerance (1e-8 relative) has ample headroom.
        let eig = (0..n).map(|i| m.get(i, i).re).collect();
        return Ok((eig, q));
    }
    Err(Error::EigNonConvergence {
        norm,
        off_norm: off,
        sweeps: MAX_SWEEPS,
    })
}

/// `A <- V* A V` with V the identity except the (p,q) plane rotation.
fn apply_rotation(m: &mut ComplexMatrix, p: usize, q: usize, rot: Rotation) {
    let n = m.dim();
    let Rotation { c, s, w } = rot;
    // column update: M <- M V
    for i in 0..n {
        let mip = m.get(i, p);
        let miq = m.get(i, q);
        m.set(i, p, mip * c - miq * (w * s));
        m.set(i, q, mip * s + miq * (w * c));
    }
    // row update: M <- V* M
    let wc = w.conj();
    for j in 0..n {
        let mpj = m.get(p, j);
        let mqj = m.get(q, j);
        m.set(p, j, mpj * c - mqj * (wc * s));
        m.set(q, j, mpj * s + mqj * (wc * c));
    }
    // The pivot is zero by construction; pin it and keep the diagonal real.
    m.set(p, q, Complex64::new(0.0, 0.0));
    m.set(q, p, Complex64::new(0.0, 0.0));
    let dp = m.get(p, p).re;
    let dq = m.get(q, q).re;
    m.set(p, p, Complex64::new(dp, 0.0));
    m.set(q, q, Complex64::new(dq, 0.0));
}

/// `Q <- Q V`, column side only (for eigenvector accumulation).
fn apply_rotation_columns(m: &mut ComplexMatrix, p: usize, q: usize, rot: Rotation) {
    let n = m.dim();
    let Rotation { c, s, w } = rot;
    for i in 0..n {
        let mip = m.get(i, p);
        let miq = m.get(i, q);
        m.set(i, p, mip * c - miq * (w * s));
        m.set(i, q, mip * s + miq * (w * c));
    }
}

/// Full spectral decomposition of a Hermitian matrix.
///
/// Eigenvalues come back sorted ascending; eigenvalues closer than
/// `1e-9 * ||A||` are merged into a common projection.
pub fn hermitian_eig(a: &HermitianMatrix) -> Result<SpectralDecomposition> {
    let n = a.dim();
    let (eig, q) = jacobi(a, true)?;
    let q = q.expect("eigenvectors requested");

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig[i].partial_cmp(&eig[j]).expect("non-NaN eigenvalues"));

    let scale = eig.iter().fold(0.0f64, |m, &l| m.max(l.abs()));
    let gap = MERGE_GAP * scale;

    let mut eigenvalues = Vec::new();
    let mut projections = Vec::new();
    let mut cluster: Vec<usize> = Vec::new();
    let flush = |cluster: &mut Vec<usize>, eigenvalues: &mut Vec<f64>, projections: &mut Vec<HermitianMatrix>| {
        if cluster.is_empty() {
            return;
        }
        let lam = cluster.iter().map(|&i| eig[i]).sum::<f64>() / cluster.len() as f64;
        let mut p = ComplexMatrix::zeros(n);
        for &col in cluster.iter() {
            for r in 0..n {
                let vr = q.get(r, col);
                for cidx in 0..n {
                    let val = p.get(r, cidx) + vr * q.get(cidx, col).conj();
                    p.set(r, cidx, val);
                }
            }
        }
        eigenvalues.push(lam);
        projections.push(HermitianMatrix::symmetrize(&p));
        cluster.clear();
    };

    for &idx in &order {
        if let Some(&last) = cluster.last() {
            if eig[idx] - eig[last] >= gap || (gap == 0.0 && eig[idx] != eig[last]) {
                flush(&mut cluster, &mut eigenvalues, &mut projections);
            }
        }
        cluster.push(idx);
    }
    flush(&mut cluster, &mut eigenvalues, &mut projections);

    Ok(SpectralDecomposition {
        eigenvalues,
        projections,
    })
}

/// Sorted eigenvalues only (no projections); cheaper than [`hermitian_eig`].
pub fn eigenvalues(a: &HermitianMatrix) -> Result<Vec<f64>> {
    let (mut eig, _) = jacobi(a, false)?;
    eig.sort_by(|x, y| x.partial_cmp(y).expect("non-NaN eigenvalues"));
    Ok(eig)
}

/// Minimum eigenvalue; the Loewner margin of `A` against zero.
pub fn psd_margin(a: &HermitianMatrix) -> Result<f64> {
    Ok(eigenvalues(a)?[0])
}

/// Operator (spectral) norm of a Hermitian matrix.
pub fn operator_norm(a: &HermitianMatrix) -> Result<f64> {
    let eig = eigenvalues(a)?;
    Ok(eig[0].abs().max(eig[eig.len() - 1].abs()))
}

/// Operator norm of a general matrix, via the top eigenvalue of `A* A`.
pub fn operator_norm_general(a: &ComplexMatrix) -> Result<f64> {
    let gram = HermitianMatrix::symmetrize(&a.adjoint().matmul(a)?);
    let eig = eigenvalues(&gram)?;
    Ok(eig[eig.len() - 1].max(0.0).sqrt())
}

/// `A <= B` in Loewner order, up to `tol` relative to
/// `max(1, ||A||, ||B||)` in operator norm.
pub fn loewner_leq(a: &HermitianMatrix, b: &HermitianMatrix, tol: f64) -> Result<bool> {
    if tol < 0.0 {
        return Err(Error::InvalidArgument("tolerance must be >= 0".into()));
    }
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(format!(
            "loewner_leq: {} vs {}",
            a.dim(),
            b.dim()
        )));
    }
    let scale = loewner_scale(a, b)?;
    let margin = psd_margin(&b.sub(a))?;
    Ok(margin >= -tol * scale)
}

/// `max(1, ||A||, ||B||)`, the scale used by every relative Loewner margin.
pub fn loewner_scale(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<f64> {
    Ok(1.0f64.max(operator_norm(a)?).max(operator_norm(b)?))
}

/// Block positivity of `[[A, X],[X*, B]]` against its Schur-complement
/// condition `X B^{-1} X* <= A`. The two flags agree (Loewner-order
/// equivalence of the two formulations).
pub fn block2x2_psd_check(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    x: &ComplexMatrix,
    tol: f64,
) -> Result<(bool, bool)> {
    let b_margin = psd_margin(b)?;
    if psd_margin(a)? <= tol || b_margin <= tol {
        return Err(Error::Precondition(
            "block2x2_psd_check requires strictly positive A and B".into(),
        ));
    }
    let block = HermitianMatrix::symmetrize(&ComplexMatrix::block2x2(a.matrix(), x, b.matrix())?);
    let scale = 1.0f64
        .max(operator_norm(a)?)
        .max(operator_norm(b)?)
        .max(operator_norm_general(x)?);
    let block_positive = psd_margin(&block)? >= -tol * scale;

    let b_inv = inverse_pos(b)?;
    let schur = HermitianMatrix::symmetrize(&x.matmul(b_inv.matrix())?.matmul(&x.adjoint())?);
    let schur_positive = loewner_leq(&schur, a, tol)?;
    Ok((block_positive, schur_positive))
}

// ---------------------------------------------------------------------------
// Spectral helpers for positive matrices. All go through the merged
// decomposition; eigenvalue guards produce Singular errors instead of NaNs.
// ---------------------------------------------------------------------------

/// `A^{1/2}` for positive semidefinite `A` (tiny negative rounding clipped).
pub fn sqrt_psd(a: &HermitianMatrix) -> Result<HermitianMatrix> {
    let dec = hermitian_eig(a)?;
    guard_psd(&dec, a)?;
    Ok(dec.map(|l| l.max(0.0).sqrt()))
}

/// `A^{-1}` for strictly positive `A`.
pub fn inverse_pos(a: &HermitianMatrix) -> Result<HermitianMatrix> {
    let dec = hermitian_eig(a)?;
    guard_strict(&dec)?;
    Ok(dec.map(|l| 1.0 / l))
}

/// `A^{-1/2}` for strictly positive `A`.
pub fn inv_sqrt_pos(a: &HermitianMatrix) -> Result<HermitianMatrix> {
    let dec = hermitian_eig(a)?;
    guard_strict(&dec)?;
    Ok(dec.map(|l| 1.0 / l.sqrt()))
}

/// `A^r`. Non-integer or negative exponents require strict positivity;
/// nonnegative exponents tolerate a zero eigenvalue.
pub fn power_pos(a: &HermitianMatrix, r: f64) -> Result<HermitianMatrix> {
    let dec = hermitian_eig(a)?;
    if r < 0.0 || (r.fract() != 0.0) {
        guard_psd(&dec, a)?;
        if r < 0.0 {
            guard_strict(&dec)?;
        }
    }
    Ok(dec.map(|l| l.max(0.0).powf(r)))
}

/// `log A` for strictly positive `A`.
pub fn log_pos(a: &HermitianMatrix) -> Result<HermitianMatrix> {
    let dec = hermitian_eig(a)?;
    guard_strict(&dec)?;
    Ok(dec.map(f64::ln))
}

/// `exp A` for Hermitian `A`.
pub fn exp_herm(a: &HermitianMatrix) -> Result<HermitianMatrix> {
    let dec = hermitian_eig(a)?;
    Ok(dec.map(f64::exp))
}

fn guard_strict(dec: &SpectralDecomposition) -> Result<()> {
    let min = dec.min_eigenvalue();
    if min <= 0.0 {
        return Err(Error::Singular { min_eig: min });
    }
    Ok(())
}

fn guard_psd(dec: &SpectralDecomposition, a: &HermitianMatrix) -> Result<()> {
    let min = dec.min_eigenvalue();
    let scale = a.matrix().frobenius_norm().max(1.0);
    if min < -1e-10 * scale {
        return Err(Error::Singular { min_eig: min });
    }
    Ok(())
}
