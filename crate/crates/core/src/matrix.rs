//! Dense square complex matrices with the handful of algebraic operations
//! the rest of the crate needs: products, adjoints, Kronecker and Hadamard
//! products, traces and norms.
//!
//! Matrices are immutable after construction and sized for desk-scale work
//! (inputs up to ~16, tensor-map outputs up to a few thousand). Storage is
//! row-major `Vec<Complex64>`.

use std::fmt;
use std::ops::{Add, Index, Mul, Sub};

use num_complex::Complex64;
use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A square complex matrix of dimension `dim >= 1`.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries. `data.len()` must equal `dim * dim`.
    pub fn from_vec(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("matrix dimension must be >= 1".into()));
        }
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                data.len()
            )));
        }
        Ok(Self { dim, data })
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real(dim: usize, data: &[f64]) -> Result<Self> {
        Self::from_vec(dim, data.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Diagonal matrix from real entries.
    pub fn diag(entries: &[f64]) -> Self {
        let dim = entries.len();
        let mut m = Self::zeros(dim);
        for (i, &x) in entries.iter().enumerate() {
            m.data[i * dim + i] = Complex64::new(x, 0.0);
        }
        m
    }

    /// Diagonal matrix from complex entries.
    pub fn diag_complex(entries: &[Complex64]) -> Self {
        let dim = entries.len();
        let mut m = Self::zeros(dim);
        for (i, &x) in entries.iter().enumerate() {
            m.data[i * dim + i] = x;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.dim + j] = v;
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&x| x * s).collect(),
        }
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest absolute entry; cheap scale estimate for exact-zero tests.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    /// Hermitian deviation `max_ij |a_ij - conj(a_ji)|`.
    pub fn hermitian_deviation(&self) -> f64 {
        let n = self.dim;
        let mut dev: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                dev = dev.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        dev
    }

    /// `(A + A*) / 2`.
    pub fn hermitian_part(&self) -> Self {
        let adj = self.adjoint();
        let n = self.dim;
        let mut out = Self::zeros(n);
        for k in 0..n * n {
            out.data[k] = (self.data[k] + adj.data[k]) * 0.5;
        }
        out
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.data[i * n + k];
                if aik == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += aik * other.data[k * n + j];
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "vector length {} vs matrix dim {}",
                x.len(),
                self.dim
            )));
        }
        let n = self.dim;
        let mut y = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..n {
                acc += self.data[i * n + j] * x[j];
            }
            y[i] = acc;
        }
        Ok(y)
    }

    /// Sesquilinear form `<A x, x>` (linear in the first slot of `<.,.>`).
    pub fn quadratic_form(&self, x: &[Complex64]) -> Result<Complex64> {
        let ax = self.apply(x)?;
        Ok(ax
            .iter()
            .zip(x.iter())
            .map(|(a, b)| a * b.conj())
            .sum())
    }

    /// Kronecker product; block (i,j) of the result is `a_ij * B`.
    pub fn tensor_product(&self, other: &Self) -> Self {
        let (p, q) = (self.dim, other.dim);
        let n = p * q;
        let mut out = Self::zeros(n);
        for i in 0..p {
            for j in 0..p {
                let aij = self.data[i * p + j];
                if aij == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for r in 0..q {
                    for s in 0..q {
                        out.data[(i * q + r) * n + (j * q + s)] = aij * other.data[r * q + s];
                    }
                }
            }
        }
        out
    }

    /// Entrywise product; dimensions must agree.
    pub fn hadamard_product(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(other.data.iter())
                .map(|(a, b)| a * b)
                .collect(),
        })
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.dim, self.dim, other.dim, other.dim
            )));
        }
        Ok(())
    }

    /// Assembles the 2x2 block matrix `[[A, X], [X*, B]]`.
    pub fn block2x2(a: &Self, x: &Self, b: &Self) -> Result<Self> {
        if a.dim != b.dim || a.dim != x.dim {
            return Err(Error::DimensionMismatch(
                "block matrix requires equal-dimension blocks".into(),
            ));
        }
        let d = a.dim;
        let n = 2 * d;
        let xadj = x.adjoint();
        let mut out = Self::zeros(n);
        for i in 0..d {
            for j in 0..d {
                out.data[i * n + j] = a.data[i * d + j];
                out.data[i * n + (j + d)] = x.data[i * d + j];
                out.data[(i + d) * n + j] = xadj.data[i * d + j];
                out.data[(i + d) * n + (j + d)] = b.data[i * d + j];
            }
        }
        Ok(out)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix add: dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(rhs.data.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix sub: dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(rhs.data.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("matrix mul: dimension mismatch")
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self.get(i, j);
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

// Wire format: nested arrays of [re, im] pairs, row by row.
impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut rows = serializer.serialize_seq(Some(self.dim))?;
        for i in 0..self.dim {
            let row: Vec<[f64; 2]> = (0..self.dim)
                .map(|j| {
                    let z = self.get(i, j);
                    [z.re, z.im]
                })
                .collect();
            rows.serialize_element(&row)?;
        }
        rows.end()
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct MatrixVisitor;
        impl<'de> Visitor<'de> for MatrixVisitor {
            type Value = ComplexMatrix;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a square matrix as nested arrays of [re, im] pairs")
            }
            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<ComplexMatrix, A::Error> {
                let mut rows: Vec<Vec<[f64; 2]>> = Vec::new();
                while let Some(row) = seq.next_element::<Vec<[f64; 2]>>()? {
                    rows.push(row);
                }
                let dim = rows.len();
                if dim == 0 || rows.iter().any(|r| r.len() != dim) {
                    return Err(de::Error::custom("matrix rows must form a non-empty square"));
                }
                let data = rows
                    .into_iter()
                    .flatten()
                    .map(|[re, im]| Complex64::new(re, im))
                    .collect();
                ComplexMatrix::from_vec(dim, data).map_err(de::Error::custom)
            }
        }
        deserializer.deserialize_seq(MatrixVisitor)
    }
}

/// A Hermitian matrix: `a_ij == conj(a_ji)` exactly, enforced at construction.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct HermitianMatrix(ComplexMatrix);

impl HermitianMatrix {
    /// Accepts a matrix that is already Hermitian to machine exactness.
    ///
    /// Use [`HermitianMatrix::symmetrize`] for outputs of floating-point
    /// pipelines that are Hermitian only up to rounding.
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if m.hermitian_deviation() > 0.0 {
            return Err(Error::InvalidArgument(format!(
                "matrix is not exactly Hermitian (deviation {:.3e}); symmetrize first",
                m.hermitian_deviation()
            )));
        }
        Ok(Self(m))
    }

    /// Replaces `A` by `(A + A*)/2` and zeroes imaginary parts on the diagonal.
    pub fn symmetrize(m: &ComplexMatrix) -> Self {
        let n = m.dim();
        let mut h = ComplexMatrix::zeros(n);
        for i in 0..n {
            h.set(i, i, Complex64::new(m.get(i, i).re, 0.0));
            for j in (i + 1)..n {
                let v = (m.get(i, j) + m.get(j, i).conj()) * 0.5;
                h.set(i, j, v);
                h.set(j, i, v.conj());
            }
        }
        Self(h)
    }

    pub fn identity(dim: usize) -> Self {
        Self(ComplexMatrix::identity(dim))
    }

    pub fn zeros(dim: usize) -> Self {
        Self(ComplexMatrix::zeros(dim))
    }

    pub fn diag(entries: &[f64]) -> Self {
        Self(ComplexMatrix::diag(entries))
    }

    /// Real symmetric input, row-major; rejects asymmetric data.
    pub fn from_real(dim: usize, data: &[f64]) -> Result<Self> {
        Self::new(ComplexMatrix::from_real(dim, data)?)
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.0.get(i, j)
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(&self.0 - &other.0)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.scale_re(s))
    }

    /// Congruence `C* A C`; Hermitian for any `C`.
    pub fn congruence(&self, c: &ComplexMatrix) -> Result<Self> {
        let prod = c.adjoint().matmul(&self.0)?.matmul(c)?;
        Ok(Self::symmetrize(&prod))
    }
}

impl<'de> Deserialize<'de> for HermitianMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let m = ComplexMatrix::deserialize(deserializer)?;
        // Round-tripped values may carry last-bit asymmetry from the 17-digit
        // wire format, so symmetrize instead of rejecting.
        Ok(HermitianMatrix::symmetrize(&m))
    }
}
