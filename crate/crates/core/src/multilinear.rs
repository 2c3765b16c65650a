//! Positive multilinear maps `Phi: M_q^k -> M_p` as serializable descriptors.
//!
//! Maps are descriptors rather than closures so a report can name the exact
//! map under test and a witness file can replay it. Evaluation is pure.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::eig::{inv_sqrt_pos, psd_margin, sqrt_psd};
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, HermitianMatrix};

/// The construction backing a map descriptor.
#[derive(Clone, Debug, PartialEq)]
pub enum MapKind {
    /// `(A_1, ..., A_k) -> A_1 (x) ... (x) A_k`, output dimension `q^k`.
    Tensor,
    /// Entrywise product, output dimension `q`.
    Hadamard,
    /// `Tr(A_1) ... Tr(A_k) I_p`.
    TraceProduct { output_dim: usize },
    /// `(A, B) -> (1/q) Tr(A B)` as a 1x1 matrix; `k = 2`.
    NormalizedTracePair,
    /// `(T, S) -> T diag(S_11, ..., S_qq)`, the columnwise realization of
    /// `x -> (T x (x) S x) x` on the standard basis; `k = 2`.
    RankOne,
    /// `(A_1, ..., A_k) -> Psi(A_1 (x) ... (x) A_k)` for a positive linear
    /// `Psi` stored through its Choi matrix over `M_{q^k}`.
    LinearComposed { choi: ComplexMatrix, output_dim: usize },
    /// The congruence-normalized map
    /// `(Y_1,...,Y_k) -> Phi(A)^{-1/2} Phi(A_1^{1/2} Y_1 A_1^{1/2}, ...) Phi(A)^{-1/2}`
    /// built from a base map and strictly positive anchors; unital by
    /// construction.
    CongruenceTransformed {
        base: Box<MapDescriptor>,
        anchors: Vec<HermitianMatrix>,
    },
}

/// A positive multilinear map: arity `k`, input dimension `q`, and the
/// construction determining the output dimension `p`.
///
/// Serializes as the wire object `{kind, k, q, p, payload}` consumed by the
/// report harness; `payload` carries the construction-specific data (Choi
/// matrix, or base map plus anchors).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "WireMap", into = "WireMap")]
pub struct MapDescriptor {
    pub arity: usize,
    pub input_dim: usize,
    pub kind: MapKind,
}

#[derive(Serialize, Deserialize)]
struct WireMap {
    kind: String,
    k: usize,
    q: usize,
    p: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    payload: Option<WirePayload>,
}

#[derive(Default, Serialize, Deserialize)]
struct WirePayload {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    choi: Option<ComplexMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    base: Option<Box<MapDescriptor>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    anchors: Option<Vec<HermitianMatrix>>,
}

impl From<MapDescriptor> for WireMap {
    fn from(map: MapDescriptor) -> WireMap {
        let p = map.output_dim();
        let (kind, payload) = match map.kind {
            MapKind::Tensor => ("tensor", None),
            MapKind::Hadamard => ("hadamard", None),
            MapKind::TraceProduct { .. } => ("trace-product", None),
            MapKind::NormalizedTracePair => ("normalized-trace-pair", None),
            MapKind::RankOne => ("rank-one", None),
            MapKind::LinearComposed { choi, .. } => (
                "linear-composed",
                Some(WirePayload {
                    choi: Some(choi),
                    ..WirePayload::default()
                }),
            ),
            MapKind::CongruenceTransformed { base, anchors } => (
                "congruence-transformed",
                Some(WirePayload {
                    base: Some(base),
                    anchors: Some(anchors),
                    ..WirePayload::default()
                }),
            ),
        };
        WireMap {
            kind: kind.to_string(),
            k: map.arity,
            q: map.input_dim,
            p,
            payload,
        }
    }
}

impl TryFrom<WireMap> for MapDescriptor {
    type Error = Error;

    fn try_from(wire: WireMap) -> Result<MapDescriptor> {
        let payload = wire.payload.unwrap_or_default();
        let map = match wire.kind.as_str() {
            "tensor" => MapDescriptor::tensor(wire.k, wire.q)?,
            "hadamard" => MapDescriptor::hadamard(wire.k, wire.q)?,
            "trace-product" => MapDescriptor::trace_product(wire.k, wire.q, wire.p)?,
            "normalized-trace-pair" => MapDescriptor::normalized_trace_pair(wire.q)?,
            "rank-one" => MapDescriptor::rank_one(wire.q)?,
            "linear-composed" => {
                let choi = payload
                    .choi
                    .ok_or_else(|| Error::InvalidArgument("linear-composed needs a choi payload".into()))?;
                MapDescriptor::linear_composed(wire.k, wire.q, choi, wire.p)?
            }
            "congruence-transformed" => {
                let base = payload
                    .base
                    .ok_or_else(|| Error::InvalidArgument("congruence-transformed needs a base".into()))?;
                let anchors = payload
                    .anchors
                    .ok_or_else(|| Error::InvalidArgument("congruence-transformed needs anchors".into()))?;
                MapDescriptor::congruence_transformed(*base, anchors)?
            }
            other => {
                return Err(Error::InvalidArgument(format!("unknown map kind {other:?}")));
            }
        };
        if map.output_dim() != wire.p {
            return Err(Error::DimensionMismatch(format!(
                "declared p = {} but the {} construction yields {}",
                wire.p,
                wire.kind,
                map.output_dim()
            )));
        }
        Ok(map)
    }
}

impl MapDescriptor {
    pub fn tensor(arity: usize, input_dim: usize) -> Result<Self> {
        Self::build(arity, input_dim, MapKind::Tensor)
    }

    pub fn hadamard(arity: usize, input_dim: usize) -> Result<Self> {
        Self::build(arity, input_dim, MapKind::Hadamard)
    }

    pub fn trace_product(arity: usize, input_dim: usize, output_dim: usize) -> Result<Self> {
        Self::build(arity, input_dim, MapKind::TraceProduct { output_dim })
    }

    pub fn normalized_trace_pair(input_dim: usize) -> Result<Self> {
        Self::build(2, input_dim, MapKind::NormalizedTracePair)
    }

    pub fn rank_one(input_dim: usize) -> Result<Self> {
        Self::build(2, input_dim, MapKind::RankOne)
    }

    /// Composition `Psi(A_1 (x) ... (x) A_k)` with `Psi` given by its Choi
    /// matrix: block `(i, j)` of the Choi matrix is `Psi(E_ij)`.
    pub fn linear_composed(
        arity: usize,
        input_dim: usize,
        choi: ComplexMatrix,
        output_dim: usize,
    ) -> Result<Self> {
        let tensor_dim = input_dim.pow(arity as u32);
        if choi.dim() != tensor_dim * output_dim {
            return Err(Error::DimensionMismatch(format!(
                "Choi matrix of dimension {} expected for q^k = {tensor_dim}, p = {output_dim}",
                tensor_dim * output_dim
            )));
        }
        Self::build(arity, input_dim, MapKind::LinearComposed { choi, output_dim })
    }

    /// Congruence-transformed map; anchors must be strictly positive.
    pub fn congruence_transformed(base: MapDescriptor, anchors: Vec<HermitianMatrix>) -> Result<Self> {
        if anchors.len() != base.arity {
            return Err(Error::DimensionMismatch(format!(
                "{} anchors for arity {}",
                anchors.len(),
                base.arity
            )));
        }
        for a in &anchors {
            if a.dim() != base.input_dim {
                return Err(Error::DimensionMismatch("anchor dimension mismatch".into()));
            }
            if psd_margin(a)? <= 0.0 {
                return Err(Error::Precondition(
                    "congruence anchors must be strictly positive".into(),
                ));
            }
        }
        let (arity, input_dim) = (base.arity, base.input_dim);
        Self::build(
            arity,
            input_dim,
            MapKind::CongruenceTransformed {
                base: Box::new(base),
                anchors,
            },
        )
    }

    fn build(arity: usize, input_dim: usize, kind: MapKind) -> Result<Self> {
        if arity == 0 || input_dim == 0 {
            return Err(Error::InvalidArgument("arity and input_dim must be >= 1".into()));
        }
        if matches!(kind, MapKind::NormalizedTracePair | MapKind::RankOne) && arity != 2 {
            return Err(Error::InvalidArgument(format!(
                "{kind:?} requires arity 2, got {arity}"
            )));
        }
        Ok(Self {
            arity,
            input_dim,
            kind,
        })
    }

    /// Output dimension `p`.
    pub fn output_dim(&self) -> usize {
        match &self.kind {
            MapKind::Tensor => self.input_dim.pow(self.arity as u32),
            MapKind::Hadamard => self.input_dim,
            MapKind::TraceProduct { output_dim } => *output_dim,
            MapKind::NormalizedTracePair => 1,
            MapKind::RankOne => self.input_dim,
            MapKind::LinearComposed { output_dim, .. } => *output_dim,
            MapKind::CongruenceTransformed { base, .. } => base.output_dim(),
        }
    }

    /// Short label for report entries.
    pub fn label(&self) -> String {
        match &self.kind {
            MapKind::Tensor => "tensor".into(),
            MapKind::Hadamard => "hadamard".into(),
            MapKind::TraceProduct { .. } => "trace-product".into(),
            MapKind::NormalizedTracePair => "trace-pair".into(),
            MapKind::RankOne => "rank-one".into(),
            MapKind::LinearComposed { .. } => "linear-composed".into(),
            MapKind::CongruenceTransformed { base, .. } => {
                format!("congruence({})", base.label())
            }
        }
    }

    /// Evaluates the map on a `k`-tuple of `q x q` matrices.
    pub fn evaluate(&self, tuple: &[ComplexMatrix]) -> Result<ComplexMatrix> {
        if tuple.len() != self.arity {
            return Err(Error::DimensionMismatch(format!(
                "map arity {} applied to {} matrices",
                self.arity,
                tuple.len()
            )));
        }
        for a in tuple {
            if a.dim() != self.input_dim {
                return Err(Error::DimensionMismatch(format!(
                    "input dimension {} expected, got {}",
                    self.input_dim,
                    a.dim()
                )));
            }
        }
        match &self.kind {
            MapKind::Tensor => Ok(tensor_all(tuple)),
            MapKind::Hadamard => {
                let mut acc = tuple[0].clone();
                for a in &tuple[1..] {
                    acc = acc.hadamard_product(a)?;
                }
                Ok(acc)
            }
            MapKind::TraceProduct { output_dim } => {
                let factor: Complex64 = tuple.iter().map(ComplexMatrix::trace).product();
                Ok(ComplexMatrix::identity(*output_dim).scale(factor))
            }
            MapKind::NormalizedTracePair => {
                let prod = tuple[0].matmul(&tuple[1])?;
                let val = prod.trace() / self.input_dim as f64;
                Ok(ComplexMatrix::from_vec(1, vec![val]).expect("1x1"))
            }
            MapKind::RankOne => {
                let (t, s) = (&tuple[0], &tuple[1]);
                let diag: Vec<Complex64> = (0..self.input_dim).map(|j| s.get(j, j)).collect();
                t.matmul(&ComplexMatrix::diag_complex(&diag))
            }
            MapKind::LinearComposed { choi, output_dim } => {
                let x = tensor_all(tuple);
                apply_choi(choi, *output_dim, &x)
            }
            MapKind::CongruenceTransformed { base, anchors } => {
                let anchor_mats: Vec<ComplexMatrix> =
                    anchors.iter().map(|a| a.matrix().clone()).collect();
                let phi_a = HermitianMatrix::symmetrize(&base.evaluate(&anchor_mats)?);
                let normalizer = inv_sqrt_pos(&phi_a)?;
                let mut sandwiched = Vec::with_capacity(tuple.len());
                for (y, a) in tuple.iter().zip(anchors) {
                    let a_half = sqrt_psd(a)?;
                    sandwiched.push(a_half.matrix().matmul(y)?.matmul(a_half.matrix())?);
                }
                let inner = base.evaluate(&sandwiched)?;
                normalizer
                    .matrix()
                    .matmul(&inner)?
                    .matmul(normalizer.matrix())
            }
        }
    }

    /// Evaluates on Hermitian inputs, symmetrizing away the rounding in the
    /// adjoint-preserving output. Not meaningful for `RankOne`, whose matrix
    /// realization is not Hermitian.
    pub fn evaluate_hermitian(&self, tuple: &[HermitianMatrix]) -> Result<HermitianMatrix> {
        let mats: Vec<ComplexMatrix> = tuple.iter().map(|a| a.matrix().clone()).collect();
        Ok(HermitianMatrix::symmetrize(&self.evaluate(&mats)?))
    }

    /// `||Phi(I, ..., I) - I|| <= tol` in operator norm.
    pub fn is_unital(&self, tol: f64) -> Result<bool> {
        let identity_tuple = vec![ComplexMatrix::identity(self.input_dim); self.arity];
        let out = self.evaluate(&identity_tuple)?;
        let p = self.output_dim();
        let dev = &out - &ComplexMatrix::identity(p);
        Ok(crate::eig::operator_norm_general(&dev)? <= tol)
    }
}

fn tensor_all(tuple: &[ComplexMatrix]) -> ComplexMatrix {
    let mut acc = tuple[0].clone();
    for a in &tuple[1..] {
        acc = acc.tensor_product(a);
    }
    acc
}

/// `Psi(X) = sum_ij X_ij Psi(E_ij)` with `Psi(E_ij)` the `(i, j)` block of
/// the Choi matrix.
pub fn apply_choi(choi: &ComplexMatrix, output_dim: usize, x: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = x.dim();
    if choi.dim() != n * output_dim {
        return Err(Error::DimensionMismatch(format!(
            "Choi dimension {} vs input {} and output {}",
            choi.dim(),
            n,
            output_dim
        )));
    }
    let p = output_dim;
    let mut out = ComplexMatrix::zeros(p);
    for i in 0..n {
        for j in 0..n {
            let xij = x.get(i, j);
            if xij == Complex64::new(0.0, 0.0) {
                continue;
            }
            for r in 0..p {
                for c in 0..p {
                    let v = out.get(r, c) + xij * choi.get(i * p + r, j * p + c);
                    out.set(r, c, v);
                }
            }
        }
    }
    Ok(out)
}

/// Choi matrix of the identity map on `M_n` (so the composed map reproduces
/// the plain tensor map).
pub fn choi_identity(n: usize) -> ComplexMatrix {
    let mut choi = ComplexMatrix::zeros(n * n);
    for i in 0..n {
        for j in 0..n {
            choi.set(i * n + i, j * n + j, Complex64::new(1.0, 0.0));
        }
    }
    choi
}

/// Choi matrix of the unital compression `Psi(X) = V* X V` for an isometry
/// `V: C^p -> C^n` (`V* V = I_p`).
pub fn choi_compression(v_columns: &ComplexMatrix, p: usize) -> ComplexMatrix {
    let n = v_columns.dim();
    let mut choi = ComplexMatrix::zeros(n * p);
    // Psi(E_ij)_{rc} = conj(V_ir) V_jc
    for i in 0..n {
        for j in 0..n {
            for r in 0..p {
                for c in 0..p {
                    choi.set(i * p + r, j * p + c, v_columns.get(i, r).conj() * v_columns.get(j, c));
                }
            }
        }
    }
    choi
}

/// The defining action of the rank-one pair map: `(T x (x) S x) x`, i.e.
/// `<x, S x> T x`. Quadratic in `x`; used for quadratic-form checks.
pub fn rank_one_apply(t: &ComplexMatrix, s: &ComplexMatrix, x: &[Complex64]) -> Result<Vec<Complex64>> {
    let sx = s.apply(x)?;
    let coeff: Complex64 = x
        .iter()
        .zip(sx.iter())
        .map(|(xi, sxi)| xi * sxi.conj())
        .sum();
    Ok(t.apply(x)?.into_iter().map(|v| v * coeff).collect())
}
