//! Seeded random generation of structured test matrices.
//!
//! Every draw comes from an [`RngStream`], a ChaCha-backed stream addressed
//! by a root seed plus substream indices. Substreams derived from the same
//! `(seed, index)` pair are identical, which is what makes trial-level
//! parallelism scheduling-independent.

use num_complex::Complex64;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

use crate::eig::Interval;
use crate::matrix::{ComplexMatrix, HermitianMatrix};

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn fnv1a(name: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in name.as_bytes() {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x0000_0100_0000_01B3);
    }
    h
}

/// A reproducible random stream. Value-passed, never shared.
#[derive(Clone, Debug)]
pub struct RngStream {
    seed: u64,
    rng: ChaCha12Rng,
}

impl RngStream {
    pub fn from_seed(seed: u64) -> Self {
        Self {
            seed,
            rng: ChaCha12Rng::seed_from_u64(seed),
        }
    }

    /// Root seed this stream was derived from.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Independent stream at `(seed, index)`; pure in its arguments.
    pub fn substream(&self, index: u64) -> Self {
        Self::from_seed(splitmix64(self.seed ^ splitmix64(index.wrapping_add(1))))
    }

    /// Independent stream keyed by a label, e.g. one per check family.
    pub fn substream_named(&self, name: &str) -> Self {
        self.substream(fnv1a(name))
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.rng.gen::<f64>()
    }

    pub fn gaussian(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    pub fn complex_gaussian(&mut self) -> Complex64 {
        Complex64::new(self.gaussian(), self.gaussian()) / 2f64.sqrt()
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }
    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }
    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.rng.fill_bytes(dest)
    }
    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> Result<(), rand::Error> {
        self.rng.try_fill_bytes(dest)
    }
}

/// Matrix with iid standard complex Gaussian entries.
pub fn ginibre(dim: usize, rng: &mut RngStream) -> ComplexMatrix {
    let data = (0..dim * dim).map(|_| rng.complex_gaussian()).collect();
    ComplexMatrix::from_vec(dim, data).expect("dim >= 1")
}

/// Haar-distributed unitary via Gram-Schmidt QR of a Ginibre matrix.
///
/// Modified Gram-Schmidt normalizes each pivot to a real positive R
/// diagonal, which is exactly the phase correction that makes the Q factor
/// Haar; one re-orthogonalization pass keeps columns unitary to ~1e-15.
pub fn haar_unitary(dim: usize, rng: &mut RngStream) -> ComplexMatrix {
    let g = ginibre(dim, rng);
    let mut cols: Vec<Vec<Complex64>> = (0..dim)
        .map(|j| (0..dim).map(|i| g.get(i, j)).collect())
        .collect();
    for j in 0..dim {
        for _pass in 0..2 {
            for i in 0..j {
                let proj: Complex64 = (0..dim).map(|r| cols[j][r] * cols[i][r].conj()).sum();
                for r in 0..dim {
                    let v = cols[i][r];
                    cols[j][r] -= proj * v;
                }
            }
        }
        let norm: f64 = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for r in 0..dim {
            cols[j][r] /= norm;
        }
    }
    let mut u = ComplexMatrix::zeros(dim);
    for j in 0..dim {
        for i in 0..dim {
            u.set(i, j, cols[j][i]);
        }
    }
    u
}

/// `U diag(lambda) U*` for given real eigenvalues and a fresh Haar unitary.
pub fn hermitian_with_spectrum(eigs: &[f64], rng: &mut RngStream) -> HermitianMatrix {
    let dim = eigs.len();
    let u = haar_unitary(dim, rng);
    let d = ComplexMatrix::diag(eigs);
    let m = u
        .matmul(&d)
        .and_then(|ud| ud.matmul(&u.adjoint()))
        .expect("square dims");
    HermitianMatrix::symmetrize(&m)
}

/// Random strictly positive matrix with spectrum inside `[m, M]`.
///
/// For `dim >= 2` the endpoints are forced (`lambda_1 = m`,
/// `lambda_dim = M`) so reverse-constant checks exercise the extremal
/// region of the bounds.
pub fn random_positive(dim: usize, spec: Interval, rng: &mut RngStream) -> HermitianMatrix {
    let mut eigs: Vec<f64> = (0..dim).map(|_| rng.uniform(spec.m, spec.max)).collect();
    if dim >= 2 {
        eigs[0] = spec.m;
        eigs[dim - 1] = spec.max;
    }
    hermitian_with_spectrum(&eigs, rng)
}

/// Random normal matrix `U diag(mu) U*` with `|mu_j|` uniform in the given
/// modulus interval and uniform phases.
pub fn random_normal(dim: usize, modulus_spec: Interval, rng: &mut RngStream) -> ComplexMatrix {
    let entries: Vec<Complex64> = (0..dim)
        .map(|_| {
            let r = rng.uniform(modulus_spec.m, modulus_spec.max);
            let theta = rng.uniform(0.0, std::f64::consts::TAU);
            Complex64::from_polar(r, theta)
        })
        .collect();
    let u = haar_unitary(dim, rng);
    u.matmul(&ComplexMatrix::diag_complex(&entries))
        .and_then(|ud| ud.matmul(&u.adjoint()))
        .expect("square dims")
}

/// Random contraction `U diag(radii <= 1) V` with Haar `U`, `V`.
pub fn random_contraction(dim: usize, rng: &mut RngStream) -> ComplexMatrix {
    let radii: Vec<f64> = (0..dim).map(|_| rng.uniform(0.0, 1.0)).collect();
    let u = haar_unitary(dim, rng);
    let v = haar_unitary(dim, rng);
    u.matmul(&ComplexMatrix::diag(&radii))
        .and_then(|m| m.matmul(&v))
        .expect("square dims")
}

/// Random Hermitian matrix (GUE-normalized Gaussian entries, norm O(1)).
pub fn random_hermitian(dim: usize, rng: &mut RngStream) -> HermitianMatrix {
    HermitianMatrix::symmetrize(&ginibre(dim, rng))
}

/// Random complex unit vector.
pub fn random_unit_vector(dim: usize, rng: &mut RngStream) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..dim).map(|_| rng.complex_gaussian()).collect();
        let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-12 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// Random weight vector: nonnegative entries summing to one.
pub fn random_weights(k: usize, rng: &mut RngStream) -> Vec<f64> {
    let raw: Vec<f64> = (0..k).map(|_| rng.uniform(0.05, 1.0)).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|w| w / total).collect()
}
