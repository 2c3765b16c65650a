//! Positive multilinear maps on complex matrices, Kubo-Ando and Karcher
//! means, and randomized Loewner-order verification of the inequality
//! families they satisfy.
//!
//! The crate is organized around five pieces:
//!
//! - [`matrix`]: dense complex matrices, Kronecker and Hadamard products;
//! - [`eig`]: Hermitian spectral calculus and Loewner-order comparison;
//! - [`multilinear`]: map descriptors `Phi: M_q^k -> M_p` and their
//!   structural checks;
//! - [`means`]: matrix means and the reverse-inequality constants;
//! - [`checks`]: one randomized checker per inequality family, with
//!   reproducible seeds and self-contained witnesses.

pub mod checks;
pub mod eig;
pub mod error;
pub mod functions;
pub mod matrix;
pub mod means;
pub mod multilinear;
pub mod random;

pub use num_complex::Complex64;

pub use eig::{
    block2x2_psd_check, hermitian_eig, loewner_leq, operator_norm, psd_margin, Interval,
    SpectralDecomposition,
};
pub use error::{Error, Result};
pub use functions::{matrix_function, FunctionKind, Multiplicativity, ScalarFunction};
pub use matrix::{ComplexMatrix, HermitianMatrix};
pub use means::{
    alpha_bound, beta_bound, kantorovich_constant, karcher_mean, kubo_ando_mean, power_mean,
    weighted_geometric, MeanDescriptor, WeightVector,
};
pub use multilinear::{MapDescriptor, MapKind};
pub use random::RngStream;
