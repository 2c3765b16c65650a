//! Scalar test functions with domain and multiplicativity/convexity metadata,
//! and the functional calculus `f(A)` through the spectral decomposition.
//!
//! Convexity and multiplicativity are caller-asserted tags. Checkers that
//! rely on a multiplicativity tag re-validate it by dense scalar sampling on
//! the interval in use and refuse to run if the samples contradict it.

use serde::{Deserialize, Serialize};

use crate::eig::{hermitian_eig, Interval};
use crate::error::{Error, Result};
use crate::matrix::HermitianMatrix;

/// Closed-form scalar function kinds; serializable so reports can name the
/// exact function under test.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "fn", rename_all = "kebab-case")]
pub enum FunctionKind {
    /// `t^r`
    Power { r: f64 },
    /// `a*t + b`
    Affine { a: f64, b: f64 },
    /// `t^2 - t`
    SquareMinusIdentity,
    /// `ln t`
    Log,
    /// `2t / (1 + t)`, the harmonic-mean representing function
    HarmonicRep,
    /// `t * f(1/t)` for a wrapped kind without a closed transpose
    Transpose { inner: Box<FunctionKind> },
}

impl FunctionKind {
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            FunctionKind::Power { r } => t.powf(*r),
            FunctionKind::Affine { a, b } => a * t + b,
            FunctionKind::SquareMinusIdentity => t * t - t,
            FunctionKind::Log => t.ln(),
            FunctionKind::HarmonicRep => 2.0 * t / (1.0 + t),
            FunctionKind::Transpose { inner } => t * inner.eval(1.0 / t),
        }
    }
}

/// Domain of validity `[lo, hi]`, optionally open at the lower end.
/// Unbounded endpoints serialize as the strings `"-inf"` / `"inf"` (JSON
/// has no infinities).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Domain {
    #[serde(with = "real_line")]
    pub lo: f64,
    #[serde(with = "real_line")]
    pub hi: f64,
    pub lo_open: bool,
}

mod real_line {
    use serde::{de, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if x.is_finite() {
            s.serialize_f64(*x)
        } else if *x > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        struct V;
        impl<'de> de::Visitor<'de> for V {
            type Value = f64;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a finite number or \"inf\"/\"-inf\"")
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<f64, E> {
                Ok(v)
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<f64, E> {
                Ok(v as f64)
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<f64, E> {
                Ok(v as f64)
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<f64, E> {
                match v {
                    "inf" => Ok(f64::INFINITY),
                    "-inf" => Ok(f64::NEG_INFINITY),
                    other => Err(E::custom(format!("unexpected bound {other:?}"))),
                }
            }
        }
        d.deserialize_any(V)
    }
}

impl Domain {
    pub const REALS: Domain = Domain {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
        lo_open: false,
    };
    pub const NONNEGATIVE: Domain = Domain {
        lo: 0.0,
        hi: f64::INFINITY,
        lo_open: false,
    };
    pub const POSITIVE: Domain = Domain {
        lo: 0.0,
        hi: f64::INFINITY,
        lo_open: true,
    };

    pub fn contains(&self, t: f64) -> bool {
        let above = if self.lo_open { t > self.lo } else { t >= self.lo };
        above && t <= self.hi
    }

    pub fn contains_interval(&self, iv: Interval) -> bool {
        self.contains(iv.m) && self.contains(iv.max)
    }
}

impl std::fmt::Display for Domain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}{}, {}]",
            if self.lo_open { "(" } else { "[" },
            self.lo,
            self.hi
        )
    }
}

/// Caller-asserted analytic properties.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FunctionTags {
    pub sub_multiplicative: bool,
    pub super_multiplicative: bool,
    pub matrix_convex: bool,
    pub matrix_concave: bool,
}

/// A scalar function together with its domain and asserted tags.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalarFunction {
    pub kind: FunctionKind,
    pub domain: Domain,
    pub tags: FunctionTags,
}

impl ScalarFunction {
    pub fn eval(&self, t: f64) -> f64 {
        self.kind.eval(t)
    }

    /// `t^r`. Power functions are multiplicative, matrix convex for
    /// `r in [-1,0] u [1,2]` and matrix concave for `r in [0,1]`.
    pub fn power(r: f64) -> Self {
        let domain = if r < 0.0 { Domain::POSITIVE } else { Domain::NONNEGATIVE };
        Self {
            kind: FunctionKind::Power { r },
            domain,
            tags: FunctionTags {
                sub_multiplicative: true,
                super_multiplicative: true,
                matrix_convex: (-1.0..=0.0).contains(&r) || (1.0..=2.0).contains(&r),
                matrix_concave: (0.0..=1.0).contains(&r),
            },
        }
        .validated()
    }

    pub fn sqrt() -> Self {
        Self::power(0.5)
    }

    pub fn identity() -> Self {
        Self::affine(1.0, 0.0)
    }

    /// `a*t + b`; affine functions are both matrix convex and concave.
    pub fn affine(a: f64, b: f64) -> Self {
        Self {
            kind: FunctionKind::Affine { a, b },
            domain: Domain::REALS,
            tags: FunctionTags {
                // multiplicative only in the b = 0 case
                sub_multiplicative: b == 0.0,
                super_multiplicative: b == 0.0,
                matrix_convex: true,
                matrix_concave: true,
            },
        }
        .validated()
    }

    /// `(1 + t)/2`, the arithmetic-mean representing function.
    pub fn arithmetic_rep() -> Self {
        Self::affine(0.5, 0.5)
    }

    /// `2t/(1+t)`, the harmonic-mean representing function (matrix concave).
    pub fn harmonic_rep() -> Self {
        Self {
            kind: FunctionKind::HarmonicRep,
            domain: Domain::NONNEGATIVE,
            tags: FunctionTags {
                matrix_concave: true,
                ..FunctionTags::default()
            },
        }
        .validated()
    }

    /// `t^2 - t`: matrix convex everywhere but not sub-multiplicative,
    /// the counterexample function for multilinear Jensen.
    pub fn square_minus_identity() -> Self {
        Self {
            kind: FunctionKind::SquareMinusIdentity,
            domain: Domain::REALS,
            tags: FunctionTags {
                matrix_convex: true,
                ..FunctionTags::default()
            },
        }
        .validated()
    }

    /// `ln t`, matrix concave on `(0, oo)`; super-multiplicative on
    /// `[1, e^2]`, which is where checkers should sample it.
    pub fn log() -> Self {
        Self {
            kind: FunctionKind::Log,
            domain: Domain::POSITIVE,
            tags: FunctionTags {
                super_multiplicative: true,
                matrix_concave: true,
                ..FunctionTags::default()
            },
        }
        .validated()
    }

    /// Totality self-check: sampling the domain (or a window of it) must
    /// produce finite values. Panics on a broken library definition.
    fn validated(self) -> Self {
        let lo = self.domain.lo.max(-1e3).max(if self.domain.lo_open {
            1e-6
        } else {
            self.domain.lo
        });
        let lo = if lo.is_finite() { lo } else { -1e3 };
        let hi = self.domain.hi.min(1e3);
        for i in 0..=1000 {
            let t = lo + (hi - lo) * (i as f64) / 1000.0;
            if self.domain.contains(t) {
                assert!(
                    self.eval(t).is_finite(),
                    "function {:?} not finite at t={t}",
                    self.kind
                );
            }
        }
        self
    }

    /// The transpose `f^o(t) = t f(1/t)`; closed forms where available.
    pub fn transpose(&self) -> Self {
        let kind = match &self.kind {
            FunctionKind::Power { r } => FunctionKind::Power { r: 1.0 - r },
            FunctionKind::Affine { a, b } => FunctionKind::Affine { a: *b, b: *a },
            FunctionKind::HarmonicRep => FunctionKind::HarmonicRep,
            FunctionKind::Transpose { inner } => (**inner).clone(),
            other => FunctionKind::Transpose {
                inner: Box::new(other.clone()),
            },
        };
        // Transposition preserves multiplicativity type and, for matrix
        // monotone representing functions, concavity.
        Self {
            kind,
            domain: Domain::POSITIVE,
            tags: self.tags,
        }
    }
}

/// `f(A) = sum_j f(lambda_j) P_j` through the merged spectral resolution.
///
/// Every eigenvalue must lie in the domain of `f`; eigenvalues within
/// `1e-10 * max(1, ||A||)` of a closed boundary are clamped onto it so that
/// positive-by-construction inputs survive rounding.
pub fn matrix_function(a: &HermitianMatrix, f: &ScalarFunction) -> Result<HermitianMatrix> {
    let dec = hermitian_eig(a)?;
    let scale = dec
        .eigenvalues
        .iter()
        .fold(1.0f64, |m, &l| m.max(l.abs()));
    let grace = 1e-10 * scale;
    let mut values = Vec::with_capacity(dec.eigenvalues.len());
    for &lam in &dec.eigenvalues {
        let lam = clamp_to_domain(lam, &f.domain, grace);
        if !f.domain.contains(lam) {
            return Err(Error::DomainViolation {
                eigenvalue: lam,
                domain: f.domain.to_string(),
            });
        }
        values.push(f.eval(lam));
    }
    let dim = a.dim();
    let mut acc = crate::matrix::ComplexMatrix::zeros(dim);
    for (v, p) in values.iter().zip(&dec.projections) {
        acc = &acc + &p.matrix().scale_re(*v);
    }
    Ok(HermitianMatrix::symmetrize(&acc))
}

fn clamp_to_domain(lam: f64, domain: &Domain, grace: f64) -> f64 {
    if !domain.lo_open && lam < domain.lo && lam >= domain.lo - grace {
        domain.lo
    } else if lam > domain.hi && lam <= domain.hi + grace {
        domain.hi
    } else {
        lam
    }
}

/// Which side of `f(xy) vs f(x) f(y)` a hypothesis asserts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Multiplicativity {
    Sub,
    Super,
}

/// Dense sampling check of an asserted multiplicativity tag over
/// `[m, M]^2` (10^4 points). Hard-fails if the samples contradict the tag
/// or if the tag is not asserted at all.
pub fn verify_multiplicativity(
    f: &ScalarFunction,
    which: Multiplicativity,
    iv: Interval,
) -> Result<()> {
    let asserted = match which {
        Multiplicativity::Sub => f.tags.sub_multiplicative,
        Multiplicativity::Super => f.tags.super_multiplicative,
    };
    if !asserted {
        return Err(Error::Precondition(format!(
            "function {:?} is not tagged {which:?}-multiplicative",
            f.kind
        )));
    }
    if !f.domain.contains_interval(iv) {
        return Err(Error::Precondition(format!(
            "interval [{}, {}] outside domain {} of {:?}",
            iv.m, iv.max, f.domain, f.kind
        )));
    }
    let n = 100;
    let slack = 1e-9;
    for i in 0..=n {
        let x = iv.m + (iv.max - iv.m) * (i as f64) / (n as f64);
        for j in 0..=n {
            let y = iv.m + (iv.max - iv.m) * (j as f64) / (n as f64);
            if !f.domain.contains(x * y) {
                continue;
            }
            let lhs = f.eval(x * y);
            let rhs = f.eval(x) * f.eval(y);
            let tol = slack * (1.0 + lhs.abs().max(rhs.abs()));
            let ok = match which {
                Multiplicativity::Sub => lhs <= rhs + tol,
                Multiplicativity::Super => lhs >= rhs - tol,
            };
            if !ok {
                return Err(Error::Precondition(format!(
                    "sampled contradiction of {which:?}-multiplicativity for {:?} at x={x}, y={y}: f(xy)={lhs}, f(x)f(y)={rhs}",
                    f.kind
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eig::psd_margin;

    #[test]
    fn identity_function_returns_input() {
        let a = HermitianMatrix::from_real(2, &[2.0, 1.0, 1.0, 2.0]).unwrap();
        let out = matrix_function(&a, &ScalarFunction::identity()).unwrap();
        assert!(out.sub(&a).matrix().max_abs() < 1e-13);
    }

    #[test]
    fn square_on_diagonal() {
        let a = HermitianMatrix::diag(&[1.0, 2.0]);
        let out = matrix_function(&a, &ScalarFunction::power(2.0)).unwrap();
        assert!(out.sub(&HermitianMatrix::diag(&[1.0, 4.0])).matrix().max_abs() < 1e-13);
    }

    #[test]
    fn counterexample_function_at_two_i() {
        // f(t) = t^2 - t maps 2I to 2I
        let a = HermitianMatrix::identity(2).scale(2.0);
        let out = matrix_function(&a, &ScalarFunction::square_minus_identity()).unwrap();
        assert!(out.sub(&HermitianMatrix::identity(2).scale(2.0)).matrix().max_abs() < 1e-13);
    }

    #[test]
    fn sqrt_composition_round_trip() {
        let mut rng = crate::random::RngStream::from_seed(17);
        for _ in 0..5 {
            let a = crate::random::random_positive(4, Interval::new(0.5, 3.0).unwrap(), &mut rng);
            let r = matrix_function(&a, &ScalarFunction::sqrt()).unwrap();
            let sq = HermitianMatrix::symmetrize(&r.matrix().matmul(r.matrix()).unwrap());
            let norm = crate::eig::operator_norm(&a).unwrap();
            assert!(sq.sub(&a).matrix().max_abs() <= 1e-8 * norm);
            assert!(psd_margin(&r).unwrap() >= 0.0);
        }
    }

    #[test]
    fn domain_violation_reports_eigenvalue() {
        let a = HermitianMatrix::diag(&[1.0, -2.0]);
        let err = matrix_function(&a, &ScalarFunction::log()).unwrap_err();
        match err {
            Error::DomainViolation { eigenvalue, .. } => assert!((eigenvalue + 2.0).abs() < 1e-12),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn transpose_closed_forms() {
        // sqrt is self-transpose
        let f = ScalarFunction::sqrt().transpose();
        assert_eq!(f.kind, FunctionKind::Power { r: 0.5 });
        // t^a -> t^{1-a}
        let f = ScalarFunction::power(0.25).transpose();
        assert_eq!(f.kind, FunctionKind::Power { r: 0.75 });
        // (1+t)/2 is self-transpose
        let f = ScalarFunction::arithmetic_rep().transpose();
        assert_eq!(f.kind, FunctionKind::Affine { a: 0.5, b: 0.5 });
        // harmonic representing function is self-transpose
        let f = ScalarFunction::harmonic_rep().transpose();
        assert_eq!(f.kind, FunctionKind::HarmonicRep);
    }

    #[test]
    fn transpose_wrapper_evaluates() {
        let f = ScalarFunction::log().transpose();
        // t*ln(1/t) = -t ln t
        assert!((f.eval(2.0) - (-2.0 * 2f64.ln())).abs() < 1e-14);
    }

    #[test]
    fn multiplicativity_validation() {
        let iv = Interval::new(1.0, 2.0).unwrap();
        assert!(verify_multiplicativity(&ScalarFunction::power(2.0), Multiplicativity::Sub, iv).is_ok());
        assert!(verify_multiplicativity(&ScalarFunction::power(0.5), Multiplicativity::Super, iv).is_ok());
        // t^2 - t carries no sub-multiplicativity tag
        assert!(verify_multiplicativity(
            &ScalarFunction::square_minus_identity(),
            Multiplicativity::Sub,
            iv
        )
        .is_err());
        // log is super-multiplicative on [1, e^2]
        let log_iv = Interval::new(1.0, (std::f64::consts::E).powi(2)).unwrap();
        assert!(verify_multiplicativity(&ScalarFunction::log(), Multiplicativity::Super, log_iv).is_ok());
    }

    #[test]
    fn log_tag_contradicted_outside_window() {
        // On [0.1, 0.9], log(xy) > log(x)log(y) fails; sampling must catch it.
        let iv = Interval::new(0.1, 0.9).unwrap();
        assert!(verify_multiplicativity(&ScalarFunction::log(), Multiplicativity::Super, iv).is_err());
    }
}
