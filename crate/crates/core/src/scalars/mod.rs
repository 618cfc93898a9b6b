//! Exact scalar arithmetic backends.
//!
//! Every computation in this crate runs over one of three backends:
//!
//! * [`PrimeField`]: 𝔽_p for a prime p ≡ 1 (mod 6), carrying a designated
//!   cube root of unity ρ.  This is the fast path for rank experiments.
//! * [`EisensteinField`]: ℚ(ρ) with ρ² + ρ + 1 = 0 over arbitrary-precision
//!   rationals.  Characteristic zero, fully exact.
//! * [`DualField`]: the extension F[ε]/(ε²) over either backend, used for
//!   exact forward differentiation.
//!
//! There is no floating point anywhere; equality checks are exact.

use thiserror::Error;

use crate::rng::SplitMix64;

pub mod dual;
pub mod eisenstein;
pub mod prime;

pub use dual::{Dual, DualField};
pub use eisenstein::{Eisenstein, EisensteinField, Rational};
pub use prime::{is_prime_u64, make_prime_field, PrimeField, DEFAULT_PRIME};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not congruent to 1 mod 6, so the field has no primitive cube root of unity")]
    BadResidue(u64),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("unknown field spec {0:?} (expected fp:P or qrho)")]
    BadFieldSpec(String),
}

/// A runtime-selectable scalar backend.
///
/// The field object itself carries everything needed for arithmetic (for
/// 𝔽_p: the modulus and the chosen ρ), so elements stay plain values.
#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + PartialEq + Send + Sync + std::fmt::Debug + 'static {
    type Elem: Clone + PartialEq + std::fmt::Debug + Send + Sync + 'static;

    /// False for dual numbers, which form a local ring rather than a field.
    const IS_EXACT_FIELD: bool;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    /// The designated primitive cube root of unity.
    fn rho(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` when it does not exist.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Uniform-ish element draw for instantiating generic parameters.
    fn sample(&self, rng: &mut SplitMix64) -> Self::Elem;
    /// Textual encoding used verbatim in the JSON payloads.
    fn encode(&self, a: &Self::Elem) -> String;
    fn decode(&self, s: &str) -> Result<Self::Elem, ScalarError>;
    /// Field spec string, e.g. `fp:7` or `qrho`.
    fn spec_str(&self) -> String;

    /// Number of elements when finite and enumerable (used for exhaustive
    /// kernel sweeps over small fields).
    fn order(&self) -> Option<u64> {
        None
    }
    fn elem_from_index(&self, _i: u64) -> Self::Elem {
        unreachable!("field is not enumerable")
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Row-echelon rank of a row-major block of entries.  The default is
    /// plain Gaussian elimination; ℚ(ρ) overrides it with a fraction-free
    /// scheme to bound coefficient growth.
    fn rank_slice(&self, rows: usize, cols: usize, mut data: Vec<Self::Elem>) -> usize {
        debug_assert!(Self::IS_EXACT_FIELD, "rank is only defined over a field");
        let mut rank = 0usize;
        for col in 0..cols {
            let Some(pr) = (rank..rows).find(|&r| !self.is_zero(&data[r * cols + col])) else {
                continue;
            };
            for c in 0..cols {
                data.swap(rank * cols + c, pr * cols + c);
            }
            let pivot_inv = self
                .inv(&data[rank * cols + col])
                .expect("nonzero field element is invertible");
            for r in rank + 1..rows {
                if self.is_zero(&data[r * cols + col]) {
                    continue;
                }
                let factor = self.mul(&data[r * cols + col], &pivot_inv);
                for c in col..cols {
                    let t = self.mul(&factor, &data[rank * cols + c]);
                    data[r * cols + c] = self.sub(&data[r * cols + c], &t);
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }
}

/// The designated primitive cube root of unity of a backend.
pub fn rho_of<F: Field>(field: &F) -> F::Elem {
    field.rho()
}

/// Runtime field selection, as written on the command line and in JSON.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldSpec {
    Fp(u64),
    QRho,
}

impl FieldSpec {
    pub fn parse(s: &str) -> Result<FieldSpec, ScalarError> {
        if s == "qrho" {
            return Ok(FieldSpec::QRho);
        }
        if let Some(rest) = s.strip_prefix("fp:") {
            let p: u64 = rest
                .parse()
                .map_err(|_| ScalarError::BadFieldSpec(s.to_string()))?;
            return Ok(FieldSpec::Fp(p));
        }
        Err(ScalarError::BadFieldSpec(s.to_string()))
    }
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldSpec::Fp(p) => write!(f, "fp:{p}"),
            FieldSpec::QRho => write!(f, "qrho"),
        }
    }
}
