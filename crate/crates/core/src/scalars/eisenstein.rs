//! ℚ(ρ): the field of Eisenstein numbers over arbitrary-precision rationals.
//!
//! Elements are `re + rho * ρ` with ρ² = -1 - ρ.  Rationals are kept in
//! lowest terms with positive denominator by construction (the `Ratio`
//! representation normalizes on every operation).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Field, ScalarError};
use crate::rng::SplitMix64;

/// Arbitrary-precision rational, always in lowest terms, denominator > 0.
pub type Rational = num_rational::BigRational;

/// `re + rho · ρ` with ρ a primitive cube root of unity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Eisenstein {
    pub re: Rational,
    pub rho: Rational,
}

impl Eisenstein {
    pub fn new(re: Rational, rho: Rational) -> Self {
        Eisenstein { re, rho }
    }

    pub fn from_int(n: i64) -> Self {
        Eisenstein {
            re: Rational::from_integer(BigInt::from(n)),
            rho: Rational::zero(),
        }
    }
}

/// The field ℚ(ρ).  Stateless; all structure is in the element type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EisensteinField;

fn parse_rational(s: &str) -> Result<Rational, ScalarError> {
    let err = || ScalarError::Parse(s.to_string());
    let (num_s, den_s) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num_s.trim().parse().map_err(|_| err())?;
    let den: BigInt = den_s.trim().parse().map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

impl Field for EisensteinField {
    type Elem = Eisenstein;
    const IS_EXACT_FIELD: bool = true;

    fn zero(&self) -> Eisenstein {
        Eisenstein::from_int(0)
    }
    fn one(&self) -> Eisenstein {
        Eisenstein::from_int(1)
    }
    fn rho(&self) -> Eisenstein {
        Eisenstein {
            re: Rational::zero(),
            rho: Rational::one(),
        }
    }
    fn from_i64(&self, n: i64) -> Eisenstein {
        Eisenstein::from_int(n)
    }
    fn add(&self, a: &Eisenstein, b: &Eisenstein) -> Eisenstein {
        Eisenstein {
            re: &a.re + &b.re,
            rho: &a.rho + &b.rho,
        }
    }
    fn sub(&self, a: &Eisenstein, b: &Eisenstein) -> Eisenstein {
        Eisenstein {
            re: &a.re - &b.re,
            rho: &a.rho - &b.rho,
        }
    }
    fn mul(&self, a: &Eisenstein, b: &Eisenstein) -> Eisenstein {
        // (a + bρ)(c + dρ) = ac + (ad + bc)ρ + bdρ², with ρ² = -1 - ρ.
        let ac = &a.re * &b.re;
        let bd = &a.rho * &b.rho;
        let ad_bc = &a.re * &b.rho + &a.rho * &b.re;
        Eisenstein {
            re: ac - &bd,
            rho: ad_bc - bd,
        }
    }
    fn neg(&self, a: &Eisenstein) -> Eisenstein {
        Eisenstein {
            re: -&a.re,
            rho: -&a.rho,
        }
    }
    fn inv(&self, a: &Eisenstein) -> Option<Eisenstein> {
        // (a + bρ)(a + bρ²) = a² - ab + b², and a + bρ² = (a - b) - bρ.
        let norm = &a.re * &a.re - &a.re * &a.rho + &a.rho * &a.rho;
        if norm.is_zero() {
            return None;
        }
        let ninv = norm.recip();
        Some(Eisenstein {
            re: (&a.re - &a.rho) * &ninv,
            rho: -&a.rho * &ninv,
        })
    }
    fn is_zero(&self, a: &Eisenstein) -> bool {
        a.re.is_zero() && a.rho.is_zero()
    }
    fn sample(&self, rng: &mut SplitMix64) -> Eisenstein {
        // Small integer coordinates keep coefficient growth inside Krylov
        // and inversion chains manageable; "generic" only needs a Zariski
        // dense sampling set.
        Eisenstein {
            re: Rational::from_integer(BigInt::from(rng.next_signed(9))),
            rho: Rational::from_integer(BigInt::from(rng.next_signed(9))),
        }
    }
    fn encode(&self, a: &Eisenstein) -> String {
        if a.rho.is_negative() {
            format!("{}{}*r", a.re, a.rho)
        } else {
            format!("{}+{}*r", a.re, a.rho)
        }
    }
    fn decode(&self, s: &str) -> Result<Eisenstein, ScalarError> {
        let s = s.trim();
        let body = match s.strip_suffix("*r") {
            Some(b) => b,
            None => return Ok(Eisenstein::new(parse_rational(s)?, Rational::zero())),
        };
        // Split "re±rho" at the first sign past index 0 (rationals carry no
        // interior signs: lowest terms, positive denominator).
        let split = body
            .char_indices()
            .skip(1)
            .find(|(_, c)| *c == '+' || *c == '-')
            .map(|(i, _)| i)
            .ok_or_else(|| ScalarError::Parse(s.to_string()))?;
        let re = parse_rational(&body[..split])?;
        let rho_part = &body[split..];
        let rho = if let Some(rest) = rho_part.strip_prefix('+') {
            parse_rational(rest)?
        } else {
            parse_rational(rho_part)?
        };
        Ok(Eisenstein::new(re, rho))
    }
    fn spec_str(&self) -> String {
        "qrho".to_string()
    }

    /// Fraction-free rank: clear denominators row-wise, then run Bareiss
    /// elimination in ℤ[ρ] with exact divisions, bounding coefficient growth
    /// to minor-sized integers.
    fn rank_slice(&self, rows: usize, cols: usize, data: Vec<Eisenstein>) -> usize {
        let mut m: Vec<(BigInt, BigInt)> = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            let mut l = BigInt::one();
            for c in 0..cols {
                let e = &data[r * cols + c];
                l = l.lcm(e.re.denom());
                l = l.lcm(e.rho.denom());
            }
            let lr = Rational::from_integer(l);
            for c in 0..cols {
                let e = &data[r * cols + c];
                m.push(((&e.re * &lr).to_integer(), (&e.rho * &lr).to_integer()));
            }
        }
        bareiss_rank(rows, cols, &mut m)
    }
}

fn zmul(a: &(BigInt, BigInt), b: &(BigInt, BigInt)) -> (BigInt, BigInt) {
    let ac = &a.0 * &b.0;
    let bd = &a.1 * &b.1;
    let ad_bc = &a.0 * &b.1 + &a.1 * &b.0;
    (ac - &bd, ad_bc - bd)
}

fn zsub(a: &(BigInt, BigInt), b: &(BigInt, BigInt)) -> (BigInt, BigInt) {
    (&a.0 - &b.0, &a.1 - &b.1)
}

fn zis_zero(a: &(BigInt, BigInt)) -> bool {
    a.0.is_zero() && a.1.is_zero()
}

/// Exact division in ℤ[ρ]: multiply by the conjugate and divide by the norm.
fn zdiv_exact(a: &(BigInt, BigInt), b: &(BigInt, BigInt)) -> (BigInt, BigInt) {
    let conj = (&b.0 - &b.1, -b.1.clone());
    let num = zmul(a, &conj);
    let norm = &b.0 * &b.0 - &b.0 * &b.1 + &b.1 * &b.1;
    debug_assert!(!norm.is_zero());
    debug_assert!((&num.0 % &norm).is_zero() && (&num.1 % &norm).is_zero());
    (num.0 / &norm, num.1 / &norm)
}

fn bareiss_rank(rows: usize, cols: usize, m: &mut [(BigInt, BigInt)]) -> usize {
    let mut prev = (BigInt::one(), BigInt::zero());
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(pr) = (rank..rows).find(|&r| !zis_zero(&m[r * cols + col])) else {
            continue;
        };
        if pr != rank {
            for c in 0..cols {
                m.swap(rank * cols + c, pr * cols + c);
            }
        }
        let pivot = m[rank * cols + col].clone();
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let t = zsub(
                    &zmul(&pivot, &m[r * cols + c]),
                    &zmul(&m[r * cols + col], &m[rank * cols + c]),
                );
                m[r * cols + c] = zdiv_exact(&t, &prev);
            }
            m[r * cols + col] = (BigInt::zero(), BigInt::zero());
        }
        prev = pivot;
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}
