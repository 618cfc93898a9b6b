//! Prime fields 𝔽_p with p ≡ 1 (mod 6) and a designated cube root of unity.

use super::{Field, ScalarError};
use crate::rng::SplitMix64;

/// Default modulus: 2^61 - 1 (Mersenne prime, ≡ 1 mod 6).  Large enough that
/// every Schwartz–Zippel style rank certification in the crate has failure
/// probability far below 2^-40.
pub const DEFAULT_PRIME: u64 = 2_305_843_009_213_693_951;

/// 𝔽_p together with its designated primitive cube root of unity.
///
/// Construction validates the modulus, so a value of this type is always a
/// usable field descriptor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
    rho: u64,
}

/// Builds the descriptor for 𝔽_p.
///
/// Fails with `NotPrime` or `BadResidue` (p ≢ 1 mod 6; such fields cannot
/// host ρ and a distinct -1 simultaneously).  The cube root is chosen
/// deterministically as the smaller of the two nontrivial cube roots of
/// unity, so runs are reproducible bit for bit.
pub fn make_prime_field(p: u64) -> Result<PrimeField, ScalarError> {
    if !is_prime_u64(p) {
        return Err(ScalarError::NotPrime(p));
    }
    if p % 6 != 1 {
        return Err(ScalarError::BadResidue(p));
    }
    let e = (p - 1) / 3;
    let mut g = 2u64;
    let rho = loop {
        let r = pow_mod(g, e, p);
        if r != 1 {
            let r2 = mul_mod(r, r, p);
            break r.min(r2);
        }
        g += 1;
    };
    Ok(PrimeField { p, rho })
}

impl PrimeField {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rho_residue(&self) -> u64 {
        self.rho
    }
}

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    a %= p;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for u64 (the listed bases cover the full range).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;
    const IS_EXACT_FIELD: bool = true;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn rho(&self) -> u64 {
        self.rho
    }
    fn from_i64(&self, n: i64) -> u64 {
        let r = n.rem_euclid(self.p as i64);
        r as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(pow_mod(*a, self.p - 2, self.p))
        }
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn sample(&self, rng: &mut SplitMix64) -> u64 {
        rng.next_below(self.p)
    }
    fn encode(&self, a: &u64) -> String {
        a.to_string()
    }
    fn decode(&self, s: &str) -> Result<u64, ScalarError> {
        let v: u64 = s.parse().map_err(|_| ScalarError::Parse(s.to_string()))?;
        if v >= self.p {
            return Err(ScalarError::Parse(s.to_string()));
        }
        Ok(v)
    }
    fn spec_str(&self) -> String {
        format!("fp:{}", self.p)
    }
    fn order(&self) -> Option<u64> {
        Some(self.p)
    }
    fn elem_from_index(&self, i: u64) -> u64 {
        debug_assert!(i < self.p);
        i
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_root_is_deterministic_and_minimal() {
        // Exhaustive order check: the nontrivial cube roots of 1 mod 7 are
        // {2, 4}; the deterministic choice is the smaller, 2.
        assert_eq!(make_prime_field(7).unwrap().rho_residue(), 2);
        // 3^3 = 27 ≡ 1 mod 13 and 3 != 1.
        assert_eq!(make_prime_field(13).unwrap().rho_residue(), 3);
    }

    #[test]
    fn bad_moduli_are_rejected() {
        assert_eq!(make_prime_field(5), Err(ScalarError::BadResidue(5)));
        assert_eq!(make_prime_field(6), Err(ScalarError::NotPrime(6)));
        assert_eq!(make_prime_field(25), Err(ScalarError::NotPrime(25)));
    }

    #[test]
    fn default_prime_is_valid() {
        let f = make_prime_field(DEFAULT_PRIME).unwrap();
        assert_eq!(f.p() % 6, 1);
        let rho = f.rho();
        assert_eq!(f.pow(&rho, 3), 1);
        assert_ne!(rho, 1);
    }

    #[test]
    fn small_inverses_match_hand_values() {
        let f = make_prime_field(7).unwrap();
        assert_eq!(f.inv(&2), Some(4));
        assert_eq!(f.inv(&3), Some(5));
        assert_eq!(f.inv(&0), None);
    }

    #[test]
    fn miller_rabin_spot_checks() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(1_000_000_009));
        assert!(is_prime_u64(DEFAULT_PRIME));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
    }
}
