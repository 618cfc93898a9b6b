//! Dual numbers F[ε]/(ε²) over any scalar backend: exact forward-mode
//! differentiation.  `a + bε` is invertible iff `a` is, with inverse
//! `a⁻¹ - a⁻²bε`.

use super::{Field, ScalarError};
use crate::rng::SplitMix64;

#[derive(Debug, Clone, PartialEq)]
pub struct Dual<T> {
    /// Value part.
    pub v: T,
    /// Derivative (ε) part.
    pub e: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DualField<F: Field> {
    pub base: F,
}

impl<F: Field> DualField<F> {
    pub fn new(base: F) -> Self {
        DualField { base }
    }

    /// Lift a base element as a constant (ε-part zero).
    pub fn constant(&self, v: F::Elem) -> Dual<F::Elem> {
        Dual {
            v,
            e: self.base.zero(),
        }
    }

    /// Lift a base element as a variable: value `v`, derivative one.
    pub fn variable(&self, v: F::Elem) -> Dual<F::Elem> {
        Dual {
            v,
            e: self.base.one(),
        }
    }
}

impl<F: Field> Field for DualField<F> {
    type Elem = Dual<F::Elem>;
    // A local ring, not a field: ε is a nonzero non-unit.
    const IS_EXACT_FIELD: bool = false;

    fn zero(&self) -> Self::Elem {
        self.constant(self.base.zero())
    }
    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }
    fn rho(&self) -> Self::Elem {
        self.constant(self.base.rho())
    }
    fn from_i64(&self, n: i64) -> Self::Elem {
        self.constant(self.base.from_i64(n))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        Dual {
            v: self.base.add(&a.v, &b.v),
            e: self.base.add(&a.e, &b.e),
        }
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        Dual {
            v: self.base.sub(&a.v, &b.v),
            e: self.base.sub(&a.e, &b.e),
        }
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        Dual {
            v: self.base.mul(&a.v, &b.v),
            e: self.base.add(&self.base.mul(&a.v, &b.e), &self.base.mul(&a.e, &b.v)),
        }
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        Dual {
            v: self.base.neg(&a.v),
            e: self.base.neg(&a.e),
        }
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let iv = self.base.inv(&a.v)?;
        let e = self.base.neg(&self.base.mul(&self.base.mul(&iv, &a.e), &iv));
        Some(Dual { v: iv, e })
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.base.is_zero(&a.v) && self.base.is_zero(&a.e)
    }
    fn sample(&self, rng: &mut SplitMix64) -> Self::Elem {
        self.constant(self.base.sample(rng))
    }
    fn encode(&self, a: &Self::Elem) -> String {
        format!("{}|{}", self.base.encode(&a.v), self.base.encode(&a.e))
    }
    fn decode(&self, s: &str) -> Result<Self::Elem, ScalarError> {
        // Dual numbers are an internal computation device, never serialized.
        Err(ScalarError::Parse(s.to_string()))
    }
    fn spec_str(&self) -> String {
        format!("dual({})", self.base.spec_str())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{make_prime_field, PrimeField};

    type D = DualField<PrimeField>;

    fn poly_eval(f: &D, coeffs: &[u64], x: &Dual<u64>) -> Dual<u64> {
        // Horner
        let mut acc = f.zero();
        for c in coeffs.iter().rev() {
            acc = f.add(&f.mul(&acc, x), &f.constant(*c));
        }
        acc
    }

    fn poly_derive(base: &PrimeField, coeffs: &[u64]) -> Vec<u64> {
        coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| base.mul(&base.from_i64(i as i64), c))
            .collect()
    }

    fn plain_eval(base: &PrimeField, coeffs: &[u64], x: u64) -> u64 {
        let mut acc = 0u64;
        for c in coeffs.iter().rev() {
            acc = base.add(&base.mul(&acc, &x), c);
        }
        acc
    }

    #[test]
    fn chain_rule_matches_explicit_derivatives() {
        let base = make_prime_field(1_000_003).unwrap();
        let dual = DualField::new(base);
        let mut rng = SplitMix64::new(77);
        for _ in 0..200 {
            let f: Vec<u64> = (0..6).map(|_| base.sample(&mut rng)).collect();
            let g: Vec<u64> = (0..5).map(|_| base.sample(&mut rng)).collect();
            let x = base.sample(&mut rng);
            let inner = poly_eval(&dual, &g, &dual.variable(x));
            let outer = poly_eval(&dual, &f, &inner);
            let expect = base.mul(
                &plain_eval(&base, &poly_derive(&base, &f), plain_eval(&base, &g, x)),
                &plain_eval(&base, &poly_derive(&base, &g), x),
            );
            assert_eq!(outer.e, expect);
        }
    }

    #[test]
    fn inverse_formula() {
        let base = make_prime_field(7).unwrap();
        let dual = DualField::new(base);
        let a = Dual { v: 3, e: 5 };
        let inv = dual.inv(&a).unwrap();
        assert!(dual.is_one(&dual.mul(&a, &inv)));
        // a⁻¹ = 5, ε-part = -5·5·5 = -125 ≡ -6 ≡ 1 (mod 7)
        assert_eq!(inv, Dual { v: 5, e: 1 });
        assert!(dual.inv(&Dual { v: 0, e: 1 }).is_none());
    }
}
