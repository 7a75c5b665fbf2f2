//! Exact coefficient fields: prime fields GF(p) with p < 2^31 and the rationals.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;

/// Which coefficient field a presentation lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Prime(u32),
    Rationals,
}

impl FieldSpec {
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Prime(p) => *p as u64,
            FieldSpec::Rationals => 0,
        }
    }

    pub fn validate(&self) -> Result<(), AlgebraError> {
        match self {
            FieldSpec::Prime(p) => {
                if !is_prime(*p as u64) || (*p as u64) >= (1u64 << 31) {
                    Err(AlgebraError::NotPrime(*p as u64))
                } else {
                    Ok(())
                }
            }
            FieldSpec::Rationals => Ok(()),
        }
    }
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "GF {p}"),
            FieldSpec::Rationals => write!(f, "Q"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Arithmetic in an exact field. Elements are plain values; the field object
/// carries whatever context (the modulus) the operations need.
pub trait Field: Clone + Debug + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// Integer representative when one exists (symmetric residue for GF(p)).
    fn to_i64(&self, a: &Self::Elem) -> Option<i64>;
    fn format(&self, a: &Self::Elem) -> String;
    /// Field size when finite.
    fn size(&self) -> Option<u64>;
    /// The `i`-th element in a fixed enumeration (finite fields only).
    fn nth(&self, i: u64) -> Self::Elem;
    /// Image of a rational number; panics if the denominator vanishes.
    fn from_rational(&self, q: &BigRational) -> Self::Elem;
    /// Rational representative (symmetric residue for GF(p)).
    fn to_rational(&self, a: &Self::Elem) -> BigRational;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }

    /// `a - c * b`
    fn sub_mul(&self, a: &Self::Elem, c: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.sub(a, &self.mul(c, b))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, AlgebraError> {
        FieldSpec::Prime(p).validate()?;
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
    #[inline]
    fn zero(&self) -> u32 {
        0
    }
    #[inline]
    fn one(&self) -> u32 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a + *b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if *a >= *b {
            *a - *b
        } else {
            *a + self.p - *b
        }
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - *a
        }
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn inv(&self, a: &u32) -> u32 {
        assert!(*a != 0, "inverse of zero in GF({})", self.p);
        // extended Euclid on i64
        let (mut r0, mut r1) = (self.p as i64, *a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        t0.rem_euclid(self.p as i64) as u32
    }
    fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }
    fn to_i64(&self, a: &u32) -> Option<i64> {
        let a = *a as i64;
        let p = self.p as i64;
        Some(if a > p / 2 { a - p } else { a })
    }
    fn format(&self, a: &u32) -> String {
        self.to_i64(a).unwrap().to_string()
    }
    fn size(&self) -> Option<u64> {
        Some(self.p as u64)
    }
    fn nth(&self, i: u64) -> u32 {
        (i % self.p as u64) as u32
    }
    fn from_rational(&self, q: &BigRational) -> u32 {
        let p = BigInt::from(self.p);
        let n = ((q.numer() % &p + &p) % &p).to_u32().unwrap();
        let d = ((q.denom() % &p + &p) % &p).to_u32().unwrap();
        self.div(&n, &d)
    }
    fn to_rational(&self, a: &u32) -> BigRational {
        BigRational::from_integer(BigInt::from(self.to_i64(a).unwrap()))
    }
    #[inline]
    fn sub_mul(&self, a: &u32, c: &u32, b: &u32) -> u32 {
        let prod = (*c as u64 * *b as u64) % self.p as u64;
        let r = *a as u64 + self.p as u64 - prod;
        (if r >= self.p as u64 {
            r - self.p as u64
        } else {
            r
        }) as u32
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RationalField;

impl Field for RationalField {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero in Q");
        a.recip()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn to_i64(&self, a: &BigRational) -> Option<i64> {
        if a.is_integer() {
            a.to_integer().to_i64()
        } else {
            None
        }
    }
    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.to_integer().to_string()
        } else if a.is_negative() {
            format!("-{}/{}", a.numer().abs(), a.denom())
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn size(&self) -> Option<u64> {
        None
    }
    fn nth(&self, i: u64) -> BigRational {
        self.from_i64(i as i64)
    }
    fn from_rational(&self, q: &BigRational) -> BigRational {
        q.clone()
    }
    fn to_rational(&self, a: &BigRational) -> BigRational {
        a.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(32003).unwrap();
        for a in [1u32, 2, 17, 32002, 12345] {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
    }

    #[test]
    fn non_prime_rejected() {
        assert!(matches!(
            PrimeField::new(32004),
            Err(AlgebraError::NotPrime(32004))
        ));
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(2).is_ok());
    }

    #[test]
    fn symmetric_representatives() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.to_i64(&6), Some(-1));
        assert_eq!(f.to_i64(&3), Some(3));
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.sub_mul(&1, &3, &5), f.sub(&1, &f.mul(&3, &5)));
        let q = BigRational::new(BigInt::from(-3), BigInt::from(2));
        assert_eq!(f.mul(&f.from_rational(&q), &2), f.from_i64(-3));
    }

    #[test]
    fn rationals_format() {
        let q = RationalField;
        let half = q.div(&q.one(), &q.from_i64(-2));
        assert_eq!(q.format(&half), "-1/2");
        assert_eq!(q.to_i64(&half), None);
    }
}
