//! Field arithmetic used by the dense kernels.
//!
//! The public types ([`Scalar`](super::Scalar), [`Matrix`](super::Matrix))
//! hide the representation; internally every kernel is written once against
//! the [`Arith`] trait and instantiated for GF(p) residues (`u32`) and for
//! arbitrary-precision rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::{add_mod, inv_mod, mul_mod, neg_mod, sub_mod, Field, Scalar};

/// Arithmetic in one concrete field.
pub(crate) trait Arith: Sync {
    type E: Clone + PartialEq + Send + Sync + std::fmt::Debug;

    fn field(&self) -> Field;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    /// Inverse of a non-zero element.
    fn inv(&self, a: &Self::E) -> Self::E;
    fn from_i64(&self, v: i64) -> Self::E;
    fn to_scalar(&self, a: &Self::E) -> Scalar;
    fn from_scalar(&self, s: &Scalar) -> Self::E;

    /// `a - f * b`, the inner step of every elimination.
    fn mul_sub(&self, a: &Self::E, f: &Self::E, b: &Self::E) -> Self::E {
        self.sub(a, &self.mul(f, b))
    }
}

/// GF(p) with residues stored as `u32`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Fp(pub u32);

impl Arith for Fp {
    type E = u32;

    fn field(&self) -> Field {
        Field::PrimeField { p: self.0 }
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
        add_mod(*a, *b, self.0)
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        sub_mod(*a, *b, self.0)
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        mul_mod(*a, *b, self.0)
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        neg_mod(*a, self.0)
    }
    fn inv(&self, a: &u32) -> u32 {
        inv_mod(*a, self.0)
    }
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.0 as i64) as u32
    }
    fn to_scalar(&self, a: &u32) -> Scalar {
        Scalar::Prime { value: *a, p: self.0 }
    }
    fn from_scalar(&self, s: &Scalar) -> u32 {
        match s {
            Scalar::Prime { value, p } if *p == self.0 => *value,
            _ => panic!("scalar {s:?} is not an element of GF({})", self.0),
        }
    }
    #[inline]
    fn mul_sub(&self, a: &u32, f: &u32, b: &u32) -> u32 {
        let p = self.0 as u64;
        ((*a as u64 + (p - *f as u64) * *b as u64) % p) as u32
    }
}

/// The rationals.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Qq;

impl Arith for Qq {
    type E = BigRational;

    fn field(&self) -> Field {
        Field::Rationals
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
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        if a.is_zero() || b.is_zero() {
            return BigRational::zero();
        }
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn to_scalar(&self, a: &BigRational) -> Scalar {
        Scalar::Rational(a.clone())
    }
    fn from_scalar(&self, s: &Scalar) -> BigRational {
        match s {
            Scalar::Rational(q) => q.clone(),
            _ => panic!("scalar {s:?} is not rational"),
        }
    }
    fn mul_sub(&self, a: &BigRational, f: &BigRational, b: &BigRational) -> BigRational {
        if f.is_zero() || b.is_zero() {
            return a.clone();
        }
        a - f * b
    }
}
