//! Base fields and their elements.
//!
//! Two kinds of field are supported: the rationals ℚ (arbitrary precision)
//! and prime fields GF(p) with `p < 2^31`. Every element is kept in canonical
//! form: reduced fractions with positive denominator, or least non-negative
//! residues.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The base field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Field {
    /// The rational numbers.
    Rationals,
    /// The prime field with `p` elements.
    PrimeField {
        /// The (prime) modulus.
        p: u32,
    },
}

impl Field {
    /// The rationals.
    pub const Q: Field = Field::Rationals;

    /// The prime field GF(p), checking that `p` is a prime below `2^31`.
    pub fn prime(p: u32) -> Result<Field> {
        if p >= (1 << 31) {
            return Err(Error::InvalidField(format!("modulus {p} is not below 2^31")));
        }
        if !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("modulus {p} is not prime")));
        }
        Ok(Field::PrimeField { p })
    }

    /// The characteristic of the field (0 for ℚ).
    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Rationals => 0,
            Field::PrimeField { p } => *p,
        }
    }

    /// Parses the command-line syntax `Q` or `Fp:<prime>`.
    pub fn parse(s: &str) -> Result<Field> {
        let s = s.trim();
        if s == "Q" || s == "q" {
            return Ok(Field::Rationals);
        }
        if let Some(rest) = s.strip_prefix("Fp:").or_else(|| s.strip_prefix("fp:")) {
            let p: u32 = rest
                .parse()
                .map_err(|_| Error::InvalidField(format!("cannot parse modulus in {s:?}")))?;
            return Field::prime(p);
        }
        Err(Error::InvalidField(format!("expected `Q` or `Fp:<prime>`, got {s:?}")))
    }

    /// Checks that a field description read from outside is well formed.
    pub fn check(&self) -> Result<()> {
        match self {
            Field::Rationals => Ok(()),
            Field::PrimeField { p } => Field::prime(*p).map(|_| ()),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::PrimeField { p } => write!(f, "Fp:{p}"),
        }
    }
}

/// Deterministic primality test for 64-bit integers (trial division is
/// plenty for moduli below `2^31`).
pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// An element of a [`Field`].
///
/// The element carries enough information to know which field it lives in,
/// so that arithmetic between scalars can be checked.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    /// A rational number in lowest terms.
    Rational(BigRational),
    /// A residue `value` modulo the prime `p`, with `0 <= value < p`.
    Prime {
        /// Least non-negative residue.
        value: u32,
        /// The modulus.
        p: u32,
    },
}

impl Scalar {
    /// The zero element of `field`.
    pub fn zero(field: Field) -> Scalar {
        Scalar::from_i64(field, 0)
    }

    /// The unit element of `field`.
    pub fn one(field: Field) -> Scalar {
        Scalar::from_i64(field, 1)
    }

    /// The image of an integer in `field`.
    pub fn from_i64(field: Field, v: i64) -> Scalar {
        match field {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::PrimeField { p } => Scalar::Prime { value: v.rem_euclid(p as i64) as u32, p },
        }
    }

    /// The image of a fraction `num/den` in `field`; fails if `den` vanishes
    /// in the field.
    pub fn from_fraction(field: Field, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        match field {
            Field::Rationals => Ok(Scalar::Rational(BigRational::new(num.clone(), den.clone()))),
            Field::PrimeField { p } => {
                let n = reduce_bigint(num, p);
                let d = reduce_bigint(den, p);
                if d == 0 {
                    return Err(Error::Parse(format!("denominator {den} vanishes modulo {p}")));
                }
                Ok(Scalar::Prime { value: mul_mod(n, inv_mod(d, p), p), p })
            }
        }
    }

    /// A random element: uniform over GF(p), an integer in `[-50, 50]` over ℚ.
    pub fn random<R: rand::Rng + ?Sized>(field: Field, rng: &mut R) -> Scalar {
        match field {
            Field::Rationals => Scalar::from_i64(field, rng.gen_range(-50..=50)),
            Field::PrimeField { p } => Scalar::Prime { value: rng.gen_range(0..p), p },
        }
    }

    /// The field this element belongs to.
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Prime { p, .. } => Field::PrimeField { p: *p },
        }
    }

    /// Whether the element is zero.
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
        }
    }

    /// Whether the element is one.
    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Prime { value, .. } => *value == 1,
        }
    }

    /// Parses a decimal integer (`"-3"`) or fraction (`"2/5"`) into `field`.
    pub fn parse(field: Field, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num
            .parse()
            .map_err(|_| Error::Parse(format!("invalid scalar {s:?}")))?;
        let den: BigInt = den
            .parse()
            .map_err(|_| Error::Parse(format!("invalid scalar {s:?}")))?;
        Scalar::from_fraction(field, &num, &den)
    }

    /// Sum of two elements of the same field.
    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Prime { value: a, p }, Scalar::Prime { value: b, .. }) => {
                Scalar::Prime { value: add_mod(*a, *b, *p), p: *p }
            }
            _ => panic!("scalar field mismatch"),
        }
    }

    /// Difference of two elements of the same field.
    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    /// Product of two elements of the same field.
    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Prime { value: a, p }, Scalar::Prime { value: b, .. }) => {
                Scalar::Prime { value: mul_mod(*a, *b, *p), p: *p }
            }
            _ => panic!("scalar field mismatch"),
        }
    }

    /// Additive inverse.
    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Prime { value, p } => Scalar::Prime { value: neg_mod(*value, *p), p: *p },
        }
    }

    /// Multiplicative inverse, or `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(a) => Scalar::Rational(a.recip()),
            Scalar::Prime { value, p } => Scalar::Prime { value: inv_mod(*value, *p), p: *p },
        })
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Scalar) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    /// A canonical total order: rationals by value, residues by their least
    /// non-negative representative. Rationals sort before residues.
    fn cmp(&self, other: &Scalar) -> std::cmp::Ordering {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(b),
            (Scalar::Prime { value: a, p }, Scalar::Prime { value: b, p: q }) => (p, a).cmp(&(q, b)),
            (Scalar::Rational(_), Scalar::Prime { .. }) => std::cmp::Ordering::Less,
            (Scalar::Prime { .. }, Scalar::Rational(_)) => std::cmp::Ordering::Greater,
        }
    }
}

impl fmt::Display for Scalar {
    /// Prime-field elements print as decimal residues, rationals always as
    /// `num/den`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

pub(crate) fn reduce_bigint(v: &BigInt, p: u32) -> u32 {
    let r = v.mod_floor(&BigInt::from(p));
    r.to_u32().expect("residue fits in u32")
}

#[inline]
pub(crate) fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    let s = a as u64 + b as u64;
    (if s >= p as u64 { s - p as u64 } else { s }) as u32
}

#[inline]
pub(crate) fn neg_mod(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

#[inline]
pub(crate) fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    add_mod(a, neg_mod(b, p), p)
}

#[inline]
pub(crate) fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[cfg(test)]
pub(crate) fn pow_mod(mut a: u32, mut e: u64, p: u32) -> u32 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Inverse modulo a prime via the extended Euclidean algorithm.
pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0, "inverting zero");
    let (mut r0, mut r1) = (p as i64, (a % p) as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    t0.rem_euclid(p as i64) as u32
}
