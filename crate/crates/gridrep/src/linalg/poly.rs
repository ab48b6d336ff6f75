//! Univariate polynomials over ℚ and GF(p).

use std::fmt;

use num_bigint::BigUint;

use super::arith::{Arith, Fp, Qq};
use super::factor;
use super::field::{Field, Scalar};
use super::matrix::with_arith;

/// A univariate polynomial with coefficients in a [`Field`].
///
/// Coefficients are stored from the constant term upwards with no trailing
/// zeros; the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl Poly {
    /// Builds a polynomial from coefficients, constant term first.
    pub fn from_coeffs(field: Field, mut coeffs: Vec<Scalar>) -> Poly {
        assert!(coeffs.iter().all(|c| c.field() == field), "coefficient from a different field");
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    /// Builds a polynomial from integer coefficients, constant term first.
    pub fn from_ints(field: Field, coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(field, coeffs.iter().map(|&c| Scalar::from_i64(field, c)).collect())
    }

    /// The polynomial `x − a`.
    pub fn linear(field: Field, a: i64) -> Poly {
        Poly::from_ints(field, &[-a, 1])
    }

    /// The field of coefficients.
    pub fn field(&self) -> Field {
        self.field
    }

    /// Coefficients, constant term first.
    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Whether this is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Product of two polynomials.
    pub fn mul(&self, other: &Poly) -> Poly {
        with_arith!(self.field, ar => {
            let a = self.typed(ar);
            let b = other.typed(ar);
            Poly::from_typed(ar, &pmul(ar, &a, &b))
        })
    }

    /// `self^e`.
    pub fn pow(&self, e: usize) -> Poly {
        let mut r = Poly::from_ints(self.field, &[1]);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub(crate) fn typed<A: Arith>(&self, ar: &A) -> Vec<A::E> {
        self.coeffs.iter().map(|c| ar.from_scalar(c)).collect()
    }

    pub(crate) fn from_typed<A: Arith>(ar: &A, v: &[A::E]) -> Poly {
        Poly::from_coeffs(ar.field(), v.iter().map(|c| ar.to_scalar(c)).collect())
    }

    /// Irreducible factorization of a non-zero polynomial: monic irreducible
    /// factors with multiplicities, sorted by degree and then coefficients.
    /// The leading coefficient is dropped; constants have no factors.
    pub fn factor(&self) -> Vec<(Poly, usize)> {
        assert!(!self.is_zero(), "factorization of the zero polynomial");
        let mut out: Vec<(Poly, usize)> = match self.field {
            Field::PrimeField { p } => {
                let ar = Fp(p);
                factor::factor_fp(p, &self.typed(&ar))
                    .into_iter()
                    .map(|(f, e)| (Poly::from_typed(&ar, &f), e))
                    .collect()
            }
            Field::Rationals => factor::factor_q(&self.typed(&Qq))
                .into_iter()
                .map(|(f, e)| (Poly::from_typed(&Qq, &f), e))
                .collect(),
        };
        out.sort_by(|a, b| (a.0.coeffs.len(), &a.0.coeffs, a.1).cmp(&(b.0.coeffs.len(), &b.0.coeffs, b.1)));
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match d {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{d}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.field, self)
    }
}

// ---------------------------------------------------------------------------
// Generic dense polynomial kernels over an `Arith` (constant term first).
// ---------------------------------------------------------------------------

pub(crate) fn trim<A: Arith>(ar: &A, v: &mut Vec<A::E>) {
    while v.last().is_some_and(|c| ar.is_zero(c)) {
        v.pop();
    }
}

pub(crate) fn padd<A: Arith>(ar: &A, a: &[A::E], b: &[A::E]) -> Vec<A::E> {
    let n = a.len().max(b.len());
    let mut v: Vec<A::E> = (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => ar.add(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        })
        .collect();
    trim(ar, &mut v);
    v
}

pub(crate) fn psub<A: Arith>(ar: &A, a: &[A::E], b: &[A::E]) -> Vec<A::E> {
    let nb: Vec<A::E> = b.iter().map(|c| ar.neg(c)).collect();
    padd(ar, a, &nb)
}

pub(crate) fn pmul<A: Arith>(ar: &A, a: &[A::E], b: &[A::E]) -> Vec<A::E> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![ar.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if ar.is_zero(x) {
            continue;
        }
        let nx = ar.neg(x);
        for (j, y) in b.iter().enumerate() {
            v[i + j] = ar.mul_sub(&v[i + j], &nx, y);
        }
    }
    trim(ar, &mut v);
    v
}

/// Quotient and remainder of `a` by non-zero `b`.
pub(crate) fn pdivrem<A: Arith>(ar: &A, a: &[A::E], b: &[A::E]) -> (Vec<A::E>, Vec<A::E>) {
    assert!(!b.is_empty(), "division by the zero polynomial");
    let mut r = a.to_vec();
    trim(ar, &mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let db = b.len() - 1;
    let inv = ar.inv(&b[db]);
    let mut q = vec![ar.zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let c = ar.mul(&r[r.len() - 1], &inv);
        for (j, y) in b.iter().enumerate() {
            r[k + j] = ar.mul_sub(&r[k + j], &c, y);
        }
        q[k] = c;
        r.pop();
        trim(ar, &mut r);
    }
    trim(ar, &mut q);
    (q, r)
}

pub(crate) fn prem<A: Arith>(ar: &A, a: &[A::E], b: &[A::E]) -> Vec<A::E> {
    pdivrem(ar, a, b).1
}

pub(crate) fn pmonic<A: Arith>(ar: &A, a: &[A::E]) -> Vec<A::E> {
    match a.last() {
        None => Vec::new(),
        Some(l) => {
            let inv = ar.inv(l);
            a.iter().map(|c| ar.mul(c, &inv)).collect()
        }
    }
}

/// Monic greatest common divisor (zero if both inputs are zero).
pub(crate) fn pgcd<A: Arith>(ar: &A, a: &[A::E], b: &[A::E]) -> Vec<A::E> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(ar, &mut x);
    trim(ar, &mut y);
    while !y.is_empty() {
        let r = prem(ar, &x, &y);
        x = y;
        y = r;
    }
    pmonic(ar, &x)
}

pub(crate) fn pderiv<A: Arith>(ar: &A, a: &[A::E]) -> Vec<A::E> {
    let mut v: Vec<A::E> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| ar.mul(&ar.from_i64(i as i64), c))
        .collect();
    trim(ar, &mut v);
    v
}

pub(crate) fn pmulmod<A: Arith>(ar: &A, a: &[A::E], b: &[A::E], m: &[A::E]) -> Vec<A::E> {
    prem(ar, &pmul(ar, a, b), m)
}

/// `base^e mod m`.
pub(crate) fn ppowmod<A: Arith>(ar: &A, base: &[A::E], e: &BigUint, m: &[A::E]) -> Vec<A::E> {
    let mut result = prem(ar, &[ar.one()], m);
    let b = prem(ar, base, m);
    for i in (0..e.bits()).rev() {
        result = pmulmod(ar, &result, &result, m);
        if e.bit(i) {
            result = pmulmod(ar, &result, &b, m);
        }
    }
    result
}

pub(crate) fn is_one<A: Arith>(ar: &A, a: &[A::E]) -> bool {
    a.len() == 1 && a[0] == ar.one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_identity() {
        let ar = Fp(7);
        let a = vec![3, 1, 4, 1, 5];
        let b = vec![2, 0, 1];
        let (q, r) = pdivrem(&ar, &a, &b);
        assert!(r.len() < b.len());
        assert_eq!(padd(&ar, &pmul(&ar, &q, &b), &r), a);
    }

    #[test]
    fn gcd_of_shared_factor() {
        let ar = Qq;
        let x1 = Poly::linear(Field::Q, 1).typed(&ar);
        let x2 = Poly::linear(Field::Q, 2).typed(&ar);
        let x3 = Poly::linear(Field::Q, 3).typed(&ar);
        let g = pgcd(&ar, &pmul(&ar, &x1, &x2), &pmul(&ar, &x1, &x3));
        assert_eq!(g, x1);
    }
}
