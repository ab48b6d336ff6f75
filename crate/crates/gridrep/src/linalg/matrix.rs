//! Dense exact matrices.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use super::arith::{Arith, Fp, Qq};
use super::field::{Field, Scalar};
use super::poly::Poly;
use crate::error::{Error, Result};

/// Entry storage, one variant per kind of field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub(crate) enum Data {
    Prime(Vec<u32>),
    Rational(Vec<BigRational>),
}

/// Typed access to [`Data`] for a concrete [`Arith`].
pub(crate) trait Storage: Arith {
    fn view<'a>(&self, d: &'a Data) -> &'a [Self::E];
    fn wrap(&self, v: Vec<Self::E>) -> Data;
}

impl Storage for Fp {
    fn view<'a>(&self, d: &'a Data) -> &'a [u32] {
        match d {
            Data::Prime(v) => v,
            Data::Rational(_) => panic!("field mismatch: expected GF({})", self.0),
        }
    }
    fn wrap(&self, v: Vec<u32>) -> Data {
        Data::Prime(v)
    }
}

impl Storage for Qq {
    fn view<'a>(&self, d: &'a Data) -> &'a [BigRational] {
        match d {
            Data::Rational(v) => v,
            Data::Prime(_) => panic!("field mismatch: expected Q"),
        }
    }
    fn wrap(&self, v: Vec<BigRational>) -> Data {
        Data::Rational(v)
    }
}

/// Runs `$body` with `$ar` bound to the arithmetic of `$field`.
macro_rules! with_arith {
    ($field:expr, $ar:ident => $body:expr) => {
        match $field {
            Field::Rationals => {
                let $ar = &Qq;
                $body
            }
            Field::PrimeField { p } => {
                let $ar = &Fp(p);
                $body
            }
        }
    };
}
pub(crate) use with_arith;

/// A dense matrix over ℚ or GF(p), stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Data,
}

/// Result of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    /// The reduced row echelon form.
    pub r: Matrix,
    /// Pivot column of each non-zero row, increasing.
    pub pivots: Vec<usize>,
}

impl Rref {
    /// The rank, i.e. the number of pivots.
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl Matrix {
    pub(crate) fn from_data(field: Field, rows: usize, cols: usize, data: Data) -> Matrix {
        Matrix { field, rows, cols, data }
    }

    pub(crate) fn data(&self) -> &Data {
        &self.data
    }

    /// The `rows × cols` zero matrix.
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        with_arith!(field, ar => Matrix::from_data(field, rows, cols, ar.wrap(vec![ar.zero(); rows * cols])))
    }

    /// The `n × n` identity matrix.
    pub fn identity(field: Field, n: usize) -> Matrix {
        with_arith!(field, ar => {
            let mut v = vec![ar.zero(); n * n];
            for i in 0..n {
                v[i * n + i] = ar.one();
            }
            Matrix::from_data(field, n, n, ar.wrap(v))
        })
    }

    /// Builds a matrix from integer entries given row by row.
    pub fn from_ints(field: Field, rows: usize, cols: usize, entries: &[i64]) -> Matrix {
        assert_eq!(entries.len(), rows * cols, "entry count does not match shape");
        with_arith!(field, ar => Matrix::from_data(
            field, rows, cols, ar.wrap(entries.iter().map(|&e| ar.from_i64(e)).collect())))
    }

    /// Builds a matrix from rows of integers; all rows must have equal length.
    pub fn from_int_rows(field: Field, rows: &[Vec<i64>]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let flat: Vec<i64> = rows.iter().flatten().copied().collect();
        Matrix::from_ints(field, rows.len(), cols, &flat)
    }

    /// Builds a matrix from rows of scalars; fails on ragged rows or foreign
    /// scalars.
    pub fn from_scalar_rows(field: Field, rows: usize, cols: usize, entries: Vec<Vec<Scalar>>) -> Result<Matrix> {
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "expected {rows}×{cols} entries"
            )));
        }
        if entries.iter().flatten().any(|s| s.field() != field) {
            return Err(Error::ShapeMismatch("entry from a different field".into()));
        }
        Ok(with_arith!(field, ar => Matrix::from_data(field, rows, cols,
            ar.wrap(entries.iter().flatten().map(|s| ar.from_scalar(s)).collect()))))
    }

    /// Builds a matrix entry by entry.
    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Matrix {
        with_arith!(field, ar => {
            let mut v = Vec::with_capacity(rows * cols);
            for i in 0..rows {
                for j in 0..cols {
                    v.push(ar.from_scalar(&f(i, j)));
                }
            }
            Matrix::from_data(field, rows, cols, ar.wrap(v))
        })
    }

    /// The field of the entries.
    pub fn field(&self) -> Field {
        self.field
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Whether the matrix is square.
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// The entry at row `i`, column `j`.
    pub fn get(&self, i: usize, j: usize) -> Scalar {
        assert!(i < self.rows && j < self.cols, "index out of range");
        with_arith!(self.field, ar => ar.to_scalar(&ar.view(&self.data)[i * self.cols + j]))
    }

    /// Overwrites the entry at row `i`, column `j`.
    pub fn set(&mut self, i: usize, j: usize, s: &Scalar) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        let k = i * self.cols + j;
        match (&mut self.data, s) {
            (Data::Prime(v), Scalar::Prime { value, p }) if Field::PrimeField { p: *p } == self.field => v[k] = *value,
            (Data::Rational(v), Scalar::Rational(q)) => v[k] = q.clone(),
            _ => panic!("scalar from a different field"),
        }
    }

    /// All entries, row by row.
    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j)).collect()).collect()
    }

    /// Column `j` as an `rows × 1` matrix.
    pub fn column(&self, j: usize) -> Matrix {
        self.select_cols(&[j])
    }

    /// Whether every entry is zero.
    pub fn is_zero(&self) -> bool {
        with_arith!(self.field, ar => ar.view(&self.data).iter().all(|e| ar.is_zero(e)))
    }

    /// Whether the matrix is a square identity matrix.
    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Matrix::identity(self.field, self.rows)
    }

    fn check_same_field(&self, other: &Matrix) {
        assert_eq!(self.field, other.field, "matrices over different fields");
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        self.check_same_field(other);
        assert_eq!(self.cols, other.rows, "product of {}×{} and {}×{}", self.rows, self.cols, other.rows, other.cols);
        with_arith!(self.field, ar => {
            let a = ar.view(&self.data);
            let b = ar.view(&other.data);
            Matrix::from_data(self.field, self.rows, other.cols,
                ar.wrap(mul_kernel(ar, a, b, self.rows, self.cols, other.cols)))
        })
    }

    /// Entrywise sum.
    pub fn add(&self, other: &Matrix) -> Matrix {
        self.zip(other, false)
    }

    /// Entrywise difference.
    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.zip(other, true)
    }

    fn zip(&self, other: &Matrix, subtract: bool) -> Matrix {
        self.check_same_field(other);
        assert!(self.rows == other.rows && self.cols == other.cols, "entrywise operation on different shapes");
        with_arith!(self.field, ar => {
            let a = ar.view(&self.data);
            let b = ar.view(&other.data);
            let v = a
                .iter()
                .zip(b)
                .map(|(x, y)| if subtract { ar.sub(x, y) } else { ar.add(x, y) })
                .collect();
            Matrix::from_data(self.field, self.rows, self.cols, ar.wrap(v))
        })
    }

    /// Negation.
    pub fn neg(&self) -> Matrix {
        self.scale(&Scalar::from_i64(self.field, -1))
    }

    /// Multiplies every entry by `s`.
    pub fn scale(&self, s: &Scalar) -> Matrix {
        with_arith!(self.field, ar => {
            let c = ar.from_scalar(s);
            let v = ar.view(&self.data).iter().map(|x| ar.mul(&c, x)).collect();
            Matrix::from_data(self.field, self.rows, self.cols, ar.wrap(v))
        })
    }

    /// Transpose.
    pub fn transpose(&self) -> Matrix {
        with_arith!(self.field, ar => {
            let a = ar.view(&self.data);
            let mut v = Vec::with_capacity(a.len());
            for j in 0..self.cols {
                for i in 0..self.rows {
                    v.push(a[i * self.cols + j].clone());
                }
            }
            Matrix::from_data(self.field, self.cols, self.rows, ar.wrap(v))
        })
    }

    /// The submatrix on the given rows (in the given order).
    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        with_arith!(self.field, ar => {
            let a = ar.view(&self.data);
            let mut v = Vec::with_capacity(rows.len() * self.cols);
            for &i in rows {
                v.extend_from_slice(&a[i * self.cols..(i + 1) * self.cols]);
            }
            Matrix::from_data(self.field, rows.len(), self.cols, ar.wrap(v))
        })
    }

    /// The submatrix on the given columns (in the given order).
    pub fn select_cols(&self, cols: &[usize]) -> Matrix {
        with_arith!(self.field, ar => {
            let a = ar.view(&self.data);
            let mut v = Vec::with_capacity(cols.len() * self.rows);
            for i in 0..self.rows {
                for &j in cols {
                    v.push(a[i * self.cols + j].clone());
                }
            }
            Matrix::from_data(self.field, self.rows, cols.len(), ar.wrap(v))
        })
    }

    /// Contiguous block `rows r0..r0+nr`, `cols c0..c0+nc`.
    pub fn block(&self, r0: usize, nr: usize, c0: usize, nc: usize) -> Matrix {
        let rows: Vec<usize> = (r0..r0 + nr).collect();
        let cols: Vec<usize> = (c0..c0 + nc).collect();
        self.select_rows(&rows).select_cols(&cols)
    }

    /// Writes `b` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        self.check_same_field(b);
        assert!(r0 + b.rows <= self.rows && c0 + b.cols <= self.cols, "block out of range");
        let cols = self.cols;
        match (&mut self.data, &b.data) {
            (Data::Prime(v), Data::Prime(w)) => {
                for i in 0..b.rows {
                    v[(r0 + i) * cols + c0..(r0 + i) * cols + c0 + b.cols]
                        .copy_from_slice(&w[i * b.cols..(i + 1) * b.cols]);
                }
            }
            (Data::Rational(v), Data::Rational(w)) => {
                for i in 0..b.rows {
                    v[(r0 + i) * cols + c0..(r0 + i) * cols + c0 + b.cols]
                        .clone_from_slice(&w[i * b.cols..(i + 1) * b.cols]);
                }
            }
            _ => unreachable!(),
        }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack of matrices with different row counts");
        let mut m = Matrix::zeros(self.field, self.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(0, self.cols, other);
        m
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack of matrices with different column counts");
        let mut m = Matrix::zeros(self.field, self.rows + other.rows, self.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, 0, other);
        m
    }

    /// Block-diagonal matrix with the given blocks.
    pub fn block_diag(field: Field, blocks: &[&Matrix]) -> Matrix {
        let r = blocks.iter().map(|b| b.rows).sum();
        let c = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zeros(field, r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            m.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// Reduced row echelon form. Over ℚ the elimination is fraction-free.
    pub fn rref(&self) -> Rref {
        let (data, pivots) = match self.field {
            Field::Rationals => rref_rational(Qq.view(&self.data), self.rows, self.cols),
            Field::PrimeField { p } => {
                let mut v = Fp(p).view(&self.data).to_vec();
                let piv = rref_kernel(&Fp(p), &mut v, self.rows, self.cols);
                (Data::Prime(v), piv)
            }
        };
        Rref { r: Matrix::from_data(self.field, self.rows, self.cols, data), pivots }
    }

    /// Reduced row echelon form computed by plain Gauss–Jordan elimination
    /// with field division. Over ℚ this is an independent reference for the
    /// fraction-free path used by [`Matrix::rref`].
    pub fn rref_gauss_jordan(&self) -> Rref {
        with_arith!(self.field, ar => {
            let mut v = ar.view(&self.data).to_vec();
            let piv = rref_kernel(ar, &mut v, self.rows, self.cols);
            Rref { r: Matrix::from_data(self.field, self.rows, self.cols, ar.wrap(v)), pivots: piv }
        })
    }

    /// The rank.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.rref().rank()
    }

    /// A basis of the kernel `{x : self · x = 0}`, as the columns of the
    /// returned `cols × (cols − rank)` matrix.
    pub fn nullspace(&self) -> Matrix {
        let rr = self.rref();
        nullspace_from_rref(&rr, self.cols)
    }

    /// Linearly independent columns of `self` spanning its column space
    /// (the pivot columns).
    pub fn column_basis(&self) -> Matrix {
        let rr = self.rref();
        self.select_cols(&rr.pivots)
    }

    /// Indices of standard basis vectors completing the column space of
    /// `self` to the whole space: `span(self) ⊕ span{e_k}` is everything.
    pub fn complement_coordinates(&self) -> Vec<usize> {
        let rr = self.transpose().rref();
        let mut is_piv = vec![false; self.rows];
        for &p in &rr.pivots {
            is_piv[p] = true;
        }
        (0..self.rows).filter(|&k| !is_piv[k]).collect()
    }

    /// Solves `self · x = b` for a column `b`; `None` if inconsistent.
    pub fn solve(&self, b: &Matrix) -> Result<Option<Matrix>> {
        if b.cols != 1 {
            return Err(Error::DimensionMismatch(format!("right-hand side has {} columns", b.cols)));
        }
        self.solve_matrix(b)
    }

    /// Solves `self · X = B`; `None` if some column is inconsistent.
    pub fn solve_matrix(&self, b: &Matrix) -> Result<Option<Matrix>> {
        if b.rows != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "system has {} equations but right-hand side has {} rows",
                self.rows, b.rows
            )));
        }
        if b.field != self.field {
            return Err(Error::ShapeMismatch("right-hand side over a different field".into()));
        }
        let aug = self.hstack(b);
        let rr = aug.rref();
        if rr.pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(self.field, self.cols, b.cols);
        for (row, &pc) in rr.pivots.iter().enumerate() {
            for k in 0..b.cols {
                x.set(pc, k, &rr.r.get(row, self.cols + k));
            }
        }
        Ok(Some(x))
    }

    /// The inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        match self.solve_matrix(&Matrix::identity(self.field, self.rows)) {
            Ok(Some(x)) => Some(x),
            _ => None,
        }
    }

    /// Whether the matrix is square and invertible.
    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// A left inverse `L` with `L · self = I`; requires full column rank.
    pub fn left_inverse(&self) -> Option<Matrix> {
        let t = self.transpose();
        t.solve_matrix(&Matrix::identity(self.field, self.cols))
            .ok()
            .flatten()
            .map(|x| x.transpose())
    }

    /// A right inverse `R` with `self · R = I`; requires full row rank.
    pub fn right_inverse(&self) -> Option<Matrix> {
        self.solve_matrix(&Matrix::identity(self.field, self.rows)).ok().flatten()
    }

    /// Integer power of a square matrix.
    pub fn pow(&self, mut e: u64) -> Matrix {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut result = Matrix::identity(self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Trace of a square matrix.
    pub fn trace(&self) -> Scalar {
        assert!(self.is_square(), "trace of a non-square matrix");
        let mut t = Scalar::zero(self.field);
        for i in 0..self.rows {
            t = t.add(&self.get(i, i));
        }
        t
    }

    /// Characteristic polynomial `det(xI − self)`, computed by reduction to
    /// Hessenberg form.
    pub fn charpoly(&self) -> Result<Poly> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "characteristic polynomial of a {}×{} matrix",
                self.rows, self.cols
            )));
        }
        Ok(with_arith!(self.field, ar => {
            let coeffs = charpoly_kernel(ar, ar.view(&self.data), self.rows);
            Poly::from_coeffs(self.field, coeffs.iter().map(|c| ar.to_scalar(c)).collect())
        }))
    }

    /// Irreducible factorization of the characteristic polynomial, as pairs
    /// `(monic irreducible factor, multiplicity)` sorted by degree and then
    /// coefficients.
    pub fn char_poly_factors(&self) -> Result<Vec<(Poly, usize)>> {
        Ok(self.charpoly()?.factor())
    }

    /// Evaluates the polynomial `f` at this square matrix (Horner's rule).
    pub fn eval_poly(&self, f: &Poly) -> Matrix {
        assert!(self.is_square(), "polynomial of a non-square matrix");
        let n = self.rows;
        let mut acc = Matrix::zeros(self.field, n, n);
        for c in f.coeffs().iter().rev() {
            acc = acc.mul(self).add(&Matrix::identity(self.field, n).scale(c));
        }
        acc
    }

    /// A uniformly random matrix over GF(p), or one with small integer
    /// entries in `[-3, 3]` over ℚ.
    pub fn random<R: Rng + ?Sized>(field: Field, rows: usize, cols: usize, rng: &mut R) -> Matrix {
        match field {
            Field::Rationals => {
                let v = (0..rows * cols).map(|_| Qq.from_i64(rng.gen_range(-3..=3))).collect();
                Matrix::from_data(field, rows, cols, Data::Rational(v))
            }
            Field::PrimeField { p } => {
                let v = (0..rows * cols).map(|_| rng.gen_range(0..p)).collect();
                Matrix::from_data(field, rows, cols, Data::Prime(v))
            }
        }
    }

    /// A random invertible `n × n` matrix (rejection sampling).
    pub fn random_invertible<R: Rng + ?Sized>(field: Field, n: usize, rng: &mut R) -> Matrix {
        loop {
            let m = Matrix::random(field, n, n, rng);
            if m.is_invertible() {
                return m;
            }
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}; {}×{}]", self.field, self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "\n  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

pub(crate) fn mul_kernel<A: Arith>(ar: &A, a: &[A::E], b: &[A::E], n: usize, k: usize, m: usize) -> Vec<A::E> {
    let mut out = vec![ar.zero(); n * m];
    for i in 0..n {
        for l in 0..k {
            let x = &a[i * k + l];
            if ar.is_zero(x) {
                continue;
            }
            let nx = ar.neg(x);
            let row = &b[l * m..(l + 1) * m];
            let o = &mut out[i * m..(i + 1) * m];
            for j in 0..m {
                if !ar.is_zero(&row[j]) {
                    o[j] = ar.mul_sub(&o[j], &nx, &row[j]);
                }
            }
        }
    }
    out
}

/// In-place Gauss–Jordan elimination; returns pivot columns.
pub(crate) fn rref_kernel<A: Arith>(ar: &A, v: &mut [A::E], rows: usize, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !ar.is_zero(&v[i * cols + c])) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                v.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = ar.inv(&v[r * cols + c]);
        for j in c..cols {
            v[r * cols + j] = ar.mul(&v[r * cols + j], &inv);
        }
        let (before, rest) = v.split_at_mut(r * cols);
        let (prow, after) = rest.split_at_mut(cols);
        let eliminate = |row: &mut [A::E]| {
            let f = row[c].clone();
            if ar.is_zero(&f) {
                return;
            }
            for j in c..cols {
                if !ar.is_zero(&prow[j]) {
                    row[j] = ar.mul_sub(&row[j], &f, &prow[j]);
                }
            }
        };
        for row in before.chunks_mut(cols) {
            eliminate(row);
        }
        for row in after.chunks_mut(cols) {
            eliminate(row);
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Fraction-free Gauss–Jordan elimination over ℚ.
///
/// Each row is first scaled to integers. The elimination then keeps every
/// entry integral: after processing pivot `k` every entry is a `(k+1)`-minor
/// of the integer matrix, and the division by the previous pivot is exact
/// (Bareiss). At the end each pivot row is divided by its pivot.
fn rref_rational(a: &[BigRational], rows: usize, cols: usize) -> (Data, Vec<usize>) {
    let mut m: Vec<BigInt> = Vec::with_capacity(rows * cols);
    for i in 0..rows {
        let row = &a[i * cols..(i + 1) * cols];
        let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        for q in row {
            m.push(q.numer() * (&l / q.denom()));
        }
    }
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !m[i * cols + c].is_zero()) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                m.swap(pr * cols + j, r * cols + j);
            }
        }
        let piv = m[r * cols + c].clone();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = m[i * cols + c].clone();
            for j in 0..cols {
                if j == c {
                    continue;
                }
                let val = &piv * &m[i * cols + j] - &f * &m[r * cols + j];
                m[i * cols + j] = val / &prev;
            }
            m[i * cols + c] = BigInt::zero();
        }
        // Earlier pivot entries equal `prev` and become `piv` in the update
        // above, so all pivots stay equal to the current leading minor.
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    let mut out = vec![BigRational::zero(); rows * cols];
    for (i, &pc) in pivots.iter().enumerate() {
        let d = m[i * cols + pc].clone();
        for j in 0..cols {
            if !m[i * cols + j].is_zero() {
                out[i * cols + j] = BigRational::new(m[i * cols + j].clone(), d.clone());
            }
        }
    }
    (Data::Rational(out), pivots)
}

pub(crate) fn nullspace_from_rref(rr: &Rref, cols: usize) -> Matrix {
    let field = rr.r.field();
    let mut is_piv = vec![false; cols];
    for &p in &rr.pivots {
        is_piv[p] = true;
    }
    let free: Vec<usize> = (0..cols).filter(|&c| !is_piv[c]).collect();
    with_arith!(field, ar => {
        let r = ar.view(rr.r.data());
        let mut v = vec![ar.zero(); cols * free.len()];
        for (k, &f) in free.iter().enumerate() {
            v[f * free.len() + k] = ar.one();
            for (row, &pc) in rr.pivots.iter().enumerate() {
                v[pc * free.len() + k] = ar.neg(&r[row * cols + f]);
            }
        }
        Matrix::from_data(field, cols, free.len(), ar.wrap(v))
    })
}

/// Characteristic polynomial via Hessenberg reduction; coefficients low to
/// high, monic of degree `n`.
pub(crate) fn charpoly_kernel<A: Arith>(ar: &A, a: &[A::E], n: usize) -> Vec<A::E> {
    let mut h = a.to_vec();
    let at = |i: usize, j: usize| i * n + j;
    // Reduce to upper Hessenberg form by similarity transformations.
    for k in 0..n.saturating_sub(2) {
        let Some(piv) = (k + 1..n).find(|&i| !ar.is_zero(&h[at(i, k)])) else {
            continue;
        };
        if piv != k + 1 {
            for j in 0..n {
                h.swap(at(piv, j), at(k + 1, j));
            }
            for i in 0..n {
                h.swap(at(i, piv), at(i, k + 1));
            }
        }
        let inv = ar.inv(&h[at(k + 1, k)]);
        for i in k + 2..n {
            let f = ar.mul(&h[at(i, k)], &inv);
            if ar.is_zero(&f) {
                continue;
            }
            for j in 0..n {
                let t = h[at(k + 1, j)].clone();
                h[at(i, j)] = ar.mul_sub(&h[at(i, j)], &f, &t);
            }
            for r in 0..n {
                let t = h[at(r, i)].clone();
                h[at(r, k + 1)] = ar.add(&h[at(r, k + 1)], &ar.mul(&f, &t));
            }
        }
    }
    // p_0 = 1; p_{m} = (x − h_{m-1,m-1}) p_{m-1} − Σ_{i<m-1} h_{i,m-1} (∏ subdiag) p_i
    let mut polys: Vec<Vec<A::E>> = vec![vec![ar.one()]];
    for m in 1..=n {
        let col = m - 1;
        let prev = &polys[m - 1];
        let mut p = vec![ar.zero(); m + 1];
        for (d, c) in prev.iter().enumerate() {
            p[d + 1] = ar.add(&p[d + 1], c);
            p[d] = ar.mul_sub(&p[d], &h[at(col, col)], c);
        }
        let mut t = ar.one();
        for i in (0..col).rev() {
            t = ar.mul(&t, &h[at(i + 1, i)]);
            if ar.is_zero(&t) {
                break;
            }
            let coef = ar.mul(&t, &h[at(i, col)]);
            for (d, c) in polys[i].iter().enumerate() {
                p[d] = ar.mul_sub(&p[d], &coef, c);
            }
        }
        polys.push(p);
    }
    polys.pop().unwrap()
}
