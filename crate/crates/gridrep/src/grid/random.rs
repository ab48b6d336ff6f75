//! Seeded random representations, optionally with epimorphic horizontal
//! and/or monomorphic vertical structure maps.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::linalg::{Field, Matrix};

use super::rep::GridRep;
use super::shape::{Arrow, Direction, GridShape};

/// Structural constraint imposed on a random representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RandomConstraint {
    /// No constraint beyond commutativity.
    None,
    /// Every horizontal map is an epimorphism.
    EpiHorizontal,
    /// Every vertical map is a monomorphism.
    MonoVertical,
    /// Horizontal maps epi and vertical maps mono.
    Both,
}

/// A random valid representation with all vertex dimensions at most
/// `dim_bound`, deterministic in `seed`.
pub fn random_rep(
    shape: GridShape,
    dim_bound: usize,
    constraint: RandomConstraint,
    field: Field,
    seed: u64,
) -> GridRep {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_rep_with(shape, dim_bound, constraint, field, &mut rng)
}

/// As [`random_rep`], drawing randomness from `rng`.
pub fn random_rep_with<R: Rng + ?Sized>(
    shape: GridShape,
    dim_bound: usize,
    constraint: RandomConstraint,
    field: Field,
    rng: &mut R,
) -> GridRep {
    let raw = match constraint {
        RandomConstraint::None => by_columns(shape, dim_bound, false, field, rng),
        RandomConstraint::EpiHorizontal => by_columns(shape, dim_bound, true, field, rng),
        RandomConstraint::MonoVertical => {
            by_columns(shape.transposed(), dim_bound, true, field, rng).dual().transpose()
        }
        RandomConstraint::Both => by_rows(shape, dim_bound, field, rng),
    };
    scramble(&raw, rng)
}

/// A random `rows × cols` matrix of full row rank (`rows ≤ cols`): a
/// coordinate projection composed with a random invertible matrix.
pub fn random_full_row_rank<R: Rng + ?Sized>(field: Field, rows: usize, cols: usize, rng: &mut R) -> Matrix {
    assert!(rows <= cols);
    let mut proj = Matrix::zeros(field, rows, cols);
    proj.set_block(0, 0, &Matrix::identity(field, rows));
    proj.mul(&Matrix::random_invertible(field, cols, rng))
}

/// Conjugates every vertex space by a random invertible matrix.
fn scramble<R: Rng + ?Sized>(x: &GridRep, rng: &mut R) -> GridRep {
    let g: Vec<Matrix> = x.dims().iter().map(|&d| Matrix::random_invertible(x.field(), d, rng)).collect();
    x.change_basis(&g).expect("invertible basis changes")
}

/// Builds columns right to left. Column `i` is `U ⊕ K` where `U` is a
/// subrepresentation of column `i + 1` (all of it when `epi`) and the
/// horizontal map is the projection onto `U` followed by its inclusion.
fn by_columns<R: Rng + ?Sized>(shape: GridShape, bound: usize, epi: bool, field: Field, rng: &mut R) -> GridRep {
    let (m, n) = (shape.m, shape.n);
    // dims[i][j], hmaps[i][j]: column i+1 → column i+2, vmaps[i][j]: (i, j) → (i, j+1); 0-based.
    let mut dims = vec![vec![0usize; n]; m];
    let mut vmaps: Vec<Vec<Matrix>> = vec![Vec::new(); m];
    let mut hmaps: Vec<Vec<Matrix>> = vec![Vec::new(); m];
    for j in 0..n {
        dims[m - 1][j] = rng.gen_range(0..=bound);
    }
    for j in 0..n.saturating_sub(1) {
        vmaps[m - 1].push(Matrix::random(field, dims[m - 1][j + 1], dims[m - 1][j], rng));
    }
    for i in (0..m - 1).rev() {
        // A random subrepresentation U of column i+1, built top-down.
        let next = i + 1;
        let mut u: Vec<Matrix> = Vec::with_capacity(n);
        for j in 0..n {
            let d = dims[next][j];
            let forced = if j == 0 {
                Matrix::zeros(field, d, 0)
            } else {
                vmaps[next][j - 1].mul(&u[j - 1])
            };
            let basis = if epi {
                Matrix::identity(field, d)
            } else {
                let extra = rng.gen_range(0..=d);
                forced.hstack(&Matrix::random(field, d, extra, rng)).column_basis()
            };
            u.push(basis);
        }
        let ks: Vec<usize> = (0..n).map(|j| rng.gen_range(0..=bound - u[j].cols())).collect();
        for j in 0..n {
            dims[i][j] = u[j].cols() + ks[j];
            let mut h = Matrix::zeros(field, dims[next][j], dims[i][j]);
            h.set_block(0, 0, &u[j]);
            hmaps[i].push(h);
        }
        for j in 0..n.saturating_sub(1) {
            let (uj, uj1) = (u[j].cols(), u[j + 1].cols());
            let restricted = u[j + 1]
                .left_inverse()
                .expect("independent basis")
                .mul(&vmaps[next][j])
                .mul(&u[j]);
            let mut v = Matrix::zeros(field, dims[i][j + 1], dims[i][j]);
            v.set_block(0, 0, &restricted);
            v.set_block(uj1, 0, &Matrix::random(field, ks[j + 1], uj, rng));
            v.set_block(uj1, uj, &Matrix::random(field, ks[j + 1], ks[j], rng));
            vmaps[i].push(v);
        }
    }
    GridRep::build(
        field,
        shape,
        |(i, j)| dims[i - 1][j - 1],
        |a: Arrow| {
            let (i, j) = a.source;
            match a.dir {
                Direction::Horizontal => hmaps[i - 1][j - 1].clone(),
                Direction::Vertical => vmaps[i - 1][j - 1].clone(),
            }
        },
    )
}

/// Builds rows top to bottom with epimorphic horizontal and monomorphic
/// vertical maps: row `j + 1` is row `j` plus a new epimorphic row `C`,
/// with the vertical maps the inclusions.
fn by_rows<R: Rng + ?Sized>(shape: GridShape, bound: usize, field: Field, rng: &mut R) -> GridRep {
    let (m, n) = (shape.m, shape.n);
    let mut dims = vec![vec![0usize; m]; n];
    let mut hmaps: Vec<Vec<Matrix>> = vec![Vec::new(); n];
    let mut vmaps: Vec<Vec<Matrix>> = vec![Vec::new(); n];
    for j in 0..n {
        // New row C with c_0 ≥ c_1 ≥ … and dims kept within the bound.
        let prev: Vec<usize> = if j == 0 { vec![0; m] } else { dims[j - 1].clone() };
        let mut c = vec![0usize; m];
        for i in 0..m {
            let cap = bound - prev[i];
            let cap = if i == 0 { cap } else { cap.min(c[i - 1]) };
            c[i] = rng.gen_range(0..=cap);
        }
        for i in 0..m {
            dims[j][i] = prev[i] + c[i];
        }
        for i in 0..m - 1 {
            let mut h = Matrix::zeros(field, dims[j][i + 1], dims[j][i]);
            if j > 0 {
                h.set_block(0, 0, &hmaps[j - 1][i]);
                h.set_block(0, prev[i], &Matrix::random(field, prev[i + 1], c[i], rng));
            }
            h.set_block(prev[i + 1], prev[i], &random_full_row_rank(field, c[i + 1], c[i], rng));
            hmaps[j].push(h);
        }
        if j > 0 {
            for i in 0..m {
                let mut v = Matrix::zeros(field, dims[j][i], prev[i]);
                v.set_block(0, 0, &Matrix::identity(field, prev[i]));
                vmaps[j - 1].push(v);
            }
        }
    }
    GridRep::build(
        field,
        shape,
        |(i, j)| dims[j - 1][i - 1],
        |a: Arrow| {
            let (i, j) = a.source;
            match a.dir {
                Direction::Horizontal => hmaps[j - 1][i - 1].clone(),
                Direction::Vertical => vmaps[j - 1][i - 1].clone(),
            }
        },
    )
}
