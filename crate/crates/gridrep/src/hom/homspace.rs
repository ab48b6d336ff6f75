//! Hom spaces and isomorphism search.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::grid::{GridMorphism, GridRep};
use crate::linalg::{with_arith, Arith, Field, Fp, Matrix, Qq, Scalar, Storage};

/// The linear system whose solutions are the morphisms `X → Y`.
///
/// Unknowns are the entries of all components `f_v` (row-major, vertices
/// in index order); for every arrow `a : u → w` the equations
/// `Y_a f_u − f_w X_a = 0` are stacked into one matrix.
struct HomSystem {
    matrix: Matrix,
    offsets: Vec<usize>,
}

fn hom_system(x: &GridRep, y: &GridRep) -> HomSystem {
    let shape = x.shape();
    let field = x.field();
    let mut offsets = Vec::with_capacity(shape.num_vertices() + 1);
    let mut total = 0;
    for v in shape.vertices() {
        offsets.push(total);
        total += y.dim(v) * x.dim(v);
    }
    offsets.push(total);
    let rows: usize = shape.arrows().map(|a| y.dim(a.target()) * x.dim(a.source)).sum();
    let matrix = with_arith!(field, ar => {
        let mut data = vec![ar.zero(); rows * total];
        let mut row0 = 0;
        for a in shape.arrows() {
            let (u, w) = (a.source, a.target());
            let (xu, xw, yu, yw) = (x.dim(u), x.dim(w), y.dim(u), y.dim(w));
            let ya = ar.view(y.map(a).data());
            let xa = ar.view(x.map(a).data());
            let (ou, ow) = (offsets[shape.index(u)], offsets[shape.index(w)]);
            // Equation (r, c), r < yw, c < xu.
            for r in 0..yw {
                for c in 0..xu {
                    let row = (row0 + r * xu + c) * total;
                    // (Y_a f_u)[r][c] = Σ_k Y_a[r][k] f_u[k][c]
                    for k in 0..yu {
                        let coef = &ya[r * yu + k];
                        if !ar.is_zero(coef) {
                            let col = ou + k * xu + c;
                            data[row + col] = ar.add(&data[row + col], coef);
                        }
                    }
                    // −(f_w X_a)[r][c] = −Σ_k f_w[r][k] X_a[k][c]
                    for k in 0..xw {
                        let coef = &xa[k * xu + c];
                        if !ar.is_zero(coef) {
                            let col = ow + r * xw + k;
                            data[row + col] = ar.sub(&data[row + col], coef);
                        }
                    }
                }
            }
            row0 += yw * xu;
        }
        Matrix::from_data(field, rows, total, ar.wrap(data))
    });
    HomSystem { matrix, offsets }
}

/// A basis of `Hom(X, Y)`, computed as the null space of all intertwining
/// equations at once.
pub fn hom_basis(x: &Arc<GridRep>, y: &Arc<GridRep>) -> Result<Vec<GridMorphism>> {
    x.check_compatible(y)?;
    let sys = hom_system(x, y);
    let null = sys.matrix.nullspace();
    let shape = x.shape();
    let mut out = Vec::with_capacity(null.cols());
    for k in 0..null.cols() {
        let col = null.column(k);
        let comps = shape
            .vertices()
            .map(|v| {
                let i = shape.index(v);
                let (r, c) = (y.dim(v), x.dim(v));
                let off = sys.offsets[i];
                Matrix::from_fn(x.field(), r, c, |a, b| col.get(off + a * c + b, 0))
            })
            .collect();
        out.push(GridMorphism::from_parts_unchecked(x.clone(), y.clone(), comps));
    }
    Ok(out)
}

/// `dim Hom(X, Y)` from the rank of the global intertwining system.
pub fn hom_dim(x: &GridRep, y: &GridRep) -> Result<usize> {
    x.check_compatible(y)?;
    let sys = hom_system(x, y);
    Ok(sys.matrix.cols() - sys.matrix.rank())
}

/// Outcome of an isomorphism search.
#[derive(Clone, Debug)]
pub enum IsoOutcome {
    /// An explicit isomorphism `X → Y`.
    Isomorphic(GridMorphism),
    /// Certainly not isomorphic: dimension vectors or Hom dimensions differ.
    NotIsomorphic,
    /// No isomorphism was found among `trials` random elements of
    /// `Hom(X, Y)`, although all cheap invariants agree. This verdict is
    /// probabilistic.
    NoIsoFound {
        /// Number of random elements tried.
        trials: usize,
    },
}

impl IsoOutcome {
    /// The isomorphism, if one was found.
    pub fn iso(&self) -> Option<&GridMorphism> {
        match self {
            IsoOutcome::Isomorphic(f) => Some(f),
            _ => None,
        }
    }

    /// Whether an isomorphism was found.
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoOutcome::Isomorphic(_))
    }
}

/// Verdict of [`IsoOutcome`] without the morphism, for reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum IsoVerdict {
    /// Isomorphic, with an explicit witness.
    Isomorphic,
    /// Certainly not isomorphic.
    NotIsomorphic,
    /// Probably not isomorphic (randomized search failed).
    ProbablyNotIsomorphic,
}

impl From<&IsoOutcome> for IsoVerdict {
    fn from(o: &IsoOutcome) -> IsoVerdict {
        match o {
            IsoOutcome::Isomorphic(_) => IsoVerdict::Isomorphic,
            IsoOutcome::NotIsomorphic => IsoVerdict::NotIsomorphic,
            IsoOutcome::NoIsoFound { .. } => IsoVerdict::ProbablyNotIsomorphic,
        }
    }
}

/// Number of random elements of `Hom(X, Y)` tried before giving up.
pub const ISO_TRIALS: usize = 50;

/// Searches for an isomorphism `X → Y`.
///
/// Non-isomorphism is certified exactly when dimension vectors differ or
/// when `dim Hom(X, Y)`, `dim Hom(Y, X)`, `dim End X`, `dim End Y` are not
/// all equal. Otherwise up to [`ISO_TRIALS`] random linear combinations of
/// a basis of `Hom(X, Y)` are tested for invertibility at every vertex
/// (over ℚ, with integer coefficients in `[-50, 50]`, i.e. the determinant
/// of a generic combination is tested for non-vanishing at random integer
/// points). The search is deterministic in `seed`.
pub fn is_isomorphic(x: &Arc<GridRep>, y: &Arc<GridRep>, seed: u64) -> Result<IsoOutcome> {
    x.check_compatible(y)?;
    if x.dims() != y.dims() {
        return Ok(IsoOutcome::NotIsomorphic);
    }
    if x == y {
        return Ok(IsoOutcome::Isomorphic(GridMorphism::identity(x.clone())));
    }
    let basis = hom_basis(x, y)?;
    let dxy = basis.len();
    if dxy != hom_dim(y, x)? || dxy != hom_dim(x, x)? || dxy != hom_dim(y, y)? {
        return Ok(IsoOutcome::NotIsomorphic);
    }
    if x.is_zero() {
        return Ok(IsoOutcome::Isomorphic(GridMorphism::zero(x.clone(), y.clone())));
    }
    if basis.is_empty() {
        return Ok(IsoOutcome::NotIsomorphic);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if let Some(b) = basis.iter().find(|b| b.is_iso()) {
        return Ok(IsoOutcome::Isomorphic(b.clone()));
    }
    for _ in 0..ISO_TRIALS {
        let cs: Vec<Scalar> = (0..basis.len()).map(|_| Scalar::random(x.field(), &mut rng)).collect();
        let f = GridMorphism::combination(&basis, &cs);
        if f.is_iso() {
            return Ok(IsoOutcome::Isomorphic(f));
        }
    }
    Ok(IsoOutcome::NoIsoFound { trials: ISO_TRIALS })
}

/// A random element of `Hom(X, Y)` given a basis (zero if the basis is empty).
pub(crate) fn random_combination<R: rand::Rng + ?Sized>(
    basis: &[GridMorphism],
    x: &Arc<GridRep>,
    y: &Arc<GridRep>,
    rng: &mut R,
) -> GridMorphism {
    if basis.is_empty() {
        return GridMorphism::zero(x.clone(), y.clone());
    }
    let field: Field = x.field();
    let cs: Vec<Scalar> = (0..basis.len()).map(|_| Scalar::random(field, rng)).collect();
    GridMorphism::combination(basis, &cs)
}
