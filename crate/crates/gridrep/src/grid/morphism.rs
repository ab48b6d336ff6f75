//! Morphisms of grid representations.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};

use super::rep::GridRep;
use super::shape::Vertex;

/// A morphism `source → target` of grid representations: one matrix per
/// vertex, of size `target.dim(v) × source.dim(v)`, intertwining every
/// structure map.
///
/// Source and target are shared through [`Arc`] so that the many morphisms
/// produced by Hom-space computations do not copy their endpoints.
#[derive(Clone, PartialEq, Eq)]
pub struct GridMorphism {
    source: Arc<GridRep>,
    target: Arc<GridRep>,
    comps: Vec<Matrix>,
}

impl GridMorphism {
    /// Assembles a morphism without checking it.
    pub fn from_parts_unchecked(source: Arc<GridRep>, target: Arc<GridRep>, comps: Vec<Matrix>) -> GridMorphism {
        GridMorphism { source, target, comps }
    }

    /// Assembles a morphism and checks sizes and the intertwining relations.
    pub fn new(source: Arc<GridRep>, target: Arc<GridRep>, comps: Vec<Matrix>) -> Result<GridMorphism> {
        let f = GridMorphism::from_parts_unchecked(source, target, comps);
        f.check()?;
        Ok(f)
    }

    /// Builds a morphism from a per-vertex function (debug-checked).
    pub(crate) fn build(
        source: Arc<GridRep>,
        target: Arc<GridRep>,
        comp: impl FnMut(Vertex) -> Matrix,
    ) -> GridMorphism {
        let shape = source.shape();
        let comps = shape.vertices().map(comp).collect();
        let f = GridMorphism { source, target, comps };
        debug_assert!(f.check().is_ok(), "constructed an invalid morphism: {:?}", f.check());
        f
    }

    /// The identity of `x`.
    pub fn identity(x: Arc<GridRep>) -> GridMorphism {
        let field = x.field();
        GridMorphism::build(x.clone(), x.clone(), |v| Matrix::identity(field, x.dim(v)))
    }

    /// The zero morphism.
    pub fn zero(source: Arc<GridRep>, target: Arc<GridRep>) -> GridMorphism {
        let field = source.field();
        GridMorphism::build(source.clone(), target.clone(), |v| {
            Matrix::zeros(field, target.dim(v), source.dim(v))
        })
    }

    /// The source representation.
    pub fn source(&self) -> &Arc<GridRep> {
        &self.source
    }

    /// The target representation.
    pub fn target(&self) -> &Arc<GridRep> {
        &self.target
    }

    /// The component at a vertex.
    pub fn comp(&self, v: Vertex) -> &Matrix {
        &self.comps[self.source.shape().index(v)]
    }

    /// All components, indexed by vertex index.
    pub fn comps(&self) -> &[Matrix] {
        &self.comps
    }

    /// Checks sizes and the intertwining relations `Y_a f_u = f_w X_a`.
    pub fn check(&self) -> Result<()> {
        self.source.check_compatible(&self.target)?;
        let s = self.source.shape();
        if self.comps.len() != s.num_vertices() {
            return Err(Error::DimensionMismatch("one component per vertex required".into()));
        }
        for v in s.vertices() {
            let c = self.comp(v);
            if c.field() != self.source.field() || c.rows() != self.target.dim(v) || c.cols() != self.source.dim(v) {
                return Err(Error::DimensionMismatch(format!(
                    "component at ({}, {}) has size {}×{}, expected {}×{}",
                    v.0,
                    v.1,
                    c.rows(),
                    c.cols(),
                    self.target.dim(v),
                    self.source.dim(v)
                )));
            }
        }
        for a in s.arrows() {
            let lhs = self.target.map(a).mul(self.comp(a.source));
            let rhs = self.comp(a.target()).mul(self.source.map(a));
            if lhs != rhs {
                return Err(Error::InvalidRep(format!(
                    "morphism does not commute with the {:?} arrow at ({}, {})",
                    a.dir, a.source.0, a.source.1
                )));
            }
        }
        Ok(())
    }

    /// Composition `other ∘ self` (first `self`, then `other`).
    pub fn then(&self, other: &GridMorphism) -> GridMorphism {
        assert_eq!(self.target.dims(), other.source.dims(), "composing non-composable morphisms");
        let comps = self.comps.iter().zip(&other.comps).map(|(f, g)| g.mul(f)).collect();
        GridMorphism { source: self.source.clone(), target: other.target.clone(), comps }
    }

    /// Sum of two parallel morphisms.
    pub fn add(&self, other: &GridMorphism) -> GridMorphism {
        let comps = self.comps.iter().zip(&other.comps).map(|(f, g)| f.add(g)).collect();
        GridMorphism { source: self.source.clone(), target: self.target.clone(), comps }
    }

    /// Difference of two parallel morphisms.
    pub fn sub(&self, other: &GridMorphism) -> GridMorphism {
        let comps = self.comps.iter().zip(&other.comps).map(|(f, g)| f.sub(g)).collect();
        GridMorphism { source: self.source.clone(), target: self.target.clone(), comps }
    }

    /// Scalar multiple.
    pub fn scale(&self, s: &Scalar) -> GridMorphism {
        let comps = self.comps.iter().map(|f| f.scale(s)).collect();
        GridMorphism { source: self.source.clone(), target: self.target.clone(), comps }
    }

    /// Linear combination `Σ c_k f_k` of parallel morphisms (at least one).
    pub fn combination(fs: &[GridMorphism], cs: &[Scalar]) -> GridMorphism {
        assert!(!fs.is_empty() && fs.len() == cs.len());
        let mut acc = fs[0].scale(&cs[0]);
        for (f, c) in fs.iter().zip(cs).skip(1) {
            if !c.is_zero() {
                acc = acc.add(&f.scale(c));
            }
        }
        acc
    }

    /// The same components with new (equal-dimensional) endpoints.
    pub fn with_endpoints(&self, source: Arc<GridRep>, target: Arc<GridRep>) -> GridMorphism {
        GridMorphism { source, target, comps: self.comps.clone() }
    }

    /// All components stacked into one column vector (row-major within each
    /// component, vertices in index order); the coordinates of the morphism
    /// in `⊕_v Hom(X_v, Y_v)`.
    pub fn to_vector(&self) -> Matrix {
        let field = self.source.field();
        let len: usize = self.comps.iter().map(|c| c.rows() * c.cols()).sum();
        let mut entries = Vec::with_capacity(len);
        for c in &self.comps {
            for r in 0..c.rows() {
                for k in 0..c.cols() {
                    entries.push(c.get(r, k));
                }
            }
        }
        Matrix::from_fn(field, len, 1, |r, _| entries[r].clone())
    }

    /// Whether every component vanishes.
    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    /// Whether every component is injective.
    pub fn is_mono(&self) -> bool {
        self.comps.iter().all(|c| c.rank() == c.cols())
    }

    /// Whether every component is surjective.
    pub fn is_epi(&self) -> bool {
        self.comps.iter().all(|c| c.rank() == c.rows())
    }

    /// Whether every component is invertible.
    pub fn is_iso(&self) -> bool {
        self.comps.iter().all(|c| c.rows() == c.cols() && c.rank() == c.rows())
    }

    /// The inverse of an isomorphism.
    pub fn inverse(&self) -> Option<GridMorphism> {
        let comps: Option<Vec<Matrix>> = self.comps.iter().map(|c| c.inverse()).collect();
        Some(GridMorphism { source: self.target.clone(), target: self.source.clone(), comps: comps? })
    }

    /// Total rank `Σ_v rank f_v`, the dimension of the image.
    pub fn rank(&self) -> usize {
        self.comps.iter().map(|c| c.rank()).sum()
    }

    /// The dual morphism `D f : D target → D source` (see [`GridRep::dual`]).
    pub fn dual(&self, dual_source: Arc<GridRep>, dual_target: Arc<GridRep>) -> GridMorphism {
        let s = self.source.shape();
        GridMorphism::build(dual_target, dual_source, |v| self.comp(s.opposite(v)).transpose())
    }

    /// The same morphism viewed on the transposed grid (see [`GridRep::transpose`]).
    pub fn transpose(&self, source_t: Arc<GridRep>, target_t: Arc<GridRep>) -> GridMorphism {
        GridMorphism::build(source_t, target_t, |(i, j)| self.comp((j, i)).clone())
    }
}

impl fmt::Debug for GridMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GridMorphism[{:?} → {:?}]", self.source, self.target)
    }
}
