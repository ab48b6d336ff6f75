//! Short exact sequences `L ↪ M ↠ R` produced by the approximation
//! functors.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{GridMorphism, GridRep};

/// A short exact sequence `left ↪ mid ↠ right` with explicit maps.
#[derive(Clone, Debug)]
pub struct ApproximationSequence {
    /// The sub-object.
    pub left: Arc<GridRep>,
    /// The middle term.
    pub mid: Arc<GridRep>,
    /// The quotient.
    pub right: Arc<GridRep>,
    /// The monomorphism `left ↪ mid`.
    pub inj: GridMorphism,
    /// The epimorphism `mid ↠ right`.
    pub surj: GridMorphism,
}

/// Dimension grids of the three terms, for reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceDims {
    /// Dimension grid of the sub-object.
    pub left: Vec<Vec<usize>>,
    /// Dimension grid of the middle term.
    pub mid: Vec<Vec<usize>>,
    /// Dimension grid of the quotient.
    pub right: Vec<Vec<usize>>,
}

impl ApproximationSequence {
    /// Assembles a sequence from its two maps; the terms are read off the
    /// maps.
    pub fn new(inj: GridMorphism, surj: GridMorphism) -> ApproximationSequence {
        ApproximationSequence {
            left: inj.source().clone(),
            mid: inj.target().clone(),
            right: surj.target().clone(),
            inj,
            surj,
        }
    }

    /// Whether `inj` is mono, `surj` is epi and `im inj = ker surj` at every
    /// vertex (by rank arithmetic: the composite vanishes and the dimensions
    /// add up).
    pub fn is_exact(&self) -> bool {
        self.inj.target().dims() == self.surj.source().dims()
            && self.inj.is_mono()
            && self.surj.is_epi()
            && self.inj.then(&self.surj).is_zero()
            && self
                .mid
                .dims()
                .iter()
                .zip(self.left.dims().iter().zip(self.right.dims()))
                .all(|(m, (l, r))| *m == l + r)
    }

    /// Errors unless the sequence is exact.
    pub fn check(&self) -> Result<()> {
        self.inj.check()?;
        self.surj.check()?;
        if self.is_exact() {
            Ok(())
        } else {
            Err(Error::InvalidRep("sequence is not short exact".into()))
        }
    }

    /// The dual sequence `D right ↪ D mid ↠ D left`.
    pub fn dual(&self) -> ApproximationSequence {
        let dl = Arc::new(self.left.dual());
        let dm = Arc::new(self.mid.dual());
        let dr = Arc::new(self.right.dual());
        let inj = self.surj.dual(dm.clone(), dr);
        let surj = self.inj.dual(dl, dm);
        ApproximationSequence::new(inj, surj)
    }

    /// The same sequence on the transposed grid.
    pub fn transpose(&self) -> ApproximationSequence {
        let lt = Arc::new(self.left.transpose());
        let mt = Arc::new(self.mid.transpose());
        let rt = Arc::new(self.right.transpose());
        let inj = self.inj.transpose(lt, mt.clone());
        let surj = self.surj.transpose(mt, rt);
        ApproximationSequence::new(inj, surj)
    }

    /// Replaces the left term by an equal representation (used to restore
    /// the caller's handle after a round trip through duality).
    pub(crate) fn with_left(mut self, left: Arc<GridRep>) -> ApproximationSequence {
        debug_assert_eq!(left.as_ref(), self.left.as_ref());
        self.inj = self.inj.with_endpoints(left.clone(), self.mid.clone());
        self.left = left;
        self
    }

    /// Replaces the right term by an equal representation.
    pub(crate) fn with_right(mut self, right: Arc<GridRep>) -> ApproximationSequence {
        debug_assert_eq!(right.as_ref(), self.right.as_ref());
        self.surj = self.surj.with_endpoints(self.mid.clone(), right.clone());
        self.right = right;
        self
    }

    /// Dimension grids of the three terms.
    pub fn dims(&self) -> SequenceDims {
        SequenceDims { left: self.left.dim_grid(), mid: self.mid.dim_grid(), right: self.right.dim_grid() }
    }
}
