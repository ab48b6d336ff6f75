//! Minimal one-sided approximations by `add` of a finite list of
//! indecomposables.

use std::sync::Arc;

use crate::error::Result;
use crate::grid::{cokernel, direct_sum_or_zero, kernel, morphism_from_sum, GridMorphism, GridRep};
use crate::hom::{hom_basis, hom_dim};
use crate::linalg::Matrix;
use crate::torsion::ApproximationSequence;

/// A morphism `⊕ G_k → X` (right) or `X → ⊕ G_k` (left) with the summands
/// listed.
#[derive(Clone, Debug)]
pub struct Approximation {
    /// The approximating morphism.
    pub map: GridMorphism,
    /// Indices into the generator list of the summands of the sum.
    pub summands: Vec<usize>,
}

impl Approximation {
    /// `ker ↪ ⊕G ↠ X` for a surjective right approximation.
    pub fn kernel_sequence(&self) -> ApproximationSequence {
        let (_, incl) = kernel(&self.map);
        ApproximationSequence::new(incl, self.map.clone())
    }

    /// `X ↪ ⊕G ↠ coker` for an injective left approximation.
    pub fn cokernel_sequence(&self) -> ApproximationSequence {
        let (_, proj) = cokernel(&self.map);
        ApproximationSequence::new(self.map.clone(), proj)
    }

    /// Whether every morphism from a generator to the target factors
    /// through this (right) approximation.
    pub fn is_right_approximation(&self, gens: &[Arc<GridRep>]) -> Result<bool> {
        let x = self.map.target();
        for g in gens {
            let need = hom_dim(g, x)?;
            if need == 0 {
                continue;
            }
            let mut span: Option<Matrix> = None;
            for u in hom_basis(g, self.map.source())? {
                let v = u.then(&self.map).to_vector();
                span = Some(match span {
                    None => v,
                    Some(s) => s.hstack(&v),
                });
            }
            if span.map_or(0, |s| s.rank()) != need {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Whether the chosen maps `maps[k] : gens[part[k]] → X` (for active `k`)
/// still let every morphism from a generator factor: for each generator
/// `g`, the composites `g → gens[part[k]] → X` span `Hom(g, X)`.
fn still_approximates(
    gens: &[Arc<GridRep>],
    inner: &[Vec<Vec<GridMorphism>>],
    part: &[usize],
    maps: &[GridMorphism],
    active: &[bool],
    need: &[usize],
) -> bool {
    for (gi, &n) in need.iter().enumerate() {
        if n == 0 {
            continue;
        }
        let mut span: Option<Matrix> = None;
        for k in (0..part.len()).filter(|&k| active[k]) {
            for u in &inner[gi][part[k]] {
                let v = u.then(&maps[k]).to_vector();
                span = Some(match span {
                    None => v,
                    Some(s) => s.hstack(&v),
                });
            }
        }
        if span.map_or(0, |s| s.rank()) != n {
            return false;
        }
    }
    let _ = gens;
    true
}

/// The minimal right `add(gens)`-approximation of `x`: start from the
/// evaluation map `⊕_{g, h ∈ basis Hom(g, X)} g → X` and drop summands one at
/// a time while every morphism from a generator still factors. By the
/// exchange property, a summand of the source lying in the kernel can
/// always be removed as a single coordinate summand, so the result is
/// right minimal.
pub fn right_approximation(x: &Arc<GridRep>, gens: &[Arc<GridRep>]) -> Result<Approximation> {
    let mut part = Vec::new();
    let mut maps = Vec::new();
    let mut need = Vec::with_capacity(gens.len());
    for (gi, g) in gens.iter().enumerate() {
        let basis = hom_basis(g, x)?;
        need.push(basis.len());
        for h in basis {
            part.push(gi);
            maps.push(h);
        }
    }
    let inner: Vec<Vec<Vec<GridMorphism>>> =
        gens.iter().map(|a| gens.iter().map(|b| hom_basis(a, b)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
    let mut active = vec![true; part.len()];
    for k in (0..part.len()).rev() {
        active[k] = false;
        if !still_approximates(gens, &inner, &part, &maps, &active, &need) {
            active[k] = true;
        }
    }
    let keep: Vec<usize> = (0..part.len()).filter(|&k| active[k]).collect();
    let parts: Vec<Arc<GridRep>> = keep.iter().map(|&k| gens[part[k]].clone()).collect();
    let sum = direct_sum_or_zero(&parts, x.field(), x.shape());
    let fs: Vec<GridMorphism> = keep.iter().map(|&k| maps[k].clone()).collect();
    let map = morphism_from_sum(&sum, &fs, x.clone());
    Ok(Approximation { map, summands: keep.iter().map(|&k| part[k]).collect() })
}

/// The minimal left `add(gens)`-approximation `X → ⊕G`, dual to
/// [`right_approximation`].
pub fn left_approximation(x: &Arc<GridRep>, gens: &[Arc<GridRep>]) -> Result<Approximation> {
    let dx = Arc::new(x.dual());
    let dgens: Vec<Arc<GridRep>> = gens.iter().map(|g| Arc::new(g.dual())).collect();
    let ap = right_approximation(&dx, &dgens)?;
    let src = Arc::new(ap.map.source().dual());
    let map = ap.map.dual(src, x.clone());
    Ok(Approximation { map, summands: ap.summands })
}
