//! Auslander–Reiten knitting: enumerate the indecomposables of a
//! representation-finite grid by applying `τ⁻` to the projectives until the
//! orbits close, then recover the irreducible maps as `rad / rad²`.
//!
//! The knitting runs from the projectives with `τ⁻`; the mirror convention
//! (from the injectives with `τ`) gives the same quiver. The frontier of
//! each round is translated in parallel and registered serially, and the
//! final vertex list is sorted by total dimension and dimension grid, so
//! the output is deterministic.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::decomposition::local_radical;
use crate::error::{Error, Result};
use crate::grid::{projective, GridMorphism, GridRep, GridShape};
use crate::hom::{ext_dim, hom_basis, is_isomorphic, tau_inv, IsoOutcome};
use crate::linalg::{Field, Matrix};
use crate::torsion::{universal_extension, Class};

/// Default bound on the number of `τ⁻` steps.
pub const DEFAULT_CAP: usize = 500;

/// Outcome of a knitting run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum KnitStatus {
    /// Every `τ⁻`-orbit reached an injective: the vertex list is the full
    /// set of indecomposables up to isomorphism.
    Complete,
    /// The step bound was reached with orbits still open (the grid has
    /// infinitely many indecomposables, or the cap is too small).
    CapExceeded {
        /// Number of `τ⁻` steps performed.
        step: usize,
    },
}

/// One vertex of the AR quiver.
#[derive(Clone, Debug)]
pub struct ArVertex {
    /// A representative indecomposable.
    pub rep: Arc<GridRep>,
    /// Its dimension grid.
    pub dims: Vec<Vec<usize>>,
    /// Whether it is a standard projective.
    pub projective: bool,
    /// Whether it is injective (`τ⁻` vanishes). Only meaningful for
    /// vertices whose orbit was advanced before the run stopped.
    pub injective: bool,
}

/// The knitted Auslander–Reiten quiver.
#[derive(Clone, Debug)]
pub struct ARQuiver {
    /// The grid.
    pub shape: GridShape,
    /// The field.
    pub field: Field,
    /// Pairwise non-isomorphic indecomposables, sorted by total dimension
    /// and dimension grid.
    pub vertices: Vec<ArVertex>,
    /// Irreducible maps `(source, target)` with repetition for
    /// multiplicity. Empty unless the run is complete.
    pub arrows: Vec<(usize, usize)>,
    /// Pairs `(Z, τZ)` for every non-projective vertex `Z` found.
    pub tau_pairs: Vec<(usize, usize)>,
    /// Whether the run closed.
    pub status: KnitStatus,
}

/// The answer of [`indec_count`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum IndecCount {
    /// Finitely many indecomposables, all enumerated.
    Finite(usize),
    /// The cap was reached.
    Unbounded(usize),
}

/// The almost split sequence check at one non-projective vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MeshCheck {
    /// The vertex `Z`.
    pub vertex: usize,
    /// The vertex `τZ`.
    pub tau_vertex: usize,
    /// `dim Ext¹(Z, τZ)`; positive means the sequence is non-split.
    pub ext_dim: usize,
    /// The constructed sequence `τZ ↪ E ↠ Z` is exact.
    pub exact: bool,
    /// The dimension grid of `E` equals the sum over the arrows into `Z`.
    pub middle_matches_arrows_in: bool,
    /// The arrows out of `τZ` and into `Z` have the same sources/targets
    /// with multiplicities.
    pub mesh_balanced: bool,
}

impl MeshCheck {
    /// Whether every part of the check holds.
    pub fn passed(&self) -> bool {
        self.ext_dim > 0 && self.exact && self.middle_matches_arrows_in && self.mesh_balanced
    }
}

fn canonical_key(x: &GridRep) -> (usize, Vec<Vec<usize>>) {
    (x.total_dim(), x.dim_grid())
}

/// A registry of pairwise non-isomorphic representations, indexed by
/// dimension vector.
struct Registry {
    reps: Vec<Arc<GridRep>>,
    by_dims: HashMap<Vec<usize>, Vec<usize>>,
}

impl Registry {
    fn find_or_insert(&mut self, x: Arc<GridRep>) -> Result<(usize, bool)> {
        let candidates = self.by_dims.entry(x.dims().to_vec()).or_default();
        for &k in candidates.iter() {
            if let IsoOutcome::Isomorphic(_) = is_isomorphic(&self.reps[k], &x, k as u64)? {
                return Ok((k, false));
            }
        }
        let k = self.reps.len();
        candidates.push(k);
        self.reps.push(x);
        Ok((k, true))
    }
}

/// Knits the AR quiver of the `shape` grid over `field`, with at most
/// `cap` applications of `τ⁻`.
pub fn knit(shape: GridShape, field: Field, cap: usize) -> Result<ARQuiver> {
    if cap == 0 {
        return Err(Error::Precondition("knitting cap must be at least 1".into()));
    }
    let mut reg = Registry { reps: Vec::new(), by_dims: HashMap::new() };
    for v in shape.vertices() {
        reg.find_or_insert(Arc::new(projective(shape, v, field)))?;
    }
    let num_projectives = reg.reps.len();
    let mut injective = vec![false; num_projectives];
    let mut tau_pairs = Vec::new();
    let mut frontier: Vec<usize> = (0..num_projectives).collect();
    let mut steps = 0;
    let mut status = KnitStatus::Complete;
    while !frontier.is_empty() {
        if steps >= cap {
            status = KnitStatus::CapExceeded { step: steps };
            break;
        }
        let take = frontier.len().min(cap - steps);
        let batch: Vec<usize> = frontier.drain(..take).collect();
        let images: Vec<GridRep> = batch.par_iter().map(|&k| tau_inv(&reg.reps[k])).collect();
        for (k, y) in batch.into_iter().zip(images) {
            steps += 1;
            if y.is_zero() {
                injective[k] = true;
                continue;
            }
            let (idx, new) = reg.find_or_insert(Arc::new(y))?;
            if new {
                injective.push(false);
                frontier.push(idx);
            }
            tau_pairs.push((idx, k));
        }
    }
    // Canonical order.
    let n = reg.reps.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&k| (canonical_key(&reg.reps[k]), k));
    let mut position = vec![0; n];
    for (new, &old) in order.iter().enumerate() {
        position[old] = new;
    }
    let vertices: Vec<ArVertex> = order
        .iter()
        .map(|&k| ArVertex {
            rep: reg.reps[k].clone(),
            dims: reg.reps[k].dim_grid(),
            projective: k < num_projectives,
            injective: injective[k],
        })
        .collect();
    let mut tau_pairs: Vec<(usize, usize)> =
        tau_pairs.into_iter().map(|(z, t)| (position[z], position[t])).collect();
    tau_pairs.sort_unstable();
    let mut ar = ARQuiver { shape, field, vertices, arrows: Vec::new(), tau_pairs, status };
    if status == KnitStatus::Complete {
        ar.arrows = irreducible_maps(&ar)?;
    }
    Ok(ar)
}

/// Counts the indecomposables of the grid, or reports that the cap was hit.
pub fn indec_count(shape: GridShape, field: Field, cap: usize) -> Result<IndecCount> {
    let ar = knit(shape, field, cap)?;
    Ok(match ar.status {
        KnitStatus::Complete => IndecCount::Finite(ar.vertices.len()),
        KnitStatus::CapExceeded { .. } => IndecCount::Unbounded(cap),
    })
}

/// Bases of the radical morphisms between every ordered pair of vertices.
fn radical_bases(ar: &ARQuiver) -> Result<Vec<Vec<Vec<GridMorphism>>>> {
    let n = ar.vertices.len();
    let rows: Vec<Result<Vec<Vec<GridMorphism>>>> = (0..n)
        .into_par_iter()
        .map(|a| {
            (0..n)
                .map(|b| {
                    let basis = hom_basis(&ar.vertices[a].rep, &ar.vertices[b].rep)?;
                    if a != b {
                        return Ok(basis);
                    }
                    local_radical(&ar.vertices[a].rep, &basis).ok_or_else(|| {
                        Error::Precondition(format!("vertex {a} does not have a local endomorphism ring"))
                    })
                })
                .collect()
        })
        .collect();
    rows.into_iter().collect()
}

/// The irreducible maps: `dim rad(a, b) − dim rad²(a, b)` arrows from `a`
/// to `b`, where `rad²` is spanned by composites of radical maps through
/// the vertices (valid because the vertex list is complete).
fn irreducible_maps(ar: &ARQuiver) -> Result<Vec<(usize, usize)>> {
    let n = ar.vertices.len();
    let rad = radical_bases(ar)?;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
    let counts: Vec<usize> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let r = &rad[a][b];
            if r.is_empty() {
                return 0;
            }
            let len = r[0].to_vector().rows();
            let mut square = Matrix::zeros(ar.field, len, 0);
            for w in 0..n {
                for f in &rad[a][w] {
                    for g in &rad[w][b] {
                        square = square.hstack(&f.then(g).to_vector());
                    }
                }
            }
            r.len() - square.rank()
        })
        .collect();
    let mut arrows = Vec::new();
    for (&(a, b), &c) in pairs.iter().zip(&counts) {
        arrows.extend(std::iter::repeat_n((a, b), c));
    }
    Ok(arrows)
}

impl ARQuiver {
    /// Whether the run closed.
    pub fn is_complete(&self) -> bool {
        self.status == KnitStatus::Complete
    }

    /// `τZ` for a non-projective vertex `Z`.
    pub fn tau_of(&self, z: usize) -> Option<usize> {
        self.tau_pairs.iter().find(|p| p.0 == z).map(|p| p.1)
    }

    /// `τ⁻X` for a non-injective vertex `X`.
    pub fn tau_inv_of(&self, x: usize) -> Option<usize> {
        self.tau_pairs.iter().find(|p| p.1 == x).map(|p| p.0)
    }

    /// Number of arrows from `a` to `b`.
    pub fn arrow_count(&self, a: usize, b: usize) -> usize {
        self.arrows.iter().filter(|&&e| e == (a, b)).count()
    }

    /// The index of the vertex isomorphic to `x`, if any.
    pub fn find(&self, x: &Arc<GridRep>) -> Result<Option<usize>> {
        for (k, v) in self.vertices.iter().enumerate() {
            if v.rep.dims() == x.dims() {
                if let IsoOutcome::Isomorphic(_) = is_isomorphic(&v.rep, x, k as u64)? {
                    return Ok(Some(k));
                }
            }
        }
        Ok(None)
    }

    /// Checks the almost split sequence at every non-projective vertex:
    /// `Ext¹(Z, τZ) ≠ 0`, the extension `τZ ↪ E ↠ Z` (built from the whole of
    /// `Ext¹(Z, τZ)` when it is one-dimensional) is exact, the middle term
    /// has the dimension of the sum over the arrows into `Z`, and the
    /// arrows out of `τZ` match the arrows into `Z`.
    pub fn mesh_checks(&self) -> Result<Vec<MeshCheck>> {
        if !self.is_complete() {
            return Err(Error::Precondition("mesh checks need a complete AR quiver".into()));
        }
        self.tau_pairs
            .par_iter()
            .map(|&(z, tz)| {
                let zr = &self.vertices[z].rep;
                let tr = &self.vertices[tz].rep;
                let e = ext_dim(zr, tr, 1)?;
                let seq = universal_extension(tr, std::slice::from_ref(zr))?;
                let exact = seq.is_exact();
                let mut middle = vec![0; self.shape.num_vertices()];
                for &(y, t) in &self.arrows {
                    if t == z {
                        for (m, d) in middle.iter_mut().zip(self.vertices[y].rep.dims()) {
                            *m += d;
                        }
                    }
                }
                let sum_dims: Vec<usize> = zr.dims().iter().zip(tr.dims()).map(|(a, b)| a + b).collect();
                let middle_matches = e == 1 && seq.mid.dims() == middle.as_slice() && middle == sum_dims;
                let balanced = (0..self.vertices.len()).all(|y| self.arrow_count(tz, y) == self.arrow_count(y, z));
                Ok(MeshCheck {
                    vertex: z,
                    tau_vertex: tz,
                    ext_dim: e,
                    exact,
                    middle_matches_arrows_in: middle_matches,
                    mesh_balanced: balanced,
                })
            })
            .collect()
    }
}

/// The vertices of a complete AR quiver whose representative satisfies
/// `pred`.
pub fn filter_subcategory(
    ar: &ARQuiver,
    pred: impl Fn(&Arc<GridRep>) -> Result<bool> + Sync,
) -> Result<Vec<usize>> {
    if !ar.is_complete() {
        return Err(Error::Precondition("filtering needs a complete AR quiver".into()));
    }
    let keep: Vec<Result<bool>> = ar.vertices.par_iter().map(|v| pred(&v.rep)).collect();
    let mut out = Vec::new();
    for (k, r) in keep.into_iter().enumerate() {
        if r? {
            out.push(k);
        }
    }
    Ok(out)
}

/// The vertices belonging to a class.
pub fn filter_class(ar: &ARQuiver, class: &Class) -> Result<Vec<usize>> {
    filter_subcategory(ar, |x| class.contains(x))
}
