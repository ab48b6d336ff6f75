//! The explicit functors on grid representations: the epi-kernel functor
//! `𝗍`, the image/cokernel torsion sequence along one direction, and the
//! right-to-left cotorsion cover built from projective covers and
//! pullbacks, together with their duals.

use std::sync::Arc;

use super::columns::{column_map, columns, from_columns, morphism_from_columns};
use super::sequence::ApproximationSequence;
use crate::error::{Error, Result};
use crate::grid::{kernel, pullback, quotient, subrep, Direction, GridMorphism, GridRep, GridShape};
use crate::hom::projective_cover;
use crate::linalg::Matrix;

/// The result of the epi-kernel functor on one representation: `𝗍X` on the
/// grid with one row fewer, with the kernel bases (coordinates in `X`) that
/// define it.
#[derive(Clone, Debug)]
pub struct EpiKernel {
    /// The representation `𝗍X` on the `m × (n − 1)` grid.
    pub rep: Arc<GridRep>,
    /// For each vertex of `𝗍X`, a basis of `ker [X_{i,j} → X_{i,n}]` as
    /// columns in the coordinates of `X_{i,j}`.
    pub bases: Vec<Matrix>,
}

impl EpiKernel {
    /// The induced morphism `𝗍g : 𝗍X → 𝗍Y` of `g : X → Y`, where `self` is
    /// `𝗍X` and `other` is `𝗍Y`.
    pub fn morphism(&self, g: &GridMorphism, other: &EpiKernel) -> Result<GridMorphism> {
        let s = self.rep.shape();
        if other.rep.shape() != s || g.source().shape().m != s.m || g.source().shape().n != s.n + 1 {
            return Err(Error::ShapeMismatch("morphism does not match the kernels".into()));
        }
        let mut comps = Vec::with_capacity(s.num_vertices());
        for v in s.vertices() {
            let k = s.index(v);
            let image = g.comp(v).mul(&self.bases[k]);
            let coords = other.bases[k]
                .solve_matrix(&image)?
                .ok_or_else(|| Error::Precondition("morphism does not map kernel into kernel".into()))?;
            comps.push(coords);
        }
        GridMorphism::new(self.rep.clone(), other.rep.clone(), comps)
    }
}

/// Removes the last row of a representation whose last row is zero.
fn drop_last_row(x: &GridRep) -> GridRep {
    let s = x.shape();
    let t = GridShape { m: s.m, n: s.n - 1 };
    GridRep::build(x.field(), t, |v| x.dim(v), |a| x.map(a).clone())
}

/// The epi-kernel functor: for `X` with all horizontal maps epi,
/// `(𝗍X)_{i,j} = ker [X_{i,j} → X_{i,n}]` for rows `j < n`, with the
/// induced structure maps. It annihilates exactly the rectangle modules
/// `k_{{1..i}×{j..n}}` and induces an equivalence from `rep^{e,*}` modulo
/// rectangles to all representations of the `m × (n − 1)` grid.
pub fn t_epi_kernel(x: &Arc<GridRep>) -> Result<EpiKernel> {
    let s = x.shape();
    if s.n < 2 {
        return Err(Error::Precondition("the epi-kernel functor needs at least two rows".into()));
    }
    if let Some(a) = x.first_failing_arrow(Direction::Horizontal, true) {
        return Err(Error::Precondition(format!(
            "horizontal map at ({}, {}) is not an epimorphism",
            a.source.0, a.source.1
        )));
    }
    let bases: Vec<Matrix> = s.vertices().map(|(i, j)| x.path_map((i, j), (i, s.n)).nullspace()).collect();
    let (sub, _) = subrep(x, bases.clone())?;
    let rep = Arc::new(drop_last_row(&sub));
    let keep = rep.shape().num_vertices();
    Ok(EpiKernel { rep, bases: bases.into_iter().take(keep).collect() })
}

/// The dual functor for `X` with all horizontal maps mono:
/// `(𝗍′X)_{i,j} = coker [X_{i,1} → X_{i,j+1}]` on the `m × (n − 1)` grid.
/// It is `D 𝗍 D`.
pub fn t_mono_cokernel(x: &Arc<GridRep>) -> Result<Arc<GridRep>> {
    if let Some(a) = x.first_failing_arrow(Direction::Horizontal, false) {
        return Err(Error::Precondition(format!(
            "horizontal map at ({}, {}) is not a monomorphism",
            a.source.0, a.source.1
        )));
    }
    let dx = Arc::new(x.dual());
    Ok(Arc::new(t_epi_kernel(&dx)?.rep.dual()))
}

/// Runs a construction defined for the horizontal direction in either
/// direction, transposing for the vertical one.
fn along(
    x: &Arc<GridRep>,
    dir: Direction,
    f: impl Fn(&Arc<GridRep>) -> Result<ApproximationSequence>,
) -> Result<ApproximationSequence> {
    match dir {
        Direction::Horizontal => f(x),
        Direction::Vertical => {
            let xt = Arc::new(x.transpose());
            Ok(f(&xt)?.transpose())
        }
    }
}

/// The torsion sequence `tX ↪ X ↠ fX` for the pair (all maps along `dir`
/// epi, first slice along `dir` zero): `tX` consists of the images of the
/// first slice, `fX` of the cokernels of the maps out of it.
pub fn torsion_torsionfree(x: &Arc<GridRep>, dir: Direction) -> Result<ApproximationSequence> {
    let seq = along(x, dir, |y| {
        let bases: Vec<Matrix> =
            y.shape().vertices().map(|(i, j)| y.path_map((1, j), (i, j)).column_basis()).collect();
        let (_, incl) = subrep(y, bases.clone())?;
        let (_, proj) = quotient(y, &bases)?;
        Ok(ApproximationSequence::new(incl, proj))
    })?;
    let mid = x.clone();
    Ok(ApproximationSequence {
        inj: seq.inj.with_endpoints(seq.left.clone(), mid.clone()),
        surj: seq.surj.with_endpoints(mid.clone(), seq.right.clone()),
        mid,
        ..seq
    })
}

/// The cotorsion cover `dX ↪ cX ↠ X` along `dir`, where every slice of
/// `cX` (perpendicular to `dir`) is projective and `dX` has all maps along
/// `dir` epi. Built from the last slice backwards: a projective cover of
/// the last slice, then repeatedly the pullback along the incoming map and
/// a projective cover of the pullback.
pub fn cotorsion_cover(x: &Arc<GridRep>, dir: Direction) -> Result<ApproximationSequence> {
    let seq = along(x, dir, cover_horizontal)?;
    Ok(seq.with_right(x.clone()))
}

fn cover_horizontal(x: &Arc<GridRep>) -> Result<ApproximationSequence> {
    let m = x.shape().m;
    let cols = columns(x);
    let mut projs: Vec<Option<Arc<GridRep>>> = vec![None; m];
    let mut covers: Vec<Option<GridMorphism>> = vec![None; m];
    let mut maps: Vec<Option<GridMorphism>> = vec![None; m.saturating_sub(1)];
    let (_, p, cov) = projective_cover(&cols[m - 1]);
    projs[m - 1] = Some(p);
    covers[m - 1] = Some(cov);
    for i in (0..m - 1).rev() {
        let f = column_map(x, i + 1, cols[i].clone(), cols[i + 1].clone());
        let next = covers[i + 1].as_ref().expect("cover already built");
        let (r, pa, pb) = pullback(&f, next)?;
        let (_, p, cov) = projective_cover(&r);
        covers[i] = Some(cov.then(&pa));
        maps[i] = Some(cov.then(&pb));
        projs[i] = Some(p);
    }
    let projs: Vec<Arc<GridRep>> = projs.into_iter().map(|p| p.expect("built")).collect();
    let maps: Vec<GridMorphism> = maps.into_iter().map(|f| f.expect("built")).collect();
    let covers: Vec<GridMorphism> = covers.into_iter().map(|f| f.expect("built")).collect();
    let cx = Arc::new(from_columns(&projs, &maps));
    let surj = morphism_from_columns(cx, x.clone(), &covers);
    let (_, inj) = kernel(&surj);
    Ok(ApproximationSequence::new(inj, surj))
}

/// The cotorsion envelope `X ↪ d̃X ↠ c̃X` along `dir`, dual to
/// [`cotorsion_cover`]: every slice of `d̃X` is injective and `c̃X` has all
/// maps along `dir` mono. Built as `D` of the cover of `D X`.
pub fn cotorsion_envelope(x: &Arc<GridRep>, dir: Direction) -> Result<ApproximationSequence> {
    let dx = Arc::new(x.dual());
    Ok(cotorsion_cover(&dx, dir)?.dual().with_left(x.clone()))
}
