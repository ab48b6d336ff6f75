//! Approximation sequences determined by a finite set of generators:
//! trace and reject sequences for torsion pairs, universal extensions for
//! the cotorsion pair of a tilting set, and factorization through
//! `add` of a set (equality in additive quotients).

use std::sync::Arc;

use super::sequence::ApproximationSequence;
use crate::error::{Error, Result};
use crate::grid::{
    cokernel, direct_sum_all, kernel, morphism_from_sum, pushout, quotient, subrep, sum_of_morphisms, GridMorphism,
    GridRep,
};
use crate::hom::{ext_dim, hom_basis, projective_cover};
use crate::linalg::Matrix;

fn check_shapes(x: &GridRep, gens: &[Arc<GridRep>]) -> Result<()> {
    for g in gens {
        x.check_compatible(g)?;
    }
    Ok(())
}

/// The trace sequence `tX ↪ X ↠ X/tX`, where `tX` is the sum of the images
/// of all morphisms from the generators. For a tilting set this is the
/// torsion sequence of `(Fac 𝕋, 𝕋^⊥)`.
pub fn trace_sequence(x: &Arc<GridRep>, gens: &[Arc<GridRep>]) -> Result<ApproximationSequence> {
    check_shapes(x, gens)?;
    let shape = x.shape();
    let field = x.field();
    let mut spans: Vec<Matrix> = shape.vertices().map(|v| Matrix::zeros(field, x.dim(v), 0)).collect();
    for g in gens {
        for h in hom_basis(g, x)? {
            for (k, v) in shape.vertices().enumerate() {
                spans[k] = spans[k].hstack(h.comp(v));
            }
        }
    }
    let bases: Vec<Matrix> = spans.iter().map(|m| m.column_basis()).collect();
    let (_, incl) = subrep(x, bases.clone())?;
    let (_, proj) = quotient(x, &bases)?;
    Ok(ApproximationSequence::new(incl, proj))
}

/// The reject sequence `rX ↪ X ↠ X/rX`, where `rX` is the intersection of
/// the kernels of all morphisms into the cogenerators. For a cotilting set
/// this is the torsion sequence of `(⊥ℂ, Sub ℂ)`.
pub fn reject_sequence(x: &Arc<GridRep>, cogens: &[Arc<GridRep>]) -> Result<ApproximationSequence> {
    check_shapes(x, cogens)?;
    let shape = x.shape();
    let field = x.field();
    let mut stacks: Vec<Matrix> = shape.vertices().map(|v| Matrix::zeros(field, 0, x.dim(v))).collect();
    for c in cogens {
        for h in hom_basis(x, c)? {
            for (k, v) in shape.vertices().enumerate() {
                stacks[k] = stacks[k].vstack(h.comp(v));
            }
        }
    }
    let bases: Vec<Matrix> = stacks.iter().map(|m| m.nullspace()).collect();
    let (_, incl) = subrep(x, bases.clone())?;
    let (_, proj) = quotient(x, &bases)?;
    Ok(ApproximationSequence::new(incl, proj))
}

/// Representatives `Ω → X` of a basis of `Ext¹(G, X)`, where
/// `Ω ↪ P0 ↠ G` is the first syzygy: a complement, inside `Hom(Ω, X)`, of
/// the restrictions of morphisms `P0 → X`.
fn ext1_representatives(syzygy: &GridMorphism, x: &Arc<GridRep>) -> Result<Vec<GridMorphism>> {
    let omega = syzygy.source();
    let p0 = syzygy.target();
    let h1 = hom_basis(omega, x)?;
    if h1.is_empty() {
        return Ok(Vec::new());
    }
    let len = h1[0].to_vector().rows();
    let mut span = Matrix::zeros(x.field(), len, 0);
    for h in hom_basis(p0, x)? {
        span = span.hstack(&syzygy.then(&h).to_vector());
    }
    let mut rank = span.rank();
    let mut reps = Vec::new();
    for h in h1 {
        let extended = span.hstack(&h.to_vector());
        let r = extended.rank();
        if r > rank {
            rank = r;
            span = extended;
            reps.push(h);
        }
    }
    Ok(reps)
}

/// The universal extension `X ↪ E ↠ ⊕ G^{r_G}` by the generators, with one
/// copy of `G` for each basis element of `Ext¹(G, X)`: the pushout of the
/// syzygy sequences `Ω_G ↪ P_G ↠ G` along the representatives `Ω_G → X`.
/// The connecting map `Hom(G, ⊕G^{r_G}) → Ext¹(G, X)` is onto, so when the
/// generators have projective dimension at most one and no
/// self-extensions,
/// `Ext¹(G, E) = 0` for every generator; for a tilting set, `E ∈ Fac 𝕋` and
/// the right term lies in `add 𝕋`, giving the sequence `X ↪ d̃X ↠ c̃X` of the
/// cotorsion pair. With a single generator `Z` and `X = τZ` it is the
/// almost split sequence whenever `Ext¹(Z, τZ)` is one-dimensional.
pub fn universal_extension(x: &Arc<GridRep>, gens: &[Arc<GridRep>]) -> Result<ApproximationSequence> {
    check_shapes(x, gens)?;
    let mut s1_parts = Vec::new();
    let mut s0_parts = Vec::new();
    let mut ds = Vec::new();
    let mut hs = Vec::new();
    for g in gens {
        let (_, p0, cover) = projective_cover(g);
        let (omega, syzygy) = kernel(&cover);
        let reps = ext1_representatives(&syzygy, x)?;
        debug_assert_eq!(reps.len(), ext_dim(g, x, 1)?);
        for e in reps {
            s1_parts.push(omega.clone());
            s0_parts.push(p0.clone());
            ds.push(syzygy.clone());
            hs.push(e);
        }
    }
    if hs.is_empty() {
        let zero = Arc::new(GridRep::zero(x.field(), x.shape()));
        return Ok(ApproximationSequence::new(GridMorphism::identity(x.clone()), GridMorphism::zero(x.clone(), zero)));
    }
    let s1 = direct_sum_all(&s1_parts)?;
    let s0 = direct_sum_all(&s0_parts)?;
    let d = sum_of_morphisms(&s1, &s0, &ds);
    let h = morphism_from_sum(&s1, &hs, x.clone());
    let (_, _, ic) = pushout(&d, &h)?;
    let (_, proj) = cokernel(&ic);
    Ok(ApproximationSequence::new(ic, proj))
}

/// The cover `E ↪ Q ↠ X` of the cotorsion pair of a tilting set: `Q` is the
/// pushout of the projective cover `P ↠ X` along the universal extension
/// of its kernel, so `Q` is an extension of `P` by `add 𝕋` and `E ∈ Fac 𝕋`.
pub fn tilting_cover(x: &Arc<GridRep>, gens: &[Arc<GridRep>]) -> Result<ApproximationSequence> {
    check_shapes(x, gens)?;
    let (_, _, pi) = projective_cover(x);
    let (k, kincl) = kernel(&pi);
    let ue = universal_extension(&k, gens)?;
    let kincl = kincl.with_endpoints(ue.left.clone(), pi.source().clone());
    let (q, ib, ic) = pushout(&kincl, &ue.inj)?;
    let shape = x.shape();
    let mut comps = Vec::with_capacity(shape.num_vertices());
    for v in shape.vertices() {
        let both = ib.comp(v).hstack(ic.comp(v));
        let rhs = pi.comp(v).hstack(&Matrix::zeros(x.field(), x.dim(v), ic.comp(v).cols()));
        let rinv = both
            .right_inverse()
            .ok_or_else(|| Error::InvalidRep("pushout maps are not jointly surjective".into()))?;
        comps.push(rhs.mul(&rinv));
    }
    let surj = GridMorphism::new(q, x.clone(), comps)?;
    Ok(ApproximationSequence::new(ic, surj))
}

fn duals(gens: &[Arc<GridRep>]) -> Vec<Arc<GridRep>> {
    gens.iter().map(|g| Arc::new(g.dual())).collect()
}

/// The cover `⊕C ↪ E ↠ X` of the cotorsion pair `(Sub ℂ, …)` of a cotilting
/// set, dual to [`universal_extension`].
pub fn cotilting_cover(x: &Arc<GridRep>, cogens: &[Arc<GridRep>]) -> Result<ApproximationSequence> {
    let dx = Arc::new(x.dual());
    Ok(universal_extension(&dx, &duals(cogens))?.dual().with_right(x.clone()))
}

/// The envelope `X ↪ Q ↠ E` of the cotorsion pair of a cotilting set, dual
/// to [`tilting_cover`].
pub fn cotilting_envelope(x: &Arc<GridRep>, cogens: &[Arc<GridRep>]) -> Result<ApproximationSequence> {
    let dx = Arc::new(x.dual());
    Ok(tilting_cover(&dx, &duals(cogens))?.dual().with_left(x.clone()))
}

/// Whether `f` factors through an object of `add` of the given set, i.e. is
/// zero in the additive quotient by that set. Decided by a linear system:
/// `f` must lie in the span of the composites `X → G → Y` over Hom bases.
pub fn factors_through_add(f: &GridMorphism, gens: &[Arc<GridRep>]) -> Result<bool> {
    if f.is_zero() {
        return Ok(true);
    }
    let target = f.to_vector();
    let mut span = Matrix::zeros(f.source().field(), target.rows(), 0);
    for g in gens {
        let into = hom_basis(f.source(), g)?;
        if into.is_empty() {
            continue;
        }
        for b in hom_basis(g, f.target())? {
            for a in &into {
                span = span.hstack(&a.then(&b).to_vector());
            }
        }
    }
    Ok(span.solve(&target)?.is_some())
}

/// Whether two parallel morphisms agree in the additive quotient by `add`
/// of the given set.
pub fn equal_modulo(f: &GridMorphism, g: &GridMorphism, gens: &[Arc<GridRep>]) -> Result<bool> {
    if f.source().as_ref() != g.source().as_ref() || f.target().as_ref() != g.target().as_ref() {
        return Err(Error::ShapeMismatch("morphisms are not parallel".into()));
    }
    factors_through_add(&f.sub(g), gens)
}
