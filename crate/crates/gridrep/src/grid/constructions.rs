//! Elementary constructions: thin and standard modules, direct sums,
//! subrepresentations and quotients, kernels, images and cokernels,
//! pullbacks and pushouts, radical and top.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};

use super::morphism::GridMorphism;
use super::rep::GridRep;
use super::shape::{leq, ConvexMask, GridShape, Vertex};

/// The thin module `k_C`: one-dimensional on the convex set `C`, zero
/// elsewhere, with identity maps inside `C` and zero maps otherwise.
pub fn thin_module(mask: &ConvexMask, field: Field) -> Result<GridRep> {
    if !mask.is_convex() {
        return Err(Error::Precondition("support of a thin module must be convex".into()));
    }
    let shape = mask.shape();
    Ok(GridRep::build(
        field,
        shape,
        |v| usize::from(mask.contains(v)),
        |a| {
            let (s, t) = (mask.contains(a.source), mask.contains(a.target()));
            if s && t {
                Matrix::identity(field, 1)
            } else {
                Matrix::zeros(field, usize::from(t), usize::from(s))
            }
        },
    ))
}

/// The three families of standard modules attached to a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StandardKind {
    /// The indecomposable projective `P_x`, supported on `{y ≥ x}`.
    Projective,
    /// The indecomposable injective `I_x`, supported on `{y ≤ x}`.
    Injective,
    /// The simple module `S_x`, supported on `{x}`.
    Simple,
}

/// The support of a standard module.
pub fn standard_support(shape: GridShape, kind: StandardKind, x: Vertex) -> ConvexMask {
    match kind {
        StandardKind::Projective => ConvexMask::from_fn(shape, |y| leq(x, y)),
        StandardKind::Injective => ConvexMask::from_fn(shape, |y| leq(y, x)),
        StandardKind::Simple => ConvexMask::from_fn(shape, |y| y == x),
    }
}

/// The standard projective, injective or simple module at vertex `x`.
pub fn standard_module(shape: GridShape, kind: StandardKind, x: Vertex, field: Field) -> Result<GridRep> {
    shape.check_vertex(x)?;
    thin_module(&standard_support(shape, kind, x), field)
}

/// Shorthand for the projective `P_x`.
pub fn projective(shape: GridShape, x: Vertex, field: Field) -> GridRep {
    standard_module(shape, StandardKind::Projective, x, field).expect("vertex in range")
}

/// Shorthand for the injective `I_x`.
pub fn injective(shape: GridShape, x: Vertex, field: Field) -> GridRep {
    standard_module(shape, StandardKind::Injective, x, field).expect("vertex in range")
}

/// Shorthand for the simple `S_x`.
pub fn simple(shape: GridShape, x: Vertex, field: Field) -> GridRep {
    standard_module(shape, StandardKind::Simple, x, field).expect("vertex in range")
}

/// A direct sum `X_1 ⊕ … ⊕ X_r` with its canonical inclusions and
/// projections.
#[derive(Clone, Debug)]
pub struct DirectSum {
    /// The sum.
    pub sum: Arc<GridRep>,
    /// Inclusions `X_k → sum`.
    pub inclusions: Vec<GridMorphism>,
    /// Projections `sum → X_k`.
    pub projections: Vec<GridMorphism>,
}

fn check_all_compatible(parts: &[Arc<GridRep>]) -> Result<()> {
    for p in parts.iter().skip(1) {
        parts[0].check_compatible(p)?;
    }
    Ok(())
}

/// The direct sum of two representations (block-diagonal maps).
pub fn direct_sum(x: &GridRep, y: &GridRep) -> Result<GridRep> {
    x.check_compatible(y)?;
    Ok(sum_rep(&[x, y]))
}

fn sum_rep(parts: &[&GridRep]) -> GridRep {
    let (field, shape) = (parts[0].field(), parts[0].shape());
    GridRep::build(
        field,
        shape,
        |v| parts.iter().map(|p| p.dim(v)).sum(),
        |a| {
            let blocks: Vec<&Matrix> = parts.iter().map(|p| p.map(a)).collect();
            Matrix::block_diag(field, &blocks)
        },
    )
}

/// The direct sum of a non-empty list of representations, with inclusions
/// and projections.
pub fn direct_sum_all(parts: &[Arc<GridRep>]) -> Result<DirectSum> {
    if parts.is_empty() {
        return Err(Error::Precondition("direct sum of an empty list needs a shape".into()));
    }
    check_all_compatible(parts)?;
    let refs: Vec<&GridRep> = parts.iter().map(|p| p.as_ref()).collect();
    let sum = Arc::new(sum_rep(&refs));
    let field = sum.field();
    let shape = sum.shape();
    let mut inclusions = Vec::new();
    let mut projections = Vec::new();
    for (k, part) in parts.iter().enumerate() {
        let offset = |v: Vertex| parts[..k].iter().map(|p| p.dim(v)).sum::<usize>();
        let mut incl = Vec::new();
        let mut proj = Vec::new();
        for v in shape.vertices() {
            let mut e = Matrix::zeros(field, sum.dim(v), part.dim(v));
            e.set_block(offset(v), 0, &Matrix::identity(field, part.dim(v)));
            proj.push(e.transpose());
            incl.push(e);
        }
        inclusions.push(GridMorphism::from_parts_unchecked(part.clone(), sum.clone(), incl));
        projections.push(GridMorphism::from_parts_unchecked(sum.clone(), part.clone(), proj));
    }
    Ok(DirectSum { sum, inclusions, projections })
}

/// The direct sum of a list that may be empty (then the zero representation).
pub fn direct_sum_or_zero(parts: &[Arc<GridRep>], field: Field, shape: GridShape) -> DirectSum {
    if parts.is_empty() {
        let z = Arc::new(GridRep::zero(field, shape));
        return DirectSum { sum: z, inclusions: Vec::new(), projections: Vec::new() };
    }
    direct_sum_all(parts).expect("compatible summands")
}

/// The morphism `[f_1 … f_r] : ⊕ X_k → Y` out of a direct sum.
pub fn morphism_from_sum(sum: &DirectSum, fs: &[GridMorphism], target: Arc<GridRep>) -> GridMorphism {
    assert_eq!(fs.len(), sum.projections.len());
    let mut acc = GridMorphism::zero(sum.sum.clone(), target);
    for (f, p) in fs.iter().zip(&sum.projections) {
        acc = acc.add(&p.then(f));
    }
    acc
}

/// The morphism `(f_1, …, f_r)ᵀ : X → ⊕ Y_k` into a direct sum.
pub fn morphism_to_sum(sum: &DirectSum, fs: &[GridMorphism], source: Arc<GridRep>) -> GridMorphism {
    assert_eq!(fs.len(), sum.inclusions.len());
    let mut acc = GridMorphism::zero(source, sum.sum.clone());
    for (f, i) in fs.iter().zip(&sum.inclusions) {
        acc = acc.add(&f.then(i));
    }
    acc
}

/// The block-diagonal morphism `⊕ f_k : ⊕ X_k → ⊕ Y_k`.
pub fn sum_of_morphisms(src: &DirectSum, tgt: &DirectSum, fs: &[GridMorphism]) -> GridMorphism {
    let parts: Vec<GridMorphism> = fs.iter().zip(&tgt.inclusions).map(|(f, i)| f.then(i)).collect();
    morphism_from_sum(src, &parts, tgt.sum.clone())
}

/// The subrepresentation spanned by the columns of `bases[v]` at each vertex.
///
/// Each basis must have full column rank and the family must be stable under
/// the structure maps. Returns the subrepresentation (in the given bases)
/// and its inclusion.
pub fn subrep(x: &Arc<GridRep>, bases: Vec<Matrix>) -> Result<(Arc<GridRep>, GridMorphism)> {
    let shape = x.shape();
    let field = x.field();
    if bases.len() != shape.num_vertices() {
        return Err(Error::DimensionMismatch("one basis per vertex required".into()));
    }
    let mut lefts = Vec::with_capacity(bases.len());
    for (k, b) in bases.iter().enumerate() {
        if b.rows() != x.dims()[k] {
            return Err(Error::DimensionMismatch(format!("basis at vertex {k} has {} rows", b.rows())));
        }
        lefts.push(
            b.left_inverse()
                .ok_or_else(|| Error::Precondition("subspace basis is not linearly independent".into()))?,
        );
    }
    let mut maps = std::collections::HashMap::new();
    for a in shape.arrows() {
        let (s, t) = (shape.index(a.source), shape.index(a.target()));
        let image = x.map(a).mul(&bases[s]);
        let m = lefts[t].mul(&image);
        if bases[t].mul(&m) != image {
            return Err(Error::Precondition(format!(
                "subspaces not stable under the {:?} map at ({}, {})",
                a.dir, a.source.0, a.source.1
            )));
        }
        maps.insert(a, m);
    }
    let sub = Arc::new(GridRep::build(field, shape, |v| bases[shape.index(v)].cols(), |a| maps[&a].clone()));
    let incl = GridMorphism::from_parts_unchecked(sub.clone(), x.clone(), bases);
    Ok((sub, incl))
}

/// The quotient of `x` by the stable family of subspaces spanned by the
/// columns of `bases[v]`, with the projection.
///
/// The quotient basis at `v` is given by the rows of a matrix `Q_v` whose
/// rows span the annihilator of the subspace; the projection is `Q_v`.
pub fn quotient(x: &Arc<GridRep>, bases: &[Matrix]) -> Result<(Arc<GridRep>, GridMorphism)> {
    let shape = x.shape();
    let field = x.field();
    if bases.len() != shape.num_vertices() {
        return Err(Error::DimensionMismatch("one basis per vertex required".into()));
    }
    let mut qs = Vec::with_capacity(bases.len());
    let mut rights = Vec::with_capacity(bases.len());
    for (k, b) in bases.iter().enumerate() {
        if b.rows() != x.dims()[k] {
            return Err(Error::DimensionMismatch(format!("basis at vertex {k} has {} rows", b.rows())));
        }
        let q = b.transpose().nullspace().transpose();
        rights.push(q.right_inverse().expect("annihilator rows are independent"));
        qs.push(q);
    }
    let mut maps = std::collections::HashMap::new();
    for a in shape.arrows() {
        let (s, t) = (shape.index(a.source), shape.index(a.target()));
        if !qs[t].mul(x.map(a)).mul(&bases[s]).is_zero() {
            return Err(Error::Precondition(format!(
                "subspaces not stable under the {:?} map at ({}, {})",
                a.dir, a.source.0, a.source.1
            )));
        }
        maps.insert(a, qs[t].mul(x.map(a)).mul(&rights[s]));
    }
    let quo = Arc::new(GridRep::build(field, shape, |v| qs[shape.index(v)].rows(), |a| maps[&a].clone()));
    let proj = GridMorphism::from_parts_unchecked(x.clone(), quo.clone(), qs);
    Ok((quo, proj))
}

/// Kernel, image and cokernel of a morphism, each with its structure maps.
#[derive(Clone, Debug)]
pub struct SubQuotient {
    /// The kernel.
    pub ker: Arc<GridRep>,
    /// Inclusion of the kernel into the source.
    pub ker_incl: GridMorphism,
    /// The image.
    pub im: Arc<GridRep>,
    /// Corestriction `source ↠ im`.
    pub im_factor: GridMorphism,
    /// Inclusion `im ↪ target`.
    pub im_incl: GridMorphism,
    /// The cokernel.
    pub coker: Arc<GridRep>,
    /// Projection `target ↠ coker`.
    pub coker_proj: GridMorphism,
}

/// Pointwise kernel of a morphism with its inclusion.
pub fn kernel(phi: &GridMorphism) -> (Arc<GridRep>, GridMorphism) {
    let bases = phi.comps().iter().map(|c| c.nullspace()).collect();
    subrep(phi.source(), bases).expect("kernels are subrepresentations")
}

/// Pointwise image of a morphism: `(im, source ↠ im, im ↪ target)`.
pub fn image(phi: &GridMorphism) -> (Arc<GridRep>, GridMorphism, GridMorphism) {
    let bases: Vec<Matrix> = phi.comps().iter().map(|c| c.column_basis()).collect();
    let (im, incl) = subrep(phi.target(), bases.clone()).expect("images are subrepresentations");
    let factor = GridMorphism::build(phi.source().clone(), im.clone(), |v| {
        let k = phi.source().shape().index(v);
        bases[k].left_inverse().expect("independent basis").mul(phi.comp(v))
    });
    (im, factor, incl)
}

/// Pointwise cokernel of a morphism with its projection.
pub fn cokernel(phi: &GridMorphism) -> (Arc<GridRep>, GridMorphism) {
    let bases: Vec<Matrix> = phi.comps().iter().map(|c| c.column_basis()).collect();
    quotient(phi.target(), &bases).expect("images are subrepresentations")
}

/// Kernel, image and cokernel of `phi`.
pub fn sub_quotient(phi: &GridMorphism) -> SubQuotient {
    let (ker, ker_incl) = kernel(phi);
    let (im, im_factor, im_incl) = image(phi);
    let (coker, coker_proj) = cokernel(phi);
    SubQuotient { ker, ker_incl, im, im_factor, im_incl, coker, coker_proj }
}

/// The pullback of `f : A → C` and `g : B → C`, as `(P, P → A, P → B)`.
pub fn pullback(f: &GridMorphism, g: &GridMorphism) -> Result<(Arc<GridRep>, GridMorphism, GridMorphism)> {
    if f.target().dims() != g.target().dims() {
        return Err(Error::ShapeMismatch("pullback of morphisms with different targets".into()));
    }
    let ds = direct_sum_all(&[f.source().clone(), g.source().clone()])?;
    let diff = morphism_from_sum(&ds, &[f.clone(), g.scale(&crate::linalg::Scalar::from_i64(f.source().field(), -1))], f.target().clone());
    let (p, incl) = kernel(&diff);
    let pa = incl.then(&ds.projections[0]);
    let pb = incl.then(&ds.projections[1]);
    Ok((p, pa, pb))
}

/// The pushout of `f : A → B` and `g : A → C`, as `(Q, B → Q, C → Q)`.
pub fn pushout(f: &GridMorphism, g: &GridMorphism) -> Result<(Arc<GridRep>, GridMorphism, GridMorphism)> {
    if f.source().dims() != g.source().dims() {
        return Err(Error::ShapeMismatch("pushout of morphisms with different sources".into()));
    }
    let ds = direct_sum_all(&[f.target().clone(), g.target().clone()])?;
    let diff = morphism_to_sum(&ds, &[f.clone(), g.scale(&crate::linalg::Scalar::from_i64(f.source().field(), -1))], f.source().clone());
    let (q, proj) = cokernel(&diff);
    let ib = ds.inclusions[0].then(&proj);
    let ic = ds.inclusions[1].then(&proj);
    Ok((q, ib, ic))
}

/// Radical and top of a representation.
#[derive(Clone, Debug)]
pub struct RadicalTop {
    /// The radical: at each vertex, the sum of the images of incoming maps.
    pub rad: Arc<GridRep>,
    /// Inclusion of the radical.
    pub rad_incl: GridMorphism,
    /// The (semisimple) top `X / rad X`.
    pub top: Arc<GridRep>,
    /// Projection onto the top.
    pub top_proj: GridMorphism,
}

/// Bases of the radical at each vertex.
pub fn radical_bases(x: &GridRep) -> Vec<Matrix> {
    let shape = x.shape();
    shape
        .vertices()
        .map(|v| {
            let mut span = Matrix::zeros(x.field(), x.dim(v), 0);
            for a in shape.incoming(v) {
                span = span.hstack(x.map(a));
            }
            span.column_basis()
        })
        .collect()
}

/// Radical and top of `x`.
pub fn radical_top(x: &Arc<GridRep>) -> RadicalTop {
    let bases = radical_bases(x);
    let (top, top_proj) = quotient(x, &bases).expect("the radical is a subrepresentation");
    let (rad, rad_incl) = subrep(x, bases).expect("the radical is a subrepresentation");
    RadicalTop { rad, rad_incl, top, top_proj }
}
