//! Direct sums of standard projectives and injectives, maps between them
//! in coefficient form, projective covers, minimal presentations and
//! projective resolutions.
//!
//! Coefficient convention. `Hom(P_u, P_v)` is one-dimensional when `v ≤ u`
//! and zero otherwise, spanned by the map sending the generator of `P_u`
//! to the path element `v → u` of `P_v`. A map `⊕_t P_{u_t} → ⊕_s P_{v_s}`
//! is therefore a scalar matrix `C` (rows `s`, columns `t`) with
//! `C[s][t] = 0` unless `v_s ≤ u_t`. Dually, a map `⊕_t I_{u_t} → ⊕_s I_{v_s}`
//! is a scalar matrix with `C[s][t] = 0` unless `v_s ≤ u_t`, the basic map
//! `I_u → I_v` being the canonical restriction.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grid::{
    direct_sum_or_zero, injective, kernel, leq, projective, radical_bases, GridMorphism, GridRep, GridShape,
    Vertex,
};
use crate::linalg::{Field, Matrix};

/// A direct sum `⊕_s P_{v_s}` of standard projectives, in a fixed order.
///
/// At a vertex `w` its basis consists of the generators `s` with
/// `v_s ≤ w`, in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveSum {
    /// Grid shape.
    pub shape: GridShape,
    /// Base field.
    pub field: Field,
    /// Top vertices `v_s` of the summands.
    pub tops: Vec<Vertex>,
}

impl ProjectiveSum {
    /// The representation `⊕_s P_{v_s}`.
    pub fn rep(&self) -> GridRep {
        let parts: Vec<Arc<GridRep>> =
            self.tops.iter().map(|&v| Arc::new(projective(self.shape, v, self.field))).collect();
        Arc::unwrap_or_clone(direct_sum_or_zero(&parts, self.field, self.shape).sum)
    }

    /// Summand indices present at vertex `w`, in basis order.
    pub fn basis_at(&self, w: Vertex) -> Vec<usize> {
        (0..self.tops.len()).filter(|&s| leq(self.tops[s], w)).collect()
    }

    /// Whether there are no summands.
    pub fn is_zero(&self) -> bool {
        self.tops.is_empty()
    }

    /// Multiplicity of `P_v` as a summand.
    pub fn multiplicity(&self, v: Vertex) -> usize {
        self.tops.iter().filter(|&&t| t == v).count()
    }
}

/// A direct sum `⊕_s I_{v_s}` of standard injectives; at `w` its basis
/// consists of the summands `s` with `w ≤ v_s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InjectiveSum {
    /// Grid shape.
    pub shape: GridShape,
    /// Base field.
    pub field: Field,
    /// Socle vertices `v_s` of the summands.
    pub socles: Vec<Vertex>,
}

impl InjectiveSum {
    /// The representation `⊕_s I_{v_s}`.
    pub fn rep(&self) -> GridRep {
        let parts: Vec<Arc<GridRep>> =
            self.socles.iter().map(|&v| Arc::new(injective(self.shape, v, self.field))).collect();
        Arc::unwrap_or_clone(direct_sum_or_zero(&parts, self.field, self.shape).sum)
    }

    /// Summand indices present at vertex `w`, in basis order.
    pub fn basis_at(&self, w: Vertex) -> Vec<usize> {
        (0..self.socles.len()).filter(|&s| leq(w, self.socles[s])).collect()
    }
}

/// A map `⊕_t P_{u_t} → ⊕_s P_{v_s}` in coefficient form (see the module
/// documentation).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjMap {
    /// Source sum (`u_t`).
    pub source: ProjectiveSum,
    /// Target sum (`v_s`).
    pub target: ProjectiveSum,
    /// `|target| × |source|` coefficients.
    pub coeffs: Matrix,
}

impl ProjMap {
    /// The component at vertex `w`: rows are target summands present at
    /// `w`, columns source summands present at `w`.
    pub fn comp(&self, w: Vertex) -> Matrix {
        self.coeffs.select_rows(&self.target.basis_at(w)).select_cols(&self.source.basis_at(w))
    }

    /// The morphism of representations, between the given realizations of
    /// source and target (as produced by [`ProjectiveSum::rep`]).
    pub fn to_morphism(&self, source: Arc<GridRep>, target: Arc<GridRep>) -> GridMorphism {
        let comps = self.source.shape.vertices().map(|w| self.comp(w)).collect();
        let f = GridMorphism::from_parts_unchecked(source, target, comps);
        debug_assert!(f.check().is_ok());
        f
    }

    /// Checks that every non-zero coefficient is allowed by the order.
    pub fn check(&self) -> Result<()> {
        for (s, &v) in self.target.tops.iter().enumerate() {
            for (t, &u) in self.source.tops.iter().enumerate() {
                if !leq(v, u) && !self.coeffs.get(s, t).is_zero() {
                    return Err(Error::Precondition(format!(
                        "no non-zero map from P{u:?} to P{v:?}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The Nakayama functor on sums of projectives: `ν P_v = I_v`.
pub fn nakayama_sum(p: &ProjectiveSum) -> InjectiveSum {
    InjectiveSum { shape: p.shape, field: p.field, socles: p.tops.clone() }
}

/// The Nakayama functor on a map between sums of projectives: the same
/// coefficients on the canonical maps between injectives (Yoneda-coordinate
/// convention), as a morphism `ν(source) → ν(target)`.
pub fn nakayama_map(d: &ProjMap, source: Arc<GridRep>, target: Arc<GridRep>) -> GridMorphism {
    let (ns, nt) = (nakayama_sum(&d.source), nakayama_sum(&d.target));
    let comps = d
        .source
        .shape
        .vertices()
        .map(|w| d.coeffs.select_rows(&nt.basis_at(w)).select_cols(&ns.basis_at(w)))
        .collect();
    let f = GridMorphism::from_parts_unchecked(source, target, comps);
    debug_assert!(f.check().is_ok(), "{:?}", f.check());
    f
}

/// A projective cover `⊕_s P_{v_s} ↠ X` built from a basis of the top:
/// returns the sum and the list of generators `(v_s, x_s)` with `x_s`
/// a standard basis vector of `X(v_s)` complementing the radical.
pub fn top_generators(x: &GridRep) -> Vec<(Vertex, usize)> {
    let rad = radical_bases(x);
    let shape = x.shape();
    let mut gens = Vec::new();
    for v in shape.vertices() {
        for k in rad[shape.index(v)].complement_coordinates() {
            gens.push((v, k));
        }
    }
    gens
}

/// The components of the map `⊕_s P_{v_s} → X` sending the generator of
/// `P_{v_s}` to the vector `elems[s] ∈ X(v_s)`.
fn map_from_generators(x: &GridRep, sum: &ProjectiveSum, elems: &[Matrix]) -> Vec<Matrix> {
    let shape = x.shape();
    shape
        .vertices()
        .map(|w| {
            let mut comp = Matrix::zeros(x.field(), x.dim(w), 0);
            for s in sum.basis_at(w) {
                comp = comp.hstack(&x.path_map(sum.tops[s], w).mul(&elems[s]));
            }
            comp
        })
        .collect()
}

/// A projective cover of `x` with its realization: `(P, P as a rep, P ↠ X)`.
pub fn projective_cover(x: &Arc<GridRep>) -> (ProjectiveSum, Arc<GridRep>, GridMorphism) {
    let gens = top_generators(x);
    let sum = ProjectiveSum { shape: x.shape(), field: x.field(), tops: gens.iter().map(|g| g.0).collect() };
    let elems: Vec<Matrix> = gens
        .iter()
        .map(|&(v, k)| {
            let mut e = Matrix::zeros(x.field(), x.dim(v), 1);
            e.set(k, 0, &crate::linalg::Scalar::one(x.field()));
            e
        })
        .collect();
    let p = Arc::new(sum.rep());
    let comps = map_from_generators(x, &sum, &elems);
    let cover = GridMorphism::from_parts_unchecked(p.clone(), x.clone(), comps);
    debug_assert!(cover.check().is_ok() && cover.is_epi());
    (sum, p, cover)
}

/// Given a subrepresentation `k ↪ ⊕_s P_{v_s}` (inclusion `incl`), the
/// projective cover of `k` as a map in coefficient form into the sum.
fn cover_of_sub(incl: &GridMorphism, target: &ProjectiveSum) -> ProjMap {
    let k = incl.source();
    let gens = top_generators(k);
    let source = ProjectiveSum { shape: target.shape, field: target.field, tops: gens.iter().map(|g| g.0).collect() };
    let mut coeffs = Matrix::zeros(target.field, target.tops.len(), gens.len());
    for (t, &(u, idx)) in gens.iter().enumerate() {
        let col = incl.comp(u).column(idx);
        for (row, s) in target.basis_at(u).into_iter().enumerate() {
            coeffs.set(s, t, &col.get(row, 0));
        }
    }
    ProjMap { source, target: target.clone(), coeffs }
}

/// A minimal projective presentation `P1 → P0 ↠ X`.
#[derive(Clone, Debug)]
pub struct Presentation {
    /// `P0`, the projective cover of `X`.
    pub p0: ProjectiveSum,
    /// `P1`, the projective cover of the kernel of `P0 ↠ X`.
    pub p1: ProjectiveSum,
    /// `P0` as a representation.
    pub p0_rep: Arc<GridRep>,
    /// `P1` as a representation.
    pub p1_rep: Arc<GridRep>,
    /// `d : P1 → P0` in coefficient form.
    pub d_coeffs: ProjMap,
    /// `d : P1 → P0` as a morphism.
    pub d: GridMorphism,
    /// The cover `P0 ↠ X`.
    pub cover: GridMorphism,
}

/// The minimal projective presentation of `x`, built from the top of `x`
/// and the top of the kernel of its projective cover.
pub fn minimal_presentation(x: &Arc<GridRep>) -> Presentation {
    let (p0, p0_rep, cover) = projective_cover(x);
    let (_, incl) = kernel(&cover);
    let d_coeffs = cover_of_sub(&incl, &p0);
    let p1_rep = Arc::new(d_coeffs.source.rep());
    let d = d_coeffs.to_morphism(p1_rep.clone(), p0_rep.clone());
    Presentation { p0, p1: d_coeffs.source.clone(), p0_rep, p1_rep, d_coeffs, d, cover }
}

/// A minimal projective resolution `0 → P_r → … → P_1 → P_0 ↠ X`.
#[derive(Clone, Debug)]
pub struct Resolution {
    /// The terms `P_0, P_1, …` (the last one non-zero, or only `P_0` when
    /// `X = 0`).
    pub terms: Vec<ProjectiveSum>,
    /// The differentials `d_k : P_k → P_{k−1}` for `k ≥ 1`, in coefficient form.
    pub maps: Vec<ProjMap>,
    /// The augmentation `P_0 ↠ X`.
    pub cover: GridMorphism,
}

impl Resolution {
    /// The projective dimension (length of the minimal resolution);
    /// `None` for the zero representation.
    pub fn projective_dimension(&self) -> Option<usize> {
        if self.terms[0].is_zero() {
            None
        } else {
            Some(self.terms.len() - 1)
        }
    }
}

/// The minimal projective resolution of `x`. Grid algebras have global
/// dimension at most 2, so this has at most three terms.
pub fn projective_resolution(x: &Arc<GridRep>) -> Resolution {
    let (p0, p0_rep, cover) = projective_cover(x);
    let mut terms = vec![p0.clone()];
    let mut maps = Vec::new();
    let (mut k, mut incl) = kernel(&cover);
    let mut prev = p0;
    let mut prev_rep = p0_rep;
    while !k.is_zero() {
        let d = cover_of_sub(&incl, &prev);
        let rep = Arc::new(d.source.rep());
        let dm = d.to_morphism(rep.clone(), prev_rep.clone());
        let (k2, incl2) = kernel(&dm);
        terms.push(d.source.clone());
        prev = d.source.clone();
        maps.push(d);
        prev_rep = rep;
        k = k2;
        incl = incl2;
        assert!(terms.len() <= 2 + x.shape().num_vertices(), "projective resolution does not terminate");
    }
    Resolution { terms, maps, cover }
}
