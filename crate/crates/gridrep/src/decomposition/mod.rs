//! Krull–Schmidt decomposition of grid representations.
//!
//! A representation is split by endomorphisms: for `φ ∈ End(X)` with
//! characteristic polynomial `Π f_i^{e_i}` (product over all vertices), the
//! generalized eigenspaces `ker f_i(φ)^{e_i}` are subrepresentations and
//! `X` is their direct sum. Splitting is attempted with the elements of a
//! basis of `End(X)` and with random linear combinations; parts are split
//! recursively, isomorphic summands are merged, and every summand gets an
//! indecomposability certificate:
//!
//! * over ℚ, or over GF(p) with `p` larger than the total dimension, the
//!   radical of `End(X)` is the radical of the trace form
//!   `(a, b) ↦ tr(ab)`, and `X` is certified indecomposable with residue
//!   field `k` when that radical has codimension one;
//! * otherwise a candidate radical is formed from the eigenvalues of the
//!   basis elements, and certification requires verifying that it is a
//!   nilpotent two-sided ideal of codimension one.
//!
//! If neither test certifies and no split was found, the summand is
//! reported as probably indecomposable, with the number of trials.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{direct_sum_all, morphism_from_sum, subrep, GridMorphism, GridRep};
use crate::hom::{hom_basis, is_isomorphic, random_combination, IsoOutcome};
use crate::linalg::{Field, Matrix, Poly, Scalar};

/// Default number of random endomorphisms tried before a part is declared
/// (probably) indecomposable.
pub const DEFAULT_TRIALS: usize = 20;

/// A splitting `X ≅ X_1 ⊕ … ⊕ X_r` (`r ≥ 2`) obtained from one endomorphism.
#[derive(Clone, Debug)]
pub struct Split {
    /// The parts, each with its inclusion into `X`.
    pub parts: Vec<(Arc<GridRep>, GridMorphism)>,
    /// The isomorphism `X_1 ⊕ … ⊕ X_r → X` assembled from the inclusions.
    pub iso: GridMorphism,
}

/// Characteristic polynomial of an endomorphism on the total space.
pub fn endo_charpoly(phi: &GridMorphism) -> Poly {
    let field = phi.source().field();
    let mut acc = Poly::from_ints(field, &[1]);
    for c in phi.comps() {
        if c.rows() > 0 {
            acc = acc.mul(&c.charpoly().expect("square component"));
        }
    }
    acc
}

/// Splits `x` along the distinct irreducible factors of the characteristic
/// polynomial of `φ`: the part for `f^e` is `ker f(φ)^e`. This subsumes the
/// Fitting decomposition `ker φ^N ⊕ im φ^N`. Returns `None` when the
/// characteristic polynomial is a power of a single irreducible.
pub fn fitting_split(x: &Arc<GridRep>, phi: &GridMorphism) -> Result<Option<Split>> {
    if phi.source().as_ref() != x.as_ref() || phi.target().as_ref() != x.as_ref() {
        return Err(Error::Precondition("not an endomorphism of the given representation".into()));
    }
    phi.check()?;
    if x.is_zero() {
        return Ok(None);
    }
    let factors = endo_charpoly(phi).factor();
    if factors.len() < 2 {
        return Ok(None);
    }
    let shape = x.shape();
    let mut parts = Vec::with_capacity(factors.len());
    for (f, e) in &factors {
        let g = f.pow(*e);
        let bases: Vec<Matrix> = shape.vertices().map(|v| phi.comp(v).eval_poly(&g).nullspace()).collect();
        parts.push(subrep(x, bases)?);
    }
    let reps: Vec<Arc<GridRep>> = parts.iter().map(|p| p.0.clone()).collect();
    let ds = direct_sum_all(&reps)?;
    let incls: Vec<GridMorphism> = parts.iter().map(|p| p.1.clone()).collect();
    let iso = morphism_from_sum(&ds, &incls, x.clone());
    debug_assert!(iso.is_iso());
    Ok(Some(Split { parts, iso }))
}

/// Indecomposability certificate of a summand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Certificate {
    /// `End/rad End` is one-dimensional: certified indecomposable.
    Certified,
    /// No split found after `trials` random endomorphisms, but the exact
    /// test was inconclusive.
    Probabilistic {
        /// Number of random endomorphisms tried.
        trials: usize,
    },
}

/// One isomorphism class of summands in a decomposition.
#[derive(Clone, Debug)]
pub struct Summand {
    /// A representative.
    pub rep: Arc<GridRep>,
    /// Multiplicity.
    pub multiplicity: usize,
    /// Indecomposability certificate of the representative.
    pub certificate: Certificate,
}

/// The result of [`decompose`].
#[derive(Clone, Debug)]
pub struct DecompositionReport {
    /// Summands with multiplicities, sorted by total dimension and then
    /// dimension grid.
    pub summands: Vec<Summand>,
    /// The parts found by splitting, before merging, each with its inclusion
    /// into the input; the inclusions assemble to an isomorphism.
    pub parts: Vec<(Arc<GridRep>, GridMorphism)>,
    /// Dimensions of summands (with multiplicity) add up to the input's at
    /// every vertex.
    pub total_dim_check: bool,
    /// The inclusions of the parts assemble to an isomorphism onto the
    /// input, and every merged part was matched to its class representative
    /// by an explicit isomorphism.
    pub sound: bool,
    /// Some pair of parts with equal dimension vectors could not be matched
    /// by the randomized isomorphism search and was kept separate.
    pub merge_probabilistic: bool,
}

impl DecompositionReport {
    /// Number of indecomposable summands counted with multiplicity.
    pub fn num_summands(&self) -> usize {
        self.summands.iter().map(|s| s.multiplicity).sum()
    }

    /// Whether every summand is certified.
    pub fn all_certified(&self) -> bool {
        self.summands.iter().all(|s| s.certificate == Certificate::Certified)
    }

    /// Dimension grids of the summands, repeated by multiplicity, sorted.
    pub fn dim_grids(&self) -> Vec<Vec<Vec<usize>>> {
        let mut out: Vec<Vec<Vec<usize>>> = self
            .summands
            .iter()
            .flat_map(|s| std::iter::repeat_n(s.rep.dim_grid(), s.multiplicity))
            .collect();
        out.sort();
        out
    }
}

/// Options of [`decompose_with`].
#[derive(Clone, Copy, Debug)]
pub struct DecomposeOptions {
    /// Random endomorphisms tried per part after the basis elements.
    pub trials: usize,
    /// Seed of all randomness.
    pub seed: u64,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions { trials: DEFAULT_TRIALS, seed: 0 }
    }
}

/// Tries to split `x` using the given endomorphism basis and random
/// combinations of it.
fn try_split<R: rand::Rng + ?Sized>(
    x: &Arc<GridRep>,
    basis: &[GridMorphism],
    trials: usize,
    rng: &mut R,
) -> Result<Option<Split>> {
    for b in basis {
        if let Some(s) = fitting_split(x, b)? {
            return Ok(Some(s));
        }
    }
    for _ in 0..trials {
        let phi = random_combination(basis, x, x, rng);
        if let Some(s) = fitting_split(x, &phi)? {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// Decomposes `x` into indecomposables with the default options and the
/// given seed.
pub fn decompose(x: &Arc<GridRep>, seed: u64) -> Result<DecompositionReport> {
    decompose_with(x, DecomposeOptions { seed, ..DecomposeOptions::default() })
}

/// Decomposes `x` into indecomposables.
pub fn decompose_with(x: &Arc<GridRep>, opts: DecomposeOptions) -> Result<DecompositionReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut queue: Vec<(Arc<GridRep>, GridMorphism)> = vec![(x.clone(), GridMorphism::identity(x.clone()))];
    let mut done: Vec<(Arc<GridRep>, GridMorphism, Certificate)> = Vec::new();
    while let Some((y, incl)) = queue.pop() {
        if y.is_zero() {
            continue;
        }
        let basis = hom_basis(&y, &y)?;
        if basis.len() == 1 {
            done.push((y, incl, Certificate::Certified));
            continue;
        }
        match try_split(&y, &basis, opts.trials, &mut rng)? {
            Some(split) => {
                for (p, pi) in split.parts {
                    let composite = pi.then(&incl);
                    queue.push((p, composite));
                }
            }
            None => {
                let cert = certify(&y, &basis, opts.trials);
                done.push((y, incl, cert));
            }
        }
    }
    // Soundness of the splitting: the inclusions assemble to an isomorphism.
    let mut sound = if done.is_empty() {
        x.is_zero()
    } else {
        let reps: Vec<Arc<GridRep>> = done.iter().map(|d| d.0.clone()).collect();
        let ds = direct_sum_all(&reps)?;
        let incls: Vec<GridMorphism> = done.iter().map(|d| d.1.clone()).collect();
        morphism_from_sum(&ds, &incls, x.clone()).is_iso()
    };
    // Canonical order of parts, then merge isomorphic ones.
    done.sort_by(|a, b| canonical_key(&a.0).cmp(&canonical_key(&b.0)));
    let mut summands: Vec<Summand> = Vec::new();
    let mut merge_probabilistic = false;
    let mut iso_seed = opts.seed;
    for (rep, _, cert) in &done {
        let mut matched = false;
        for s in summands.iter_mut() {
            if s.rep.dims() != rep.dims() {
                continue;
            }
            iso_seed = iso_seed.wrapping_add(1);
            match is_isomorphic(&s.rep, rep, iso_seed)? {
                IsoOutcome::Isomorphic(f) => {
                    sound &= f.is_iso();
                    s.multiplicity += 1;
                    matched = true;
                    break;
                }
                IsoOutcome::NotIsomorphic => {}
                IsoOutcome::NoIsoFound { .. } => merge_probabilistic = true,
            }
        }
        if !matched {
            summands.push(Summand { rep: rep.clone(), multiplicity: 1, certificate: *cert });
        }
    }
    let total_dim_check = x.shape().vertices().all(|v| {
        summands.iter().map(|s| s.multiplicity * s.rep.dim(v)).sum::<usize>() == x.dim(v)
    });
    let parts = done.into_iter().map(|(r, i, _)| (r, i)).collect();
    Ok(DecompositionReport { summands, parts, total_dim_check, sound, merge_probabilistic })
}

fn canonical_key(x: &GridRep) -> (usize, Vec<Vec<usize>>) {
    (x.total_dim(), x.dim_grid())
}

/// Verdict of [`is_indecomposable`].
#[derive(Clone, Debug)]
pub enum Indecomposability {
    /// `End/rad End` is one-dimensional.
    CertifiedYes,
    /// No split was found after the given number of random trials, but the
    /// exact test was inconclusive.
    ProbableYes {
        /// Number of random endomorphisms tried.
        trials: usize,
    },
    /// A non-trivial splitting, with the endomorphism that produced it.
    No {
        /// The splitting endomorphism.
        witness: GridMorphism,
        /// The splitting.
        split: Split,
    },
}

/// Decides whether `x` is indecomposable, with a certificate or a splitting
/// witness.
pub fn is_indecomposable(x: &Arc<GridRep>, seed: u64) -> Result<Indecomposability> {
    if x.is_zero() {
        return Err(Error::Precondition("the zero representation is not indecomposable".into()));
    }
    let basis = hom_basis(x, x)?;
    if basis.len() == 1 {
        return Ok(Indecomposability::CertifiedYes);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for b in &basis {
        if let Some(split) = fitting_split(x, b)? {
            return Ok(Indecomposability::No { witness: b.clone(), split });
        }
    }
    for _ in 0..DEFAULT_TRIALS {
        let phi = random_combination(&basis, x, x, &mut rng);
        if let Some(split) = fitting_split(x, &phi)? {
            return Ok(Indecomposability::No { witness: phi, split });
        }
    }
    Ok(match certify(x, &basis, DEFAULT_TRIALS) {
        Certificate::Certified => Indecomposability::CertifiedYes,
        Certificate::Probabilistic { trials } => Indecomposability::ProbableYes { trials },
    })
}

/// Exact local-ness test: `Certified` iff `End(X)/rad End(X)` is shown to be
/// one-dimensional.
fn certify(x: &GridRep, basis: &[GridMorphism], trials: usize) -> Certificate {
    let field = x.field();
    let trace_form_valid = match field {
        Field::Rationals => true,
        Field::PrimeField { p } => (p as usize) > x.total_dim(),
    };
    let ok = if trace_form_valid {
        trace_form_rank(basis) == 1
    } else {
        nilpotent_ideal_of_codim_one(x, basis)
    };
    if ok {
        Certificate::Certified
    } else {
        Certificate::Probabilistic { trials }
    }
}

fn total_trace(f: &GridMorphism) -> Scalar {
    let field = f.source().field();
    f.comps().iter().filter(|c| c.rows() > 0).fold(Scalar::zero(field), |acc, c| acc.add(&c.trace()))
}

/// Rank of the Gram matrix of `(a, b) ↦ tr(ab)` on `End(X)`, i.e. the
/// dimension of `End/rad End` where the trace-form criterion is valid.
fn trace_form_rank(basis: &[GridMorphism]) -> usize {
    let field = basis[0].source().field();
    let k = basis.len();
    let gram = Matrix::from_fn(field, k, k, |a, b| total_trace(&basis[b].then(&basis[a])));
    gram.rank()
}

/// The characteristic-free test: each basis element must have a single
/// eigenvalue `λ_k ∈ k` (over all vertices); `N = span{b_k − λ_k·1}` must
/// have codimension one in `End(X)`, be closed under multiplication, and be
/// nilpotent. Then `N` is a nilpotent ideal with `End/N = k`, so `N` is
/// the radical and `X` is indecomposable.
fn nilpotent_ideal_of_codim_one(x: &GridRep, basis: &[GridMorphism]) -> bool {
    local_radical(x, basis).is_some()
}

/// A basis of the radical of `End(X)` when `End(X)/rad = k`, found as in
/// [`nilpotent_ideal_of_codim_one`]; `None` when that test fails.
pub(crate) fn local_radical(x: &GridRep, basis: &[GridMorphism]) -> Option<Vec<GridMorphism>> {
    let field = x.field();
    let id = GridMorphism::identity(Arc::new(x.clone()));
    let mut nbasis = Vec::with_capacity(basis.len());
    for b in basis {
        let factors = endo_charpoly(b).factor();
        if factors.len() != 1 || factors[0].0.degree() != Some(1) {
            return None;
        }
        // Monic x − λ: λ = −(constant term).
        let lambda = factors[0].0.coeffs()[0].neg();
        nbasis.push(b.sub(&id.with_endpoints(b.source().clone(), b.target().clone()).scale(&lambda)));
    }
    let span = nbasis.iter().map(GridMorphism::to_vector).fold(Matrix::zeros(field, id.to_vector().rows(), 0), |m, c| m.hstack(&c));
    let n_basis_cols = span.column_basis();
    if n_basis_cols.cols() + 1 != basis.len() {
        return None;
    }
    let nb: Vec<GridMorphism> = span.rref().pivots.iter().map(|&k| nbasis[k].clone()).collect();
    // Powers N^j: spans of products, until zero (nilpotent) or stuck.
    let mut power = nb.clone();
    for _ in 0..=x.total_dim() {
        let mut prods = Vec::new();
        for a in &power {
            for b in &nb {
                prods.push(b.then(a));
            }
        }
        // Closure: every product lies in N.
        for p in &prods {
            let v = p.to_vector();
            if n_basis_cols.solve(&v).ok().flatten().is_none() {
                return None;
            }
        }
        let cols = prods.iter().map(GridMorphism::to_vector).fold(Matrix::zeros(field, n_basis_cols.rows(), 0), |m, c| m.hstack(&c));
        if cols.cols() == 0 || cols.is_zero() {
            return Some(nb);
        }
        let piv = cols.rref().pivots;
        power = piv.iter().map(|&k| prods[k].clone()).collect();
    }
    None
}
