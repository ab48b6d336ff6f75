//! Machine checks of the axioms of torsion pairs, cotorsion pairs, tilting
//! sets and cotorsion torsion triples over a complete list of
//! indecomposables.
//!
//! Subcategories are handled extensionally: a class is the set of
//! indecomposables of the universe satisfying its predicate, closed under
//! finite direct sums (and so automatically under summands). Every failed
//! check carries a concrete witness that can be re-verified on its own.

mod approx;

use std::sync::Arc;

use rayon::prelude::*;

pub use approx::{left_approximation, right_approximation, Approximation};

use crate::decomposition::decompose;
use crate::error::{Error, Result};
use crate::grid::{projective, GridMorphism, GridRep, GridShape};
use crate::hom::{ext_dim, ext_dims, hom_basis, hom_dim, is_isomorphic, minimal_presentation, IsoOutcome};
use crate::knitting::ARQuiver;
use crate::linalg::Field;
use crate::torsion::{trace_sequence, Class, TripleKind, TriplePreset};

/// The largest universe the verifiers accept (the Hom and Ext tables are
/// quadratic in its size).
pub const UNIVERSE_CAP: usize = 500;

/// A complete list of pairwise non-isomorphic indecomposables of a grid.
#[derive(Clone, Debug)]
pub struct Universe {
    /// The grid.
    pub shape: GridShape,
    /// The field.
    pub field: Field,
    /// The indecomposables.
    pub indecs: Vec<Arc<GridRep>>,
    /// A short description used in reports.
    pub description: String,
    /// Whether the list is asserted to contain every indecomposable.
    pub complete: bool,
}

impl Universe {
    /// A universe from an explicit list, which the caller asserts to be
    /// complete.
    pub fn new(shape: GridShape, field: Field, indecs: Vec<Arc<GridRep>>, description: String) -> Result<Universe> {
        if indecs.len() > UNIVERSE_CAP {
            return Err(Error::Precondition(format!(
                "universe of {} indecomposables exceeds the cap of {UNIVERSE_CAP}",
                indecs.len()
            )));
        }
        for x in &indecs {
            if x.shape() != shape || x.field() != field {
                return Err(Error::ShapeMismatch("universe member of a different grid or field".into()));
            }
        }
        Ok(Universe { shape, field, indecs, description, complete: true })
    }

    /// A universe that is only a sample of the indecomposables (for grids
    /// of infinite type). Only [`verify_tilting`] accepts it: its conditions
    /// quantify over the generators and projectives, and the approximation
    /// condition is then checked on the sample.
    pub fn sample(shape: GridShape, field: Field, indecs: Vec<Arc<GridRep>>, description: String) -> Result<Universe> {
        let mut u = Universe::new(shape, field, indecs, description)?;
        u.complete = false;
        Ok(u)
    }

    fn require_complete(&self) -> Result<()> {
        if self.complete {
            Ok(())
        } else {
            Err(Error::Precondition(format!("{} is not a complete list of indecomposables", self.description)))
        }
    }

    /// The universe of a complete AR quiver.
    pub fn from_quiver(ar: &ARQuiver) -> Result<Universe> {
        if !ar.is_complete() {
            return Err(Error::Precondition("the indecomposable list is incomplete (knitting hit its cap)".into()));
        }
        let indecs = ar.vertices.iter().map(|v| v.rep.clone()).collect();
        let description = format!("all {} indecomposables of the {}×{} grid", ar.vertices.len(), ar.shape.m, ar.shape.n);
        Universe::new(ar.shape, ar.field, indecs, description)
    }

    /// Indices of the members of a class.
    pub fn members(&self, class: &Class) -> Result<Vec<usize>> {
        let flags: Vec<Result<bool>> = self.indecs.par_iter().map(|x| class.contains(x)).collect();
        let mut out = Vec::new();
        for (k, f) in flags.into_iter().enumerate() {
            if f? {
                out.push(k);
            }
        }
        Ok(out)
    }

    /// The index of the indecomposable isomorphic to `x`.
    pub fn find(&self, x: &Arc<GridRep>) -> Result<Option<usize>> {
        for (k, y) in self.indecs.iter().enumerate() {
            if y.dims() == x.dims() {
                if let IsoOutcome::Isomorphic(_) = is_isomorphic(y, x, k as u64)? {
                    return Ok(Some(k));
                }
            }
        }
        Ok(None)
    }

    /// The indices of the indecomposable summands of `x`, with repetition.
    /// Errors if a summand is missing from the universe.
    pub fn summand_indices(&self, x: &Arc<GridRep>) -> Result<Vec<usize>> {
        if x.is_zero() {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for s in decompose(x, 0)?.summands {
            let k = self.find(&s.rep)?.ok_or_else(|| {
                Error::Precondition(format!("summand {:?} is not in the universe", s.rep.dim_grid()))
            })?;
            out.extend(std::iter::repeat_n(k, s.multiplicity));
        }
        Ok(out)
    }

    /// Whether `x` lies in `add` of the given members.
    pub fn in_add(&self, x: &Arc<GridRep>, members: &[usize]) -> Result<bool> {
        Ok(self.summand_indices(x)?.iter().all(|k| members.contains(k)))
    }

    fn reps(&self, idx: &[usize]) -> Vec<Arc<GridRep>> {
        idx.iter().map(|&k| self.indecs[k].clone()).collect()
    }
}

/// A concrete counterexample.
#[derive(Clone, Debug)]
pub enum Witness {
    /// A non-zero morphism between objects that should be orthogonal.
    NonzeroMorphism {
        /// The morphism.
        morphism: GridMorphism,
    },
    /// A non-split extension `0 → sub → E → quotient → 0` in degree
    /// `degree`.
    NonSplitExtension {
        /// The quotient (first argument of `Ext`).
        quotient: Arc<GridRep>,
        /// The sub-object (second argument of `Ext`).
        sub: Arc<GridRep>,
        /// The degree of the non-vanishing `Ext`.
        degree: usize,
        /// Its dimension.
        ext_dim: usize,
    },
    /// An object violating a membership or existence condition.
    Object {
        /// The object.
        rep: Arc<GridRep>,
        /// What goes wrong.
        reason: String,
    },
}

impl Witness {
    /// Re-checks the witness independently: the morphism is a valid
    /// non-zero morphism, or the extension group is non-zero. Object
    /// witnesses carry no independently checkable payload and re-verify
    /// trivially.
    pub fn reverify(&self) -> Result<bool> {
        match self {
            Witness::NonzeroMorphism { morphism } => Ok(morphism.check().is_ok() && !morphism.is_zero()),
            Witness::NonSplitExtension { quotient, sub, degree, .. } => Ok(ext_dim(quotient, sub, *degree)? >= 1),
            Witness::Object { .. } => Ok(true),
        }
    }
}

/// The outcome of one axiom.
#[derive(Clone, Debug)]
pub struct AxiomCheck {
    /// The axiom checked.
    pub axiom: String,
    /// The universe it was checked over.
    pub universe: String,
    /// Whether it holds.
    pub passed: bool,
    /// A counterexample when it fails.
    pub witness: Option<Witness>,
    /// What was checked (counts).
    pub detail: String,
}

/// The outcome of a verifier.
#[derive(Clone, Debug, Default)]
pub struct AxiomReport {
    /// The individual checks, in order.
    pub checks: Vec<AxiomCheck>,
    /// Whether every check passed.
    pub overall: bool,
}

impl AxiomReport {
    fn new() -> AxiomReport {
        AxiomReport { checks: Vec::new(), overall: true }
    }

    fn push(&mut self, u: &Universe, axiom: impl Into<String>, detail: String, witness: Option<Witness>) {
        let passed = witness.is_none();
        self.overall &= passed;
        self.checks.push(AxiomCheck { axiom: axiom.into(), universe: u.description.clone(), passed, witness, detail });
    }

    fn absorb(&mut self, prefix: &str, other: AxiomReport) {
        self.overall &= other.overall;
        for mut c in other.checks {
            c.axiom = format!("{prefix}{}", c.axiom);
            self.checks.push(c);
        }
    }

    /// The failed checks.
    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// The check with the given axiom name.
    pub fn check(&self, axiom: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }
}

/// The first pair `(a, b)` from the lists with a non-zero morphism `a → b`.
fn hom_witness(u: &Universe, from: &[usize], to: &[usize]) -> Result<Option<Witness>> {
    let pairs: Vec<(usize, usize)> = from.iter().flat_map(|&a| to.iter().map(move |&b| (a, b))).collect();
    let found: Vec<Result<Option<GridMorphism>>> = pairs
        .par_iter()
        .map(|&(a, b)| Ok(hom_basis(&u.indecs[a], &u.indecs[b])?.into_iter().next()))
        .collect();
    for f in found {
        if let Some(morphism) = f? {
            return Ok(Some(Witness::NonzeroMorphism { morphism }));
        }
    }
    Ok(None)
}

/// The first degree `k ≥ 1` with `Ext^k(a, b) ≠ 0` (only `k = 1` unless
/// `strict`), with its dimension.
fn ext_obstruction(a: &Arc<GridRep>, b: &GridRep, strict: bool) -> Result<Option<(usize, usize)>> {
    if !strict {
        let d = ext_dim(a, b, 1)?;
        return Ok((d > 0).then_some((1, d)));
    }
    Ok(ext_dims(a, b)?.into_iter().enumerate().skip(1).find(|&(_, d)| d > 0))
}

fn ext_witness(u: &Universe, from: &[usize], to: &[usize], strict: bool) -> Result<Option<Witness>> {
    let pairs: Vec<(usize, usize)> = from.iter().flat_map(|&a| to.iter().map(move |&b| (a, b))).collect();
    let found: Vec<Result<Option<(usize, usize)>>> =
        pairs.par_iter().map(|&(a, b)| ext_obstruction(&u.indecs[a], &u.indecs[b], strict)).collect();
    for ((a, b), f) in pairs.into_iter().zip(found) {
        if let Some((degree, ext_dim)) = f? {
            return Ok(Some(Witness::NonSplitExtension {
                quotient: u.indecs[a].clone(),
                sub: u.indecs[b].clone(),
                degree,
                ext_dim,
            }));
        }
    }
    Ok(None)
}

/// Compares a member list with the computed perpendicular class.
fn equality_witness(u: &Universe, claimed: &[usize], computed: &[usize], what: &str) -> Option<Witness> {
    for k in 0..u.indecs.len() {
        let (a, b) = (claimed.contains(&k), computed.contains(&k));
        if a != b {
            let reason = if a {
                format!("in the class but not in {what}")
            } else {
                format!("in {what} but not in the class")
            };
            return Some(Witness::Object { rep: u.indecs[k].clone(), reason });
        }
    }
    None
}

/// The indecomposables `X` with `Hom(X, list) = 0` (`left = true`) or
/// `Hom(list, X) = 0`.
fn hom_perp(u: &Universe, list: &[usize], left: bool) -> Result<Vec<usize>> {
    let flags: Vec<Result<bool>> = (0..u.indecs.len())
        .into_par_iter()
        .map(|x| {
            for &l in list {
                let d = if left { hom_dim(&u.indecs[x], &u.indecs[l])? } else { hom_dim(&u.indecs[l], &u.indecs[x])? };
                if d != 0 {
                    return Ok(false);
                }
            }
            Ok(true)
        })
        .collect();
    collect_flags(flags)
}

/// The indecomposables `X` with `Ext(X, list) = 0` (`left = true`) or
/// `Ext(list, X) = 0`, in degree one or (strict) in every positive degree.
fn ext_perp(u: &Universe, list: &[usize], left: bool, strict: bool) -> Result<Vec<usize>> {
    let flags: Vec<Result<bool>> = (0..u.indecs.len())
        .into_par_iter()
        .map(|x| {
            for &l in list {
                let obstruction = if left {
                    ext_obstruction(&u.indecs[x], &u.indecs[l], strict)?
                } else {
                    ext_obstruction(&u.indecs[l], &u.indecs[x], strict)?
                };
                if obstruction.is_some() {
                    return Ok(false);
                }
            }
            Ok(true)
        })
        .collect();
    collect_flags(flags)
}

fn collect_flags(flags: Vec<Result<bool>>) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (k, f) in flags.into_iter().enumerate() {
        if f? {
            out.push(k);
        }
    }
    Ok(out)
}

/// Checks that `(T, F)` is a torsion pair: `Hom(T, F) = 0`; every
/// indecomposable `A` has a sequence `tA ↪ A ↠ fA` with `tA ∈ add T` and
/// `fA ∈ add F` (with `tA` the trace of `T` in `A`); and `F = T^⊥`,
/// `T = ⊥F`.
pub fn verify_torsion_pair(u: &Universe, t: &Class, f: &Class) -> Result<AxiomReport> {
    u.require_complete()?;
    let tm = u.members(t)?;
    let fm = u.members(f)?;
    verify_torsion_members(u, &tm, &fm)
}

fn verify_torsion_members(u: &Universe, tm: &[usize], fm: &[usize]) -> Result<AxiomReport> {
    let mut r = AxiomReport::new();
    let detail = format!("{} × {} pairs", tm.len(), fm.len());
    r.push(u, "Hom(T, F) = 0", detail, hom_witness(u, tm, fm)?);

    let treps = u.reps(tm);
    let outcomes: Vec<Result<Option<String>>> = u
        .indecs
        .par_iter()
        .map(|a| {
            let seq = trace_sequence(a, &treps)?;
            if !seq.is_exact() {
                return Ok(Some("trace sequence is not exact".into()));
            }
            if !u.in_add(&seq.left, tm)? {
                return Ok(Some(format!("torsion part {:?} is not in T", seq.left.dim_grid())));
            }
            if !u.in_add(&seq.right, fm)? {
                return Ok(Some(format!("quotient {:?} by the trace of T is not in F", seq.right.dim_grid())));
            }
            Ok(None)
        })
        .collect();
    let mut witness = None;
    for (k, o) in outcomes.into_iter().enumerate() {
        if let Some(reason) = o? {
            witness = Some(Witness::Object { rep: u.indecs[k].clone(), reason });
            break;
        }
    }
    r.push(u, "torsion sequences tA ↪ A ↠ fA", format!("{} objects", u.indecs.len()), witness);

    let right = hom_perp(u, tm, false)?;
    r.push(u, "F = T^⊥", format!("{} members", fm.len()), equality_witness(u, fm, &right, "T^⊥"));
    let left = hom_perp(u, fm, true)?;
    r.push(u, "T = ⊥F", format!("{} members", tm.len()), equality_witness(u, tm, &left, "⊥F"));
    Ok(r)
}

/// Checks that `(C, D)` is a cotorsion pair: `Ext¹(C, D) = 0`;
/// `C = ⊥1 D` and `D = C^⊥1`; and every indecomposable `A` has sequences
/// `dA ↪ cA ↠ A` and `A ↪ d̃A ↠ c̃A` with `cA, c̃A ∈ add C` and
/// `dA, d̃A ∈ add D`, built from minimal approximations. With `strict`,
/// the orthogonality conditions use `Ext^i` for all `i ≥ 1`.
pub fn verify_cotorsion_pair(u: &Universe, c: &Class, d: &Class, strict: bool) -> Result<AxiomReport> {
    u.require_complete()?;
    let cm = u.members(c)?;
    let dm = u.members(d)?;
    verify_cotorsion_members(u, &cm, &dm, strict)
}

fn verify_cotorsion_members(u: &Universe, cm: &[usize], dm: &[usize], strict: bool) -> Result<AxiomReport> {
    let mut r = AxiomReport::new();
    let ext = if strict { "Ext^{≥1}" } else { "Ext¹" };
    let detail = format!("{} × {} pairs", cm.len(), dm.len());
    r.push(u, format!("{ext}(C, D) = 0"), detail, ext_witness(u, cm, dm, strict)?);
    let left = ext_perp(u, dm, true, strict)?;
    r.push(u, "C = ⊥1 D", format!("{} members", cm.len()), equality_witness(u, cm, &left, "⊥1 D"));
    let right = ext_perp(u, cm, false, strict)?;
    r.push(u, "D = C^⊥1", format!("{} members", dm.len()), equality_witness(u, dm, &right, "C^⊥1"));

    let creps = u.reps(cm);
    let dreps = u.reps(dm);
    let covers: Vec<Result<Option<String>>> = u
        .indecs
        .par_iter()
        .map(|a| {
            let ap = right_approximation(a, &creps)?;
            if !ap.map.is_epi() {
                return Ok(Some("the minimal right C-approximation is not surjective".into()));
            }
            let seq = ap.kernel_sequence();
            if !u.in_add(&seq.left, dm)? {
                return Ok(Some(format!("kernel {:?} of the C-approximation is not in D", seq.left.dim_grid())));
            }
            Ok(None)
        })
        .collect();
    r.push(u, "cover sequences dA ↪ cA ↠ A", format!("{} objects", u.indecs.len()), first_object(u, covers)?);
    let envelopes: Vec<Result<Option<String>>> = u
        .indecs
        .par_iter()
        .map(|a| {
            let ap = left_approximation(a, &dreps)?;
            if !ap.map.is_mono() {
                return Ok(Some("the minimal left D-approximation is not injective".into()));
            }
            let seq = ap.cokernel_sequence();
            if !u.in_add(&seq.right, cm)? {
                return Ok(Some(format!("cokernel {:?} of the D-approximation is not in C", seq.right.dim_grid())));
            }
            Ok(None)
        })
        .collect();
    r.push(u, "envelope sequences A ↪ d̃A ↠ c̃A", format!("{} objects", u.indecs.len()), first_object(u, envelopes)?);
    Ok(r)
}

fn first_object(u: &Universe, outcomes: Vec<Result<Option<String>>>) -> Result<Option<Witness>> {
    for (k, o) in outcomes.into_iter().enumerate() {
        if let Some(reason) = o? {
            return Ok(Some(Witness::Object { rep: u.indecs[k].clone(), reason }));
        }
    }
    Ok(None)
}

/// Checks that the generators form a tilting set: (1) `Ext¹(𝕋, 𝕋) = 0`;
/// (2) every generator has projective dimension at most one; (3) every
/// standard projective `P` has a coresolution `P ↪ T⁰ ↠ T¹` with
/// `T⁰, T¹ ∈ add 𝕋` (from the minimal left `add 𝕋`-approximation of `P`);
/// (4) every indecomposable has a right `add 𝕋`-approximation (the
/// evaluation map, checked by the rank condition).
pub fn verify_tilting(u: &Universe, gens: &[Arc<GridRep>]) -> Result<AxiomReport> {
    for g in gens {
        if g.shape() != u.shape || g.field() != u.field {
            return Err(Error::ShapeMismatch("generator of a different grid or field".into()));
        }
    }
    let mut r = AxiomReport::new();
    let add = Class::AddOf(gens.to_vec());
    let mut ext = None;
    'outer: for a in gens {
        for b in gens {
            if let Some((degree, ext_dim)) = ext_obstruction(a, b, false)? {
                ext = Some(Witness::NonSplitExtension { quotient: a.clone(), sub: b.clone(), degree, ext_dim });
                break 'outer;
            }
        }
    }
    r.push(u, "(1) Ext¹(𝕋, 𝕋) = 0", format!("{} × {} pairs", gens.len(), gens.len()), ext);

    let mut pd = None;
    for g in gens {
        if !minimal_presentation(g).d.is_mono() {
            pd = Some(Witness::Object { rep: g.clone(), reason: "projective dimension greater than one".into() });
            break;
        }
    }
    r.push(u, "(2) pdim 𝕋 ≤ 1", format!("{} generators", gens.len()), pd);

    let mut orphan = None;
    for v in u.shape.vertices() {
        let p = Arc::new(projective(u.shape, v, u.field));
        let ap = left_approximation(&p, gens)?;
        let ok = ap.map.is_mono() && add.contains(&ap.cokernel_sequence().right)?;
        if !ok {
            orphan = Some(Witness::Object {
                rep: p,
                reason: format!("projective P_({}, {}) has no two-term 𝕋-coresolution", v.0, v.1),
            });
            break;
        }
    }
    r.push(u, "(3) projectives are 𝕋-coresolved", format!("{} projectives", u.shape.num_vertices()), orphan);

    let outcomes: Vec<Result<Option<String>>> = u
        .indecs
        .par_iter()
        .map(|a| {
            let ap = right_approximation(a, gens)?;
            Ok((!ap.is_right_approximation(gens)?).then(|| "evaluation map is not a right approximation".into()))
        })
        .collect();
    r.push(u, "(4) right 𝕋-approximations exist", format!("{} objects", u.indecs.len()), first_object(u, outcomes)?);
    Ok(r)
}

/// Checks a triple of classes. For `(C, T, F)`: `(C, T)` is a cotorsion
/// pair, `(T, F)` is a torsion pair, `C ∩ T` is `add` of the generators
/// (when given), `T = Fac(C ∩ T)` and `F = (C ∩ T)^⊥`. For `(T, F, D)`:
/// `(T, F)` is a torsion pair, `(F, D)` a cotorsion pair, `F ∩ D` is `add`
/// of the generators, `F = Sub(F ∩ D)` and `T = ⊥(F ∩ D)`.
pub fn verify_triple_classes(
    u: &Universe,
    kind: TripleKind,
    classes: &[Class; 3],
    generators: Option<&[Arc<GridRep>]>,
    strict: bool,
) -> Result<AxiomReport> {
    u.require_complete()?;
    let m0 = u.members(&classes[0])?;
    let m1 = u.members(&classes[1])?;
    let m2 = u.members(&classes[2])?;
    let mut r = AxiomReport::new();
    let (cot, tor, inter) = match kind {
        TripleKind::CotorsionTorsion => {
            (("cotorsion pair (C, T): ", &m0, &m1), ("torsion pair (T, F): ", &m1, &m2), intersect(&m0, &m1))
        }
        TripleKind::TorsionCotorsion => {
            (("cotorsion pair (F, D): ", &m1, &m2), ("torsion pair (T, F): ", &m0, &m1), intersect(&m1, &m2))
        }
    };
    r.absorb(cot.0, verify_cotorsion_members(u, cot.1, cot.2, strict)?);
    r.absorb(tor.0, verify_torsion_members(u, tor.1, tor.2)?);

    let name = match kind {
        TripleKind::CotorsionTorsion => "C ∩ T",
        TripleKind::TorsionCotorsion => "F ∩ D",
    };
    if let Some(gens) = generators {
        let mut gm = Vec::new();
        let mut missing = None;
        for g in gens {
            match u.find(g)? {
                Some(k) => gm.push(k),
                None => {
                    missing = Some(Witness::Object { rep: g.clone(), reason: "generator is not in the universe".into() })
                }
            }
        }
        gm.sort_unstable();
        gm.dedup();
        let w = missing.or_else(|| equality_witness(u, &inter, &gm, "add of the generators"));
        r.push(u, format!("{name} = add of the generators"), format!("{} members", inter.len()), w);
    }
    let ireps = u.reps(&inter);
    match kind {
        TripleKind::CotorsionTorsion => {
            let fac = u.members(&Class::Fac(ireps.clone()))?;
            r.push(u, "T = Fac(C ∩ T)", format!("{} members", m1.len()), equality_witness(u, &m1, &fac, "Fac(C ∩ T)"));
            let perp = hom_perp(u, &inter, false)?;
            r.push(u, "F = (C ∩ T)^⊥", format!("{} members", m2.len()), equality_witness(u, &m2, &perp, "(C ∩ T)^⊥"));
        }
        TripleKind::TorsionCotorsion => {
            let sub = u.members(&Class::Sub(ireps.clone()))?;
            r.push(u, "F = Sub(F ∩ D)", format!("{} members", m1.len()), equality_witness(u, &m1, &sub, "Sub(F ∩ D)"));
            let perp = hom_perp(u, &inter, true)?;
            r.push(u, "T = ⊥(F ∩ D)", format!("{} members", m0.len()), equality_witness(u, &m0, &perp, "⊥(F ∩ D)"));
        }
    }
    Ok(r)
}

/// Checks a named triple over a universe of the same grid.
pub fn verify_triple(u: &Universe, preset: &TriplePreset, strict: bool) -> Result<AxiomReport> {
    if preset.shape != u.shape || preset.field != u.field {
        return Err(Error::ShapeMismatch("preset and universe are on different grids or fields".into()));
    }
    verify_triple_classes(u, preset.kind, &preset.classes, Some(&preset.generators), strict)
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|k| b.contains(k)).collect()
}
