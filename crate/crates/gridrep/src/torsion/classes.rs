//! Subcategory membership predicates and the named cotorsion torsion
//! triples of grid representations.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::functors::{cotorsion_cover, torsion_torsionfree};
use super::sequence::ApproximationSequence;
use super::tilting::{
    cotilting_cover, cotilting_envelope, reject_sequence, trace_sequence, universal_extension,
};
use crate::decomposition::decompose;
use crate::error::{Error, Result};
use crate::grid::{projective, thin_module, ConvexMask, Direction, GridRep, GridShape};
use crate::hom::{ext_dim, hom_dim, is_isomorphic, IsoOutcome};
use crate::linalg::Field;

/// The rectangle thin modules `k_{{1..i}×{j..n}}` (all `i`, `j`): the
/// indecomposables with horizontal maps epi and vertical maps mono.
pub fn rectangles(shape: GridShape, field: Field) -> Vec<Arc<GridRep>> {
    let mut out = Vec::new();
    for j in 1..=shape.n {
        for i in 1..=shape.m {
            let mask = ConvexMask::rectangle(shape, (1, i), (j, shape.n));
            out.push(Arc::new(thin_module(&mask, field).expect("rectangles are convex")));
        }
    }
    out
}

/// The module `T_{i,j} = k_{{(x, y) | x > i or y > j}}`.
pub fn t_ij(shape: GridShape, i: usize, j: usize, field: Field) -> GridRep {
    let mask = ConvexMask::from_fn(shape, |(x, y)| x > i || y > j);
    thin_module(&mask, field).expect("up-sets are convex")
}

/// The tilting generators of the mono-mono triple: `T_{i,j}` for
/// `1 ≤ i ≤ m`, `1 ≤ j ≤ n`, `(i, j) ≠ (m, n)`, together with `P_{1,1}`
/// (which is `T_{0,j}` and `T_{i,0}`).
pub fn t_ij_generators(shape: GridShape, field: Field) -> Vec<Arc<GridRep>> {
    let mut out = vec![Arc::new(projective(shape, (1, 1), field))];
    for j in 1..=shape.n {
        for i in 1..=shape.m {
            if (i, j) != (shape.m, shape.n) {
                out.push(Arc::new(t_ij(shape, i, j, field)));
            }
        }
    }
    out
}

/// A full subcategory of grid representations, given by a decidable
/// membership test.
#[derive(Clone, Debug)]
pub enum Class {
    /// Every representation.
    All,
    /// Only the zero representation.
    Zero,
    /// All maps in the direction are epimorphisms.
    Epi(Direction),
    /// All maps in the direction are monomorphisms.
    Mono(Direction),
    /// `rep^{e,*}`: horizontal maps epi.
    EpiStar,
    /// `rep^{e,m}`: horizontal maps epi and vertical maps mono.
    EpiMono,
    /// `rep^{m,m}`: all maps mono.
    MonoMono,
    /// `rep^{e,e}`: all maps epi.
    EpiEpi,
    /// The first slice perpendicular to the direction vanishes (the first
    /// column for horizontal, the first row for vertical).
    FirstSliceZero(Direction),
    /// The last slice perpendicular to the direction vanishes.
    LastSliceZero(Direction),
    /// The first row and the first column vanish.
    FirstRowAndColumnZero,
    /// The last row and the last column vanish.
    LastRowAndColumnZero,
    /// Direct sums of rectangle thin modules `k_{{1..i}×{j..n}}`.
    Rectangles,
    /// Direct sums of the mono-mono tilting generators `T_{i,j}` and `P_{1,1}`.
    TijClass,
    /// Direct sums of copies of the listed indecomposables.
    AddOf(Vec<Arc<GridRep>>),
    /// Quotients of direct sums of the listed representations (trace test).
    Fac(Vec<Arc<GridRep>>),
    /// Subobjects of direct sums of the listed representations (reject test).
    Sub(Vec<Arc<GridRep>>),
    /// `𝒳^⊥`: no non-zero morphisms from the listed representations.
    HomRightPerp(Vec<Arc<GridRep>>),
    /// `⊥𝒳`: no non-zero morphisms into the listed representations.
    HomLeftPerp(Vec<Arc<GridRep>>),
    /// `𝒳^{⊥1}`: `Ext¹` from the listed representations vanishes.
    ExtRightPerp(Vec<Arc<GridRep>>),
    /// `⊥1𝒳`: `Ext¹` into the listed representations vanishes.
    ExtLeftPerp(Vec<Arc<GridRep>>),
    /// Intersection of classes.
    And(Vec<Class>),
}

fn slice_zero(x: &GridRep, dir: Direction, k: usize) -> bool {
    x.shape().vertices().all(|(i, j)| {
        let c = match dir {
            Direction::Horizontal => i,
            Direction::Vertical => j,
        };
        c != k || x.dim((i, j)) == 0
    })
}

/// Every indecomposable summand of `x` is isomorphic to one of `list`.
fn summands_in(x: &Arc<GridRep>, list: &[Arc<GridRep>]) -> Result<bool> {
    if x.is_zero() {
        return Ok(true);
    }
    let report = decompose(x, 0)?;
    for s in &report.summands {
        let mut found = false;
        for c in list.iter().filter(|c| c.dims() == s.rep.dims()) {
            if let IsoOutcome::Isomorphic(_) = is_isomorphic(&s.rep, c, 0)? {
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

impl Class {
    /// Whether `x` belongs to the class.
    pub fn contains(&self, x: &Arc<GridRep>) -> Result<bool> {
        let flags = x.direction_flags();
        Ok(match self {
            Class::All => true,
            Class::Zero => x.is_zero(),
            Class::Epi(d) => flags.epi(*d),
            Class::Mono(d) => flags.mono(*d),
            Class::EpiStar => flags.all_horizontal_epi,
            Class::EpiMono => flags.all_horizontal_epi && flags.all_vertical_mono,
            Class::MonoMono => flags.all_horizontal_mono && flags.all_vertical_mono,
            Class::EpiEpi => flags.all_horizontal_epi && flags.all_vertical_epi,
            Class::FirstSliceZero(d) => slice_zero(x, *d, 1),
            Class::LastSliceZero(d) => {
                let s = x.shape();
                let last = match d {
                    Direction::Horizontal => s.m,
                    Direction::Vertical => s.n,
                };
                slice_zero(x, *d, last)
            }
            Class::FirstRowAndColumnZero => {
                slice_zero(x, Direction::Horizontal, 1) && slice_zero(x, Direction::Vertical, 1)
            }
            Class::LastRowAndColumnZero => {
                let s = x.shape();
                slice_zero(x, Direction::Horizontal, s.m) && slice_zero(x, Direction::Vertical, s.n)
            }
            Class::Rectangles => summands_in(x, &rectangles(x.shape(), x.field()))?,
            Class::TijClass => summands_in(x, &t_ij_generators(x.shape(), x.field()))?,
            Class::AddOf(list) => summands_in(x, list)?,
            Class::Fac(gens) => trace_sequence(x, gens)?.right.is_zero(),
            Class::Sub(cogens) => reject_sequence(x, cogens)?.left.is_zero(),
            Class::HomRightPerp(list) => {
                for g in list {
                    if hom_dim(g, x)? != 0 {
                        return Ok(false);
                    }
                }
                true
            }
            Class::HomLeftPerp(list) => {
                for g in list {
                    if hom_dim(x, g)? != 0 {
                        return Ok(false);
                    }
                }
                true
            }
            Class::ExtRightPerp(list) => {
                for g in list {
                    if ext_dim(g, x, 1)? != 0 {
                        return Ok(false);
                    }
                }
                true
            }
            Class::ExtLeftPerp(list) => {
                for g in list {
                    if ext_dim(x, g, 1)? != 0 {
                        return Ok(false);
                    }
                }
                true
            }
            Class::And(parts) => {
                for p in parts {
                    if !p.contains(x)? {
                        return Ok(false);
                    }
                }
                true
            }
        })
    }

    /// Parses a named class: `all`, `zero`, `epistar`, `epimono`,
    /// `monomono`, `epiepi`, `rectangles`, `tij`, `epi-h`, `epi-v`,
    /// `mono-h`, `mono-v`, `first-column-zero`, `first-row-zero`.
    pub fn named(name: &str) -> Result<Class> {
        Ok(match name.to_ascii_lowercase().as_str() {
            "all" => Class::All,
            "zero" => Class::Zero,
            "epistar" => Class::EpiStar,
            "epimono" => Class::EpiMono,
            "monomono" => Class::MonoMono,
            "epiepi" => Class::EpiEpi,
            "rectangles" => Class::Rectangles,
            "tij" => Class::TijClass,
            "epi-h" => Class::Epi(Direction::Horizontal),
            "epi-v" => Class::Epi(Direction::Vertical),
            "mono-h" => Class::Mono(Direction::Horizontal),
            "mono-v" => Class::Mono(Direction::Vertical),
            "first-column-zero" => Class::FirstSliceZero(Direction::Horizontal),
            "first-row-zero" => Class::FirstSliceZero(Direction::Vertical),
            other => return Err(Error::Parse(format!("unknown class name '{other}'"))),
        })
    }
}

/// The named triples.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PresetName {
    /// Slices along the horizontal direction: `C` = vertical maps mono
    /// (columns projective), `T` = horizontal maps epi, `F` = first column
    /// zero, generated by the rectangles `k_{{1..i}×{j..n}}`.
    EpiStar,
    /// The transpose of [`PresetName::EpiStar`]: `C` = horizontal maps
    /// mono, `T` = vertical maps epi, `F` = first row zero.
    MonoStar,
    /// The torsion cotorsion triple dual to [`PresetName::MonoMono`]:
    /// `T` = last row and column zero, `F` = `Sub ℂ`, `D` = `rep^{e,e}`,
    /// cogenerated by the duals of the `T_{i,j}`.
    EpiEpi,
    /// `C = rep^{m,m}`, `T = Fac 𝕋`, `F` = first row and column zero, with
    /// `𝕋` generated by the `T_{i,j}` and `P_{1,1}`.
    MonoMono,
}

impl FromStr for PresetName {
    type Err = Error;
    fn from_str(s: &str) -> Result<PresetName> {
        match s.to_ascii_lowercase().as_str() {
            "epistar" => Ok(PresetName::EpiStar),
            "monostar" => Ok(PresetName::MonoStar),
            "epiepi" => Ok(PresetName::EpiEpi),
            "monomono" => Ok(PresetName::MonoMono),
            other => Err(Error::Parse(format!("unknown preset '{other}'"))),
        }
    }
}

impl fmt::Display for PresetName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PresetName::EpiStar => "epistar",
            PresetName::MonoStar => "monostar",
            PresetName::EpiEpi => "epiepi",
            PresetName::MonoMono => "monomono",
        };
        f.write_str(s)
    }
}

/// Orientation of a triple of subcategories.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TripleKind {
    /// `(C, T, F)`: `(C, T)` a cotorsion pair and `(T, F)` a torsion pair;
    /// the generators are the tilting set `C ∩ T`.
    CotorsionTorsion,
    /// `(T, F, D)`: `(T, F)` a torsion pair and `(F, D)` a cotorsion pair;
    /// the generators are the cotilting set `F ∩ D`.
    TorsionCotorsion,
}

/// A named triple on a fixed grid.
#[derive(Clone, Debug)]
pub struct TriplePreset {
    /// Which triple.
    pub name: PresetName,
    /// The grid.
    pub shape: GridShape,
    /// The field.
    pub field: Field,
    /// Orientation.
    pub kind: TripleKind,
    /// The three classes in order: `(C, T, F)` or `(T, F, D)`.
    pub classes: [Class; 3],
    /// Indecomposable generators of the middle intersection: the tilting set
    /// `C ∩ T` or the cotilting set `F ∩ D`.
    pub generators: Vec<Arc<GridRep>>,
}

impl TriplePreset {
    /// The named triple on the given grid.
    pub fn new(name: PresetName, shape: GridShape, field: Field) -> TriplePreset {
        use Direction::{Horizontal as H, Vertical as V};
        let (kind, classes, generators) = match name {
            PresetName::EpiStar => (
                TripleKind::CotorsionTorsion,
                [Class::Mono(V), Class::Epi(H), Class::FirstSliceZero(H)],
                rectangles(shape, field),
            ),
            PresetName::MonoStar => {
                let gens = rectangles(shape.transposed(), field)
                    .into_iter()
                    .map(|g| Arc::new(g.transpose()))
                    .collect();
                (TripleKind::CotorsionTorsion, [Class::Mono(H), Class::Epi(V), Class::FirstSliceZero(V)], gens)
            }
            PresetName::MonoMono => {
                let gens = t_ij_generators(shape, field);
                (
                    TripleKind::CotorsionTorsion,
                    [Class::MonoMono, Class::Fac(gens.clone()), Class::FirstRowAndColumnZero],
                    gens,
                )
            }
            PresetName::EpiEpi => {
                let cogens: Vec<Arc<GridRep>> =
                    t_ij_generators(shape, field).iter().map(|g| Arc::new(g.dual())).collect();
                (
                    TripleKind::TorsionCotorsion,
                    [Class::LastRowAndColumnZero, Class::Sub(cogens.clone()), Class::EpiEpi],
                    cogens,
                )
            }
        };
        TriplePreset { name, shape, field, kind, classes, generators }
    }

    /// The torsion class of the triple.
    pub fn torsion_class(&self) -> &Class {
        match self.kind {
            TripleKind::CotorsionTorsion => &self.classes[1],
            TripleKind::TorsionCotorsion => &self.classes[0],
        }
    }

    /// The torsion-free class of the triple.
    pub fn torsionfree_class(&self) -> &Class {
        match self.kind {
            TripleKind::CotorsionTorsion => &self.classes[2],
            TripleKind::TorsionCotorsion => &self.classes[1],
        }
    }

    /// The cotorsion pair `(left, right)` of the triple: `(C, T)` or `(F, D)`.
    pub fn cotorsion_pair(&self) -> (&Class, &Class) {
        match self.kind {
            TripleKind::CotorsionTorsion => (&self.classes[0], &self.classes[1]),
            TripleKind::TorsionCotorsion => (&self.classes[1], &self.classes[2]),
        }
    }

    /// The torsion sequence `tX ↪ X ↠ fX`.
    pub fn torsion_sequence(&self, x: &Arc<GridRep>) -> Result<ApproximationSequence> {
        match self.name {
            PresetName::EpiStar => torsion_torsionfree(x, Direction::Horizontal),
            PresetName::MonoStar => torsion_torsionfree(x, Direction::Vertical),
            PresetName::MonoMono => trace_sequence(x, &self.generators),
            PresetName::EpiEpi => reject_sequence(x, &self.generators),
        }
    }

    /// The two sequences of the cotorsion pair `(L, R)`: the cover
    /// `R-part ↪ L-part ↠ X` and the envelope `X ↪ R-part ↠ L-part`.
    pub fn cotorsion_sequences(&self, x: &Arc<GridRep>) -> Result<(ApproximationSequence, ApproximationSequence)> {
        match self.name {
            PresetName::EpiStar => {
                Ok((cotorsion_cover(x, Direction::Horizontal)?, universal_extension(x, &self.generators)?))
            }
            PresetName::MonoStar => {
                Ok((cotorsion_cover(x, Direction::Vertical)?, universal_extension(x, &self.generators)?))
            }
            PresetName::MonoMono => {
                Ok((super::tilting::tilting_cover(x, &self.generators)?, universal_extension(x, &self.generators)?))
            }
            PresetName::EpiEpi => {
                Ok((cotilting_cover(x, &self.generators)?, cotilting_envelope(x, &self.generators)?))
            }
        }
    }
}
