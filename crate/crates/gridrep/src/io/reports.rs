//! JSON artifacts produced by the command-line verbs.

use serde::{Deserialize, Serialize};

use super::{version, GridRepJson, MorphismJson};
use crate::clustering::{ClusteringGridResult, InvariantReport, ThresholdGrid};
use crate::decomposition::{Certificate, DecompositionReport};
use crate::error::{Error, Result};
use crate::grid::{DirectionFlags, GridMorphism, GridRep, GridShape};
use crate::knitting::{ARQuiver, KnitStatus};
use crate::linalg::Field;
use crate::torsion::{ApproximationSequence, Class, TripleKind};
use crate::verify::{AxiomCheck, AxiomReport, Universe, Witness};

/// One isomorphism class of summands.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SummandJson {
    /// Dimension grid.
    pub dims: Vec<Vec<usize>>,
    /// Multiplicity.
    pub mult: usize,
    /// Indecomposability certificate.
    pub certificate: Certificate,
    /// The representative.
    pub rep: GridRepJson,
}

/// Output of `decompose`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecompositionJson {
    /// Format version.
    pub version: String,
    /// Summands, sorted by total dimension and dimension grid.
    pub summands: Vec<SummandJson>,
    /// Whether the decomposition is certified consistent.
    pub sound: bool,
}

impl DecompositionJson {
    /// Encodes a decomposition report.
    pub fn new(r: &DecompositionReport) -> DecompositionJson {
        DecompositionJson {
            version: version(),
            summands: r
                .summands
                .iter()
                .map(|s| SummandJson {
                    dims: s.rep.dim_grid(),
                    mult: s.multiplicity,
                    certificate: s.certificate,
                    rep: GridRepJson::from_rep(&s.rep),
                })
                .collect(),
            sound: r.sound,
        }
    }
}

/// Output of `hom`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HomJson {
    /// Format version.
    pub version: String,
    /// `dim Hom(X, Y)`.
    pub dim: usize,
    /// A basis, as component maps keyed by vertex.
    pub basis: Vec<std::collections::BTreeMap<String, super::MatrixJson>>,
}

impl HomJson {
    /// Encodes a Hom basis; components are listed at vertices where both
    /// sides are non-zero.
    pub fn new(basis: &[GridMorphism]) -> HomJson {
        let basis = basis
            .iter()
            .map(|f| {
                f.source()
                    .shape()
                    .vertices()
                    .filter(|&v| f.source().dim(v) > 0 && f.target().dim(v) > 0)
                    .map(|v| (super::key(v), super::MatrixJson::from_matrix(f.comp(v))))
                    .collect()
            })
            .collect::<Vec<_>>();
        HomJson { version: version(), dim: basis.len(), basis }
    }
}

/// Output of `ext`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtJson {
    /// Format version.
    pub version: String,
    /// `dim Ext^degree(X, Y)`.
    pub dim: usize,
    /// The degree.
    pub degree: usize,
}

/// A short exact sequence with its three terms and two maps.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SequenceJson {
    /// Format version.
    pub version: String,
    /// `left ↪ mid`.
    pub inj: MorphismJson,
    /// `mid ↠ right`.
    pub surj: MorphismJson,
}

impl SequenceJson {
    /// Encodes a sequence.
    pub fn new(seq: &ApproximationSequence) -> SequenceJson {
        SequenceJson {
            version: version(),
            inj: MorphismJson::from_morphism(&seq.inj),
            surj: MorphismJson::from_morphism(&seq.surj),
        }
    }
}

/// A knitted vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KnitVertexJson {
    /// Dimension grid.
    pub dims: Vec<Vec<usize>>,
    /// Whether it is a standard projective.
    pub projective: bool,
    /// Whether `τ⁻` of it vanishes.
    pub injective: bool,
}

/// Output of `knit`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KnitJson {
    /// Format version.
    pub version: String,
    /// The field.
    pub field: Field,
    /// Columns.
    pub m: usize,
    /// Rows.
    pub n: usize,
    /// `Complete` or `CapExceeded`.
    pub status: String,
    /// Number of `τ⁻` steps performed, when the cap was exceeded.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub step: Option<usize>,
    /// Vertices in canonical order.
    pub vertices: Vec<KnitVertexJson>,
    /// Irreducible maps `[source, target]`, repeated by multiplicity.
    pub arrows: Vec<[usize; 2]>,
    /// Pairs `[Z, τZ]`.
    pub tau: Vec<[usize; 2]>,
}

impl KnitJson {
    /// Encodes a knitted quiver.
    pub fn new(ar: &ARQuiver) -> KnitJson {
        let (status, step) = match ar.status {
            KnitStatus::Complete => ("Complete", None),
            KnitStatus::CapExceeded { step } => ("CapExceeded", Some(step)),
        };
        KnitJson {
            version: version(),
            field: ar.field,
            m: ar.shape.m,
            n: ar.shape.n,
            status: status.into(),
            step,
            vertices: ar
                .vertices
                .iter()
                .map(|v| KnitVertexJson { dims: v.dims.clone(), projective: v.projective, injective: v.injective })
                .collect(),
            arrows: ar.arrows.iter().map(|&(a, b)| [a, b]).collect(),
            tau: ar.tau_pairs.iter().map(|&(a, b)| [a, b]).collect(),
        }
    }
}

/// A counterexample.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessJson {
    /// A non-zero morphism.
    NonzeroMorphism {
        /// The morphism.
        morphism: MorphismJson,
    },
    /// A non-vanishing extension group `Ext^degree(quotient, sub)`.
    NonSplitExtension {
        /// First argument.
        quotient: GridRepJson,
        /// Second argument.
        sub: GridRepJson,
        /// Degree.
        degree: usize,
        /// Dimension.
        ext_dim: usize,
    },
    /// An offending object.
    Object {
        /// The object.
        rep: GridRepJson,
        /// What goes wrong.
        reason: String,
    },
}

impl WitnessJson {
    /// Encodes a witness.
    pub fn new(w: &Witness) -> WitnessJson {
        match w {
            Witness::NonzeroMorphism { morphism } => {
                WitnessJson::NonzeroMorphism { morphism: MorphismJson::from_morphism(morphism) }
            }
            Witness::NonSplitExtension { quotient, sub, degree, ext_dim } => WitnessJson::NonSplitExtension {
                quotient: GridRepJson::from_rep(quotient),
                sub: GridRepJson::from_rep(sub),
                degree: *degree,
                ext_dim: *ext_dim,
            },
            Witness::Object { rep, reason } => {
                WitnessJson::Object { rep: GridRepJson::from_rep(rep), reason: reason.clone() }
            }
        }
    }
}

/// One checked axiom.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomCheckJson {
    /// The axiom.
    pub axiom: String,
    /// The universe it was checked over.
    pub universe: String,
    /// Whether it holds.
    pub passed: bool,
    /// What was checked.
    pub detail: String,
    /// A counterexample when it fails.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
}

impl AxiomCheckJson {
    fn new(c: &AxiomCheck) -> AxiomCheckJson {
        AxiomCheckJson {
            axiom: c.axiom.clone(),
            universe: c.universe.clone(),
            passed: c.passed,
            detail: c.detail.clone(),
            witness: c.witness.as_ref().map(WitnessJson::new),
        }
    }
}

/// Output of `verify`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyJson {
    /// Format version.
    pub version: String,
    /// The preset name, or `custom`.
    pub preset: String,
    /// Columns.
    pub m: usize,
    /// Rows.
    pub n: usize,
    /// The field.
    pub field: Field,
    /// Whether `Ext^i` for all `i ≥ 1` was required to vanish.
    pub strict: bool,
    /// Whether every check passed.
    pub overall: bool,
    /// The checks in order.
    pub checks: Vec<AxiomCheckJson>,
}

impl VerifyJson {
    /// Encodes a verification report.
    pub fn new(preset: &str, shape: GridShape, field: Field, strict: bool, r: &AxiomReport) -> VerifyJson {
        VerifyJson {
            version: version(),
            preset: preset.into(),
            m: shape.m,
            n: shape.n,
            field,
            strict,
            overall: r.overall,
            checks: r.checks.iter().map(AxiomCheckJson::new).collect(),
        }
    }
}

/// An entry of a dimension-grid pattern: an exact dimension or `"*"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PatternCell {
    /// This exact dimension.
    Exact(usize),
    /// Any dimension (written `"*"`).
    Any(String),
}

/// A class in a custom verification spec: a named class, or the
/// indecomposables whose dimension grid matches one of the patterns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ClassSpec {
    /// A named class (see [`Class::named`]).
    Named(String),
    /// Dimension-grid patterns (rows `j`, entries `i`).
    Patterns(Vec<Vec<Vec<PatternCell>>>),
}

impl ClassSpec {
    /// The class over a universe.
    pub fn resolve(&self, u: &Universe) -> Result<Class> {
        match self {
            ClassSpec::Named(name) => Class::named(name),
            ClassSpec::Patterns(patterns) => {
                for p in patterns {
                    for cell in p.iter().flatten() {
                        if let PatternCell::Any(s) = cell {
                            if s != "*" {
                                return Err(Error::Parse(format!("pattern entry {s:?} is neither a number nor \"*\"")));
                            }
                        }
                    }
                    if p.len() != u.shape.n || p.iter().any(|r| r.len() != u.shape.m) {
                        return Err(Error::Parse(format!(
                            "pattern must have {} rows of {} entries",
                            u.shape.n, u.shape.m
                        )));
                    }
                }
                let matches = |dims: &[Vec<usize>]| {
                    patterns.iter().any(|p| {
                        p.iter().zip(dims).all(|(pr, dr)| {
                            pr.iter().zip(dr).all(|(c, &d)| match c {
                                PatternCell::Exact(e) => *e == d,
                                PatternCell::Any(_) => true,
                            })
                        })
                    })
                };
                Ok(Class::AddOf(u.indecs.iter().filter(|x| matches(&x.dim_grid())).cloned().collect()))
            }
        }
    }
}

/// A custom triple for `verify --preset custom`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomTripleSpec {
    /// Orientation: `(C, T, F)` or `(T, F, D)`.
    pub kind: TripleKind,
    /// The three classes in order.
    pub classes: [ClassSpec; 3],
    /// Optional generators of the middle intersection.
    #[serde(default)]
    pub generators: Option<Vec<GridRepJson>>,
}

/// Output of `cluster --invariant`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvariantJson {
    /// Format version.
    pub version: String,
    /// The field.
    pub field: Field,
    /// The thresholds, including how the density levels were chosen.
    pub thresholds: ThresholdGrid,
    /// Dimension grid of the clustering representation.
    pub dims: Vec<Vec<usize>>,
    /// Cluster identifiers (smallest member index) per vertex `"i,j"`.
    pub clusters: std::collections::BTreeMap<String, Vec<usize>>,
    /// The invariant.
    pub invariant: InvariantReport,
}

impl InvariantJson {
    /// Encodes a clustering result with its invariant.
    pub fn new(res: &ClusteringGridResult, inv: &InvariantReport) -> InvariantJson {
        let s = res.thresholds.shape();
        InvariantJson {
            version: version(),
            field: res.rep.field(),
            thresholds: res.thresholds.clone(),
            dims: res.rep.dim_grid(),
            clusters: s.vertices().map(|v| (super::key(v), res.cluster_ids(v))).collect(),
            invariant: inv.clone(),
        }
    }
}

/// Output of `validate`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidateJson {
    /// Format version.
    pub version: String,
    /// Always true: invalid input is reported as an error.
    pub valid: bool,
    /// Dimension grid.
    pub dims: Vec<Vec<usize>>,
    /// Which directions have all maps epi or mono.
    pub direction: DirectionFlags,
}

impl ValidateJson {
    /// Summarizes a valid representation.
    pub fn new(x: &GridRep) -> ValidateJson {
        ValidateJson { version: version(), valid: true, dims: x.dim_grid(), direction: x.direction_flags() }
    }
}
