//! The JSON formats shared with the command-line tool, and the CSV reader
//! for point clouds.
//!
//! Every top-level artifact carries a `version` field. Output is
//! deterministic: maps are keyed by `"i,j"` strings in sorted order and all
//! lists are in the canonical order of the producing module.

mod csv_points;
mod reports;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use csv_points::read_point_cloud;
pub use reports::*;

use crate::error::{Error, Result};
use crate::grid::{Direction, GridMorphism, GridRep, GridShape, Vertex};
use crate::linalg::{Field, Matrix, Scalar};

/// The version string embedded in every artifact.
pub const FORMAT_VERSION: &str = concat!("gridrep/", env!("CARGO_PKG_VERSION"));

fn version() -> String {
    FORMAT_VERSION.to_string()
}

/// A matrix as `{"rows", "cols", "entries"}` with entries as decimal strings
/// (GF(p)) or `"num/den"` strings (ℚ).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    /// Number of rows.
    pub rows: usize,
    /// Number of columns.
    pub cols: usize,
    /// Row-major entries.
    pub entries: Vec<Vec<String>>,
}

impl MatrixJson {
    /// Encodes a matrix.
    pub fn from_matrix(a: &Matrix) -> MatrixJson {
        MatrixJson {
            rows: a.rows(),
            cols: a.cols(),
            entries: (0..a.rows()).map(|i| (0..a.cols()).map(|j| a.get(i, j).to_string()).collect()).collect(),
        }
    }

    /// Decodes into `field`, checking the declared size.
    pub fn to_matrix(&self, field: Field) -> Result<Matrix> {
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            return Err(Error::Parse(format!("matrix entries do not form a {}×{} array", self.rows, self.cols)));
        }
        let mut parsed = Vec::with_capacity(self.rows * self.cols);
        for row in &self.entries {
            for e in row {
                parsed.push(Scalar::parse(field, e)?);
            }
        }
        Ok(Matrix::from_fn(field, self.rows, self.cols, |i, j| parsed[i * self.cols + j].clone()))
    }
}

fn key(v: Vertex) -> String {
    format!("{},{}", v.0, v.1)
}

fn parse_key(k: &str) -> Result<Vertex> {
    let bad = || Error::Parse(format!("map key {k:?} is not of the form \"i,j\""));
    let (a, b) = k.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

/// A grid representation: `dims` lists the `n` rows (index `j`) of `m`
/// entries (index `i`); `hmaps`/`vmaps` are keyed by the source vertex of
/// the arrow. A map may be omitted only when one of its endpoints is zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridRepJson {
    /// Format version.
    #[serde(default = "version")]
    pub version: String,
    /// The field.
    pub field: Field,
    /// Number of columns.
    pub m: usize,
    /// Number of rows.
    pub n: usize,
    /// Dimension grid.
    pub dims: Vec<Vec<usize>>,
    /// Horizontal maps `(i, j) → (i + 1, j)`.
    pub hmaps: BTreeMap<String, MatrixJson>,
    /// Vertical maps `(i, j) → (i, j + 1)`.
    pub vmaps: BTreeMap<String, MatrixJson>,
}

impl GridRepJson {
    /// Encodes a representation; maps with a zero-dimensional endpoint are
    /// omitted.
    pub fn from_rep(x: &GridRep) -> GridRepJson {
        let s = x.shape();
        let encode = |dir| {
            s.arrows_in(dir)
                .filter(|a| x.dim(a.source) > 0 && x.dim(a.target()) > 0)
                .map(|a| (key(a.source), MatrixJson::from_matrix(x.map(a))))
                .collect()
        };
        GridRepJson {
            version: version(),
            field: x.field(),
            m: s.m,
            n: s.n,
            dims: x.dim_grid(),
            hmaps: encode(Direction::Horizontal),
            vmaps: encode(Direction::Vertical),
        }
    }

    /// Decodes and validates a representation.
    pub fn to_rep(&self) -> Result<GridRep> {
        self.field.check()?;
        let s = GridShape::new(self.m, self.n)?;
        if self.dims.len() != s.n || self.dims.iter().any(|r| r.len() != s.m) {
            return Err(Error::Parse(format!("dims must be {} rows of {} entries", s.n, s.m)));
        }
        let dim = |(i, j): Vertex| self.dims[j - 1][i - 1];
        let decode = |dir: Direction, maps: &BTreeMap<String, MatrixJson>| -> Result<Vec<Matrix>> {
            let name = if dir == Direction::Horizontal { "hmaps" } else { "vmaps" };
            let mut out = Vec::new();
            let mut used = 0;
            for a in s.arrows_in(dir) {
                let (ds, dt) = (dim(a.source), dim(a.target()));
                match maps.get(&key(a.source)) {
                    Some(mj) => {
                        used += 1;
                        let mat = mj.to_matrix(self.field)?;
                        if mat.rows() != dt || mat.cols() != ds {
                            return Err(Error::DimensionMismatch(format!(
                                "{name}[\"{}\"] is {}×{}, expected {dt}×{ds}",
                                key(a.source),
                                mat.rows(),
                                mat.cols()
                            )));
                        }
                        out.push(mat);
                    }
                    None if ds == 0 || dt == 0 => out.push(Matrix::zeros(self.field, dt, ds)),
                    None => {
                        return Err(Error::Parse(format!(
                            "{name}[\"{}\"] is missing but both endpoints are non-zero",
                            key(a.source)
                        )))
                    }
                }
            }
            if used != maps.len() {
                let stray = maps.keys().find(|k| {
                    parse_key(k).map_or(true, |v| !s.arrows_in(dir).any(|a| a.source == v))
                });
                return Err(Error::Parse(format!("{name} has a key {stray:?} that is not an arrow source")));
            }
            Ok(out)
        };
        let hmaps = decode(Direction::Horizontal, &self.hmaps)?;
        let vmaps = decode(Direction::Vertical, &self.vmaps)?;
        let dims = s.vertices().map(dim).collect();
        GridRep::new(self.field, s, dims, hmaps, vmaps)
    }
}

/// A morphism as its source, target and components keyed by vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismJson {
    /// Source representation.
    pub source: GridRepJson,
    /// Target representation.
    pub target: GridRepJson,
    /// Components at the vertices where both sides are non-zero.
    pub components: BTreeMap<String, MatrixJson>,
}

impl MorphismJson {
    /// Encodes a morphism.
    pub fn from_morphism(f: &GridMorphism) -> MorphismJson {
        let s = f.source().shape();
        MorphismJson {
            source: GridRepJson::from_rep(f.source()),
            target: GridRepJson::from_rep(f.target()),
            components: s
                .vertices()
                .filter(|&v| f.source().dim(v) > 0 && f.target().dim(v) > 0)
                .map(|v| (key(v), MatrixJson::from_matrix(f.comp(v))))
                .collect(),
        }
    }

    /// Decodes and validates a morphism.
    pub fn to_morphism(&self) -> Result<GridMorphism> {
        let src = Arc::new(self.source.to_rep()?);
        let tgt = Arc::new(self.target.to_rep()?);
        let s = src.shape();
        let mut comps = Vec::new();
        for v in s.vertices() {
            let (r, c) = (tgt.dim(v), src.dim(v));
            comps.push(match self.components.get(&key(v)) {
                Some(mj) => mj.to_matrix(src.field())?,
                None => Matrix::zeros(src.field(), r, c),
            });
        }
        GridMorphism::new(src, tgt, comps)
    }
}

/// Parses a representation from JSON text, reporting the line and column
/// of syntax errors.
pub fn read_rep(text: &str) -> Result<GridRep> {
    let j: GridRepJson = parse_json(text)?;
    j.to_rep()
}

/// Serializes a representation as pretty-printed JSON.
pub fn write_rep(x: &GridRep) -> String {
    to_json(&GridRepJson::from_rep(x))
}

/// Deserializes any JSON artifact, reporting the location of errors.
pub fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("malformed JSON: {e}")))
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("artifacts serialize");
    s.push('\n');
    s
}
