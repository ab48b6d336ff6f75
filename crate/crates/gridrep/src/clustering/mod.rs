//! Filtered single-linkage clustering of a finite point cloud, linearized
//! into a grid representation with epimorphic horizontal maps, and the
//! two-parameter invariant obtained from it.
//!
//! Scales `ε₁ < … < ε_m` index the horizontal direction and density
//! thresholds `δ₁ > … > δ_n` the vertical one, so vertex `(i, j)` carries
//! the single-linkage clusters at scale `ε_i` of the points of density at
//! least `δ_j`. Both families of maps send a cluster to the cluster that
//! contains it.

use std::collections::BTreeMap;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use serde::Serialize;

use crate::decomposition::decompose;
use crate::error::{Error, Result};
use crate::grid::{Direction, GridRep, GridShape, Vertex};
use crate::linalg::{Field, Matrix, Scalar};
use crate::torsion::{t_epi_kernel, Class};

/// A finite set of points in Euclidean space, optionally with a density
/// value per point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointCloud {
    /// Coordinates, one tuple per point.
    pub points: Vec<Vec<f64>>,
    /// Per-point density values, if supplied.
    pub density: Option<Vec<f64>>,
}

impl PointCloud {
    /// A validated point cloud: non-empty, all points of the same
    /// dimension, finite coordinates, and one density per point if given.
    pub fn new(points: Vec<Vec<f64>>, density: Option<Vec<f64>>) -> Result<PointCloud> {
        let Some(first) = points.first() else {
            return Err(Error::Precondition("point cloud is empty".into()));
        };
        let d = first.len();
        for (k, p) in points.iter().enumerate() {
            if p.len() != d {
                return Err(Error::DimensionMismatch(format!("point {k} has {} coordinates, expected {d}", p.len())));
            }
            if p.iter().any(|c| !c.is_finite()) {
                return Err(Error::Precondition(format!("point {k} has a non-finite coordinate")));
            }
        }
        if let Some(dens) = &density {
            if dens.len() != points.len() {
                return Err(Error::DimensionMismatch(format!(
                    "{} density values for {} points",
                    dens.len(),
                    points.len()
                )));
            }
        }
        Ok(PointCloud { points, density })
    }

    /// Number of points.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Always false: point clouds are non-empty.
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Euclidean distance between two points.
    pub fn distance(&self, a: usize, b: usize) -> f64 {
        self.points[a].iter().zip(&self.points[b]).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
    }
}

/// How per-point densities are estimated when the cloud carries none.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DensityEstimator {
    /// `1 / (distance to the k-th nearest neighbour + floor)`.
    Knn {
        /// The neighbour count.
        k: usize,
    },
    /// Gaussian kernel density `Σ_q exp(−|p − q|² / 2h²)` (including `q = p`).
    Gaussian {
        /// The bandwidth `h`.
        bandwidth: f64,
    },
}

/// The k-nearest-neighbour density: `1 / (d_k(p) + f64::MIN_POSITIVE)`,
/// where `d_k(p)` is the distance from `p` to its `k`-th nearest other
/// point.
pub fn density_estimate(pc: &PointCloud, k: usize) -> Result<Vec<f64>> {
    if k == 0 || k >= pc.len() {
        return Err(Error::Precondition(format!("neighbour count {k} must lie in 1..{}", pc.len())));
    }
    Ok((0..pc.len())
        .into_par_iter()
        .map(|p| {
            let mut d: Vec<f64> = (0..pc.len()).filter(|&q| q != p).map(|q| pc.distance(p, q)).collect();
            d.sort_by(f64::total_cmp);
            1.0 / (d[k - 1] + f64::MIN_POSITIVE)
        })
        .collect())
}

/// Gaussian kernel density with bandwidth `h > 0`.
pub fn kernel_density(pc: &PointCloud, bandwidth: f64) -> Result<Vec<f64>> {
    if !(bandwidth > 0.0 && bandwidth.is_finite()) {
        return Err(Error::Precondition(format!("bandwidth {bandwidth} must be positive")));
    }
    let h2 = 2.0 * bandwidth * bandwidth;
    Ok((0..pc.len())
        .into_par_iter()
        .map(|p| (0..pc.len()).map(|q| (-pc.distance(p, q).powi(2) / h2).exp()).sum())
        .collect())
}

/// The densities of a cloud: the supplied values if present, otherwise the
/// estimator's.
pub fn densities(pc: &PointCloud, estimator: DensityEstimator) -> Result<Vec<f64>> {
    if let Some(d) = &pc.density {
        return Ok(d.clone());
    }
    match estimator {
        DensityEstimator::Knn { k } => density_estimate(pc, k),
        DensityEstimator::Gaussian { bandwidth } => kernel_density(pc, bandwidth),
    }
}

/// A partition of a point subset into blocks. Blocks are sorted by their
/// smallest member, and members within a block increase.
pub type Partition = Vec<Vec<usize>>;

/// The connected components of the graph on `subset` with an edge between
/// points at distance at most `eps`.
pub fn geometric_components(pc: &PointCloud, subset: &[usize], eps: f64) -> Partition {
    let mut uf = UnionFind::<usize>::new(subset.len());
    for a in 0..subset.len() {
        for b in a + 1..subset.len() {
            if pc.distance(subset[a], subset[b]) <= eps {
                uf.union(a, b);
            }
        }
    }
    let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (a, &p) in subset.iter().enumerate() {
        blocks.entry(uf.find(a)).or_default().push(p);
    }
    let mut out: Partition = blocks
        .into_values()
        .map(|mut b| {
            b.sort_unstable();
            b
        })
        .collect();
    out.sort_by_key(|b| b[0]);
    out
}

/// Where the density thresholds came from.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DeltaSource {
    /// Supplied by the user.
    User,
    /// Equal quantiles of the densities (`requested` levels, fewer if ties
    /// collapsed some).
    Quantiles {
        /// The number of levels asked for.
        requested: usize,
    },
}

/// The scale and density thresholds of the grid.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThresholdGrid {
    /// Strictly increasing scales (the horizontal direction).
    pub eps: Vec<f64>,
    /// Strictly decreasing density thresholds (the vertical direction).
    pub delta: Vec<f64>,
    /// Provenance of `delta`.
    pub delta_source: DeltaSource,
}

impl ThresholdGrid {
    /// Validated thresholds supplied by the user.
    pub fn new(eps: Vec<f64>, delta: Vec<f64>) -> Result<ThresholdGrid> {
        if eps.is_empty() || delta.is_empty() {
            return Err(Error::Precondition("scale and density lists must be non-empty".into()));
        }
        if eps.iter().any(|e| !e.is_finite() || *e < 0.0) {
            return Err(Error::Precondition("scales must be finite and non-negative".into()));
        }
        if eps.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Precondition("scales must be strictly increasing".into()));
        }
        if delta.iter().any(|d| d.is_nan()) || delta.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::Precondition("density thresholds must be strictly decreasing".into()));
        }
        Ok(ThresholdGrid { eps, delta, delta_source: DeltaSource::User })
    }

    /// Scales as given, density thresholds at `levels` equal quantiles of
    /// the densities: `δ_j` is the `⌈jN/levels⌉`-th largest density, so the
    /// last level admits every point. Tied quantiles are merged.
    pub fn with_quantiles(eps: Vec<f64>, densities: &[f64], levels: usize) -> Result<ThresholdGrid> {
        if levels == 0 || densities.is_empty() {
            return Err(Error::Precondition("need at least one density level and one point".into()));
        }
        let mut sorted = densities.to_vec();
        sorted.sort_by(|a, b| b.total_cmp(a));
        let n = sorted.len();
        let mut delta: Vec<f64> = (1..=levels).map(|j| sorted[(j * n).div_ceil(levels) - 1]).collect();
        delta.dedup();
        let mut tg = ThresholdGrid::new(eps, delta)?;
        tg.delta_source = DeltaSource::Quantiles { requested: levels };
        Ok(tg)
    }

    /// The grid shape `|eps| × |delta|`.
    pub fn shape(&self) -> GridShape {
        GridShape { m: self.eps.len(), n: self.delta.len() }
    }
}

/// The clustering grid and its linearization.
#[derive(Clone, Debug)]
pub struct ClusteringGridResult {
    /// The thresholds used.
    pub thresholds: ThresholdGrid,
    /// The partition at every vertex, in vertex order (`i` fastest).
    pub partitions: Vec<Partition>,
    /// The linearized representation: the basis vectors at a vertex are its
    /// clusters in order.
    pub rep: Arc<GridRep>,
}

impl ClusteringGridResult {
    /// The partition at a vertex.
    pub fn partition(&self, v: Vertex) -> &Partition {
        &self.partitions[self.thresholds.shape().index(v)]
    }

    /// Cluster identifiers at a vertex: the smallest member of each block,
    /// which is the provenance of the corresponding basis vector.
    pub fn cluster_ids(&self, v: Vertex) -> Vec<usize> {
        self.partition(v).iter().map(|b| b[0]).collect()
    }
}

/// The matrix sending each block of `from` to the block of `to` containing
/// it.
fn containment_matrix(field: Field, from: &Partition, to: &Partition) -> Matrix {
    let mut owner = BTreeMap::new();
    for (t, block) in to.iter().enumerate() {
        for &p in block {
            owner.insert(p, t);
        }
    }
    let targets: Vec<usize> = from.iter().map(|b| owner[&b[0]]).collect();
    Matrix::from_fn(field, to.len(), from.len(), |r, c| {
        if targets[c] == r {
            Scalar::one(field)
        } else {
            Scalar::zero(field)
        }
    })
}

/// Clusters the points of density at least `δ_j` at scale `ε_i` for every
/// vertex and linearizes with the free functor.
pub fn clustering_grid(
    pc: &PointCloud,
    densities: &[f64],
    tg: &ThresholdGrid,
    field: Field,
) -> Result<ClusteringGridResult> {
    if densities.len() != pc.len() {
        return Err(Error::DimensionMismatch(format!("{} densities for {} points", densities.len(), pc.len())));
    }
    let shape = tg.shape();
    let subsets: Vec<Vec<usize>> =
        tg.delta.iter().map(|&d| (0..pc.len()).filter(|&p| densities[p] >= d).collect()).collect();
    let vertices: Vec<Vertex> = shape.vertices().collect();
    let partitions: Vec<Partition> =
        vertices.par_iter().map(|&(i, j)| geometric_components(pc, &subsets[j - 1], tg.eps[i - 1])).collect();
    let rep = GridRep::build(
        field,
        shape,
        |v| partitions[shape.index(v)].len(),
        |a| {
            let from = &partitions[shape.index(a.source)];
            let to = &partitions[shape.index(a.target())];
            containment_matrix(field, from, to)
        },
    );
    Ok(ClusteringGridResult { thresholds: tg.clone(), partitions, rep: Arc::new(rep) })
}

/// One isomorphism class of summands in an invariant report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SummandEntry {
    /// Dimension grid (rows `j`, entries `i`).
    pub dims: Vec<Vec<usize>>,
    /// Multiplicity.
    pub multiplicity: usize,
}

/// The reduced two-parameter invariant of a clustering grid.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvariantReport {
    /// Rectangle summands `k_{{1..i}×{j..n}}` of the representation.
    pub rectangles: Vec<SummandEntry>,
    /// The remaining summands.
    pub non_rectangles: Vec<SummandEntry>,
    /// Summands of the epi-kernel image on the grid with one row fewer.
    pub reduced: Vec<SummandEntry>,
    /// Total number of summands (with multiplicity).
    pub summand_count: usize,
    /// Number of rectangle summands.
    pub rectangle_count: usize,
    /// Number of summands of the epi-kernel image.
    pub reduced_count: usize,
    /// Whether `summand_count = rectangle_count + reduced_count`.
    pub bookkeeping_holds: bool,
}

fn count(entries: &[SummandEntry]) -> usize {
    entries.iter().map(|e| e.multiplicity).sum()
}

/// Decomposes the representation, separates the rectangle summands, and
/// decomposes its image under the epi-kernel functor. For a single density
/// level the reduced grid is empty and every summand is a rectangle.
pub fn two_param_invariant(rep: &Arc<GridRep>, seed: u64) -> Result<InvariantReport> {
    if let Some(a) = rep.first_failing_arrow(Direction::Horizontal, true) {
        return Err(Error::Precondition(format!(
            "horizontal map at ({}, {}) is not an epimorphism",
            a.source.0, a.source.1
        )));
    }
    let mut rectangles = Vec::new();
    let mut non_rectangles = Vec::new();
    if !rep.is_zero() {
        for s in decompose(rep, seed)?.summands {
            let entry = SummandEntry { dims: s.rep.dim_grid(), multiplicity: s.multiplicity };
            if Class::Rectangles.contains(&s.rep)? {
                rectangles.push(entry);
            } else {
                non_rectangles.push(entry);
            }
        }
    }
    let mut reduced = Vec::new();
    if rep.shape().n >= 2 {
        let t = t_epi_kernel(rep)?.rep;
        if !t.is_zero() {
            reduced = decompose(&t, seed)?
                .summands
                .into_iter()
                .map(|s| SummandEntry { dims: s.rep.dim_grid(), multiplicity: s.multiplicity })
                .collect();
        }
    }
    let summand_count = count(&rectangles) + count(&non_rectangles);
    let rectangle_count = count(&rectangles);
    let reduced_count = count(&reduced);
    Ok(InvariantReport {
        bookkeeping_holds: summand_count == rectangle_count + reduced_count,
        rectangles,
        non_rectangles,
        reduced,
        summand_count,
        rectangle_count,
        reduced_count,
    })
}
