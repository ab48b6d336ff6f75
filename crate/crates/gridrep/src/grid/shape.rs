//! Grid shapes, vertices, arrows and convex vertex sets.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A vertex `(i, j)` of the grid, 1-based: `i` is the horizontal (column)
/// index and `j` the vertical (row) index.
pub type Vertex = (usize, usize);

/// The two arrow directions of the grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    /// Rightward arrows `(i, j) → (i + 1, j)`.
    Horizontal,
    /// Downward arrows `(i, j) → (i, j + 1)`.
    Vertical,
}

impl Direction {
    /// The other direction.
    pub fn other(self) -> Direction {
        match self {
            Direction::Horizontal => Direction::Vertical,
            Direction::Vertical => Direction::Horizontal,
        }
    }

    /// Parses `h`/`horizontal` or `v`/`vertical`.
    pub fn parse(s: &str) -> Result<Direction> {
        match s.trim().to_ascii_lowercase().as_str() {
            "h" | "horizontal" => Ok(Direction::Horizontal),
            "v" | "vertical" => Ok(Direction::Vertical),
            other => Err(Error::Parse(format!("unknown direction {other:?}; expected `h` or `v`"))),
        }
    }
}

/// An arrow of the grid, identified by its direction and source vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrow {
    /// Direction of the arrow.
    pub dir: Direction,
    /// Source vertex.
    pub source: Vertex,
}

impl Arrow {
    /// Target vertex.
    pub fn target(&self) -> Vertex {
        let (i, j) = self.source;
        match self.dir {
            Direction::Horizontal => (i + 1, j),
            Direction::Vertical => (i, j + 1),
        }
    }
}

/// The commutative grid quiver with `m` columns and `n` rows.
///
/// Vertices are `(i, j)` with `1 ≤ i ≤ m`, `1 ≤ j ≤ n`; arrows run
/// `(i, j) → (i + 1, j)` and `(i, j) → (i, j + 1)`, and every unit square
/// commutes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GridShape {
    /// Horizontal length (number of columns).
    pub m: usize,
    /// Vertical length (number of rows).
    pub n: usize,
}

impl GridShape {
    /// A shape, checking `m, n ≥ 1`.
    pub fn new(m: usize, n: usize) -> Result<GridShape> {
        if m == 0 || n == 0 {
            return Err(Error::Precondition(format!("grid shape {m}×{n} must have positive sides")));
        }
        Ok(GridShape { m, n })
    }

    /// Number of vertices.
    pub fn num_vertices(&self) -> usize {
        self.m * self.n
    }

    /// Whether `v` is a vertex of this grid.
    pub fn contains(&self, v: Vertex) -> bool {
        (1..=self.m).contains(&v.0) && (1..=self.n).contains(&v.1)
    }

    /// Checks that `v` is a vertex of this grid.
    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "vertex ({}, {}) outside the {}×{} grid",
                v.0, v.1, self.m, self.n
            )))
        }
    }

    /// Linear index of a vertex (row-major: `j` outer, `i` inner).
    pub fn index(&self, v: Vertex) -> usize {
        debug_assert!(self.contains(v));
        (v.0 - 1) + self.m * (v.1 - 1)
    }

    /// The vertex with a given linear index.
    pub fn vertex(&self, k: usize) -> Vertex {
        (k % self.m + 1, k / self.m + 1)
    }

    /// All vertices in linear-index order.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.num_vertices()).map(|k| self.vertex(k))
    }

    /// Whether there is an arrow in direction `dir` leaving `v`.
    pub fn has_arrow(&self, dir: Direction, v: Vertex) -> bool {
        self.contains(v)
            && match dir {
                Direction::Horizontal => v.0 < self.m,
                Direction::Vertical => v.1 < self.n,
            }
    }

    /// Number of arrows in direction `dir`.
    pub fn num_arrows(&self, dir: Direction) -> usize {
        match dir {
            Direction::Horizontal => (self.m - 1) * self.n,
            Direction::Vertical => self.m * (self.n - 1),
        }
    }

    /// Index of the arrow in direction `dir` leaving `v` among the arrows of
    /// that direction.
    pub fn arrow_index(&self, dir: Direction, v: Vertex) -> usize {
        debug_assert!(self.has_arrow(dir, v));
        match dir {
            Direction::Horizontal => (v.0 - 1) + (self.m - 1) * (v.1 - 1),
            Direction::Vertical => (v.0 - 1) + self.m * (v.1 - 1),
        }
    }

    /// Source vertex of the arrow with a given index in direction `dir`.
    pub fn arrow_source(&self, dir: Direction, k: usize) -> Vertex {
        match dir {
            Direction::Horizontal => (k % (self.m - 1) + 1, k / (self.m - 1) + 1),
            Direction::Vertical => (k % self.m + 1, k / self.m + 1),
        }
    }

    /// All arrows of one direction, in arrow-index order.
    pub fn arrows_in(&self, dir: Direction) -> impl Iterator<Item = Arrow> + '_ {
        (0..self.num_arrows(dir)).map(move |k| Arrow { dir, source: self.arrow_source(dir, k) })
    }

    /// All arrows: horizontal ones first, then vertical ones.
    pub fn arrows(&self) -> impl Iterator<Item = Arrow> + '_ {
        self.arrows_in(Direction::Horizontal).chain(self.arrows_in(Direction::Vertical))
    }

    /// Arrows ending at `v`.
    pub fn incoming(&self, v: Vertex) -> Vec<Arrow> {
        let mut out = Vec::new();
        if v.0 > 1 {
            out.push(Arrow { dir: Direction::Horizontal, source: (v.0 - 1, v.1) });
        }
        if v.1 > 1 {
            out.push(Arrow { dir: Direction::Vertical, source: (v.0, v.1 - 1) });
        }
        out
    }

    /// Arrows starting at `v`.
    pub fn outgoing(&self, v: Vertex) -> Vec<Arrow> {
        [Direction::Horizontal, Direction::Vertical]
            .into_iter()
            .filter(|&d| self.has_arrow(d, v))
            .map(|dir| Arrow { dir, source: v })
            .collect()
    }

    /// Top-left corners `(i, j)` of the unit squares, `i < m`, `j < n`.
    pub fn squares(&self) -> impl Iterator<Item = Vertex> + '_ {
        let (m, n) = (self.m, self.n);
        (1..n).flat_map(move |j| (1..m).map(move |i| (i, j)))
    }

    /// The shape with the roles of the two directions exchanged.
    pub fn transposed(&self) -> GridShape {
        GridShape { m: self.n, n: self.m }
    }

    /// The vertex opposite to `v` under the half-turn `(i, j) ↦ (m+1−i, n+1−j)`,
    /// which reverses all arrows.
    pub fn opposite(&self, v: Vertex) -> Vertex {
        (self.m + 1 - v.0, self.n + 1 - v.1)
    }
}

/// Componentwise partial order on vertices: `u ≤ v` iff there is a path
/// from `u` to `v`.
pub fn leq(u: Vertex, v: Vertex) -> bool {
    u.0 <= v.0 && u.1 <= v.1
}

/// A set of vertices of a grid.
///
/// Supports of thin modules must be convex: whenever `u ≤ w ≤ v` with `u`
/// and `v` in the set, `w` is in the set as well.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConvexMask {
    shape: GridShape,
    member: Vec<bool>,
}

impl ConvexMask {
    /// The set of vertices satisfying `pred` (convexity is not checked).
    pub fn from_fn(shape: GridShape, mut pred: impl FnMut(Vertex) -> bool) -> ConvexMask {
        let member = shape.vertices().map(&mut pred).collect();
        ConvexMask { shape, member }
    }

    /// The set of listed vertices.
    pub fn from_vertices(shape: GridShape, vs: &[Vertex]) -> Result<ConvexMask> {
        for &v in vs {
            shape.check_vertex(v)?;
        }
        Ok(ConvexMask::from_fn(shape, |v| vs.contains(&v)))
    }

    /// The rectangle `{i0..=i1} × {j0..=j1}`.
    pub fn rectangle(shape: GridShape, i: (usize, usize), j: (usize, usize)) -> ConvexMask {
        ConvexMask::from_fn(shape, |(x, y)| i.0 <= x && x <= i.1 && j.0 <= y && y <= j.1)
    }

    /// Every vertex.
    pub fn full(shape: GridShape) -> ConvexMask {
        ConvexMask::from_fn(shape, |_| true)
    }

    /// The grid this set lives in.
    pub fn shape(&self) -> GridShape {
        self.shape
    }

    /// Membership test.
    pub fn contains(&self, v: Vertex) -> bool {
        self.shape.contains(v) && self.member[self.shape.index(v)]
    }

    /// The member vertices in linear-index order.
    pub fn vertices(&self) -> Vec<Vertex> {
        self.shape.vertices().filter(|&v| self.contains(v)).collect()
    }

    /// Whether the set is empty.
    pub fn is_empty(&self) -> bool {
        !self.member.iter().any(|&b| b)
    }

    /// Whether the set is convex for the componentwise order.
    pub fn is_convex(&self) -> bool {
        let vs = self.vertices();
        self.shape.vertices().all(|w| {
            self.contains(w) || !vs.iter().any(|&u| leq(u, w) && vs.iter().any(|&v| leq(w, v)))
        })
    }
}
