//! Representations of the commutative grid and their validation.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};

use super::shape::{Arrow, Direction, GridShape, Vertex};

/// A representation of the commutative `m × n` grid over a field.
///
/// It stores a dimension per vertex and one structure matrix per arrow; the
/// matrix of an arrow `u → v` has size `dim(v) × dim(u)` and acts on column
/// vectors. A *valid* representation has correctly sized matrices over the
/// right field and commuting unit squares; see [`GridRep::validate`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GridRep {
    field: Field,
    shape: GridShape,
    dims: Vec<usize>,
    hmaps: Vec<Matrix>,
    vmaps: Vec<Matrix>,
}

/// One way in which a [`GridRep`] fails to be a valid representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// The dimension list does not have one entry per vertex.
    DimsLength {
        /// Expected number of entries.
        expected: usize,
        /// Number of entries present.
        found: usize,
    },
    /// The wrong number of structure matrices for one direction.
    MapCount {
        /// The direction concerned.
        dir: Direction,
        /// Expected number of matrices.
        expected: usize,
        /// Number of matrices present.
        found: usize,
    },
    /// A structure matrix has the wrong size.
    MapSize {
        /// The offending arrow.
        arrow: Arrow,
        /// Expected `(rows, cols)`.
        expected: (usize, usize),
        /// Actual `(rows, cols)`.
        found: (usize, usize),
    },
    /// A structure matrix lives over another field.
    MapField {
        /// The offending arrow.
        arrow: Arrow,
    },
    /// The unit square with top-left corner `corner` does not commute.
    NonCommuting {
        /// Top-left corner `(i, j)` of the square.
        corner: Vertex,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DimsLength { expected, found } => {
                write!(f, "expected {expected} vertex dimensions, found {found}")
            }
            Violation::MapCount { dir, expected, found } => {
                write!(f, "expected {expected} {dir:?} maps, found {found}")
            }
            Violation::MapSize { arrow, expected, found } => write!(
                f,
                "{:?} map at ({}, {}) has size {}×{}, expected {}×{}",
                arrow.dir, arrow.source.0, arrow.source.1, found.0, found.1, expected.0, expected.1
            ),
            Violation::MapField { arrow } => write!(
                f,
                "{:?} map at ({}, {}) is over a different field",
                arrow.dir, arrow.source.0, arrow.source.1
            ),
            Violation::NonCommuting { corner } => {
                write!(f, "square at ({}, {}) does not commute", corner.0, corner.1)
            }
        }
    }
}

impl GridRep {
    /// Assembles a representation from raw parts without checking them.
    ///
    /// `dims` is indexed by [`GridShape::index`], `hmaps`/`vmaps` by
    /// [`GridShape::arrow_index`]. Use [`GridRep::validate`] to check the
    /// result, or [`GridRep::new`] to do both at once.
    pub fn from_parts_unchecked(
        field: Field,
        shape: GridShape,
        dims: Vec<usize>,
        hmaps: Vec<Matrix>,
        vmaps: Vec<Matrix>,
    ) -> GridRep {
        GridRep { field, shape, dims, hmaps, vmaps }
    }

    /// Assembles and validates a representation.
    pub fn new(
        field: Field,
        shape: GridShape,
        dims: Vec<usize>,
        hmaps: Vec<Matrix>,
        vmaps: Vec<Matrix>,
    ) -> Result<GridRep> {
        let x = GridRep::from_parts_unchecked(field, shape, dims, hmaps, vmaps);
        x.check()?;
        Ok(x)
    }

    /// Builds a representation from a dimension function and a map function.
    ///
    /// The result is not validated; constructors in this crate use it only
    /// when validity holds by construction.
    pub(crate) fn build(
        field: Field,
        shape: GridShape,
        dim: impl Fn(Vertex) -> usize,
        mut map: impl FnMut(Arrow) -> Matrix,
    ) -> GridRep {
        let dims = shape.vertices().map(&dim).collect();
        let hmaps = shape.arrows_in(Direction::Horizontal).map(&mut map).collect();
        let vmaps = shape.arrows_in(Direction::Vertical).map(&mut map).collect();
        let x = GridRep { field, shape, dims, hmaps, vmaps };
        debug_assert!(x.validate().is_empty(), "constructed an invalid representation: {:?}", x.validate());
        x
    }

    /// The zero representation.
    pub fn zero(field: Field, shape: GridShape) -> GridRep {
        GridRep::build(field, shape, |_| 0, |_| Matrix::zeros(field, 0, 0))
    }

    /// The base field.
    pub fn field(&self) -> Field {
        self.field
    }

    /// The grid shape.
    pub fn shape(&self) -> GridShape {
        self.shape
    }

    /// Dimension at a vertex.
    pub fn dim(&self, v: Vertex) -> usize {
        self.dims[self.shape.index(v)]
    }

    /// Dimensions of all vertices, indexed by [`GridShape::index`].
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// The dimension grid as `n` rows of `m` entries: `grid[j-1][i-1] = dim(i, j)`.
    pub fn dim_grid(&self) -> Vec<Vec<usize>> {
        (1..=self.shape.n).map(|j| (1..=self.shape.m).map(|i| self.dim((i, j))).collect()).collect()
    }

    /// Total dimension over all vertices.
    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Whether every vertex space is zero.
    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// Structure matrix of an arrow.
    pub fn map(&self, a: Arrow) -> &Matrix {
        let k = self.shape.arrow_index(a.dir, a.source);
        match a.dir {
            Direction::Horizontal => &self.hmaps[k],
            Direction::Vertical => &self.vmaps[k],
        }
    }

    /// Structure matrix of the horizontal arrow leaving `v`.
    pub fn hmap(&self, v: Vertex) -> &Matrix {
        self.map(Arrow { dir: Direction::Horizontal, source: v })
    }

    /// Structure matrix of the vertical arrow leaving `v`.
    pub fn vmap(&self, v: Vertex) -> &Matrix {
        self.map(Arrow { dir: Direction::Vertical, source: v })
    }

    /// The structure map along the unique path `u → v` (requires `u ≤ v`):
    /// horizontal steps first, which by commutativity equals any other path.
    pub fn path_map(&self, u: Vertex, v: Vertex) -> Matrix {
        assert!(super::shape::leq(u, v), "no path from {u:?} to {v:?}");
        let mut acc = Matrix::identity(self.field, self.dim(u));
        let mut cur = u;
        while cur.0 < v.0 {
            acc = self.hmap(cur).mul(&acc);
            cur.0 += 1;
        }
        while cur.1 < v.1 {
            acc = self.vmap(cur).mul(&acc);
            cur.1 += 1;
        }
        acc
    }

    /// All violations of the representation axioms; empty iff valid.
    pub fn validate(&self) -> Vec<Violation> {
        let s = self.shape;
        let mut out = Vec::new();
        if self.dims.len() != s.num_vertices() {
            out.push(Violation::DimsLength { expected: s.num_vertices(), found: self.dims.len() });
            return out;
        }
        let mut sizes_ok = true;
        for (dir, maps) in [(Direction::Horizontal, &self.hmaps), (Direction::Vertical, &self.vmaps)] {
            if maps.len() != s.num_arrows(dir) {
                out.push(Violation::MapCount { dir, expected: s.num_arrows(dir), found: maps.len() });
                sizes_ok = false;
                continue;
            }
            for (k, mat) in maps.iter().enumerate() {
                let arrow = Arrow { dir, source: s.arrow_source(dir, k) };
                let expected = (self.dim(arrow.target()), self.dim(arrow.source));
                let found = (mat.rows(), mat.cols());
                if mat.field() != self.field {
                    out.push(Violation::MapField { arrow });
                    sizes_ok = false;
                } else if expected != found {
                    out.push(Violation::MapSize { arrow, expected, found });
                    sizes_ok = false;
                }
            }
        }
        if sizes_ok {
            for c in s.squares() {
                let right_down = self.vmap((c.0 + 1, c.1)).mul(self.hmap(c));
                let down_right = self.hmap((c.0, c.1 + 1)).mul(self.vmap(c));
                if right_down != down_right {
                    out.push(Violation::NonCommuting { corner: c });
                }
            }
        }
        out
    }

    /// `Ok` if valid, otherwise an [`Error::InvalidRep`] listing the violations.
    pub fn check(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            let msgs: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            Err(Error::InvalidRep(msgs.join("; ")))
        }
    }

    /// Checks that `other` lives over the same grid and field.
    pub fn check_compatible(&self, other: &GridRep) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch(format!(
                "{}×{} grid versus {}×{} grid",
                self.shape.m, self.shape.n, other.shape.m, other.shape.n
            )));
        }
        if self.field != other.field {
            return Err(Error::ShapeMismatch(format!("field {} versus {}", self.field, other.field)));
        }
        Ok(())
    }

    /// Direction flags: which families of structure maps are all epi or all
    /// mono. A map is epi iff it has full row rank and mono iff it has full
    /// column rank; an empty family satisfies every flag.
    pub fn direction_flags(&self) -> DirectionFlags {
        let check = |dir: Direction, epi: bool| {
            self.shape.arrows_in(dir).all(|a| {
                let mat = self.map(a);
                let r = mat.rank();
                if epi {
                    r == mat.rows()
                } else {
                    r == mat.cols()
                }
            })
        };
        DirectionFlags {
            all_horizontal_epi: check(Direction::Horizontal, true),
            all_horizontal_mono: check(Direction::Horizontal, false),
            all_vertical_epi: check(Direction::Vertical, true),
            all_vertical_mono: check(Direction::Vertical, false),
        }
    }

    /// The first arrow of direction `dir` whose map is not epi (resp. mono).
    pub fn first_failing_arrow(&self, dir: Direction, epi: bool) -> Option<Arrow> {
        self.shape.arrows_in(dir).find(|&a| {
            let mat = self.map(a);
            let r = mat.rank();
            if epi {
                r != mat.rows()
            } else {
                r != mat.cols()
            }
        })
    }

    /// The vector-space dual `D X = Hom(X, k)`: lives on the same shape with
    /// vertices relabelled by the half-turn `(i, j) ↦ (m+1−i, n+1−j)`, and
    /// structure matrices transposed. `D` sends projectives to injectives and
    /// `D D X = X` on the nose.
    pub fn dual(&self) -> GridRep {
        let s = self.shape;
        GridRep::build(
            self.field,
            s,
            |v| self.dim(s.opposite(v)),
            |a| {
                // The arrow a: u → u+e corresponds to the reversed arrow
                // opposite(u+e) → opposite(u) of the original.
                let src = s.opposite(a.target());
                self.map(Arrow { dir: a.dir, source: src }).transpose()
            },
        )
    }

    /// The same representation viewed on the transposed grid: vertex
    /// `(i, j)` becomes `(j, i)` and horizontal and vertical arrows swap.
    pub fn transpose(&self) -> GridRep {
        let t = self.shape.transposed();
        GridRep::build(
            self.field,
            t,
            |(i, j)| self.dim((j, i)),
            |a| self.map(Arrow { dir: a.dir.other(), source: (a.source.1, a.source.0) }).clone(),
        )
    }

    /// The representation with every structure matrix replaced by its
    /// conjugate under a change of basis `g_v` (invertible) at each vertex:
    /// the map of `u → v` becomes `g_v · A · g_u⁻¹`.
    pub fn change_basis(&self, g: &[Matrix]) -> Result<GridRep> {
        if g.len() != self.shape.num_vertices() {
            return Err(Error::DimensionMismatch("one basis change per vertex required".into()));
        }
        let mut inv = Vec::with_capacity(g.len());
        for (k, gv) in g.iter().enumerate() {
            if gv.rows() != self.dims[k] {
                return Err(Error::DimensionMismatch(format!("basis change at vertex {k} has wrong size")));
            }
            inv.push(gv.inverse().ok_or_else(|| Error::Precondition("basis change not invertible".into()))?);
        }
        let s = self.shape;
        Ok(GridRep::build(self.field, s, |v| self.dim(v), |a| {
            g[s.index(a.target())].mul(self.map(a)).mul(&inv[s.index(a.source)])
        }))
    }
}

impl fmt::Debug for GridRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GridRep[{}; {}×{}; dims {:?}]", self.field, self.shape.m, self.shape.n, self.dim_grid())
    }
}

/// Which families of structure maps are all epimorphisms or monomorphisms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct DirectionFlags {
    /// Every horizontal map is surjective.
    pub all_horizontal_epi: bool,
    /// Every horizontal map is injective.
    pub all_horizontal_mono: bool,
    /// Every vertical map is surjective.
    pub all_vertical_epi: bool,
    /// Every vertical map is injective.
    pub all_vertical_mono: bool,
}

impl DirectionFlags {
    /// The epi flag for direction `dir`.
    pub fn epi(&self, dir: Direction) -> bool {
        match dir {
            Direction::Horizontal => self.all_horizontal_epi,
            Direction::Vertical => self.all_vertical_epi,
        }
    }

    /// The mono flag for direction `dir`.
    pub fn mono(&self, dir: Direction) -> bool {
        match dir {
            Direction::Horizontal => self.all_horizontal_mono,
            Direction::Vertical => self.all_vertical_mono,
        }
    }
}
