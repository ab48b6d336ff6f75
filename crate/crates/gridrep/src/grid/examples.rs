//! Named example representations.

use super::rep::GridRep;
use super::shape::{Arrow, Direction, GridShape};
use crate::linalg::{Field, Matrix, Scalar};

/// Dimension grid (rows `j`, columns `i`) of [`alpha_family`].
pub const ALPHA_FAMILY_DIMS: [[usize; 5]; 3] = [[2, 2, 2, 2, 1], [3, 3, 2, 1, 0], [2, 1, 0, 0, 0]];

/// The one-parameter family of indecomposables on the grid with 5 columns
/// and 3 rows (horizontal maps epi along the first row), obtained by
/// embedding a `D̃_4` family. The parameter enters through the map
/// `(1,2) → (2,2)`, which is `[[1,0,α],[0,1,0],[0,0,1]]`.
pub fn alpha_family(alpha: &Scalar, field: Field) -> GridRep {
    assert_eq!(alpha.field(), field, "parameter from a different field");
    let shape = GridShape::new(5, 3).expect("valid shape");
    let ints = |rows: &[&[i64]]| Matrix::from_int_rows(field, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>());
    let dim = |(i, j): (usize, usize)| ALPHA_FAMILY_DIMS[j - 1][i - 1];
    let map = |a: Arrow| -> Matrix {
        let (i, j) = a.source;
        let (rows, cols) = (dim(a.target()), dim(a.source));
        match (a.dir, i, j) {
            (Direction::Horizontal, 1..=3, 1) => Matrix::identity(field, 2),
            (Direction::Horizontal, 4, 1) => ints(&[&[1, 1]]),
            (Direction::Horizontal, 1, 2) => {
                let mut m = Matrix::identity(field, 3);
                m.set(0, 2, alpha);
                m
            }
            (Direction::Horizontal, 2, 2) => ints(&[&[1, 0, 0], &[0, 1, 1]]),
            (Direction::Horizontal, 3, 2) => ints(&[&[1, 0]]),
            (Direction::Horizontal, 1, 3) => ints(&[&[0, 1]]),
            (Direction::Vertical, 1 | 2, 1) => ints(&[&[1, 0], &[0, 1], &[0, 0]]),
            (Direction::Vertical, 3, 1) => Matrix::identity(field, 2),
            (Direction::Vertical, 4, 1) => ints(&[&[1, 0]]),
            (Direction::Vertical, 1, 2) => ints(&[&[1, 0, 0], &[0, 1, 0]]),
            (Direction::Vertical, 2, 2) => ints(&[&[0, 1, 0]]),
            _ => Matrix::zeros(field, rows, cols),
        }
    };
    GridRep::build(field, shape, |v| dim(v), map)
}
