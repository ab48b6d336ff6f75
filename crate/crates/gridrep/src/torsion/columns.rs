//! Viewing a grid representation as a horizontal sequence of column
//! representations (each a representation of the vertical line).

use std::sync::Arc;

use crate::grid::{Arrow, Direction, GridMorphism, GridRep, GridShape};

/// Column `i` as a representation of the `1 × n` grid.
pub(crate) fn column(x: &GridRep, i: usize) -> GridRep {
    let n = x.shape().n;
    let s = GridShape { m: 1, n };
    GridRep::build(x.field(), s, |(_, j)| x.dim((i, j)), |a| {
        x.map(Arrow { dir: Direction::Vertical, source: (i, a.source.1) }).clone()
    })
}

/// All columns, left to right.
pub(crate) fn columns(x: &GridRep) -> Vec<Arc<GridRep>> {
    (1..=x.shape().m).map(|i| Arc::new(column(x, i))).collect()
}

/// The horizontal structure map from column `i` to column `i + 1`.
pub(crate) fn column_map(x: &GridRep, i: usize, source: Arc<GridRep>, target: Arc<GridRep>) -> GridMorphism {
    GridMorphism::build(source, target, |(_, j)| x.hmap((i, j)).clone())
}

/// Reassembles a representation from columns and the maps between
/// consecutive columns.
pub(crate) fn from_columns(cols: &[Arc<GridRep>], maps: &[GridMorphism]) -> GridRep {
    let field = cols[0].field();
    let n = cols[0].shape().n;
    let s = GridShape { m: cols.len(), n };
    GridRep::build(field, s, |(i, j)| cols[i - 1].dim((1, j)), |a| {
        let (i, j) = a.source;
        match a.dir {
            Direction::Horizontal => maps[i - 1].comp((1, j)).clone(),
            Direction::Vertical => cols[i - 1].vmap((1, j)).clone(),
        }
    })
}

/// Assembles a morphism from its column components.
pub(crate) fn morphism_from_columns(
    source: Arc<GridRep>,
    target: Arc<GridRep>,
    comps: &[GridMorphism],
) -> GridMorphism {
    GridMorphism::build(source, target, |(i, j)| comps[i - 1].comp((1, j)).clone())
}
