//! Ext groups from projective resolutions.

use crate::error::Result;
use crate::grid::GridRep;
use crate::linalg::Matrix;

use super::projective::{projective_resolution, ProjMap};

/// The map `Hom(P_{k−1}, Y) → Hom(P_k, Y)` induced by a differential, using
/// `Hom(P_v, Y) = Y(v)`: the block for generators `(s, t)` is
/// `C[s][t] · Y(v_s → u_t)`.
pub(crate) fn induced_cochain_map(d: &ProjMap, y: &GridRep) -> Matrix {
    let field = y.field();
    let src = &d.target.tops; // generators of P_{k−1}
    let tgt = &d.source.tops; // generators of P_k
    let row_off: Vec<usize> = offsets(tgt.iter().map(|&u| y.dim(u)));
    let col_off: Vec<usize> = offsets(src.iter().map(|&v| y.dim(v)));
    let mut m = Matrix::zeros(field, *row_off.last().unwrap(), *col_off.last().unwrap());
    for (s, &v) in src.iter().enumerate() {
        for (t, &u) in tgt.iter().enumerate() {
            let c = d.coeffs.get(s, t);
            if !c.is_zero() {
                m.set_block(row_off[t], col_off[s], &y.path_map(v, u).scale(&c));
            }
        }
    }
    m
}

fn offsets(sizes: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut out = vec![0];
    for s in sizes {
        out.push(out.last().unwrap() + s);
    }
    out
}

/// Dimensions of `Ext^k(X, Y)` for `k = 0, 1, 2, …` up to the length of
/// the minimal projective resolution of `X` (so `Ext^0 = Hom`).
pub fn ext_dims(x: &std::sync::Arc<GridRep>, y: &GridRep) -> Result<Vec<usize>> {
    x.check_compatible(y)?;
    let res = projective_resolution(x);
    let cochain_dims: Vec<usize> =
        res.terms.iter().map(|p| p.tops.iter().map(|&v| y.dim(v)).sum()).collect();
    let ranks: Vec<usize> = res.maps.iter().map(|d| induced_cochain_map(d, y).rank()).collect();
    // δ_k : C^k → C^{k+1} has rank ranks[k]; Ext^k = C^k − rank δ_k − rank δ_{k−1}.
    Ok((0..cochain_dims.len())
        .map(|k| {
            let out = ranks.get(k).copied().unwrap_or(0);
            let inc = if k > 0 { ranks[k - 1] } else { 0 };
            cochain_dims[k] - out - inc
        })
        .collect())
}

/// `dim Ext^k(X, Y)`; zero beyond the projective dimension of `X`.
pub fn ext_dim(x: &std::sync::Arc<GridRep>, y: &GridRep, k: usize) -> Result<usize> {
    Ok(ext_dims(x, y)?.get(k).copied().unwrap_or(0))
}
