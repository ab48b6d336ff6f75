//! The Nakayama functor and the Auslander–Reiten translates.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grid::{kernel, GridMorphism, GridRep};

use super::projective::{minimal_presentation, nakayama_map, nakayama_sum, ProjectiveSum};

/// Recognizes a projective representation: returns `P0` with an
/// isomorphism `⊕ P_{v_s} → X`, or an error if `X` is not projective.
pub fn recognize_projective(x: &Arc<GridRep>) -> Result<(ProjectiveSum, GridMorphism)> {
    let pres = minimal_presentation(x);
    if !pres.p1.is_zero() {
        return Err(Error::Precondition("representation is not projective".into()));
    }
    Ok((pres.p0, pres.cover))
}

/// The Nakayama functor on a projective representation: replaces each
/// summand `P_v` by `I_v`.
pub fn nakayama(x: &Arc<GridRep>) -> Result<GridRep> {
    let (p, _) = recognize_projective(x)?;
    Ok(nakayama_sum(&p).rep())
}

/// The Auslander–Reiten translate `τX = ker(ν P_1 → ν P_0)`, computed from
/// the minimal projective presentation `P_1 → P_0 ↠ X`. Projective summands
/// contribute nothing; the construction is additive.
pub fn tau(x: &Arc<GridRep>) -> GridRep {
    let pres = minimal_presentation(x);
    let n1 = Arc::new(nakayama_sum(&pres.p1).rep());
    let n0 = Arc::new(nakayama_sum(&pres.p0).rep());
    let nd = nakayama_map(&pres.d_coeffs, n1, n0);
    let (k, _) = kernel(&nd);
    Arc::unwrap_or_clone(k)
}

/// The inverse translate `τ⁻X = D τ D X`.
pub fn tau_inv(x: &Arc<GridRep>) -> GridRep {
    let dx = Arc::new(x.dual());
    tau(&dx).dual()
}
