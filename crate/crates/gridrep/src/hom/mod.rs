//! Hom spaces, isomorphism tests, minimal projective presentations, Ext
//! groups, the Nakayama functor and the Auslander–Reiten translates.
//!
//! Hom spaces are computed as one global null-space problem over all
//! intertwining equations. Ext groups come from the cochain complex
//! `Hom(P_•, Y)` of a minimal projective resolution, using the Yoneda
//! isomorphism `Hom(P_v, Y) = Y(v)`. The Nakayama functor acts on maps
//! between projectives in coefficient form (see [`projective`]): a map
//! `P_u → P_v` sending the generator to `c` times the path element goes to
//! `c` times the canonical map `I_u → I_v`.

mod ext;
mod homspace;
pub mod projective;
mod translate;

pub use ext::{ext_dim, ext_dims};
pub(crate) use homspace::random_combination;
pub use homspace::{hom_basis, hom_dim, is_isomorphic, IsoOutcome, IsoVerdict, ISO_TRIALS};
pub use projective::{
    minimal_presentation, nakayama_map, nakayama_sum, projective_cover, projective_resolution, InjectiveSum,
    Presentation, ProjMap, ProjectiveSum, Resolution,
};
pub use translate::{nakayama, recognize_projective, tau, tau_inv};
