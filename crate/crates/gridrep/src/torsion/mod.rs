//! Torsion pairs, cotorsion pairs and the functors between them.
//!
//! Every approximation is returned as an [`ApproximationSequence`]
//! `L ↪ M ↠ R` with explicit maps. The slice-wise constructions (torsion
//! parts, cotorsion covers and envelopes along a direction) work column by
//! column; the generic constructions (trace, reject, universal extensions,
//! tilting covers) only need a finite list of generators. The functor `𝗍`
//! sends a representation of the `m × n` grid whose horizontal maps are
//! epimorphisms to the kernels of the maps into the last row, a
//! representation of the `m × (n−1)` grid.

mod classes;
mod columns;
mod functors;
mod sequence;
mod tilting;

pub use classes::{rectangles, t_ij, t_ij_generators, Class, PresetName, TripleKind, TriplePreset};
pub use functors::{
    cotorsion_cover, cotorsion_envelope, t_epi_kernel, t_mono_cokernel, torsion_torsionfree, EpiKernel,
};
pub use sequence::{ApproximationSequence, SequenceDims};
pub use tilting::{
    cotilting_cover, cotilting_envelope, equal_modulo, factors_through_add, reject_sequence, tilting_cover,
    trace_sequence, universal_extension,
};
