//! The data model of commutative grid representations.
//!
//! A representation of the `m × n` grid assigns a vector space to each
//! vertex `(i, j)` and a matrix to each rightward and downward arrow, with
//! all unit squares commuting. Constructions never change bases silently:
//! subobjects and quotients come with explicit inclusion and projection
//! morphisms, which downstream functors compose.

mod constructions;
mod examples;
mod morphism;
mod random;
mod rep;
mod shape;

pub use constructions::{
    cokernel, direct_sum, direct_sum_all, direct_sum_or_zero, image, injective, kernel, morphism_from_sum,
    morphism_to_sum, projective, pullback, pushout, quotient, radical_bases, radical_top, simple,
    standard_module, standard_support, sub_quotient, subrep, sum_of_morphisms, thin_module, DirectSum,
    RadicalTop, StandardKind, SubQuotient,
};
pub use examples::{alpha_family, ALPHA_FAMILY_DIMS};
pub use morphism::GridMorphism;
pub use random::{random_full_row_rank, random_rep, random_rep_with, RandomConstraint};
pub use rep::{DirectionFlags, GridRep, Violation};
pub use shape::{leq, Arrow, ConvexMask, Direction, GridShape, Vertex};
