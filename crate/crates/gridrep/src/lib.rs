//! Exact computations with representations of the commutative grid quiver
//! `A_m ⊗ A_n`.
//!
//! A representation assigns a finite-dimensional vector space to every
//! vertex `(i, j)` of an `m × n` grid (`i` horizontal, `j` vertical) and a
//! linear map to every rightward and downward arrow, such that every unit
//! square commutes. This crate provides
//!
//! * [`linalg`]: exact dense linear algebra over ℚ and GF(p);
//! * [`grid`]: the data model — representations, morphisms, thin modules,
//!   projectives and injectives, sub- and quotient objects;
//! * [`hom`]: Hom spaces, isomorphism tests, minimal projective
//!   presentations, Ext groups, the Nakayama functor and the
//!   Auslander–Reiten translates;
//! * [`decomposition`]: Krull–Schmidt decomposition with certificates;
//! * [`torsion`]: the epi-kernel functor, torsion/torsion-free parts and
//!   cotorsion approximations;
//! * [`knitting`]: Auslander–Reiten quivers of representation-finite grids;
//! * [`verify`]: machine checks of torsion pairs, cotorsion pairs, tilting
//!   subcategories and cotorsion torsion triples;
//! * [`clustering`]: filtered single-linkage clustering of point clouds,
//!   producing grid representations;
//! * [`io`]: the JSON formats shared with the command-line tool.

pub mod clustering;
pub mod decomposition;
pub mod error;
pub mod grid;
pub mod hom;
pub mod io;
pub mod knitting;
pub mod linalg;
pub mod torsion;
pub mod verify;

pub use error::{Error, Result};
