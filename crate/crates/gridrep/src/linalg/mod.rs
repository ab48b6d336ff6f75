//! Exact dense linear algebra over ℚ and GF(p).
//!
//! Everything downstream — kernels of structure maps, Hom spaces, projective
//! presentations, endomorphism splitting — reduces to the operations here:
//! reduced row echelon forms, null spaces, linear solves, characteristic
//! polynomials and their irreducible factorizations. Arithmetic is exact
//! everywhere; there is no floating point in this module.

mod arith;
mod factor;
mod field;
mod matrix;
mod poly;

pub(crate) use arith::{Arith, Fp, Qq};
pub use field::{Field, Scalar};
pub use matrix::{Matrix, Rref};
pub(crate) use matrix::{with_arith, Storage};
pub use poly::Poly;
