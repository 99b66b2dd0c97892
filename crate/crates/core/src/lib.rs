//! Exact computations for isolated hypersurface singularities over `Q` and `F_p`:
//! Milnor and Tjurina numbers, Newton and C-polytope filtrations, graded algebras,
//! non-degeneracy conditions, normal forms and determinacy bounds.

#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod equiv;
pub mod error;
pub mod ext;
pub mod field;
pub mod grading;
pub mod linalg;
pub mod localalg;
pub mod newton;
pub mod nondeg;
pub mod normalform;
pub mod parse;
pub mod poly;
pub mod selftest;

pub use error::{Error, Result};
pub use ext::ExtNat;
pub use field::{Coeff, Field};
pub use poly::{Automorphism, Derivation, Mono, Poly};
