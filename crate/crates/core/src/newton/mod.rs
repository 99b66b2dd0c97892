//! Newton polyhedra, C-polytopes and piecewise valuations.

mod cpolytope;
mod diagram;
pub mod rational;

pub use cpolytope::{CPolytope, Extension, Face, Origin, Valuation};
pub use diagram::{newton_diagram, DiagramFace, Halfspace, NewtonData};
