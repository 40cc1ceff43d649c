//! Exact arithmetic in cyclotomic fields `Q(ζ_N)` and dense linear algebra
//! over them. Cosines and sines of rational multiples of π live here.

mod element;
mod matrix;
mod pi_multiple;

pub use element::{CycloElement, Trig};
pub use matrix::{node_matrix, solve_linear_system, CycloMatrix};
pub use pi_multiple::AlgebraicPiMultiple;

pub(crate) use pi_multiple::superscript;
