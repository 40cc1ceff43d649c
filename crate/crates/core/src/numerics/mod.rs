//! Independent arbitrary-precision numerics: fixed-point reals, direct
//! summation of the lattice sums, Hurwitz zeta values and Fourier quadrature.

mod oracle;
mod quadrature;
pub mod real;

pub use oracle::{
    alternating_hurwitz, hurwitz_combination_residual, hurwitz_direct, multiplication_theorem_check, numeric_eval,
    numeric_eval_estimate, progression_sum, Estimate, PrecisionContext,
};
pub use quadrature::quadrature_fourier;
pub use real::Real;
