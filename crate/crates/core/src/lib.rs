//! Exact values of the lattice sums
//!
//! ```text
//! S(n,k,l) = Σ_{j∈ℤ} 1/(jk+l)^n        Ŝ(n,k,l) = Σ_{j∈ℤ} (-1)^j/(jk+l)^n
//! ```
//!
//! as algebraic multiples of `π^n`, computed from Fourier-polynomial identities
//! and exact linear algebra over cyclotomic fields, with an independent
//! arbitrary-precision oracle for cross-checks.
//!
//! ```
//! use zetakit::{evaluate, SumKind, SumQuery};
//!
//! let q = SumQuery::new(SumKind::S, 2, 8, 1).unwrap();
//! assert_eq!(evaluate(&q).unwrap().to_string(), "π²·(1+√2/2)/16");
//! ```

pub mod cli;
pub mod cyclofield;
pub mod error;
pub mod fourierpolys;
pub mod numerics;
pub mod numtheory;
pub mod sumsolver;

pub use cyclofield::{AlgebraicPiMultiple, CycloElement, CycloMatrix, Trig};
pub use error::{Error, Result};
pub use fourierpolys::{NormalizedPolynomial, PiPolynomial};
pub use numerics::{PrecisionContext, Real};
pub use numtheory::Rational;
pub use sumsolver::{evaluate, hurwitz_combination, solve_family, SumKind, SumQuery};
