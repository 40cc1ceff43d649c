use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("odd-index Euler number not used by this artifact (index {0})")]
    OddEulerIndex(u32),

    #[error("conductor mismatch: {left} vs {right}")]
    ConductorMismatch { left: u32, right: u32 },

    #[error("conductor {from} does not divide {to}")]
    ConductorNotDivisor { from: u32, to: u32 },

    #[error("division by zero in the cyclotomic field")]
    DivisionByZero,

    #[error("matrix shape mismatch: {0}")]
    Shape(String),

    #[error("singular system: no nonzero pivot in column {column}")]
    Singular { column: usize },

    #[error("inconsistent overdetermined system: row {row} has a nonzero exact residual")]
    Inconsistent { row: usize },

    #[error("element is not real under the principal embedding (imaginary part ~ {0})")]
    NotReal(String),

    #[error("monomial transform parity mismatch: {0}")]
    Parity(String),

    #[error("spurious pi^{exponent} term did not cancel in the Fourier coefficient")]
    NonCancellation { exponent: u32 },

    #[error("unsupported Dirichlet series order {order}: values for other orders are an open question")]
    UnsupportedOrder { order: u32 },

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("invalid query: {0}")]
    InvalidQuery(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
