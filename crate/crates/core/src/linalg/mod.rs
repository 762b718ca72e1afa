//! Exact rational linear algebra and the brute-force oracle.

mod matrix;
mod oracle;
pub mod rational;

pub use matrix::RMatrix;
pub(crate) use oracle::max_abs_entry;
pub use oracle::{adjugate, cofactor_sum, det_bareiss, inverse_exact, rank};
pub use rational::{format_rational, int, parse_rational, pow, ratio, sign_pow, Rational};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("{op} needs a square matrix, got {rows}x{cols}")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },
    #[error("matrix is singular")]
    Singular,
    #[error("ragged rows: expected {expected} entries, found {found}")]
    Ragged { expected: usize, found: usize },
    #[error("index {index} out of range for order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("{labels} labels for a matrix of order {order}")]
    LabelCount { order: usize, labels: usize },
    #[error("invalid rational literal {0:?}")]
    BadRational(String),
    #[error("csv line {line}: {message}")]
    Csv { line: usize, message: String },
}

/// `jᵀ v`.
pub fn sum(v: &[Rational]) -> Rational {
    v.iter().sum()
}
