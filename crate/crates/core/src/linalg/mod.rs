//! Exact rational linear algebra: scalars, sparse vectors and matrices,
//! kernels, span solves and small eigenproblems.

pub mod coo;
pub mod eigen;
pub mod elimination;
pub mod matrix;
pub mod rational;
pub mod vector;

use thiserror::Error;

pub use eigen::{rational_eigenpairs, EigenDecomposition, Eigenpair};
pub use elimination::{kernel_basis, rank, solve_in_span, solve_in_span_vectors, SpanSolution};
pub use matrix::OperatorMatrix;
pub use rational::Rational;
pub use vector::RationalVector;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("matrix of dimension {dim} exceeds the limit of {max}")]
    TooLarge { dim: usize, max: usize },
    #[error("only {found} rational eigenvectors for dimension {dim}")]
    IncompleteEigenbasis { found: usize, dim: usize },
    #[error("parse error: {0}")]
    Parse(String),
}
