//! Sparse multivariate polynomials and truncated power series over the
//! exact coefficient domains, with determinant, adjugate, characteristic
//! polynomial and exterior powers for matrices of them.

mod matrix;
mod poly;
mod var;

pub use matrix::{permutations, subsets, Matrix, MatrixPoly, SymMatrixPoly};
pub use poly::{poly_mul_trunc, Monomial, MultiPoly, PolyRing};
pub use var::{Family, VarId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("coefficient domains differ: {0} vs {1}")]
    DomainMismatch(String, String),
    #[error("no value given for variable {0}")]
    UnboundVariable(String),
    #[error("exterior power {q} requires 1 <= q <= {g} - 1")]
    BadQ { q: usize, g: usize },
    #[error("matrix shapes do not match")]
    SizeMismatch,
    #[error("matrix is not symmetric")]
    NotSymmetric,
}
