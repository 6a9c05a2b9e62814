//! Scalar types: exact cyclotomic numbers, tolerant floating complex numbers,
//! and norm-equation solvability.

pub mod approx;
pub mod cyclo;
pub mod norm;

pub use approx::{ApproxComplex, DEFAULT_TOL};
pub use cyclo::{cyclo_eval, cyclo_is_zero, cyclo_root, CycloReducer, CycloScalar};
pub use norm::{hermitian_norm_solvable, NormVerdict};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("cyclotomic order must be at least 1")]
    ZeroOrder,
    #[error("order {order} requires {order} coefficients, got {len}")]
    LengthMismatch { order: usize, len: usize },
}
