//! Matrix models: the Pauli model of S_4^+, the Klein-group Fourier transform
//! to SO_3^{-1} coordinates, and free hypergeometric moments.

mod hypergeom;
mod klein;
mod pauli;

pub use hypergeom::{free_hg_formula, free_hg_oracle, free_hg_q};
pub use klein::{
    all_permutations, check_so3q_relations, klein_fourier, klein_matrix, permutation_magic, OperatorGrid,
    RelationDefect, RelationKind, RelationReport,
};
pub use pauli::{
    model_word_expectation, model_word_expectations, pauli_basis, pauli_magic, su2_sample, su2_sample_rng, SpinElement,
};

use crate::partitions::PartitionError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ModelError {
    #[error("conjugated matrix is not of the form diag(1, a): residual {residual}")]
    NotBlockDiagonal { residual: f64 },
    #[error("degenerate parameter: {0}")]
    DegenerateParameter(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Partition(#[from] PartitionError),
}
