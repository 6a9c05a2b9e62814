//! Magic unitaries of Hadamard matrices and the dimensions of intertwiner
//! spaces of the associated quantum permutation groups.

mod gtensor;
mod hom;
mod invariants;
mod magic;

pub use gtensor::{g_power, g_tensor, GEntries, GPower, GTensor};
pub use hom::{
    fix_dim_direct, hom_dim_direct, hom_dim_via_g, hom_dim_via_g_with, Backend, Budget, GNormalization, HomDim,
    HomOptions, LegPlacement, RankCertificate,
};
pub use invariants::{invariants, poincare_series, InvariantMethod, InvariantSeries, MethodTag, PowerSeries};
pub use magic::{
    check_magic, image_commutative, magic_from_hadamard, orbit_components, CommutativityReport, DefectKind,
    MagicDefect, MagicEntries, MagicReport, MagicUnitary,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum QuantumError {
    #[error("not a Hadamard matrix: rows {0} and {1} are not orthogonal")]
    NotHadamard(usize, usize),
    #[error("{what} budget exceeded: need {needed}, limit {limit}")]
    BudgetExceeded { what: String, needed: u64, limit: u64 },
    #[error("numerical rank is ambiguous at tolerance {tol} (smallest retained {smallest_retained:?}, largest discarded {largest_discarded:?})")]
    RankAmbiguous { smallest_retained: Option<f64>, largest_discarded: Option<f64>, tol: f64 },
    #[error("methods disagree at k = {k}: G-tensor gives {g_tensor}, direct gives {direct}")]
    MethodDisagreement { k: usize, g_tensor: usize, direct: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
