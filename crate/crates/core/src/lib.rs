//! Complex Hadamard matrices, Butson classes, and the quantum permutation
//! group invariants attached to them.

pub mod hadamard;
pub mod linalg;
pub mod models;
pub mod partitions;
pub mod quantum;
pub mod scalars;
