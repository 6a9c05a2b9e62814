//! Linear algebra back ends shared by the partition and quantum modules.

pub mod exact;
pub mod modp;
pub mod nullspace;
pub mod surd;
