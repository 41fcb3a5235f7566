//! Exact linear algebra: modular elimination, reconstruction, and small exact solvers.

pub mod exact;
pub mod modp;
pub mod recon;
