//! Exact computations with finite-dimensional (mostly characteristic 2) Lie
//! algebras: structure constants and identity checks, derivations and
//! 2-envelopes, alternating and symmetric cochain complexes, sums of nilpotent
//! subalgebras, and block analysis of Chevalley–Eilenberg differentials.

pub mod error;
pub mod exactla;
pub mod liecore;
pub mod zoo;
pub mod cohomology;
pub mod decomp;
pub mod younggraph;

pub use error::{Error, Result};

/// Crate version, recorded in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
