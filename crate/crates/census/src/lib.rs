//! Census of ternary maps on a finite set that arise as `(x*y)*z` or `x*(y*z)`
//! for some binary operation `*`.
//!
//! Every op of the base-`n` counter is evaluated, keys are packed into `u128`
//! and deduplicated in shards keyed by their lowest bits.

mod error;
mod scan;
pub mod stretch;
mod table;

pub use error::CensusError;
pub use scan::{
    census, census_sets, conjecture_check, lr_overlap, lr_report, CensusConfig, CensusResult, CensusSets,
    ConjectureOutcome, LrReport, Which,
};
pub use table::{entry_bits, left_table, op_count, right_table, BinaryOpTable, TernaryMapKey, MAX_N};

/// Crate version, recorded in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
