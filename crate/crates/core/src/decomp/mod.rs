//! Sums of two nilpotent subalgebras: certificates, the Petravchuk example,
//! a seeded search, and the lower central series of `S ⊗ A + D`.

mod certificate;
mod formula;
mod search;

pub use certificate::{petravchuk_fixture, verify, DecompositionCertificate};
pub use formula::{current_extension_parts, current_extension_series, FormulaTerm};
pub use search::{search, SearchOptions, SearchOutcome, DEFAULT_BUDGET};
