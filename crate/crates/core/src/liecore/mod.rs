//! Structure-constant algebras, identity validators, subalgebras and their
//! series, derivations, and 2-envelopes.

mod algebra;
mod derivations;
mod envelope;
mod series;
mod validate;

pub use algebra::StructureAlgebra;
pub use derivations::{commutator, derivations, is_derivation, leibniz_failure, linear_lie_algebra, DerivationAlgebra};
pub use envelope::{two_envelope, Envelope};
pub use series::{
    close, full_series, is_nilpotent, is_solvable, nilpotency_index, series, subalgebra_closure, SeriesKind,
    SeriesReport,
};
pub use validate::{satisfies, validate, validate_named, Identity, ValidationReport, Witness};
