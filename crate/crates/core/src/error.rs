use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unsupported identity {0:?}")]
    UnsupportedIdentity(String),
    #[error("{part} is not closed under the product: [{}, {}] escapes it", witness.0, witness.1)]
    NotASubalgebra { part: String, witness: (usize, usize) },
    #[error("the algebra has a nonzero center of dimension {0}")]
    UnsupportedCenter(usize),
    #[error("characteristic {found} not supported here (need {needed})")]
    WrongCharacteristic { needed: u32, found: u32 },
    #[error("matrix is not a derivation: Leibniz rule fails on basis pair ({}, {})", .0.0, .0.1)]
    NotADerivation((usize, usize)),
    #[error("not a Lie algebra: {0}")]
    NotALieAlgebra(String),
    #[error("not a representation: rho([e{}, e{}]) != [rho(e{}), rho(e{})]", .0.0, .0.1, .0.0, .0.1)]
    NotARepresentation((usize, usize)),
    #[error("degree {degree} exceeds the configured budget {budget}")]
    DegreeBudget { degree: usize, budget: usize },
    #[error("d o d != 0 at degree {0}")]
    NotAComplex(usize),
    #[error("decomposition check failed: {0}")]
    DecompositionFailed(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
