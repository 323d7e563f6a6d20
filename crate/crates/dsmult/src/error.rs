//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported Cartan type `{0}`")]
    UnsupportedCartanType(String),

    #[error("singular point: {0}")]
    SingularPoint(String),

    #[error("Weyl group of `{0}` does not contain -1")]
    MinusOneRequired(String),

    #[error("axiom system internally inconsistent: {0}")]
    InternalAxiomConflict(String),

    #[error("argument does not belong to this table's root datum: {0}")]
    DomainMismatch(String),

    #[error("axiom system does not determine the table uniquely: {0}")]
    UniquenessFailure(String),

    #[error("not an elliptic element: {0}")]
    NotElliptic(String),

    #[error("unknown Levi label `{0}`")]
    UnknownLevi(String),

    #[error("catalog is missing required data: {0}")]
    IncompleteCatalog(String),

    #[error("quadrature check only supported on compact-form entries: {0}")]
    UnsupportedForQuadrature(String),

    #[error("invalid packet datum: {0}")]
    InvalidPacket(String),

    #[error("adjoint relation violated at {0}")]
    AdjointRelationFailure(String),

    #[error("dangling catalog reference: {0}")]
    BrokenReference(String),

    #[error("schema violation: {0}")]
    Schema(String),

    #[error("coefficient relation violated: {0}")]
    CoefficientRelationFailure(String),

    #[error("operation requires a semisimple class: {0}")]
    RequiresSemisimple(String),

    #[error("spectral and geometric routes disagree: {0}")]
    RouteMismatch(String),

    #[error("incomplete arithmetic data; missing entries for {0}")]
    IncompleteArithmeticData(String),

    #[error("multiplicity total is not a non-negative integer: {0}")]
    NonIntegralMultiplicity(String),

    #[error("stable and invariant packet totals disagree: {0}")]
    StabilizationInconsistency(String),

    #[error("Lefschetz identity violated: {0}")]
    LefschetzInconsistency(String),

    #[error("regular parameter required: {0}")]
    RegularityRequired(String),

    #[error("not a discrete-series parameter: {0}")]
    NotDiscreteSeries(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// CLI exit code: 2 for input/schema problems, 1 for computation
    /// failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::UnsupportedCartanType(_)
            | Error::Schema(_)
            | Error::BrokenReference(_)
            | Error::UnknownLevi(_)
            | Error::InvalidInput(_)
            | Error::Io(_)
            | Error::Json(_)
            | Error::DomainMismatch(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
