use thiserror::Error;

/// Errors produced by the Hecke-ring machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeckeError {
    #[error("matrix is singular")]
    SingularMatrix,

    #[error("matrix does not act on Z^2/diag[{d1},{d2}]Z^2: (2,1) entry must be divisible by {d2}/{d1}")]
    IllDefinedAction { d1: String, d2: String },

    #[error("element is not in the monoid: {0}")]
    NotInMonoid(String),

    #[error("determinant {det} is not a signed power of {p}")]
    NotLocallyIntegral { det: String, p: u64 },

    #[error("locality mismatch: {0}")]
    LocalityMismatch(String),

    #[error("{what} needs {needed} steps, over the budget of {budget}")]
    SizeLimit { what: String, needed: u128, budget: u64 },

    #[error("formula mismatch: {0}")]
    FormulaMismatch(String),

    #[error("no noncommuting pair found for p = {0}")]
    WitnessNotFound(u64),

    #[error("budget exhausted before a conclusion was reached: {0}")]
    BudgetExhausted(String),

    #[error("no (j, i) parameters describe this local class: {0}")]
    NoLocalParameters(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, HeckeError>;

impl HeckeError {
    /// Stable variant name, used in machine-readable error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            HeckeError::SingularMatrix => "SingularMatrix",
            HeckeError::IllDefinedAction { .. } => "IllDefinedAction",
            HeckeError::NotInMonoid(_) => "NotInMonoid",
            HeckeError::NotLocallyIntegral { .. } => "NotLocallyIntegral",
            HeckeError::LocalityMismatch(_) => "LocalityMismatch",
            HeckeError::SizeLimit { .. } => "SizeLimit",
            HeckeError::FormulaMismatch(_) => "FormulaMismatch",
            HeckeError::WitnessNotFound(_) => "WitnessNotFound",
            HeckeError::BudgetExhausted(_) => "BudgetExhausted",
            HeckeError::NoLocalParameters(_) => "NoLocalParameters",
            HeckeError::InvalidInput(_) => "InvalidInput",
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        HeckeError::InvalidInput(msg.into())
    }
}

impl From<serde_json::Error> for HeckeError {
    fn from(e: serde_json::Error) -> Self {
        HeckeError::InvalidInput(e.to_string())
    }
}
