use thiserror::Error;

/// Errors raised by series evaluation, operators and identity checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum HornError {
    #[error("pole: {0}")]
    Pole(String),
    #[error("overflow: {0}")]
    Overflow(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("series did not converge: {0}")]
    NonConvergence(String),
    #[error("index {index} exceeds the configured limit {limit}")]
    IndexLimit { index: i64, limit: usize },
    #[error("{function} takes {expected} parameters, got {got}")]
    Arity {
        function: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("inadmissible instance: {}", .0.join("; "))]
    Admissibility(Vec<String>),
    #[error("quadrature failed: {0}")]
    Quadrature(String),
    #[error("sampling exhausted after {attempts} rejections: {last_reason}")]
    SamplingExhausted { attempts: usize, last_reason: String },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
}

impl HornError {
    /// Short machine-readable tag, used as the skip/failure reason key in reports.
    pub fn kind(&self) -> &'static str {
        match self {
            HornError::Pole(_) => "pole",
            HornError::Overflow(_) => "overflow",
            HornError::Domain(_) => "domain",
            HornError::NonConvergence(_) => "non_convergence",
            HornError::IndexLimit { .. } => "index_limit",
            HornError::Arity { .. } => "arity",
            HornError::Admissibility(_) => "admissibility",
            HornError::Quadrature(_) => "quadrature",
            HornError::SamplingExhausted { .. } => "sampling_exhausted",
            HornError::Config(_) => "config",
            HornError::UnknownIdentity(_) => "unknown_identity",
        }
    }
}

pub type Result<T> = std::result::Result<T, HornError>;
