use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid {field}: {reason}")]
    Invalid { field: &'static str, reason: String },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("subset references unknown user position {0}")]
    UnknownUser(usize),

    #[error("regime precondition `{condition}` violated (margin {margin})")]
    Regime {
        condition: &'static str,
        margin: f64,
    },

    #[error("genie parameters outside the admissible domain: {0}")]
    GenieDomain(String),

    #[error("no feasible basic point")]
    Infeasible,
}

impl Error {
    pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Self {
        Error::Invalid {
            field,
            reason: reason.into(),
        }
    }
}
