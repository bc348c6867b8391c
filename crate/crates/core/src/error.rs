use thiserror::Error;

/// Errors raised by the library.
///
/// The variants fall into three groups that the command-line front end maps
/// onto distinct exit codes: malformed input (`Parse`, `Validation`,
/// `UnknownLabel`), violated preconditions (`Precondition`,
/// `SignatureMismatch`, `NotCongruence`, `Io`) and exhausted search budgets
/// (`GuardExceeded`).
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {}", .0.join("; "))]
    Validation(Vec<String>),

    #[error("unknown element label `{0}`")]
    UnknownLabel(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("partition is not a congruence: {0}")]
    NotCongruence(String),

    #[error("guard exceeded: {what} would exceed the limit of {limit}")]
    GuardExceeded { what: String, limit: usize },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn guard(what: impl Into<String>, limit: usize) -> Self {
        Error::GuardExceeded {
            what: what.into(),
            limit,
        }
    }

    /// True for errors caused by an exhausted search budget.
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::GuardExceeded { .. })
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Search budgets shared by the enumeration routines.
#[derive(Clone, Debug)]
pub struct Guards {
    /// Largest universe accepted by the subalgebra search.
    pub subalgebra_universe: usize,
    /// Largest number of congruences collected by `congruence_lattice`.
    pub congruences: usize,
    /// Largest universe a diagram limit or direct product may have.
    pub limit_size: usize,
    /// Largest number of candidate generator assignments in homomorphism search.
    pub hom_search: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            subalgebra_universe: 16,
            congruences: 100_000,
            limit_size: 64,
            hom_search: 10_000_000,
        }
    }
}

impl Guards {
    /// Default guards with a different limit-size budget.
    pub fn with_limit_size(limit_size: usize) -> Self {
        Guards {
            limit_size,
            ..Guards::default()
        }
    }
}
