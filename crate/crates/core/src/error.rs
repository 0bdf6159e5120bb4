use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("resource cap exceeded: {what} (limit {limit})")]
    ResourceCap { what: &'static str, limit: usize },

    #[error("operation requires an automaton flagged as accepting only reduced words")]
    NotReduced,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid monoid: {0}")]
    InvalidMonoid(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn is_resource_cap(&self) -> bool {
        matches!(self, Error::ResourceCap { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Resource caps shared by every potentially explosive construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// States in any determinization or product exploration.
    pub max_states: usize,
    /// Size of an overgroup lattice.
    pub max_overgroups: usize,
    /// Number of homomorphisms enumerated into one finite group.
    pub max_homs: usize,
    /// Elements of a constructed monoid.
    pub max_monoid_size: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_states: 200_000,
            max_overgroups: 20_000,
            max_homs: 1_000_000,
            max_monoid_size: 4096,
        }
    }
}
