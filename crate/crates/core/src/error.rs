use thiserror::Error;

use crate::catalog::IndecompType;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("subspace is not contained in the expected ambient subspace: {0}")]
    NotContained(String),

    #[error("matrix is not invertible")]
    Singular,

    #[error("form is not skew-symmetric")]
    NotSkew,

    #[error("flavor mismatch: {0}")]
    FlavorMismatch(String),

    #[error("relation is not isotropic")]
    NotIsotropic,

    #[error("relation is not coisotropic")]
    NotCoisotropic,

    #[error("subspace is not symplectic")]
    NotSymplectic,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invariant vector not realizable: {0}")]
    NotRealizable(String),

    #[error("expected an even dimension for {what}, found {dim}")]
    Parity { what: &'static str, dim: usize },

    #[error("{tag} does not match any column of the classification matrix uniquely")]
    ColumnMatch { tag: IndecompType },

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("{path}: {msg}")]
    Parse { path: String, msg: String },
}

impl Error {
    pub(crate) fn parse(path: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
