use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid pattern: {0}")]
    InvalidPattern(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid subset: {0}")]
    InvalidSubset(String),

    /// n_F(G) = 0, so the (H,F)-coefficient is undefined.
    #[error("(H,F)-coefficient is undefined: the graph has no transversal copy of F")]
    ZeroDenominator,

    #[error("enumeration budget exceeded: {needed} candidates > limit {limit}")]
    BudgetExceeded { needed: u128, limit: u128 },

    #[error("value outside domain: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("vacuous regime: {0}")]
    Vacuous(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
