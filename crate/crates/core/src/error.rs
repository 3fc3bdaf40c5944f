use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("arithmetic overflow in 128-bit signed range")]
    Overflow,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{0} is not an odd prime")]
    InvalidPrime(i128),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("search exhausted without a witness: {0}")]
    SearchExhausted(String),
    #[error("no rewrite of {n} as {a}u^2 + {b}v^2 with {d} not dividing uv")]
    NoAdmissibleRewrite { a: i128, b: i128, n: i128, d: i128 },
    #[error("form {0} has no catalogued exceptional set")]
    UnknownForm(String),
    #[error("grouped term needs {projected} enumeration nodes, budget is {budget}")]
    GroupTooLarge { projected: u128, budget: u128 },
    #[error("prime table limit {limit} is below the required {needed}")]
    TableTooSmall { needed: i128, limit: i128 },
    #[error("search bound exhausted for {0}")]
    BoundExhausted(String),
    #[error("unknown claim id `{0}`")]
    UnknownClaim(String),
    #[error("checkpoint rejected: {0}")]
    CheckpointCorrupt(String),
    #[error("parse error at column {pos}: {message}")]
    Parse { pos: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
