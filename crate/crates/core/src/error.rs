use thiserror::Error;

/// Errors raised by the solvers and the command-line front end.
///
/// Every message starts with the name of the violated precondition so that
/// CLI users see it verbatim.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid-domain: {0}")]
    InvalidDomain(String),

    #[error("non-finite-input: {0}")]
    NonFinite(String),

    #[error("grid-mismatch: operands live on different grids")]
    GridMismatch,

    #[error("invalid-exponent: {0}")]
    InvalidExponent(String),

    #[error("invalid-params: {0}")]
    InvalidParams(String),

    #[error("invalid-config: {0}")]
    InvalidConfig(String),

    #[error("zero-function: the Rayleigh quotient is undefined for u = 0")]
    ZeroFunction,

    #[error("not-positive: interior node {node} has value {value:e}")]
    NotPositive { node: usize, value: f64 },

    #[error("lambda-too-large: lambda = {lambda} exceeds the admissible cap {cap} (lambda1 = {lambda1})")]
    LambdaTooLarge { lambda: f64, cap: f64, lambda1: f64 },

    #[error("max-iters: {0}")]
    MaxIters(String),

    #[error("exponent-degeneracy: {0}")]
    ExponentDegeneracy(String),

    #[error("invalid-c: c = {0} is below 1 - 1e-3")]
    InvalidC(f64),

    #[error("nonpositive-t: t = {0}")]
    NonPositiveT(f64),

    #[error("nonpositive-Lambda: Lambda = {0}")]
    NonPositiveLambda(f64),

    #[error("bracket-inverted: {0}")]
    BracketInverted(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
