use thiserror::Error;

use crate::remez::RemezResult;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("precision of {digits} digits is below the supported floor of {min}")]
    InsufficientPrecision { digits: u32, min: u32 },
    #[error("matrix is numerically singular (pivot column {column})")]
    SingularMatrix { column: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("could not parse number {0}")]
    Parse(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("lemniscate continuation failed to converge at theta = {theta}")]
    ContinuationFailure { theta: f64 },
    #[error("no admissible initial reference after {retries} retries")]
    InitFailure { retries: usize },
    #[error("exchange step found no positive direction component (spurious extremum)")]
    ExchangeFailure,
    #[error("lower bound stayed nonpositive for {iterations} iterations")]
    NonpositiveLowerBound { iterations: usize },
    #[error("no convergence after {} iterations (relative error {})", .0.iterations, .0.rel_error)]
    MaxIterations(Box<RemezResult>),
    #[error("root finder did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("unsupported curve family for this operation: {0}")]
    UnsupportedFamily(String),
    #[error("Laurent expansion truncated at order {have}, degree {need} requested")]
    TruncationInsufficient { have: usize, need: usize },
}
