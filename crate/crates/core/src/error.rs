use thiserror::Error;

/// Errors surfaced by grid construction, case lookup and the solvers.
///
/// Runtime divergence of an iteration is reported through
/// [`crate::solver::Outcome::Diverged`]; `NonPhysical` is the low-level
/// error that triggers it (negative density or pressure where an
/// eigen-decomposition or wave speed is requested).
#[derive(Debug, Clone, Error)]
pub enum SolverError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid boundary setup: {0}")]
    InvalidBoundary(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("non-physical state: {0}")]
    NonPhysical(String),
    #[error("unknown case id {0}, valid ids are 1..=13")]
    UnknownCase(u8),
    #[error("case {0} has no exact solution; error norms are unavailable")]
    NoExactSolution(u8),
}
