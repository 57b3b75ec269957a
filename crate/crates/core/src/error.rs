use thiserror::Error;

use crate::minimizer::MinimizeResult;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported Bessel order 2ν = {0}; only ν ∈ {{0, 1/2, 1, 3/2}} are representable")]
    InvalidOrder(u32),
    #[error("argument outside the domain: {0}")]
    Domain(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("no-admissible-support: F has no sign change on (r1, R'] = ({r1}, {r_prime}]; F(r1+) = {f_low}, F(R') = {f_high}")]
    NoAdmissibleSupport {
        r1: f64,
        r_prime: f64,
        f_low: f64,
        f_high: f64,
    },
    #[error("empty-domain: the mask has no true node")]
    EmptyDomain,
    #[error("eig-no-converge: inverse iteration stalled after {0} outer steps")]
    EigNoConverge(usize),
    #[error("linear solve did not converge: relative residual {residual:e} after {iterations} iterations")]
    SolveNoConverge { iterations: usize, residual: f64 },
    #[error("no-converge: sweep cap of {sweeps} reached")]
    NoConverge {
        sweeps: usize,
        last: Box<MinimizeResult>,
    },
    #[error("grid mismatch: fields live on different grids")]
    GridMismatch,
    #[error("near-singular evaluation: {0}")]
    NearSingular(String),
    #[error("clearance violation: {0}")]
    Clearance(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("positivity-lost: {0}")]
    PositivityLost(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for failures of iterative numerics rather than bad input.
    pub fn is_non_convergence(&self) -> bool {
        matches!(
            self,
            Error::EigNoConverge(_) | Error::SolveNoConverge { .. } | Error::NoConverge { .. }
        )
    }
}
