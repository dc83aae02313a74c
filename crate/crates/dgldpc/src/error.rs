//! Error types shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Diagnostics attached to a failed nonlinear solve.
#[derive(Debug, Clone)]
pub struct SolverFailure {
    /// Relative weight at which the solve was attempted.
    pub alpha: f64,
    /// Best residual infinity-norm reached before giving up.
    pub best_residual: f64,
    /// Residuals of the four equations at the best iterate.
    pub residuals: [f64; 4],
    /// Free-form diagnostics (bracket scans, probe values, retry counts).
    pub detail: String,
}

impl std::fmt::Display for SolverFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "alpha={:.6e}, best residual {:.3e}, residuals [{:.3e}, {:.3e}, {:.3e}, {:.3e}]: {}",
            self.alpha,
            self.best_residual,
            self.residuals[0],
            self.residuals[1],
            self.residuals[2],
            self.residuals[3],
            self.detail
        )
    }
}

#[derive(Debug, Error)]
pub enum Error {
    /// A constructor argument violates its contract.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Structured input (ensemble definition, config file) failed validation.
    #[error("validation error: {0}")]
    Validation(String),

    /// Numeric argument outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Ensemble has a nonpositive design rate or is otherwise unusable.
    #[error("degenerate ensemble: {0}")]
    DegenerateEnsemble(String),

    /// Desk-scale guard tripped (enumeration or table size too large).
    #[error("resource limit: {0}")]
    ResourceLimit(String),

    /// Nonlinear solver failed to converge after all retries.
    #[error("solver did not converge: {0}")]
    Solver(SolverFailure),

    /// Requested coefficient is identically zero for combinatorial reasons.
    #[error("structural zero: {0}")]
    StructuralZero(String),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code for the CLI: 2 validation, 3 solver, 4 resource guard.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Solver(_) => 3,
            Error::ResourceLimit(_) => 4,
            _ => 2,
        }
    }
}
