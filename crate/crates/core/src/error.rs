use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimension: cutoff must be at least 1, got {cutoff}")]
    InvalidDimension { cutoff: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("eigensolver failed (residual {residual:.3e})")]
    SolverFailure { residual: f64 },

    #[error("invalid configuration: {}", fields.join("; "))]
    InvalidConfig { fields: Vec<String> },

    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),

    #[error("invalid time grid: {0}")]
    InvalidGrid(String),

    #[error("nonzero leakage rates (kappa_a = {kappa_a}, kappa_b = {kappa_b}): use the Lindblad solver (run_open)")]
    RequiresOpenSolver { kappa_a: f64, kappa_b: f64 },

    #[error("qubit block carries only {trace:.4} of the population; concurrence of the projection is unrepresentative")]
    ExcessiveLeakage { trace: f64 },

    #[error("leakage guard tripped at t = {t}: population outside the qubit subspace is {leakage:.4e} (limit {limit})")]
    LeakageGuard { t: f64, leakage: f64, limit: f64 },

    #[error("Liouvillian eigenvector matrix is ill-conditioned (condition {condition:.3e}); use evolve_integrate")]
    FallbackRequired { condition: f64 },

    #[error("density operator lost Hermiticity before symmetrization (deviation {deviation:.3e})")]
    HermiticityDrift { deviation: f64 },

    #[error("integrator unstable at t = {t}: trace drift {drift:.3e}; reduce the internal step")]
    StepInstability { t: f64, drift: f64 },

    #[error("unknown scenario `{0}` (expected fig2, fig3, fig4, fig5 or a JSON config path)")]
    UnknownScenario(String),

    #[error("{}:{line}:{column}: {message}", path.display())]
    ConfigParse {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("value out of range when writing column `{column}` at t = {t}: {value}")]
    OutputRange {
        column: &'static str,
        t: f64,
        value: f64,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
