//! Error type shared by all pipeline stages.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Domain specification violates its invariants (degenerate geometry,
    /// non-positive target edge length, repeated polygon vertices, ...).
    #[error("invalid domain spec: {0}")]
    InvalidSpec(String),

    /// Two fields that must share a mesh do not.
    #[error("mesh mismatch: {0}")]
    MeshMismatch(String),

    /// A coefficient matrix field fails uniform ellipticity.
    #[error("ellipticity violated: {0}")]
    NonElliptic(String),

    /// A linear solve did not reach its residual tolerance.
    #[error("linear solver failure: {0}")]
    SolverFailure(String),

    /// Reference function fails the positivity / boundary-trace preconditions
    /// of the level-set construction.
    #[error("invalid reference function: {0}")]
    InvalidPsi(String),

    /// A ladder level has a degenerate co-area shell even after local
    /// refinement; the caller must refine the ladder or drop the level.
    #[error("degenerate level set at a = {level}")]
    DegenerateLevel { level: f64 },

    /// A quantity whose sign or range is established by the construction came
    /// out wrong, which signals a discretization too coarse to proceed.
    #[error("construction violated: {0}")]
    ConstructionViolation(String),

    /// Newton or fixed-point iteration exhausted its budget.
    #[error("no convergence after {iterations} iterations (residual trace tail: {trace:?})")]
    NonConvergence { iterations: usize, trace: Vec<f64> },

    /// Scenario configuration is structurally valid but violates a theorem
    /// precondition or a solver applicability bound.
    #[error("config validation: {0}")]
    ConfigValidation(String),

    /// Malformed text input (mesh file, field file, expression, config).
    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// A pipeline stage failed; wraps the underlying error with the stage
    /// name so scenario drivers can report where a run died.
    #[error("stage '{stage}' failed: {source}")]
    Stage {
        stage: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Tag an error with the pipeline stage it came from.
    pub fn at_stage(self, stage: &str) -> Error {
        Error::Stage {
            stage: stage.to_string(),
            source: Box::new(self),
        }
    }
}
