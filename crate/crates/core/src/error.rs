use thiserror::Error;

/// Errors raised by the solvers, the harness and the run orchestration.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grid mismatch between operands")]
    GridMismatch,

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    /// A field handed to the x-antiderivative still carries x-mean content.
    #[error(
        "not in range of ∂ₓ: ky row {row} has |kx=0 coefficient| = {ratio:.3e} relative to the L2 norm"
    )]
    NotInRangeOfDx { row: usize, ratio: f64 },

    #[error("cavitation: depth 1+εζ = {depth:.6} < h_min = {h_min} at node (ix={ix}, iy={iy})")]
    Cavitation {
        ix: usize,
        iy: usize,
        depth: f64,
        h_min: f64,
    },

    #[error("blow-up detected at step {step} (time {time})")]
    BlowUp { step: usize, time: f64 },

    /// A run that stopped early on a numerical failure.
    #[error("run stopped early after t = {last_valid_time}: {reason}")]
    PartialRun {
        last_valid_time: f64,
        reason: String,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("slow time τ = {tau} outside the solved horizon [0, {horizon}]")]
    OutsideHorizon { tau: f64, horizon: f64 },

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for failures of the numerical integration itself, as opposed to
    /// rejected input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::BlowUp { .. } | Error::Cavitation { .. } | Error::PartialRun { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
