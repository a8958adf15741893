use thiserror::Error;

/// Errors raised anywhere in the cross-section pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SbError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("channel n = {n} is closed")]
    ChannelClosed { n: i32 },

    #[error("convergence failure: {0}")]
    Convergence(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("singular value: {0}")]
    Singularity(String),

    #[error("q = {q} outside tabulated range [{min}, {max}]")]
    OutOfRange { q: f64, min: f64, max: f64 },

    /// The linear-polarization closed form refuses |v| at or below its floor;
    /// the general path must be used instead.
    #[error("|v| = {v} at or below floor {floor}; use the general formula")]
    RoutedToGeneral { v: f64, floor: f64 },

    #[error("spin sum {spin_sum} and trace {trace} disagree")]
    OracleInconsistency { spin_sum: f64, trace: f64 },

    #[error("no open channels")]
    NoOpenChannels,

    #[error("potential table: {0}")]
    Table(String),
}

pub type Result<T> = std::result::Result<T, SbError>;
