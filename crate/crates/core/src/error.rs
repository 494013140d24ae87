use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate distribution: no strictly positive mass")]
    DegenerateDistribution,

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("invalid axis: {0}")]
    InvalidAxis(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("window too small: {missing:.3e} of the total mass falls outside the grid")]
    WindowTooSmall { missing: f64 },

    #[error("grid too coarse: {0}")]
    GridTooCoarse(String),

    #[error("mutual information {0:.3e} is negative beyond tolerance (quadrature broken)")]
    NegativeMutualInformation(f64),

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    /// True for errors that signal a failed numerical invariant rather than bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::DegenerateDistribution
                | Error::WindowTooSmall { .. }
                | Error::GridTooCoarse(_)
                | Error::NegativeMutualInformation(_)
        )
    }
}
