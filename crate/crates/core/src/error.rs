use thiserror::Error;

use crate::series::SeriesError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid support [{a}, {b}]: need finite edges with a < b")]
    InvalidSupport { a: f64, b: f64 },

    #[error("point (z={z}, zeta={zeta}) is outside the analyticity domain |z|,|zeta| < {radius}")]
    OutsideDomain { z: f64, zeta: f64, radius: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("support has no exact rational description; use the floating-point path")]
    IrrationalEdges,

    #[error("Joukowski inverse is ambiguous at w={0} (point on the cut)")]
    BranchCut(f64),

    #[error("{what} did not converge: {detail}")]
    NonConvergence { what: &'static str, detail: String },

    #[error("enumeration of {points} points refused: cap is {cap}")]
    EnumerationCap { points: usize, cap: usize },

    #[error(transparent)]
    Series(#[from] SeriesError),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NonConvergence { .. } => 3,
            Error::Io(_) | Error::Csv(_) | Error::Json(_) => 1,
            _ => 2,
        }
    }
}
