use std::fmt;
use std::path::PathBuf;

use thiserror::Error;

/// Pipeline stage names used to annotate errors from [`crate::evaluate_point`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Couplings,
    SteadyState,
    Fluctuations,
    Diffusion,
    Transfer,
    Metrics,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Stage::Couplings => "couplings",
            Stage::SteadyState => "steady-state",
            Stage::Fluctuations => "fluctuation-dynamics",
            Stage::Diffusion => "noise-model",
            Stage::Transfer => "transfer",
            Stage::Metrics => "entanglement-metrics",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("non-finite value for {quantity} (check units of the inputs)")]
    NonFinite { quantity: &'static str },

    #[error("degenerate regime: {0}")]
    Degenerate(String),

    #[error("ill-conditioned {context} (condition number {condition:.3e}): {regime}")]
    IllConditioned {
        context: &'static str,
        condition: f64,
        regime: &'static str,
    },

    #[error("steady state residual {residual:.3e} exceeds tolerance {tolerance:.1e}")]
    Residual { residual: f64, tolerance: f64 },

    #[error("unphysical covariance: {0}")]
    Unphysical(String),

    #[error("{stage}: {source}")]
    Stage {
        stage: Stage,
        #[source]
        source: Box<Error>,
    },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv: {0}")]
    Csv(String),
}

impl Error {
    pub(crate) fn at(self, stage: Stage) -> Error {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }

    /// True for problems in user input (config, file layout) as opposed to
    /// numerical failures while evaluating a point.
    pub fn is_input_error(&self) -> bool {
        match self {
            Error::Config(_) | Error::Io { .. } | Error::Csv(_) | Error::InvalidParams(_) => true,
            Error::Stage { source, .. } => source.is_input_error(),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
