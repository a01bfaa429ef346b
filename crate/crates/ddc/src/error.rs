use std::path::PathBuf;

use ddc_core::data::DataError;
use ddc_core::engine::DdcError;
use ddc_core::eval::EvalError;
use ddc_core::geometry::GeometryError;
use ddc_core::local_cluster::ClusterError;

/// Exit status for configuration problems.
pub const EXIT_CONFIG: i32 = 2;
/// Exit status for failures while running.
pub const EXIT_RUNTIME: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("config error: {0}")]
    Config(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}:{line}: {message}", path.display())]
    Parse {
        path: PathBuf,
        line: u64,
        message: String,
    },
    #[error(transparent)]
    Ddc(#[from] DdcError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Data(#[from] DataError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

impl Error {
    pub fn config(msg: impl Into<String>) -> Self {
        Self::Config(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_)
            | Self::Data(DataError::InvalidSpec(_) | DataError::InvalidParam(_))
            | Self::Ddc(DdcError::Config(_) | DdcError::Cluster(ClusterError::InvalidParam(_))) => {
                EXIT_CONFIG
            }
            _ => EXIT_RUNTIME,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
