use std::path::PathBuf;

/// Failures of a subcommand, each mapped to its own process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("bad key: {0}")]
    Key(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed container: {0}")]
    Container(String),
    #[error("attack failed: {0}")]
    AttackFailed(String),
    #[error("{0}")]
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Key(_) => 3,
            CliError::Io { .. } => 4,
            CliError::Container(_) => 5,
            CliError::AttackFailed(_) => 6,
            CliError::Other(_) => 7,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<dnacrypt::Error> for CliError {
    fn from(e: dnacrypt::Error) -> Self {
        use dnacrypt::Error as E;
        match e {
            E::KeyFormat(m) => CliError::Key(m),
            E::AttackFailed(m) => CliError::AttackFailed(m),
            other => CliError::Other(other.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
