use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Flags that clap itself rejected (also covers `--help`/`--version`).
    #[error("{0}")]
    Usage(#[from] clap::Error),

    #[error("invalid arguments: {0}")]
    InvalidArguments(String),

    #[error(transparent)]
    Core(#[from] akr_core::Error),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed report: {0}")]
    Report(String),
}

impl CliError {
    /// Stable identifier used in machine-readable error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Usage(_) | Self::InvalidArguments(_) => "invalid-arguments",
            Self::Core(akr_core::Error::Capability(_)) => "capability",
            Self::Core(akr_core::Error::UnknownFunction { .. }) => "unknown-function",
            Self::Core(akr_core::Error::Domain(_)) => "domain",
            Self::Io(_) => "io",
            Self::Report(_) => "report",
        }
    }
}
