use thiserror::Error;

/// Errors raised by operator evaluation and the asymptotic checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The operation needs derivative information the function does not carry.
    #[error("capability error: {0}")]
    Capability(String),

    /// A catalog name did not resolve.
    #[error("unknown function `{name}`; valid names: {valid}")]
    UnknownFunction { name: String, valid: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn check_unit(name: &str, v: f64) -> Result<()> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(domain(format!("{name} = {v} is outside [0, 1]")))
    }
}

pub(crate) fn check_open_unit(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v <= 1.0 {
        Ok(())
    } else {
        Err(domain(format!("{name} = {v} is outside (0, 1]")))
    }
}
