use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument hit (or came within the exclusion radius of) a pole.
    #[error("pole at s = {location} (k = {k})")]
    Pole { k: u32, location: f64 },

    #[error("pole of zeta_{r} at s = 1/{k} inside ({lo}, {hi})")]
    PoleInInterval { r: u32, k: u32, lo: f64, hi: f64 },

    #[error("{0}")]
    Domain(String),

    #[error("{0}")]
    Resource(String),

    #[error("{0}")]
    NoConvergence(String),

    #[error("{0}")]
    InvalidParams(String),

    #[error("overflow: {0}")]
    Overflow(String),
}

impl Error {
    /// Short machine-readable tag, stable across releases.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Pole { .. } => "pole",
            Error::PoleInInterval { .. } => "pole-in-interval",
            Error::Domain(_) => "domain",
            Error::Resource(_) => "resource",
            Error::NoConvergence(_) => "no-convergence",
            Error::InvalidParams(_) => "invalid-params",
            Error::Overflow(_) => "overflow",
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
