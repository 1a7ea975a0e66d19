use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or out-of-range input.
    #[error("invalid input: {0}")]
    Input(String),

    /// An explicit enumeration would exceed its configured size cap.
    #[error("{what}: {size} candidates exceed the cap of {cap}")]
    Capacity { what: &'static str, size: u128, cap: u128 },

    /// The exact search ran out of budget; the bounds are certified.
    #[error("search budget exhausted; chromatic number lies in [{lower}, {upper}]")]
    Budget { lower: usize, upper: usize },
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}
