use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Two operands have different permutation degrees.
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    /// An algebra element expected to be central is not constant on a class.
    #[error("element is not central: {first} and {second} have reduced type {class} but coefficients {first_coeff} and {second_coeff}")]
    NotCentral {
        class: String,
        first: String,
        first_coeff: String,
        second: String,
        second_coeff: String,
    },

    /// A computation would exceed its documented resource guard.
    #[error("resource bound exceeded: {0}")]
    Resource(String),

    /// Interpolated class coefficients failed the extra certification point.
    #[error("degree bound violated: {0}")]
    DegreeBound(String),

    /// A matrix expected to be invertible turned out singular.
    #[error("singular matrix of size {0}")]
    Singular(usize),

    /// Text input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
