use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    #[error("invalid pants group: word {word} is {kind}")]
    InvalidGroup { word: String, kind: &'static str },

    #[error("enumeration budget exceeded: {detail}")]
    Budget { detail: String },

    #[error("estimation failed: {detail}")]
    Estimation { detail: String },

    #[error("test function construction failed at {location}: {detail}")]
    Construction { location: String, detail: String },

    #[error("quadrature precision insufficient in {term}: tail {tail:e} vs value {value:e}")]
    Precision { term: &'static str, tail: f64, value: f64 },

    #[error("invalid input {field}: {detail}")]
    Input { field: String, detail: String },

    #[error("certification impossible: {detail}")]
    Certification { detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain { op, detail: detail.into() }
}
