use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter is outside the supported range.
    #[error("configuration error: {0}")]
    Config(String),

    /// Two vectors built on different layouts, or a block of the wrong length.
    #[error("layout error: {0}")]
    Layout(String),

    /// An accumulated power-of-two weight leaves the double-precision range.
    #[error("weight overflow: block {k}, power {power} needs 2^{exponent}")]
    Overflow { k: usize, power: u64, exponent: i64 },

    /// The certifying block was cut off by the truncation depth.
    #[error("truncation error: power {power} needs block {} but k_max = {k_max}; use k_max >= {}", power + 1, power + 1)]
    Truncation { power: u64, k_max: usize },

    /// An index (root, position, partial-sum bound) outside its range.
    #[error("index out of range: {0}")]
    OutOfRange(String),

    /// A function evaluated outside its domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested tolerance cannot be reached.
    #[error("accuracy error: requested tol {requested:e}, achievable {achievable:e}")]
    Accuracy { requested: f64, achievable: f64 },

    /// A scan aborted at a given orbit index.
    #[error("scan aborted at n = {n}: {source}")]
    Scan { n: u64, source: Box<Error> },
}
