use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The trend statistic has a zero variance term for this table.
    #[error("zero variance for trend score x = {score}")]
    ZeroVariance { score: f64 },

    #[error("degenerate table: {0}")]
    DegenerateTable(String),

    /// Functional-locus homozygote penetrance would exceed one.
    #[error("penetrance out of range: f*2 = {0}")]
    PenetranceOutOfRange(f64),

    #[error("penetrances imply prevalence {implied}, expected {expected}")]
    InconsistentPrevalence { implied: f64, expected: f64 },

    #[error("bootstrap gave up after {0} degenerate resamples")]
    BootstrapExhausted(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
