//! Length volatility, adherence, structure, and lexical metrics.
//!
//! Percent-valued metrics (`lvc`, `mla`, `sca`) return values on a 0-100 scale.
//! `ngram_repetition` and `ttr` return fractions.

mod drift;
mod length;
mod lexical;

pub use drift::{drift_curve, DriftSeries, DEFAULT_ANCHOR_STEP, DEFAULT_WINDOW};
pub use length::{fsd, lsd, lvc, mean_of, mla, population_sd, sca};
pub use lexical::{ngram_repetition, ttr};

/// Reference target length in words for adherence comparisons.
pub const REFERENCE_TARGET_WORDS: f64 = 20_000.0;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MetricError {
    #[error("empty sample")]
    Empty,
    #[error("undefined ratio: {0}")]
    UndefinedRatio(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
