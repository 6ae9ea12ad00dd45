//! Core library for guided long-form generation experiments.

pub mod attention;
pub mod bench;
pub mod bridge;
pub mod guidance;
pub mod metrics;
pub mod sections;
pub mod toy;

/// Vocabulary index of a token.
pub type TokenId = u32;
