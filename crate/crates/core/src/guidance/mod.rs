//! Decoding guidance: keeps a generation on a fixed section plan by boosting
//! header tokens once a section's token budget is spent, and by masking EOS and
//! banned phrases until the plan is complete.
//!
//! The controller never looks at logit values. Every adjustment is a function of
//! the configuration and the emitted token history, which is what lets it run
//! out of process behind the bridge.

mod adjustment;
mod config;
mod matcher;
mod session;

pub use adjustment::{Bias, Event, LogitAdjustment};
pub use config::{
    freeform_checkpoints, CheckpointBounds, GuidanceConfig, GuidanceMode, TitleTemplate, DEFAULT_BOOST, DEFAULT_GRACE,
};
pub use session::{Boundary, GenerationState, GuidanceSession};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GuidanceError {
    #[error("invalid guidance config field `{field}`: {reason}")]
    InvalidConfig { field: &'static str, reason: String },
    #[error("guidance session already finished")]
    SessionClosed,
}

#[cfg(test)]
mod tests;
