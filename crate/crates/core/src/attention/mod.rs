//! Constraint-attention analysis over dumped attention traces: the per-step
//! series, plus detectors for sustained collapse and isolated spikes.

mod detect;
mod series;
mod span;
mod trace;

pub use detect::{detect_collapse, detect_instability, rolling_median, CollapseParams, InstabilityParams};
pub use series::{constraint_attention, constraint_attention_for, layer_constraint_attention, LayerConvention};
pub use span::ConstraintSpan;
pub use trace::{AttentionTrace, FORMAT_VERSION, ROW_SUM_TOLERANCE};

#[derive(Debug, thiserror::Error)]
pub enum AttentionError {
    #[error("io: {0}")]
    Io(String),
    #[error("format: {0}")]
    Format(String),
    #[error("row of layer {layer} at step {step} sums to {sum}, not 1")]
    Validation { layer: usize, step: usize, sum: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl From<std::io::Error> for AttentionError {
    fn from(e: std::io::Error) -> Self {
        AttentionError::Io(e.to_string())
    }
}
