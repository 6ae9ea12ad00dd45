use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{AttentionError, AttentionTrace, ConstraintSpan};

/// Which layers enter the layer average.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LayerConvention {
    /// Every layer, divided by the layer count.
    #[default]
    All,
    /// Layers `1..L-1` (the last layer dropped), divided by `L - 1`.
    SkipLast,
}

impl LayerConvention {
    fn layers(self, total: usize) -> Result<std::ops::Range<usize>, AttentionError> {
        match self {
            LayerConvention::All => Ok(0..total),
            LayerConvention::SkipLast if total >= 2 => Ok(0..total - 1),
            LayerConvention::SkipLast => {
                Err(AttentionError::InvalidArgument("skip_last needs at least two layers".into()))
            }
        }
    }
}

/// Mean attention a layer pays to `indices` at step `t`.
pub fn layer_constraint_attention(trace: &AttentionTrace, layer: usize, t: usize, indices: &BTreeSet<usize>) -> f64 {
    let row = trace.row(layer, t);
    let sum: f64 = indices.iter().map(|&j| f64::from(row[j - 1])).sum();
    sum / indices.len() as f64
}

/// Constraint attention per step, averaged over the layers chosen by `convention`.
pub fn constraint_attention_for(
    trace: &AttentionTrace,
    indices: &BTreeSet<usize>,
    convention: LayerConvention,
) -> Result<Vec<f64>, AttentionError> {
    if indices.is_empty() {
        return Err(AttentionError::InvalidArgument("constraint span is empty".into()));
    }
    if let Some(&j) = indices.iter().find(|&&j| j == 0 || j > trace.prompt_len()) {
        return Err(AttentionError::InvalidArgument(format!(
            "index {j} outside the prompt (1..={})",
            trace.prompt_len()
        )));
    }
    let layers = convention.layers(trace.layers())?;
    let count = layers.len() as f64;
    Ok((1..=trace.steps())
        .map(|t| layers.clone().map(|l| layer_constraint_attention(trace, l, t, indices)).sum::<f64>() / count)
        .collect())
}

pub fn constraint_attention(
    trace: &AttentionTrace,
    span: &ConstraintSpan,
    convention: LayerConvention,
) -> Result<Vec<f64>, AttentionError> {
    constraint_attention_for(trace, &span.all(), convention)
}
