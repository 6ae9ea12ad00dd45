use serde::{Deserialize, Serialize};

use super::MetricError;

pub const DEFAULT_ANCHOR_STEP: usize = 100;
pub const DEFAULT_WINDOW: usize = 64;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DriftSeries {
    pub steps: Vec<usize>,
    pub similarities: Vec<f64>,
    pub anchor_step: usize,
    pub window: usize,
}

/// Layer-averaged mean of the hidden vectors in the `window` steps ending at `end` (inclusive).
fn window_mean(states: &[Vec<Vec<f32>>], end: usize, window: usize) -> Vec<f64> {
    let start = (end + 1).saturating_sub(window);
    let dim = states[end][0].len();
    let mut acc = vec![0.0f64; dim];
    let mut count = 0usize;
    for layers in &states[start..=end] {
        for v in layers {
            for (a, x) in acc.iter_mut().zip(v) {
                *a += f64::from(*x);
            }
            count += 1;
        }
    }
    acc.iter_mut().for_each(|a| *a /= count as f64);
    acc
}

fn cosine(a: &[f64], b: &[f64]) -> Result<f64, MetricError> {
    if a == b && a.iter().any(|x| *x != 0.0) {
        return Ok(1.0);
    }
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        return Err(MetricError::UndefinedRatio("zero-norm hidden state window"));
    }
    Ok((dot / (na * nb)).clamp(-1.0, 1.0))
}

/// Cosine similarity between windowed mean hidden states and an early anchor window.
///
/// `states[t][l]` is the hidden vector of layer `l` at step `t` (0-based).
pub fn drift_curve(
    states: &[Vec<Vec<f32>>],
    probe_steps: &[usize],
    anchor_step: usize,
    window: usize,
) -> Result<DriftSeries, MetricError> {
    if window == 0 {
        return Err(MetricError::InvalidArgument("window must be at least 1".into()));
    }
    if anchor_step >= states.len() {
        return Err(MetricError::InvalidArgument(format!(
            "anchor step {anchor_step} beyond {} recorded steps",
            states.len()
        )));
    }
    let dim = states[anchor_step].first().map(Vec::len).unwrap_or(0);
    if dim == 0 || states.iter().any(|l| l.is_empty() || l.iter().any(|v| v.len() != dim)) {
        return Err(MetricError::InvalidArgument("hidden states must share one non-zero dimension".into()));
    }
    let anchor = window_mean(states, anchor_step, window);
    let mut similarities = Vec::with_capacity(probe_steps.len());
    for &t in probe_steps {
        if t >= states.len() {
            return Err(MetricError::InvalidArgument(format!("probe step {t} out of range")));
        }
        similarities.push(cosine(&anchor, &window_mean(states, t, window))?);
    }
    Ok(DriftSeries { steps: probe_steps.to_vec(), similarities, anchor_step, window })
}
