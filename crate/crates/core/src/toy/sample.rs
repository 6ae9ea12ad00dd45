use rand::Rng;

use super::ToyError;
use crate::guidance::LogitAdjustment;
use crate::TokenId;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Temperature {
    /// Highest adjusted logit, lowest id on ties.
    Argmax,
    Softmax(f32),
}

impl Temperature {
    pub fn from_config(t: f32) -> Self {
        if t == 0.0 {
            Temperature::Argmax
        } else {
            Temperature::Softmax(t)
        }
    }
}

fn adjusted(logits: &[f32], adjustment: &LogitAdjustment) -> Vec<f32> {
    let mut l = logits.to_vec();
    adjustment.apply(&mut l);
    l
}

/// Sampling distribution after the adjustment. Masked tokens get exactly zero.
pub fn probabilities(logits: &[f32], adjustment: &LogitAdjustment, temperature: f32) -> Result<Vec<f64>, ToyError> {
    let l = adjusted(logits, adjustment);
    let max = l.iter().copied().filter(|x| x.is_finite()).fold(f32::NEG_INFINITY, f32::max);
    if max == f32::NEG_INFINITY {
        return Err(ToyError::ImpossibleDistribution);
    }
    let weights: Vec<f64> = l
        .iter()
        .map(|&x| if x == f32::NEG_INFINITY { 0.0 } else { (f64::from(x - max) / f64::from(temperature)).exp() })
        .collect();
    let total: f64 = weights.iter().sum();
    Ok(weights.into_iter().map(|w| w / total).collect())
}

/// Draws the next token from `logits` with `adjustment` applied.
pub fn sample<R: Rng + ?Sized>(
    logits: &[f32],
    adjustment: &LogitAdjustment,
    temperature: Temperature,
    rng: &mut R,
) -> Result<TokenId, ToyError> {
    match temperature {
        Temperature::Argmax => {
            let l = adjusted(logits, adjustment);
            let mut best: Option<usize> = None;
            for (i, &x) in l.iter().enumerate() {
                if x != f32::NEG_INFINITY && best.is_none_or(|b| x > l[b]) {
                    best = Some(i);
                }
            }
            best.map(|i| i as TokenId).ok_or(ToyError::ImpossibleDistribution)
        }
        Temperature::Softmax(t) => {
            let probs = probabilities(logits, adjustment, t)?;
            let u: f64 = rng.random();
            let mut acc = 0.0;
            let mut fallback = 0;
            for (i, &p) in probs.iter().enumerate() {
                if p == 0.0 {
                    continue;
                }
                acc += p;
                fallback = i;
                if u < acc {
                    return Ok(i as TokenId);
                }
            }
            Ok(fallback as TokenId)
        }
    }
}
