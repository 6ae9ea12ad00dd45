use std::collections::HashSet;
use std::hash::Hash;

use super::MetricError;

/// Fraction of n-grams that repeat an earlier one: `1 - distinct / total`.
pub fn ngram_repetition<T: Eq + Hash>(tokens: &[T], n: usize) -> Result<f64, MetricError> {
    if n == 0 {
        return Err(MetricError::InvalidArgument("n must be at least 1".into()));
    }
    if tokens.len() < n {
        return Err(MetricError::InvalidArgument(format!("need at least {n} tokens, got {}", tokens.len())));
    }
    let total = tokens.len() - n + 1;
    let distinct = tokens.windows(n).collect::<HashSet<_>>().len();
    Ok(1.0 - distinct as f64 / total as f64)
}

/// Type-token ratio.
pub fn ttr<T: Eq + Hash>(tokens: &[T]) -> Result<f64, MetricError> {
    if tokens.is_empty() {
        return Err(MetricError::Empty);
    }
    let distinct = tokens.iter().collect::<HashSet<_>>().len();
    Ok(distinct as f64 / tokens.len() as f64)
}
