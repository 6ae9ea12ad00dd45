use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CollapseParams {
    /// Leading steps that define normal attention.
    pub baseline_span: usize,
    /// Collapse threshold as a fraction of the baseline mean.
    pub eps_rel: f64,
    /// Window length that must stay below threshold.
    pub persistence: usize,
}

impl Default for CollapseParams {
    fn default() -> Self {
        CollapseParams { baseline_span: 500, eps_rel: 0.1, persistence: 200 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstabilityParams {
    /// A step spikes when it exceeds `k` times the local median.
    pub k: f64,
    pub median_window: usize,
}

impl Default for InstabilityParams {
    fn default() -> Self {
        InstabilityParams { k: 3.0, median_window: 200 }
    }
}

/// First step (1-based) of the sustained low-attention stretch, if any.
///
/// Every window of `persistence` steps starting at or after the returned step,
/// through the end of the series, has a mean below `eps_rel` times the baseline mean.
pub fn detect_collapse(series: &[f64], params: &CollapseParams) -> Option<usize> {
    let w = params.persistence.max(1);
    if series.len() < w {
        return None;
    }
    let base_len = params.baseline_span.clamp(1, series.len());
    let baseline = series[..base_len].iter().sum::<f64>() / base_len as f64;
    if baseline.is_nan() || baseline <= 0.0 {
        return None;
    }
    let threshold = params.eps_rel * baseline;
    let mut prefix = Vec::with_capacity(series.len() + 1);
    prefix.push(0.0);
    for &x in series {
        prefix.push(prefix.last().unwrap() + x);
    }
    let mut onset = None;
    for start in (0..=series.len() - w).rev() {
        let mean = (prefix[start + w] - prefix[start]) / w as f64;
        if mean < threshold {
            onset = Some(start + 1);
        } else {
            break;
        }
    }
    onset
}

/// Centered rolling median; the window is clipped at the series edges.
pub fn rolling_median(series: &[f64], window: usize) -> Vec<f64> {
    let half = window.max(1) / 2;
    let mut buf = Vec::with_capacity(window + 1);
    (0..series.len())
        .map(|i| {
            let lo = i.saturating_sub(half);
            let hi = (i + half + 1).min(series.len());
            buf.clear();
            buf.extend_from_slice(&series[lo..hi]);
            buf.sort_by(f64::total_cmp);
            let n = buf.len();
            if n % 2 == 1 {
                buf[n / 2]
            } else {
                (buf[n / 2 - 1] + buf[n / 2]) / 2.0
            }
        })
        .collect()
}

/// Steps (1-based) of isolated spikes. A run of consecutive exceedances counts once, at its peak.
pub fn detect_instability(series: &[f64], params: &InstabilityParams) -> Vec<usize> {
    let median = rolling_median(series, params.median_window);
    let mut events = Vec::new();
    let mut run: Option<usize> = None;
    for (i, (&x, &m)) in series.iter().zip(&median).enumerate() {
        if x > params.k * m {
            run = Some(match run {
                Some(peak) if series[peak] >= x => peak,
                _ => i,
            });
        } else if let Some(peak) = run.take() {
            events.push(peak + 1);
        }
    }
    events.extend(run.map(|peak| peak + 1));
    events
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn periodic(n: usize) -> Vec<f64> {
        (0..n).map(|t| 0.05 + 0.02 * (t as f64 * 0.3).sin()).collect()
    }

    #[test]
    fn constant_series_never_collapses() {
        assert_eq!(detect_collapse(&[0.2; 3000], &CollapseParams::default()), None);
        assert_eq!(detect_collapse(&[0.2; 10], &CollapseParams::default()), None);
        assert_eq!(detect_collapse(&[0.0; 1000], &CollapseParams::default()), None);
    }

    #[test]
    fn short_dip_is_not_collapse() {
        let mut s = periodic(2000);
        for x in &mut s[900..1050] {
            *x = 0.0;
        }
        assert_eq!(detect_collapse(&s, &CollapseParams::default()), None);
    }

    #[test]
    fn step_down_collapses_at_the_step() {
        let mut s = vec![1.0; 1000];
        s.extend(vec![0.0; 1000]);
        // The first window with fewer than 20 leading ones starts at step 982.
        assert_eq!(detect_collapse(&s, &CollapseParams::default()), Some(982));
    }

    #[test]
    fn flat_series_has_no_spikes() {
        assert!(detect_instability(&[0.1; 1000], &InstabilityParams::default()).is_empty());
        assert!(detect_instability(&periodic(1000), &InstabilityParams::default()).is_empty());
    }

    #[test]
    fn spikes_are_found_and_merged() {
        let mut s = periodic(1500);
        s[349] = 0.4;
        s[350] = 0.5;
        s[351] = 0.3;
        s[749] = 0.25;
        assert_eq!(detect_instability(&s, &InstabilityParams::default()), [351, 750]);
    }

    #[test]
    fn rolling_median_small_cases() {
        assert_eq!(rolling_median(&[1.0, 9.0, 2.0, 8.0], 2), [5.0, 2.0, 8.0, 5.0]);
        assert_eq!(rolling_median(&[], 5), Vec::<f64>::new());
    }

    proptest! {
        #[test]
        fn onset_is_non_increasing_in_eps(
            series in proptest::collection::vec(0.0f64..1.0, 50..400),
            e1 in 0.01f64..1.0,
            e2 in 0.01f64..1.0,
        ) {
            let (lo, hi) = if e1 <= e2 { (e1, e2) } else { (e2, e1) };
            let p = |eps_rel| CollapseParams { baseline_span: 30, eps_rel, persistence: 20 };
            let a = detect_collapse(&series, &p(lo));
            let b = detect_collapse(&series, &p(hi));
            if let Some(a) = a {
                prop_assert!(b.is_some_and(|b| b <= a));
            }
        }
    }
}
