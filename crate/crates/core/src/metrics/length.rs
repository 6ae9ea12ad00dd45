use super::MetricError;

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Population standard deviation (divide by N).
pub fn population_sd(xs: &[f64]) -> Result<f64, MetricError> {
    if xs.is_empty() {
        return Err(MetricError::Empty);
    }
    let m = mean(xs);
    Ok((xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / xs.len() as f64).sqrt())
}

pub fn mean_of(xs: &[f64]) -> Result<f64, MetricError> {
    if xs.is_empty() {
        return Err(MetricError::Empty);
    }
    Ok(mean(xs))
}

/// Length standard deviation over per-run word counts.
pub fn lsd(lengths: &[f64]) -> Result<f64, MetricError> {
    population_sd(lengths)
}

/// Length coefficient of variation, in percent.
pub fn lvc(lsd: f64, mean: f64) -> Result<f64, MetricError> {
    if mean == 0.0 {
        return Err(MetricError::UndefinedRatio("mean length is zero"));
    }
    Ok(lsd / mean * 100.0)
}

/// Mean length accuracy, in percent, clamped at zero.
pub fn mla(mean: f64, target: f64) -> Result<f64, MetricError> {
    if target <= 0.0 || target.is_nan() {
        return Err(MetricError::InvalidArgument(format!("target length must be positive, got {target}")));
    }
    Ok((1.0 - (mean - target).abs() / target).max(0.0) * 100.0)
}

/// Standard deviation of section counts across runs.
pub fn fsd(chapter_counts: &[f64]) -> Result<f64, MetricError> {
    population_sd(chapter_counts)
}

/// Structured-content accuracy, in percent of the required section count.
pub fn sca(correct: usize, required: usize) -> Result<f64, MetricError> {
    if required == 0 {
        return Err(MetricError::InvalidArgument("required section count must be positive".into()));
    }
    Ok(correct as f64 / required as f64 * 100.0)
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn standard_deviation_examples() {
        assert_eq!(lsd(&[300.0, 300.0, 300.0]).unwrap(), 0.0);
        // variance of 100..500 step 100 is 20000
        assert!(close(lsd(&[100.0, 200.0, 300.0, 400.0, 500.0]).unwrap(), 20000f64.sqrt(), 1e-9));
        assert!(close(fsd(&[2.0, 2.0, 8.0]).unwrap(), 8f64.sqrt(), 1e-12));
        assert_eq!(fsd(&[5.0; 5]).unwrap(), 0.0);
        assert_eq!(lsd(&[]), Err(MetricError::Empty));
    }

    #[test]
    fn ratio_examples() {
        assert!(close(lvc(2866.29, 6320.0).unwrap(), 45.4, 0.1));
        assert!(close(lvc(23.16, 590.0).unwrap(), 3.9, 0.1));
        assert_eq!(lvc(0.0, 17.0).unwrap(), 0.0);
        assert!(matches!(lvc(1.0, 0.0), Err(MetricError::UndefinedRatio(_))));
        assert!(close(mla(6320.0, 20000.0).unwrap(), 31.6, 1e-9));
        assert_eq!(mla(20000.0, 20000.0).unwrap(), 100.0);
        assert_eq!(mla(50000.0, 20000.0).unwrap(), 0.0);
        assert!(mla(1.0, 0.0).is_err());
        assert_eq!(sca(88, 100).unwrap(), 88.0);
        assert_eq!(sca(0, 100).unwrap(), 0.0);
        assert_eq!(sca(100, 100).unwrap(), 100.0);
        assert!(sca(1, 0).is_err());
    }

    proptest! {
        #[test]
        fn lsd_shift_and_scale(xs in proptest::collection::vec(0.0f64..1e5, 1..20), c in 0.0f64..1e4, a in 0.0f64..10.0) {
            let base = lsd(&xs).unwrap();
            let shifted: Vec<_> = xs.iter().map(|x| x + c).collect();
            let scaled: Vec<_> = xs.iter().map(|x| x * a).collect();
            prop_assert!(close(lsd(&shifted).unwrap(), base, 1e-6 * (1.0 + base + c)));
            prop_assert!(close(lsd(&scaled).unwrap(), a * base, 1e-6 * (1.0 + a * base)));
        }

        #[test]
        fn lvc_scale_invariant(xs in proptest::collection::vec(1.0f64..1e5, 1..20), a in 0.01f64..100.0) {
            let scaled: Vec<_> = xs.iter().map(|x| x * a).collect();
            let v1 = lvc(lsd(&xs).unwrap(), mean_of(&xs).unwrap()).unwrap();
            let v2 = lvc(lsd(&scaled).unwrap(), mean_of(&scaled).unwrap()).unwrap();
            prop_assert!(close(v1, v2, 1e-6 * (1.0 + v1)));
        }

        #[test]
        fn mla_bounded_and_symmetric(target in 1.0f64..1e5, d in 0.0f64..2e5) {
            let above = mla(target + d, target).unwrap();
            prop_assert!((0.0..=100.0).contains(&above));
            if d <= target {
                prop_assert!(close(above, mla(target - d, target).unwrap(), 1e-9));
            }
            prop_assert_eq!(above == 100.0, d == 0.0);
        }
    }
}
