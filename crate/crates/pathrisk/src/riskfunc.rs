//! Empirical risk functionals over finite samples.
//!
//! The quantile follows the lower-inf convention
//! `Q_a(Z) = inf { d : P(Z > d) <= 1 - a }`, which on a sample of size `n`
//! picks the order statistic `z_(k)` with `k = max(1, ceil(a*n))`. The tail
//! mean integrates the empirical quantile step function exactly:
//!
//! ```text
//! TM_a = ( (k/n - a) * z_(k) + sum_{i>k} z_(i)/n ) / (1 - a)
//! ```
//!
//! so that `TM_0` is the sample mean and `TM_a -> max` as `a -> 1`. No
//! interpolation between order statistics is applied.

use crate::error::{Error, Result};
use crate::series::ReturnSeries;

/// A nonempty collection of finite observations.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalSample {
    values: Vec<f64>,
}

impl EmpiricalSample {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::domain("empirical sample must be nonempty"));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::domain(format!(
                "sample contains non-finite value {bad}"
            )));
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn sorted(&self) -> Vec<f64> {
        let mut v = self.values.clone();
        v.sort_unstable_by(|a, b| a.partial_cmp(b).expect("sample values are finite"));
        v
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::domain(format!(
            "confidence level must lie in [0, 1), got {alpha}"
        )));
    }
    Ok(())
}

/// Index `k = max(1, ceil(alpha * n))`, clamped to `n` against float rounding.
fn upper_order_index(n: usize, alpha: f64) -> usize {
    let k = (alpha * n as f64).ceil() as usize;
    k.clamp(1, n)
}

/// The empirical `alpha`-quantile (upper order statistic, no interpolation).
pub fn quantile(sample: &EmpiricalSample, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let sorted = sample.sorted();
    Ok(sorted[upper_order_index(sorted.len(), alpha) - 1])
}

/// The empirical `alpha`-tail-mean: the average of the worst `1 - alpha`
/// fraction of outcomes, by exact integration of the quantile step function.
pub fn tail_mean(sample: &EmpiricalSample, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let sorted = sample.sorted();
    let n = sorted.len();
    let k = upper_order_index(n, alpha);
    let boundary = (k as f64 / n as f64 - alpha) * sorted[k - 1];
    let rest: f64 = sorted[k..].iter().sum::<f64>() / n as f64;
    Ok((boundary + rest) / (1.0 - alpha))
}

/// Sample mean.
pub fn mean(sample: &EmpiricalSample) -> f64 {
    sample.values.iter().sum::<f64>() / sample.len() as f64
}

/// Sample standard deviation with the `n - 1` denominator.
pub fn deviation(sample: &EmpiricalSample) -> Result<f64> {
    let n = sample.len();
    if n < 2 {
        return Err(Error::InsufficientData {
            what: "standard deviation",
            required: 2,
            actual: n,
        });
    }
    let m = mean(sample);
    let ss: f64 = sample.values.iter().map(|v| (v - m) * (v - m)).sum();
    Ok((ss / (n - 1) as f64).sqrt())
}

/// Sample skewness `m3 / m2^(3/2)` with central moments over `n`.
pub fn skewness(sample: &EmpiricalSample) -> Result<f64> {
    let n = sample.len();
    if n < 3 {
        return Err(Error::InsufficientData {
            what: "skewness",
            required: 3,
            actual: n,
        });
    }
    let m = mean(sample);
    let m2: f64 = sample.values.iter().map(|v| (v - m).powi(2)).sum::<f64>() / n as f64;
    let m3: f64 = sample.values.iter().map(|v| (v - m).powi(3)).sum::<f64>() / n as f64;
    if m2 == 0.0 {
        return Err(Error::domain("skewness is undefined for a constant sample"));
    }
    Ok(m3 / m2.powf(1.5))
}

/// Annualized volatility: per-period standard deviation scaled by the square
/// root of periods per year.
pub fn volatility(returns: &ReturnSeries) -> Result<f64> {
    let sample =
        EmpiricalSample::new(returns.values().to_vec()).map_err(|_| Error::InsufficientData {
            what: "volatility",
            required: 2,
            actual: 0,
        })?;
    let sd = deviation(&sample).map_err(|_| Error::InsufficientData {
        what: "volatility",
        required: 2,
        actual: returns.len(),
    })?;
    Ok(sd * (returns.periods_per_year() as f64).sqrt())
}

/// Expected Shortfall at level `alpha`: the tail mean of per-period losses
/// `L_i = -r_i`, reported as a positive loss. No horizon scaling is applied.
pub fn expected_shortfall(returns: &ReturnSeries, alpha: f64) -> Result<f64> {
    let losses: Vec<f64> = returns.values().iter().map(|r| -r).collect();
    let sample = EmpiricalSample::new(losses)?;
    tail_mean(&sample, alpha)
}

/// Sample Pearson correlation coefficient.
pub fn pearson(a: &EmpiricalSample, b: &EmpiricalSample) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::domain(format!(
            "correlation needs equal lengths, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    let n = a.len();
    if n < 2 {
        return Err(Error::InsufficientData {
            what: "correlation",
            required: 2,
            actual: n,
        });
    }
    let ma = mean(a);
    let mb = mean(b);
    let mut cov = 0.0;
    let mut va = 0.0;
    let mut vb = 0.0;
    for (x, y) in a.values.iter().zip(&b.values) {
        let dx = x - ma;
        let dy = y - mb;
        cov += dx * dy;
        va += dx * dx;
        vb += dy * dy;
    }
    if va == 0.0 || vb == 0.0 {
        return Err(Error::domain(
            "correlation is undefined when a sample has zero deviation",
        ));
    }
    Ok(cov / (va.sqrt() * vb.sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(values: &[f64]) -> EmpiricalSample {
        EmpiricalSample::new(values.to_vec()).unwrap()
    }

    fn one_to_ten() -> EmpiricalSample {
        sample(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0])
    }

    #[test]
    fn quantile_examples() {
        assert_eq!(quantile(&one_to_ten(), 0.9).unwrap(), 9.0);
        assert_eq!(quantile(&one_to_ten(), 0.0).unwrap(), 1.0);
        assert_eq!(quantile(&sample(&[4.2, 4.2, 4.2]), 0.7).unwrap(), 4.2);
        assert!(quantile(&one_to_ten(), 1.0).is_err());
        assert!(quantile(&one_to_ten(), -0.1).is_err());
    }

    #[test]
    fn tail_mean_examples() {
        assert!((tail_mean(&one_to_ten(), 0.9).unwrap() - 10.0).abs() < 1e-12);
        assert!((tail_mean(&one_to_ten(), 0.0).unwrap() - 5.5).abs() < 1e-12);
        let s = sample(&[0.1, 0.2, 0.3, 0.4]);
        assert!((tail_mean(&s, 0.5).unwrap() - 0.35).abs() < 1e-12);
    }

    #[test]
    fn tail_mean_near_one_is_maximum() {
        let s = one_to_ten();
        let alpha = 9.0 / 10.0;
        assert!((tail_mean(&s, alpha).unwrap() - 10.0).abs() < 1e-12);
    }

    #[test]
    fn deviation_examples() {
        assert!((deviation(&sample(&[1.0, 3.0])).unwrap() - 2f64.sqrt()).abs() < 1e-8);
        assert_eq!(deviation(&sample(&[2.0, 2.0, 2.0])).unwrap(), 0.0);
        let s = sample(&[1.0, 4.0, 2.0, 8.0]);
        let scaled = sample(&[3.0, 12.0, 6.0, 24.0]);
        assert!((deviation(&scaled).unwrap() - 3.0 * deviation(&s).unwrap()).abs() < 1e-12);
        assert!(deviation(&sample(&[1.0])).is_err());
    }

    #[test]
    fn skewness_examples() {
        assert!(skewness(&sample(&[-1.0, 0.0, 1.0])).unwrap().abs() < 1e-12);
        // {0,0,0,1}: m2 = 3/16, m3 = 3/32, skew = 2/sqrt(3).
        let skew = skewness(&sample(&[0.0, 0.0, 0.0, 1.0])).unwrap();
        assert!((skew - 2.0 / 3f64.sqrt()).abs() < 1e-12);
        assert!((skew - 1.1547).abs() < 1e-4);
        // Shift invariance.
        let shifted = skewness(&sample(&[5.0, 5.0, 5.0, 6.0])).unwrap();
        assert!((shifted - skew).abs() < 1e-12);
        assert!(skewness(&sample(&[3.0, 3.0, 3.0])).is_err());
    }

    #[test]
    fn volatility_examples() {
        // Two returns with sd exactly 0.01.
        let r = ReturnSeries::new(vec![0.0, 0.01 * 2f64.sqrt()]).unwrap();
        let v = volatility(&r).unwrap();
        assert!((v - 0.01 * 252f64.sqrt()).abs() < 1e-12);
        assert!((v - 0.15875).abs() < 1e-4);

        let flat = ReturnSeries::new(vec![0.004; 50]).unwrap();
        assert!(volatility(&flat).unwrap().abs() < 1e-15);

        assert!(volatility(&ReturnSeries::new(vec![0.01]).unwrap()).is_err());
    }

    // Independent reference for the quantile: the smallest sample value d
    // with empirical P(Z > d) <= 1 - u, found by scanning.
    fn scan_quantile(values: &[f64], u: f64) -> f64 {
        let n = values.len() as f64;
        let mut sorted = values.to_vec();
        sorted.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
        *sorted
            .iter()
            .find(|&&d| {
                let exceed = sorted.iter().filter(|&&z| z > d).count() as f64;
                exceed / n <= 1.0 - u
            })
            .expect("the maximum always qualifies")
    }

    #[test]
    fn tail_mean_matches_riemann_integration_of_the_quantile() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(0x7311);
        for _ in 0..50 {
            let n = rng.gen_range(1..=30);
            let values: Vec<f64> = (0..n).map(|_| rng.gen_range(-10.0..10.0)).collect();
            let sample = EmpiricalSample::new(values.clone()).unwrap();
            let alpha = rng.gen_range(0.0..0.95);

            let grid = 20_000;
            let du = (1.0 - alpha) / grid as f64;
            let integral: f64 = (0..grid)
                .map(|i| scan_quantile(&values, alpha + (i as f64 + 0.5) * du) * du)
                .sum();
            let reference = integral / (1.0 - alpha);

            let tm = tail_mean(&sample, alpha).unwrap();
            // Midpoint integration of a step function with at most n jumps of
            // height <= 20: error <= n * 20 * du, with a 10x safety factor.
            let slack = 10.0 * (n as f64) * 20.0 * du / (1.0 - alpha);
            assert!(
                (tm - reference).abs() <= slack.max(1e-9),
                "tm={tm} reference={reference} alpha={alpha} n={n}"
            );
        }
    }

    #[test]
    fn volatility_matches_analytic_monte_carlo() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(0x701);
        let draws: Vec<f64> = (0..100_000)
            .map(|_| {
                let z: f64 = rng.sample(rand_distr::StandardNormal);
                0.01 * z
            })
            .collect();
        let v = volatility(&ReturnSeries::new(draws).unwrap()).unwrap();
        let analytic = 0.01 * 252f64.sqrt();
        assert!((v - analytic).abs() < 0.01 * analytic, "{v} vs {analytic}");
    }

    #[test]
    fn expected_shortfall_examples() {
        let r = ReturnSeries::new(vec![0.01, -0.02, 0.03, -0.04]).unwrap();
        assert!((expected_shortfall(&r, 0.5).unwrap() - 0.03).abs() < 1e-12);

        let gains = ReturnSeries::new(vec![0.01, 0.02, 0.03]).unwrap();
        assert!((expected_shortfall(&gains, 0.0).unwrap() - (-0.02)).abs() < 1e-12);

        assert!(expected_shortfall(&ReturnSeries::new(vec![]).unwrap(), 0.9).is_err());
    }

    #[test]
    fn pearson_examples() {
        let a = sample(&[1.0, 2.0, 3.0]);
        assert!((pearson(&a, &a).unwrap() - 1.0).abs() < 1e-12);
        let neg = sample(&[-1.0, -2.0, -3.0]);
        assert!((pearson(&a, &neg).unwrap() + 1.0).abs() < 1e-12);
        let b = sample(&[1.0, 2.0, 4.0]);
        assert!((pearson(&a, &b).unwrap() - 0.98198).abs() < 1e-5);

        assert!(pearson(&a, &sample(&[1.0, 2.0])).is_err());
        assert!(pearson(&a, &sample(&[5.0, 5.0, 5.0])).is_err());
    }

    mod proptests {
        use super::*;
        use proptest::prelude::*;

        fn finite_sample() -> impl Strategy<Value = EmpiricalSample> {
            proptest::collection::vec(-1000.0f64..1000.0, 1..100)
                .prop_map(|v| EmpiricalSample::new(v).unwrap())
        }

        proptest! {
            #[test]
            fn tail_mean_dominates_quantile(s in finite_sample(), alpha in 0.0f64..0.999) {
                let q = quantile(&s, alpha).unwrap();
                let tm = tail_mean(&s, alpha).unwrap();
                prop_assert!(tm >= q - 1e-9, "tm={tm} q={q} alpha={alpha}");
            }

            #[test]
            fn tail_mean_monotone_in_alpha(s in finite_sample(), a in 0.0f64..0.9, d in 0.0f64..0.09) {
                let lo = tail_mean(&s, a).unwrap();
                let hi = tail_mean(&s, a + d).unwrap();
                prop_assert!(hi >= lo - 1e-9, "lo={lo} hi={hi}");
            }

            #[test]
            fn translation_and_scaling(s in finite_sample(), alpha in 0.0f64..0.999, c in -50.0f64..50.0, lambda in 0.01f64..10.0) {
                let shifted = EmpiricalSample::new(s.values().iter().map(|v| v + c).collect()).unwrap();
                let scaled = EmpiricalSample::new(s.values().iter().map(|v| v * lambda).collect()).unwrap();
                let q = quantile(&s, alpha).unwrap();
                let tm = tail_mean(&s, alpha).unwrap();
                prop_assert!((quantile(&shifted, alpha).unwrap() - (q + c)).abs() < 1e-9);
                prop_assert!((tail_mean(&shifted, alpha).unwrap() - (tm + c)).abs() < 1e-9);
                prop_assert!((quantile(&scaled, alpha).unwrap() - lambda * q).abs() < 1e-9 * lambda.max(1.0));
                prop_assert!((tail_mean(&scaled, alpha).unwrap() - lambda * tm).abs() < 1e-7 * lambda.max(1.0));
            }

            #[test]
            fn tail_mean_subadditive_over_shared_scenarios(
                pairs in proptest::collection::vec((-100.0f64..100.0, -100.0f64..100.0), 2..80),
                alpha in 0.0f64..0.99,
            ) {
                let a = EmpiricalSample::new(pairs.iter().map(|p| p.0).collect()).unwrap();
                let b = EmpiricalSample::new(pairs.iter().map(|p| p.1).collect()).unwrap();
                let ab = EmpiricalSample::new(pairs.iter().map(|p| p.0 + p.1).collect()).unwrap();
                let lhs = tail_mean(&ab, alpha).unwrap();
                let rhs = tail_mean(&a, alpha).unwrap() + tail_mean(&b, alpha).unwrap();
                prop_assert!(lhs <= rhs + 1e-9, "lhs={lhs} rhs={rhs}");
            }
        }
    }
}
