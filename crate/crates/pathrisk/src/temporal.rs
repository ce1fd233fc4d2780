//! Temporal risk measures: risk functionals composed with path-to-time
//! transformations.
//!
//! A temporal transformation maps a path to a random time and is expected to
//! satisfy three axioms: it vanishes on constant paths (normalization) and is
//! invariant under constant shifts and positive scalings of the path. The
//! [`check_temporal_axioms`] harness verifies the three axioms empirically on
//! fixture paths rather than assuming them. Composing a risk functional with
//! such a transformation yields a measure that is deliberately insensitive to
//! the monetary scale of the path, and therefore cannot be positively
//! homogeneous (or coherent); [`homogeneity_witness`] exhibits that failure
//! constructively.
//!
//! The drawdown-flavored measures live here as well: Conditional Expected
//! Drawdown (tail mean of per-window maximum drawdowns) and the duration
//! statistics (deviation, quantile, and tail mean of per-window maximum
//! durations).

use crate::error::{Error, Result};
use crate::pathmetrics::{
    drawdown, duration, liquidation_stopping_time, max_drawdown, max_drawdown_episode, max_duration,
};
use crate::riskfunc::{deviation, mean, quantile, tail_mean, EmpiricalSample};
use crate::series::{path_from_returns, rolling_windows, PathProcess, ReturnSeries, WindowSpec};

/// The path-to-time mappings offered out of the box.
///
/// All three output periods. The liquidation stopping time is capped at the
/// horizon when the threshold is never hit, and the episode duration of a
/// drawdown-free path is zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TemporalTransform {
    /// Longest underwater stretch within the horizon.
    MaxDuration,
    /// Duration of the maximum-drawdown episode.
    EpisodeDuration,
    /// First time the underwater duration reaches `threshold` periods,
    /// or the horizon if never.
    LiquidationStoppingTime { threshold: usize },
}

impl TemporalTransform {
    /// Evaluates the transform on one path, in periods.
    pub fn apply(&self, path: &PathProcess) -> f64 {
        match self {
            TemporalTransform::MaxDuration => max_duration(path) as f64,
            TemporalTransform::EpisodeDuration => match max_drawdown_episode(path) {
                Ok(episode) => episode.duration as f64,
                Err(_) => 0.0,
            },
            TemporalTransform::LiquidationStoppingTime { threshold } => {
                let hit = duration(path)
                    .values()
                    .iter()
                    .position(|&d| d >= *threshold);
                match hit {
                    Some(t) => t as f64,
                    None => path.horizon() as f64,
                }
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            TemporalTransform::MaxDuration => "max_duration",
            TemporalTransform::EpisodeDuration => "episode_duration",
            TemporalTransform::LiquidationStoppingTime { .. } => "liquidation_stopping_time",
        }
    }
}

/// Scalar functionals applied to a sample of random times.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RiskFunctional {
    Mean,
    Deviation,
    Quantile { alpha: f64 },
    TailMean { alpha: f64 },
}

impl RiskFunctional {
    pub fn evaluate(&self, sample: &EmpiricalSample) -> Result<f64> {
        match self {
            RiskFunctional::Mean => Ok(mean(sample)),
            RiskFunctional::Deviation => deviation(sample),
            RiskFunctional::Quantile { alpha } => quantile(sample, *alpha),
            RiskFunctional::TailMean { alpha } => tail_mean(sample, *alpha),
        }
    }
}

/// A temporal risk measure: a risk functional applied to the random time a
/// temporal transformation extracts from each path of a sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TemporalRiskMeasure {
    pub transform: TemporalTransform,
    pub functional: RiskFunctional,
}

impl TemporalRiskMeasure {
    pub fn new(transform: TemporalTransform, functional: RiskFunctional) -> Self {
        Self {
            transform,
            functional,
        }
    }

    /// Evaluates the measure over a sample of paths.
    pub fn evaluate(&self, paths: &[PathProcess]) -> Result<f64> {
        let times: Vec<f64> = paths.iter().map(|p| self.transform.apply(p)).collect();
        let sample = EmpiricalSample::new(times)?;
        self.functional.evaluate(&sample)
    }
}

/// Outcome of one axiom check, with the first counterexample when it fails.
#[derive(Debug, Clone, PartialEq)]
pub struct AxiomCheck {
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
}

impl AxiomCheck {
    fn pass() -> Self {
        Self {
            passed: true,
            counterexample: None,
        }
    }

    fn fail(counterexample: Counterexample) -> Self {
        Self {
            passed: false,
            counterexample: Some(counterexample),
        }
    }
}

/// The first fixture/parameter pair on which an axiom failed.
#[derive(Debug, Clone, PartialEq)]
pub struct Counterexample {
    pub fixture_index: usize,
    /// The shift or scale applied (the constant value for normalization).
    pub parameter: f64,
    pub expected: f64,
    pub actual: f64,
}

/// Results of checking the three temporal-transformation axioms.
#[derive(Debug, Clone, PartialEq)]
pub struct AxiomReport {
    pub normalization: AxiomCheck,
    pub shift_invariance: AxiomCheck,
    pub scaling_invariance: AxiomCheck,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.normalization.passed && self.shift_invariance.passed && self.scaling_invariance.passed
    }
}

/// Checks normalization, shift invariance, and scaling invariance of an
/// arbitrary path-to-scalar function on the given fixtures, requiring exact
/// equality.
///
/// Normalization evaluates the transform on constant paths (one per fixture
/// length, at level zero and at every shift level). Shift and scaling
/// invariance compare the transform on each fixture against its shifted and
/// scaled copies. Exact equality is the right notion for period-valued
/// transforms; float-valued ones (say, maximum drawdown used as a deliberate
/// non-example) should go through [`check_temporal_axioms_with_tolerance`] so
/// that rounding in the shifted path values is not mistaken for an axiom
/// violation.
pub fn check_temporal_axioms<F>(
    transform: F,
    fixtures: &[PathProcess],
    shifts: &[f64],
    scales: &[f64],
) -> Result<AxiomReport>
where
    F: Fn(&PathProcess) -> f64,
{
    check_temporal_axioms_with_tolerance(transform, fixtures, shifts, scales, 0.0)
}

/// [`check_temporal_axioms`] with equality relaxed to `|a - b| <= tol`.
pub fn check_temporal_axioms_with_tolerance<F>(
    transform: F,
    fixtures: &[PathProcess],
    shifts: &[f64],
    scales: &[f64],
    tol: f64,
) -> Result<AxiomReport>
where
    F: Fn(&PathProcess) -> f64,
{
    if fixtures.is_empty() {
        return Err(Error::Config(
            "axiom check needs at least one fixture".into(),
        ));
    }
    if let Some(bad) = scales.iter().find(|s| **s <= 0.0 || !s.is_finite()) {
        return Err(Error::Config(format!(
            "scales must be strictly positive, got {bad}"
        )));
    }
    if let Some(bad) = shifts.iter().find(|c| !c.is_finite()) {
        return Err(Error::Config(format!("shifts must be finite, got {bad}")));
    }

    let mut normalization = AxiomCheck::pass();
    'norm: for (i, fixture) in fixtures.iter().enumerate() {
        for &level in std::iter::once(&0.0).chain(shifts) {
            let constant =
                PathProcess::from_raw(vec![level; fixture.len()]).expect("constant path is finite");
            let actual = transform(&constant);
            if actual.abs() > tol {
                normalization = AxiomCheck::fail(Counterexample {
                    fixture_index: i,
                    parameter: level,
                    expected: 0.0,
                    actual,
                });
                break 'norm;
            }
        }
    }

    let mut shift_invariance = AxiomCheck::pass();
    'shift: for (i, fixture) in fixtures.iter().enumerate() {
        let base = transform(fixture);
        for &c in shifts {
            let actual = transform(&fixture.shifted(c));
            if (actual - base).abs() > tol {
                shift_invariance = AxiomCheck::fail(Counterexample {
                    fixture_index: i,
                    parameter: c,
                    expected: base,
                    actual,
                });
                break 'shift;
            }
        }
    }

    let mut scaling_invariance = AxiomCheck::pass();
    'scale: for (i, fixture) in fixtures.iter().enumerate() {
        let base = transform(fixture);
        for &lambda in scales {
            let actual = transform(&fixture.scaled(lambda));
            if (actual - base).abs() > tol {
                scaling_invariance = AxiomCheck::fail(Counterexample {
                    fixture_index: i,
                    parameter: lambda,
                    expected: base,
                    actual,
                });
                break 'scale;
            }
        }
    }

    Ok(AxiomReport {
        normalization,
        shift_invariance,
        scaling_invariance,
    })
}

/// The triple `(measure(paths), measure(lambda*paths), lambda*measure(paths))`
/// demonstrating that a scale-invariant measure is not positively homogeneous.
#[derive(Debug, Clone, PartialEq)]
pub struct HomogeneityWitness {
    pub lambda: f64,
    pub base: f64,
    pub scaled: f64,
    pub homogeneous: f64,
    /// False when the base value is zero, where homogeneity holds trivially.
    pub conclusive: bool,
}

impl HomogeneityWitness {
    /// True when the witness exhibits `measure(λX) = measure(X) ≠ λ·measure(X)`.
    pub fn demonstrates_non_homogeneity(&self) -> bool {
        self.conclusive && self.scaled == self.base && self.scaled != self.homogeneous
    }
}

/// Evaluates a measure on a path sample and on its `lambda`-scaled copy.
pub fn homogeneity_witness(
    measure: &TemporalRiskMeasure,
    paths: &[PathProcess],
    lambda: f64,
) -> Result<HomogeneityWitness> {
    if lambda <= 0.0 || lambda == 1.0 || !lambda.is_finite() {
        return Err(Error::domain(format!(
            "homogeneity witness needs a positive scale different from 1, got {lambda}"
        )));
    }
    let base = measure.evaluate(paths)?;
    let scaled_paths: Vec<PathProcess> = paths.iter().map(|p| p.scaled(lambda)).collect();
    let scaled = measure.evaluate(&scaled_paths)?;
    Ok(HomogeneityWitness {
        lambda,
        base,
        scaled,
        homogeneous: lambda * base,
        conclusive: base != 0.0,
    })
}

/// Maximum drawdown of each path as an empirical sample.
pub fn max_drawdown_sample(paths: &[PathProcess]) -> Result<EmpiricalSample> {
    EmpiricalSample::new(paths.iter().map(max_drawdown).collect())
}

/// Maximum duration of each path as an empirical sample, in periods.
pub fn max_duration_sample(paths: &[PathProcess]) -> Result<EmpiricalSample> {
    EmpiricalSample::new(paths.iter().map(|p| max_duration(p) as f64).collect())
}

/// Conditional Expected Drawdown over an explicit path sample: the tail mean
/// at `alpha` of the per-path maximum drawdowns.
pub fn ced_of_paths(paths: &[PathProcess], alpha: f64) -> Result<f64> {
    tail_mean(&max_drawdown_sample(paths)?, alpha)
}

/// Conditional Expected Drawdown of a return series over rolling windows.
pub fn ced(returns: &ReturnSeries, spec: &WindowSpec, alpha: f64) -> Result<f64> {
    ced_of_paths(&rolling_windows(returns, spec)?, alpha)
}

/// Conditional Expected Duration over an explicit path sample.
pub fn conditional_expected_duration_of_paths(paths: &[PathProcess], alpha: f64) -> Result<f64> {
    tail_mean(&max_duration_sample(paths)?, alpha)
}

/// Conditional Expected Duration of a return series over rolling windows:
/// the tail mean at `alpha` of per-window maximum durations.
pub fn conditional_expected_duration(
    returns: &ReturnSeries,
    spec: &WindowSpec,
    alpha: f64,
) -> Result<f64> {
    conditional_expected_duration_of_paths(&rolling_windows(returns, spec)?, alpha)
}

/// Standard deviation of the per-window maximum durations.
pub fn duration_deviation(returns: &ReturnSeries, spec: &WindowSpec) -> Result<f64> {
    deviation(&max_duration_sample(&rolling_windows(returns, spec)?)?)
}

/// Quantile at `alpha` of the per-window maximum durations.
pub fn duration_quantile(returns: &ReturnSeries, spec: &WindowSpec, alpha: f64) -> Result<f64> {
    quantile(
        &max_duration_sample(&rolling_windows(returns, spec)?)?,
        alpha,
    )
}

/// How the drawdown and duration samples behind a [`RiskReport`] are formed.
///
/// `Rolling` follows the overlapping-window methodology: one maximum drawdown
/// and one maximum duration per window. `Full` uses the whole history as a
/// single path and takes its per-step drawdown and duration values as the
/// samples, which is the only option when the horizon itself is the object of
/// interest (durations there can exceed any fixed window length).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WindowMode {
    Rolling(WindowSpec),
    Full,
}

/// The combined single-period and path-dependent risk statistics of a series.
#[derive(Debug, Clone, PartialEq)]
pub struct RiskReport {
    pub alpha: f64,
    pub periods_per_year: u32,
    pub window: WindowMode,
    /// Per-√year.
    pub volatility: f64,
    /// Per-period positive loss.
    pub expected_shortfall: f64,
    /// Log units.
    pub ced: f64,
    /// Periods.
    pub mean_max_duration: f64,
    pub duration_deviation: f64,
    pub duration_quantile: f64,
    pub conditional_expected_duration: f64,
    pub return_count: usize,
    pub drawdown_sample_size: usize,
    pub duration_sample_size: usize,
}

/// Computes the full risk report of a return series.
pub fn risk_report(returns: &ReturnSeries, alpha: f64, mode: &WindowMode) -> Result<RiskReport> {
    let (drawdown_sample, duration_sample) = match mode {
        WindowMode::Rolling(spec) => {
            let windows = rolling_windows(returns, spec)?;
            (
                max_drawdown_sample(&windows)?,
                max_duration_sample(&windows)?,
            )
        }
        WindowMode::Full => {
            let path = path_from_returns(returns);
            let dd = EmpiricalSample::new(drawdown(&path).values().to_vec())?;
            let dur =
                EmpiricalSample::new(duration(&path).values().iter().map(|&d| d as f64).collect())?;
            (dd, dur)
        }
    };

    Ok(RiskReport {
        alpha,
        periods_per_year: returns.periods_per_year(),
        window: *mode,
        volatility: crate::riskfunc::volatility(returns)?,
        expected_shortfall: crate::riskfunc::expected_shortfall(returns, alpha)?,
        ced: tail_mean(&drawdown_sample, alpha)?,
        mean_max_duration: mean(&duration_sample),
        duration_deviation: deviation(&duration_sample)?,
        duration_quantile: quantile(&duration_sample, alpha)?,
        conditional_expected_duration: tail_mean(&duration_sample, alpha)?,
        return_count: returns.len(),
        drawdown_sample_size: drawdown_sample.len(),
        duration_sample_size: duration_sample.len(),
    })
}

/// Exercises [`liquidation_stopping_time`] over a window sample; exposed for
/// callers that want the distribution rather than a single path value.
pub fn stopping_time_sample(paths: &[PathProcess], threshold: usize) -> Result<Vec<Option<usize>>> {
    paths
        .iter()
        .map(|p| liquidation_stopping_time(p, threshold))
        .collect()
}

/// Deterministic random-walk fixtures for the axiom harness: `count` paths of
/// `steps` uniform steps in (-0.05, 0.05), reproducible from the seed.
pub fn standard_fixtures(
    count: usize,
    steps: usize,
    seed: crate::montecarlo::Seed,
) -> Vec<PathProcess> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed.0);
    (0..count)
        .map(|_| {
            let mut values = Vec::with_capacity(steps + 1);
            let mut acc = 0.0;
            values.push(acc);
            for _ in 0..steps {
                acc += rng.gen_range(-0.05..0.05);
                values.push(acc);
            }
            PathProcess::from_log_values(values).expect("fixture values are finite")
        })
        .collect()
}
