//! Per-path drawdown analytics, spatial and temporal.
//!
//! The spatial side is the drawdown process `D_t = max_{s<=t} X_s - X_t` and
//! its maximum. The temporal side is the peak time process `G_t` (the last
//! time the path coincided with its running maximum), the duration process
//! `delta_t = t - G_t` (time spent underwater), the maximum duration, the
//! maximum-drawdown episode (peak, bottom, recovery), and the liquidation
//! stopping time.
//!
//! Equality with the running maximum is exact by default: a value greater
//! than or equal to the carried-forward running maximum counts as a new peak,
//! so re-touching a previous high ends the underwater stretch. The
//! `*_with_tolerance` variants relax that equality to `>= runmax - eq_tol`
//! for callers whose data re-touches peaks only approximately.

use crate::error::{Error, Result};
use crate::series::PathProcess;

/// Nonnegative drawdown magnitudes in log units, one per path point.
#[derive(Debug, Clone, PartialEq)]
pub struct DrawdownPath {
    values: Vec<f64>,
}

impl DrawdownPath {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// The largest drawdown, zero for a nondecreasing path.
    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }
}

/// Peak time indices `G_t`, nondecreasing with `G_t <= t` and `G_0 = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeakTimeSeries {
    values: Vec<usize>,
}

impl PeakTimeSeries {
    pub fn values(&self) -> &[usize] {
        &self.values
    }
}

/// Underwater durations `delta_t = t - G_t` in periods.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DurationSeries {
    values: Vec<usize>,
}

impl DurationSeries {
    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// The maximum duration; an excursion still open at the horizon counts.
    pub fn max(&self) -> usize {
        self.values.iter().copied().max().unwrap_or(0)
    }
}

/// The deepest peak-to-trough excursion of a path.
///
/// When the path never regains its peak within the horizon the episode is
/// `censored` and its duration runs from the peak to the horizon end.
#[derive(Debug, Clone, PartialEq)]
pub struct DrawdownEpisode {
    /// Last time at the running maximum before the bottom.
    pub peak: usize,
    /// First index attaining the maximum drawdown.
    pub bottom: usize,
    /// First index at or after the bottom back at the running maximum.
    pub recovery: Option<usize>,
    /// `recovery - peak`, or `T - peak` when censored.
    pub duration: usize,
    pub censored: bool,
    /// The maximum drawdown in log units.
    pub magnitude: f64,
}

/// Running maximum of the path up to each index.
pub fn running_max(path: &PathProcess) -> PathProcess {
    let vals = path.values();
    let mut out = Vec::with_capacity(vals.len());
    let mut m = vals[0];
    for &v in vals {
        if v > m {
            m = v;
        }
        out.push(m);
    }
    PathProcess::from_raw(out).expect("running max of a finite path is finite")
}

/// Drawdown process `D_t = runmax_t - X_t`.
pub fn drawdown(path: &PathProcess) -> DrawdownPath {
    let vals = path.values();
    let mut out = Vec::with_capacity(vals.len());
    let mut m = vals[0];
    for &v in vals {
        if v > m {
            m = v;
        }
        out.push(m - v);
    }
    DrawdownPath { values: out }
}

/// The maximum drop from peak to trough within the horizon.
pub fn max_drawdown(path: &PathProcess) -> f64 {
    drawdown(path).max()
}

/// Peak time process with exact equality (`eq_tol = 0`).
pub fn peak_time(path: &PathProcess) -> PeakTimeSeries {
    peak_time_with_tolerance(path, 0.0)
}

/// Peak time process where a value within `eq_tol` of the running maximum
/// counts as being at the peak.
pub fn peak_time_with_tolerance(path: &PathProcess, eq_tol: f64) -> PeakTimeSeries {
    let vals = path.values();
    let mut out = Vec::with_capacity(vals.len());
    let mut m = vals[0];
    out.push(0);
    for (t, &v) in vals.iter().enumerate().skip(1) {
        if v >= m - eq_tol {
            if v > m {
                m = v;
            }
            out.push(t);
        } else {
            out.push(out[t - 1]);
        }
    }
    PeakTimeSeries { values: out }
}

/// Duration process `delta_t = t - G_t`.
pub fn duration(path: &PathProcess) -> DurationSeries {
    duration_with_tolerance(path, 0.0)
}

/// Duration process under a peak-equality tolerance.
pub fn duration_with_tolerance(path: &PathProcess, eq_tol: f64) -> DurationSeries {
    let g = peak_time_with_tolerance(path, eq_tol);
    let values = g.values().iter().enumerate().map(|(t, &s)| t - s).collect();
    DurationSeries { values }
}

/// The maximum time spent underwater within the horizon.
pub fn max_duration(path: &PathProcess) -> usize {
    duration(path).max()
}

/// Locates the maximum-drawdown episode with exact peak equality.
pub fn max_drawdown_episode(path: &PathProcess) -> Result<DrawdownEpisode> {
    max_drawdown_episode_with_tolerance(path, 0.0)
}

/// Locates the maximum-drawdown episode under a peak-equality tolerance.
///
/// The bottom is the first index attaining the maximum drawdown, the peak is
/// the last at-peak time before it, and recovery is the first at-peak time at
/// or after it. Fails with a domain error when the path has no drawdown.
pub fn max_drawdown_episode_with_tolerance(
    path: &PathProcess,
    eq_tol: f64,
) -> Result<DrawdownEpisode> {
    let dd = drawdown(path);
    let mut bottom = 0;
    let mut magnitude = 0.0;
    for (t, &d) in dd.values().iter().enumerate() {
        if d > magnitude {
            magnitude = d;
            bottom = t;
        }
    }
    if magnitude == 0.0 {
        return Err(Error::domain(
            "path has no drawdown, the maximum-drawdown episode is undefined",
        ));
    }

    let peak = peak_time_with_tolerance(path, eq_tol).values()[bottom];
    let recovery = dd.values()[bottom..]
        .iter()
        .position(|&d| d <= eq_tol)
        .map(|offset| bottom + offset);
    let (duration, censored) = match recovery {
        Some(r) => (r - peak, false),
        None => (path.horizon() - peak, true),
    };
    Ok(DrawdownEpisode {
        peak,
        bottom,
        recovery,
        duration,
        censored,
        magnitude,
    })
}

/// First time the underwater duration reaches `threshold` periods, if ever.
pub fn liquidation_stopping_time(path: &PathProcess, threshold: usize) -> Result<Option<usize>> {
    if threshold == 0 {
        return Err(Error::domain("liquidation threshold must be at least 1"));
    }
    let delta = duration(path);
    Ok(delta.values().iter().position(|&d| d >= threshold))
}
