//! Return-series ingestion, cumulative path construction, and rolling-window
//! extraction.
//!
//! A [`ReturnSeries`] holds per-period simple returns. The cumulative path is
//! built in log units (`values[t] = Σ ln(1 + r_i)`) so that constant shifts
//! and positive scalings of a path are exact arithmetic operations, which the
//! invariance checks in [`crate::pathmetrics`] rely on. Conversion of a
//! log-unit drawdown `D` back to a fractional drop is `1 - exp(-D)`.

use crate::error::{Error, Result};

/// Trading periods per year assumed when none is specified.
pub const DEFAULT_PERIODS_PER_YEAR: u32 = 252;

/// Ordered per-period simple returns with optional period labels.
///
/// Every return must be finite and strictly greater than -1; a return of
/// -100% or worse has no well-defined log path and is rejected at
/// construction.
#[derive(Debug, Clone, PartialEq)]
pub struct ReturnSeries {
    values: Vec<f64>,
    labels: Option<Vec<String>>,
    periods_per_year: u32,
}

impl ReturnSeries {
    /// Builds a series from raw simple returns, unlabeled, at the default
    /// frequency of [`DEFAULT_PERIODS_PER_YEAR`].
    pub fn new(values: Vec<f64>) -> Result<Self> {
        for (i, &v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::domain(format!("return at index {i} is not finite")));
            }
            if v <= -1.0 {
                return Err(Error::domain(format!(
                    "return {v} at index {i} is <= -1 (total loss or worse)"
                )));
            }
        }
        Ok(Self {
            values,
            labels: None,
            periods_per_year: DEFAULT_PERIODS_PER_YEAR,
        })
    }

    /// Attaches one label per return (e.g. dates from a CSV file).
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.values.len() {
            return Err(Error::domain(format!(
                "label count {} does not match return count {}",
                labels.len(),
                self.values.len()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Overrides the annualization frequency.
    pub fn with_periods_per_year(mut self, periods_per_year: u32) -> Result<Self> {
        if periods_per_year == 0 {
            return Err(Error::domain("periods_per_year must be positive"));
        }
        self.periods_per_year = periods_per_year;
        Ok(self)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn periods_per_year(&self) -> u32 {
        self.periods_per_year
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// A discrete cumulative log-value path `X_0..X_T`.
///
/// Paths built from returns always start at zero. Shifted copies produced by
/// [`PathProcess::shifted`] deliberately step outside that canonical form:
/// they exist so that the shift-invariance of drawdown, peak time, and
/// duration can be exercised directly.
#[derive(Debug, Clone, PartialEq)]
pub struct PathProcess {
    values: Vec<f64>,
    origin_label: Option<String>,
}

impl PathProcess {
    /// Builds a path from explicit cumulative log-values. The path must be
    /// nonempty, finite, and start at zero.
    pub fn from_log_values(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::domain("a path needs at least one value"));
        }
        if values[0] != 0.0 {
            return Err(Error::domain(format!(
                "path must start at 0, got {}",
                values[0]
            )));
        }
        Self::from_raw(values)
    }

    /// Builds a path without the zero-origin requirement. Used internally for
    /// shifted copies and by the temporal axiom checker.
    pub(crate) fn from_raw(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::domain("a path needs at least one value"));
        }
        for (i, &v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::domain(format!(
                    "path value at index {i} is not finite"
                )));
            }
        }
        Ok(Self {
            values,
            origin_label: None,
        })
    }

    pub fn with_origin_label(mut self, label: impl Into<String>) -> Self {
        self.origin_label = Some(label.into());
        self
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn origin_label(&self) -> Option<&str> {
        self.origin_label.as_deref()
    }

    /// Number of points, `T + 1`.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The horizon `T` in periods (number of steps).
    pub fn horizon(&self) -> usize {
        self.values.len() - 1
    }

    pub fn last(&self) -> f64 {
        *self.values.last().expect("path is nonempty")
    }

    /// The path with a constant added to every value.
    pub fn shifted(&self, c: f64) -> Self {
        Self {
            values: self.values.iter().map(|v| v + c).collect(),
            origin_label: self.origin_label.clone(),
        }
    }

    /// The path with every value multiplied by `lambda`.
    pub fn scaled(&self, lambda: f64) -> Self {
        Self {
            values: self.values.iter().map(|v| v * lambda).collect(),
            origin_label: self.origin_label.clone(),
        }
    }

    /// Pointwise convex combination `lambda·a + (1-lambda)·b`.
    pub fn blend(a: &Self, b: &Self, lambda: f64) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::domain(format!(
                "cannot blend paths of lengths {} and {}",
                a.len(),
                b.len()
            )));
        }
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::domain(format!(
                "blend weight must lie in [0, 1], got {lambda}"
            )));
        }
        let values = a
            .values
            .iter()
            .zip(&b.values)
            .map(|(x, y)| lambda * x + (1.0 - lambda) * y)
            .collect();
        Ok(Self {
            values,
            origin_label: None,
        })
    }
}

/// A rolling-window specification: `length` returns per window, window starts
/// every `stride` periods.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WindowSpec {
    length: usize,
    stride: usize,
}

impl WindowSpec {
    pub fn new(length: usize, stride: usize) -> Result<Self> {
        if length < 2 {
            return Err(Error::domain(format!(
                "window length must be at least 2, got {length}"
            )));
        }
        if stride == 0 {
            return Err(Error::domain("window stride must be at least 1"));
        }
        Ok(Self { length, stride })
    }

    /// One-period stride, the overlapping scheme used throughout.
    pub fn with_length(length: usize) -> Result<Self> {
        Self::new(length, 1)
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn stride(&self) -> usize {
        self.stride
    }
}

/// Parses CSV text with header `date,return` into a [`ReturnSeries`].
///
/// Line numbers in errors are 1-based and count the header. A header-only
/// file yields an empty series.
pub fn parse_returns_csv(text: &str) -> Result<ReturnSeries> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim() == "date,return" => {}
        Some((_, header)) => {
            return Err(Error::Parse {
                line: 1,
                message: format!("expected header 'date,return', got '{}'", header.trim()),
            })
        }
        None => {
            return Err(Error::Parse {
                line: 1,
                message: "empty input, expected header 'date,return'".into(),
            })
        }
    }

    let mut labels = Vec::new();
    let mut values = Vec::new();
    for (idx, raw) in lines {
        let line_no = idx + 1;
        let row = raw.trim_end_matches('\r');
        if row.is_empty() {
            continue;
        }
        let mut fields = row.split(',');
        let (date, ret) = match (fields.next(), fields.next(), fields.next()) {
            (Some(d), Some(r), None) => (d, r),
            _ => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected 2 fields, got '{row}'"),
                })
            }
        };
        let value: f64 = ret.trim().parse().map_err(|_| Error::Parse {
            line: line_no,
            message: format!("cannot parse return '{}'", ret.trim()),
        })?;
        if !value.is_finite() {
            return Err(Error::Parse {
                line: line_no,
                message: format!("return '{}' is not finite", ret.trim()),
            });
        }
        if value <= -1.0 {
            return Err(Error::domain(format!(
                "line {line_no}: return {value} is <= -1 (total loss or worse)"
            )));
        }
        labels.push(date.trim().to_string());
        values.push(value);
    }

    ReturnSeries::new(values)?.with_labels(labels)
}

/// Builds the cumulative log path of a return series:
/// `values[t] = Σ_{i<t} ln(1 + r_i)`, `values[0] = 0`.
pub fn path_from_returns(returns: &ReturnSeries) -> PathProcess {
    let mut values = Vec::with_capacity(returns.len() + 1);
    let mut acc = 0.0;
    values.push(acc);
    for &r in returns.values() {
        acc += r.ln_1p();
        values.push(acc);
    }
    PathProcess {
        values,
        origin_label: None,
    }
}

/// Extracts overlapping (or strided) windows as rebased paths.
///
/// Window `k` covers returns `[k·stride, k·stride + length)`; each emitted
/// path has `length + 1` points and starts at zero. With stride 1 the number
/// of windows is `T - length + 1`.
pub fn rolling_windows(returns: &ReturnSeries, spec: &WindowSpec) -> Result<Vec<PathProcess>> {
    let t = returns.len();
    let n = spec.length();
    if n > t {
        return Err(Error::WindowTooLong {
            requested: n,
            available: t,
        });
    }
    let full = path_from_returns(returns);
    let base = full.values();
    let mut windows = Vec::new();
    let mut start = 0;
    while start + n <= t {
        let origin = base[start];
        let values: Vec<f64> = base[start..=start + n].iter().map(|v| v - origin).collect();
        windows.push(PathProcess {
            values,
            origin_label: None,
        });
        start += spec.stride();
    }
    Ok(windows)
}
