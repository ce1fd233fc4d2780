//! One function per subcommand, each returning the rendered output text.

use clap::ValueEnum;

use pathrisk::error::Result;
use pathrisk::montecarlo::{
    fit_ar1, kappa_correlation_experiment, kappa_table, simulate_ar1, Ar1Params,
    KappaCorrelationConfig, KappaTableConfig, Seed, DEFAULT_SIGMA_EPS,
};
use pathrisk::pathmetrics::{
    drawdown, duration, liquidation_stopping_time, max_drawdown_episode, peak_time, running_max,
};
use pathrisk::series::{path_from_returns, ReturnSeries, WindowSpec};
use pathrisk::temporal::{
    check_temporal_axioms_with_tolerance, risk_report, standard_fixtures, AxiomCheck,
    TemporalTransform, WindowMode,
};

use crate::render::{json_array, sig10, CsvTable, JsonObject};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

/// Window argument: a length in periods or the whole history.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowArg {
    Full,
    Length(usize),
}

impl std::str::FromStr for WindowArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("full") {
            return Ok(WindowArg::Full);
        }
        let n: usize = s
            .parse()
            .map_err(|_| format!("expected an integer or 'full', got '{s}'"))?;
        if n < 2 {
            return Err(format!("window length must be at least 2, got {n}"));
        }
        Ok(WindowArg::Length(n))
    }
}

impl std::fmt::Display for WindowArg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WindowArg::Full => write!(f, "full"),
            WindowArg::Length(n) => write!(f, "{n}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum TransformArg {
    #[default]
    MaxDuration,
    EpisodeDuration,
    Lst,
    MaxDrawdown,
}

fn percent_of(log_drawdown: f64) -> f64 {
    1.0 - (-log_drawdown).exp()
}

fn date_cell(labels: Option<&[String]>, t: usize) -> String {
    match labels {
        Some(labels) => {
            if t == 0 {
                String::new()
            } else {
                labels[t - 1].clone()
            }
        }
        None => t.to_string(),
    }
}

pub fn paths(returns: &ReturnSeries, format: OutputFormat, percent: bool) -> String {
    let path = path_from_returns(returns);
    let runmax = running_max(&path);
    let dd = drawdown(&path);
    let peaks = peak_time(&path);
    let durations = duration(&path);
    let dd_value = |t: usize| {
        let d = dd.values()[t];
        if percent {
            percent_of(d)
        } else {
            d
        }
    };

    match format {
        OutputFormat::Csv => {
            let mut table = CsvTable::new(&[
                "date",
                "path",
                "running_max",
                "drawdown",
                "peak_time",
                "duration",
            ]);
            for t in 0..path.len() {
                table.row(vec![
                    date_cell(returns.labels(), t),
                    sig10(path.values()[t]),
                    sig10(runmax.values()[t]),
                    sig10(dd_value(t)),
                    peaks.values()[t].to_string(),
                    durations.values()[t].to_string(),
                ]);
            }
            table.render()
        }
        OutputFormat::Json => {
            let dates = json_array(
                (0..path.len()).map(|t| format!("\"{}\"", date_cell(returns.labels(), t))),
            );
            let col = |values: Vec<String>| json_array(values);
            JsonObject::new()
                .raw("date", dates)
                .raw(
                    "path",
                    col(path.values().iter().map(|v| sig10(*v)).collect()),
                )
                .raw(
                    "running_max",
                    col(runmax.values().iter().map(|v| sig10(*v)).collect()),
                )
                .raw(
                    "drawdown",
                    col((0..path.len()).map(|t| sig10(dd_value(t))).collect()),
                )
                .raw(
                    "peak_time",
                    col(peaks.values().iter().map(|v| v.to_string()).collect()),
                )
                .raw(
                    "duration",
                    col(durations.values().iter().map(|v| v.to_string()).collect()),
                )
                .render()
                + "\n"
        }
    }
}

pub fn risk(
    returns: &ReturnSeries,
    alpha: f64,
    window: WindowArg,
    stride: usize,
    format: OutputFormat,
    percent: bool,
) -> Result<String> {
    let mode = match window {
        WindowArg::Full => WindowMode::Full,
        WindowArg::Length(n) => WindowMode::Rolling(WindowSpec::new(n, stride)?),
    };
    let report = risk_report(returns, alpha, &mode)?;
    let ced = if percent {
        percent_of(report.ced)
    } else {
        report.ced
    };

    Ok(match format {
        OutputFormat::Csv => {
            let mut table = CsvTable::new(&[
                "alpha",
                "window",
                "stride",
                "periods_per_year",
                "returns",
                "volatility",
                "expected_shortfall",
                "ced",
                "mean_max_duration",
                "duration_deviation",
                "duration_quantile",
                "conditional_expected_duration",
                "drawdown_samples",
                "duration_samples",
            ]);
            table.row(vec![
                sig10(alpha),
                window.to_string(),
                stride.to_string(),
                report.periods_per_year.to_string(),
                report.return_count.to_string(),
                sig10(report.volatility),
                sig10(report.expected_shortfall),
                sig10(ced),
                sig10(report.mean_max_duration),
                sig10(report.duration_deviation),
                sig10(report.duration_quantile),
                sig10(report.conditional_expected_duration),
                report.drawdown_sample_size.to_string(),
                report.duration_sample_size.to_string(),
            ]);
            table.render()
        }
        OutputFormat::Json => {
            JsonObject::new()
                .number("alpha", alpha)
                .string("window", &window.to_string())
                .integer("stride", stride as i64)
                .integer("periods_per_year", report.periods_per_year as i64)
                .integer("returns", report.return_count as i64)
                .number("volatility", report.volatility)
                .number("expected_shortfall", report.expected_shortfall)
                .number("ced", ced)
                .number("mean_max_duration", report.mean_max_duration)
                .number("duration_deviation", report.duration_deviation)
                .number("duration_quantile", report.duration_quantile)
                .number(
                    "conditional_expected_duration",
                    report.conditional_expected_duration,
                )
                .integer("drawdown_samples", report.drawdown_sample_size as i64)
                .integer("duration_samples", report.duration_sample_size as i64)
                .render()
                + "\n"
        }
    })
}

pub fn episode(returns: &ReturnSeries, format: OutputFormat, percent: bool) -> Result<String> {
    let path = path_from_returns(returns);
    let e = max_drawdown_episode(&path)?;
    let magnitude = if percent {
        percent_of(e.magnitude)
    } else {
        e.magnitude
    };

    Ok(match format {
        OutputFormat::Csv => {
            let mut table = CsvTable::new(&[
                "peak",
                "bottom",
                "recovery",
                "duration",
                "censored",
                "magnitude",
            ]);
            table.row(vec![
                e.peak.to_string(),
                e.bottom.to_string(),
                e.recovery
                    .map(|r| r.to_string())
                    .unwrap_or_else(|| "CENSORED".to_string()),
                e.duration.to_string(),
                e.censored.to_string(),
                sig10(magnitude),
            ]);
            table.render()
        }
        OutputFormat::Json => {
            let obj = JsonObject::new()
                .integer("peak", e.peak as i64)
                .integer("bottom", e.bottom as i64);
            let obj = match e.recovery {
                Some(r) => obj.integer("recovery", r as i64),
                None => obj.null("recovery"),
            };
            obj.integer("duration", e.duration as i64)
                .boolean("censored", e.censored)
                .number("magnitude", magnitude)
                .render()
                + "\n"
        }
    })
}

pub fn lst(returns: &ReturnSeries, threshold: usize, format: OutputFormat) -> Result<String> {
    let path = path_from_returns(returns);
    let hit = liquidation_stopping_time(&path, threshold)?;

    Ok(match format {
        OutputFormat::Csv => {
            let mut table = CsvTable::new(&["threshold", "stopping_time"]);
            table.row(vec![
                threshold.to_string(),
                hit.map(|t| t.to_string())
                    .unwrap_or_else(|| "NONE".to_string()),
            ]);
            table.render()
        }
        OutputFormat::Json => {
            let obj = JsonObject::new().integer("threshold", threshold as i64);
            match hit {
                Some(t) => obj.integer("stopping_time", t as i64),
                None => obj.null("stopping_time"),
            }
            .render()
                + "\n"
        }
    })
}

const AXIOM_FIXTURE_COUNT: usize = 100;
const AXIOM_FIXTURE_STEPS: usize = 60;
const AXIOM_FIXTURE_SEED: u64 = 0x7061_7468;
const AXIOM_SHIFTS: [f64; 3] = [-2.0, 0.5, 7.0];
const AXIOM_SCALES: [f64; 3] = [0.5, 2.0, 10.0];
const AXIOM_TOL: f64 = 1e-12;

pub fn axioms(transform: TransformArg, threshold: usize, format: OutputFormat) -> Result<String> {
    let fixtures = standard_fixtures(
        AXIOM_FIXTURE_COUNT,
        AXIOM_FIXTURE_STEPS,
        Seed(AXIOM_FIXTURE_SEED),
    );
    type PathFn = Box<dyn Fn(&pathrisk::series::PathProcess) -> f64>;
    let (name, check): (&str, PathFn) = match transform {
        TransformArg::MaxDuration => (
            "max_duration",
            Box::new(|p: &pathrisk::series::PathProcess| TemporalTransform::MaxDuration.apply(p))
                as PathFn,
        ),
        TransformArg::EpisodeDuration => (
            "episode_duration",
            Box::new(|p| TemporalTransform::EpisodeDuration.apply(p)),
        ),
        TransformArg::Lst => (
            "liquidation_stopping_time",
            Box::new(move |p| TemporalTransform::LiquidationStoppingTime { threshold }.apply(p)),
        ),
        TransformArg::MaxDrawdown => (
            "max_drawdown",
            Box::new(pathrisk::pathmetrics::max_drawdown),
        ),
    };
    let report = check_temporal_axioms_with_tolerance(
        check,
        &fixtures,
        &AXIOM_SHIFTS,
        &AXIOM_SCALES,
        AXIOM_TOL,
    )?;

    let rows = [
        ("normalization", &report.normalization),
        ("shift_invariance", &report.shift_invariance),
        ("scaling_invariance", &report.scaling_invariance),
    ];
    Ok(match format {
        OutputFormat::Csv => {
            let mut table = CsvTable::new(&[
                "transform",
                "axiom",
                "result",
                "fixture",
                "parameter",
                "expected",
                "actual",
            ]);
            for (axiom, check) in rows {
                let mut cells = vec![
                    name.to_string(),
                    axiom.to_string(),
                    if check.passed { "PASS" } else { "FAIL" }.to_string(),
                ];
                match &check.counterexample {
                    Some(ce) => {
                        cells.push(ce.fixture_index.to_string());
                        cells.push(sig10(ce.parameter));
                        cells.push(sig10(ce.expected));
                        cells.push(sig10(ce.actual));
                    }
                    None => {
                        cells.extend([String::new(), String::new(), String::new(), String::new()])
                    }
                }
                table.row(cells);
            }
            table.render()
        }
        OutputFormat::Json => {
            let check_json = |check: &AxiomCheck| {
                let obj = JsonObject::new().boolean("passed", check.passed);
                match &check.counterexample {
                    Some(ce) => obj.raw(
                        "counterexample",
                        JsonObject::new()
                            .integer("fixture", ce.fixture_index as i64)
                            .number("parameter", ce.parameter)
                            .number("expected", ce.expected)
                            .number("actual", ce.actual)
                            .render(),
                    ),
                    None => obj.null("counterexample"),
                }
                .render()
            };
            JsonObject::new()
                .string("transform", name)
                .raw("normalization", check_json(&report.normalization))
                .raw("shift_invariance", check_json(&report.shift_invariance))
                .raw("scaling_invariance", check_json(&report.scaling_invariance))
                .render()
                + "\n"
        }
    })
}

pub fn simulate(kappa: f64, n: usize, seed: u64, format: OutputFormat) -> Result<String> {
    let params = Ar1Params::new(kappa, DEFAULT_SIGMA_EPS)?;
    let returns = simulate_ar1(&params, n, Seed(seed))?;

    Ok(match format {
        OutputFormat::Csv => {
            let mut table = CsvTable::new(&["date", "return"]);
            for (t, &r) in returns.values().iter().enumerate() {
                table.row(vec![t.to_string(), sig10(r)]);
            }
            table.render()
        }
        OutputFormat::Json => {
            JsonObject::new()
                .number("kappa", kappa)
                .number("sigma_eps", DEFAULT_SIGMA_EPS)
                .integer("n", n as i64)
                .integer("seed", seed as i64)
                .raw(
                    "return",
                    json_array(returns.values().iter().map(|r| sig10(*r))),
                )
                .render()
                + "\n"
        }
    })
}

pub fn fit(returns: &ReturnSeries, format: OutputFormat) -> Result<String> {
    let kappa_hat = fit_ar1(returns)?;
    Ok(match format {
        OutputFormat::Csv => {
            let mut table = CsvTable::new(&["kappa_hat"]);
            table.row(vec![sig10(kappa_hat)]);
            table.render()
        }
        OutputFormat::Json => JsonObject::new().number("kappa_hat", kappa_hat).render() + "\n",
    })
}

#[allow(clippy::too_many_arguments)]
pub fn kappa_table_cmd(
    kappas: Vec<f64>,
    n: usize,
    seed: u64,
    alpha: f64,
    window: usize,
    stride: usize,
    format: OutputFormat,
) -> Result<String> {
    let config = KappaTableConfig::new(
        kappas,
        n,
        Seed(seed),
        alpha,
        WindowSpec::new(window, stride)?,
    );
    let table = kappa_table(&config)?;

    Ok(match format {
        OutputFormat::Csv => {
            let mut out = CsvTable::new(&[
                "kappa",
                "volatility",
                "expected_shortfall",
                "ced",
                "conditional_expected_duration",
                "alpha",
                "window",
                "stride",
            ]);
            for row in &table.rows {
                out.row(vec![
                    sig10(row.kappa),
                    sig10(row.volatility),
                    sig10(row.expected_shortfall),
                    sig10(row.ced),
                    sig10(row.conditional_expected_duration),
                    sig10(table.alpha),
                    table.window.length().to_string(),
                    table.window.stride().to_string(),
                ]);
            }
            out.render()
        }
        OutputFormat::Json => {
            let rows = table.rows.iter().map(|row| {
                JsonObject::new()
                    .number("kappa", row.kappa)
                    .number("volatility", row.volatility)
                    .number("expected_shortfall", row.expected_shortfall)
                    .number("ced", row.ced)
                    .number(
                        "conditional_expected_duration",
                        row.conditional_expected_duration,
                    )
                    .render()
            });
            JsonObject::new()
                .number("alpha", table.alpha)
                .integer("window", table.window.length() as i64)
                .integer("stride", table.window.stride() as i64)
                .integer("n", table.n as i64)
                .number("sigma_eps", table.sigma_eps)
                .raw("rows", json_array(rows))
                .render()
                + "\n"
        }
    })
}

pub fn kappa_corr(seed: u64, alpha: f64, format: OutputFormat) -> Result<String> {
    let mut config = KappaCorrelationConfig::serial_correlation_demo(Seed(seed));
    config.alpha = alpha;
    let result = kappa_correlation_experiment(&config)?;

    Ok(match format {
        OutputFormat::Csv => {
            let mut table = CsvTable::new(&[
                "alpha",
                "metric_window",
                "sub_path",
                "stride",
                "windows",
                "corr_volatility",
                "corr_expected_shortfall",
                "corr_ced",
                "corr_conditional_expected_duration",
            ]);
            table.row(vec![
                sig10(config.alpha),
                config.metric_window.to_string(),
                config.sub_path.to_string(),
                config.stride.to_string(),
                result.window_count.to_string(),
                sig10(result.corr_volatility),
                sig10(result.corr_expected_shortfall),
                sig10(result.corr_ced),
                sig10(result.corr_conditional_expected_duration),
            ]);
            table.render()
        }
        OutputFormat::Json => {
            JsonObject::new()
                .number("alpha", config.alpha)
                .integer("metric_window", config.metric_window as i64)
                .integer("sub_path", config.sub_path as i64)
                .integer("stride", config.stride as i64)
                .integer("windows", result.window_count as i64)
                .number("corr_volatility", result.corr_volatility)
                .number("corr_expected_shortfall", result.corr_expected_shortfall)
                .number("corr_ced", result.corr_ced)
                .number(
                    "corr_conditional_expected_duration",
                    result.corr_conditional_expected_duration,
                )
                .render()
                + "\n"
        }
    })
}
