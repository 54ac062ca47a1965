//! Parameter sweeps: one bound (and optionally one optimization) per grid
//! point, written as CSV in grid order.

use lqu_core::{optimize_lqu, BoundContext, GaConfig, LquError, StateSpec};
use rayon::prelude::*;
use std::io::Write;
use std::time::Instant;

use crate::config::{check_non_degenerate, with_param, Mode, OutputFormat, SweepConfig};
use crate::error::{CliError, CliResult};
use crate::format::sig12;
use crate::svg;

pub const HEADER: [&str; 6] = [
    "param",
    "bound",
    "optimized",
    "alpha",
    "lambda_max",
    "wall_time_ms",
];
/// Slack allowed between an optimized value and its lower bound.
pub const SOUNDNESS_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub param_value: f64,
    pub bound: f64,
    pub optimized: Option<f64>,
    pub alpha: f64,
    pub lambda_max: f64,
    pub wall_time_ms: Option<u64>,
}

impl SweepRow {
    fn record(&self) -> Vec<String> {
        vec![
            sig12(self.param_value),
            sig12(self.bound),
            self.optimized.map(sig12).unwrap_or_default(),
            sig12(self.alpha),
            sig12(self.lambda_max),
            self.wall_time_ms.map(|t| t.to_string()).unwrap_or_default(),
        ]
    }
}

/// Rows computed before the sweep stopped, and why it stopped.
#[derive(Debug)]
pub struct SweepOutcome {
    pub rows: Vec<SweepRow>,
    pub failure: Option<CliError>,
}

/// Evaluates a single point.
pub fn evaluate_point(
    spec: &StateSpec,
    spectrum: &lqu_core::ComplexMatrix,
    ctx: &BoundContext,
    mode: Mode,
    ga: &GaConfig,
    param_value: f64,
    timing: bool,
) -> CliResult<SweepRow> {
    let start = Instant::now();
    let rho = spec.build()?;
    let report = ctx.lower_bound(&rho, spectrum)?;
    let optimized = if mode.optimizes() {
        let res = optimize_lqu(&rho, spectrum, ga).map_err(|e| match e {
            LquError::DegenerateSpectrum { .. } | LquError::DimensionMismatch(_) => {
                CliError::Validation(e.to_string())
            }
            other => CliError::Optimizer(format!("at {param_value}: {other}")),
        })?;
        Some(res.value)
    } else {
        None
    };
    Ok(SweepRow {
        param_value,
        bound: report.bound,
        optimized,
        alpha: report.alpha,
        lambda_max: report.lambda_max,
        wall_time_ms: timing.then(|| start.elapsed().as_millis() as u64),
    })
}

/// Runs every grid point (concurrently) and returns the rows in grid order,
/// truncated at the first failing or unsound point.
pub fn run_sweep(config: &SweepConfig, timing: bool) -> CliResult<SweepOutcome> {
    config.validate()?;
    let grid = config.range.grid();
    let specs = grid
        .iter()
        .map(|&x| with_param(&config.state, config.parameter, x))
        .collect::<CliResult<Vec<_>>>()?;
    let dim_a = match specs[0].dim_a() {
        Some(d) => d,
        None => specs[0].build()?.dim_a(),
    };
    let spectrum = config.spectrum.resolve(dim_a)?;
    if config.mode.optimizes() {
        check_non_degenerate(&spectrum)?;
    }
    let ctx = BoundContext::new(dim_a)?;
    // Validate every state before spending time on optimizations.
    for spec in &specs {
        spec.build()?;
    }

    let results: Vec<CliResult<SweepRow>> = specs
        .par_iter()
        .zip(&grid)
        .map(|(spec, &x)| evaluate_point(spec, &spectrum, &ctx, config.mode, &config.ga, x, timing))
        .collect();

    let mut rows = Vec::with_capacity(results.len());
    for result in results {
        match result {
            Ok(row) => {
                if let Some(opt) = row.optimized {
                    if opt < row.bound - SOUNDNESS_TOL {
                        let msg = format!(
                            "optimized {} below bound {} at {}",
                            opt, row.bound, row.param_value
                        );
                        return Ok(SweepOutcome {
                            rows,
                            failure: Some(CliError::Soundness(msg)),
                        });
                    }
                }
                rows.push(row);
            }
            Err(CliError::Validation(msg)) => return Err(CliError::Validation(msg)),
            Err(e) => {
                return Ok(SweepOutcome {
                    rows,
                    failure: Some(e),
                })
            }
        }
    }
    Ok(SweepOutcome {
        rows,
        failure: None,
    })
}

/// CSV for the rows; a failed sweep ends with a marker row naming the cause.
pub fn write_csv(out: impl Write, outcome: &SweepOutcome) -> CliResult<()> {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(out);
    w.write_record(HEADER)?;
    for row in &outcome.rows {
        w.write_record(row.record())?;
    }
    if let Some(err) = &outcome.failure {
        w.write_record(["#incomplete", &err.to_string(), "", "", "", ""])?;
    }
    w.flush()?;
    Ok(())
}

/// Runs a sweep and writes its outputs; returns the failure, if any, after
/// the partial file has been written.
pub fn run_and_write(
    config: &SweepConfig,
    svg_path: Option<&std::path::Path>,
    title: &str,
    timing: bool,
) -> CliResult<()> {
    let outcome = run_sweep(config, timing)?;
    match &config.output {
        Some(path) => write_csv(std::fs::File::create(path)?, &outcome)?,
        None => write_csv(std::io::stdout().lock(), &outcome)?,
    }
    let svg_path = svg_path.map(|p| p.to_path_buf()).or_else(|| {
        (config.format == OutputFormat::CsvSvg)
            .then(|| config.output.as_ref().map(|p| p.with_extension("svg")))
            .flatten()
    });
    if let Some(path) = svg_path {
        let plot = svg::line_plot(title, config.parameter.name(), &outcome.rows);
        std::fs::write(path, plot)?;
    }
    match outcome.failure {
        Some(e) => Err(e),
        None => Ok(()),
    }
}
