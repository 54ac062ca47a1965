//! Sweep configuration, loadable from a JSON document with the same field
//! names.

use lqu_core::optimizer::DEGENERACY_TOL;
use lqu_core::{hermitian_eigendecompose, ComplexMatrix, GaConfig, StateSpec};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Param {
    P,
    H,
    T,
}

impl Param {
    pub fn name(self) -> &'static str {
        match self {
            Self::P => "p",
            Self::H => "h",
            Self::T => "t",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Bound,
    Optimize,
    Both,
}

impl Mode {
    pub fn optimizes(self) -> bool {
        self != Self::Bound
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OutputFormat {
    #[serde(rename = "csv")]
    Csv,
    #[serde(rename = "csv+svg")]
    CsvSvg,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Range {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl Range {
    pub fn grid(&self) -> Vec<f64> {
        let n = self.steps - 1;
        (0..=n)
            .map(|i| {
                if i == n {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * i as f64 / n as f64
                }
            })
            .collect()
    }
}

/// A named spectrum or explicit diagonal entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpectrumChoice {
    Preset(String),
    Values(Vec<f64>),
}

impl Default for SpectrumChoice {
    fn default() -> Self {
        Self::Preset("default".into())
    }
}

impl SpectrumChoice {
    /// Parses `default` or a comma-separated list such as `1,-1,0`.
    pub fn parse(text: &str) -> CliResult<Self> {
        let text = text.trim();
        if text.chars().next().is_some_and(|c| c.is_ascii_alphabetic()) {
            return Ok(Self::Preset(text.to_string()));
        }
        text.split(',')
            .map(|v| {
                v.trim()
                    .parse::<f64>()
                    .map_err(|_| CliError::Validation(format!("bad spectrum entry '{v}'")))
            })
            .collect::<CliResult<Vec<f64>>>()
            .map(Self::Values)
    }

    pub fn resolve(&self, dim: usize) -> CliResult<ComplexMatrix> {
        let values = match self {
            Self::Preset(name) if name == "default" => default_spectrum(dim),
            Self::Preset(name) => {
                return Err(CliError::Validation(format!(
                    "unknown spectrum preset '{name}'"
                )))
            }
            Self::Values(v) => v.clone(),
        };
        if values.len() != dim {
            return Err(CliError::Validation(format!(
                "spectrum has {} entries, subsystem A has dimension {dim}",
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(CliError::Validation(
                "spectrum entries must be finite".into(),
            ));
        }
        Ok(ComplexMatrix::from_real_diagonal(&values))
    }
}

/// `(1,−1)`, `(1,−1,0)`, `(3,1,−1,−3)`, and an odd-integer ladder beyond.
pub fn default_spectrum(dim: usize) -> Vec<f64> {
    match dim {
        2 => vec![1.0, -1.0],
        3 => vec![1.0, -1.0, 0.0],
        _ => (0..dim)
            .map(|i| (dim - 1) as f64 - 2.0 * i as f64)
            .collect(),
    }
}

/// Rejects spectra with two eigenvalues closer than the optimizer's
/// degeneracy guard.
pub fn check_non_degenerate(spectrum: &ComplexMatrix) -> CliResult<()> {
    let eig = hermitian_eigendecompose(spectrum)?;
    for pair in eig.eigenvalues.windows(2) {
        if pair[1] - pair[0] <= DEGENERACY_TOL {
            return Err(CliError::Validation(format!(
                "DegenerateSpectrum: eigenvalues {} and {} coincide",
                pair[0], pair[1]
            )));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub state: StateSpec,
    pub parameter: Param,
    pub range: Range,
    #[serde(default = "default_mode")]
    pub mode: Mode,
    #[serde(default)]
    pub spectrum: SpectrumChoice,
    #[serde(default)]
    pub ga: GaConfig,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default = "default_format")]
    pub format: OutputFormat,
}

fn default_mode() -> Mode {
    Mode::Both
}

fn default_format() -> OutputFormat {
    OutputFormat::Csv
}

impl SweepConfig {
    pub fn from_file(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
    }

    pub fn validate(&self) -> CliResult<()> {
        let r = &self.range;
        if r.steps < 2 {
            return Err(CliError::Validation(
                "range.steps must be at least 2".into(),
            ));
        }
        if !(r.start.is_finite() && r.stop.is_finite() && r.start < r.stop) {
            return Err(CliError::Validation(
                "range must satisfy start < stop".into(),
            ));
        }
        with_param(&self.state, self.parameter, r.start)?;
        self.ga.validate()?;
        if self.format == OutputFormat::CsvSvg && self.output.is_none() {
            return Err(CliError::Validation(
                "csv+svg output needs an output path".into(),
            ));
        }
        Ok(())
    }
}

/// The state family with its swept parameter set to `value`.
pub fn with_param(spec: &StateSpec, param: Param, value: f64) -> CliResult<StateSpec> {
    let mut spec = spec.clone();
    let slot = match (&mut spec, param) {
        (StateSpec::Werner { p }, Param::P) => p,
        (StateSpec::Horodecki33 { h } | StateSpec::Horodecki42 { h }, Param::H) => h,
        (StateSpec::DephasedBell33 { t, .. }, Param::T) => t,
        (s, p) => {
            return Err(CliError::Validation(format!(
                "state family {} has no parameter {}",
                s.name(),
                p.name()
            )))
        }
    };
    *slot = value;
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_hits_both_ends() {
        let g = Range {
            start: 0.0,
            stop: 1.0,
            steps: 51,
        }
        .grid();
        assert_eq!(g.len(), 51);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[50], 1.0);
        assert!((g[5] - 0.1).abs() < 1e-15);
    }

    #[test]
    fn spectrum_parsing() {
        assert_eq!(
            SpectrumChoice::parse("1,-1,0").unwrap(),
            SpectrumChoice::Values(vec![1.0, -1.0, 0.0])
        );
        assert_eq!(
            SpectrumChoice::parse("default").unwrap(),
            SpectrumChoice::default()
        );
        assert!(SpectrumChoice::parse("1,x").is_err());
        assert!(SpectrumChoice::Values(vec![1.0, 0.0]).resolve(3).is_err());
        assert_eq!(default_spectrum(4), vec![3.0, 1.0, -1.0, -3.0]);
        assert_eq!(default_spectrum(5), vec![4.0, 2.0, 0.0, -2.0, -4.0]);
    }

    #[test]
    fn degenerate_spectrum_is_a_validation_error() {
        let m = SpectrumChoice::Values(vec![1.0, 1.0, 0.0])
            .resolve(3)
            .unwrap();
        let err = check_non_degenerate(&m).unwrap_err();
        assert!(err.to_string().starts_with("DegenerateSpectrum"));
    }

    #[test]
    fn config_json_round_trip() {
        let text = r#"{
            "state": {"family": "dephased_bell33", "rate_a": 0.5, "rate_b": 0.5, "t": 0.0},
            "parameter": "t",
            "range": {"start": 0.0, "stop": 5.0, "steps": 21},
            "spectrum": [1.0, -1.0, 0.0],
            "ga": {"seed": 3},
            "format": "csv"
        }"#;
        let cfg: SweepConfig = serde_json::from_str(text).unwrap();
        assert_eq!(cfg.mode, Mode::Both);
        assert_eq!(cfg.ga.seed, 3);
        cfg.validate().unwrap();
        let back: SweepConfig =
            serde_json::from_str(&serde_json::to_string(&cfg).unwrap()).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn parameter_must_belong_to_family() {
        let spec = StateSpec::Werner { p: 0.0 };
        assert!(with_param(&spec, Param::H, 0.5).is_err());
        assert_eq!(
            with_param(&spec, Param::P, 0.5).unwrap(),
            StateSpec::Werner { p: 0.5 }
        );
    }
}
