//! Built-in sweeps for the four benchmark figures.

use lqu_core::{GaConfig, StateSpec};
use std::path::{Path, PathBuf};

use crate::config::{Mode, OutputFormat, Param, Range, SpectrumChoice, SweepConfig};

/// Rate pairs `(rate_a, rate_b)` of the dephasing figure.
pub const DEPHASING_RATES: [(f64, f64); 2] = [(0.5, 0.5), (2.0, 1.0)];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
}

impl Figure {
    pub fn name(self) -> &'static str {
        match self {
            Self::Fig1 => "fig1",
            Self::Fig2 => "fig2",
            Self::Fig3 => "fig3",
            Self::Fig4 => "fig4",
        }
    }
}

/// A preset sweep with its plot title.
#[derive(Debug, Clone)]
pub struct PresetRun {
    pub config: SweepConfig,
    pub title: String,
}

fn unit_range() -> Range {
    Range {
        start: 0.0,
        stop: 1.0,
        steps: 51,
    }
}

fn base(state: StateSpec, parameter: Param, range: Range, spectrum: Vec<f64>) -> SweepConfig {
    SweepConfig {
        state,
        parameter,
        range,
        mode: Mode::Both,
        spectrum: SpectrumChoice::Values(spectrum),
        ga: GaConfig::default(),
        output: None,
        format: OutputFormat::Csv,
    }
}

/// Sweeps for `figure`. `rates` replaces the two default dephasing rate pairs
/// with a single one. Output files are `out` itself, or `out` with a
/// `-rA-B` suffix per rate pair when the figure has several.
pub fn preset(
    figure: Figure,
    ga: &GaConfig,
    out: Option<&Path>,
    rates: Option<(f64, f64)>,
) -> Vec<PresetRun> {
    let qutrit = vec![1.0, -1.0, 0.0];
    let mut runs = match figure {
        Figure::Fig1 => vec![PresetRun {
            config: base(StateSpec::Werner { p: 0.0 }, Param::P, unit_range(), qutrit),
            title: "Werner state".into(),
        }],
        Figure::Fig2 => vec![PresetRun {
            config: base(
                StateSpec::Horodecki33 { h: 0.0 },
                Param::H,
                unit_range(),
                qutrit,
            ),
            title: "Horodecki 3x3 PPT state".into(),
        }],
        Figure::Fig3 => {
            let pairs: Vec<(f64, f64)> = match rates {
                Some(r) => vec![r],
                None => DEPHASING_RATES.to_vec(),
            };
            pairs
                .into_iter()
                .map(|(rate_a, rate_b)| PresetRun {
                    config: base(
                        StateSpec::DephasedBell33 {
                            rate_a,
                            rate_b,
                            t: 0.0,
                        },
                        Param::T,
                        Range {
                            start: 0.0,
                            stop: 5.0,
                            steps: 21,
                        },
                        qutrit.clone(),
                    ),
                    title: format!("Dephased Bell state, rates {rate_a} and {rate_b}"),
                })
                .collect()
        }
        Figure::Fig4 => vec![PresetRun {
            config: base(
                StateSpec::Horodecki42 { h: 0.0 },
                Param::H,
                unit_range(),
                vec![3.0, 1.0, -1.0, -3.0],
            ),
            title: "Horodecki 4x2 PPT state".into(),
        }],
    };
    let default_out = PathBuf::from(format!("{}.csv", figure.name()));
    let out = out.map(Path::to_path_buf).unwrap_or(default_out);
    let several = runs.len() > 1;
    for run in &mut runs {
        run.config.ga = ga.clone();
        run.config.output = Some(if several {
            let StateSpec::DephasedBell33 { rate_a, rate_b, .. } = run.config.state else {
                unreachable!()
            };
            suffixed(&out, &format!("-r{rate_a}-{rate_b}"))
        } else {
            out.clone()
        });
    }
    runs
}

fn suffixed(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("out");
    let name = match path.extension().and_then(|e| e.to_str()) {
        Some(ext) => format!("{stem}{suffix}.{ext}"),
        None => format!("{stem}{suffix}"),
    };
    path.with_file_name(name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dephasing_figure_has_two_files() {
        let runs = preset(
            Figure::Fig3,
            &GaConfig::default(),
            Some(Path::new("out/f3.csv")),
            None,
        );
        let names: Vec<_> = runs
            .iter()
            .map(|r| r.config.output.clone().unwrap())
            .collect();
        assert_eq!(
            names,
            vec![
                PathBuf::from("out/f3-r0.5-0.5.csv"),
                PathBuf::from("out/f3-r2-1.csv")
            ]
        );
        let one = preset(Figure::Fig3, &GaConfig::default(), None, Some((1.0, 1.0)));
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].config.output, Some(PathBuf::from("fig3.csv")));
    }

    #[test]
    fn presets_validate() {
        for f in [Figure::Fig1, Figure::Fig2, Figure::Fig3, Figure::Fig4] {
            for run in preset(f, &GaConfig::default(), None, None) {
                run.config.validate().unwrap();
            }
        }
    }
}
