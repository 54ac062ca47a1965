//! Subcommand bodies, writing their reports to any `Write`.

use lqu_core::generators::structure_constants;
use lqu_core::{build_generators, lower_bound, optimize_lqu, GaConfig, StateSpec};
use std::io::Write;
use std::path::PathBuf;

use crate::config::{check_non_degenerate, SpectrumChoice};
use crate::error::{CliError, CliResult};
use crate::format::sig12;

/// Residual threshold for `generators` to succeed.
pub const GENERATOR_RESIDUAL_TOL: f64 = 1e-11;

/// State-selection flags shared by several subcommands.
#[derive(Debug, Clone, Default, clap::Args)]
pub struct StateArgs {
    /// werner | horodecki33 | horodecki42 | bell33 | dephased_bell33 | raw
    #[arg(long)]
    pub state: Option<String>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub h: Option<f64>,
    #[arg(long)]
    pub t: Option<f64>,
    #[arg(long = "rate-a")]
    pub rate_a: Option<f64>,
    #[arg(long = "rate-b")]
    pub rate_b: Option<f64>,
    /// State file for `--state raw`.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

impl StateArgs {
    /// Builds the `StateSpec`; `fill` supplies a value for a missing parameter.
    pub fn spec_with_default(&self, fill: Option<f64>) -> CliResult<StateSpec> {
        let family = self
            .state
            .as_deref()
            .ok_or_else(|| CliError::Validation("--state is required".into()))?;
        let need = |v: Option<f64>, flag: &str| {
            v.or(fill)
                .ok_or_else(|| CliError::Validation(format!("--state {family} needs --{flag}")))
        };
        Ok(match family {
            "werner" => StateSpec::Werner {
                p: need(self.p, "p")?,
            },
            "horodecki33" => StateSpec::Horodecki33 {
                h: need(self.h, "h")?,
            },
            "horodecki42" => StateSpec::Horodecki42 {
                h: need(self.h, "h")?,
            },
            "bell33" => StateSpec::Bell33,
            "dephased_bell33" => StateSpec::DephasedBell33 {
                rate_a: self.rate_a.ok_or_else(|| {
                    CliError::Validation("--state dephased_bell33 needs --rate-a".into())
                })?,
                rate_b: self.rate_b.ok_or_else(|| {
                    CliError::Validation("--state dephased_bell33 needs --rate-b".into())
                })?,
                t: need(self.t, "t")?,
            },
            "raw" => StateSpec::Raw {
                path: self
                    .file
                    .clone()
                    .ok_or_else(|| CliError::Validation("--state raw needs --file".into()))?,
            },
            other => {
                return Err(CliError::Validation(format!(
                    "unknown state family '{other}'"
                )))
            }
        })
    }

    pub fn spec(&self) -> CliResult<StateSpec> {
        self.spec_with_default(None)
    }
}

/// Nine decimals, without a sign on values that round to zero.
fn fixed9(x: f64) -> String {
    let s = format!("{x:.9}");
    match s.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_string(),
        _ => s,
    }
}

pub fn cmd_bound(
    out: &mut impl Write,
    spec: &StateSpec,
    spectrum: &SpectrumChoice,
) -> CliResult<()> {
    let rho = spec.build()?;
    let lam = spectrum.resolve(rho.dim_a())?;
    let r = lower_bound(&rho, &lam)?;
    writeln!(out, "state       {}", spec.name())?;
    writeln!(out, "dims        {}x{}", rho.dim_a(), rho.dim_b())?;
    writeln!(out, "bound       {}", fixed9(r.bound))?;
    writeln!(out, "alpha       {}", sig12(r.alpha))?;
    writeln!(out, "beta        {}", sig12(r.beta))?;
    writeln!(out, "lambda_max  {}", sig12(r.lambda_max))?;
    writeln!(out, "W           {}x{}", r.w_dim(), r.w_dim())?;
    Ok(())
}

pub fn cmd_optimize(
    out: &mut impl Write,
    spec: &StateSpec,
    spectrum: &SpectrumChoice,
    ga: &GaConfig,
) -> CliResult<()> {
    let rho = spec.build()?;
    let lam = spectrum.resolve(rho.dim_a())?;
    check_non_degenerate(&lam)?;
    let bound = lower_bound(&rho, &lam)?.bound;
    let res = optimize_lqu(&rho, &lam, ga).map_err(|e| CliError::Optimizer(e.to_string()))?;
    if res.value < bound - crate::sweep::SOUNDNESS_TOL {
        return Err(CliError::Soundness(format!(
            "optimized {} below bound {bound}",
            res.value
        )));
    }
    writeln!(out, "state        {}", spec.name())?;
    writeln!(out, "optimized    {}", fixed9(res.value))?;
    writeln!(out, "bound        {}", fixed9(bound))?;
    writeln!(out, "generations  {}", res.history.len().saturating_sub(1))?;
    writeln!(out, "evaluations  {}", res.evaluations)?;
    writeln!(out, "theta        {:?}", res.best_params.as_slice())?;
    writeln!(out, "observable\n{}", res.observable)?;
    Ok(())
}

/// Prints the generators and residuals; `Ok(false)` when a residual is too
/// large.
pub fn cmd_generators(out: &mut impl Write, dim: usize) -> CliResult<bool> {
    if !(2..=8).contains(&dim) {
        return Err(CliError::Validation(format!(
            "--dim must be in 2..=8, got {dim}"
        )));
    }
    let gens = build_generators(dim)?;
    for (k, g) in gens.iter().enumerate() {
        writeln!(out, "lambda_{}\n{}", k + 1, g)?;
    }
    let ortho = gens.orthonormality_residual();
    let recon = structure_constants(&gens).reconstruction_residual(&gens);
    writeln!(out, "generators                {}", gens.len())?;
    writeln!(out, "orthonormality_residual   {ortho:e}")?;
    writeln!(out, "reconstruction_residual   {recon:e}")?;
    Ok(ortho < GENERATOR_RESIDUAL_TOL && recon < GENERATOR_RESIDUAL_TOL)
}
