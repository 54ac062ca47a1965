use clap::{Args, Parser, Subcommand};
use lqu_cli::commands::{cmd_bound, cmd_generators, cmd_optimize, StateArgs};
use lqu_cli::config::OutputFormat;
use lqu_cli::{
    preset, run_and_write, CliError, CliResult, Figure, Mode, Param, SpectrumChoice, SweepConfig,
};
use lqu_core::GaConfig;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "lqu",
    version,
    about = "Local quantum uncertainty: lower bounds, optimization and sweeps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form lower bound for one state.
    Bound {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long)]
        spectrum: Option<String>,
    },
    /// Optimized LQU for one state.
    Optimize {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long)]
        spectrum: Option<String>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Sweep one state parameter over a grid.
    Sweep {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long)]
        spectrum: Option<String>,
        /// Swept parameter.
        #[arg(long, value_enum)]
        param: Option<Param>,
        #[arg(long)]
        start: Option<f64>,
        #[arg(long)]
        stop: Option<f64>,
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Dump the su(d) generators and check their algebra.
    Generators {
        #[arg(long)]
        dim: usize,
    },
    /// Werner state, p in [0, 1].
    Fig1(FigArgs),
    /// Horodecki 3x3 PPT state, h in [0, 1].
    Fig2(FigArgs),
    /// Dephased Bell state, t in [0, 5], for two rate pairs unless given.
    Fig3 {
        #[command(flatten)]
        fig: FigArgs,
        #[arg(long = "rate-a", requires = "rate_b")]
        rate_a: Option<f64>,
        #[arg(long = "rate-b", requires = "rate_a")]
        rate_b: Option<f64>,
    },
    /// Horodecki 4x2 PPT state, h in [0, 1].
    Fig4(FigArgs),
}

#[derive(Args, Clone)]
struct RunArgs {
    #[arg(long)]
    seed: Option<u64>,
    /// JSON sweep configuration; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// CSV output path (standard output when absent).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write an SVG plot here.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Fill the wall_time_ms column. Makes output run-dependent.
    #[arg(long)]
    timing: bool,
}

#[derive(Args, Clone)]
struct FigArgs {
    #[arg(long)]
    seed: Option<u64>,
    /// JSON file whose `ga` section overrides the optimizer settings.
    #[arg(long)]
    config: Option<PathBuf>,
    /// CSV output path (default `figN.csv`).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write an SVG plot next to each CSV.
    #[arg(long)]
    svg: bool,
    #[arg(long)]
    timing: bool,
}

fn ga_from(config: Option<&PathBuf>, seed: Option<u64>) -> CliResult<GaConfig> {
    let mut ga = match config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
            let doc: serde_json::Value = serde_json::from_str(&text)
                .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
            match doc.get("ga") {
                Some(v) => serde_json::from_value(v.clone())
                    .map_err(|e| CliError::Validation(format!("{}: ga: {e}", path.display())))?,
                None => GaConfig::default(),
            }
        }
        None => GaConfig::default(),
    };
    if let Some(seed) = seed {
        ga.seed = seed;
    }
    Ok(ga)
}

fn spectrum_choice(flag: Option<&str>) -> CliResult<SpectrumChoice> {
    flag.map(SpectrumChoice::parse)
        .unwrap_or_else(|| Ok(SpectrumChoice::default()))
}

#[allow(clippy::too_many_arguments)]
fn sweep_config(
    state: &StateArgs,
    spectrum: Option<&str>,
    param: Option<Param>,
    start: Option<f64>,
    stop: Option<f64>,
    steps: Option<usize>,
    mode: Option<Mode>,
    run: &RunArgs,
) -> CliResult<SweepConfig> {
    let mut cfg = match &run.config {
        Some(path) => SweepConfig::from_file(path)?,
        None => {
            let missing =
                |flag: &str| CliError::Validation(format!("sweep needs --{flag} or --config"));
            let start = start.ok_or_else(|| missing("start"))?;
            SweepConfig {
                state: state.spec_with_default(Some(start))?,
                parameter: param.ok_or_else(|| missing("param"))?,
                range: lqu_cli::Range {
                    start,
                    stop: stop.ok_or_else(|| missing("stop"))?,
                    steps: steps.ok_or_else(|| missing("steps"))?,
                },
                mode: Mode::Both,
                spectrum: SpectrumChoice::default(),
                ga: GaConfig::default(),
                output: None,
                format: OutputFormat::Csv,
            }
        }
    };
    if run.config.is_some() && state.state.is_some() {
        cfg.state = state.spec_with_default(Some(start.unwrap_or(cfg.range.start)))?;
    }
    if let Some(p) = param {
        cfg.parameter = p;
    }
    if let Some(x) = start {
        cfg.range.start = x;
    }
    if let Some(x) = stop {
        cfg.range.stop = x;
    }
    if let Some(x) = steps {
        cfg.range.steps = x;
    }
    if let Some(m) = mode {
        cfg.mode = m;
    }
    if let Some(s) = spectrum {
        cfg.spectrum = SpectrumChoice::parse(s)?;
    }
    if let Some(seed) = run.seed {
        cfg.ga.seed = seed;
    }
    if let Some(out) = &run.out {
        cfg.output = Some(out.clone());
    }
    Ok(cfg)
}

fn run_figure(figure: Figure, args: &FigArgs, rates: Option<(f64, f64)>) -> CliResult<()> {
    let ga = ga_from(args.config.as_ref(), args.seed)?;
    for run in preset(figure, &ga, args.out.as_deref(), rates) {
        let svg = args
            .svg
            .then(|| run.config.output.as_ref().map(|p| p.with_extension("svg")))
            .flatten();
        run_and_write(&run.config, svg.as_deref(), &run.title, args.timing)?;
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<bool> {
    let mut stdout = std::io::stdout().lock();
    match cli.command {
        Command::Bound { state, spectrum } => {
            cmd_bound(
                &mut stdout,
                &state.spec()?,
                &spectrum_choice(spectrum.as_deref())?,
            )?;
        }
        Command::Optimize {
            state,
            spectrum,
            run,
        } => {
            let ga = ga_from(run.config.as_ref(), run.seed)?;
            cmd_optimize(
                &mut stdout,
                &state.spec()?,
                &spectrum_choice(spectrum.as_deref())?,
                &ga,
            )?;
        }
        Command::Sweep {
            state,
            spectrum,
            param,
            start,
            stop,
            steps,
            mode,
            run,
        } => {
            let cfg = sweep_config(
                &state,
                spectrum.as_deref(),
                param,
                start,
                stop,
                steps,
                mode,
                &run,
            )?;
            drop(stdout);
            let title = format!("{} sweep over {}", cfg.state.name(), cfg.parameter.name());
            run_and_write(&cfg, run.svg.as_deref(), &title, run.timing)?;
        }
        Command::Generators { dim } => return cmd_generators(&mut stdout, dim),
        Command::Fig1(args) => run_figure(Figure::Fig1, &args, None)?,
        Command::Fig2(args) => run_figure(Figure::Fig2, &args, None)?,
        Command::Fig3 {
            fig,
            rate_a,
            rate_b,
        } => run_figure(Figure::Fig3, &fig, rate_a.zip(rate_b))?,
        Command::Fig4(args) => run_figure(Figure::Fig4, &args, None)?,
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("residual check failed");
            ExitCode::FAILURE
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
