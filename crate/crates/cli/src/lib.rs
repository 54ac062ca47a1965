//! Library side of the `lqu` command: configuration, sweeps, presets and
//! output writers.

pub mod commands;
pub mod config;
pub mod error;
pub mod format;
pub mod presets;
pub mod svg;
pub mod sweep;

pub use config::{Mode, Param, Range, SpectrumChoice, SweepConfig};
pub use error::{CliError, CliResult};
pub use presets::{preset, Figure, PresetRun};
pub use sweep::{run_and_write, run_sweep, write_csv, SweepOutcome, SweepRow};
