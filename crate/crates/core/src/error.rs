use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
///
/// Validation failures carry the measured deviation so callers can report
/// which check failed and by how much.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LquError {
    #[error("NotHermitian: max |m - m^dagger| = {deviation:.3e}")]
    NotHermitian { deviation: f64 },

    #[error("NotPSD: minimum eigenvalue {min_eigenvalue:.3e}")]
    NotPsd { min_eigenvalue: f64 },

    #[error("TraceNotOne: trace = {trace:.15}")]
    TraceNotOne { trace: f64 },

    #[error("NotUnitary: max |v^dagger v - I| = {deviation:.3e}")]
    NotUnitary { deviation: f64 },

    #[error("NonFinite: entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("NotTracePreserving: max |sum E^dagger E - I| = {deviation:.3e}")]
    NotTracePreserving { deviation: f64 },

    #[error("DimensionMismatch: {0}")]
    DimensionMismatch(String),

    #[error("WrongDimension: expected subsystem dimension {expected}, found {found}")]
    WrongDimension { expected: usize, found: usize },

    #[error("NoConvergence: eigensolver exceeded {sweeps} sweeps (off-diagonal mass {off_diagonal:.3e})")]
    NoConvergence { sweeps: usize, off_diagonal: f64 },

    #[error("DegenerateDirection: generator component norm {alpha:.3e} (spectrum proportional to identity)")]
    DegenerateDirection { alpha: f64 },

    #[error("DegenerateSpectrum: eigenvalues {first} and {second} coincide within 1e-9")]
    DegenerateSpectrum { first: f64, second: f64 },

    #[error("ParamOutOfRange: {name} = {value} outside {range}")]
    ParamOutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("InvalidConfig: {0}")]
    InvalidConfig(String),

    #[error("Parse: {0}")]
    Parse(String),

    #[error("Io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, LquError>;
