//! Benchmark states, dephasing channels and the raw density-matrix file
//! format.
//!
//! Raw files are UTF-8 text: a header line `d1 d2`, then `(d1·d2)²` lines of
//! `re im` in row-major order.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{LquError, Result};
use crate::linalg::{kron, ComplexMatrix, C64};
use crate::lqu::DensityMatrix;

const COMPLETENESS_TOL: f64 = 1e-10;

fn unit_interval(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(LquError::ParamOutOfRange {
            name,
            value,
            range: "[0, 1]",
        })
    }
}

fn non_negative(name: &'static str, value: f64) -> Result<()> {
    if value >= 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(LquError::ParamOutOfRange {
            name,
            value,
            range: "[0, inf)",
        })
    }
}

/// Wraps a matrix as a density matrix after the Hermitian, trace and PSD
/// checks.
pub fn validate_density(m: ComplexMatrix, dim_a: usize, dim_b: usize) -> Result<DensityMatrix> {
    DensityMatrix::new(m, dim_a, dim_b)
}

fn max_entangled_projector() -> ComplexMatrix {
    let amp = C64::new(1.0 / 3f64.sqrt(), 0.0);
    let zero = C64::new(0.0, 0.0);
    let mut psi = vec![zero; 9];
    for i in 0..3 {
        psi[i * 3 + i] = amp;
    }
    ComplexMatrix::outer(&psi, &psi)
}

/// Qutrit isotropic ("Werner") state `p|ψ⟩⟨ψ| + (1−p)/9 𝕀`, `|ψ⟩ = Σ|ii⟩/√3`.
pub fn werner(p: f64) -> Result<DensityMatrix> {
    unit_interval("p", p)?;
    let mixed = ComplexMatrix::identity(9).scale_real((1.0 - p) / 9.0);
    let m = &max_entangled_projector().scale_real(p) + &mixed;
    DensityMatrix::new(m, 3, 3)
}

/// Normalized qutrit Bell state `(|00⟩+|11⟩+|22⟩)(⟨00|+⟨11|+⟨22|)/3`.
pub fn bell33() -> DensityMatrix {
    DensityMatrix::new(max_entangled_projector(), 3, 3).expect("Bell state is valid")
}

/// Horodecki 3×3 PPT entangled family.
pub fn horodecki33(h: f64) -> Result<DensityMatrix> {
    unit_interval("h", h)?;
    let mut m = [[0.0f64; 9]; 9];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = h;
    }
    for a in [0, 4, 8] {
        for b in [0, 4, 8] {
            m[a][b] = h;
        }
    }
    let c = (1.0 + h) / 2.0;
    let s = (1.0 - h * h).sqrt() / 2.0;
    m[6][6] = c;
    m[8][8] = c;
    m[6][8] = s;
    m[8][6] = s;
    let norm = 1.0 / (8.0 * h + 1.0);
    let flat: Vec<f64> = m.iter().flatten().map(|x| x * norm).collect();
    DensityMatrix::new(ComplexMatrix::from_real(9, 9, &flat)?, 3, 3)
}

/// Horodecki PPT entangled family on a 4×2 system, row index `2a + b`.
pub fn horodecki42(h: f64) -> Result<DensityMatrix> {
    unit_interval("h", h)?;
    let mut m = [[0.0f64; 8]; 8];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = h;
    }
    for (a, b) in [(0, 5), (1, 6), (2, 7)] {
        m[a][b] = h;
        m[b][a] = h;
    }
    let c = (1.0 + h) / 2.0;
    let s = (1.0 - h * h).sqrt() / 2.0;
    m[4][4] = c;
    m[7][7] = c;
    m[4][7] = s;
    m[7][4] = s;
    let norm = 1.0 / (7.0 * h + 1.0);
    let flat: Vec<f64> = m.iter().flatten().map(|x| x * norm).collect();
    DensityMatrix::new(ComplexMatrix::from_real(8, 8, &flat)?, 4, 2)
}

/// Single-subsystem Kraus channel.
#[derive(Debug, Clone)]
pub struct Channel {
    dim: usize,
    kraus: Vec<ComplexMatrix>,
}

impl Channel {
    /// Checks shapes and `Σ E_i^† E_i = 𝕀` to 1e-10.
    pub fn new(dim: usize, kraus: Vec<ComplexMatrix>) -> Result<Self> {
        if kraus.is_empty() {
            return Err(LquError::DimensionMismatch(
                "a channel needs at least one Kraus operator".into(),
            ));
        }
        let mut sum = ComplexMatrix::zeros(dim, dim);
        for e in &kraus {
            if e.rows() != dim || e.cols() != dim {
                return Err(LquError::DimensionMismatch(format!(
                    "{}x{} Kraus operator for a {dim}-dimensional channel",
                    e.rows(),
                    e.cols()
                )));
            }
            sum = &sum + &(&e.dagger() * e);
        }
        let deviation = sum.max_abs_diff(&ComplexMatrix::identity(dim));
        if deviation > COMPLETENESS_TOL {
            return Err(LquError::NotTracePreserving { deviation });
        }
        Ok(Self { dim, kraus })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            kraus: vec![ComplexMatrix::identity(dim)],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    /// Max-abs residual of `Σ E_i^† E_i − 𝕀`.
    pub fn completeness_residual(&self) -> f64 {
        let mut sum = ComplexMatrix::zeros(self.dim, self.dim);
        for e in &self.kraus {
            sum = &sum + &(&e.dagger() * e);
        }
        sum.max_abs_diff(&ComplexMatrix::identity(self.dim))
    }
}

/// Qutrit dephasing channel of strength `γ ∈ [0, 1]`.
pub fn dephasing_channel(gamma: f64) -> Result<Channel> {
    unit_interval("gamma", gamma)?;
    let keep = (1.0 - gamma).sqrt();
    let hit = gamma.sqrt();
    Channel::new(
        3,
        vec![
            ComplexMatrix::from_real_diagonal(&[1.0, keep, keep]),
            ComplexMatrix::from_real_diagonal(&[0.0, hit, 0.0]),
            ComplexMatrix::from_real_diagonal(&[0.0, 0.0, hit]),
        ],
    )
}

/// `ρ' = Σ_ij (E_i ⊗ F_j) ρ (E_i ⊗ F_j)^†`.
pub fn apply_channels(
    rho: &DensityMatrix,
    chan_a: &Channel,
    chan_b: &Channel,
) -> Result<DensityMatrix> {
    if chan_a.dim() != rho.dim_a() || chan_b.dim() != rho.dim_b() {
        return Err(LquError::DimensionMismatch(format!(
            "channels act on {}x{}, state is {}x{}",
            chan_a.dim(),
            chan_b.dim(),
            rho.dim_a(),
            rho.dim_b()
        )));
    }
    let n = rho.dim();
    let mut out = ComplexMatrix::zeros(n, n);
    for e in chan_a.kraus() {
        for f in chan_b.kraus() {
            out = &out + &kron(e, f).conjugate(rho.matrix())?;
        }
    }
    DensityMatrix::new(out, rho.dim_a(), rho.dim_b())
}

/// Dephasing strength `1 − e^{−rate·t}` reached after time `t`.
pub fn dephasing_strength(rate: f64, t: f64) -> f64 {
    -(-rate * t).exp_m1()
}

/// The qutrit Bell state after local dephasing with strengths
/// `γ_A = 1 − e^{−rate_a·t}` and `γ_B = 1 − e^{−rate_b·t}`.
pub fn dephased_bell33(rate_a: f64, rate_b: f64, t: f64) -> Result<DensityMatrix> {
    non_negative("rate_a", rate_a)?;
    non_negative("rate_b", rate_b)?;
    non_negative("t", t)?;
    let chan_a = dephasing_channel(dephasing_strength(rate_a, t))?;
    let chan_b = dephasing_channel(dephasing_strength(rate_b, t))?;
    apply_channels(&bell33(), &chan_a, &chan_b)
}

/// Parses the raw text format.
pub fn parse_density_text(text: &str) -> Result<DensityMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines
        .next()
        .ok_or_else(|| LquError::Parse("empty state file".into()))?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| LquError::Parse(format!("header `{header}`: {e}")))?;
    let [dim_a, dim_b] = dims[..] else {
        return Err(LquError::Parse(format!(
            "header must be `d1 d2`, found `{header}`"
        )));
    };
    let n = dim_a * dim_b;
    let mut data = Vec::with_capacity(n * n);
    for (lineno, line) in lines {
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(LquError::Parse(format!(
                "line {}: expected `re im`, found `{line}`",
                lineno + 1
            )));
        }
        let parse = |t: &str| {
            t.parse::<f64>()
                .map_err(|e| LquError::Parse(format!("line {}: `{t}`: {e}", lineno + 1)))
        };
        data.push(C64::new(parse(parts[0])?, parse(parts[1])?));
    }
    if data.len() != n * n {
        return Err(LquError::Parse(format!(
            "{} entries for a {dim_a}x{dim_b} state, expected {}",
            data.len(),
            n * n
        )));
    }
    validate_density(ComplexMatrix::from_row_major(n, n, data)?, dim_a, dim_b)
}

/// Serializes a state in the raw text format; parsing the output reproduces
/// the entries bit for bit.
pub fn format_density_text(rho: &DensityMatrix) -> String {
    let mut out = format!("{} {}\n", rho.dim_a(), rho.dim_b());
    for z in rho.matrix().as_slice() {
        writeln!(out, "{:e} {:e}", z.re, z.im).unwrap();
    }
    out
}

pub fn read_density_file(path: &Path) -> Result<DensityMatrix> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| LquError::Io(format!("{}: {e}", path.display())))?;
    parse_density_text(&text)
}

pub fn write_density_file(path: &Path, rho: &DensityMatrix) -> Result<()> {
    std::fs::write(path, format_density_text(rho))
        .map_err(|e| LquError::Io(format!("{}: {e}", path.display())))
}

/// A named state family with its parameters, or a raw file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum StateSpec {
    Werner { p: f64 },
    Horodecki33 { h: f64 },
    Horodecki42 { h: f64 },
    Bell33,
    DephasedBell33 { rate_a: f64, rate_b: f64, t: f64 },
    Raw { path: PathBuf },
}

impl StateSpec {
    pub fn build(&self) -> Result<DensityMatrix> {
        match self {
            Self::Werner { p } => werner(*p),
            Self::Horodecki33 { h } => horodecki33(*h),
            Self::Horodecki42 { h } => horodecki42(*h),
            Self::Bell33 => Ok(bell33()),
            Self::DephasedBell33 { rate_a, rate_b, t } => dephased_bell33(*rate_a, *rate_b, *t),
            Self::Raw { path } => read_density_file(path),
        }
    }

    /// Subsystem-A dimension the family produces, if known without building.
    pub fn dim_a(&self) -> Option<usize> {
        match self {
            Self::Horodecki42 { .. } => Some(4),
            Self::Raw { .. } => None,
            _ => Some(3),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Werner { .. } => "werner",
            Self::Horodecki33 { .. } => "horodecki33",
            Self::Horodecki42 { .. } => "horodecki42",
            Self::Bell33 => "bell33",
            Self::DephasedBell33 { .. } => "dephased_bell33",
            Self::Raw { .. } => "raw",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::hermitian_eigendecompose;

    #[test]
    fn werner_endpoints() {
        let w0 = werner(0.0).unwrap();
        assert!(
            w0.matrix()
                .max_abs_diff(&ComplexMatrix::identity(9).scale_real(1.0 / 9.0))
                < 1e-16
        );
        let w1 = werner(1.0).unwrap();
        assert!((w1.matrix() * w1.matrix()).max_abs_diff(w1.matrix()) < 1e-15);
        assert!(w1.matrix().max_abs_diff(bell33().matrix()) <= 1e-15);
        assert!(werner(1.1).is_err());
        assert!(werner(-0.1).is_err());
    }

    #[test]
    fn horodecki33_shape() {
        let r = horodecki33(1.0).unwrap();
        assert_eq!(r.matrix()[(6, 8)], C64::new(0.0, 0.0));
        assert!((r.matrix()[(0, 0)].re - 1.0 / 9.0).abs() < 1e-16);
        assert!((r.matrix()[(6, 6)].re - 1.0 / 9.0).abs() < 1e-16);
        for h in [0.0, 0.1, 0.5, 0.9] {
            let r = horodecki33(h).unwrap();
            assert!((r.matrix().trace().re - 1.0).abs() < 1e-12);
        }
        assert!(horodecki33(2.0).is_err());
    }

    #[test]
    fn horodecki42_shape() {
        let r = horodecki42(1.0).unwrap();
        assert_eq!((r.dim_a(), r.dim_b()), (4, 2));
        assert_eq!(r.matrix()[(4, 7)], C64::new(0.0, 0.0));
        for h in [0.0, 0.2, 0.7, 1.0] {
            let r = horodecki42(h).unwrap();
            assert!((r.matrix().trace().re - 1.0).abs() < 1e-12);
            assert_eq!(r.matrix().hermitian_deviation(), 0.0);
        }
        let zero = horodecki42(0.0).unwrap();
        let eig = hermitian_eigendecompose(zero.matrix()).unwrap();
        let rank = eig.eigenvalues.iter().filter(|&&w| w > 1e-12).count();
        assert_eq!(rank, 1);
    }

    #[test]
    fn bell_is_rank_one() {
        let b = bell33();
        let eig = hermitian_eigendecompose(b.matrix()).unwrap();
        assert!((eig.max_eigenvalue() - 1.0).abs() < 1e-14);
        assert!(eig.eigenvalues[..8].iter().all(|w| w.abs() < 1e-14));
    }

    #[test]
    fn dephasing_completeness_is_exact() {
        for g in [0.0, 0.25, 0.5, 0.9, 1.0] {
            let ch = dephasing_channel(g).unwrap();
            assert!(ch.completeness_residual() < 1e-15);
        }
        assert!(dephasing_channel(2.0).is_err());
    }

    #[test]
    fn channel_rejects_incomplete_kraus_set() {
        let e = ComplexMatrix::from_real_diagonal(&[1.0, 0.5]);
        assert!(matches!(
            Channel::new(2, vec![e]),
            Err(LquError::NotTracePreserving { .. })
        ));
    }

    #[test]
    fn identity_channel_is_noop() {
        let r = horodecki33(0.4).unwrap();
        let out = apply_channels(&r, &Channel::identity(3), &Channel::identity(3)).unwrap();
        assert!(out.matrix().max_abs_diff(r.matrix()) < 1e-15);
    }

    #[test]
    fn channels_on_different_factors_commute() {
        let r = horodecki33(0.3).unwrap();
        let a = dephasing_channel(0.4).unwrap();
        let b = dephasing_channel(0.7).unwrap();
        let id = Channel::identity(3);
        let ab = apply_channels(&apply_channels(&r, &a, &id).unwrap(), &id, &b).unwrap();
        let ba = apply_channels(&apply_channels(&r, &id, &b).unwrap(), &a, &id).unwrap();
        assert!(ab.matrix().max_abs_diff(ba.matrix()) < 1e-12);
    }

    #[test]
    fn full_dephasing_kills_coherence_to_level_zero() {
        let id = Channel::identity(3);
        let out = apply_channels(&bell33(), &dephasing_channel(1.0).unwrap(), &id).unwrap();
        let rho_a = out.reduced_a();
        let full = out.matrix();
        for b in 0..3 {
            for b2 in 0..3 {
                for a2 in 1..3 {
                    assert_eq!(full[(b, a2 * 3 + b2)], C64::new(0.0, 0.0));
                }
            }
        }
        assert!(rho_a[(0, 1)].norm() == 0.0 && rho_a[(0, 2)].norm() == 0.0);
    }

    #[test]
    fn apply_channels_checks_dims() {
        let r = horodecki42(0.5).unwrap();
        let ch = dephasing_channel(0.5).unwrap();
        assert!(matches!(
            apply_channels(&r, &ch, &ch),
            Err(LquError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn dephased_bell_limits() {
        let start = dephased_bell33(0.5, 0.5, 0.0).unwrap();
        assert_eq!(start.matrix(), bell33().matrix());
        assert_eq!(dephasing_strength(1.0, 0.0), 0.0);
        assert!((dephasing_strength(2.0, 40.0) - 1.0).abs() < 1e-15);
        assert!(dephased_bell33(-1.0, 0.5, 1.0).is_err());
    }

    #[test]
    fn validate_cases() {
        assert!(validate_density(ComplexMatrix::identity(6).scale_real(1.0 / 6.0), 2, 3).is_ok());
        assert!(matches!(
            validate_density(
                ComplexMatrix::from_real_diagonal(&[0.6, 0.6, -0.2, 0.0]),
                2,
                2
            ),
            Err(LquError::NotPsd { .. })
        ));
    }

    #[test]
    fn text_round_trip_is_exact() {
        let r = horodecki33(0.5).unwrap();
        let back = parse_density_text(&format_density_text(&r)).unwrap();
        assert_eq!(back.matrix(), r.matrix());
        assert_eq!((back.dim_a(), back.dim_b()), (3, 3));
    }

    #[test]
    fn text_parse_errors() {
        assert!(matches!(parse_density_text(""), Err(LquError::Parse(_))));
        assert!(matches!(parse_density_text("2\n"), Err(LquError::Parse(_))));
        assert!(matches!(
            parse_density_text("1 2\n1 0\n0 0\n"),
            Err(LquError::Parse(_))
        ));
        assert!(matches!(
            parse_density_text("2 1\n0.5 0\n0 0\nx 0\n0.5 0\n"),
            Err(LquError::Parse(_))
        ));
    }

    #[test]
    fn state_spec_json() {
        let spec: StateSpec = serde_json::from_str(
            r#"{"family":"dephased_bell33","rate_a":2.0,"rate_b":1.0,"t":0.5}"#,
        )
        .unwrap();
        assert_eq!(
            spec,
            StateSpec::DephasedBell33 {
                rate_a: 2.0,
                rate_b: 1.0,
                t: 0.5
            }
        );
        assert_eq!(spec.build().unwrap().dim(), 9);
        assert_eq!(StateSpec::Horodecki42 { h: 0.3 }.dim_a(), Some(4));
    }
}
