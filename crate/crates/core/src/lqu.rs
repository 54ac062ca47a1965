//! Skew information and the closed-form lower bound of the local quantum
//! uncertainty.
//!
//! For an observable `K = (s⃗·λ⃗ + β𝕀) ⊗ 𝕀` on subsystem A the skew information
//! is the quadratic form
//!
//! ```text
//! I(ρ, K) = 2α²/d₁ − s⃗ᵀ W s⃗,   W_ij = Tr{√ρ(λ_i⊗𝕀)√ρ(λ_j⊗𝕀)} − Σ_k g_ijk L_k
//! ```
//!
//! with `L_k = Tr(ρ λ_k⊗𝕀)`. The `f_ijk` part drops out because it is
//! antisymmetric in `(i, j)`. Minimizing over the sphere `|s⃗| = α` instead of
//! the fixed-spectrum orbit gives `α²(2/d₁ − λ_max(W))`, a lower bound on the
//! LQU.

use std::sync::OnceLock;

use crate::error::{LquError, Result};
use crate::generators::{
    build_generators, spectrum_decompose, structure_constants, GeneratorSet, StructureConstants,
};
use crate::linalg::{
    contract_trace, hermitian_eigendecompose, kron, sqrt_from_eig, sqrt_psd, ComplexMatrix, C64,
    HERMITIAN_TOL, PSD_CLAMP,
};

pub const TRACE_TOL: f64 = 1e-10;
/// Skew information values in `[-SKEW_CLAMP, 0)` are reported as zero.
pub const SKEW_CLAMP: f64 = 1e-10;
const W_SYMMETRY_TOL: f64 = 1e-10;

/// A validated bipartite state on `C^{d₁} ⊗ C^{d₂}`; row `a·d₂ + b` is
/// `|a⟩|b⟩`.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    dim_a: usize,
    dim_b: usize,
    rho: ComplexMatrix,
    sqrt_cache: OnceLock<ComplexMatrix>,
}

impl DensityMatrix {
    /// Checks Hermiticity, unit trace and positivity (each to 1e-10).
    pub fn new(m: ComplexMatrix, dim_a: usize, dim_b: usize) -> Result<Self> {
        if dim_a < 2 {
            return Err(LquError::WrongDimension {
                expected: 2,
                found: dim_a,
            });
        }
        if dim_b < 1 {
            return Err(LquError::WrongDimension {
                expected: 1,
                found: dim_b,
            });
        }
        let n = dim_a * dim_b;
        if m.rows() != n || m.cols() != n {
            return Err(LquError::DimensionMismatch(format!(
                "{}x{} matrix for a {dim_a}x{dim_b} system (expected {n}x{n})",
                m.rows(),
                m.cols()
            )));
        }
        let deviation = m.hermitian_deviation();
        if deviation > HERMITIAN_TOL {
            return Err(LquError::NotHermitian { deviation });
        }
        let rho = m.hermitian_part();
        let trace = rho.trace().re;
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(LquError::TraceNotOne { trace });
        }
        let eig = hermitian_eigendecompose(&rho)?;
        let min = eig.min_eigenvalue();
        if min < -PSD_CLAMP {
            return Err(LquError::NotPsd {
                min_eigenvalue: min,
            });
        }
        let sqrt = sqrt_from_eig(&eig);
        Ok(Self {
            dim_a,
            dim_b,
            rho,
            sqrt_cache: OnceLock::from(sqrt),
        })
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn dim(&self) -> usize {
        self.dim_a * self.dim_b
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.rho
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.rho
    }

    /// `√ρ`, computed at most once.
    pub fn sqrt(&self) -> &ComplexMatrix {
        self.sqrt_cache
            .get_or_init(|| sqrt_psd(&self.rho).expect("validated state is PSD"))
    }

    /// Reduced state `Tr_B ρ`.
    pub fn reduced_a(&self) -> ComplexMatrix {
        let (da, db) = (self.dim_a, self.dim_b);
        let mut out = ComplexMatrix::zeros(da, da);
        for a in 0..da {
            for a2 in 0..da {
                let mut acc = C64::new(0.0, 0.0);
                for b in 0..db {
                    acc += self.rho[(a * db + b, a2 * db + b)];
                }
                out[(a, a2)] = acc;
            }
        }
        out
    }

    /// `U ρ U^†` for a unitary on the full space, re-validated.
    pub fn evolve(&self, u: &ComplexMatrix) -> Result<Self> {
        Self::new(u.conjugate(&self.rho)?, self.dim_a, self.dim_b)
    }
}

/// `I(ρ, K) = Tr(ρK²) − Tr(√ρ K √ρ K)` for a full-space Hermitian `K`.
pub fn skew_information(rho: &DensityMatrix, k: &ComplexMatrix) -> Result<f64> {
    if k.rows() != rho.dim() || k.cols() != rho.dim() {
        return Err(LquError::DimensionMismatch(format!(
            "observable is {}x{}, state is {}x{}",
            k.rows(),
            k.cols(),
            rho.dim(),
            rho.dim()
        )));
    }
    let deviation = k.hermitian_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(LquError::NotHermitian { deviation });
    }
    let s = rho.sqrt();
    let rk = rho.matrix().matmul(k)?;
    let sk = s.matmul(k)?;
    let value = contract_trace(&rk, k)?.re - contract_trace(&sk, &sk)?.re;
    Ok(clamp_skew(value))
}

/// Skew information of the local observable `K_A ⊗ 𝕀_{d₂}`.
pub fn skew_information_local(rho: &DensityMatrix, k_a: &ComplexMatrix) -> Result<f64> {
    if k_a.rows() != rho.dim_a() || k_a.cols() != rho.dim_a() {
        return Err(LquError::DimensionMismatch(format!(
            "local observable is {}x{}, subsystem A has dimension {}",
            k_a.rows(),
            k_a.cols(),
            rho.dim_a()
        )));
    }
    skew_information(rho, &kron(k_a, &ComplexMatrix::identity(rho.dim_b())))
}

fn clamp_skew(value: f64) -> f64 {
    if (-SKEW_CLAMP..0.0).contains(&value) {
        0.0
    } else {
        value
    }
}

fn check_generator_dim(rho: &DensityMatrix, gens: &GeneratorSet) -> Result<()> {
    if gens.dim() != rho.dim_a() {
        return Err(LquError::DimensionMismatch(format!(
            "generators of SU({}) for subsystem A of dimension {}",
            gens.dim(),
            rho.dim_a()
        )));
    }
    Ok(())
}

/// `L_k = Tr(ρ λ_k ⊗ 𝕀)`, evaluated on the reduced state.
pub fn l_vector(rho: &DensityMatrix, gens: &GeneratorSet) -> Result<Vec<f64>> {
    check_generator_dim(rho, gens)?;
    let rho_a = rho.reduced_a();
    gens.iter()
        .map(|g| contract_trace(&rho_a, g).map(|z| z.re))
        .collect()
}

/// `T_ij = Tr{√ρ(λ_i⊗𝕀)√ρ(λ_j⊗𝕀)}`, symmetric and real for Hermitian `λ`.
fn sqrt_correlation(rho: &DensityMatrix, gens: &GeneratorSet) -> Result<Vec<Vec<f64>>> {
    let s = rho.sqrt();
    let id_b = ComplexMatrix::identity(rho.dim_b());
    let halves: Vec<ComplexMatrix> = gens
        .iter()
        .map(|g| s.matmul(&kron(g, &id_b)))
        .collect::<Result<_>>()?;
    let n = gens.len();
    let mut t = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i..n {
            let v = contract_trace(&halves[i], &halves[j])?.re;
            t[i][j] = v;
            t[j][i] = v;
        }
    }
    Ok(t)
}

/// Assembles `W`, the matrix of the bound's quadratic form, and returns it with `L`.
///
/// `W` is symmetrized after checking that the raw matrix is symmetric to 1e-10.
pub fn w_matrix(
    rho: &DensityMatrix,
    gens: &GeneratorSet,
    sc: &StructureConstants,
) -> Result<(Vec<Vec<f64>>, Vec<f64>)> {
    check_generator_dim(rho, gens)?;
    let n = gens.len();
    if sc.g.extent() != n {
        return Err(LquError::DimensionMismatch(format!(
            "structure constants of extent {} for {n} generators",
            sc.g.extent()
        )));
    }
    let l = l_vector(rho, gens)?;
    let gl = sc.g.contract_last(&l);
    let t = sqrt_correlation(rho, gens)?;
    let mut w: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| t[i][j] - gl[i * n + j]).collect())
        .collect();
    let mut asymmetry = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            asymmetry = asymmetry.max((w[i][j] - w[j][i]).abs());
        }
    }
    if asymmetry > W_SYMMETRY_TOL {
        return Err(LquError::NotHermitian {
            deviation: asymmetry,
        });
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let avg = 0.5 * (w[i][j] + w[j][i]);
            w[i][j] = avg;
            w[j][i] = avg;
        }
    }
    Ok((w, l))
}

fn lambda_max(w: &[Vec<f64>]) -> Result<f64> {
    let n = w.len();
    let flat: Vec<f64> = w.iter().flatten().copied().collect();
    let m = ComplexMatrix::from_real(n, n, &flat)?;
    Ok(hermitian_eigendecompose(&m)?.max_eigenvalue())
}

/// Intermediates and value of the closed-form lower bound.
#[derive(Debug, Clone)]
pub struct LowerBoundReport {
    pub w: Vec<Vec<f64>>,
    pub l: Vec<f64>,
    pub lambda_max: f64,
    pub alpha: f64,
    pub beta: f64,
    pub dim_a: usize,
    /// `α²(2/d₁ − λ_max)`, not clamped.
    pub bound: f64,
    /// `max(bound, 0)`.
    pub bound_clamped: f64,
}

impl LowerBoundReport {
    pub fn w_dim(&self) -> usize {
        self.w.len()
    }

    /// `α²(2/d₁ − uᵀWu)` for a unit direction `u`: the skew information of
    /// `α u⃗·λ⃗ ⊗ 𝕀`.
    pub fn quadratic_form(&self, direction: &[f64]) -> f64 {
        let mut q = 0.0;
        for (i, row) in self.w.iter().enumerate() {
            for (j, wij) in row.iter().enumerate() {
                q += direction[i] * wij * direction[j];
            }
        }
        self.alpha.powi(2) * (2.0 / self.dim_a as f64 - q)
    }
}

/// Generators and structure constants for one subsystem dimension, reusable
/// across many states.
#[derive(Debug, Clone)]
pub struct BoundContext {
    pub generators: GeneratorSet,
    pub constants: StructureConstants,
}

impl BoundContext {
    pub fn new(dim_a: usize) -> Result<Self> {
        let generators = build_generators(dim_a)?;
        let constants = structure_constants(&generators);
        Ok(Self {
            generators,
            constants,
        })
    }

    pub fn dim(&self) -> usize {
        self.generators.dim()
    }

    pub fn lower_bound(
        &self,
        rho: &DensityMatrix,
        spectrum: &ComplexMatrix,
    ) -> Result<LowerBoundReport> {
        let dec = spectrum_decompose(spectrum, &self.generators)?;
        let (w, l) = w_matrix(rho, &self.generators, &self.constants)?;
        let lambda_max = lambda_max(&w)?;
        let d1 = rho.dim_a() as f64;
        let bound = dec.alpha.powi(2) * (2.0 / d1 - lambda_max);
        Ok(LowerBoundReport {
            w,
            l,
            lambda_max,
            alpha: dec.alpha,
            beta: dec.beta,
            dim_a: rho.dim_a(),
            bound,
            bound_clamped: bound.max(0.0),
        })
    }
}

/// Closed-form lower bound of the LQU for observables with the given
/// `d₁×d₁` spectrum.
pub fn lower_bound(rho: &DensityMatrix, spectrum: &ComplexMatrix) -> Result<LowerBoundReport> {
    BoundContext::new(rho.dim_a())?.lower_bound(rho, spectrum)
}

/// Exact LQU of a 2×d state for spectrum `σ_z`: `1 − λ_max(W)`, where `W`
/// has no structure-constant correction.
pub fn closed_form_2xd(rho: &DensityMatrix) -> Result<f64> {
    if rho.dim_a() != 2 {
        return Err(LquError::WrongDimension {
            expected: 2,
            found: rho.dim_a(),
        });
    }
    let gens = build_generators(2)?;
    let t = sqrt_correlation(rho, &gens)?;
    Ok(1.0 - lambda_max(&t)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::test_matrices::{random_density, random_matrix};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn maximally_mixed(da: usize, db: usize) -> DensityMatrix {
        let n = da * db;
        DensityMatrix::new(
            ComplexMatrix::identity(n).scale_real(1.0 / n as f64),
            da,
            db,
        )
        .unwrap()
    }

    fn pure(psi: &[C64], da: usize, db: usize) -> DensityMatrix {
        let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let psi: Vec<C64> = psi.iter().map(|z| z / norm).collect();
        DensityMatrix::new(ComplexMatrix::outer(&psi, &psi), da, db).unwrap()
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(
            DensityMatrix::new(ComplexMatrix::identity(4), 2, 2),
            Err(LquError::TraceNotOne { .. })
        ));
        let bad = ComplexMatrix::from_real_diagonal(&[0.6, 0.6, -0.2, 0.0]);
        assert!(matches!(
            DensityMatrix::new(bad, 2, 2),
            Err(LquError::NotPsd { .. })
        ));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(matches!(
            DensityMatrix::new(random_matrix(&mut rng, 4, 4), 2, 2),
            Err(LquError::NotHermitian { .. })
        ));
        assert!(matches!(
            DensityMatrix::new(ComplexMatrix::identity(6).scale_real(1.0 / 6.0), 2, 2),
            Err(LquError::DimensionMismatch(_))
        ));
        assert!(DensityMatrix::new(ComplexMatrix::identity(6).scale_real(1.0 / 6.0), 2, 3).is_ok());
    }

    #[test]
    fn sqrt_cache_squares_to_rho() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let rho = DensityMatrix::new(random_density(&mut rng, 6), 2, 3).unwrap();
        let s = rho.sqrt();
        assert!((s * s).max_abs_diff(rho.matrix()) < 1e-9);
        assert!(std::ptr::eq(s, rho.sqrt()));
    }

    #[test]
    fn skew_vanishes_when_commuting() {
        let rho = DensityMatrix::new(
            ComplexMatrix::from_real_diagonal(&[0.4, 0.3, 0.2, 0.1]),
            2,
            2,
        )
        .unwrap();
        let k = ComplexMatrix::from_real_diagonal(&[1.0, 2.0, -1.0, 0.5]);
        assert!(skew_information(&rho, &k).unwrap().abs() < 1e-15);
    }

    #[test]
    fn skew_vanishes_for_maximally_mixed() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let rho = maximally_mixed(3, 2);
        let k = random_matrix(&mut rng, 6, 6).hermitian_part();
        assert!(skew_information(&rho, &k).unwrap().abs() < 1e-12);
    }

    #[test]
    fn skew_of_pure_state_is_variance() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..10 {
            let psi = random_matrix(&mut rng, 6, 1).column(0);
            let rho = pure(&psi, 3, 2);
            let k = random_matrix(&mut rng, 6, 6).hermitian_part();
            let r = rho.matrix();
            let mean = (r * &k).trace().re;
            let second = (&(r * &k) * &k).trace().re;
            let skew = skew_information(&rho, &k).unwrap();
            assert!((skew - (second - mean * mean)).abs() < 1e-9);
        }
    }

    #[test]
    fn skew_rejects_wrong_dimension() {
        let rho = maximally_mixed(2, 2);
        assert!(matches!(
            skew_information(&rho, &ComplexMatrix::identity(3)),
            Err(LquError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn l_vector_cases() {
        let g2 = build_generators(2).unwrap();
        let l = l_vector(&maximally_mixed(2, 3), &g2).unwrap();
        assert!(l.iter().all(|x| x.abs() < 1e-15));
        // |0⟩⟨0| ⊗ 𝕀/2
        let rho = DensityMatrix::new(
            ComplexMatrix::from_real_diagonal(&[0.5, 0.5, 0.0, 0.0]),
            2,
            2,
        )
        .unwrap();
        let l = l_vector(&rho, &g2).unwrap();
        assert!((l[0] - 1.0).abs() < 1e-15 && l[1].abs() < 1e-15 && l[2].abs() < 1e-15);
        let g3 = build_generators(3).unwrap();
        assert!(l_vector(&rho, &g3).is_err());
    }

    #[test]
    fn l_vector_matches_full_space_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let rho = DensityMatrix::new(random_density(&mut rng, 9), 3, 3).unwrap();
        let g = build_generators(3).unwrap();
        let l = l_vector(&rho, &g).unwrap();
        for (k, gk) in g.iter().enumerate() {
            let full = (rho.matrix() * &kron(gk, &ComplexMatrix::identity(3))).trace();
            assert!((full.re - l[k]).abs() < 1e-12 && full.im.abs() < 1e-12);
        }
    }

    #[test]
    fn w_of_pure_product_state() {
        let rho = DensityMatrix::new(
            ComplexMatrix::from_real_diagonal(&[1.0, 0.0, 0.0, 0.0]),
            2,
            2,
        )
        .unwrap();
        let ctx = BoundContext::new(2).unwrap();
        let (w, _) = w_matrix(&rho, &ctx.generators, &ctx.constants).unwrap();
        assert!((w[0][0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn w_of_maximally_mixed_is_scaled_identity() {
        for (da, db) in [(2, 2), (3, 3), (4, 2)] {
            let ctx = BoundContext::new(da).unwrap();
            let (w, _) =
                w_matrix(&maximally_mixed(da, db), &ctx.generators, &ctx.constants).unwrap();
            for (i, row) in w.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    let expect = if i == j { 2.0 / da as f64 } else { 0.0 };
                    assert!((x - expect).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn qubit_w_has_no_structure_correction() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let rho = DensityMatrix::new(random_density(&mut rng, 6), 2, 3).unwrap();
        let ctx = BoundContext::new(2).unwrap();
        let (w, _) = w_matrix(&rho, &ctx.generators, &ctx.constants).unwrap();
        let t = sqrt_correlation(&rho, &ctx.generators).unwrap();
        assert_eq!(w, t);
    }

    #[test]
    fn report_satisfies_bound_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let rho = DensityMatrix::new(random_density(&mut rng, 8), 4, 2).unwrap();
        let spectrum = ComplexMatrix::from_real_diagonal(&[3.0, 1.0, -1.0, -3.0]);
        let r = lower_bound(&rho, &spectrum).unwrap();
        assert_eq!(r.bound, r.alpha.powi(2) * (2.0 / 4.0 - r.lambda_max));
        assert_eq!(r.w_dim(), 15);
        assert!((r.alpha - 10f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn bound_rejects_identity_spectrum() {
        let rho = maximally_mixed(3, 3);
        assert!(matches!(
            lower_bound(&rho, &ComplexMatrix::identity(3)),
            Err(LquError::DegenerateDirection { .. })
        ));
    }

    #[test]
    fn closed_form_extremes() {
        assert!(closed_form_2xd(&maximally_mixed(2, 2)).unwrap().abs() < 1e-12);
        let s = 1.0 / 2f64.sqrt();
        let bell = pure(
            &[
                C64::new(s, 0.0),
                C64::new(0.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(s, 0.0),
            ],
            2,
            2,
        );
        assert!((closed_form_2xd(&bell).unwrap() - 1.0).abs() < 1e-9);
        assert!(matches!(
            closed_form_2xd(&maximally_mixed(3, 2)),
            Err(LquError::WrongDimension { .. })
        ));
    }
}
