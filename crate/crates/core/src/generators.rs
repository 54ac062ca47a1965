//! Generalized Gell-Mann basis of `su(d)`, its structure constants, and the
//! expansion of observables over the basis.
//!
//! Ordering of the `d² − 1` generators (0-based index `j`):
//!
//! * `0 ≤ j < d−1`: diagonal `√(2/((j+1)(j+2))) (Σ_{k≤j} |k⟩⟨k| − (j+1)|j+1⟩⟨j+1|)`
//! * next `d(d−1)/2`: symmetric `|k⟩⟨m| + |m⟩⟨k|`, pairs `k < m` in lexicographic order
//! * last `d(d−1)/2`: antisymmetric `i(|k⟩⟨m| − |m⟩⟨k|)`, same pair order
//!
//! Every generator is traceless and Hermitian with `Tr(λ_i λ_j) = 2δ_ij`.

use crate::error::{LquError, Result};
use crate::linalg::{contract_trace, ComplexMatrix, C64};

/// Structure-constant entries with magnitude below this are stored as zero.
pub const STRUCTURE_ZERO: f64 = 1e-12;
/// Generator-component norm below which a spectrum has no usable direction.
pub const DIRECTION_TOL: f64 = 1e-12;
const INVARIANCE_TOL: f64 = 1e-10;

/// The `d² − 1` generators of `SU(d)`.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    dim: usize,
    generators: Vec<ComplexMatrix>,
}

impl GeneratorSet {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of generators, `d² − 1`.
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn get(&self, k: usize) -> &ComplexMatrix {
        &self.generators[k]
    }

    pub fn iter(&self) -> impl Iterator<Item = &ComplexMatrix> {
        self.generators.iter()
    }

    /// `Σ_k c_k λ_k`.
    pub fn combination(&self, coeffs: &[f64]) -> Result<ComplexMatrix> {
        if coeffs.len() != self.len() {
            return Err(LquError::DimensionMismatch(format!(
                "{} coefficients for {} generators",
                coeffs.len(),
                self.len()
            )));
        }
        let mut out = ComplexMatrix::zeros(self.dim, self.dim);
        for (c, g) in coeffs.iter().zip(&self.generators) {
            if *c != 0.0 {
                out = &out + &g.scale_real(*c);
            }
        }
        Ok(out)
    }

    /// `max_ij |Tr(λ_i λ_j) − 2δ_ij|`.
    pub fn orthonormality_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, a) in self.generators.iter().enumerate() {
            for (j, b) in self.generators.iter().enumerate() {
                let t = contract_trace(a, b).expect("generators share a dimension");
                let expected = if i == j { 2.0 } else { 0.0 };
                worst = worst.max((t - C64::new(expected, 0.0)).norm());
            }
        }
        worst
    }
}

/// Builds the generalized Gell-Mann generators for `d ≥ 2`.
pub fn build_generators(d: usize) -> Result<GeneratorSet> {
    if d < 2 {
        return Err(LquError::WrongDimension {
            expected: 2,
            found: d,
        });
    }
    let mut generators = Vec::with_capacity(d * d - 1);
    for j in 1..d {
        let norm = (2.0 / (j * (j + 1)) as f64).sqrt();
        let mut diag = vec![0.0; d];
        for x in diag.iter_mut().take(j) {
            *x = norm;
        }
        diag[j] = -(j as f64) * norm;
        generators.push(ComplexMatrix::from_real_diagonal(&diag));
    }
    for k in 0..d {
        for m in (k + 1)..d {
            let mut g = ComplexMatrix::zeros(d, d);
            g[(k, m)] = C64::new(1.0, 0.0);
            g[(m, k)] = C64::new(1.0, 0.0);
            generators.push(g);
        }
    }
    for k in 0..d {
        for m in (k + 1)..d {
            let mut g = ComplexMatrix::zeros(d, d);
            g[(k, m)] = C64::new(0.0, 1.0);
            g[(m, k)] = C64::new(0.0, -1.0);
            generators.push(g);
        }
    }
    Ok(GeneratorSet { dim: d, generators })
}

/// Sparse real rank-3 tensor, entries sorted by `(i, j, k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseTensor3 {
    n: usize,
    entries: Vec<((usize, usize, usize), f64)>,
}

impl SparseTensor3 {
    pub fn extent(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.entries
            .binary_search_by_key(&(i, j, k), |&(idx, _)| idx)
            .map(|pos| self.entries[pos].1)
            .unwrap_or(0.0)
    }

    pub fn nonzeros(&self) -> impl Iterator<Item = ((usize, usize, usize), f64)> + '_ {
        self.entries.iter().copied()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Row-major `n×n` matrix `M_ij = Σ_k t_ijk v_k`.
    pub fn contract_last(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.n);
        let mut out = vec![0.0; self.n * self.n];
        for &((i, j, k), t) in &self.entries {
            out[i * self.n + j] += t * v[k];
        }
        out
    }
}

/// `f_ijk = Tr([λ_i, λ_j] λ_k) / 4i` and `g_ijk = Tr({λ_i, λ_j} λ_k) / 4`.
#[derive(Debug, Clone)]
pub struct StructureConstants {
    pub f: SparseTensor3,
    pub g: SparseTensor3,
}

impl StructureConstants {
    /// Max-abs residual of `λ_iλ_j = iΣ_k f_ijk λ_k + Σ_k g_ijk λ_k + (2/d)δ_ij 𝕀`
    /// over all index pairs.
    pub fn reconstruction_residual(&self, gens: &GeneratorSet) -> f64 {
        let n = gens.len();
        let d = gens.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let lhs = gens.get(i) * gens.get(j);
                let mut rhs = if i == j {
                    ComplexMatrix::identity(d).scale_real(2.0 / d as f64)
                } else {
                    ComplexMatrix::zeros(d, d)
                };
                for k in 0..n {
                    let coeff = C64::new(self.g.get(i, j, k), self.f.get(i, j, k));
                    if coeff.norm() != 0.0 {
                        rhs = &rhs + &gens.get(k).scale(coeff);
                    }
                }
                worst = worst.max(lhs.max_abs_diff(&rhs));
            }
        }
        worst
    }
}

/// Evaluates both structure-constant tensors from their trace definitions.
pub fn structure_constants(gens: &GeneratorSet) -> StructureConstants {
    let n = gens.len();
    let products: Vec<ComplexMatrix> = (0..n * n)
        .map(|ij| gens.get(ij / n) * gens.get(ij % n))
        .collect();
    let mut f = Vec::new();
    let mut g = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let pij = &products[i * n + j];
            let pji = &products[j * n + i];
            let comm = pij - pji;
            let anti = pij + pji;
            for k in 0..n {
                let lk = gens.get(k);
                let fv = (contract_trace(&comm, lk).unwrap() / C64::new(0.0, 4.0)).re;
                let gv = (contract_trace(&anti, lk).unwrap() / 4.0).re;
                if fv.abs() >= STRUCTURE_ZERO {
                    f.push(((i, j, k), fv));
                }
                if gv.abs() >= STRUCTURE_ZERO {
                    g.push(((i, j, k), gv));
                }
            }
        }
    }
    StructureConstants {
        f: SparseTensor3 { n, entries: f },
        g: SparseTensor3 { n, entries: g },
    }
}

/// Expansion `Λ = s⃗·λ⃗ + β𝕀` with `α = |s⃗|`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumDecomposition {
    pub s: Vec<f64>,
    pub beta: f64,
    pub alpha: f64,
}

impl SpectrumDecomposition {
    /// Unit vector `s⃗/α`.
    pub fn direction(&self) -> Vec<f64> {
        self.s.iter().map(|x| x / self.alpha).collect()
    }

    pub fn reconstruct(&self, gens: &GeneratorSet) -> Result<ComplexMatrix> {
        let id = ComplexMatrix::identity(gens.dim()).scale_real(self.beta);
        Ok(&gens.combination(&self.s)? + &id)
    }
}

/// Expands a Hermitian `d×d` matrix over the generators plus identity:
/// `β = Tr Λ / d`, `s_k = Tr(Λ λ_k) / 2`.
pub fn spectrum_decompose(
    spectrum: &ComplexMatrix,
    gens: &GeneratorSet,
) -> Result<SpectrumDecomposition> {
    let d = gens.dim();
    if spectrum.rows() != d || spectrum.cols() != d {
        return Err(LquError::DimensionMismatch(format!(
            "spectrum is {}x{}, generators act on dimension {d}",
            spectrum.rows(),
            spectrum.cols()
        )));
    }
    let deviation = spectrum.hermitian_deviation();
    if deviation > crate::linalg::HERMITIAN_TOL {
        return Err(LquError::NotHermitian { deviation });
    }
    let beta = spectrum.trace().re / d as f64;
    let s: Vec<f64> = gens
        .iter()
        .map(|g| contract_trace(spectrum, g).unwrap().re / 2.0)
        .collect();
    let alpha = s.iter().map(|x| x * x).sum::<f64>().sqrt();
    if alpha < DIRECTION_TOL {
        return Err(LquError::DegenerateDirection { alpha });
    }
    Ok(SpectrumDecomposition { s, beta, alpha })
}

/// Checks that `Λ` and `VΛV^†` share `β` and `α`. Always true for unitary
/// `V`; exposed as a runtime self-check.
pub fn check_spectrum_invariance(
    spectrum: &ComplexMatrix,
    v: &ComplexMatrix,
    gens: &GeneratorSet,
) -> Result<bool> {
    let deviation = v.unitarity_deviation();
    if deviation > INVARIANCE_TOL {
        return Err(LquError::NotUnitary { deviation });
    }
    let before = spectrum_decompose(spectrum, gens)?;
    let after = spectrum_decompose(&v.conjugate(spectrum)?, gens)?;
    Ok((before.beta - after.beta).abs() <= INVARIANCE_TOL
        && (before.alpha - after.alpha).abs() <= INVARIANCE_TOL)
}
