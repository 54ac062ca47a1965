//! Hermitian eigendecomposition by cyclic complex Jacobi rotations, plus the
//! spectral functions built on it (PSD square root, `exp(iH)`).
//!
//! Each rotation first removes the phase of the pivot `a_pq` and then applies
//! the real symmetric Jacobi rotation that annihilates it. Matrices here are at
//! most 81×81, where the quadratic convergence of the cyclic sweep is reached
//! after a handful of sweeps.

use super::matrix::{ComplexMatrix, C64};
use crate::error::{LquError, Result};

/// Tolerance on `max |m - m^†|` accepted as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Eigenvalues in `[-PSD_CLAMP, 0)` are treated as roundoff and set to zero.
pub const PSD_CLAMP: f64 = 1e-10;
/// Eigenvalues below `PSD_SNAP · max|w|` are roundoff on a null space and are
/// rooted as exact zeros.
pub const PSD_SNAP: f64 = 1e-14;
/// Relative off-diagonal Frobenius mass at which a sweep sequence stops.
pub const JACOBI_TOL: f64 = 1e-14;
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Eigenvalues ascending with unitary eigenvectors as matching columns.
#[derive(Debug, Clone)]
pub struct HermitianEig {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEig {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn max_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().expect("empty decomposition")
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// `V f(diag(w)) V^†` for a complex-valued spectral function.
    pub fn apply(&self, f: impl Fn(f64) -> C64) -> ComplexMatrix {
        let n = self.dim();
        let v = &self.eigenvectors;
        let fw: Vec<C64> = self.eigenvalues.iter().map(|&w| f(w)).collect();
        let mut out = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = C64::new(0.0, 0.0);
                for k in 0..n {
                    acc += v[(i, k)] * fw[k] * v[(j, k)].conj();
                }
                out[(i, j)] = acc;
            }
        }
        out
    }

    /// `V diag(w) V^†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.apply(|w| C64::new(w, 0.0))
    }
}

/// Diagonalizes a Hermitian matrix.
///
/// Input within [`HERMITIAN_TOL`] of Hermitian is symmetrized first; larger
/// deviations are rejected.
pub fn hermitian_eigendecompose(m: &ComplexMatrix) -> Result<HermitianEig> {
    if !m.is_square() {
        return Err(LquError::DimensionMismatch(format!(
            "eigendecomposition of a non-square {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let deviation = m.hermitian_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(LquError::NotHermitian { deviation });
    }
    let n = m.rows();
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);

    let scale = a.frobenius_norm();
    let target = JACOBI_TOL * scale;
    let mut converged = scale == 0.0;
    let mut off = off_diagonal_mass(&a);
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        off = off_diagonal_mass(&a);
    }
    if !converged && off > target {
        return Err(LquError::NoConvergence {
            sweeps: JACOBI_MAX_SWEEPS,
            off_diagonal: off,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        for i in 0..n {
            eigenvectors[(i, dst)] = v[(i, src)];
        }
    }
    Ok(HermitianEig {
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_mass(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// One Jacobi rotation `A ← G^† A G`, `V ← V G` annihilating `a_pq`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // skip pivots already below the representable precision of the diagonal
    if r <= f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[(p, q)] = C64::new(0.0, 0.0);
        a[(q, p)] = C64::new(0.0, 0.0);
        return;
    }
    let phase = apq / r;
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // G = diag(1, e^{-iφ}) · [[c, s], [-s, c]]
    let g_pp = C64::new(c, 0.0);
    let g_pq = C64::new(s, 0.0);
    let g_qp = -phase.conj() * s;
    let g_qq = phase.conj() * c;

    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * g_pp + akq * g_qp;
        a[(k, q)] = akp * g_pq + akq * g_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
        a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * g_pp + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * g_qq;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
}

/// Principal square root of a positive-semidefinite Hermitian matrix.
pub fn sqrt_psd(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eigendecompose(m)?;
    let min = eig.min_eigenvalue();
    if min < -PSD_CLAMP {
        return Err(LquError::NotPsd {
            min_eigenvalue: min,
        });
    }
    Ok(sqrt_from_eig(&eig))
}

/// `V √diag(w) V^†` with negative and roundoff-level eigenvalues set to zero.
pub fn sqrt_from_eig(eig: &HermitianEig) -> ComplexMatrix {
    let scale = eig
        .eigenvalues
        .iter()
        .fold(0.0f64, |acc, w| acc.max(w.abs()));
    let floor = PSD_SNAP * scale;
    eig.apply(|w| {
        if w <= floor {
            C64::new(0.0, 0.0)
        } else {
            C64::new(w.sqrt(), 0.0)
        }
    })
    .hermitian_part()
}

/// `exp(i H)` for Hermitian `H`; the result is unitary.
pub fn expi_hermitian(h: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eigendecompose(h)?;
    Ok(eig.apply(|w| C64::from_polar(1.0, w)))
}
