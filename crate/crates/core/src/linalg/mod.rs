//! Dense complex matrix algebra.

mod eigen;
mod matrix;

pub use eigen::{
    expi_hermitian, hermitian_eigendecompose, sqrt_from_eig, sqrt_psd, HermitianEig, HERMITIAN_TOL,
    JACOBI_MAX_SWEEPS, JACOBI_TOL, PSD_CLAMP, PSD_SNAP,
};
pub(crate) use matrix::contract_trace;
pub use matrix::{kron, trace_product, ComplexMatrix, C64};

#[cfg(test)]
pub(crate) mod test_matrices {
    use super::{ComplexMatrix, C64};
    use rand::Rng;
    use rand_distr::StandardNormal;

    pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> ComplexMatrix {
        let data = (0..rows * cols)
            .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        ComplexMatrix::from_row_major(rows, cols, data).unwrap()
    }

    pub fn random_hermitian(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
        random_matrix(rng, n, n).hermitian_part()
    }

    pub fn random_density(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
        let a = random_matrix(rng, n, n);
        let rho = &a * &a.dagger();
        let tr = rho.trace().re;
        rho.scale_real(1.0 / tr).hermitian_part()
    }
}
