//! Random states and unitaries shared by the lqu test suites.

use lqu_core::linalg::expi_hermitian;
use lqu_core::{kron, ComplexMatrix, DensityMatrix, C64};
use rand::Rng;
use rand_distr::StandardNormal;

pub use rand::SeedableRng;
pub use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut impl Rng) -> f64 {
    rng.sample(StandardNormal)
}

/// Matrix with independent standard complex Gaussian entries.
pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> ComplexMatrix {
    let data = (0..rows * cols)
        .map(|_| C64::new(gaussian(rng), gaussian(rng)))
        .collect();
    ComplexMatrix::from_row_major(rows, cols, data).unwrap()
}

pub fn random_hermitian(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    random_matrix(rng, n, n).hermitian_part()
}

/// `exp(iH)` for a Gaussian Hermitian `H`; spread over the whole group.
pub fn random_unitary(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    expi_hermitian(&random_hermitian(rng, n).scale_real(2.0)).unwrap()
}

/// Uniform point on the unit sphere in `R^n`.
pub fn random_unit_vector(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    let v: Vec<f64> = (0..n).map(|_| gaussian(rng)).collect();
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.into_iter().map(|x| x / norm).collect()
}

/// Full-rank mixed state `AA^†/Tr(AA^†)` (Ginibre ensemble).
pub fn random_density(rng: &mut impl Rng, dim_a: usize, dim_b: usize) -> DensityMatrix {
    let n = dim_a * dim_b;
    let a = random_matrix(rng, n, n);
    let m = &a * &a.dagger();
    let tr = m.trace().re;
    DensityMatrix::new(m.scale_real(1.0 / tr), dim_a, dim_b).unwrap()
}

pub fn random_pure(rng: &mut impl Rng, dim_a: usize, dim_b: usize) -> DensityMatrix {
    let n = dim_a * dim_b;
    let psi = random_matrix(rng, n, 1).column(0);
    let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let psi: Vec<C64> = psi.iter().map(|z| z / norm).collect();
    DensityMatrix::new(ComplexMatrix::outer(&psi, &psi), dim_a, dim_b).unwrap()
}

/// Classical–quantum state `Σ_a p_a |a⟩⟨a| ⊗ ρ_B^{(a)}`.
pub fn random_cq_state(rng: &mut impl Rng, dim_a: usize, dim_b: usize) -> DensityMatrix {
    let weights: Vec<f64> = (0..dim_a).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = weights.iter().sum();
    let n = dim_a * dim_b;
    let mut m = ComplexMatrix::zeros(n, n);
    for (a, w) in weights.iter().enumerate() {
        let mut proj = vec![0.0; dim_a];
        proj[a] = w / total;
        let g = random_matrix(rng, dim_b, dim_b);
        let block = &g * &g.dagger();
        let block = block.scale_real(1.0 / block.trace().re);
        m = &m + &kron(&ComplexMatrix::from_real_diagonal(&proj), &block);
    }
    DensityMatrix::new(m, dim_a, dim_b).unwrap()
}

/// `U_A ⊗ U_B` with independent random factors.
pub fn random_local_unitary(rng: &mut impl Rng, dim_a: usize, dim_b: usize) -> ComplexMatrix {
    kron(&random_unitary(rng, dim_a), &random_unitary(rng, dim_b))
}
