//! Cross-checks against independent computations: a brute-force Bloch-sphere
//! scan for qubit observables, nalgebra eigenvalues, and dense random search.

use lqu_core::linalg::C64;
use lqu_core::optimizer::{observable_from_params, unitary_from_params};
use lqu_core::states::horodecki33;
use lqu_core::{
    build_generators, closed_form_2xd, hermitian_eigendecompose, lower_bound, optimize_lqu,
    skew_information_local, ComplexMatrix, DensityMatrix, GaConfig,
};
use lqu_testkit::{random_density, random_hermitian, rng};
use nalgebra::DMatrix;
use rand::Rng;
use std::f64::consts::PI;

fn pauli_combination(n: [f64; 3]) -> ComplexMatrix {
    let i = C64::new(0.0, 1.0);
    ComplexMatrix::from_row_major(
        2,
        2,
        vec![
            C64::new(n[2], 0.0),
            C64::new(n[0], 0.0) - i * n[1],
            C64::new(n[0], 0.0) + i * n[1],
            C64::new(-n[2], 0.0),
        ],
    )
    .unwrap()
}

/// Minimum of `I(ρ, n·σ ⊗ 𝕀)` over a polar grid of the upper hemisphere.
fn bloch_scan(rho: &DensityMatrix, steps: usize) -> f64 {
    let mut best = f64::INFINITY;
    for a in 0..=steps {
        let theta = 0.5 * PI * a as f64 / steps as f64;
        for b in 0..(4 * steps) {
            let phi = 2.0 * PI * b as f64 / (4 * steps) as f64;
            let n = [
                theta.sin() * phi.cos(),
                theta.sin() * phi.sin(),
                theta.cos(),
            ];
            best = best.min(skew_information_local(rho, &pauli_combination(n)).unwrap());
        }
    }
    best
}

fn to_nalgebra(m: &ComplexMatrix) -> DMatrix<C64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)])
}

#[test]
fn bell_state_lqu_is_one() {
    let h = 1.0 / 2f64.sqrt();
    let psi = [h, 0.0, 0.0, h].map(|x| C64::new(x, 0.0));
    let rho = DensityMatrix::new(ComplexMatrix::outer(&psi, &psi), 2, 2).unwrap();
    assert!((closed_form_2xd(&rho).unwrap() - 1.0).abs() < 1e-12);
    assert!((bloch_scan(&rho, 24) - 1.0).abs() < 1e-12);
}

#[test]
fn qubit_closed_form_matches_bloch_scan() {
    let mut r = rng(101);
    for _ in 0..5 {
        let rho = random_density(&mut r, 2, 3);
        let exact = closed_form_2xd(&rho).unwrap();
        let scanned = bloch_scan(&rho, 90);
        assert!(scanned >= exact - 1e-12, "{scanned} < {exact}");
        assert!(scanned - exact < 2e-3, "{scanned} vs {exact}");
    }
}

#[test]
fn eigenvalues_agree_with_nalgebra() {
    let mut r = rng(7);
    for n in [2usize, 3, 4, 6, 9, 12] {
        for _ in 0..10 {
            let m = random_hermitian(&mut r, n);
            let ours = hermitian_eigendecompose(&m).unwrap().eigenvalues;
            let mut theirs: Vec<f64> = to_nalgebra(&m)
                .symmetric_eigenvalues()
                .iter()
                .copied()
                .collect();
            theirs.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for (a, b) in ours.iter().zip(&theirs) {
                assert!((a - b).abs() < 1e-11 * (1.0 + b.abs()), "n={n}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn lambda_max_of_w_agrees_with_nalgebra() {
    let mut r = rng(8);
    let lam = ComplexMatrix::from_real_diagonal(&[1.0, -1.0, 0.0]);
    for _ in 0..10 {
        let rho = random_density(&mut r, 3, 3);
        let report = lower_bound(&rho, &lam).unwrap();
        let n = report.w_dim();
        let w = nalgebra::DMatrix::from_fn(n, n, |i, j| report.w[i][j]);
        let top = w.symmetric_eigenvalues().max();
        assert!((top - report.lambda_max).abs() < 1e-12);
    }
}

#[test]
fn exponential_map_is_special_unitary() {
    let mut r = rng(9);
    let g = build_generators(4).unwrap();
    for _ in 0..20 {
        let theta: Vec<f64> = (0..15).map(|_| r.random_range(-PI..PI)).collect();
        let v = unitary_from_params(&theta, &g).unwrap();
        assert!(v.unitarity_deviation() < 1e-10);
        let det = to_nalgebra(&v).determinant();
        assert!((det - C64::new(1.0, 0.0)).norm() < 1e-10, "det {det}");
    }
}

#[test]
fn genetic_search_beats_dense_random_search() {
    let rho = horodecki33(0.3).unwrap();
    let lam = ComplexMatrix::from_real_diagonal(&[1.0, -1.0, 0.0]);
    let g = build_generators(3).unwrap();
    let mut r = rng(2024);
    let mut best = f64::INFINITY;
    for _ in 0..1_000_000 {
        let theta: Vec<f64> = (0..8).map(|_| r.random_range(-PI..=PI)).collect();
        let k = observable_from_params(&theta, &lam, &g).unwrap();
        best = best.min(skew_information_local(&rho, &k).unwrap());
    }
    let ga = optimize_lqu(&rho, &lam, &GaConfig::with_seed(1))
        .unwrap()
        .value;
    let bound = lower_bound(&rho, &lam).unwrap().bound;
    assert!(ga <= best + 1e-9, "ga {ga} random {best}");
    assert!(bound <= ga + 1e-6);
    assert!(
        best - ga < 0.02,
        "random search far from optimum: {best} vs {ga}"
    );
}
