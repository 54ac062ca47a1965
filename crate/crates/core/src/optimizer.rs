//! Optimized LQU: minimum skew information over the fixed-spectrum orbit
//! `{V Λ V^† ⊗ 𝕀 : V ∈ SU(d₁)}`.
//!
//! `V = exp(i Σ_k θ_k λ_k)` with `θ ∈ [−π, π]^{d²−1}`. The search is a
//! real-coded genetic algorithm (tournament selection, blend crossover,
//! Gaussian mutation, one elite) followed by a direction-set descent with
//! golden-section line searches from the incumbent. Several independent
//! populations (islands) are run and the best polished result is kept; the
//! first island starts partly from observables aligned with the leading
//! eigenvectors of the bound's `W` matrix.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{LquError, Result};
use crate::generators::GeneratorSet;
use crate::linalg::{
    expi_hermitian, hermitian_eigendecompose, trace_product, ComplexMatrix, C64, HERMITIAN_TOL,
};
use crate::lqu::{skew_information_local, w_matrix, BoundContext, DensityMatrix};

/// Minimum gap between spectrum eigenvalues.
pub const DEGENERACY_TOL: f64 = 1e-9;

const GOLDEN: f64 = 0.618_033_988_749_894_9;
const LINE_SEARCH_ITERS: usize = 60;
/// Bracket width at which a line search stops.
const LINE_SEARCH_TOL: f64 = 1e-9;
const POLISH_MIN_RADIUS: f64 = 1e-9;
const POLISH_TOL: f64 = 1e-13;
/// Number of leading eigenvectors of `W` turned into starting points.
const SEED_DIRECTIONS: usize = 3;
const LOG_MIX: f64 = 0.754_877_666_246_692_8;

/// Generator-coefficient angles `θ ∈ [−π, π]^{d²−1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamVector(Vec<f64>);

impl ParamVector {
    pub fn new(theta: Vec<f64>, d: usize) -> Result<Self> {
        if theta.len() != d * d - 1 {
            return Err(LquError::DimensionMismatch(format!(
                "{} angles for SU({d}), expected {}",
                theta.len(),
                d * d - 1
            )));
        }
        if let Some(&x) = theta.iter().find(|x| !x.is_finite() || x.abs() > PI) {
            return Err(LquError::ParamOutOfRange {
                name: "theta",
                value: x,
                range: "[-pi, pi]",
            });
        }
        Ok(Self(theta))
    }

    pub fn zeros(d: usize) -> Self {
        Self(vec![0.0; d * d - 1])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

/// Genetic-algorithm settings. Missing fields in a config file take the
/// defaults below.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GaConfig {
    pub population_size: usize,
    pub generations: usize,
    pub tournament_size: usize,
    pub crossover_rate: f64,
    /// Initial mutation scale, halved every 100 generations.
    pub mutation_sigma: f64,
    pub stall_tolerance: f64,
    pub stall_generations: usize,
    pub seed: u64,
    /// Sweep budget of the direction-set refinement.
    pub polish_steps: usize,
    /// Start part of the first island from observables aligned with the
    /// leading eigenvectors of `W`.
    pub seed_candidates: bool,
    /// Independent populations; the best polished result wins.
    pub islands: usize,
}

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            population_size: 64,
            generations: 400,
            tournament_size: 3,
            crossover_rate: 0.7,
            mutation_sigma: 0.3,
            stall_tolerance: 1e-8,
            stall_generations: 60,
            seed: 0,
            polish_steps: 200,
            seed_candidates: true,
            islands: 4,
        }
    }
}

impl GaConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(LquError::InvalidConfig(msg.to_string()));
        if self.population_size < 2 {
            return bad("population_size must be at least 2");
        }
        if self.generations == 0 {
            return bad("generations must be positive");
        }
        if self.tournament_size == 0 || self.tournament_size > self.population_size {
            return bad("tournament_size must be in 1..=population_size");
        }
        if !(0.0..=1.0).contains(&self.crossover_rate) {
            return bad("crossover_rate must lie in [0, 1]");
        }
        if !(self.mutation_sigma > 0.0 && self.mutation_sigma.is_finite()) {
            return bad("mutation_sigma must be positive");
        }
        if !(self.stall_tolerance >= 0.0 && self.stall_tolerance.is_finite()) {
            return bad("stall_tolerance must be non-negative");
        }
        if self.islands == 0 {
            return bad("islands must be positive");
        }
        if self.stall_generations == 0 {
            return bad("stall_generations must be positive");
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct OptimizeResult {
    /// Minimized skew information.
    pub value: f64,
    pub best_params: ParamVector,
    /// Realized local observable `K_A = V Λ V^†`.
    pub observable: ComplexMatrix,
    /// Best value so far after each generation (islands in turn), then after
    /// the polish.
    pub history: Vec<f64>,
    pub evaluations: usize,
}

/// `V = exp(i Σ_k θ_k λ_k)`.
pub fn unitary_from_params(theta: &[f64], gens: &GeneratorSet) -> Result<ComplexMatrix> {
    expi_hermitian(&gens.combination(theta)?)
}

/// `K = V Λ V^†`.
pub fn observable_from_params(
    theta: &[f64],
    spectrum: &ComplexMatrix,
    gens: &GeneratorSet,
) -> Result<ComplexMatrix> {
    let v = unitary_from_params(theta, gens)?;
    Ok(v.conjugate(spectrum)?.hermitian_part())
}

fn check_spectrum(spectrum: &ComplexMatrix, d: usize) -> Result<()> {
    if spectrum.rows() != d || spectrum.cols() != d {
        return Err(LquError::DimensionMismatch(format!(
            "spectrum is {}x{}, subsystem A has dimension {d}",
            spectrum.rows(),
            spectrum.cols()
        )));
    }
    let deviation = spectrum.hermitian_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(LquError::NotHermitian { deviation });
    }
    let eig = hermitian_eigendecompose(spectrum)?;
    for pair in eig.eigenvalues.windows(2) {
        if pair[1] - pair[0] <= DEGENERACY_TOL {
            return Err(LquError::DegenerateSpectrum {
                first: pair[0],
                second: pair[1],
            });
        }
    }
    Ok(())
}

fn reflect(mut x: f64) -> f64 {
    while x.abs() > PI {
        x = if x > PI { 2.0 * PI - x } else { -2.0 * PI - x };
    }
    x
}

fn argmin(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if *v < values[best] {
            best = i;
        }
    }
    best
}

fn tournament(rng: &mut ChaCha8Rng, fitness: &[f64], size: usize) -> usize {
    let mut winner = rng.random_range(0..fitness.len());
    for _ in 1..size {
        let c = rng.random_range(0..fitness.len());
        if fitness[c] < fitness[winner] {
            winner = c;
        }
    }
    winner
}

struct Objective<'a> {
    rho: &'a DensityMatrix,
    spectrum: &'a ComplexMatrix,
    gens: &'a GeneratorSet,
}

impl Objective<'_> {
    fn eval(&self, theta: &[f64]) -> Result<f64> {
        let k = observable_from_params(theta, self.spectrum, self.gens)?;
        skew_information_local(self.rho, &k)
    }

    fn eval_all(&self, pop: &[Vec<f64>]) -> Result<Vec<f64>> {
        pop.par_iter().map(|theta| self.eval(theta)).collect()
    }
}

/// Minimizes `θ ↦ I(ρ, V(θ)ΛV(θ)^† ⊗ 𝕀)`. Deterministic for a fixed seed.
///
/// Runs `config.islands` independent populations, each followed by its own
/// polish, and keeps the best. Island 0 holds the seeded candidates when
/// `config.seed_candidates` is set.
pub fn optimize_lqu(
    rho: &DensityMatrix,
    spectrum: &ComplexMatrix,
    config: &GaConfig,
) -> Result<OptimizeResult> {
    config.validate()?;
    let d = rho.dim_a();
    check_spectrum(spectrum, d)?;
    let ctx = BoundContext::new(d)?;
    let gens = &ctx.generators;
    let objective = Objective {
        rho,
        spectrum,
        gens,
    };
    let seeds = if config.seed_candidates {
        seed_candidates(rho, spectrum, &ctx)?
    } else {
        Vec::new()
    };

    let runs = (0..config.islands)
        .into_par_iter()
        .map(|island| {
            let seeds = if island == 0 { &seeds[..] } else { &[] };
            run_island(&objective, config, island as u64, seeds)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut history = Vec::new();
    let mut evaluations = 0;
    let mut best: Option<(Vec<f64>, f64)> = None;
    for run in runs {
        let floor = history.last().copied().unwrap_or(f64::INFINITY);
        history.extend(run.history.iter().map(|v| v.min(floor)));
        evaluations += run.evaluations;
        if best.as_ref().is_none_or(|(_, v)| run.value < *v) {
            best = Some((run.theta, run.value));
        }
    }
    let (theta, value) = best.expect("at least one island");

    let observable = observable_from_params(&theta, spectrum, gens)?;
    let recomputed = skew_information_local(rho, &observable)?;
    debug_assert!((recomputed - value).abs() <= 1e-12);
    history.push(recomputed.min(*history.last().unwrap()));
    Ok(OptimizeResult {
        value: recomputed,
        best_params: ParamVector::new(theta, d)?,
        observable,
        history,
        evaluations,
    })
}

struct IslandRun {
    theta: Vec<f64>,
    value: f64,
    history: Vec<f64>,
    evaluations: usize,
}

fn run_island(
    objective: &Objective<'_>,
    config: &GaConfig,
    island: u64,
    seeds: &[Vec<f64>],
) -> Result<IslandRun> {
    let n = objective.gens.len();
    let pop_size = config.population_size;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(island);

    let mut population: Vec<Vec<f64>> = (0..pop_size)
        .map(|_| (0..n).map(|_| rng.random_range(-PI..=PI)).collect())
        .collect();
    for (slot, seed) in population.iter_mut().zip(seeds) {
        slot.clone_from(seed);
    }
    let mut fitness = objective.eval_all(&population)?;
    let mut evaluations = pop_size;
    let mut elite = argmin(&fitness);
    let mut history = vec![fitness[elite]];

    for generation in 1..config.generations {
        let sigma = config.mutation_sigma * 0.5f64.powi((generation / 100) as i32);
        let mut offspring = Vec::with_capacity(pop_size - 1);
        while offspring.len() < pop_size - 1 {
            let a = tournament(&mut rng, &fitness, config.tournament_size);
            let mut child = if rng.random::<f64>() < config.crossover_rate {
                let b = tournament(&mut rng, &fitness, config.tournament_size);
                population[a]
                    .iter()
                    .zip(&population[b])
                    .map(|(x, y)| {
                        let w: f64 = rng.random();
                        w * x + (1.0 - w) * y
                    })
                    .collect()
            } else {
                population[a].clone()
            };
            for x in child.iter_mut() {
                let z: f64 = rng.sample(StandardNormal);
                *x = reflect(*x + sigma * z);
            }
            offspring.push(child);
        }
        let child_fitness = objective.eval_all(&offspring)?;
        evaluations += offspring.len();

        let elite_theta = population.swap_remove(elite);
        let elite_value = fitness[elite];
        population = std::iter::once(elite_theta).chain(offspring).collect();
        fitness = std::iter::once(elite_value).chain(child_fitness).collect();
        elite = argmin(&fitness);
        history.push(fitness[elite]);

        if generation >= config.stall_generations {
            let past = history[generation - config.stall_generations];
            if past - fitness[elite] < config.stall_tolerance {
                break;
            }
        }
    }

    let (theta, value, polish_evals) = polish(
        objective,
        population.swap_remove(elite),
        fitness[elite],
        config.polish_steps,
        config.mutation_sigma,
    )?;
    Ok(IslandRun {
        theta,
        value,
        history,
        evaluations: evaluations + polish_evals,
    })
}

/// Starting points for the population: `θ = 0` and, for the leading
/// eigenvectors `±u` of `W`, the orbit member whose eigenbasis matches that
/// of `u·λ` with eigenvalues in the same order.
fn seed_candidates(
    rho: &DensityMatrix,
    spectrum: &ComplexMatrix,
    ctx: &BoundContext,
) -> Result<Vec<Vec<f64>>> {
    let gens = &ctx.generators;
    let n = gens.len();
    let mut seeds = vec![vec![0.0; n]];
    let (w, _) = w_matrix(rho, gens, &ctx.constants)?;
    let flat: Vec<f64> = w.into_iter().flatten().collect();
    let w_eig = hermitian_eigendecompose(&ComplexMatrix::from_real(n, n, &flat)?)?;
    let lam_eig = hermitian_eigendecompose(spectrum)?;
    for col in (0..n).rev().take(SEED_DIRECTIONS) {
        let u = real_unit_vector(&w_eig.eigenvectors.column(col));
        for sign in [1.0, -1.0] {
            let dir: Vec<f64> = u.iter().map(|x| sign * x).collect();
            let basis = hermitian_eigendecompose(&gens.combination(&dir)?)?.eigenvectors;
            let v = basis.matmul(&lam_eig.eigenvectors.dagger())?;
            if let Some(theta) = params_from_unitary(&v, spectrum, gens)? {
                seeds.push(theta);
            }
        }
    }
    Ok(seeds)
}

/// Rotates a complex eigenvector of a real symmetric matrix onto the reals.
fn real_unit_vector(v: &[C64]) -> Vec<f64> {
    let pivot = v.iter().copied().fold(
        C64::new(0.0, 0.0),
        |a, b| if b.norm() > a.norm() { b } else { a },
    );
    let phase = pivot.conj() / pivot.norm();
    let re: Vec<f64> = v.iter().map(|x| (x * phase).re).collect();
    let norm = re.iter().map(|x| x * x).sum::<f64>().sqrt();
    re.into_iter().map(|x| x / norm).collect()
}

/// Angles `θ` with `V(θ)ΛV(θ)^† = VΛV^†`, from the principal logarithm of `V`
/// after removing phases that commute with `Λ`. `None` when the logarithm
/// leaves `[−π, π]^{d²−1}`.
pub fn params_from_unitary(
    v: &ComplexMatrix,
    spectrum: &ComplexMatrix,
    gens: &GeneratorSet,
) -> Result<Option<Vec<f64>>> {
    let d = gens.dim();
    let mut u = v.clone();
    let diagonal = (0..d).all(|i| (0..d).all(|j| i == j || spectrum[(i, j)].norm() == 0.0));
    if diagonal {
        for j in 0..d {
            let z = u[(j, j)];
            if z.norm() > 1e-12 {
                let phase = z.conj() / z.norm();
                for i in 0..d {
                    u[(i, j)] *= phase;
                }
            }
        }
    }
    // The Hermitian and anti-Hermitian parts of a unitary commute, so a generic
    // real combination of them shares its eigenbasis.
    let ud = u.dagger();
    let re_part = (&u + &ud).scale_real(0.5);
    let im_part = (&u - &ud).scale(C64::new(0.0, -0.5));
    let mix = (&re_part + &im_part.scale_real(LOG_MIX)).hermitian_part();
    let basis = hermitian_eigendecompose(&mix)?.eigenvectors;
    let diag = basis.dagger().matmul(&u)?.matmul(&basis)?;
    let mut off = 0.0f64;
    for i in 0..d {
        for j in 0..d {
            if i != j {
                off = off.max(diag[(i, j)].norm());
            }
        }
    }
    if off > 1e-8 {
        return Ok(None);
    }
    let phases: Vec<f64> = (0..d).map(|i| diag[(i, i)].arg()).collect();
    let mean = phases.iter().sum::<f64>() / d as f64;
    let centred: Vec<f64> = phases.iter().map(|p| p - mean).collect();
    let log = basis
        .matmul(&ComplexMatrix::from_real_diagonal(&centred))?
        .matmul(&basis.dagger())?;
    let theta = gens
        .iter()
        .map(|g| Ok(0.5 * trace_product(&[&log, g])?.re))
        .collect::<Result<Vec<f64>>>()?;
    if theta.iter().any(|x| x.abs() > PI) {
        return Ok(None);
    }
    let target = v.conjugate(spectrum)?;
    let realized = observable_from_params(&theta, spectrum, gens)?;
    if realized.max_abs_diff(&target) > 1e-8 * (1.0 + spectrum.max_abs()) {
        return Ok(None);
    }
    Ok(Some(theta))
}

/// Powell's direction-set descent: golden-section line searches along the
/// coordinate axes, with the net displacement of each sweep replacing the
/// direction of largest decrease. Line-search windows track the size of the
/// last accepted step along each direction.
fn polish(
    objective: &Objective<'_>,
    mut theta: Vec<f64>,
    mut value: f64,
    sweeps: usize,
    initial_radius: f64,
) -> Result<(Vec<f64>, f64, usize)> {
    let n = theta.len();
    let mut evals = 0;
    let axes = || -> Vec<Vec<f64>> {
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect()
    };
    let mut dirs = axes();
    let mut radii = vec![initial_radius; n];
    let mut quiet = 0;
    for sweep in 0..sweeps {
        if sweep % (2 * n) == 0 && sweep > 0 {
            dirs = axes();
        }
        let start = theta.clone();
        let start_value = value;
        let mut best_drop = (0.0, 0);
        for (i, dir) in dirs.iter().enumerate() {
            let (step, fx, used) = line_search(objective, &theta, dir, radii[i])?;
            evals += used;
            if fx < value {
                if value - fx > best_drop.0 {
                    best_drop = (value - fx, i);
                }
                value = fx;
                step_along(&mut theta, dir, step);
                radii[i] = (3.0 * step.abs()).clamp(POLISH_MIN_RADIUS, initial_radius);
            } else {
                radii[i] = (radii[i] / 4.0).max(POLISH_MIN_RADIUS);
            }
        }
        let mut net: Vec<f64> = theta.iter().zip(&start).map(|(a, b)| a - b).collect();
        let length = net.iter().map(|x| x * x).sum::<f64>().sqrt();
        if length > 0.0 && best_drop.0 > 0.0 {
            net.iter_mut().for_each(|x| *x /= length);
            let radius = (2.0 * length).min(initial_radius);
            let (step, fx, used) = line_search(objective, &theta, &net, radius)?;
            evals += used;
            if fx < value {
                value = fx;
                step_along(&mut theta, &net, step);
            }
            dirs.remove(best_drop.1);
            radii.remove(best_drop.1);
            dirs.push(net);
            radii.push(radius);
        }
        if start_value - value <= POLISH_TOL * (1.0 + value.abs()) {
            quiet += 1;
            if quiet >= 2 {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    Ok((theta, value, evals))
}

fn step_along(theta: &mut [f64], dir: &[f64], step: f64) {
    for (x, d) in theta.iter_mut().zip(dir) {
        *x = (*x + step * d).clamp(-PI, PI);
    }
}

/// Golden-section search of `t ↦ f(θ + t·dir)` over `[−radius, radius]`
/// intersected with the box `[−π, π]^n`.
fn line_search(
    objective: &Objective<'_>,
    theta: &[f64],
    dir: &[f64],
    radius: f64,
) -> Result<(f64, f64, usize)> {
    let (mut lo, mut hi) = (-radius, radius);
    for (x, d) in theta.iter().zip(dir) {
        if d.abs() > 1e-15 {
            let (a, b) = ((-PI - x) / d, (PI - x) / d);
            lo = lo.max(a.min(b));
            hi = hi.min(a.max(b));
        }
    }
    if hi <= lo {
        return Ok((0.0, f64::INFINITY, 0));
    }
    let mut probe = theta.to_vec();
    let mut line = |t: f64| -> Result<f64> {
        for ((p, x), d) in probe.iter_mut().zip(theta).zip(dir) {
            *p = (x + t * d).clamp(-PI, PI);
        }
        objective.eval(&probe)
    };
    golden_section(&mut line, lo, hi)
}

fn golden_section(
    f: &mut impl FnMut(f64) -> Result<f64>,
    mut lo: f64,
    mut hi: f64,
) -> Result<(f64, f64, usize)> {
    let mut x1 = hi - GOLDEN * (hi - lo);
    let mut x2 = lo + GOLDEN * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    let mut evals = 2;
    for _ in 0..LINE_SEARCH_ITERS {
        if hi - lo < LINE_SEARCH_TOL {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - GOLDEN * (hi - lo);
            f1 = f(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + GOLDEN * (hi - lo);
            f2 = f(x2)?;
        }
        evals += 1;
    }
    Ok(if f1 <= f2 {
        (x1, f1, evals)
    } else {
        (x2, f2, evals)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::build_generators;
    use crate::linalg::test_matrices::random_density;

    #[test]
    fn zero_angles_give_identity() {
        let g = build_generators(3).unwrap();
        let v = unitary_from_params(&[0.0; 8], &g).unwrap();
        assert!(v.max_abs_diff(&ComplexMatrix::identity(3)) < 1e-15);
        let lam = ComplexMatrix::from_real_diagonal(&[1.0, -1.0, 0.0]);
        assert!(
            observable_from_params(&[0.0; 8], &lam, &g)
                .unwrap()
                .max_abs_diff(&lam)
                < 1e-15
        );
    }

    #[test]
    fn qubit_diagonal_exponential() {
        let g = build_generators(2).unwrap();
        let v = unitary_from_params(&[PI / 2.0, 0.0, 0.0], &g).unwrap();
        let expected = ComplexMatrix::from_diagonal(&[
            C64::from_polar(1.0, PI / 2.0),
            C64::from_polar(1.0, -PI / 2.0),
        ]);
        assert!(v.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn wrong_angle_count_rejected() {
        let g = build_generators(2).unwrap();
        assert!(matches!(
            unitary_from_params(&[0.0; 8], &g),
            Err(LquError::DimensionMismatch(_))
        ));
        assert!(ParamVector::new(vec![0.0; 8], 2).is_err());
        assert!(ParamVector::new(vec![4.0, 0.0, 0.0], 2).is_err());
    }

    #[test]
    fn reflection_stays_in_range() {
        for x in [-10.0, -3.5, -PI, 0.0, 3.2, 7.0, 12.9] {
            let r = reflect(x);
            assert!(r.abs() <= PI, "{x} -> {r}");
        }
        assert_eq!(reflect(1.0), 1.0);
    }

    #[test]
    fn golden_section_finds_parabola_minimum() {
        let mut f = |x: f64| -> Result<f64> { Ok((x - 0.3).powi(2)) };
        let (x, fx, _) = golden_section(&mut f, -1.0, 1.0).unwrap();
        assert!((x - 0.3).abs() < 1e-6);
        assert!(fx < 1e-12);
    }

    #[test]
    fn config_validation() {
        assert!(GaConfig::default().validate().is_ok());
        let bad = GaConfig {
            crossover_rate: 1.5,
            ..GaConfig::default()
        };
        assert!(bad.validate().is_err());
        let bad = GaConfig {
            tournament_size: 100,
            ..GaConfig::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn config_defaults_fill_missing_fields() {
        let cfg: GaConfig = serde_json::from_str(r#"{"seed": 9, "generations": 10}"#).unwrap();
        assert_eq!(cfg.seed, 9);
        assert_eq!(cfg.generations, 10);
        assert_eq!(cfg.population_size, 64);
    }

    #[test]
    fn degenerate_spectrum_rejected() {
        let rho =
            DensityMatrix::new(ComplexMatrix::identity(9).scale_real(1.0 / 9.0), 3, 3).unwrap();
        let lam = ComplexMatrix::from_real_diagonal(&[1.0, 1.0, 0.0]);
        assert!(matches!(
            optimize_lqu(&rho, &lam, &GaConfig::default()),
            Err(LquError::DegenerateSpectrum { .. })
        ));
    }

    #[test]
    fn history_is_non_increasing_and_value_consistent() {
        use rand::SeedableRng;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let rho = DensityMatrix::new(random_density(&mut rng, 6), 3, 2).unwrap();
        let lam = ComplexMatrix::from_real_diagonal(&[1.0, -1.0, 0.0]);
        let cfg = GaConfig {
            generations: 40,
            polish_steps: 20,
            ..GaConfig::with_seed(5)
        };
        let res = optimize_lqu(&rho, &lam, &cfg).unwrap();
        assert!(res.history.windows(2).all(|w| w[1] <= w[0]));
        let direct = skew_information_local(&rho, &res.observable).unwrap();
        assert!((direct - res.value).abs() <= 1e-12);
        assert!(res.evaluations > 40);
    }

    #[test]
    fn logarithm_recovers_the_observable() {
        use rand::SeedableRng;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for d in [2usize, 3, 4] {
            let g = build_generators(d).unwrap();
            let lam = ComplexMatrix::from_real_diagonal(
                &(0..d).map(|i| i as f64 * 1.5 - 1.0).collect::<Vec<_>>(),
            );
            for _ in 0..20 {
                let theta: Vec<f64> = (0..g.len()).map(|_| rng.random_range(-0.8..0.8)).collect();
                let v = unitary_from_params(&theta, &g).unwrap();
                let back = params_from_unitary(&v, &lam, &g)
                    .unwrap()
                    .expect("in range");
                let k = observable_from_params(&back, &lam, &g).unwrap();
                assert!(k.max_abs_diff(&v.conjugate(&lam).unwrap()) < 1e-9);
            }
        }
    }
}
