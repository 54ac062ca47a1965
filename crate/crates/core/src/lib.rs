//! Local quantum uncertainty (LQU) of bipartite quantum states.
//!
//! The crate provides
//!
//! * the closed-form lower bound `α²(2/d₁ − λ_max(W))` obtained by relaxing the
//!   fixed-spectrum constraint on the local observable ([`lower_bound`]),
//! * the exact qubit closed form `1 − λ_max(W)` for 2×d states
//!   ([`closed_form_2xd`]),
//! * the optimized LQU, minimizing the Wigner–Yanase skew information over
//!   `V Λ V^†` with `V ∈ SU(d₁)` by a seeded genetic algorithm
//!   ([`optimize_lqu`]),
//! * the generalized Gell-Mann basis of `su(d)` with its structure constants,
//! * benchmark states (isotropic, Horodecki PPT families, dephased Bell state).

pub mod error;
pub mod generators;
pub mod linalg;
pub mod lqu;
pub mod optimizer;
pub mod states;

pub use error::{LquError, Result};
pub use generators::{
    build_generators, check_spectrum_invariance, spectrum_decompose, structure_constants,
    GeneratorSet, SpectrumDecomposition, StructureConstants,
};
pub use linalg::{
    hermitian_eigendecompose, kron, sqrt_psd, trace_product, ComplexMatrix, HermitianEig, C64,
};
pub use lqu::{
    closed_form_2xd, l_vector, lower_bound, skew_information, skew_information_local, w_matrix,
    BoundContext, DensityMatrix, LowerBoundReport,
};
pub use optimizer::{
    observable_from_params, optimize_lqu, params_from_unitary, unitary_from_params, GaConfig,
    OptimizeResult, ParamVector,
};
pub use states::{Channel, StateSpec};
