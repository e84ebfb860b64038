//! Finite lattice windows of the p^2-unramified building with Hecke
//! operators, the directed edge correspondence, the ascent relation A,
//! the block map psi, two independent kernel solvers, and the n=2
//! sequence matrices.

use thiserror::Error;

pub mod chow;
pub mod hecke;
pub mod ihara;
pub mod model;
pub mod window;

pub use chow::{
    chow_kernel_divisor, chow_kernel_matrix, psi_matrix, solvers_agree, AgreementReport,
    ChowKernel, DivisorSolution, PsiMatrix,
};
pub use hecke::{hecke_operator, CommutationReport, ComposedOperator, HeckeOperator};
pub use ihara::{ihara_n2_matrices, IharaMatrices};
pub use model::{
    fl_field, CoeffChar, EdgeFunction, Regularity, ToyModel, VertexFunction,
};
pub use window::{
    build_window, build_window_unguarded, full_degree, BuildingWindow, Signature, GUARD_N,
    GUARD_P, GUARD_R,
};

#[derive(Debug, Error)]
pub enum BuildingError {
    #[error("window exceeds the size guard (n <= {GUARD_N}, p <= {GUARD_P}, r <= {GUARD_R}); use the unguarded entry point to override")]
    SizeGuard,
    #[error("parameters out of range: {0}")]
    ParamRange(String),
    #[error("operator reach leaves the window: {0}")]
    MarginViolation(String),
    #[error("coefficient prime {l} is not admissible for (n, p) = ({n}, {p}): need a prime not dividing p(p^(2n-2)-1)")]
    BadCoefficient { l: u64, n: usize, p: u64 },
    #[error("operation requires an n = 2 model, got n = {0}")]
    NotRankTwo(usize),
    #[error("model error: {0}")]
    Model(String),
    #[error(transparent)]
    Math(#[from] exactmath::MathError),
}

pub type Result<T> = std::result::Result<T, BuildingError>;
