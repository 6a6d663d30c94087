//! Five-point finite-difference Dirichlet eigenvalues on planar regions.

mod eigen;
mod laplacian;
mod richardson;

pub use eigen::{
    cg_tolerance, conjugate_gradient, smallest_eigenpairs, smallest_eigenvalues, tridiagonal_eigen,
    CgReport, EigenPairs, MAX_EIGENVALUES,
};
pub use laplacian::{assemble, DiscreteLaplacian, NODE_BUDGET};
pub use richardson::{
    default_mesh, extrapolate, richardson_estimate, Extrapolation, DEFAULT_MESH_DIVISIONS, DEFAULT_REL_TOL,
};

use crate::spectrum::SpectrumError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SolverError {
    #[error("mesh width {0} leaves no interior grid nodes")]
    MeshTooCoarse(f64),
    #[error("mesh width {h} exceeds {limit} (an eighth of the smallest extent)")]
    MeshPrecondition { h: f64, limit: f64 },
    #[error("{nodes} grid nodes exceed the budget of {budget}")]
    NodeBudget { nodes: usize, budget: usize },
    #[error("requested {k} eigenvalues, allowed 1..={max}")]
    BadCount { k: usize, max: usize },
    #[error("relative tolerance {0} must lie in [1e-10, 1)")]
    BadTolerance(f64),
    #[error("Richardson extrapolation needs at least 2 mesh widths, got {0}")]
    TooFewMeshes(usize),
    #[error("conjugate gradient stalled after {iterations} iterations at relative residual {residual:e}")]
    CgNoConvergence { iterations: usize, residual: f64 },
    #[error("tridiagonal QL iteration did not converge")]
    TridiagonalNoConvergence,
    #[error("Lanczos did not converge; achieved relative residuals {achieved:?}")]
    NoConvergence { achieved: Vec<f64> },
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
}
