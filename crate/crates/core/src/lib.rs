//! Dirichlet Laplacian spectra of convex Euclidean domains and numerical
//! checks of universal eigenvalue inequalities.
//!
//! * [`special`]: Bessel functions, their first zeros, Gamma and unit-ball volumes.
//! * [`box_spectrum`]: exact spectra of orthotopes by lattice enumeration.
//! * [`geometry`]: convex polygons, Chebyshev inradius, MVEE and the orthotope sandwich.
//! * [`fem`]: five-point finite-difference eigenvalues for planar domains.
//! * [`bounds`]: constants and inequality checkers producing [`BoundReport`]s.
//! * [`replay`]: numerical re-execution of the packing arguments on boxes.
//! * [`corpus`]: seeded random domain generators.
//!
//! Every routine is generic over [`Real`]; the `*64` aliases below fix `f64`.

pub mod bounds;
pub mod box_spectrum;
pub mod corpus;
pub mod fem;
pub mod geometry;
pub mod replay;
pub mod scalar;
pub mod special;
pub mod spectrum;

pub use bounds::{BoundReport, Bounds, InequalityId, MarginKind, UniversalConstants};
pub use box_spectrum::Orthotope;
pub use geometry::{ConvexPolygon, Ellipsoid, SandwichResult};
pub use replay::{ReplayStatus, ReplayStep, ReplayTranscript, SeparatedSet};
pub use scalar::Real;
pub use spectrum::{Spectrum, SpectrumSource};

pub type Orthotope64 = Orthotope<f64>;
pub type Spectrum64 = Spectrum<f64>;
pub type ConvexPolygon64 = ConvexPolygon<f64>;
pub type Ellipsoid64 = Ellipsoid<f64>;
pub type SandwichResult64 = SandwichResult<f64>;
pub type BoundReport64 = BoundReport<f64>;
pub type Bounds64 = Bounds<f64>;
pub type UniversalConstants64 = UniversalConstants<f64>;
pub type ReplayTranscript64 = ReplayTranscript<f64>;

/// Crate-wide error, wrapping the per-module errors.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Special(#[from] special::SpecialError),
    #[error(transparent)]
    Spectrum(#[from] spectrum::SpectrumError),
    #[error(transparent)]
    Box(#[from] box_spectrum::SpectrumBuildError),
    #[error(transparent)]
    Geometry(#[from] geometry::GeometryError),
    #[error(transparent)]
    Solver(#[from] fem::SolverError),
    #[error(transparent)]
    Bounds(#[from] bounds::BoundsError),
    #[error(transparent)]
    Replay(#[from] replay::ReplayError),
}
