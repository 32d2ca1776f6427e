//! Floating-point experiments on `SL_n(R)/SL_n(Z)` for `n = 2, 3`:
//! translated unipotent slices, closed horocycles and long diagonal orbits.
//!
//! Preconditions that concern the exact Lie-theoretic data (cone membership,
//! horospherical conditions, floors) are decided by `expcone-core`.

pub mod experiments;
pub mod haar;
pub mod lattice;
pub mod quadrature;
pub mod sampling;
pub mod test_function;

use expcone_core::CoreError;
use thiserror::Error;

pub use experiments::{
    nonescape_profile, periodic_orbit_average, pointwise_rate, translate_average, ExperimentResult,
    OracleSource, PeriodicParams, PointwiseParams, Row, Summary,
};
pub use haar::{haar_sample_sl2, HaarSample};
pub use lattice::LatticePoint;
pub use sampling::SliceSpec;
pub use test_function::{haar_mean, siegel_expectation, TestFunction};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("numerically degenerate lattice basis")]
    DegenerateBasis,
    #[error("unsupported dimension n = {0}; only n = 2, 3 are implemented")]
    UnsupportedDimension(usize),
    #[error("invalid experiment spec: {0}")]
    InvalidSpec(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    UnsupportedKind(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}
