//! Exact combinatorics of expanding cones for parabolic subgroups of
//! classical groups.
//!
//! All arithmetic in this crate is over `BigRational`.

pub mod cone;
pub mod error;
pub mod expanding;
pub mod linalg;
pub mod rational;
pub mod restricted;
pub mod root_system;
pub mod serialize;

pub use cone::{cone_from_generators, Cone, DistanceReport, Mode};
pub use error::{CoreError, Result};
pub use expanding::{
    block_flow, drift_distance, expanding_cone, floor, floor_prime, horospherical_roots,
    hplus_contained_in_u, is_expanding, restricted_cone_check, DriftReport, ExpandingCone,
    FloorPrime, FlowDirection, RestrictedConeCheck,
};
pub use rational::{QVec, Rational};
pub use restricted::{restrict_system, DiagramAutomorphism, RestrictedSystem};
pub use root_system::{
    parabolic_roots, weight_scale, CartanVector, Covector, Family, ParabolicData, RootSystem,
};
