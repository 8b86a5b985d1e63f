//! Postcritical orbits of quadratic rational maps over `ℚ` and the
//! monodromy groups they determine.

mod classify;
mod groups;
mod morphism;
mod point;
mod scalar;
mod witness;

pub use classify::{
    classify_orbit, orbit_classify, postcritical_orbit, ClassifyOptions, FiniteOrbitData,
    OrbitCase, OrbitClassification, PostcriticalOrbit, DEFAULT_BOUND, DEFAULT_DIGIT_BUDGET,
};
pub use groups::{
    finite_orbit_statement, identify_groups, ArithmeticGroup, GeometricGroup, GroupIdentification,
};
pub use morphism::{CriticalPoints, QuadraticMorphism};
pub use point::ProjPoint;
pub use scalar::QuadExtScalar;
pub use witness::{witness_full_group, WitnessReport, CLOSURE_MAX_DEPTH};

use thiserror::Error;

use crate::group::GroupError;
use crate::tree::TreeError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DynamicsError {
    #[error("the map is not of degree 2")]
    Degenerate,
    #[error("bad coefficients: {0}")]
    CoefficientParse(String),
    #[error("the bound must be at least 1")]
    ZeroBound,
    #[error("coefficients exceed {budget} digits before the first iteration")]
    DigitBudget { budget: u64 },
    #[error("classification undetermined after {reached} iterations")]
    Undetermined { reached: u32 },
    #[error("no witness family for {0}")]
    UnsupportedWitnessCase(String),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Group(#[from] GroupError),
}
