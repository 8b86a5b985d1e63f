//! Conjugacy inside the finite quotients `G_n`, and recognition of generator
//! families that are simultaneously conjugate to the standard ones.

mod orbit;
mod semirigid;

pub use orbit::{
    conj_orbit, dichotomy_holds, is_conj_in_g, min_level_distinguishing, ConjOrbit, Witness,
    DEFAULT_ORBIT_BUDGET,
};
pub use semirigid::{
    recognize_type_c, recognize_type_c_with_order, CandidateFamily, TypeCConjugator,
};

use thiserror::Error;

use crate::group::{Generator, GroupError};
use crate::tree::TreeError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConjugacyError {
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("conjugacy orbit exceeded the budget of {budget} elements")]
    BudgetExceeded { budget: usize },
    #[error("{member} does not have the required shape at depth {depth}")]
    ShapeViolation { member: Generator, depth: u32 },
    #[error("the family's product is not the identity at depth {depth}")]
    ProductViolation { depth: u32 },
    #[error("family has {found_a} a-elements and {found_b} b-elements, expected {expected_a} and {expected_b}")]
    FamilySize {
        expected_a: usize,
        found_a: usize,
        expected_b: usize,
        found_b: usize,
    },
    #[error("product order must list every family member exactly once")]
    BadOrder,
}
