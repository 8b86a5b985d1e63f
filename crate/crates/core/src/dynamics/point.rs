//! Points of the projective line over `ℚ(√d)`.

use std::fmt;

use super::scalar::QuadExtScalar;

/// `(x : 1)` or `(1 : 0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ProjPoint {
    Finite(QuadExtScalar),
    Infinity,
}

impl ProjPoint {
    /// The point `(x : y)`; `None` when both coordinates vanish.
    pub fn from_homogeneous(x: &QuadExtScalar, y: &QuadExtScalar) -> Option<Self> {
        if y.is_zero() {
            (!x.is_zero()).then_some(ProjPoint::Infinity)
        } else {
            x.checked_div(y).map(ProjPoint::Finite)
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, ProjPoint::Infinity)
    }

    pub fn is_rational(&self) -> bool {
        match self {
            ProjPoint::Finite(x) => x.is_rational(),
            ProjPoint::Infinity => true,
        }
    }

    pub fn digits(&self) -> u64 {
        match self {
            ProjPoint::Finite(x) => x.digits(),
            ProjPoint::Infinity => 0,
        }
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjPoint::Finite(x) => write!(f, "{x}"),
            ProjPoint::Infinity => f.write_str("inf"),
        }
    }
}
