//! Names of the monodromy groups attached to a classified orbit, up to
//! conjugacy in `W`.

use std::fmt;

use serde::Serialize;

use super::classify::{OrbitCase, OrbitClassification};
use super::DynamicsError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GeometricGroup {
    FullW,
    Gr(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ArithmeticGroup {
    SameAsGeometric,
    TildeGr(u32),
    FullW,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum GroupIdentification {
    Identified {
        geometric: GeometricGroup,
        arithmetic: ArithmeticGroup,
    },
    /// The orbit is finite. When `p_{r+1} = q_{r+1}` was seen the statement
    /// gives the resulting upper bound.
    NotApplicableFiniteOrbit { statement: Option<String> },
}

pub fn finite_orbit_statement(r: u32) -> String {
    format!("G^geom ⊂ wG({r})w^-1 and [G^arith : G^arith ∩ wG({r})w^-1] < ∞")
}

pub fn identify_groups(c: &OrbitClassification) -> Result<GroupIdentification, DynamicsError> {
    let full = GroupIdentification::Identified {
        geometric: GeometricGroup::FullW,
        arithmetic: ArithmeticGroup::FullW,
    };
    Ok(match &c.case {
        OrbitCase::CaseA | OrbitCase::CaseB { .. } | OrbitCase::CaseBPrime { .. } => full,
        OrbitCase::CaseC { r, s } if r != s => full,
        OrbitCase::CaseC { r, .. } => GroupIdentification::Identified {
            geometric: GeometricGroup::Gr(*r),
            arithmetic: if c.critical_points_rational {
                ArithmeticGroup::SameAsGeometric
            } else {
                ArithmeticGroup::TildeGr(*r)
            },
        },
        OrbitCase::FiniteOrbit(data) => GroupIdentification::NotApplicableFiniteOrbit {
            statement: data.collision_level.map(finite_orbit_statement),
        },
        OrbitCase::Undetermined { reached } => {
            return Err(DynamicsError::Undetermined { reached: *reached })
        }
    })
}

impl fmt::Display for GeometricGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometricGroup::FullW => write!(f, "W"),
            GeometricGroup::Gr(r) => write!(f, "G({r})"),
        }
    }
}

impl fmt::Display for ArithmeticGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArithmeticGroup::SameAsGeometric => write!(f, "same as geometric"),
            ArithmeticGroup::TildeGr(r) => write!(f, "G~({r})"),
            ArithmeticGroup::FullW => write!(f, "W"),
        }
    }
}

impl fmt::Display for GroupIdentification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupIdentification::Identified {
                geometric,
                arithmetic,
            } => {
                write!(f, "geometric {geometric}, arithmetic {arithmetic}")
            }
            GroupIdentification::NotApplicableFiniteOrbit { statement: Some(s) } => {
                write!(f, "finite orbit: {s}")
            }
            GroupIdentification::NotApplicableFiniteOrbit { statement: None } => {
                write!(f, "finite orbit")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::classify::FiniteOrbitData;

    fn classified(case: OrbitCase, rational: bool) -> OrbitClassification {
        OrbitClassification {
            case,
            critical_points_rational: rational,
            bound: 64,
            iterations: 64,
        }
    }

    fn ident(g: GeometricGroup, a: ArithmeticGroup) -> GroupIdentification {
        GroupIdentification::Identified {
            geometric: g,
            arithmetic: a,
        }
    }

    #[test]
    fn identification_table() {
        let c11 = OrbitCase::CaseC { r: 1, s: 1 };
        assert_eq!(
            identify_groups(&classified(c11.clone(), true)).unwrap(),
            ident(GeometricGroup::Gr(1), ArithmeticGroup::SameAsGeometric)
        );
        assert_eq!(
            identify_groups(&classified(c11, false)).unwrap(),
            ident(GeometricGroup::Gr(1), ArithmeticGroup::TildeGr(1))
        );
        let full = ident(GeometricGroup::FullW, ArithmeticGroup::FullW);
        for case in [
            OrbitCase::CaseC { r: 2, s: 1 },
            OrbitCase::CaseA,
            OrbitCase::CaseB { r: 2, s: 0 },
            OrbitCase::CaseBPrime { r: 1, s: 0 },
        ] {
            for rational in [true, false] {
                assert_eq!(
                    identify_groups(&classified(case.clone(), rational)).unwrap(),
                    full
                );
            }
        }
    }

    #[test]
    fn finite_and_undetermined() {
        let data = FiniteOrbitData {
            p_repeat: Some((2, 1)),
            q_repeat: Some((1, 0)),
            cross: Some((1, 0)),
            collision_level: Some(1),
        };
        let GroupIdentification::NotApplicableFiniteOrbit { statement } =
            identify_groups(&classified(OrbitCase::FiniteOrbit(data), true)).unwrap()
        else {
            panic!("finite orbit expected")
        };
        assert!(statement.unwrap().starts_with("G^geom ⊂ wG(1)w^-1"));
        assert_eq!(
            identify_groups(&classified(OrbitCase::Undetermined { reached: 3 }, true)).unwrap_err(),
            DynamicsError::Undetermined { reached: 3 }
        );
    }
}
