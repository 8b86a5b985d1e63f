//! Combinatorial type of the postcritical orbit.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::morphism::{CriticalPoints, QuadraticMorphism};
use super::point::ProjPoint;
use super::DynamicsError;

pub const DEFAULT_BOUND: u32 = 64;
pub const DEFAULT_DIGIT_BUDGET: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Number of iterates `p_1 … p_B`, `q_1 … q_B` to examine.
    pub bound: u32,
    /// Iteration stops once a coordinate exceeds this many decimal digits.
    pub digit_budget: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            bound: DEFAULT_BOUND,
            digit_budget: DEFAULT_DIGIT_BUDGET,
        }
    }
}

/// The iterates `p_i = f^i(p_0)`, `q_i = f^i(q_0)` for `i = 0 … len`.
#[derive(Debug, Clone)]
pub struct PostcriticalOrbit {
    pub critical: CriticalPoints,
    pub p: Vec<ProjPoint>,
    pub q: Vec<ProjPoint>,
    /// True when iteration stopped early on the digit budget.
    pub truncated: bool,
}

impl PostcriticalOrbit {
    /// Number of completed iterations.
    pub fn len(&self) -> u32 {
        (self.p.len() - 1) as u32
    }

    pub fn is_empty(&self) -> bool {
        self.p.len() <= 1
    }
}

pub fn postcritical_orbit(
    f: &QuadraticMorphism,
    opts: ClassifyOptions,
) -> Result<PostcriticalOrbit, DynamicsError> {
    if opts.bound == 0 {
        return Err(DynamicsError::ZeroBound);
    }
    let critical = f.critical_points()?;
    let mut p = vec![critical.p0.clone()];
    let mut q = vec![critical.q0.clone()];
    let mut truncated = false;
    for _ in 0..opts.bound {
        let pn = f.eval(p.last().expect("nonempty"), &critical.d);
        let qn = f.eval(q.last().expect("nonempty"), &critical.d);
        if pn.digits().max(qn.digits()) > opts.digit_budget {
            truncated = true;
            break;
        }
        p.push(pn);
        q.push(qn);
    }
    if p.len() == 1 {
        return Err(DynamicsError::DigitBudget {
            budget: opts.digit_budget,
        });
    }
    Ok(PostcriticalOrbit {
        critical,
        p,
        q,
        truncated,
    })
}

/// Data attached to a finite postcritical orbit. Index pairs `(r, s)` mean
/// `x_{r+1} = y_{s+1}` as in the relations found by the classifier.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteOrbitData {
    pub p_repeat: Option<(u32, u32)>,
    pub q_repeat: Option<(u32, u32)>,
    pub cross: Option<(u32, u32)>,
    /// Least `r ≥ 1` with `p_{r+1} = q_{r+1}`, if seen.
    pub collision_level: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "case")]
pub enum OrbitCase {
    /// All `p_i`, `q_j` distinct up to the bound.
    CaseA,
    /// `q_{r+1} = q_{s+1}` with `r > s ≥ 0`.
    CaseB {
        r: u32,
        s: u32,
    },
    /// `p_{r+1} = p_{s+1}` with `r > s ≥ 0`.
    CaseBPrime {
        r: u32,
        s: u32,
    },
    /// `p_{r+1} = q_{s+1}` with `s` minimal.
    CaseC {
        r: u32,
        s: u32,
    },
    FiniteOrbit(FiniteOrbitData),
    /// Nothing found before the digit budget ran out.
    Undetermined {
        reached: u32,
    },
}

impl OrbitCase {
    pub fn code(&self) -> &'static str {
        match self {
            OrbitCase::CaseA => "A",
            OrbitCase::CaseB { .. } => "B",
            OrbitCase::CaseBPrime { .. } => "B'",
            OrbitCase::CaseC { .. } => "C",
            OrbitCase::FiniteOrbit(_) => "finite",
            OrbitCase::Undetermined { .. } => "undetermined",
        }
    }
}

impl fmt::Display for OrbitCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitCase::CaseA => write!(f, "case A"),
            OrbitCase::CaseB { r, s } => write!(f, "case B (r={r}, s={s})"),
            OrbitCase::CaseBPrime { r, s } => write!(f, "case B' (r={r}, s={s})"),
            OrbitCase::CaseC { r, s } => write!(f, "case C (r={r}, s={s})"),
            OrbitCase::FiniteOrbit(data) => match data.collision_level {
                Some(r) => write!(f, "finite orbit (p_{{r+1}} = q_{{r+1}} at r={r})"),
                None => write!(f, "finite orbit"),
            },
            OrbitCase::Undetermined { reached } => {
                write!(f, "undetermined after {reached} iterations")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitClassification {
    pub case: OrbitCase,
    pub critical_points_rational: bool,
    pub bound: u32,
    /// Completed iterations; below `bound` only when the digit budget hit.
    pub iterations: u32,
}

/// First `(r, s)` with `xs[r+1] = xs[s+1]`, `r > s ≥ 0`, minimizing `r`.
fn first_repeat(xs: &[ProjPoint]) -> Option<(u32, u32)> {
    let mut seen: HashMap<&ProjPoint, usize> = HashMap::new();
    for (j, x) in xs.iter().enumerate().skip(1) {
        if let Some(&i) = seen.get(x) {
            return Some((j as u32 - 1, i as u32 - 1));
        }
        seen.insert(x, j);
    }
    None
}

/// `(r, s)` with `p[r+1] = q[s+1]` and `s` minimal.
fn first_cross(p: &[ProjPoint], q: &[ProjPoint]) -> Option<(u32, u32)> {
    let mut index: HashMap<&ProjPoint, usize> = HashMap::new();
    for (i, x) in p.iter().enumerate().skip(1) {
        index.entry(x).or_insert(i);
    }
    q.iter()
        .enumerate()
        .skip(1)
        .find_map(|(j, y)| index.get(y).map(|&i| (i as u32 - 1, j as u32 - 1)))
}

pub fn classify_orbit(orbit: &PostcriticalOrbit, bound: u32) -> OrbitClassification {
    let p_repeat = first_repeat(&orbit.p);
    let q_repeat = first_repeat(&orbit.q);
    let cross = first_cross(&orbit.p, &orbit.q);
    let iterations = orbit.len();
    let finite = (p_repeat.is_some() && q_repeat.is_some())
        || (cross.is_some() && (p_repeat.is_some() || q_repeat.is_some()));
    let case = if finite {
        let collision_level = (2..orbit.p.len())
            .find(|&i| orbit.p[i] == orbit.q[i])
            .map(|i| i as u32 - 1);
        OrbitCase::FiniteOrbit(FiniteOrbitData {
            p_repeat,
            q_repeat,
            cross,
            collision_level,
        })
    } else if let Some((r, s)) = cross {
        OrbitCase::CaseC { r, s }
    } else if let Some((r, s)) = q_repeat {
        OrbitCase::CaseB { r, s }
    } else if let Some((r, s)) = p_repeat {
        OrbitCase::CaseBPrime { r, s }
    } else if iterations >= bound {
        OrbitCase::CaseA
    } else {
        OrbitCase::Undetermined {
            reached: iterations,
        }
    };
    OrbitClassification {
        case,
        critical_points_rational: orbit.critical.rational,
        bound,
        iterations,
    }
}

/// Iterates both critical points and reports the first matching case.
/// Relations are exact; distinctness is only known up to `opts.bound`.
pub fn orbit_classify(
    f: &QuadraticMorphism,
    opts: ClassifyOptions,
) -> Result<OrbitClassification, DynamicsError> {
    let orbit = postcritical_orbit(f, opts)?;
    Ok(classify_orbit(&orbit, opts.bound))
}
