//! Concrete generator families for the orbit types whose group is all of
//! `W`, with the sign computations that prove it.

use serde::Serialize;

use super::classify::OrbitCase;
use super::DynamicsError;
use crate::group::close_subgroup;
use crate::tree::{Definition, Evaluator, Portrait, RecursiveSystem, Word};

/// Largest level at which the closure is enumerated.
pub const CLOSURE_MAX_DEPTH: u32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub case: OrbitCase,
    pub n_max: u32,
    /// `sgn_1 … sgn_{n_max}` of every generator built, by label.
    pub generator_signs: Vec<(String, Vec<i8>)>,
    /// `sgn_1 … sgn_{n_max}` of `c_1 … c_{n_max}`.
    pub c_signs: Vec<Vec<i8>>,
    /// `(label, n)` where a sign differs from the predicted pattern.
    pub mismatches: Vec<(String, u32)>,
    /// `(n, |closure|, |W_n|)` for `n ≤ min(n_max, 3)`.
    pub closures: Vec<(u32, u64, u64)>,
}

impl WitnessReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.closures.iter().all(|(_, got, want)| got == want)
    }
}

fn kronecker(n: u32, i: u32) -> i8 {
    if n == i {
        -1
    } else {
        1
    }
}

fn pair(left: &str, right: Option<&str>, swap: bool) -> Definition {
    Definition::Pair {
        left: Word::single(left),
        right: right.map_or_else(Word::empty, Word::single),
        swap,
    }
}

/// The chain `x_1 = σ`, `x_i = (x_{i-1}, 1)` up to `len`, with one entry
/// optionally overridden.
fn define_chain(sys: &mut RecursiveSystem, x: &str, len: u32, special: Option<(u32, Definition)>) {
    for i in 1..=len {
        let def = match &special {
            Some((k, d)) if *k == i => d.clone(),
            _ if i == 1 => Definition::Sigma,
            _ => pair(&format!("{x}{}", i - 1), None, false),
        };
        sys.define(format!("{x}{i}"), def);
    }
}

/// A family of shape `(main chain, other chain)`, with the main chain being
/// the infinite one, plus the labels under which they should be reported.
struct Family {
    system: RecursiveSystem,
    main_len: u32,
    other_len: u32,
    main_label: &'static str,
    other_label: &'static str,
    /// `(R, S)` for case C with `R > S`.
    merge: Option<(u32, u32)>,
}

fn build_family(case: &OrbitCase, n_max: u32) -> Result<Family, DynamicsError> {
    let mut sys = RecursiveSystem::new();
    let unsupported = || DynamicsError::UnsupportedWitnessCase(case.to_string());
    match *case {
        OrbitCase::CaseA => {
            define_chain(&mut sys, "m", n_max, None);
            define_chain(&mut sys, "o", n_max, None);
            Ok(Family {
                system: sys,
                main_len: n_max,
                other_len: n_max,
                main_label: "p",
                other_label: "q",
                merge: None,
            })
        }
        OrbitCase::CaseB { r, s } | OrbitCase::CaseBPrime { r, s } => {
            if r <= s {
                return Err(unsupported());
            }
            define_chain(&mut sys, "m", n_max, None);
            let head = if s == 0 {
                (1, pair(&format!("o{r}"), None, true))
            } else {
                (
                    s + 1,
                    Definition::Pair {
                        left: Word::single(format!("o{s}")),
                        right: Word::single(format!("o{r}")),
                        swap: false,
                    },
                )
            };
            define_chain(&mut sys, "o", r, Some(head));
            let (main_label, other_label) = if matches!(case, OrbitCase::CaseB { .. }) {
                ("p", "q")
            } else {
                ("q", "p")
            };
            Ok(Family {
                system: sys,
                main_len: n_max,
                other_len: r,
                main_label,
                other_label,
                merge: None,
            })
        }
        OrbitCase::CaseC { r, s } => {
            if r == s {
                return Err(unsupported());
            }
            let (big, small, main_label, other_label) = if r > s {
                (r, s, "p", "q")
            } else {
                (s, r, "q", "p")
            };
            let special = if small == 0 {
                pair(&format!("m{big}"), None, true)
            } else {
                Definition::Pair {
                    left: Word::single(format!("m{big}")),
                    right: Word::single(format!("o{small}")),
                    swap: false,
                }
            };
            let main_len = n_max.max(big + 1);
            define_chain(&mut sys, "m", main_len, Some((big + 1, special)));
            define_chain(&mut sys, "o", small, None);
            Ok(Family {
                system: sys,
                main_len,
                other_len: small,
                main_label,
                other_label,
                merge: Some((big, small)),
            })
        }
        _ => Err(unsupported()),
    }
}

fn signs(g: &Portrait, n_max: u32) -> Result<Vec<i8>, DynamicsError> {
    (1..=n_max).map(|n| Ok(g.sign(n)?)).collect()
}

/// Builds the canonical family for `case` (all conjugating elements trivial),
/// checks its sign patterns for `n, i ≤ n_max`, and enumerates the generated
/// group at small levels.
pub fn witness_full_group(
    case: &OrbitCase,
    n_max: u32,
    max_elements: u64,
) -> Result<WitnessReport, DynamicsError> {
    if n_max == 0 {
        return Err(DynamicsError::ZeroBound);
    }
    let fam = build_family(case, n_max)?;
    let mut ev = Evaluator::new(&fam.system);
    let main: Vec<Portrait> = (1..=fam.main_len)
        .map(|i| ev.eval(&format!("m{i}"), n_max))
        .collect::<Result<_, _>>()?;
    let other: Vec<Portrait> = (1..=fam.other_len)
        .map(|j| ev.eval(&format!("o{j}"), n_max))
        .collect::<Result<_, _>>()?;

    let mut generator_signs = Vec::new();
    let mut mismatches = Vec::new();
    for (idx, g) in main.iter().enumerate() {
        let i = idx as u32 + 1;
        let label = format!("{}{i}", fam.main_label);
        let row = signs(g, n_max)?;
        for n in 1..=n_max {
            let want = match fam.merge {
                Some((big, small)) if i > big => kronecker(n, i) * kronecker(n, i - big + small),
                _ => kronecker(n, i),
            };
            if row[n as usize - 1] != want {
                mismatches.push((label.clone(), n));
            }
        }
        generator_signs.push((label, row));
    }
    for (idx, g) in other.iter().enumerate() {
        let label = format!("{}{}", fam.other_label, idx + 1);
        let row = signs(g, n_max)?;
        if fam.merge.is_some() {
            for n in 1..=n_max {
                if row[n as usize - 1] != kronecker(n, idx as u32 + 1) {
                    mismatches.push((label.clone(), n));
                }
            }
        }
        generator_signs.push((label, row));
    }

    let mut c: Vec<Portrait> = Vec::with_capacity(n_max as usize);
    for i in 1..=n_max {
        let m = &main[i as usize - 1];
        let ci = match fam.merge {
            Some((big, small)) if i > big => m * &c[(i - big + small) as usize - 1],
            _ => m.clone(),
        };
        c.push(ci);
    }
    let mut c_signs = Vec::with_capacity(c.len());
    for (idx, ci) in c.iter().enumerate() {
        let row = signs(ci, n_max)?;
        for n in 1..=n_max {
            if row[n as usize - 1] != kronecker(n, idx as u32 + 1) {
                mismatches.push((format!("c{}", idx + 1), n));
            }
        }
        c_signs.push(row);
    }

    let mut closures = Vec::new();
    for n in 1..=n_max.min(CLOSURE_MAX_DEPTH) {
        let gens: Vec<Portrait> = main
            .iter()
            .chain(&other)
            .map(|g| g.truncate(n))
            .collect::<Result<_, _>>()?;
        let group = close_subgroup(&gens, n, max_elements)?;
        closures.push((n, group.len() as u64, 1u64 << ((1u32 << n) - 1)));
    }

    Ok(WitnessReport {
        case: case.clone(),
        n_max,
        generator_signs,
        c_signs,
        mismatches,
        closures,
    })
}
