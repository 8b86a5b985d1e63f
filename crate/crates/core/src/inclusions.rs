//! The chain `G(r') ⊂ N(r') ⊂ G(r)` for `r' < r`, checked on generators.

use serde::Serialize;

use crate::group::{is_member, order_log2, standard_generators, GroupError};
use crate::normalizer::{tilde_w, w_elements, TILDE_W};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InclusionReport {
    pub r_small: u32,
    pub r_big: u32,
    pub n_max: u32,
    pub elements_checked: usize,
    /// `(element, depth)` pairs that fell outside `G(r_big)`.
    pub failures: Vec<(String, u32)>,
}

impl InclusionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Tests the generators of `G(r_small)`, `w'_1 … w'_{n_max}` and `w̃'` for
/// membership in `G(r_big)` at every depth up to `n_max`.
pub fn inclusion_report(
    r_small: u32,
    r_big: u32,
    n_max: u32,
) -> Result<InclusionReport, GroupError> {
    let mut failures = Vec::new();
    let mut checked = 0;
    for n in 1..=n_max {
        let mut elements: Vec<(String, _)> = standard_generators(r_small, n)?
            .labelled()
            .into_iter()
            .map(|(g, p)| (g.to_string(), p))
            .collect();
        for (i, w) in w_elements(r_small, n_max, n)?.into_iter().enumerate() {
            elements.push((format!("w{}", i + 1), w));
        }
        elements.push((TILDE_W.to_string(), tilde_w(r_small, n)?));
        for (name, p) in elements {
            checked += 1;
            if !is_member(&p, r_big) {
                failures.push((name, n));
            }
        }
    }
    Ok(InclusionReport {
        r_small,
        r_big,
        n_max,
        elements_checked: checked,
        failures,
    })
}

pub fn check_inclusion(r_small: u32, r_big: u32, n_max: u32) -> Result<bool, GroupError> {
    Ok(inclusion_report(r_small, r_big, n_max)?.passed())
}

/// A level at which `G(r_big)` is strictly larger than `G(r_small)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Refutation {
    pub n: u32,
    pub small_log2: u128,
    pub big_log2: u128,
}

/// The least level at which `|G(r_big)_n| > |G(r_small)_n|`, which rules out
/// `G(r_big) ⊂ G(r_small)` even up to conjugacy. `None` when no level up to
/// `r_big + 1` shows a difference (in particular when the ranks agree).
pub fn refute_reverse(r_small: u32, r_big: u32) -> Option<Refutation> {
    (1..=r_big + 1).find_map(|n| {
        let small_log2 = order_log2(r_small, n);
        let big_log2 = order_log2(r_big, n);
        (big_log2 > small_log2).then_some(Refutation {
            n,
            small_log2,
            big_log2,
        })
    })
}
