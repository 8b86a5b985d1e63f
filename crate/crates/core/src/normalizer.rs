//! Elements of the normalizer `N(r)` of `G(r)` and the extension `G̃(r)`.
//!
//! ```text
//! w_1     = (1, b_r)
//! w_{i+1} = (w_i, w_i)
//! w̃       = (w̃, b_r w̃)
//! ```
//!
//! Cosets of `G(r)` in `N(r)` are indexed by finitely supported vectors `k`
//! through `φ(k) = w_1^{k_1} w_2^{k_2} ⋯`.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::group::{close_subgroup, group_system, is_member, standard_generators, GroupError};
use crate::tree::{Definition, Evaluator, Letter, Portrait, RecursiveSystem, Word};

/// Symbol used for `w̃` in [`normalizer_system`].
pub const TILDE_W: &str = "wt";

/// The generator system of `G(r)` extended by `w_1 … w_{i_max}` and `w̃`.
pub fn normalizer_system(r: u32, i_max: u32) -> Result<RecursiveSystem, GroupError> {
    let mut sys = group_system(r, i_max)?;
    let b_r = format!("b{r}");
    sys.define(
        "w1",
        Definition::Pair {
            left: Word::empty(),
            right: Word::single(&b_r),
            swap: false,
        },
    );
    for i in 2..=i_max {
        let prev = Word::single(format!("w{}", i - 1));
        sys.define(
            format!("w{i}"),
            Definition::Pair {
                left: prev.clone(),
                right: prev,
                swap: false,
            },
        );
    }
    sys.define(
        TILDE_W,
        Definition::Pair {
            left: Word::single(TILDE_W),
            right: Word(vec![Letter::new(b_r), Letter::new(TILDE_W)]),
            swap: false,
        },
    );
    Ok(sys)
}

/// `w_1 … w_{i_max}` at depth `n`.
pub fn w_elements(r: u32, i_max: u32, n: u32) -> Result<Vec<Portrait>, GroupError> {
    let sys = normalizer_system(r, i_max)?;
    let mut ev = Evaluator::new(&sys);
    Ok((1..=i_max)
        .map(|i| ev.eval(&format!("w{i}"), n))
        .collect::<Result<Vec<_>, _>>()?)
}

/// `w̃` at depth `n`.
pub fn tilde_w(r: u32, n: u32) -> Result<Portrait, GroupError> {
    Ok(normalizer_system(r, 1)?.eval(TILDE_W, n)?)
}

/// Support of a finitely supported `F₂`-vector, indices starting at 1.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PhiVector(BTreeSet<u32>);

impl PhiVector {
    /// Panics on index 0.
    pub fn new(support: impl IntoIterator<Item = u32>) -> Self {
        let set: BTreeSet<u32> = support.into_iter().collect();
        assert!(!set.contains(&0), "support indices start at 1");
        PhiVector(set)
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// `(1, 1, …, 1, 0, …)` with `m` ones.
    pub fn ones(m: u32) -> Self {
        PhiVector::new(1..=m)
    }

    pub fn support(&self) -> &BTreeSet<u32> {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_index(&self) -> u32 {
        self.0.iter().next_back().copied().unwrap_or(0)
    }

    /// `(k_2, k_3, …)`.
    pub fn shift(&self) -> Self {
        PhiVector(self.0.iter().filter(|&&i| i > 1).map(|i| i - 1).collect())
    }

    /// All nonzero vectors supported in `{1 … m}`, in increasing binary order.
    pub fn nonzero_up_to(m: u32) -> Vec<PhiVector> {
        (1u64..1 << m)
            .map(|mask| PhiVector::new((1..=m).filter(|i| mask >> (i - 1) & 1 == 1)))
            .collect()
    }
}

impl fmt::Display for PhiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

/// `φ(k)` at depth `n`.
pub fn phi(k: &PhiVector, r: u32, n: u32) -> Result<Portrait, GroupError> {
    let top = k.max_index();
    if top == 0 {
        return Ok(Portrait::identity(n));
    }
    let ws = w_elements(r, top, n)?;
    Ok(k.support()
        .iter()
        .fold(Portrait::identity(n), |acc, &i| &acc * &ws[i as usize - 1]))
}

/// Checks `φ(k) = w_1^{k_1} · (φ(k'), φ(k'))` with `k'` the shifted vector.
pub fn phi_recursion_holds(k: &PhiVector, r: u32, n: u32) -> Result<bool, GroupError> {
    if n == 0 {
        return Ok(true);
    }
    let tail = phi(&k.shift(), r, n - 1)?;
    let mut rhs = Portrait::pair(&tail, &tail, false)?;
    if k.support().contains(&1) {
        rhs = &w_elements(r, 1, n)?[0] * &rhs;
    }
    Ok(phi(k, r, n)? == rhs)
}

/// Whether conjugation by `w` preserves `G_n`, tested on the generators.
pub fn normalizes(w: &Portrait, r: u32) -> Result<bool, GroupError> {
    let gens = standard_generators(r, w.depth())?;
    let w_inv = w.inverse();
    Ok(gens
        .nontrivial()
        .iter()
        .all(|g| is_member(&g.conjugate_by(w), r) && is_member(&g.conjugate_by(&w_inv), r)))
}

/// For every nonzero `k` supported in `{1 … m}`, the least `n ≤ n_max` with
/// `φ(k) ∉ G_n`.
pub fn coset_independence(
    r: u32,
    m: u32,
    n_max: u32,
) -> Result<Vec<(PhiVector, Option<u32>)>, GroupError> {
    let mut out = Vec::new();
    for k in PhiVector::nonzero_up_to(m) {
        let deepest = phi(&k, r, n_max)?;
        let mut found = None;
        for n in 0..=n_max {
            if !is_member(&deepest.truncate(n)?, r) {
                found = Some(n);
                break;
            }
        }
        out.push((k, found));
    }
    Ok(out)
}

/// Whether `[w_i, w_j] ∈ G_n` for all `1 ≤ i < j ≤ m`.
pub fn commutators_in_g(r: u32, m: u32, n: u32) -> Result<bool, GroupError> {
    let ws = w_elements(r, m, n)?;
    for i in 0..ws.len() {
        for j in i + 1..ws.len() {
            if !is_member(&ws[i].commutator(&ws[j]), r) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Membership in `G̃(r)_n = G_n ∪ G_n w̃`.
pub fn tilde_member(g: &Portrait, r: u32) -> Result<bool, GroupError> {
    if is_member(g, r) {
        return Ok(true);
    }
    let wt = tilde_w(r, g.depth())?;
    Ok(is_member(&(g * &wt.inverse()), r))
}

/// `Norm_{W_n}(G_n)` by exhaustive search; `n ≤ 3` only.
pub fn normalizer_brute_force(r: u32, n: u32) -> Result<Vec<Portrait>, GroupError> {
    assert!(n <= 3, "exhaustive normalizer search is limited to n <= 3");
    let mut out = Vec::new();
    for x in Portrait::all(n) {
        if normalizes(&x, r)? {
            out.push(x);
        }
    }
    Ok(out)
}

/// The subgroup of `W_n` generated by `G_n` and `w_1 … w_n`.
pub fn normalizer_image(r: u32, n: u32, max_elements: u64) -> Result<Vec<Portrait>, GroupError> {
    let mut gens = standard_generators(r, n)?.nontrivial();
    gens.extend(w_elements(r, n.max(1), n)?);
    close_subgroup(&gens, n, max_elements)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalizerReport {
    pub r: u32,
    pub n: u32,
    pub i_max: u32,
    /// `(name, normalizes G_n)` for `w_1 … w_{i_max}` and `w̃`.
    pub normalizes: Vec<(String, bool)>,
    pub commutators_ok: bool,
    pub tilde_sq_in_g: bool,
    pub w1_conjugates_a1_to_b1: bool,
    /// `(support, level)` per nonzero vector supported in `{1 … i_max}`.
    pub independence_levels: Vec<(Vec<u32>, Option<u32>)>,
}

impl NormalizerReport {
    /// The pass/fail part of the report; independence levels are informational.
    pub fn passed(&self) -> bool {
        self.normalizes.iter().all(|(_, ok)| *ok)
            && self.commutators_ok
            && self.tilde_sq_in_g
            && self.w1_conjugates_a1_to_b1
    }
}

pub fn normalizer_report(r: u32, n: u32, i_max: u32) -> Result<NormalizerReport, GroupError> {
    let ws = w_elements(r, i_max, n)?;
    let wt = tilde_w(r, n)?;
    let mut normalizes_list = Vec::new();
    for (i, w) in ws.iter().enumerate() {
        normalizes_list.push((format!("w{}", i + 1), normalizes(w, r)?));
    }
    normalizes_list.push((TILDE_W.to_string(), normalizes(&wt, r)?));
    let gens = standard_generators(r, n)?;
    let w1_ok = n == 0 || gens.a(1).conjugate_by(&ws[0].inverse()) == *gens.b(1);
    let independence_levels = coset_independence(r, i_max, n)?
        .into_iter()
        .map(|(k, level)| (k.support().iter().copied().collect(), level))
        .collect();
    Ok(NormalizerReport {
        r,
        n,
        i_max,
        normalizes: normalizes_list,
        commutators_ok: commutators_in_g(r, i_max, n)?,
        tilde_sq_in_g: is_member(&(&wt * &wt), r),
        w1_conjugates_a1_to_b1: w1_ok,
        independence_levels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{enumerate_level, DEFAULT_MAX_ELEMENTS};

    #[test]
    fn w_shapes() {
        for r in 1..=3 {
            let n = r + 1;
            let ws = w_elements(r, 5, n).unwrap();
            let (swap, left, right) = ws[0].sections().unwrap();
            assert!(!swap && left.is_identity());
            assert_eq!(&right, standard_generators(r, r).unwrap().b(r));
            let below = w_elements(r, 5, n - 1).unwrap();
            assert_eq!(ws[1], Portrait::pair(&below[0], &below[0], false).unwrap());
            assert!(w_elements(r, 5, 4).unwrap()[4].is_identity());
            for (i, w) in w_elements(r, 6, 6).unwrap().iter().enumerate() {
                assert!((w * w).is_identity());
                if i + 1 >= 6 {
                    assert!(w.is_identity());
                }
            }
        }
    }

    #[test]
    fn phi_examples() {
        assert!(phi(&PhiVector::zero(), 2, 5).unwrap().is_identity());
        let ws = w_elements(2, 2, 5).unwrap();
        assert_eq!(phi(&PhiVector::new([1]), 2, 5).unwrap(), ws[0]);
        assert_eq!(phi(&PhiVector::new([1, 2]), 2, 5).unwrap(), &ws[0] * &ws[1]);
        for k in PhiVector::nonzero_up_to(5) {
            for n in 0..=8 {
                assert!(phi_recursion_holds(&k, 2, n).unwrap());
            }
        }
        assert_eq!(PhiVector::new([1, 3]).shift(), PhiVector::new([2]));
        assert_eq!(PhiVector::nonzero_up_to(3).len(), 7);
    }

    #[test]
    fn w1_conjugates_a1_to_b1() {
        for r in 1..=3 {
            for n in 1..=10 {
                let g = standard_generators(r, n).unwrap();
                let w1 = &w_elements(r, 1, n).unwrap()[0];
                assert_eq!(&(&w1.inverse() * &g.a(1)) * w1, *g.b(1));
            }
        }
    }

    #[test]
    fn normalizing_elements() {
        for r in 1..=3 {
            let g = standard_generators(r, 8).unwrap();
            assert!(normalizes(g.b(1), r).unwrap());
            for w in w_elements(r, 5, 8).unwrap() {
                assert!(normalizes(&w, r).unwrap());
            }
            assert!(normalizes(&tilde_w(r, 8).unwrap(), r).unwrap());
        }
        // Found by seeded random search.
        for (hex, n, r) in [("b6", 3, 1), ("fc30", 4, 2), ("686e0780", 5, 3)] {
            let x = Portrait::from_hex(hex, n).unwrap();
            assert!(!normalizes(&x, r).unwrap());
        }
    }

    #[test]
    fn independence_levels() {
        let levels = coset_independence(1, 1, 6).unwrap();
        assert_eq!(levels, vec![(PhiVector::new([1]), Some(2))]);
        for (k, level) in coset_independence(2, 3, 8).unwrap() {
            assert!(level.is_some(), "{k}");
        }
    }

    #[test]
    fn tilde_w_recursion_and_square() {
        for r in 1..=3 {
            for n in 1..=8 {
                let wt = tilde_w(r, n).unwrap();
                let (swap, left, right) = wt.sections().unwrap();
                let below = tilde_w(r, n - 1).unwrap();
                let b_r = standard_generators(r, n - 1).unwrap().b(r).clone();
                assert!(!swap);
                assert_eq!(left, below);
                assert_eq!(right, &b_r * &below);
                assert!(is_member(&(&wt * &wt), r));
            }
        }
    }

    #[test]
    fn tilde_membership_partitions() {
        let r = 1;
        let n = 4;
        let wt = tilde_w(r, n).unwrap();
        assert!(!is_member(&wt, r));
        let level = enumerate_level(r, n, DEFAULT_MAX_ELEMENTS).unwrap();
        for g in &level.elements {
            let shifted = g * &wt;
            assert!(tilde_member(&shifted, r).unwrap());
            assert!(!is_member(&shifted, r));
        }
    }

    #[test]
    fn brute_force_normalizer_small() {
        for r in 1..=3 {
            for n in 1..=3 {
                let brute = normalizer_brute_force(r, n).unwrap();
                let image = normalizer_image(r, n, DEFAULT_MAX_ELEMENTS).unwrap();
                assert_eq!(brute, image, "r={r} n={n}");
            }
        }
    }
}
