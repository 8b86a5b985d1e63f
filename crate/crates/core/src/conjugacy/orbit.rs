//! Conjugacy classes of `G_n` by breadth-first search, with witnesses.

use std::collections::{HashMap, VecDeque};

use super::ConjugacyError;
use crate::group::{close_subgroup, standard_generators, Generator, Generators};
use crate::tree::{conj_in_w, Portrait, WConjugacy};

pub const DEFAULT_ORBIT_BUDGET: usize = 1 << 22;

/// A word in the standard generators. All of them are involutions, so no
/// exponents are needed. The element it denotes is the left-to-right product.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Witness(pub Vec<Generator>);

impl Witness {
    pub fn element(&self, gens: &Generators) -> Portrait {
        self.0
            .iter()
            .fold(Portrait::identity(gens.depth), |acc, g| {
                &acc * &gens.get(*g)
            })
    }

    /// `x · base · x⁻¹` where `x` is [`Witness::element`].
    pub fn apply(&self, base: &Portrait, gens: &Generators) -> Portrait {
        base.conjugate_by(&self.element(gens))
    }
}

/// The `G_n`-conjugacy class of `base`, each element keyed to a witness.
#[derive(Debug, Clone)]
pub struct ConjOrbit {
    pub base: Portrait,
    pub r: u32,
    pub witnesses: HashMap<Portrait, Witness>,
}

impl ConjOrbit {
    pub fn len(&self) -> usize {
        self.witnesses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.witnesses.is_empty()
    }

    pub fn contains(&self, g: &Portrait) -> bool {
        self.witnesses.contains_key(g)
    }

    /// Elements in sorted order.
    pub fn elements(&self) -> Vec<Portrait> {
        let mut out: Vec<Portrait> = self.witnesses.keys().cloned().collect();
        out.sort();
        out
    }

    /// Re-checks every witness by direct computation.
    pub fn verify(&self) -> Result<bool, ConjugacyError> {
        let gens = standard_generators(self.r, self.base.depth())?;
        Ok(self
            .witnesses
            .iter()
            .all(|(g, w)| &w.apply(&self.base, &gens) == g))
    }
}

fn labelled_nontrivial(gens: &Generators) -> Vec<(Generator, Portrait)> {
    gens.labelled()
        .into_iter()
        .filter(|(_, p)| !p.is_identity())
        .collect()
}

/// Explores the class of `g` until it is exhausted or `stop` matches.
fn explore(
    g: &Portrait,
    r: u32,
    budget: usize,
    mut stop: impl FnMut(&Portrait) -> bool,
) -> Result<(HashMap<Portrait, Witness>, Option<Portrait>), ConjugacyError> {
    let gens = standard_generators(r, g.depth())?;
    let steps = labelled_nontrivial(&gens);
    let mut seen: HashMap<Portrait, Witness> = HashMap::new();
    seen.insert(g.clone(), Witness::default());
    if stop(g) {
        return Ok((seen, Some(g.clone())));
    }
    let mut queue = VecDeque::from([g.clone()]);
    while let Some(x) = queue.pop_front() {
        let word = seen[&x].clone();
        for (label, s) in &steps {
            let y = x.conjugate_by(s);
            if seen.contains_key(&y) {
                continue;
            }
            if seen.len() >= budget {
                return Err(ConjugacyError::BudgetExceeded { budget });
            }
            let mut w = Vec::with_capacity(word.0.len() + 1);
            w.push(*label);
            w.extend_from_slice(&word.0);
            seen.insert(y.clone(), Witness(w));
            if stop(&y) {
                return Ok((seen, Some(y)));
            }
            queue.push_back(y);
        }
    }
    Ok((seen, None))
}

/// The full `G_n`-conjugacy class of `g`.
pub fn conj_orbit(g: &Portrait, r: u32, budget: usize) -> Result<ConjOrbit, ConjugacyError> {
    let (witnesses, _) = explore(g, r, budget, |_| false)?;
    Ok(ConjOrbit {
        base: g.clone(),
        r,
        witnesses,
    })
}

/// Some `x ∈ G_n` (as a word) with `x g x⁻¹ = h`, if one exists.
pub fn is_conj_in_g(
    g: &Portrait,
    h: &Portrait,
    r: u32,
    budget: usize,
) -> Result<Option<Witness>, ConjugacyError> {
    if !conj_in_w(g, h)? {
        return Ok(None);
    }
    let (mut seen, found) = explore(g, r, budget, |y| y == h)?;
    Ok(found.map(|y| seen.remove(&y).expect("found element is recorded")))
}

/// Smallest `n ≤ n_max` at which `a_i` and `b_i` stop being conjugate in `G_n`.
pub fn min_level_distinguishing(
    i: u32,
    r: u32,
    n_max: u32,
    budget: usize,
) -> Result<Option<u32>, ConjugacyError> {
    for n in 1..=n_max {
        let gens = standard_generators(r, n)?;
        if is_conj_in_g(&gens.a(i), gens.b(i), r, budget)?.is_none() {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Every element of `G_n` that is `W`-conjugate to `a_i` is `G_n`-conjugate
/// to `a_i` or to `b_i`. The two classes are disjoint once `n` is large
/// enough to separate `a_i` from `b_i`.
pub fn dichotomy_holds(i: u32, r: u32, n: u32, max_elements: u64) -> Result<bool, ConjugacyError> {
    let gens = standard_generators(r, n)?;
    let a = gens.a(i);
    let b = gens.b(i).clone();
    let orbit_a = conj_orbit(&a, r, DEFAULT_ORBIT_BUDGET)?;
    let orbit_b = conj_orbit(&b, r, DEFAULT_ORBIT_BUDGET)?;
    let group = close_subgroup(&gens.nontrivial(), n, max_elements)?;
    let mut decider = WConjugacy::new();
    for g in &group {
        if decider.decide(g, &a)? && !orbit_a.contains(g) && !orbit_b.contains(g) {
            return Ok(false);
        }
    }
    Ok(true)
}
