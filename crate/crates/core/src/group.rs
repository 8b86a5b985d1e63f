//! The groups `G(r)`: generators, finite quotients `G_n`, membership and the
//! structural checks on them.
//!
//! Generators:
//!
//! ```text
//! a_1     = σ
//! a_{r+1} = (a_r, b_r)
//! a_i     = (a_{i-1}, 1)                 i > 1, i ≠ r + 1
//! b_1     = (b_r, b_r⁻¹) σ
//! b_j     = (b_r b_{j-1} b_r⁻¹, 1)       1 < j ≤ r
//! ```

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::tree::{
    Definition, Evaluator, Letter, Portrait, RecursiveSystem, TreeError, VertexPath, Word,
};

/// Default cap on the number of elements [`enumerate_level`] will hold.
pub const DEFAULT_MAX_ELEMENTS: u64 = 1 << 25;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error("r must be at least 1")]
    ZeroRank,
    #[error("group of order 2^{log2_order} exceeds the budget of {max_elements} elements")]
    BudgetExceeded { log2_order: u128, max_elements: u64 },
    #[error("closure exceeded the budget of {max_elements} elements")]
    ClosureBudget { max_elements: u64 },
    #[error("depth {depth} is below r = {r}")]
    DepthBelowRank { depth: u32, r: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Generator {
    A(u32),
    B(u32),
}

impl Generator {
    pub fn symbol(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::A(i) => write!(f, "a{i}"),
            Generator::B(j) => write!(f, "b{j}"),
        }
    }
}

fn pair_def(left: Word, right: Word, swap: bool) -> Definition {
    Definition::Pair { left, right, swap }
}

/// The recursive system defining `a_1 … a_{i_max}` and `b_1 … b_r`.
pub fn group_system(r: u32, i_max: u32) -> Result<RecursiveSystem, GroupError> {
    if r == 0 {
        return Err(GroupError::ZeroRank);
    }
    let a = |i: u32| format!("a{i}");
    let b = |j: u32| format!("b{j}");
    let mut sys = RecursiveSystem::new();
    // a_{r+1} needs a_r even when i_max is smaller.
    let top = i_max.max(r + 1);
    for i in 1..=top {
        let def = if i == 1 {
            Definition::Sigma
        } else if i == r + 1 {
            pair_def(Word::single(a(r)), Word::single(b(r)), false)
        } else {
            pair_def(Word::single(a(i - 1)), Word::empty(), false)
        };
        sys.define(a(i), def);
    }
    sys.define(
        b(1),
        pair_def(Word::single(b(r)), Word(vec![Letter::inv(b(r))]), true),
    );
    for j in 2..=r {
        sys.define(
            b(j),
            pair_def(
                Word(vec![
                    Letter::new(b(r)),
                    Letter::new(b(j - 1)),
                    Letter::inv(b(r)),
                ]),
                Word::empty(),
                false,
            ),
        );
    }
    Ok(sys)
}

/// `r` together with its generator system.
#[derive(Debug, Clone)]
pub struct GroupSpec {
    pub r: u32,
    pub system: RecursiveSystem,
}

impl GroupSpec {
    pub fn new(r: u32, i_max: u32) -> Result<Self, GroupError> {
        Ok(GroupSpec {
            r,
            system: group_system(r, i_max)?,
        })
    }

    pub fn generators(&self, n: u32) -> Result<Generators, GroupError> {
        Generators::from_system(&self.system, self.r, n)
    }
}

/// Portraits of `a_1 … a_n` and `b_1 … b_r` at depth `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generators {
    pub r: u32,
    pub depth: u32,
    pub a: Vec<Portrait>,
    pub b: Vec<Portrait>,
}

impl Generators {
    /// Evaluates `a_1 … a_n`, `b_1 … b_r` from a system using the standard
    /// symbol names. The system may redefine any of them.
    pub fn from_system(system: &RecursiveSystem, r: u32, n: u32) -> Result<Self, GroupError> {
        if r == 0 {
            return Err(GroupError::ZeroRank);
        }
        let mut ev = Evaluator::new(system);
        let a = (1..=n)
            .map(|i| ev.eval(&format!("a{i}"), n))
            .collect::<Result<Vec<_>, _>>()?;
        let b = (1..=r)
            .map(|j| ev.eval(&format!("b{j}"), n))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Generators { r, depth: n, a, b })
    }

    /// `a_i`, which is trivial on `T_n` for `i > n`.
    pub fn a(&self, i: u32) -> Portrait {
        self.a
            .get(i as usize - 1)
            .cloned()
            .unwrap_or_else(|| Portrait::identity(self.depth))
    }

    pub fn b(&self, j: u32) -> &Portrait {
        &self.b[j as usize - 1]
    }

    pub fn get(&self, g: Generator) -> Portrait {
        match g {
            Generator::A(i) => self.a(i),
            Generator::B(j) => self.b(j).clone(),
        }
    }

    /// All generators in the order `a_1 … a_n, b_1 … b_r`.
    pub fn labelled(&self) -> Vec<(Generator, Portrait)> {
        let mut out: Vec<(Generator, Portrait)> = self
            .a
            .iter()
            .enumerate()
            .map(|(i, p)| (Generator::A(i as u32 + 1), p.clone()))
            .collect();
        out.extend(
            self.b
                .iter()
                .enumerate()
                .map(|(j, p)| (Generator::B(j as u32 + 1), p.clone())),
        );
        out
    }

    pub fn all(&self) -> Vec<Portrait> {
        self.a.iter().chain(self.b.iter()).cloned().collect()
    }

    /// Generators that are not the identity at this depth.
    pub fn nontrivial(&self) -> Vec<Portrait> {
        self.all()
            .into_iter()
            .filter(|p| !p.is_identity())
            .collect()
    }

    pub fn truncate(&self, m: u32) -> Result<Generators, GroupError> {
        Ok(Generators {
            r: self.r,
            depth: m,
            a: self.a[..m.min(self.depth) as usize]
                .iter()
                .map(|p| p.truncate(m))
                .collect::<Result<_, _>>()?,
            b: self
                .b
                .iter()
                .map(|p| p.truncate(m))
                .collect::<Result<_, _>>()?,
        })
    }
}

pub fn standard_generators(r: u32, n: u32) -> Result<Generators, GroupError> {
    GroupSpec::new(r, n)?.generators(n)
}

/// Whether `b_1 ⋯ b_r = a_1 ⋯ a_n` at depth `n` for the given system.
pub fn product_relation_holds(
    system: &RecursiveSystem,
    r: u32,
    n: u32,
) -> Result<bool, GroupError> {
    let gens = Generators::from_system(system, r, n)?;
    let lhs = gens.b.iter().fold(Portrait::identity(n), |acc, g| &acc * g);
    let rhs = gens.a.iter().fold(Portrait::identity(n), |acc, g| &acc * g);
    Ok(lhs == rhs)
}

pub fn verify_product_relation(r: u32, n: u32) -> Result<bool, GroupError> {
    product_relation_holds(&group_system(r, n)?, r, n)
}

/// `sgn_m` of every generator for `m = 1 … n`.
#[derive(Debug, Clone, Serialize)]
pub struct SignTable {
    pub r: u32,
    pub depth: u32,
    /// One row per generator; entry `m - 1` is `sgn_m`.
    pub rows: Vec<(Generator, Vec<i8>)>,
}

impl SignTable {
    /// The pattern the table should have: `sgn_m(a_i) = sgn_m(b_i) = -1` iff
    /// `m = i ≤ r`, and `sgn_m(a_i) = 1` for `i > r`.
    pub fn expected(r: u32, g: Generator, m: u32) -> i8 {
        match g {
            Generator::A(i) | Generator::B(i) if i <= r && i == m => -1,
            _ => 1,
        }
    }

    /// Cells that disagree with [`SignTable::expected`].
    pub fn mismatches(&self) -> Vec<(Generator, u32, i8)> {
        let mut out = Vec::new();
        for (g, row) in &self.rows {
            for (idx, &s) in row.iter().enumerate() {
                let m = idx as u32 + 1;
                if s != Self::expected(self.r, *g, m) {
                    out.push((*g, m, s));
                }
            }
        }
        out
    }

    pub fn matches_expected(&self) -> bool {
        self.mismatches().is_empty()
    }
}

pub fn generator_signs(r: u32, n: u32) -> Result<SignTable, GroupError> {
    let gens = standard_generators(r, n)?;
    let rows = gens
        .labelled()
        .into_iter()
        .map(|(g, p)| {
            let row = (1..=n).map(|m| p.sign(m)).collect::<Result<Vec<_>, _>>()?;
            Ok((g, row))
        })
        .collect::<Result<Vec<_>, TreeError>>()?;
    Ok(SignTable { r, depth: n, rows })
}

/// `log₂ |G_n|`: `2^n - 1` for `n ≤ r`, `2^n - 2^{n-r}` otherwise.
pub fn order_log2(r: u32, n: u32) -> u128 {
    assert!(n < 128, "depth {n} too large for u128 arithmetic");
    if n <= r {
        (1u128 << n) - 1
    } else {
        (1u128 << n) - (1u128 << (n - r))
    }
}

/// The limit `1 - 2^{-r}` of `log₂|G_n| / log₂|W_n|`.
pub fn hausdorff_dimension(r: u32) -> Ratio<u128> {
    assert!((1..128).contains(&r));
    Ratio::new((1u128 << r) - 1, 1u128 << r)
}

/// `(n, log₂|G_n| / (2^n - 1))` for `n = 1 … n_max`.
pub fn dimension_table(r: u32, n_max: u32) -> Vec<(u32, Ratio<u128>)> {
    (1..=n_max)
        .map(|n| (n, Ratio::new(order_log2(r, n), (1u128 << n) - 1)))
        .collect()
}

/// A finite quotient `G_n` as an explicit sorted element list.
#[derive(Debug, Clone)]
pub struct LevelGroup {
    pub r: u32,
    pub n: u32,
    pub elements: Vec<Portrait>,
    pub generators: Vec<Portrait>,
}

impl LevelGroup {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, g: &Portrait) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    /// `log₂` of the order, if the order is a power of two.
    pub fn log2_order(&self) -> Option<u128> {
        let len = self.elements.len() as u128;
        len.is_power_of_two().then(|| len.trailing_zeros() as u128)
    }
}

/// The subgroup of `W_n` generated by `generators`, sorted.
pub fn close_subgroup(
    generators: &[Portrait],
    depth: u32,
    max_elements: u64,
) -> Result<Vec<Portrait>, GroupError> {
    let gens: Vec<Portrait> = generators
        .iter()
        .filter(|g| !g.is_identity())
        .flat_map(|g| {
            let inv = g.inverse();
            if &inv == g {
                vec![g.clone()]
            } else {
                vec![g.clone(), inv]
            }
        })
        .collect();
    let id = Portrait::identity(depth);
    let mut seen: HashSet<Portrait> = HashSet::new();
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = x.compose(g)?;
            if !seen.contains(&y) {
                if seen.len() as u64 >= max_elements {
                    return Err(GroupError::ClosureBudget { max_elements });
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<Portrait> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Enumerates `G_n` by closing the generators.
pub fn enumerate_level(r: u32, n: u32, max_elements: u64) -> Result<LevelGroup, GroupError> {
    if r == 0 {
        return Err(GroupError::ZeroRank);
    }
    let log2_order = order_log2(r, n);
    if log2_order >= 64 || (1u64 << log2_order) > max_elements {
        return Err(GroupError::BudgetExceeded {
            log2_order,
            max_elements,
        });
    }
    let generators = standard_generators(r, n)?.nontrivial();
    let elements = close_subgroup(&generators, n, max_elements)?;
    Ok(LevelGroup {
        r,
        n,
        elements,
        generators,
    })
}

/// Whether `g` lies in `G_m`, `m` the depth of `g`.
///
/// At depth `m ≤ r` every element qualifies. Beyond that, `(u, v) σ^ε` is a
/// member iff `u` and `v` are members with `sgn_r(u) = sgn_r(v)`. Unrolled,
/// for every node above depth `m - r` the two child subtrees must have equal
/// swap parity on their relative level `r - 1`.
pub fn is_member(g: &Portrait, r: u32) -> bool {
    assert!(r >= 1, "r must be at least 1");
    let m = g.depth();
    if m <= r {
        return true;
    }
    let rel = r - 1;
    for level in 0..m - r {
        let first = 1usize << level;
        for k in first..first << 1 {
            if g.subtree_level_parity(2 * k, rel) != g.subtree_level_parity(2 * k + 1, rel) {
                return false;
            }
        }
    }
    true
}

/// Membership in `H_m = ker(sgn_r) ∩ G_m`.
pub fn is_member_h(g: &Portrait, r: u32) -> Result<bool, GroupError> {
    if g.depth() < r {
        return Err(GroupError::DepthBelowRank {
            depth: g.depth(),
            r,
        });
    }
    if r == 0 {
        return Err(GroupError::ZeroRank);
    }
    Ok(is_member(g, r) && g.sign(r)? == 1)
}

/// Orbit of `vertex` under the group generated by `generators`.
pub fn orbit_of_vertex(
    generators: &[Portrait],
    vertex: &VertexPath,
) -> Result<Vec<VertexPath>, GroupError> {
    let mut seen: HashSet<VertexPath> = HashSet::from([vertex.clone()]);
    let mut queue = VecDeque::from([vertex.clone()]);
    while let Some(v) = queue.pop_front() {
        for g in generators {
            let w = g.act(&v)?;
            if seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    let mut out: Vec<VertexPath> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Whether `G_n` is transitive on level `n`.
pub fn check_transitivity(r: u32, n: u32) -> Result<bool, GroupError> {
    let gens = standard_generators(r, n)?.all();
    Ok(orbit_of_vertex(&gens, &VertexPath::leftmost(n))?.len() == 1usize << n)
}

/// The two coordinate projections of `{ (u, v) ∈ group }` (root bit clear).
pub fn g1_projections(elements: &[Portrait]) -> Result<(Vec<Portrait>, Vec<Portrait>), GroupError> {
    let mut left = HashSet::new();
    let mut right = HashSet::new();
    for g in elements {
        let (swap, u, v) = g.sections()?;
        if !swap {
            left.insert(u);
            right.insert(v);
        }
    }
    let mut left: Vec<Portrait> = left.into_iter().collect();
    let mut right: Vec<Portrait> = right.into_iter().collect();
    left.sort();
    right.sort();
    Ok((left, right))
}

/// Whether both projections of `G^1_n` are exactly `G_{n-1}`.
pub fn check_g1_projections(r: u32, n: u32, max_elements: u64) -> Result<bool, GroupError> {
    let top = enumerate_level(r, n, max_elements)?;
    let below = enumerate_level(r, n - 1, max_elements)?;
    let (left, right) = g1_projections(&top.elements)?;
    Ok(left == below.elements && right == below.elements)
}

/// Summary of the checks on one level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelReport {
    pub r: u32,
    pub n: u32,
    pub log2_order: u128,
    /// `None` when the level is too large to enumerate.
    pub matches_formula: Option<bool>,
    pub transitive: bool,
    pub product_relation: bool,
}

pub fn level_report(r: u32, n: u32, max_elements: u64) -> Result<LevelReport, GroupError> {
    let formula = order_log2(r, n);
    let (log2_order, matches_formula) = match enumerate_level(r, n, max_elements) {
        Ok(level) => {
            let found = level.log2_order();
            (found.unwrap_or(formula), Some(found == Some(formula)))
        }
        Err(GroupError::BudgetExceeded { .. }) => (formula, None),
        Err(e) => return Err(e),
    };
    Ok(LevelReport {
        r,
        n,
        log2_order,
        matches_formula,
        transitive: check_transitivity(r, n)?,
        product_relation: verify_product_relation(r, n)?,
    })
}
