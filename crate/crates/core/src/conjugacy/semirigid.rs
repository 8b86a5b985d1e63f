//! Simultaneous conjugation of a generator family into standard position.
//!
//! Given `a'_1 … a'_n`, `b'_1 … b'_r` in `W_n` with
//!
//! ```text
//! a'_1 ~ σ,   a'_{r+1} ~ (a'_r, b'_r),   a'_i ~ (a'_{i-1}, 1),
//! b'_1 ~ σ,   b'_j ~ (b'_{j-1}, 1)
//! ```
//!
//! and product `1`, [`recognize_type_c`] returns `w ∈ W_n` and elements
//! `z ∈ G_n` with `w⁻¹ a'_i w = z a_i z⁻¹` (and likewise for the `b'_j`).
//!
//! The construction works level by level. Conjugating by `v = (x, 1)` turns
//! `a'_1 = (x, x⁻¹) σ` into `σ`. Every other member then has trivial root
//! swap and one section carrying the next family one level down, which is
//! solved recursively for `u`. The answer is `w = v (u, u)` and the `z` are
//! assembled from the recursive witnesses.

use super::ConjugacyError;
use crate::group::{is_member, standard_generators, Generator, Generators};
use crate::tree::{conj_in_w, Portrait};

/// A candidate family `a'_1 … a'_n`, `b'_1 … b'_r` at depth `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateFamily {
    pub r: u32,
    pub a: Vec<Portrait>,
    pub b: Vec<Portrait>,
}

impl CandidateFamily {
    /// Checks sizes and depths: `n` elements `a'_i` and `r` elements `b'_j`,
    /// all at depth `n`.
    pub fn new(r: u32, a: Vec<Portrait>, b: Vec<Portrait>) -> Result<Self, ConjugacyError> {
        let n = a.first().map_or(0, Portrait::depth);
        if a.len() != n as usize || b.len() != r as usize || r == 0 {
            return Err(ConjugacyError::FamilySize {
                expected_a: n as usize,
                found_a: a.len(),
                expected_b: r as usize,
                found_b: b.len(),
            });
        }
        for p in a.iter().chain(b.iter()) {
            if p.depth() != n {
                return Err(crate::tree::TreeError::DepthMismatch {
                    left: n,
                    right: p.depth(),
                }
                .into());
            }
        }
        Ok(CandidateFamily { r, a, b })
    }

    /// The standard generators of `G(r)` at depth `n`.
    pub fn standard(r: u32, n: u32) -> Result<Self, ConjugacyError> {
        let g = standard_generators(r, n)?;
        CandidateFamily::new(r, g.a, g.b)
    }

    /// Every member replaced by `x m x⁻¹`.
    pub fn conjugated(&self, x: &Portrait) -> Self {
        CandidateFamily {
            r: self.r,
            a: self.a.iter().map(|p| p.conjugate_by(x)).collect(),
            b: self.b.iter().map(|p| p.conjugate_by(x)).collect(),
        }
    }

    pub fn depth(&self) -> u32 {
        self.a.len() as u32
    }

    pub fn get(&self, g: Generator) -> &Portrait {
        match g {
            Generator::A(i) => &self.a[i as usize - 1],
            Generator::B(j) => &self.b[j as usize - 1],
        }
    }

    /// `b'_r ⋯ b'_1 a'_1 ⋯ a'_n`.
    pub fn canonical_order(&self) -> Vec<Generator> {
        let mut order: Vec<Generator> = (1..=self.r).rev().map(Generator::B).collect();
        order.extend((1..=self.depth()).map(Generator::A));
        order
    }

    pub fn product(&self, order: &[Generator]) -> Result<Portrait, ConjugacyError> {
        let mut sorted = order.to_vec();
        sorted.sort();
        let mut expected = self.canonical_order();
        expected.sort();
        if sorted != expected {
            return Err(ConjugacyError::BadOrder);
        }
        Ok(order
            .iter()
            .fold(Portrait::identity(self.depth()), |acc, g| {
                &acc * self.get(*g)
            }))
    }

    /// The `W`-conjugacy shapes required of the family, with `|` meaning
    /// restriction to depth `n - 1`.
    pub fn check_shape(&self) -> Result<(), ConjugacyError> {
        let n = self.depth();
        if n == 0 {
            return Ok(());
        }
        let sigma = Portrait::sigma(n)?;
        let one = Portrait::identity(n - 1);
        let below = |p: &Portrait| p.truncate(n - 1);
        let r = self.r;
        let mut targets: Vec<(Generator, Portrait)> = vec![(Generator::A(1), sigma.clone())];
        for i in 2..=n {
            let target = if i == r + 1 {
                Portrait::pair(
                    &below(&self.a[r as usize - 1])?,
                    &below(&self.b[r as usize - 1])?,
                    false,
                )?
            } else {
                Portrait::pair(&below(&self.a[i as usize - 2])?, &one, false)?
            };
            targets.push((Generator::A(i), target));
        }
        targets.push((Generator::B(1), sigma));
        for j in 2..=r {
            targets.push((
                Generator::B(j),
                Portrait::pair(&below(&self.b[j as usize - 2])?, &one, false)?,
            ));
        }
        for (g, target) in targets {
            if !conj_in_w(self.get(g), &target)? {
                return Err(ConjugacyError::ShapeViolation {
                    member: g,
                    depth: n,
                });
            }
        }
        Ok(())
    }
}

/// `w` together with the witnesses `z` for each family member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeCConjugator {
    pub w: Portrait,
    pub a_conjugators: Vec<Portrait>,
    pub b_conjugators: Vec<Portrait>,
}

impl TypeCConjugator {
    /// Checks `w⁻¹ m w = z s z⁻¹` with `z ∈ G_n` for every member `m` and its
    /// standard counterpart `s`.
    pub fn verify(&self, fam: &CandidateFamily) -> Result<bool, ConjugacyError> {
        let n = fam.depth();
        let gens = standard_generators(fam.r, n)?;
        let w_inv = self.w.inverse();
        for g in fam.canonical_order() {
            let z = match g {
                Generator::A(i) => &self.a_conjugators[i as usize - 1],
                Generator::B(j) => &self.b_conjugators[j as usize - 1],
            };
            let lhs = fam.get(g).conjugate_by(&w_inv);
            if !is_member(z, fam.r) || lhs != gens.get(g).conjugate_by(z) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn recognize_type_c(fam: &CandidateFamily) -> Result<TypeCConjugator, ConjugacyError> {
    recognize_type_c_with_order(fam, &fam.canonical_order())
}

/// As [`recognize_type_c`], with the product relation checked in `order`.
pub fn recognize_type_c_with_order(
    fam: &CandidateFamily,
    order: &[Generator],
) -> Result<TypeCConjugator, ConjugacyError> {
    let n = fam.depth();
    fam.check_shape()?;
    if !fam.product(order)?.is_identity() {
        return Err(ConjugacyError::ProductViolation { depth: n });
    }
    let (w, a_conjugators, b_conjugators) = solve(fam.r, &fam.a, &fam.b, n)?;
    Ok(TypeCConjugator {
        w,
        a_conjugators,
        b_conjugators,
    })
}

type Solution = (Portrait, Vec<Portrait>, Vec<Portrait>);

/// Splits `(p, q)` with one trivial section into the other section and
/// whether it sat on the right.
fn one_sided(m: &Portrait, member: Generator, n: u32) -> Result<(Portrait, bool), ConjugacyError> {
    let (swap, p, q) = m.sections()?;
    if swap {
        return Err(ConjugacyError::ShapeViolation { member, depth: n });
    }
    if q.is_identity() {
        Ok((p, false))
    } else if p.is_identity() {
        Ok((q, true))
    } else {
        Err(ConjugacyError::ShapeViolation { member, depth: n })
    }
}

/// `(c, c⁻¹) σ ↦ c`.
fn sigma_like(m: &Portrait, member: Generator, n: u32) -> Result<Portrait, ConjugacyError> {
    let (swap, p, q) = m.sections()?;
    if !swap || !(&p * &q).is_identity() {
        return Err(ConjugacyError::ShapeViolation { member, depth: n });
    }
    Ok(p)
}

fn swapped(
    sigma: &Portrait,
    lambda: bool,
    left: &Portrait,
    right: &Portrait,
) -> Result<Portrait, ConjugacyError> {
    let p = Portrait::pair(left, right, false)?;
    Ok(if lambda { sigma * &p } else { p })
}

fn solve(r: u32, a: &[Portrait], b: &[Portrait], n: u32) -> Result<Solution, ConjugacyError> {
    if n == 0 {
        let id = Portrait::identity(0);
        return Ok((id.clone(), Vec::new(), vec![id; r as usize]));
    }
    let sub = n - 1;
    let id_sub = Portrait::identity(sub);

    let x = sigma_like(&a[0], Generator::A(1), n)?;
    let v = Portrait::pair(&x, &id_sub, false)?;
    let v_inv = v.inverse();
    let a: Vec<Portrait> = a.iter().map(|m| m.conjugate_by(&v_inv)).collect();
    let b: Vec<Portrait> = b.iter().map(|m| m.conjugate_by(&v_inv)).collect();

    let c = sigma_like(&b[0], Generator::B(1), n)?;

    let mut a_next = vec![id_sub.clone(); sub as usize];
    let mut b_next = vec![id_sub.clone(); r as usize];
    let mut a_lambda = vec![false; n as usize];
    for i in 2..=n {
        let m = &a[i as usize - 1];
        if i == r + 1 {
            let (swap, p, q) = m.sections()?;
            if swap {
                return Err(ConjugacyError::ShapeViolation {
                    member: Generator::A(i),
                    depth: n,
                });
            }
            a_next[r as usize - 1] = p;
            b_next[r as usize - 1] = q;
        } else {
            let (p, lambda) = one_sided(m, Generator::A(i), n)?;
            a_next[i as usize - 2] = p;
            a_lambda[i as usize - 1] = lambda;
        }
    }
    let mut b_lambda = vec![false; r as usize];
    for j in 2..=r {
        let (p, lambda) = one_sided(&b[j as usize - 1], Generator::B(j), n)?;
        b_next[j as usize - 2] = p;
        b_lambda[j as usize - 1] = lambda;
    }

    let (u, xa, xb) = solve(r, &a_next, &b_next, sub)?;
    let w = &v * &Portrait::pair(&u, &u, false)?;

    let sigma = Portrait::sigma(n)?;
    let gens_sub: Generators = standard_generators(r, sub)?;
    let b_r = gens_sub.b(r).clone();
    let b_r_inv = b_r.inverse();

    let mut za = vec![Portrait::identity(n)];
    for i in 2..=n {
        let z = if i == r + 1 {
            let x = &xa[r as usize - 1];
            let mut y = xb[r as usize - 1].clone();
            if sub >= r && x.sign(r)? != y.sign(r)? {
                y = &y * &b_r;
            }
            swapped(&sigma, false, x, &y)?
        } else {
            let x = &xa[i as usize - 2];
            swapped(&sigma, a_lambda[i as usize - 1], x, x)?
        };
        za.push(z);
    }

    let h = &(&u.inverse() * &(&c * &u)) * &b_r_inv;
    let z1 = Portrait::pair(&h, &id_sub, false)?;
    if !is_member(&z1, r) {
        return Err(ConjugacyError::ProductViolation { depth: n });
    }
    let mut zb = vec![z1];
    for j in 2..=r {
        let t = &xb[j as usize - 2] * &b_r_inv;
        zb.push(swapped(&sigma, b_lambda[j as usize - 1], &t, &t)?);
    }
    Ok((w, za, zb))
}
