//! Conjugacy in the full group `W_n`.
//!
//! For `g = (g0, g1) σ^ε` and `h = (h0, h1) σ^δ`:
//!
//! * `g ~ h` forces `ε = δ`;
//! * for `ε = 0`, `g ~ h` iff `g0 ~ h0 ∧ g1 ~ h1` or `g0 ~ h1 ∧ g1 ~ h0`;
//! * for `ε = 1`, `g ~ h` iff `g0 g1 ~ h0 h1`.

use std::collections::HashMap;

use super::{Portrait, TreeError};

/// Decides conjugacy in `W_n`.
pub fn conj_in_w(g: &Portrait, h: &Portrait) -> Result<bool, TreeError> {
    WConjugacy::new().decide(g, h)
}

/// Conjugacy decider with a memo table that lives as long as the value.
#[derive(Default)]
pub struct WConjugacy {
    memo: HashMap<(Portrait, Portrait), bool>,
}

impl WConjugacy {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn decide(&mut self, g: &Portrait, h: &Portrait) -> Result<bool, TreeError> {
        if g.depth() != h.depth() {
            return Err(TreeError::DepthMismatch {
                left: g.depth(),
                right: h.depth(),
            });
        }
        Ok(self.rec(g, h))
    }

    fn rec(&mut self, g: &Portrait, h: &Portrait) -> bool {
        if g == h || g.depth() == 0 {
            return true;
        }
        // Level signs are class functions.
        for level in 0..g.depth() {
            if g.level_popcount(level) % 2 != h.level_popcount(level) % 2 {
                return false;
            }
        }
        let key = if g <= h {
            (g.clone(), h.clone())
        } else {
            (h.clone(), g.clone())
        };
        if let Some(&known) = self.memo.get(&key) {
            return known;
        }
        let (e, g0, g1) = g.sections().expect("depth >= 1");
        let (d, h0, h1) = h.sections().expect("depth >= 1");
        let answer = if e != d {
            false
        } else if e {
            self.rec(&(&g0 * &g1), &(&h0 * &h1))
        } else {
            (self.rec(&g0, &h0) && self.rec(&g1, &h1)) || (self.rec(&g0, &h1) && self.rec(&g1, &h0))
        };
        self.memo.insert(key, answer);
        answer
    }
}
