//! Bit-packed portraits of automorphisms of the truncated binary tree.
//!
//! A depth-`n` automorphism is stored as one swap bit per internal node,
//! in heap order: node 1 is the root and node `k` has children `2k` and
//! `2k + 1`. Bit `k - 1` of the packed array belongs to node `k`, so a
//! depth-`n` portrait occupies exactly `2^n - 1` bits.
//!
//! Conventions used throughout the crate:
//!
//! * `(u, v)` acts as `u` on the left subtree and `v` on the right one, and
//!   `σ` swaps the two subtrees below the root, so `σ (u, v) σ = (v, u)`.
//! * A portrait with root bit `ε` and subtree portraits `u`, `v` is the
//!   element `(u, v) σ^ε`.
//! * Products act on the left: `g.compose(h)` is "first `h`, then `g`", and
//!   `((g0, g1) σ^ε) · ((h0, h1) σ^δ) = (g0 h_ε, g1 h_{1-ε}) σ^{ε+δ}`.

use std::fmt;
use std::ops::Mul;

use rand::Rng;

use super::TreeError;

/// Largest supported depth. A depth-24 portrait already takes 2 MiB.
pub const MAX_DEPTH: u32 = 24;

const WORD_BITS: usize = 64;

/// An element of `W_n`, the automorphism group of the depth-`n` binary tree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Portrait {
    depth: u32,
    words: Vec<u64>,
}

/// A vertex of the tree, named by its path from the root (`false` = left).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexPath(pub Vec<bool>);

impl VertexPath {
    pub fn root() -> Self {
        VertexPath(Vec::new())
    }

    /// The leftmost vertex on the given level.
    pub fn leftmost(level: u32) -> Self {
        VertexPath(vec![false; level as usize])
    }

    /// The vertex at position `offset` (read as a binary number, most
    /// significant step first) on the given level.
    pub fn from_offset(level: u32, offset: usize) -> Self {
        let level = level as usize;
        VertexPath(
            (0..level)
                .map(|i| (offset >> (level - 1 - i)) & 1 == 1)
                .collect(),
        )
    }

    pub fn level(&self) -> u32 {
        self.0.len() as u32
    }

    /// Inverse of [`VertexPath::from_offset`].
    pub fn offset(&self) -> usize {
        self.0
            .iter()
            .fold(0usize, |acc, &bit| (acc << 1) | bit as usize)
    }
}

impl fmt::Display for VertexPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "∅");
        }
        for &b in &self.0 {
            write!(f, "{}", b as u8)?;
        }
        Ok(())
    }
}

#[inline]
fn node_count(depth: u32) -> usize {
    (1usize << depth) - 1
}

#[inline]
fn word_count(depth: u32) -> usize {
    node_count(depth).div_ceil(WORD_BITS)
}

fn check_depth(depth: u32) -> Result<(), TreeError> {
    if depth > MAX_DEPTH {
        Err(TreeError::DepthTooLarge {
            depth,
            max: MAX_DEPTH,
        })
    } else {
        Ok(())
    }
}

impl Portrait {
    /// The identity of `W_n`.
    pub fn identity(depth: u32) -> Self {
        assert!(depth <= MAX_DEPTH, "depth {depth} exceeds {MAX_DEPTH}");
        Portrait {
            depth,
            words: vec![0; word_count(depth)],
        }
    }

    /// The swap of the two level-1 subtrees.
    pub fn sigma(depth: u32) -> Result<Self, TreeError> {
        if depth == 0 {
            return Err(TreeError::SigmaAtDepthZero);
        }
        check_depth(depth)?;
        let mut p = Portrait::identity(depth);
        p.set_node(1, true);
        Ok(p)
    }

    /// Builds a portrait from heap-ordered swap bits.
    pub fn from_bits(depth: u32, bits: &[bool]) -> Result<Self, TreeError> {
        check_depth(depth)?;
        if bits.len() != node_count(depth) {
            return Err(TreeError::BitLength {
                depth,
                expected: node_count(depth),
                found: bits.len(),
            });
        }
        let mut p = Portrait::identity(depth);
        for (i, &b) in bits.iter().enumerate() {
            if b {
                p.set_node(i + 1, true);
            }
        }
        Ok(p)
    }

    /// Uniformly random element of `W_n`.
    pub fn random<R: Rng + ?Sized>(depth: u32, rng: &mut R) -> Self {
        let mut p = Portrait::identity(depth);
        for w in p.words.iter_mut() {
            *w = rng.gen();
        }
        p.clear_padding();
        p
    }

    /// All elements of `W_n` in increasing bit-pattern order. Only sensible
    /// for `n ≤ 4` (`|W_4| = 2^15`).
    pub fn all(depth: u32) -> impl Iterator<Item = Portrait> {
        assert!(depth <= 5, "refusing to enumerate W_{depth}");
        let count = 1u64 << node_count(depth);
        (0..count).map(move |pattern| Portrait {
            depth,
            words: if depth == 0 {
                Vec::new()
            } else {
                vec![pattern]
            },
        })
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// Number of swap bits, `2^n - 1`.
    pub fn len_bits(&self) -> usize {
        node_count(self.depth)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn is_identity(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Swap bit of heap node `k` (1-based).
    #[inline]
    pub fn node(&self, k: usize) -> bool {
        let i = k - 1;
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    fn set_node(&mut self, k: usize, value: bool) {
        let i = k - 1;
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    fn clear_padding(&mut self) {
        let used = node_count(self.depth) % WORD_BITS;
        if used != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << used) - 1;
            }
        }
    }

    /// Heap-ordered swap bits.
    pub fn bits(&self) -> Vec<bool> {
        (1..=self.len_bits()).map(|k| self.node(k)).collect()
    }

    /// The element `(u, v) σ^swap` one level deeper than `u` and `v`.
    pub fn pair(u: &Portrait, v: &Portrait, swap: bool) -> Result<Self, TreeError> {
        if u.depth != v.depth {
            return Err(TreeError::DepthMismatch {
                left: u.depth,
                right: v.depth,
            });
        }
        let depth = u.depth + 1;
        check_depth(depth)?;
        let mut out = Portrait::identity(depth);
        out.set_node(1, swap);
        for level in 1..depth {
            let half = 1usize << (level - 1);
            let start = 1usize << level;
            let sub_start = half;
            for o in 0..half {
                if u.node(sub_start + o) {
                    out.set_node(start + o, true);
                }
                if v.node(sub_start + o) {
                    out.set_node(start + half + o, true);
                }
            }
        }
        Ok(out)
    }

    /// Inverse of [`Portrait::pair`]: `(swap, u, v)` with `self = (u, v) σ^swap`.
    pub fn sections(&self) -> Result<(bool, Portrait, Portrait), TreeError> {
        if self.depth == 0 {
            return Err(TreeError::SectionsAtDepthZero);
        }
        let sub = self.depth - 1;
        let mut u = Portrait::identity(sub);
        let mut v = Portrait::identity(sub);
        for level in 1..self.depth {
            let half = 1usize << (level - 1);
            let start = 1usize << level;
            for o in 0..half {
                if self.node(start + o) {
                    u.set_node(half + o, true);
                }
                if self.node(start + half + o) {
                    v.set_node(half + o, true);
                }
            }
        }
        Ok((self.node(1), u, v))
    }

    /// Root swap bit. Panics at depth 0.
    pub fn root_swap(&self) -> bool {
        self.node(1)
    }

    /// Restriction to the top `m` levels.
    pub fn truncate(&self, m: u32) -> Result<Portrait, TreeError> {
        if m > self.depth {
            return Err(TreeError::TruncateTooDeep {
                depth: self.depth,
                requested: m,
            });
        }
        let mut out = Portrait {
            depth: m,
            words: self.words[..word_count(m)].to_vec(),
        };
        out.clear_padding();
        Ok(out)
    }

    /// The automorphism "first `other`, then `self`".
    pub fn compose(&self, other: &Portrait) -> Result<Portrait, TreeError> {
        if self.depth != other.depth {
            return Err(TreeError::DepthMismatch {
                left: self.depth,
                right: other.depth,
            });
        }
        let nodes = self.len_bits();
        let mut out = Portrait::identity(self.depth);
        // src[k]: node of `other` whose section meets node k of `self`.
        let mut src = vec![0usize; nodes + 1];
        if nodes > 0 {
            src[1] = 1;
        }
        let internal = nodes >> 1;
        for k in 1..=nodes {
            let e = self.node(k);
            let h = src[k];
            if e ^ other.node(h) {
                out.set_node(k, true);
            }
            if k <= internal {
                src[2 * k] = 2 * h + e as usize;
                src[2 * k + 1] = 2 * h + (!e) as usize;
            }
        }
        Ok(out)
    }

    pub fn inverse(&self) -> Portrait {
        let nodes = self.len_bits();
        let mut out = Portrait::identity(self.depth);
        let mut src = vec![0usize; nodes + 1];
        if nodes > 0 {
            src[1] = 1;
        }
        let internal = nodes >> 1;
        for k in 1..=nodes {
            let s = src[k];
            let e = self.node(s);
            if e {
                out.set_node(k, true);
            }
            if k <= internal {
                src[2 * k] = 2 * s + e as usize;
                src[2 * k + 1] = 2 * s + (!e) as usize;
            }
        }
        out
    }

    /// `x · self · x⁻¹`.
    pub fn conjugate_by(&self, x: &Portrait) -> Portrait {
        &(x * self) * &x.inverse()
    }

    /// `self · other · self⁻¹ · other⁻¹`.
    pub fn commutator(&self, other: &Portrait) -> Portrait {
        &(&(self * other) * &self.inverse()) * &other.inverse()
    }

    pub fn pow(&self, exponent: i64) -> Portrait {
        let base = if exponent < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut out = Portrait::identity(self.depth);
        for _ in 0..exponent.unsigned_abs() {
            out = &out * &base;
        }
        out
    }

    /// Image of a vertex under the automorphism.
    pub fn act(&self, path: &VertexPath) -> Result<VertexPath, TreeError> {
        if path.level() > self.depth {
            return Err(TreeError::PathTooLong {
                level: path.level(),
                depth: self.depth,
            });
        }
        let mut node = 1usize;
        let mut out = Vec::with_capacity(path.0.len());
        for &step in &path.0 {
            let image = step ^ self.node(node);
            out.push(image);
            node = 2 * node + image as usize;
        }
        Ok(VertexPath(out))
    }

    /// Number of swap bits set on the given level (level 0 = root).
    pub fn level_popcount(&self, level: u32) -> u32 {
        let start = 1usize << level;
        let end = start << 1;
        let (lo, hi) = (start - 1, end - 1);
        let mut count = 0u32;
        let mut i = lo;
        while i < hi {
            let w = i / WORD_BITS;
            let off = i % WORD_BITS;
            let take = (WORD_BITS - off).min(hi - i);
            let mask = if take == WORD_BITS {
                u64::MAX
            } else {
                ((1u64 << take) - 1) << off
            };
            count += (self.words[w] & mask).count_ones();
            i += take;
        }
        count
    }

    /// `sgn_m`: the parity of the permutation induced on the `2^m` vertices
    /// of level `m`, as `+1` or `-1`.
    ///
    /// A swap at level `d` moves `2^{m-1-d}` disjoint pairs on level `m`, which
    /// is odd only for `d = m - 1`, so only that level's bits count.
    pub fn sign(&self, m: u32) -> Result<i8, TreeError> {
        if m == 0 || m > self.depth {
            return Err(TreeError::SignLevel {
                level: m,
                depth: self.depth,
            });
        }
        Ok(if self.level_popcount(m - 1).is_multiple_of(2) {
            1
        } else {
            -1
        })
    }

    /// Parity of swap bits on relative level `rel` below node `k`.
    pub(crate) fn subtree_level_parity(&self, k: usize, rel: u32) -> bool {
        let first = k << rel;
        let count = 1usize << rel;
        let mut parity = false;
        for node in first..first + count {
            parity ^= self.node(node);
        }
        parity
    }

    /// Lowercase hex rendering of the little-endian bit stream; hex digit `j`
    /// carries bits `4j .. 4j + 3`, lowest bit first.
    pub fn to_hex(&self) -> String {
        let bits = self.len_bits();
        let digits = bits.div_ceil(4);
        let mut s = String::with_capacity(digits);
        for j in 0..digits {
            let i = 4 * j;
            let nibble = (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 0xf;
            s.push(char::from_digit(nibble as u32, 16).expect("nibble"));
        }
        s
    }

    /// Parses the format of [`Portrait::to_hex`]. Uppercase digits, wrong
    /// lengths and set bits past `2^n - 1` are rejected.
    pub fn from_hex(hex: &str, depth: u32) -> Result<Portrait, TreeError> {
        check_depth(depth)?;
        let bits = node_count(depth);
        let digits = bits.div_ceil(4);
        if hex.len() != digits {
            return Err(TreeError::HexLength {
                depth,
                expected: digits,
                found: hex.len(),
            });
        }
        let mut p = Portrait::identity(depth);
        for (j, c) in hex.chars().enumerate() {
            let nibble = match c {
                '0'..='9' | 'a'..='f' => c.to_digit(16).expect("hex digit") as u64,
                _ => return Err(TreeError::HexDigit(c)),
            };
            let i = 4 * j;
            p.words[i / WORD_BITS] |= nibble << (i % WORD_BITS);
        }
        let mut trimmed = p.clone();
        trimmed.clear_padding();
        if trimmed != p {
            return Err(TreeError::HexTrailingBits { depth });
        }
        Ok(p)
    }
}

impl fmt::Debug for Portrait {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Portrait(depth={}, hex={:?})", self.depth, self.to_hex())
    }
}

impl fmt::Display for Portrait {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Composition; panics when depths differ. Use [`Portrait::compose`] for the
/// checked version.
impl Mul<&Portrait> for &Portrait {
    type Output = Portrait;

    fn mul(self, rhs: &Portrait) -> Portrait {
        self.compose(rhs)
            .expect("composing portraits of different depths")
    }
}

impl Mul<Portrait> for Portrait {
    type Output = Portrait;

    fn mul(self, rhs: Portrait) -> Portrait {
        &self * &rhs
    }
}
