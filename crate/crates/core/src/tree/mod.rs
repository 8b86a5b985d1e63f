//! Finite-depth automorphisms of the binary rooted tree.

mod conjugacy;
mod portrait;
mod recursion;

pub use conjugacy::{conj_in_w, WConjugacy};
pub use portrait::{Portrait, VertexPath, MAX_DEPTH};
pub use recursion::{Definition, Evaluator, Letter, RecursiveSystem, Word};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("depth {depth} exceeds the supported maximum {max}")]
    DepthTooLarge { depth: u32, max: u32 },
    #[error("sigma needs depth at least 1")]
    SigmaAtDepthZero,
    #[error("a depth-0 portrait has no sections")]
    SectionsAtDepthZero,
    #[error("depth mismatch: {left} vs {right}")]
    DepthMismatch { left: u32, right: u32 },
    #[error("depth {depth} needs {expected} bits, got {found}")]
    BitLength {
        depth: u32,
        expected: usize,
        found: usize,
    },
    #[error("cannot truncate depth {depth} to {requested}")]
    TruncateTooDeep { depth: u32, requested: u32 },
    #[error("path of length {level} is longer than depth {depth}")]
    PathTooLong { level: u32, depth: u32 },
    #[error("sign level {level} out of range 1..={depth}")]
    SignLevel { level: u32, depth: u32 },
    #[error("depth {depth} needs {expected} hex digits, got {found}")]
    HexLength {
        depth: u32,
        expected: usize,
        found: usize,
    },
    #[error("invalid hex digit {0:?}")]
    HexDigit(char),
    #[error("hex string sets bits beyond the {depth}-level portrait")]
    HexTrailingBits { depth: u32 },
    #[error("undefined symbol {0:?}")]
    UndefinedSymbol(String),
    #[error("symbol {0:?} is defined in terms of itself at the same depth")]
    CyclicDefinition(String),
    #[error("cannot parse word {0:?}")]
    WordSyntax(String),
}
