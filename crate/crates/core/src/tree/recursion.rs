//! Elements defined by wreath recursion, evaluated lazily to any depth.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use super::{Portrait, TreeError};

/// A symbol with exponent `+1` or `-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub symbol: String,
    pub inverse: bool,
}

impl Letter {
    pub fn new(symbol: impl Into<String>) -> Self {
        Letter {
            symbol: symbol.into(),
            inverse: false,
        }
    }

    pub fn inv(symbol: impl Into<String>) -> Self {
        Letter {
            symbol: symbol.into(),
            inverse: true,
        }
    }
}

/// A product of letters, multiplied left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn single(symbol: impl Into<String>) -> Self {
        Word(vec![Letter::new(symbol)])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }
}

/// Parses whitespace-separated letters such as `"b2 b1 b2^-1"`. The empty
/// string and `"1"` both denote the empty word.
impl FromStr for Word {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut letters = Vec::new();
        for token in s.split_whitespace() {
            if token == "1" {
                continue;
            }
            let (symbol, inverse) = match token.split_once('^') {
                None => (token, false),
                Some((sym, "-1")) => (sym, true),
                Some((sym, "1")) => (sym, false),
                Some(_) => return Err(TreeError::WordSyntax(s.to_string())),
            };
            let valid = !symbol.is_empty()
                && symbol
                    .chars()
                    .all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(TreeError::WordSyntax(s.to_string()));
            }
            letters.push(Letter {
                symbol: symbol.to_string(),
                inverse,
            });
        }
        Ok(Word(letters))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(&l.symbol)?;
            if l.inverse {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Definition {
    Sigma,
    Word(Word),
    /// `(left, right) σ^swap`
    Pair {
        left: Word,
        right: Word,
        swap: bool,
    },
}

/// Named symbols with recursive definitions.
#[derive(Clone, Debug, Default)]
pub struct RecursiveSystem {
    symbols: BTreeMap<String, Definition>,
}

impl RecursiveSystem {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds or replaces a definition.
    pub fn define(&mut self, name: impl Into<String>, def: Definition) -> &mut Self {
        self.symbols.insert(name.into(), def);
        self
    }

    pub fn get(&self, name: &str) -> Option<&Definition> {
        self.symbols.get(name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.symbols.contains_key(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.symbols.keys().map(String::as_str)
    }

    /// Checks that every referenced symbol is defined.
    pub fn validate(&self) -> Result<(), TreeError> {
        for def in self.symbols.values() {
            let words: Vec<&Word> = match def {
                Definition::Sigma => vec![],
                Definition::Word(w) => vec![w],
                Definition::Pair { left, right, .. } => vec![left, right],
            };
            for w in words {
                for l in w.letters() {
                    if !self.contains(&l.symbol) {
                        return Err(TreeError::UndefinedSymbol(l.symbol.clone()));
                    }
                }
            }
        }
        Ok(())
    }

    /// One-shot evaluation of `name` at `depth`.
    pub fn eval(&self, name: &str, depth: u32) -> Result<Portrait, TreeError> {
        Evaluator::new(self).eval(name, depth)
    }

    pub fn eval_word(&self, word: &Word, depth: u32) -> Result<Portrait, TreeError> {
        Evaluator::new(self).eval_word(word, depth)
    }
}

/// Memoising evaluator over a fixed system. Each symbol is evaluated once per
/// depth, so a full evaluation costs `O(#symbols · 2^n)` bit operations.
pub struct Evaluator<'a> {
    system: &'a RecursiveSystem,
    memo: HashMap<(String, u32), Portrait>,
    in_progress: HashSet<(String, u32)>,
}

impl<'a> Evaluator<'a> {
    pub fn new(system: &'a RecursiveSystem) -> Self {
        Evaluator {
            system,
            memo: HashMap::new(),
            in_progress: HashSet::new(),
        }
    }

    pub fn eval(&mut self, name: &str, depth: u32) -> Result<Portrait, TreeError> {
        let key = (name.to_string(), depth);
        if let Some(p) = self.memo.get(&key) {
            return Ok(p.clone());
        }
        let def = self
            .system
            .get(name)
            .ok_or_else(|| TreeError::UndefinedSymbol(name.to_string()))?
            .clone();
        if depth == 0 {
            let id = Portrait::identity(0);
            self.memo.insert(key, id.clone());
            return Ok(id);
        }
        if !self.in_progress.insert(key.clone()) {
            return Err(TreeError::CyclicDefinition(name.to_string()));
        }
        let result = match &def {
            Definition::Sigma => Portrait::sigma(depth),
            Definition::Word(w) => self.eval_word(w, depth),
            Definition::Pair { left, right, swap } => {
                self.eval_word(left, depth - 1).and_then(|u| {
                    let v = self.eval_word(right, depth - 1)?;
                    Portrait::pair(&u, &v, *swap)
                })
            }
        };
        self.in_progress.remove(&key);
        let p = result?;
        self.memo.insert(key, p.clone());
        Ok(p)
    }

    pub fn eval_word(&mut self, word: &Word, depth: u32) -> Result<Portrait, TreeError> {
        let mut acc = Portrait::identity(depth);
        for l in word.letters() {
            let mut p = self.eval(&l.symbol, depth)?;
            if l.inverse {
                p = p.inverse();
            }
            acc = &acc * &p;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn r1_system() -> RecursiveSystem {
        let mut sys = RecursiveSystem::new();
        sys.define("a1", Definition::Sigma)
            .define(
                "a2",
                Definition::Pair {
                    left: w("a1"),
                    right: w("b1"),
                    swap: false,
                },
            )
            .define(
                "b1",
                Definition::Pair {
                    left: w("b1"),
                    right: w("b1^-1"),
                    swap: true,
                },
            );
        sys
    }

    #[test]
    fn parse_and_display_words() {
        let word = w("b2 b1 b2^-1");
        assert_eq!(
            word.0,
            vec![Letter::new("b2"), Letter::new("b1"), Letter::inv("b2")]
        );
        assert_eq!(word.to_string(), "b2 b1 b2^-1");
        assert_eq!(w("").to_string(), "1");
        assert_eq!(w("1"), Word::empty());
        assert!("b^2".parse::<Word>().is_err());
        assert!("b-1".parse::<Word>().is_err());
    }

    #[test]
    fn unfolds_self_referential_definitions() {
        let sys = r1_system();
        sys.validate().unwrap();
        let s1 = Portrait::sigma(1).unwrap();
        assert_eq!(sys.eval("b1", 1).unwrap(), s1);
        assert_eq!(
            sys.eval("b1", 2).unwrap(),
            Portrait::pair(&s1, &s1, true).unwrap()
        );
        assert_eq!(
            sys.eval("a2", 2).unwrap(),
            Portrait::pair(&s1, &s1, false).unwrap()
        );
        assert_eq!(sys.eval("a2", 1).unwrap(), Portrait::identity(1));
    }

    #[test]
    fn truncation_coherence() {
        let sys = r1_system();
        for name in ["a1", "a2", "b1"] {
            for n in 1..10 {
                let deep = sys.eval(name, n).unwrap();
                assert_eq!(
                    deep.truncate(n - 1).unwrap(),
                    sys.eval(name, n - 1).unwrap()
                );
            }
        }
    }

    #[test]
    fn undefined_and_cyclic_symbols() {
        let mut sys = RecursiveSystem::new();
        sys.define("x", Definition::Word(w("y")));
        assert_eq!(sys.validate(), Err(TreeError::UndefinedSymbol("y".into())));
        assert_eq!(
            sys.eval("x", 2),
            Err(TreeError::UndefinedSymbol("y".into()))
        );
        assert_eq!(
            sys.eval("z", 2),
            Err(TreeError::UndefinedSymbol("z".into()))
        );

        sys.define("y", Definition::Word(w("x x")));
        assert!(matches!(
            sys.eval("x", 3),
            Err(TreeError::CyclicDefinition(_))
        ));
    }

    #[test]
    fn word_definitions_and_inverses() {
        let mut sys = r1_system();
        sys.define("c", Definition::Word(w("a2 b1 a2^-1")));
        let mut ev = Evaluator::new(&sys);
        let a2 = ev.eval("a2", 5).unwrap();
        let b1 = ev.eval("b1", 5).unwrap();
        assert_eq!(ev.eval("c", 5).unwrap(), b1.conjugate_by(&a2));
    }
}
