use std::fmt;

use super::MatrixError;

/// Index of a symbol inside an [`Alphabet`].
pub type Symbol = u8;

/// Finite ordered set of symbol tokens with a designated zero and one.
///
/// Symbols other than the designated pair (for instance the ghost symbol
/// `1^ν` of the superboolean semiring) are treated as "arbitrary nonzero":
/// they never satisfy a forced-zero or forced-one constraint.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<String>,
    zero: Symbol,
    one: Symbol,
}

impl Alphabet {
    pub const MAX_SYMBOLS: usize = 255;

    pub fn new(symbols: Vec<String>, zero: usize, one: usize) -> Result<Self, MatrixError> {
        if symbols.len() < 2 {
            return Err(MatrixError::Alphabet("at least two symbols are required".into()));
        }
        if symbols.len() > Self::MAX_SYMBOLS {
            return Err(MatrixError::Alphabet(format!(
                "at most {} symbols are supported",
                Self::MAX_SYMBOLS
            )));
        }
        if zero >= symbols.len() || one >= symbols.len() || zero == one {
            return Err(MatrixError::Alphabet(format!(
                "invalid zero/one positions ({zero}, {one}) for {} symbols",
                symbols.len()
            )));
        }
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() || s.chars().any(char::is_whitespace) {
                return Err(MatrixError::Alphabet(format!("symbol {s:?} is not a single token")));
            }
            if symbols[..i].contains(s) {
                return Err(MatrixError::Alphabet(format!("duplicate symbol {s:?}")));
            }
        }
        Ok(Alphabet {
            symbols,
            zero: zero as Symbol,
            one: one as Symbol,
        })
    }

    /// `{0, 1}`.
    pub fn binary() -> Self {
        Alphabet::new(vec!["0".into(), "1".into()], 0, 1).unwrap()
    }

    /// `{0, 1, v}` where `v` stands for the ghost element `1^ν`.
    pub fn superboolean() -> Self {
        Alphabet::new(vec!["0".into(), "1".into(), "v".into()], 0, 1).unwrap()
    }

    /// Binary alphabet extended with `extra` further symbols named `v`, `v2`, `v3`, ...
    pub fn with_extras(extra: usize) -> Self {
        let mut symbols = vec!["0".to_string(), "1".to_string()];
        for i in 0..extra {
            symbols.push(if i == 0 { "v".to_string() } else { format!("v{}", i + 1) });
        }
        Alphabet::new(symbols, 0, 1).unwrap()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn zero(&self) -> Symbol {
        self.zero
    }

    pub fn one(&self) -> Symbol {
        self.one
    }

    pub fn token(&self, s: Symbol) -> &str {
        &self.symbols[s as usize]
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn lookup(&self, token: &str) -> Option<Symbol> {
        self.symbols.iter().position(|s| s == token).map(|i| i as Symbol)
    }

    /// Appends a new token, returning its index.
    pub(crate) fn push(&mut self, token: &str) -> Result<Symbol, MatrixError> {
        if self.symbols.len() >= Self::MAX_SYMBOLS {
            return Err(MatrixError::Alphabet("too many distinct tokens".into()));
        }
        self.symbols.push(token.to_string());
        Ok((self.symbols.len() - 1) as Symbol)
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.symbols.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_alphabets() {
        assert!(Alphabet::new(vec!["0".into()], 0, 0).is_err());
        assert!(Alphabet::new(vec!["0".into(), "1".into()], 0, 0).is_err());
        assert!(Alphabet::new(vec!["0".into(), "0".into()], 0, 1).is_err());
        assert!(Alphabet::new(vec!["0".into(), "1".into()], 0, 2).is_err());
        assert!(Alphabet::new(vec!["0".into(), "a b".into()], 0, 1).is_err());
    }

    #[test]
    fn designated_symbols() {
        let a = Alphabet::superboolean();
        assert_eq!(a.token(a.zero()), "0");
        assert_eq!(a.token(a.one()), "1");
        assert_eq!(a.lookup("v"), Some(2));
        assert_eq!(Alphabet::with_extras(2).symbols(), &["0", "1", "v", "v2"]);
    }
}
