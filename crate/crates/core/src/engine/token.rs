//! Generator tokens and words.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::EngineError;

/// A generator or the inverse of an invertible generator. Indices are
/// 1-based; `H(j)` is the starred generator `g*_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tok {
    E,
    G(u8),
    H(u8),
    GInv(u8),
    HInv(u8),
}

pub type Word = Vec<Tok>;

impl Tok {
    pub fn is_inverse(self) -> bool {
        matches!(self, Tok::GInv(_) | Tok::HInv(_))
    }

    /// The token with the inverse removed.
    pub fn positive(self) -> Tok {
        match self {
            Tok::GInv(i) => Tok::G(i),
            Tok::HInv(i) => Tok::H(i),
            t => t,
        }
    }

    pub fn inverse(self) -> Option<Tok> {
        match self {
            Tok::E => None,
            Tok::G(i) => Some(Tok::GInv(i)),
            Tok::H(i) => Some(Tok::HInv(i)),
            Tok::GInv(i) => Some(Tok::G(i)),
            Tok::HInv(i) => Some(Tok::H(i)),
        }
    }

    /// Exchanges plain and starred generators.
    pub fn swap_sides(self) -> Tok {
        match self {
            Tok::E => Tok::E,
            Tok::G(i) => Tok::H(i),
            Tok::H(i) => Tok::G(i),
            Tok::GInv(i) => Tok::HInv(i),
            Tok::HInv(i) => Tok::GInv(i),
        }
    }

    /// Is the token a generator of `B_{r,s}`?
    pub fn valid_for(self, r: usize, s: usize) -> bool {
        match self {
            Tok::E => true,
            Tok::G(i) | Tok::GInv(i) => i >= 1 && (i as usize) < r,
            Tok::H(j) | Tok::HInv(j) => j >= 1 && (j as usize) < s,
        }
    }

    /// All tokens of `B_{r,s}` in closure order: `e`, the `g_i`, the `g*_j`,
    /// then the inverses in the same order.
    pub fn all(r: usize, s: usize) -> Vec<Tok> {
        let mut v = Tok::positives(r, s);
        v.extend((1..r).map(|i| Tok::GInv(i as u8)));
        v.extend((1..s).map(|j| Tok::HInv(j as u8)));
        v
    }

    /// Positive tokens in closure order.
    pub fn positives(r: usize, s: usize) -> Vec<Tok> {
        let mut v = vec![Tok::E];
        v.extend((1..r).map(|i| Tok::G(i as u8)));
        v.extend((1..s).map(|j| Tok::H(j as u8)));
        v
    }

    /// Position among [`Tok::positives`]; `None` for inverses.
    pub fn slot(self, r: usize) -> Option<usize> {
        match self {
            Tok::E => Some(0),
            Tok::G(i) => Some(i as usize),
            Tok::H(j) => Some(r - 1 + j as usize),
            _ => None,
        }
    }
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::E => write!(f, "e1"),
            Tok::G(i) => write!(f, "g{i}"),
            Tok::H(j) => write!(f, "g*{j}"),
            Tok::GInv(i) => write!(f, "g{i}^-1"),
            Tok::HInv(j) => write!(f, "g*{j}^-1"),
        }
    }
}

impl FromStr for Tok {
    type Err = EngineError;

    fn from_str(s: &str) -> Result<Self, EngineError> {
        let bad = || EngineError::Parse(format!("bad token {s:?}"));
        if s == "e1" || s == "e" {
            return Ok(Tok::E);
        }
        let (body, inv) = match s.strip_suffix("^-1") {
            Some(b) => (b, true),
            None => (s, false),
        };
        let (star, idx) = if let Some(i) = body.strip_prefix("g*") {
            (true, i)
        } else if let Some(i) = body.strip_prefix('g') {
            (false, i)
        } else {
            return Err(bad());
        };
        let i: u8 = idx.parse().map_err(|_| bad())?;
        if i == 0 {
            return Err(bad());
        }
        Ok(match (star, inv) {
            (false, false) => Tok::G(i),
            (true, false) => Tok::H(i),
            (false, true) => Tok::GInv(i),
            (true, true) => Tok::HInv(i),
        })
    }
}

impl Serialize for Tok {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Tok {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// Formats a word as space-separated tokens; the empty word is `1`.
pub fn format_word(w: &[Tok]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter()
        .map(|t| t.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Parses a whitespace-separated token list; `1` is the empty word.
pub fn parse_word(s: &str) -> Result<Word, EngineError> {
    let s = s.trim();
    if s == "1" || s.is_empty() {
        return Ok(Vec::new());
    }
    s.split_whitespace().map(str::parse).collect()
}

/// `g_{i,j}` as a word: `g_{i-1} ... g_j` for `i > j`, `g_i ... g_{j-1}`
/// for `i < j`, empty for `i = j`.
pub fn g_range(i: usize, j: usize, starred: bool) -> Word {
    let mk = |k: usize| {
        if starred {
            Tok::H(k as u8)
        } else {
            Tok::G(k as u8)
        }
    };
    if i > j {
        (j..i).rev().map(mk).collect()
    } else {
        (i..j).map(mk).collect()
    }
}

/// The inverse of a word of invertible tokens.
pub fn invert_word(w: &[Tok]) -> Option<Word> {
    w.iter().rev().map(|t| t.inverse()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn token_roundtrip() {
        for t in Tok::all(4, 3) {
            assert_eq!(t.to_string().parse::<Tok>().unwrap(), t);
        }
        assert!("g0".parse::<Tok>().is_err());
        assert!("x1".parse::<Tok>().is_err());
    }

    #[test]
    fn ranges() {
        assert_eq!(g_range(4, 1, false), vec![Tok::G(3), Tok::G(2), Tok::G(1)]);
        assert_eq!(g_range(1, 3, true), vec![Tok::H(1), Tok::H(2)]);
        assert!(g_range(2, 2, false).is_empty());
    }
}
