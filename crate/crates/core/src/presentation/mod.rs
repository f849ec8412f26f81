//! Two-generator presentations and the decision procedures used on them:
//! free reduction, abelianization, coset enumeration, string rewriting and
//! the relator classifier.

pub mod classify;
pub mod coset;
pub mod rewriting;
pub mod snf;
pub mod word;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{PslError, Result};
pub use word::{proper_power, Gen, Letter, Syllable, Word};

/// A presentation `<x, y | relators>`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn new<I: IntoIterator<Item = Word>>(relators: I) -> Presentation {
        Presentation {
            relators: relators.into_iter().filter(|w| !w.is_identity()).collect(),
        }
    }

    pub fn free() -> Presentation {
        Presentation { relators: Vec::new() }
    }

    pub fn generator_count(&self) -> usize {
        2
    }

    /// Parses a relator list: one word per line, `#` starts a comment.
    /// An equation `u = v` is read as the relator `u v^-1`.
    pub fn parse(text: &str) -> Result<Presentation> {
        let mut rels = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let word = parse_relation(line)
                .map_err(|e| PslError::Parse(format!("line {}: {e}", lineno + 1)))?;
            rels.push(word);
        }
        Ok(Presentation::new(rels))
    }

    /// Parses a comma-separated relator list such as `x^2=y^2, xyxY`.
    pub fn parse_list(text: &str) -> Result<Presentation> {
        let mut rels = Vec::new();
        for part in text.split([',', ';']) {
            let part = part.trim();
            if !part.is_empty() {
                rels.push(parse_relation(part)?);
            }
        }
        Ok(Presentation::new(rels))
    }
}

fn parse_relation(s: &str) -> Result<Word> {
    match s.split_once('=') {
        Some((lhs, rhs)) => {
            let l = Word::parse(lhs)?;
            let r = Word::parse(rhs)?;
            Ok(l.mul(&r.inverse()))
        }
        None => Word::parse(s),
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| r.pretty()).collect();
        write!(f, "<x, y | {}>", rels.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_file_format() {
        let p = Presentation::parse("# klein\nxyxY\n\nx^2 = y^2  # second\n").unwrap();
        assert_eq!(p.relators.len(), 2);
        assert_eq!(p.relators[1], Word::parse("xxYY").unwrap());
        assert!(Presentation::parse("xq").is_err());
    }

    #[test]
    fn parse_list_drops_trivial() {
        let p = Presentation::parse_list("x^3=y^2, xX").unwrap();
        assert_eq!(p.relators, vec![Word::parse("xxxYY").unwrap()]);
    }
}
