//! Runtime-selected models for the command line and JSON reports.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{instantiate_quotient, Free2, FreeAbelian2, Group, Heisenberg, KleinBottle, ModelKind, QuotientGroup};
use crate::error::{PslError, Result};
use crate::presentation::{Presentation, Word};

/// A model-tagged element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Element {
    ReducedWord(Word),
    IntPair(i64, i64),
    KleinPair(i64, i64),
    HeisenbergTriple(i64, i64, i64),
    QuotientWord(Word),
}

#[derive(Clone, Debug)]
pub enum Model {
    Free2(Free2),
    FreeAbelian2(FreeAbelian2<i64>),
    Klein(KleinBottle<i64>),
    Heisenberg(Heisenberg<i64>),
    Quotient(QuotientGroup),
}

impl Model {
    /// `free2`, `z2`, `klein`, `heisenberg` (and a few aliases), or a
    /// quotient as printed by [`Group::name`], e.g. `quotient<x, y | x^2, y>`.
    pub fn by_name(name: &str) -> Result<Model> {
        if let Some(rest) = name.trim().strip_prefix("quotient") {
            let inner = rest
                .trim()
                .strip_prefix('<')
                .and_then(|r| r.strip_suffix('>'))
                .ok_or_else(|| PslError::Parse(format!("bad quotient model {name:?}")))?;
            let rels = inner.split_once('|').map_or(inner, |(_, r)| r);
            let p = Presentation::parse_list(rels)?;
            return Ok(Model::Quotient(instantiate_quotient(&p, 10_000, 50)?));
        }
        Ok(match name.to_ascii_lowercase().as_str() {
            "free2" | "f2" | "free" => Model::Free2(Free2),
            "z2" | "zsq" | "abelian" => Model::FreeAbelian2(FreeAbelian2::new()),
            "klein" | "kleinbottle" => Model::Klein(KleinBottle::new()),
            "heisenberg" | "heis" => Model::Heisenberg(Heisenberg::new()),
            other => return Err(PslError::InvalidInput(format!("unknown model {other:?}"))),
        })
    }

    fn mismatch(&self, e: &Element) -> PslError {
        PslError::ModelMismatch(format!("{e:?} is not an element of {}", self.name()))
    }

    /// Checked product; elements of another model are rejected.
    pub fn try_multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        use Element as E;
        Ok(match (self, a, b) {
            (Model::Free2(g), E::ReducedWord(p), E::ReducedWord(q)) => E::ReducedWord(g.multiply(p, q)),
            (Model::FreeAbelian2(g), E::IntPair(a0, a1), E::IntPair(b0, b1)) => {
                let (m, n) = g.multiply(&(*a0, *a1), &(*b0, *b1));
                E::IntPair(m, n)
            }
            (Model::Klein(g), E::KleinPair(a0, a1), E::KleinPair(b0, b1)) => {
                let (m, n) = g.multiply(&(*a0, *a1), &(*b0, *b1));
                E::KleinPair(m, n)
            }
            (Model::Heisenberg(g), E::HeisenbergTriple(a0, a1, a2), E::HeisenbergTriple(b0, b1, b2)) => {
                let (p, q, r) = g.multiply(&(*a0, *a1, *a2), &(*b0, *b1, *b2));
                E::HeisenbergTriple(p, q, r)
            }
            (Model::Quotient(g), E::QuotientWord(p), E::QuotientWord(q)) => E::QuotientWord(g.multiply(p, q)),
            _ => {
                let bad = if self.owns(a) { b } else { a };
                return Err(self.mismatch(bad));
            }
        })
    }

    pub fn owns(&self, e: &Element) -> bool {
        matches!(
            (self, e),
            (Model::Free2(_), Element::ReducedWord(_))
                | (Model::FreeAbelian2(_), Element::IntPair(..))
                | (Model::Klein(_), Element::KleinPair(..))
                | (Model::Heisenberg(_), Element::HeisenbergTriple(..))
                | (Model::Quotient(_), Element::QuotientWord(_))
        )
    }

    pub fn check(&self, e: &Element) -> Result<()> {
        if self.owns(e) {
            Ok(())
        } else {
            Err(self.mismatch(e))
        }
    }

    /// Parses a `;`-separated element list such as `e;0,1;1,1`.
    pub fn parse_set(&self, s: &str) -> Result<Vec<Element>> {
        let mut out: Vec<Element> = Vec::new();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let e = self.parse_element(part)?;
            if out.contains(&e) {
                return Err(PslError::InvalidInput(format!("duplicate element {part:?}")));
            }
            out.push(e);
        }
        Ok(out)
    }

    /// Wraps a concrete Klein pair.
    pub fn klein(m: i64, n: i64) -> Element {
        Element::KleinPair(m, n)
    }
}

impl Group for Model {
    type Elem = Element;

    fn kind(&self) -> ModelKind {
        match self {
            Model::Free2(g) => g.kind(),
            Model::FreeAbelian2(g) => g.kind(),
            Model::Klein(g) => g.kind(),
            Model::Heisenberg(g) => g.kind(),
            Model::Quotient(g) => g.kind(),
        }
    }

    fn name(&self) -> String {
        match self {
            Model::Free2(g) => g.name(),
            Model::FreeAbelian2(g) => g.name(),
            Model::Klein(g) => g.name(),
            Model::Heisenberg(g) => g.name(),
            Model::Quotient(g) => g.name(),
        }
    }

    fn identity(&self) -> Element {
        match self {
            Model::Free2(_) => Element::ReducedWord(Word::identity()),
            Model::FreeAbelian2(_) => Element::IntPair(0, 0),
            Model::Klein(_) => Element::KleinPair(0, 0),
            Model::Heisenberg(_) => Element::HeisenbergTriple(0, 0, 0),
            Model::Quotient(_) => Element::QuotientWord(Word::identity()),
        }
    }

    /// Panics on elements of another model; use [`Model::try_multiply`] for
    /// untrusted input.
    fn multiply(&self, a: &Element, b: &Element) -> Element {
        self.try_multiply(a, b).unwrap_or_else(|e| panic!("{e}"))
    }

    fn inverse(&self, a: &Element) -> Element {
        use Element as E;
        match (self, a) {
            (Model::Free2(g), E::ReducedWord(w)) => E::ReducedWord(g.inverse(w)),
            (Model::FreeAbelian2(g), E::IntPair(m, n)) => {
                let (p, q) = g.inverse(&(*m, *n));
                E::IntPair(p, q)
            }
            (Model::Klein(g), E::KleinPair(m, n)) => {
                let (p, q) = g.inverse(&(*m, *n));
                E::KleinPair(p, q)
            }
            (Model::Heisenberg(g), E::HeisenbergTriple(a0, a1, a2)) => {
                let (p, q, r) = g.inverse(&(*a0, *a1, *a2));
                E::HeisenbergTriple(p, q, r)
            }
            (Model::Quotient(g), E::QuotientWord(w)) => E::QuotientWord(g.inverse(w)),
            _ => panic!("{}", self.mismatch(a)),
        }
    }

    fn generators(&self) -> [Element; 2] {
        match self {
            Model::Free2(g) => g.generators().map(Element::ReducedWord),
            Model::FreeAbelian2(g) => g.generators().map(|(m, n)| Element::IntPair(m, n)),
            Model::Klein(g) => g.generators().map(|(m, n)| Element::KleinPair(m, n)),
            Model::Heisenberg(g) => g.generators().map(|(a, b, c)| Element::HeisenbergTriple(a, b, c)),
            Model::Quotient(g) => g.generators().map(Element::QuotientWord),
        }
    }

    fn format(&self, a: &Element) -> String {
        a.to_string()
    }

    fn validate(&self, a: &Element) -> Result<()> {
        self.check(a)
    }

    /// Coordinates (`1,-1`), words over `x, X, y, Y` (evaluated in the
    /// model), or `e`.
    fn parse_element(&self, s: &str) -> Result<Element> {
        let s = s.trim();
        if s == "e" || s == "1" {
            return Ok(self.identity());
        }
        let numeric = s.contains(',') || s.trim_start_matches('-').chars().all(|c| c.is_ascii_digit());
        Ok(match self {
            Model::Free2(g) => Element::ReducedWord(g.parse_element(s)?),
            Model::Quotient(g) => Element::QuotientWord(g.parse_element(s)?),
            Model::FreeAbelian2(g) if numeric => {
                let (m, n) = g.parse_element(s)?;
                Element::IntPair(m, n)
            }
            Model::Klein(g) if numeric => {
                let (m, n) = g.parse_element(s)?;
                Element::KleinPair(m, n)
            }
            Model::Heisenberg(g) if numeric => {
                let (a, b, c) = g.parse_element(s)?;
                Element::HeisenbergTriple(a, b, c)
            }
            _ => self.eval(&Word::parse(s)?),
        })
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::ReducedWord(w) | Element::QuotientWord(w) => write!(f, "{w}"),
            Element::IntPair(m, n) | Element::KleinPair(m, n) => write!(f, "{m},{n}"),
            Element::HeisenbergTriple(a, b, c) => write!(f, "{a},{b},{c}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals() {
        let k = Model::by_name("klein").unwrap();
        let c = k.parse_set("e;0,1;1,1").unwrap();
        assert_eq!(c, vec![Model::klein(0, 0), Model::klein(0, 1), Model::klein(1, 1)]);
        assert_eq!(k.parse_element("xyx").unwrap(), k.parse_element("y").unwrap());
        assert!(k.parse_set("0,1;0,1").is_err());
        let f = Model::by_name("free2").unwrap();
        assert_eq!(f.parse_element("xX").unwrap(), f.identity());
        let q = Model::by_name("quotient<x, y | x^2, y>").unwrap();
        assert_eq!(Model::by_name(&q.name()).unwrap().name(), q.name());
        assert_eq!(q.parse_element("xxx").unwrap(), q.parse_element("x").unwrap());
        let h = Model::by_name("heisenberg").unwrap();
        assert_eq!(h.parse_element("xyXY").unwrap(), Element::HeisenbergTriple(0, 0, 1));
    }

    #[test]
    fn mismatch_is_reported() {
        let k = Model::by_name("klein").unwrap();
        let z = Model::by_name("z2").unwrap();
        let a = k.parse_element("1,0").unwrap();
        let b = z.parse_element("1,0").unwrap();
        assert!(matches!(k.try_multiply(&a, &b), Err(PslError::ModelMismatch(_))));
        assert!(k.try_multiply(&a, &a).is_ok());
    }
}
