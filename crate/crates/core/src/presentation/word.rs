//! Words over the two generators `x`, `y` of the free group F2.
//!
//! A [`Word`] is stored as a sequence of syllables `(generator, exponent)`.
//! Every constructor freely reduces, so two words compare equal exactly when
//! they represent the same element of F2.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{PslError, Result};

/// One of the two free generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Gen {
    X,
    Y,
}

impl Gen {
    pub fn other(self) -> Gen {
        match self {
            Gen::X => Gen::Y,
            Gen::Y => Gen::X,
        }
    }
}

/// A generator or its inverse, encoded so that the natural order is the
/// shortlex letter order `x < X < y < Y` and `inverse` flips the low bit.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u8);

impl Letter {
    pub const X: Letter = Letter(0);
    pub const X_INV: Letter = Letter(1);
    pub const Y: Letter = Letter(2);
    pub const Y_INV: Letter = Letter(3);
    pub const ALL: [Letter; 4] = [Letter::X, Letter::X_INV, Letter::Y, Letter::Y_INV];

    pub fn new(gen: Gen, positive: bool) -> Letter {
        let base = match gen {
            Gen::X => 0,
            Gen::Y => 2,
        };
        Letter(if positive { base } else { base + 1 })
    }

    pub fn from_index(i: usize) -> Letter {
        assert!(i < 4, "letter index out of range");
        Letter(i as u8)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn inverse(self) -> Letter {
        Letter(self.0 ^ 1)
    }

    pub fn gen(self) -> Gen {
        if self.0 < 2 {
            Gen::X
        } else {
            Gen::Y
        }
    }

    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    pub fn to_char(self) -> char {
        ['x', 'X', 'y', 'Y'][self.index()]
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'x' | 'a' => Some(Letter::X),
            'X' | 'A' => Some(Letter::X_INV),
            'y' | 'b' => Some(Letter::Y),
            'Y' | 'B' => Some(Letter::Y_INV),
            _ => None,
        }
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Syllable {
    pub gen: Gen,
    pub exp: i32,
}

/// A freely reduced word in F2.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    syllables: Vec<Syllable>,
}

impl Word {
    pub fn identity() -> Word {
        Word::default()
    }

    pub fn gen(g: Gen) -> Word {
        Word::power_of(g, 1)
    }

    pub fn power_of(g: Gen, exp: i32) -> Word {
        Word::from_syllables([Syllable { gen: g, exp }])
    }

    /// Builds a word from arbitrary syllables, freely reducing them.
    pub fn from_syllables<I: IntoIterator<Item = Syllable>>(syllables: I) -> Word {
        let mut out: Vec<Syllable> = Vec::new();
        for s in syllables {
            if s.exp == 0 {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.gen == s.gen => {
                    last.exp += s.exp;
                    if last.exp == 0 {
                        out.pop();
                    }
                }
                _ => out.push(s),
            }
        }
        Word { syllables: out }
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
        Word::from_syllables(letters.into_iter().map(|l| Syllable {
            gen: l.gen(),
            exp: if l.is_positive() { 1 } else { -1 },
        }))
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::with_capacity(self.len());
        for s in &self.syllables {
            let l = Letter::new(s.gen, s.exp > 0);
            for _ in 0..s.exp.unsigned_abs() {
                out.push(l);
            }
        }
        out
    }

    /// Number of letters.
    pub fn len(&self) -> usize {
        self.syllables.iter().map(|s| s.exp.unsigned_abs() as usize).sum()
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }

    pub fn inverse(&self) -> Word {
        Word {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable { gen: s.gen, exp: -s.exp })
                .collect(),
        }
    }

    pub fn mul(&self, other: &Word) -> Word {
        Word::from_syllables(self.syllables.iter().chain(other.syllables.iter()).copied())
    }

    pub fn pow(&self, k: i32) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// Sum of exponents of `g` (the image in the abelianization).
    pub fn exponent_sum(&self, g: Gen) -> i64 {
        self.syllables.iter().filter(|s| s.gen == g).map(|s| s.exp as i64).sum()
    }

    /// Number of letters `g` or `g^-1` in the word.
    pub fn occurrences(&self, g: Gen) -> usize {
        self.syllables
            .iter()
            .filter(|s| s.gen == g)
            .map(|s| s.exp.unsigned_abs() as usize)
            .sum()
    }

    /// A cyclically reduced conjugate of the word.
    pub fn cyclically_reduce(&self) -> Word {
        let mut syl = self.syllables.clone();
        while syl.len() >= 2 && syl[0].gen == syl[syl.len() - 1].gen {
            let last = syl.pop().unwrap();
            syl[0].exp += last.exp;
            if syl[0].exp == 0 {
                syl.remove(0);
            }
        }
        Word { syllables: syl }
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.syllables.len() < 2 || self.syllables[0].gen != self.syllables[self.syllables.len() - 1].gen
    }

    /// All cyclic permutations of the letter sequence (as words).
    pub fn cyclic_conjugates(&self) -> Vec<Word> {
        let letters = self.cyclically_reduce().letters();
        let n = letters.len();
        (0..n.max(1))
            .map(|i| Word::from_letters(letters[i..].iter().chain(letters[..i].iter()).copied()))
            .collect()
    }

    /// Exponent-notation rendering, e.g. `x^-2yx^-1`.
    pub fn pretty(&self) -> String {
        if self.is_identity() {
            return "1".to_string();
        }
        let mut s = String::new();
        for syl in &self.syllables {
            s.push(match syl.gen {
                Gen::X => 'x',
                Gen::Y => 'y',
            });
            if syl.exp != 1 {
                s.push_str(&format!("^{}", syl.exp));
            }
        }
        s
    }

    /// Parses `xYx`, `x^-2y`, `(x^-1y)^3x^-1`, `e` or `1`.
    pub fn parse(s: &str) -> Result<Word> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.is_empty() || chars == ['e'] || chars == ['1'] {
            return Ok(Word::identity());
        }
        let mut pos = 0;
        let w = parse_seq(&chars, &mut pos)?;
        if pos != chars.len() {
            return Err(PslError::Parse(format!("unexpected '{}' in word {s:?}", chars[pos])));
        }
        Ok(w)
    }
}

fn parse_seq(chars: &[char], pos: &mut usize) -> Result<Word> {
    let mut acc = Word::identity();
    while *pos < chars.len() && chars[*pos] != ')' {
        let atom = if chars[*pos] == '(' {
            *pos += 1;
            let inner = parse_seq(chars, pos)?;
            if *pos >= chars.len() || chars[*pos] != ')' {
                return Err(PslError::Parse("unbalanced parenthesis".into()));
            }
            *pos += 1;
            inner
        } else if let Some(l) = Letter::from_char(chars[*pos]) {
            *pos += 1;
            Word::from_letters([l])
        } else {
            return Err(PslError::Parse(format!("bad letter '{}'", chars[*pos])));
        };
        let exp = parse_exponent(chars, pos)?;
        acc = acc.mul(&atom.pow(exp));
    }
    Ok(acc)
}

fn parse_exponent(chars: &[char], pos: &mut usize) -> Result<i32> {
    if *pos >= chars.len() || chars[*pos] != '^' {
        return Ok(1);
    }
    *pos += 1;
    let start = *pos;
    if *pos < chars.len() && (chars[*pos] == '-' || chars[*pos] == '+') {
        *pos += 1;
    }
    while *pos < chars.len() && chars[*pos].is_ascii_digit() {
        *pos += 1;
    }
    let text: String = chars[start..*pos].iter().collect();
    text.parse::<i32>()
        .map_err(|_| PslError::Parse(format!("bad exponent {text:?}")))
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "e");
        }
        for l in self.letters() {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({})", self.pretty())
    }
}

impl FromStr for Word {
    type Err = PslError;
    fn from_str(s: &str) -> Result<Word> {
        Word::parse(s)
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Word, D::Error> {
        let s = String::deserialize(d)?;
        Word::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Splits a cyclically reduced nonempty word into `(base, k)` with
/// `base^k = w` and `k` maximal.
pub fn proper_power(w: &Word) -> (Word, usize) {
    let letters = w.letters();
    let n = letters.len();
    if n == 0 {
        return (Word::identity(), 1);
    }
    for period in 1..=n {
        if !n.is_multiple_of(period) {
            continue;
        }
        if (period..n).all(|i| letters[i] == letters[i - period]) {
            return (Word::from_letters(letters[..period].iter().copied()), n / period);
        }
    }
    unreachable!("the full length is always a period")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn free_reduction() {
        assert_eq!(w("xyYx"), w("x^2"));
        assert_eq!(w("x^2y").mul(&w("Yx")), w("x^3"));
        assert_eq!(w("xY").inverse(), w("yX"));
        assert!(w("xX").is_identity());
    }

    #[test]
    fn cyclic_reduction() {
        assert_eq!(w("X(yx)").cyclically_reduce(), w("y"));
        // the trailing x^-1 survives: x^-1 y x x^-1 = x^-1 y
        assert_eq!(w("X(yx)X").cyclically_reduce(), w("Xy"));
        let sq = w("(x^-1yx^-1)^2");
        assert_eq!(sq, w("XyXXyX"));
        assert_eq!(sq.len(), 6);
        assert_eq!(w("x^-1y^3x^-1").cyclically_reduce(), w("x^-2y^3"));
    }

    #[test]
    fn proper_powers() {
        let (b, k) = proper_power(&w("(x^-1yx^-1)^2"));
        assert_eq!((b, k), (w("XyX"), 2));
        assert_eq!(proper_power(&w("x^-4")), (w("X"), 4));
        assert_eq!(proper_power(&w("x^-2y^-2")).1, 1);
        assert_eq!(proper_power(&w("(xy^-1)^4")), (w("xY"), 4));
    }

    #[test]
    fn parsing_and_display() {
        assert_eq!(w("x^-1y(xy^-1)^2").to_string(), "XyxYxY");
        assert_eq!(w("x^-2y^-1xy^-1").pretty(), "x^-2y^-1xy^-1");
        assert_eq!(w("e"), Word::identity());
        assert_eq!(w("aB"), w("xY"));
        assert!(Word::parse("xz").is_err());
        assert!(Word::parse("(x").is_err());
        assert!(Word::parse("x^").is_err());
    }

    #[test]
    fn counts() {
        let r = w("(x^-1y)^3x^-1");
        assert_eq!(r.occurrences(Gen::X), 4);
        assert_eq!(r.occurrences(Gen::Y), 3);
        assert_eq!(r.exponent_sum(Gen::X), -4);
    }
}
