//! Sound syntactic rules deciding what a single relator forces in a
//! torsion-free group `<x, y>` where `1, x, y` are pairwise distinct.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::coset::todd_coxeter;
use super::rewriting::{complete_any, KbCaps};
use super::{proper_power, Gen, Letter, Presentation, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClassTag {
    /// A nontrivial element would have finite order.
    ForcesTorsion,
    /// `<x, y>` would be cyclic, hence abelian.
    ForcesAbelian,
    /// Two of `1, x, y` (or `y^-1`) would coincide.
    ForcesDegenerate,
    Star,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClassRule {
    /// Base is a single letter.
    SingleLetter,
    /// Both generators occur exactly once in the base.
    BothOnce,
    /// One generator occurs exactly once in the base.
    OneOnce,
    /// Base is conjugate to `v^j g^{±1}` with the other generator once in `v`.
    PowerTimesLetter,
    /// Base is a commutator of the two generators (up to signs).
    Commutator,
    None,
}

/// Marking in the style of the square-relator table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mark {
    A,
    T,
    Star,
}

impl fmt::Display for Mark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mark::A => "A",
            Mark::T => "T",
            Mark::Star => "*",
        })
    }
}

impl Mark {
    pub fn parse(s: &str) -> Option<Mark> {
        match s.trim() {
            "A" => Some(Mark::A),
            "T" => Some(Mark::T),
            "*" => Some(Mark::Star),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelatorClass {
    pub tag: ClassTag,
    pub rule: ClassRule,
    /// Torsion: the element of finite order. Abelian: a generator of the
    /// cyclic group. Degenerate: the base word forcing the coincidence.
    /// Star: the base.
    pub witness: Word,
    /// Proper-power exponent of the cyclically reduced relator.
    pub power: usize,
}

impl RelatorClass {
    /// Degenerate folds into `A`.
    pub fn mark(&self) -> Mark {
        match self.tag {
            ClassTag::ForcesTorsion => Mark::T,
            ClassTag::ForcesAbelian | ClassTag::ForcesDegenerate => Mark::A,
            ClassTag::Star => Mark::Star,
        }
    }
}

pub fn classify_relator(w: &Word) -> RelatorClass {
    let r = w.cyclically_reduce();
    let (base, k) = proper_power(&r);
    let class = |tag, rule, witness| RelatorClass { tag, rule, witness, power: k };
    if base.len() == 1 {
        let g = base.letters()[0].gen();
        return if k >= 2 {
            class(ClassTag::ForcesTorsion, ClassRule::SingleLetter, Word::gen(g))
        } else {
            class(ClassTag::ForcesDegenerate, ClassRule::SingleLetter, base)
        };
    }
    let ox = base.occurrences(Gen::X);
    let oy = base.occurrences(Gen::Y);
    if ox == 1 && oy == 1 {
        return class(ClassTag::ForcesDegenerate, ClassRule::BothOnce, base);
    }
    if ox == 1 || oy == 1 {
        // the once-occurring generator is a word in the other one
        let other = if ox == 1 { Gen::Y } else { Gen::X };
        return class(ClassTag::ForcesAbelian, ClassRule::OneOnce, Word::gen(other));
    }
    if let Some(v) = power_times_letter(&base) {
        return class(ClassTag::ForcesAbelian, ClassRule::PowerTimesLetter, v);
    }
    if is_commutator(&base) {
        return class(ClassTag::ForcesAbelian, ClassRule::Commutator, base);
    }
    class(ClassTag::Star, ClassRule::None, base)
}

/// Finds `v` with a cyclic conjugate of `base` equal to `v^j g^{±1}`, `j ≥ 2`,
/// `g` a generator, and the other generator occurring exactly once in `v`.
fn power_times_letter(base: &Word) -> Option<Word> {
    for conj in base.cyclic_conjugates() {
        let letters = conj.letters();
        let n = letters.len();
        for (body, g) in [(&letters[..n - 1], letters[n - 1]), (&letters[1..], letters[0])] {
            let m = body.len();
            for period in 1..=m / 2 {
                if m % period != 0 {
                    continue;
                }
                let v = &body[..period];
                if !body.chunks(period).all(|c| c == v) {
                    continue;
                }
                let vw = Word::from_letters(v.iter().copied());
                if vw.len() != period {
                    continue;
                }
                let h = g.gen().other();
                if v.iter().filter(|l: &&Letter| l.gen() == h).count() == 1 {
                    return Some(vw);
                }
            }
        }
    }
    None
}

/// `a b a^-1 b^-1` with `a`, `b` letters of different generators.
fn is_commutator(base: &Word) -> bool {
    let l = base.letters();
    l.len() == 4 && l[0].gen() != l[1].gen() && l[2] == l[0].inverse() && l[3] == l[1].inverse()
}

/// Independent check of a classification against the relator.
pub fn verify_class(relator: &Word, class: &RelatorClass) -> bool {
    let r = relator.cyclically_reduce();
    match class.tag {
        ClassTag::ForcesTorsion => {
            // r is conjugate to witness^{±k}
            let target = class.witness.pow(class.power as i32);
            let conj = r.cyclic_conjugates();
            class.power >= 2
                && !class.witness.is_identity()
                && (conj.contains(&target) || conj.contains(&target.inverse()))
        }
        ClassTag::ForcesAbelian if class.rule == ClassRule::Commutator => {
            // the completed system rewrites [x, y] to the identity
            let (base, _) = proper_power(&r);
            let p = Presentation::new([base]);
            complete_any(&p, KbCaps::default()).proves_abelian()
        }
        ClassTag::ForcesAbelian => {
            // <witness> has index 1 in <x, y | r^(1/k)>
            let (base, _) = proper_power(&r);
            let p = Presentation::new([base]);
            todd_coxeter(&p, std::slice::from_ref(&class.witness), 10_000).index() == Some(1)
        }
        ClassTag::ForcesDegenerate => {
            let (base, _) = proper_power(&r);
            base == class.witness && base.len() <= 2 && base.syllables().iter().all(|s| s.exp.abs() == 1)
        }
        ClassTag::Star => true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cls(s: &str) -> RelatorClass {
        classify_relator(&Word::parse(s).unwrap())
    }

    #[test]
    fn documented_examples() {
        let c = cls("x^-3y^-1");
        assert_eq!((c.tag, c.rule), (ClassTag::ForcesAbelian, ClassRule::OneOnce));
        let c = cls("x^-4");
        assert_eq!(c.tag, ClassTag::ForcesTorsion);
        assert_eq!(c.witness, Word::parse("x").unwrap());
        assert_eq!(c.power, 4);
        assert_eq!(cls("x^-2y^-2").tag, ClassTag::Star);
        let c = cls("(x^-1y)^3x^-1");
        assert_eq!((c.tag, c.rule), (ClassTag::ForcesAbelian, ClassRule::PowerTimesLetter));
        assert_eq!(c.witness, Word::parse("Xy").unwrap());
    }

    #[test]
    fn degenerate_power() {
        let c = cls("(xy^-1)^4");
        assert_eq!(c.tag, ClassTag::ForcesDegenerate);
        assert_eq!(c.mark(), Mark::A);
        assert_eq!(c.power, 4);
    }

    #[test]
    fn klein_relators() {
        for r in ["xyxY", "XYxY", "x^-1y^2x^-1", "(x^-1yx^-1)^2"] {
            let c = cls(r);
            assert!(verify_class(&Word::parse(r).unwrap(), &c), "{r}");
        }
        assert_eq!(cls("xyxY").mark(), Mark::Star);
        assert_eq!(cls("x^-2y^-2").mark(), Mark::Star);
        // the square of a word with y once still collapses to a cyclic group
        assert_eq!(cls("(x^-1yx^-1)^2").mark(), Mark::A);
    }

    #[test]
    fn witnesses_verify() {
        for r in ["XyxY", "yXYx", "x^-3y^-1", "x^-4", "(x^-1y)^3x^-1", "(xy^-1)^4", "Y^4", "xxyX"] {
            let w = Word::parse(r).unwrap();
            let c = classify_relator(&w);
            assert!(verify_class(&w, &c), "{r}: {c:?}");
        }
    }
}
