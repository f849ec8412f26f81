//! Knuth–Bendix completion for monoid presentations of two-generator groups.
//!
//! Letters are `x < X < y < Y`. The free-reduction rules `xX, Xx, yY, Yy -> e`
//! are always present, so irreducible words are freely reduced.

use std::cmp::Ordering;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{Letter, Presentation, Word};
use crate::error::{PslError, Result};

/// Reduction order used to orient equations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WordOrder {
    /// Length first, then lexicographic with `x < X < y < Y`.
    #[default]
    Shortlex,
    /// Recursive path order reading the leftmost letter as the outermost
    /// symbol, precedence `x < X < y < Y`. Completes some presentations
    /// (`a^2 = b^2`, `a^3 = b^2`) on which shortlex diverges.
    Recursive,
}

impl WordOrder {
    pub fn compare(self, u: &[u8], v: &[u8]) -> Ordering {
        match self {
            WordOrder::Shortlex => u.len().cmp(&v.len()).then_with(|| u.cmp(v)),
            WordOrder::Recursive => {
                if u == v {
                    Ordering::Equal
                } else if rpo_greater(u, v) {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
        }
    }
}

fn rpo_greater(u: &[u8], v: &[u8]) -> bool {
    let (n, m) = (u.len(), v.len());
    let w = m + 1;
    // gt[i*w + j] : u[i..] > v[j..]
    let mut gt = vec![false; (n + 1) * w];
    let suffix_eq = |i: usize, j: usize| n - i == m - j && u[i..] == v[j..];
    for i in (0..=n).rev() {
        for j in (0..=m).rev() {
            gt[i * w + j] = if j == m {
                i < n
            } else if i == n {
                false
            } else {
                let (a, b) = (u[i], v[j]);
                suffix_eq(i + 1, j)
                    || gt[(i + 1) * w + j]
                    || (a == b && gt[(i + 1) * w + j + 1])
                    || (a > b && gt[i * w + j + 1])
            };
        }
    }
    gt[0]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KbCaps {
    pub max_rules: usize,
    pub max_passes: usize,
}

impl Default for KbCaps {
    fn default() -> Self {
        KbCaps { max_rules: 10_000, max_passes: 50 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Word,
}

/// Result of a completion run. When `confluent` is false the rules are
/// sound consequences of the relators but do not decide equality.
#[derive(Clone, Debug)]
pub struct RewritingSystem {
    pub order: WordOrder,
    pub confluent: bool,
    pub passes: usize,
    rules: Vec<(Vec<u8>, Vec<u8>)>,
    index: HashMap<Vec<u8>, usize>,
    max_lhs: usize,
}

impl RewritingSystem {
    pub fn rule_count(&self) -> usize {
        self.rules.len()
    }

    pub fn rules(&self) -> Vec<Rule> {
        self.rules
            .iter()
            .map(|(l, r)| Rule { lhs: to_word(l), rhs: to_word(r) })
            .collect()
    }

    /// Irreducible form of `w`; canonical only when the system is confluent.
    pub fn reduce(&self, w: &Word) -> Word {
        to_word(&self.reduce_raw(&to_raw(w)))
    }

    pub fn reduce_raw(&self, w: &[u8]) -> Vec<u8> {
        reduce_with(&self.rules, &self.index, self.max_lhs, w)
    }

    /// Decides `u = v` in the group. Requires confluence.
    pub fn equal(&self, u: &Word, v: &Word) -> Result<bool> {
        if !self.confluent {
            return Err(PslError::Undecidable(
                "rewriting system is not confluent".into(),
            ));
        }
        Ok(self.reduce(u) == self.reduce(v))
    }

    /// `w = 1` follows from the rules. A `true` answer is sound even without
    /// confluence; `false` is only conclusive when the system is confluent.
    pub fn proves_trivial(&self, w: &Word) -> bool {
        self.reduce(w).is_identity()
    }

    /// The commutator `[x, y]` rewrites to the identity.
    pub fn proves_abelian(&self) -> bool {
        self.proves_trivial(&Word::parse("xyXY").expect("literal word"))
    }
}

fn to_raw(w: &Word) -> Vec<u8> {
    w.letters().into_iter().map(|l| l.index() as u8).collect()
}

fn to_word(raw: &[u8]) -> Word {
    Word::from_letters(raw.iter().map(|&c| Letter::from_index(c as usize)))
}

fn reduce_with(
    rules: &[(Vec<u8>, Vec<u8>)],
    index: &HashMap<Vec<u8>, usize>,
    max_lhs: usize,
    w: &[u8],
) -> Vec<u8> {
    let mut stack: Vec<u8> = Vec::with_capacity(w.len());
    let mut src: Vec<u8> = w.iter().rev().copied().collect();
    while let Some(a) = src.pop() {
        stack.push(a);
        let top = stack.len();
        for len in 1..=max_lhs.min(top) {
            if let Some(&id) = index.get(&stack[top - len..]) {
                stack.truncate(top - len);
                src.extend(rules[id].1.iter().rev());
                break;
            }
        }
    }
    stack
}

struct Completion {
    order: WordOrder,
    rules: Vec<Option<(Vec<u8>, Vec<u8>)>>,
    index: HashMap<Vec<u8>, usize>,
    max_lhs: usize,
    alive: usize,
    pending: Vec<(Vec<u8>, Vec<u8>)>,
}

struct Overflow;

impl Completion {
    fn reduce(&self, w: &[u8]) -> Vec<u8> {
        let mut stack: Vec<u8> = Vec::with_capacity(w.len());
        let mut src: Vec<u8> = w.iter().rev().copied().collect();
        while let Some(a) = src.pop() {
            stack.push(a);
            let top = stack.len();
            for len in 1..=self.max_lhs.min(top) {
                if let Some(&id) = self.index.get(&stack[top - len..]) {
                    stack.truncate(top - len);
                    let rhs = &self.rules[id].as_ref().expect("indexed rule is alive").1;
                    src.extend(rhs.iter().rev());
                    break;
                }
            }
        }
        stack
    }

    /// Adds `u = v` and every equation it displaces. Returns whether a rule was added.
    fn add_equation(&mut self, u: Vec<u8>, v: Vec<u8>, cap: usize) -> std::result::Result<bool, Overflow> {
        self.pending.push((u, v));
        let mut added = false;
        while let Some((u, v)) = self.pending.pop() {
            let u = self.reduce(&u);
            let v = self.reduce(&v);
            let (lhs, rhs) = match self.order.compare(&u, &v) {
                Ordering::Equal => continue,
                Ordering::Greater => (u, v),
                Ordering::Less => (v, u),
            };
            self.insert(lhs, rhs);
            added = true;
            if self.alive > cap {
                return Err(Overflow);
            }
        }
        Ok(added)
    }

    fn insert(&mut self, lhs: Vec<u8>, rhs: Vec<u8>) {
        // rules whose left side contains the new left side are displaced
        for id in 0..self.rules.len() {
            let Some((l, _)) = &self.rules[id] else { continue };
            if l.len() >= lhs.len() && contains(l, &lhs) {
                let (l, r) = self.rules[id].take().expect("checked alive");
                self.index.remove(&l);
                self.alive -= 1;
                self.pending.push((l, r));
            }
        }
        let id = self.rules.len();
        self.max_lhs = self.max_lhs.max(lhs.len());
        self.index.insert(lhs.clone(), id);
        self.rules.push(Some((lhs, rhs)));
        self.alive += 1;
        // right sides are kept irreducible
        let lhs = &self.rules[id].as_ref().expect("just inserted").0.clone();
        for j in 0..id {
            let needs = match &self.rules[j] {
                Some((_, r)) => r.len() >= lhs.len() && contains(r, lhs),
                None => false,
            };
            if needs {
                let r = self.reduce(&self.rules[j].as_ref().expect("alive").1);
                self.rules[j].as_mut().expect("alive").1 = r;
            }
        }
    }

    fn critical_pairs(&self, a: usize, b: usize) -> Vec<(Vec<u8>, Vec<u8>)> {
        let (Some((l1, r1)), Some((l2, r2))) = (&self.rules[a], &self.rules[b]) else {
            return Vec::new();
        };
        let mut out = Vec::new();
        for o in 1..l1.len().min(l2.len()) {
            if l1[l1.len() - o..] == l2[..o] {
                let mut p = r1.clone();
                p.extend_from_slice(&l2[o..]);
                let mut q = l1[..l1.len() - o].to_vec();
                q.extend_from_slice(r2);
                out.push((p, q));
            }
        }
        out
    }

    fn all_pairs_resolve(&self) -> bool {
        let n = self.rules.len();
        for a in 0..n {
            for b in 0..n {
                for (p, q) in self.critical_pairs(a, b) {
                    if self.reduce(&p) != self.reduce(&q) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn contains(hay: &[u8], needle: &[u8]) -> bool {
    hay.windows(needle.len()).any(|w| w == needle)
}

/// Runs Knuth–Bendix completion on `<x, y | p>`.
pub fn knuth_bendix(p: &Presentation, order: WordOrder, caps: KbCaps) -> RewritingSystem {
    let mut c = Completion {
        order,
        rules: Vec::new(),
        index: HashMap::new(),
        max_lhs: 0,
        alive: 0,
        pending: Vec::new(),
    };
    let mut overflow = false;
    for (a, b) in [(0u8, 1u8), (1, 0), (2, 3), (3, 2)] {
        c.insert(vec![a, b], Vec::new());
    }
    for r in &p.relators {
        if c.add_equation(to_raw(r), Vec::new(), caps.max_rules).is_err() {
            overflow = true;
            break;
        }
    }
    let mut passes = 0;
    let mut confluent = false;
    // pairs (a, b) with max(a, b) < checked were examined in an earlier pass
    let mut checked = 0usize;
    while !overflow && passes < caps.max_passes {
        passes += 1;
        let upto = c.rules.len();
        let mut added = false;
        'pass: for a in 0..upto {
            for b in 0..upto {
                if a < checked && b < checked {
                    continue;
                }
                for (u, v) in c.critical_pairs(a, b) {
                    match c.add_equation(u, v, caps.max_rules) {
                        Ok(true) => added = true,
                        Ok(false) => {}
                        Err(Overflow) => {
                            overflow = true;
                            break 'pass;
                        }
                    }
                }
            }
        }
        checked = upto;
        if overflow {
            break;
        }
        if !added && c.rules.len() == upto && c.all_pairs_resolve() {
            confluent = true;
            break;
        }
    }
    let mut rules: Vec<(Vec<u8>, Vec<u8>)> = c.rules.into_iter().flatten().collect();
    rules.sort_by(|a, b| WordOrder::Shortlex.compare(&a.0, &b.0));
    let index = rules.iter().enumerate().map(|(i, (l, _))| (l.clone(), i)).collect();
    let max_lhs = rules.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
    RewritingSystem { order, confluent, passes, rules, index, max_lhs }
}

/// Rules budget for the shortlex attempt in [`complete_any`]. Divergent
/// shortlex runs grow quadratically in cost, so the first attempt is kept small.
pub const SHORTLEX_PROBE_RULES: usize = 1_000;

/// Shortlex completion with a bounded probe, then the recursive order with
/// the full caps. Returns the first confluent system, else the shortlex one.
pub fn complete_any(p: &Presentation, caps: KbCaps) -> RewritingSystem {
    let probe = KbCaps { max_rules: caps.max_rules.min(SHORTLEX_PROBE_RULES), ..caps };
    let rs = knuth_bendix(p, WordOrder::Shortlex, probe);
    if rs.confluent {
        return rs;
    }
    let alt = knuth_bendix(p, WordOrder::Recursive, caps);
    if alt.confluent {
        alt
    } else {
        rs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(rels: &[&str]) -> Presentation {
        Presentation::parse_list(&rels.join(",")).unwrap()
    }

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn free_group_is_already_confluent() {
        let rs = knuth_bendix(&Presentation::free(), WordOrder::Shortlex, KbCaps::default());
        assert!(rs.confluent);
        assert_eq!(rs.rule_count(), 4);
        assert_eq!(rs.reduce(&w("xyYX")), Word::identity());
        assert!(!rs.proves_abelian());
    }

    #[test]
    fn klein_shortlex() {
        let rs = knuth_bendix(&pres(&["xyxY"]), WordOrder::Shortlex, KbCaps::default());
        assert!(rs.confluent);
        assert_eq!(rs.reduce(&w("xyx")), w("y"));
        assert!(!rs.proves_abelian());
    }

    #[test]
    fn square_root_presentation_needs_recursive_order() {
        let p = pres(&["x^2 = y^2"]);
        let caps = KbCaps { max_rules: 200, max_passes: 20 };
        assert!(!knuth_bendix(&p, WordOrder::Shortlex, caps).confluent);
        let rs = knuth_bendix(&p, WordOrder::Recursive, KbCaps::default());
        assert!(rs.confluent);
        // x^2 is central
        assert!(rs.equal(&w("xxy"), &w("yxx")).unwrap());
        assert!(!rs.proves_abelian());
    }

    #[test]
    fn trefoil() {
        let rs = complete_any(&pres(&["x^3 = y^2"]), KbCaps::default());
        assert!(rs.confluent);
        assert_eq!(rs.reduce(&w("xxx")), rs.reduce(&w("yy")));
        assert!(!rs.proves_abelian());
    }

    #[test]
    fn cyclic_quotient_is_abelian() {
        let rs = knuth_bendix(&pres(&["x^-3y^-1"]), WordOrder::Shortlex, KbCaps::default());
        assert!(rs.confluent);
        assert!(rs.proves_abelian());
    }

    #[test]
    fn finite_group_normal_forms_count() {
        // S3: the number of irreducible words equals the order
        let rs = knuth_bendix(&pres(&["x^2", "y^2", "(xy)^3"]), WordOrder::Shortlex, KbCaps::default());
        assert!(rs.confluent);
        let mut forms = std::collections::BTreeSet::new();
        let mut frontier = vec![Vec::<u8>::new()];
        for _ in 0..6 {
            let mut next = Vec::new();
            for f in &frontier {
                for l in 0..4u8 {
                    let mut g = f.clone();
                    g.push(l);
                    next.push(g);
                }
            }
            for g in &next {
                forms.insert(rs.reduce_raw(g));
            }
            frontier = next;
        }
        forms.insert(Vec::new());
        assert_eq!(forms.len(), 6);
    }

    #[test]
    fn non_confluent_refuses_equality() {
        let caps = KbCaps { max_rules: 50, max_passes: 5 };
        let rs = knuth_bendix(&pres(&["x^2 = y^2"]), WordOrder::Shortlex, caps);
        assert!(!rs.confluent);
        assert!(rs.equal(&w("x"), &w("y")).is_err());
    }

    #[test]
    fn recursive_order_is_total_and_monotone() {
        let words: Vec<Vec<u8>> = vec![vec![], vec![0], vec![1], vec![0, 0], vec![2, 2], vec![0, 2, 1], vec![3, 0]];
        for u in &words {
            for v in &words {
                let a = WordOrder::Recursive.compare(u, v);
                let b = WordOrder::Recursive.compare(v, u);
                assert_eq!(a, b.reverse());
                if a == Ordering::Greater {
                    for ctx in [vec![0u8], vec![3u8], vec![2u8, 1]] {
                        let mut lu = ctx.clone();
                        lu.extend(u);
                        let mut lv = ctx.clone();
                        lv.extend(v);
                        assert_eq!(WordOrder::Recursive.compare(&lu, &lv), Ordering::Greater);
                        let mut ru = u.clone();
                        ru.extend(&ctx);
                        let mut rv = v.clone();
                        rv.extend(&ctx);
                        assert_eq!(WordOrder::Recursive.compare(&ru, &rv), Ordering::Greater);
                    }
                }
            }
        }
    }
}
