//! Pairs of starred square relators: each pair is shown finite, abelian
//! or to force a torsion element.

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use super::{CaseTable, KLEIN_ROWS};
use crate::presentation::classify::Mark;
use crate::presentation::coset::todd_coxeter;
use crate::presentation::rewriting::{complete_any, KbCaps};
use crate::presentation::{Presentation, Word};

/// The nine pairs the published analysis could not dismiss as finite or
/// abelian.
pub const PUBLISHED_EXCEPTIONAL: [(usize, usize); 9] =
    [(6, 11), (6, 15), (8, 15), (13, 18), (16, 20), (18, 20), (19, 27), (19, 28), (23, 27)];

/// Published torsion consequence for each exceptional pair: `base^exponent = 1`.
pub const PUBLISHED_WITNESSES: [((usize, usize), &str, u32); 9] = [
    ((6, 11), "x", 5),
    ((6, 15), "x", 3),
    ((8, 15), "x", 5),
    ((13, 18), "y", 5),
    ((16, 20), "y", 5),
    ((18, 20), "y", 3),
    ((19, 27), "x^-1y", 3),
    ((19, 28), "yx^-1", 3),
    ((23, 27), "xy^-1", 3),
];

/// Nontrivial elements (given `1, x, y` distinct) tried as torsion witnesses.
const WITNESS_BASES: [&str; 6] = ["x", "y", "x^-1y", "yx^-1", "xy^-1", "y^-1x"];
const MAX_WITNESS_EXPONENT: u32 = 6;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct PairCaps {
    pub max_cosets: usize,
    /// Cap for the index-1 checks on cyclic subgroups.
    pub subgroup_cosets: usize,
    pub kb: KbCaps,
}

impl Default for PairCaps {
    fn default() -> Self {
        PairCaps { max_cosets: 1_000_000, subgroup_cosets: 100_000, kb: KbCaps::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum PairVerdict {
    Finite { order: usize },
    /// Commutator rewrites to 1 under a completed (or partial) system.
    AbelianRewriting,
    /// The cyclic subgroup on `generator` has index 1.
    AbelianCyclic { generator: Word },
    TorsionWitness { base: Word, exponent: u32 },
    Unresolved { max_cosets: usize, max_rules: usize },
}

impl PairVerdict {
    pub fn is_finite_or_abelian(&self) -> bool {
        matches!(
            self,
            PairVerdict::Finite { .. } | PairVerdict::AbelianRewriting | PairVerdict::AbelianCyclic { .. }
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ListedWitness {
    pub base: Word,
    pub exponent: u32,
    /// `Some(true)`: rewrites to 1. `Some(false)`: a confluent system says
    /// it is not 1. `None`: undecided.
    pub holds: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairReport {
    pub i: usize,
    pub j: usize,
    pub verdict: PairVerdict,
    /// The published witness, where one exists, checked in the same group.
    pub listed: Option<ListedWitness>,
}

/// Starred rows outside the Klein rows.
pub fn starred_rows(table: &CaseTable) -> Vec<usize> {
    table
        .rows
        .iter()
        .filter(|r| r.mark == Mark::Star && !KLEIN_ROWS.contains(&r.index))
        .map(|r| r.index)
        .collect()
}

/// Decides `<x, y | rels>` in order: finite by coset enumeration, abelian by
/// rewriting, cyclic by an index-1 subgroup, then a torsion witness.
pub fn resolve_presentation(
    i: usize,
    j: usize,
    rels: &[Word],
    listed: Option<(&str, u32)>,
    caps: &PairCaps,
) -> PairReport {
    let p = Presentation::new(rels.iter().cloned());
    let table = todd_coxeter(&p, &[], caps.max_cosets);
    let mut system = None;
    let verdict = if let Some(order) = table.index() {
        PairVerdict::Finite { order }
    } else {
        let rs = complete_any(&p, caps.kb);
        let v = if rs.proves_abelian() {
            PairVerdict::AbelianRewriting
        } else if let Some(generator) = ["x", "y", "xy^-1"].iter().map(|s| Word::parse(s).expect("literal")).find(|g| {
            todd_coxeter(&p, std::slice::from_ref(g), caps.subgroup_cosets).index() == Some(1)
        }) {
            PairVerdict::AbelianCyclic { generator }
        } else {
            torsion_witness(&rs, listed.map(|l| l.0))
                .map(|(base, exponent)| PairVerdict::TorsionWitness { base, exponent })
                .unwrap_or(PairVerdict::Unresolved { max_cosets: caps.max_cosets, max_rules: caps.kb.max_rules })
        };
        system = Some(rs);
        v
    };
    let listed = listed.map(|(b, e)| {
        let base = Word::parse(b).expect("frozen witness");
        let w = base.pow(e as i32);
        let holds = match (&verdict, &system) {
            (PairVerdict::Finite { .. }, _) => Some(table.permutation_order(&w) == 1),
            (_, Some(rs)) if rs.proves_trivial(&w) => Some(true),
            (_, Some(rs)) if rs.confluent => Some(false),
            _ => None,
        };
        ListedWitness { base, exponent: e, holds }
    });
    PairReport { i, j, verdict, listed }
}

/// Smallest exponent `k ≥ 2` with `base^k = 1` provable, trying `preferred`
/// first and then the standard bases.
fn torsion_witness(
    rs: &crate::presentation::rewriting::RewritingSystem,
    preferred: Option<&str>,
) -> Option<(Word, u32)> {
    let bases = preferred.into_iter().chain(WITNESS_BASES.iter().copied().filter(|b| Some(*b) != preferred));
    for b in bases {
        let base = Word::parse(b).expect("literal");
        for k in 2..=MAX_WITNESS_EXPONENT {
            if rs.proves_trivial(&base.pow(k as i32)) {
                return Some((base, k));
            }
        }
    }
    None
}

/// All unordered pairs of starred non-Klein rows, resolved in parallel and
/// reported in `(i, j)` order.
pub fn pair_elimination(table: &CaseTable, caps: &PairCaps) -> Vec<PairReport> {
    let rows = starred_rows(table);
    let pairs: Vec<(usize, usize)> = rows.iter().copied().array_combinations().map(|[i, j]| (i, j)).collect();
    let mut out: Vec<PairReport> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let listed = PUBLISHED_WITNESSES.iter().find(|(p, _, _)| *p == (i, j)).map(|&(_, b, e)| (b, e));
            let rels = [table.row(i).relator.clone(), table.row(j).relator.clone()];
            resolve_presentation(i, j, &rels, listed, caps)
        })
        .collect();
    out.sort_by_key(|r| (r.i, r.j));
    out
}
