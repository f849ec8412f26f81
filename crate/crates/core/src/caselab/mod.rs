//! Finite case analyses for `C = {1, x, y}`: relators of triangles and
//! squares in product set graphs, elimination of relator pairs, small
//! atom families and restricted checks of the `|BC|` lower bounds.

mod desk;
mod families;
mod pairs;

use std::collections::BTreeSet;
use std::fmt::Write as _;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{PslError, Result};
use crate::presentation::classify::{classify_relator, verify_class, Mark, RelatorClass};
use crate::presentation::Word;
use crate::psgraph::{tuple_class, CycleTuple};

pub use desk::{theorem_desk_checks, DeskCheck, DeskConfig, DeskReport};
pub use families::{atom_families, substitute, verify_atom_families, AtomFamily, FamilyCheck, FamilyStatus};
pub use pairs::{
    pair_elimination, resolve_presentation, starred_rows, ListedWitness, PairCaps, PairReport,
    PairVerdict, PUBLISHED_EXCEPTIONAL, PUBLISHED_WITNESSES,
};

/// Square relators with their published marks, in published row order.
pub const SQUARE_TABLE: [(&str, &str); 36] = [
    ("x^-4", "T"),
    ("x^-3y^-1", "A"),
    ("x^-3yx^-1", "A"),
    ("x^-2y^-2", "*"),
    ("x^-2y^-1xy^-1", "*"),
    ("x^-2yxy^-1", "*"),
    ("x^-2y^2x^-1", "*"),
    ("x^-2yx^-1y^-1", "*"),
    ("x^-1(x^-1y)^2x^-1", "*"),
    ("(x^-1y^-1)^2", "A"),
    ("x^-1y^-1x^-1yx^-1", "*"),
    ("x^-1y^-3", "A"),
    ("x^-1y^-2xy^-1", "*"),
    ("x^-1y^-1x^2y^-1", "*"),
    ("x^-1y^-1xyx^-1", "*"),
    ("x^-1y^-1xy^-2", "*"),
    ("x^-1(y^-1x)^2y^-1", "*"),
    ("x^-1yxy^-2", "*"),
    ("x^-1y(xy^-1)^2", "*"),
    ("x^-1y^2xy^-1", "*"),
    ("x^-1y^3x^-1", "*"),
    ("x^-1y^2x^-1y^-1", "*"),
    ("x^-1y(yx^-1)^2", "*"),
    ("(x^-1yx^-1)^2", "A"),
    ("x^-1yx^-1y^-2", "*"),
    ("x^-1yx^-1y^-1xy^-1", "*"),
    ("(x^-1y)^2xy^-1", "*"),
    ("(x^-1y)^2yx^-1", "*"),
    ("(x^-1y)^2x^-1y^-1", "*"),
    ("(x^-1y)^3x^-1", "A"),
    ("y^-4", "T"),
    ("y^-3xy^-1", "A"),
    ("y^-1(y^-1x)^2y^-1", "*"),
    ("(y^-1xy^-1)^2", "A"),
    ("(y^-1x)^3y^-1", "A"),
    ("(xy^-1)^4", "A"),
];

/// The thirteen triangle relators in published order. Marks follow the
/// prose: abelian at 2, 3, 4, 6, 8, 10, 13, torsion at 1 and 9, survivors 5,
/// 7, 11. Entry 12 is not assigned in the prose (`None`).
pub const TRIANGLE_SET: [(&str, Option<&str>); 13] = [
    ("x^-3", Some("T")),
    ("(y^-1x)^2y^-1", Some("A")),
    ("x^-2y^-1", Some("A")),
    ("x^-1y^-2", Some("A")),
    ("x^-1y^-1xy^-1", Some("*")),
    ("x^-1yxy^-1", Some("A")),
    ("x^-1yx^-1y^-1", Some("*")),
    ("(x^-1y)^2x^-1", Some("A")),
    ("y^-3", Some("T")),
    ("y^-2xy^-1", Some("A")),
    ("x^-1y^2x^-1", Some("*")),
    ("(x^-1y)^3", None),
    ("x^-2yx^-1", Some("A")),
];

/// Rows 4, 9, 33: starred square relators that hold in the Klein bottle group.
pub const KLEIN_ROWS: [usize; 3] = [4, 9, 33];

#[derive(Clone, Debug, Serialize)]
pub struct CaseRow {
    /// 1-based, in published order.
    pub index: usize,
    /// Least tuple of the class, entries indexing `[1, x, y]`.
    pub tuple: CycleTuple,
    /// `r(T)` of that tuple.
    pub relator: Word,
    /// Published spelling, equivalent to `relator` up to cyclic
    /// permutation and inversion.
    pub published: Word,
    pub class: RelatorClass,
    pub mark: Mark,
    pub published_mark: Option<Mark>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseTable {
    pub cycle_length: usize,
    pub rows: Vec<CaseRow>,
    /// Disagreements with the published list; empty on a faithful match.
    pub diffs: Vec<String>,
    /// Published order coincides with the lexicographic order of the
    /// class tuples.
    pub sorted_order: bool,
}

impl CaseTable {
    pub fn row(&self, index: usize) -> &CaseRow {
        &self.rows[index - 1]
    }

    pub fn count(&self, mark: Mark) -> usize {
        self.rows.iter().filter(|r| r.mark == mark).count()
    }

    /// Columns `n`, `R`, `E` as published, then the class tuple and the rule.
    pub fn to_tsv(&self) -> String {
        let mut s = String::from("n\tR\tE\ttuple\trule\n");
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{}\t{}=1\t{}\t{}\t{:?}",
                r.index,
                r.published.pretty(),
                r.mark,
                r.tuple,
                r.class.rule
            );
        }
        s
    }
}

fn labels() -> [Word; 3] {
    [Word::identity(), Word::parse("x").expect("x"), Word::parse("y").expect("y")]
}

/// Same relation up to cyclic permutation and inversion.
pub fn equivalent_relators(a: &Word, b: &Word) -> bool {
    let a = a.cyclically_reduce();
    let b = b.cyclically_reduce();
    if a.len() != b.len() {
        return false;
    }
    let conj = a.cyclic_conjugates();
    conj.contains(&b) || conj.contains(&b.inverse())
}

/// Canonical classes of `2n`-tuples over `{1, x, y}` with all cyclically
/// consecutive entries distinct (type (ii)), in lexicographic order.
pub fn type_ii_classes(n: usize) -> Vec<CycleTuple> {
    let mut classes = BTreeSet::new();
    for t in std::iter::repeat_n(0..3usize, 2 * n).multi_cartesian_product() {
        if (0..2 * n).all(|i| t[i] != t[(i + 1) % (2 * n)]) {
            classes.insert(tuple_class(&CycleTuple(t)));
        }
    }
    classes.into_iter().collect()
}

fn build_table(n: usize, published: &[(&str, Option<&str>)]) -> Result<CaseTable> {
    let classes = type_ii_classes(n);
    let labels = labels();
    let mut diffs = Vec::new();
    if classes.len() != published.len() {
        diffs.push(format!("{} classes, {} published", classes.len(), published.len()));
    }
    let published_words: Vec<Word> =
        published.iter().map(|(w, _)| Word::parse(w)).collect::<Result<_>>()?;
    let mut rows = Vec::new();
    let mut used = vec![false; published.len()];
    let mut sorted_order = true;
    for (pos, t) in classes.into_iter().enumerate() {
        let relator = t.relation_word(&labels);
        let hit = (0..published.len()).find(|&i| !used[i] && equivalent_relators(&relator, &published_words[i]));
        let Some(i) = hit else {
            diffs.push(format!("class {t} with relator {} has no published row", relator.pretty()));
            continue;
        };
        used[i] = true;
        sorted_order &= i == pos;
        let class = classify_relator(&relator);
        if !verify_class(&relator, &class) {
            return Err(PslError::InvalidInput(format!("classification of {} failed to verify", relator.pretty())));
        }
        let mark = class.mark();
        let published_mark = published[i].1.map(|m| Mark::parse(m).expect("frozen mark"));
        if published_mark.is_some_and(|m| m != mark) {
            diffs.push(format!("row {}: computed {mark}, published {}", i + 1, published[i].1.unwrap_or("")));
        }
        rows.push(CaseRow {
            index: i + 1,
            tuple: t,
            relator,
            published: published_words[i].clone(),
            class,
            mark,
            published_mark,
        });
    }
    for (i, u) in used.iter().enumerate() {
        if !u {
            diffs.push(format!("published row {} not produced", i + 1));
        }
    }
    rows.sort_by_key(|r| r.index);
    Ok(CaseTable { cycle_length: n, rows, diffs, sorted_order })
}

/// The 13 type (ii) triangle classes.
pub fn enumerate_triangle_relators() -> Result<CaseTable> {
    let published: Vec<(&str, Option<&str>)> = TRIANGLE_SET.to_vec();
    let t = build_table(3, &published)?;
    if t.rows.len() != 13 {
        return Err(PslError::Contradiction(format!("{} triangle classes, expected 13", t.rows.len())));
    }
    Ok(t)
}

/// The 36 type (ii) square classes, checked against the published table.
pub fn enumerate_square_relators() -> Result<CaseTable> {
    let published: Vec<(&str, Option<&str>)> = SQUARE_TABLE.iter().map(|&(w, m)| (w, Some(m))).collect();
    build_table(4, &published)
}

#[derive(Clone, Debug, Serialize)]
pub struct TriangleReport {
    pub table: CaseTable,
    /// Indices (published order) of the relators left standing.
    pub survivors: Vec<usize>,
    /// Pairs of survivors together with how their conjunction fails.
    pub exclusivity: Vec<PairReport>,
}

/// Triangle table plus the check that no two surviving relations can hold
/// together in a torsion-free group.
pub fn triangle_analysis(caps: &PairCaps) -> Result<TriangleReport> {
    let table = enumerate_triangle_relators()?;
    let survivors: Vec<usize> = table.rows.iter().filter(|r| r.mark == Mark::Star).map(|r| r.index).collect();
    let mut exclusivity = Vec::new();
    for [a, b] in survivors.iter().array_combinations() {
        let rels = [table.row(*a).relator.clone(), table.row(*b).relator.clone()];
        exclusivity.push(resolve_presentation(*a, *b, &rels, None, caps));
    }
    Ok(TriangleReport { table, survivors, exclusivity })
}
