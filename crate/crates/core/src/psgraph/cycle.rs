//! Cycles of `P(B, C)` and their `2n`-tuples of `C`-indices.

use std::fmt;

use serde::Serialize;

use super::PsGraph;
use crate::error::{PslError, Result};
use crate::group::Group;
use crate::presentation::Word;

/// `[h_1, h'_1, ..., h_n, h'_n]` as indices into `C`, from the relations
/// `g_i h_i = g_{i+1} h'_i` (indices mod `n`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CycleTuple(pub Vec<usize>);

impl CycleTuple {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        if entries.is_empty() || !entries.len().is_multiple_of(2) {
            return Err(PslError::InvalidInput(format!("tuple of odd or zero length {}", entries.len())));
        }
        Ok(CycleTuple(entries))
    }

    /// Cycle length `n`.
    pub fn len(&self) -> usize {
        self.0.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn h(&self, i: usize) -> usize {
        self.0[2 * (i % self.len())]
    }

    pub fn h2(&self, i: usize) -> usize {
        self.0[2 * (i % self.len()) + 1]
    }

    /// The `2n` tuples of other arrangements of the same cycle: block
    /// rotations, then rotations of the reversed-and-swapped tuple.
    pub fn arrangements(&self) -> Vec<CycleTuple> {
        let n = self.len();
        let mut out = Vec::with_capacity(2 * n);
        for r in 0..n {
            out.push(CycleTuple((0..n).flat_map(|i| [self.h(i + r), self.h2(i + r)]).collect()));
        }
        let rev: Vec<usize> = (0..n).rev().flat_map(|i| [self.h2(i), self.h(i)]).collect();
        let rev = CycleTuple(rev);
        for r in 0..n {
            out.push(CycleTuple((0..n).flat_map(|i| [rev.h(i + r), rev.h2(i + r)]).collect()));
        }
        out
    }

    /// `(h_1 h'_1^-1) ... (h_n h'_n^-1)` with `C[i]` spelled `labels[i]`.
    pub fn relation_word(&self, labels: &[Word]) -> Word {
        (0..self.len()).fold(Word::identity(), |acc, i| {
            acc.mul(&labels[self.h(i)]).mul(&labels[self.h2(i)].inverse())
        })
    }

    pub fn relation_element<G: Group>(&self, g: &G, c: &[G::Elem]) -> G::Elem {
        (0..self.len()).fold(g.identity(), |acc, i| {
            g.multiply(&g.multiply(&acc, &c[self.h(i)]), &g.inverse(&c[self.h2(i)]))
        })
    }
}

impl fmt::Display for CycleTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Lexicographically least member of the arrangement closure.
pub fn tuple_class(t: &CycleTuple) -> CycleTuple {
    t.arrangements().into_iter().min().expect("nonempty closure")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CycleType {
    I,
    II,
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CycleType::I => "i",
            CycleType::II => "ii",
        })
    }
}

/// Triangle and square types. Type (i) triangles have `h'_i = h_{i+1}`
/// throughout; type (i) squares have exactly one such coincidence, all
/// other consecutive entries distinct. Everything else counts as (ii).
pub fn classify_cycle(t: &CycleTuple) -> Result<CycleType> {
    let n = t.len();
    let joins = |t: &CycleTuple| (0..n).filter(|&i| t.h2(i) == t.h(i + 1)).count();
    let inner_distinct = |t: &CycleTuple| (0..n).all(|i| t.h(i) != t.h2(i));
    match n {
        3 => {
            let type_i = t.arrangements().iter().any(|a| inner_distinct(a) && joins(a) == 3);
            Ok(if type_i { CycleType::I } else { CycleType::II })
        }
        4 => {
            let type_i = t
                .arrangements()
                .iter()
                .any(|a| inner_distinct(a) && a.h2(0) == a.h(1) && joins(a) == 1);
            Ok(if type_i { CycleType::I } else { CycleType::II })
        }
        _ => Err(PslError::InvalidInput(format!("cycle types are defined for n = 3, 4, not {n}"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cycle {
    /// Vertex indices `g_1, ..., g_n`: smallest first, `g_2 < g_n`.
    pub vertices: Vec<usize>,
    /// Edge indices, the `i`-th joining `g_i` and `g_{i+1}`.
    pub edges: Vec<usize>,
    pub tuple: CycleTuple,
}

/// All cycles of length `n` (3 to 6), one arrangement each; parallel edges
/// give distinct cycles. Every tuple is checked to have `r(T) = 1`.
pub fn cycles<G: Group>(g: &G, graph: &PsGraph<G::Elem>, n: usize) -> Result<Vec<Cycle>> {
    if !(3..=6).contains(&n) {
        return Err(PslError::InvalidInput(format!("cycle length {n} outside 3..=6")));
    }
    let adj = graph.adjacency();
    let mut vertex_cycles: Vec<Vec<usize>> = Vec::new();
    let mut path = Vec::with_capacity(n);
    for s in 0..graph.vertex_count() {
        path.push(s);
        extend(&adj, n, &mut path, &mut vertex_cycles);
        path.pop();
    }
    let mut out = Vec::new();
    for vs in vertex_cycles {
        let choices: Vec<Vec<usize>> =
            (0..n).map(|i| graph.edges_between(vs[i], vs[(i + 1) % n])).collect();
        let mut idx = vec![0usize; n];
        loop {
            let edges: Vec<usize> = (0..n).map(|i| choices[i][idx[i]]).collect();
            let entries = (0..n)
                .flat_map(|i| {
                    let (h, h2) = graph.edges[edges[i]].labels_from(vs[i]);
                    [h, h2]
                })
                .collect();
            let tuple = CycleTuple(entries);
            if !g.is_identity(&tuple.relation_element(g, &graph.c)) {
                return Err(PslError::InvalidInput(format!("cycle {vs:?} has r(T) != 1")));
            }
            out.push(Cycle { vertices: vs.clone(), edges, tuple });
            // odometer over parallel-edge choices
            let mut i = 0;
            while i < n {
                idx[i] += 1;
                if idx[i] < choices[i].len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
    }
    Ok(out)
}

fn extend(adj: &[Vec<usize>], n: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let s = path[0];
    let last = *path.last().expect("nonempty");
    if path.len() == n {
        if adj[last].binary_search(&s).is_ok() && path[1] < path[n - 1] {
            out.push(path.clone());
        }
        return;
    }
    for &v in &adj[last] {
        if v > s && !path.contains(&v) {
            path.push(v);
            extend(adj, n, path, out);
            path.pop();
        }
    }
}
