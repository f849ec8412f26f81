//! The product set graph `P(B, C)`: vertices `B`, one edge for every
//! coincidence `bc = b'c'` with `b ≠ b'`.

mod cycle;
mod pattern;

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;

use serde_json::json;

use crate::error::{PslError, Result};
use crate::group::Group;
use crate::productset::{product_stats, SubsetPair};

pub use cycle::{classify_cycle, cycles, tuple_class, Cycle, CycleTuple, CycleType};
pub use pattern::{find_pattern, Pattern};

/// Edge `B[b] C[c] = B[b2] C[c2]`, stored with `b < b2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub b: usize,
    pub b2: usize,
    pub c: usize,
    pub c2: usize,
}

impl Edge {
    /// `(h, h')` seen walking from vertex `from` across this edge.
    pub fn labels_from(&self, from: usize) -> (usize, usize) {
        if from == self.b {
            (self.c, self.c2)
        } else {
            (self.c2, self.c)
        }
    }

    pub fn other(&self, v: usize) -> usize {
        if v == self.b {
            self.b2
        } else {
            self.b
        }
    }
}

#[derive(Clone, Debug)]
pub struct PsGraph<E> {
    pub b: Vec<E>,
    pub c: Vec<E>,
    /// Sorted.
    pub edges: Vec<Edge>,
}

impl<E: Clone + Ord> PsGraph<E> {
    pub fn vertex_count(&self) -> usize {
        self.b.len()
    }

    /// Underlying simple graph as sorted neighbour lists.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); self.b.len()];
        for e in &self.edges {
            adj[e.b].insert(e.b2);
            adj[e.b2].insert(e.b);
        }
        adj.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    /// Edge indices between `u` and `v`.
    pub fn edges_between(&self, u: usize, v: usize) -> Vec<usize> {
        let (lo, hi) = if u < v { (u, v) } else { (v, u) };
        (0..self.edges.len())
            .filter(|&i| self.edges[i].b == lo && self.edges[i].b2 == hi)
            .collect()
    }

    pub fn has_multi_edge(&self) -> bool {
        self.edges.windows(2).any(|w| (w[0].b, w[0].b2) == (w[1].b, w[1].b2))
    }

    pub fn to_dot<G: Group<Elem = E>>(&self, g: &G) -> String {
        let mut s = String::from("graph P {\n");
        for (i, v) in self.b.iter().enumerate() {
            let _ = writeln!(s, "  {i} [label=\"{}\"];", g.format(v));
        }
        for e in &self.edges {
            let _ = writeln!(
                s,
                "  {} -- {} [label=\"({},{})\"];",
                e.b,
                e.b2,
                g.format(&self.c[e.c]),
                g.format(&self.c[e.c2])
            );
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json<G: Group<Elem = E>>(&self, g: &G) -> serde_json::Value {
        json!({
            "vertices": self.b.iter().map(|v| g.format(v)).collect::<Vec<_>>(),
            "C": self.c.iter().map(|v| g.format(v)).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|e| json!([e.b, e.b2, e.c, e.c2])).collect::<Vec<_>>(),
        })
    }
}

/// Builds `P(B, C)` from the fibers of `BC` and re-verifies every edge.
pub fn build_graph<G: Group>(g: &G, p: &SubsetPair<G::Elem>) -> Result<PsGraph<G::Elem>> {
    let stats = product_stats(g, p)?;
    let mut edges = Vec::new();
    for fiber in stats.fibers.values() {
        for (x, &(b1, c1)) in fiber.iter().enumerate() {
            for &(b2, c2) in &fiber[x + 1..] {
                let e = if b1 < b2 {
                    Edge { b: b1, b2, c: c1, c2 }
                } else {
                    Edge { b: b2, b2: b1, c: c2, c2: c1 }
                };
                edges.push(e);
            }
        }
    }
    for e in &edges {
        if e.b == e.b2 || g.multiply(&p.b[e.b], &p.c[e.c]) != g.multiply(&p.b[e.b2], &p.c[e.c2]) {
            return Err(PslError::InvalidInput(format!("corrupt edge {e:?}")));
        }
    }
    edges.sort();
    let lower = (p.b.len() * p.c.len()).saturating_sub(stats.product_size());
    if edges.len() < lower {
        return Err(PslError::InvalidInput(format!("{} edges, fewer than {lower}", edges.len())));
    }
    Ok(PsGraph { b: p.b.clone(), c: p.c.clone(), edges })
}

/// `{h h'^-1 : h ≠ h' ∈ C}`.
pub fn difference_set<G: Group>(g: &G, c: &[G::Elem]) -> BTreeSet<G::Elem> {
    let mut s = BTreeSet::new();
    for (i, h) in c.iter().enumerate() {
        for (j, h2) in c.iter().enumerate() {
            if i != j {
                s.insert(g.multiply(h, &g.inverse(h2)));
            }
        }
    }
    s
}

/// Whether `P(B, C)` has no multi-edge and its simple graph is the subgraph
/// of the right Cayley graph for `S = {h h'^-1}` induced on `B`.
pub fn cayley_induced_check<G: Group>(g: &G, p: &SubsetPair<G::Elem>) -> Result<bool> {
    if p.c.len() != 3 {
        return Err(PslError::InvalidInput(format!("|C| = {}, expected 3", p.c.len())));
    }
    if !p.c.contains(&g.identity()) {
        return Err(PslError::InvalidInput("C must contain the identity".into()));
    }
    let graph = build_graph(g, p)?;
    if graph.has_multi_edge() {
        return Ok(false);
    }
    let s = difference_set(g, &p.c);
    let mut cayley: HashSet<(usize, usize)> = HashSet::new();
    for (i, u) in p.b.iter().enumerate() {
        let ui = g.inverse(u);
        for (j, v) in p.b.iter().enumerate().skip(i + 1) {
            if s.contains(&g.multiply(&ui, v)) {
                cayley.insert((i, j));
            }
        }
    }
    let simple: HashSet<(usize, usize)> = graph.edges.iter().map(|e| (e.b, e.b2)).collect();
    Ok(simple == cayley)
}

/// `⟨C⟩` is certainly not cyclic: two elements of `C` fail to commute or all
/// six quotients `h h'^-1` are distinct.
pub fn noncyclic_witness<G: Group>(g: &G, c: &[G::Elem]) -> bool {
    let noncommuting = c.iter().any(|a| c.iter().any(|b| !g.commutes(a, b)));
    noncommuting || (c.len() == 3 && difference_set(g, c).len() == 6)
}

/// [`cayley_induced_check`] turned into an assertion for non-cyclic `⟨C⟩`.
pub fn assert_cayley_induced<G: Group>(g: &G, p: &SubsetPair<G::Elem>) -> Result<bool> {
    let ok = cayley_induced_check(g, p)?;
    if !ok && noncyclic_witness(g, &p.c) {
        return Err(PslError::Contradiction(format!(
            "P(B,C) is not an induced Cayley subgraph for non-cyclic <C> = <{:?}>",
            p.c
        )));
    }
    Ok(ok)
}

/// Whether `P(xB, Cy)` has exactly the edges of `P(B, C)` under the
/// index correspondence.
pub fn translation_preserves<G: Group>(
    g: &G,
    p: &SubsetPair<G::Elem>,
    x: &G::Elem,
    y: &G::Elem,
) -> Result<bool> {
    let a = build_graph(g, p)?;
    let q = SubsetPair {
        b: p.b.iter().map(|b| g.multiply(x, b)).collect(),
        c: p.c.iter().map(|c| g.multiply(c, y)).collect(),
    };
    let b = build_graph(g, &q)?;
    Ok(a.edges == b.edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{FreeAbelian2, KleinBottle};
    use crate::Free2;
    use crate::presentation::Word;

    #[test]
    fn integer_line_single_edge() {
        let z = FreeAbelian2::<i64>::new();
        let p = SubsetPair::new(vec![(0, 0), (1, 0)], vec![(0, 0), (1, 0)]).unwrap();
        let gph = build_graph(&z, &p).unwrap();
        assert_eq!(gph.edges, vec![Edge { b: 0, b2: 1, c: 1, c2: 0 }]);
    }

    #[test]
    fn klein_atom_graph() {
        let k = KleinBottle::<i64>::new();
        let p = SubsetPair::new(vec![(0, 0), (0, -1), (1, -1), (1, 0)], vec![(0, 0), k.u(), k.v()]).unwrap();
        let gph = build_graph(&k, &p).unwrap();
        assert!(gph.edges.len() >= 4);
        assert!(!cycles(&k, &gph, 4).unwrap().is_empty());
        assert!(cayley_induced_check(&k, &p).unwrap());
        assert!(gph.to_dot(&k).contains("--"));
    }

    #[test]
    fn cyclic_multi_edges() {
        let z = FreeAbelian2::<i64>::new();
        let s = vec![(0, 0), (1, 0), (2, 0)];
        let p = SubsetPair::new(s.clone(), s).unwrap();
        assert!(build_graph(&z, &p).unwrap().has_multi_edge());
        assert!(!cayley_induced_check(&z, &p).unwrap());
        assert!(!noncyclic_witness(&z, &p.c));
        assert!(assert_cayley_induced(&z, &p).is_ok());
    }

    #[test]
    fn free_cayley_and_translation() {
        let f = Free2;
        let w = |s: &str| Word::parse(s).unwrap();
        let b: Vec<Word> = ["e", "x", "xy", "Y", "yx", "XX"].iter().map(|s| w(s)).collect();
        let c = vec![w("e"), w("x"), w("y")];
        let p = SubsetPair::new(b, c).unwrap();
        assert!(assert_cayley_induced(&f, &p).unwrap());
        assert!(translation_preserves(&f, &p, &w("yX"), &w("xxY")).unwrap());
    }
}
