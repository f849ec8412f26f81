//! Product sets `BC`, their fibers and boundaries, and restricted searches
//! for small boundaries.

mod search;

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::Serialize;

use crate::error::{PslError, Result};
use crate::group::Group;

pub use search::{
    atom_candidates, kappa_search, kappa_search_plain, KappaReport, SearchConfig,
};

/// Finite subsets `B`, `C` of one group, each without repeated elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetPair<E> {
    pub b: Vec<E>,
    pub c: Vec<E>,
}

impl<E: Clone + Eq + std::hash::Hash + std::fmt::Debug> SubsetPair<E> {
    pub fn new(b: Vec<E>, c: Vec<E>) -> Result<Self> {
        if b.is_empty() || c.is_empty() {
            return Err(PslError::InvalidInput("B and C must be nonempty".into()));
        }
        for (name, s) in [("B", &b), ("C", &c)] {
            let mut seen = HashSet::new();
            if let Some(d) = s.iter().find(|e| !seen.insert(*e)) {
                return Err(PslError::InvalidInput(format!("{name} repeats {d:?}")));
            }
        }
        Ok(SubsetPair { b, c })
    }
}

/// The multiset structure of `BC`. Fibers hold index pairs `(i, j)` with
/// `B[i] C[j] = x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductStats<E: Ord> {
    pub fibers: BTreeMap<E, Vec<(usize, usize)>>,
    /// `BC \ B` in element order.
    pub boundary: Vec<E>,
    pub b_len: usize,
    pub c_len: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberHistogram {
    /// `(r, number of x with r_BC(x) = r)`, increasing in `r`.
    pub counts: Vec<(usize, usize)>,
}

impl<E: Ord + Clone> ProductStats<E> {
    pub fn product_size(&self) -> usize {
        self.fibers.len()
    }

    pub fn product(&self) -> impl Iterator<Item = &E> {
        self.fibers.keys()
    }

    pub fn r(&self, x: &E) -> usize {
        self.fibers.get(x).map_or(0, Vec::len)
    }

    pub fn boundary_size(&self) -> usize {
        self.boundary.len()
    }

    pub fn histogram(&self) -> FiberHistogram {
        let mut h: BTreeMap<usize, usize> = BTreeMap::new();
        for f in self.fibers.values() {
            *h.entry(f.len()).or_default() += 1;
        }
        FiberHistogram { counts: h.into_iter().collect() }
    }

    /// Checks `Σ r = |B||C|` and `1 ≤ r ≤ min(|B|, |C|)`.
    pub fn check_invariants(&self) -> Result<()> {
        let total: usize = self.fibers.values().map(Vec::len).sum();
        if total != self.b_len * self.c_len {
            return Err(PslError::InvalidInput(format!(
                "fiber sizes sum to {total}, expected {}",
                self.b_len * self.c_len
            )));
        }
        let bound = self.b_len.min(self.c_len);
        if let Some(f) = self.fibers.values().find(|f| f.is_empty() || f.len() > bound) {
            return Err(PslError::InvalidInput(format!("fiber of size {} out of range", f.len())));
        }
        Ok(())
    }
}

fn check_members<G: Group>(g: &G, s: &[G::Elem]) -> Result<()> {
    s.iter().try_for_each(|e| g.validate(e))
}

/// Exact product statistics of `(B, C)` grouped by normal form.
pub fn product_stats<G: Group>(g: &G, p: &SubsetPair<G::Elem>) -> Result<ProductStats<G::Elem>> {
    check_members(g, &p.b)?;
    check_members(g, &p.c)?;
    let mut fibers: BTreeMap<G::Elem, Vec<(usize, usize)>> = BTreeMap::new();
    for (i, b) in p.b.iter().enumerate() {
        for (j, c) in p.c.iter().enumerate() {
            fibers.entry(g.multiply(b, c)).or_default().push((i, j));
        }
    }
    let in_b: HashSet<&G::Elem> = p.b.iter().collect();
    let boundary = fibers.keys().filter(|x| !in_b.contains(x)).cloned().collect();
    Ok(ProductStats { fibers, boundary, b_len: p.b.len(), c_len: p.c.len() })
}

/// All `(x, b, c)` with `x = bc` the only factorization of `x` over `B × C`.
pub fn unique_product_witnesses<G: Group>(
    g: &G,
    p: &SubsetPair<G::Elem>,
) -> Result<Vec<(G::Elem, G::Elem, G::Elem)>> {
    let stats = product_stats(g, p)?;
    Ok(stats
        .fibers
        .iter()
        .filter(|(_, f)| f.len() == 1)
        .map(|(x, f)| (x.clone(), p.b[f[0].0].clone(), p.c[f[0].1].clone()))
        .collect())
}

/// `|BC|` by direct hashing, without fibers.
pub fn product_size<G: Group>(g: &G, b: &[G::Elem], c: &[G::Elem]) -> usize {
    let mut set: HashSet<G::Elem> = HashSet::with_capacity(b.len() * c.len());
    for x in b {
        for y in c {
            set.insert(g.multiply(x, y));
        }
    }
    set.len()
}

/// Some pair of elements of `C` fails to commute.
pub fn generates_nonabelian<G: Group>(g: &G, c: &[G::Elem]) -> bool {
    c.iter().enumerate().any(|(i, a)| c[i + 1..].iter().any(|b| !g.commutes(a, b)))
}

/// `|BC| ≥ |B| + |C| - 1` (torsion-free groups).
pub fn assert_lower_bound<E: Ord + Clone>(stats: &ProductStats<E>) -> Result<()> {
    let need = stats.b_len + stats.c_len - 1;
    if stats.product_size() < need {
        return Err(PslError::Contradiction(format!(
            "|BC| = {} < |B| + |C| - 1 = {need}",
            stats.product_size()
        )));
    }
    Ok(())
}

/// `|BC| ≥ |B| + |C| + 1` when `<C>` is non-abelian, `|C| ≥ 3`, `|B| ≥ 4`.
/// Returns whether the hypotheses applied.
pub fn assert_nonabelian_bound<G: Group>(
    g: &G,
    p: &SubsetPair<G::Elem>,
    stats: &ProductStats<G::Elem>,
) -> Result<bool> {
    if p.c.len() < 3 || p.b.len() < 4 || !generates_nonabelian(g, &p.c) {
        return Ok(false);
    }
    let need = p.b.len() + p.c.len() + 1;
    if stats.product_size() < need {
        return Err(PslError::Contradiction(format!(
            "non-abelian <C> but |BC| = {} < |B| + |C| + 1 = {need}",
            stats.product_size()
        )));
    }
    Ok(true)
}

/// Left translate `aB` and right translate `Cd`.
pub fn translate<G: Group>(g: &G, a: &G::Elem, b: &[G::Elem], c: &[G::Elem], d: &G::Elem) -> SubsetPair<G::Elem> {
    SubsetPair {
        b: b.iter().map(|x| g.multiply(a, x)).collect(),
        c: c.iter().map(|x| g.multiply(x, d)).collect(),
    }
}

/// Index of each element of `universe`.
pub(crate) fn index_of<E: Clone + Eq + std::hash::Hash>(universe: &[E]) -> HashMap<E, usize> {
    universe.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{standard_ball, Free2, FreeAbelian2, KleinBottle};
    use crate::presentation::Word;

    #[test]
    fn integers_as_a_line() {
        let z = FreeAbelian2::<i64>::new();
        let p = SubsetPair::new(vec![(0, 0), (1, 0)], vec![(0, 0), (1, 0)]).unwrap();
        let s = product_stats(&z, &p).unwrap();
        assert_eq!(s.product_size(), 3);
        assert_eq!(s.r(&(1, 0)), 2);
        assert_eq!(s.r(&(0, 0)), 1);
        assert_eq!(s.r(&(2, 0)), 1);
        assert_eq!(s.boundary, vec![(2, 0)]);
        s.check_invariants().unwrap();
        let w = unique_product_witnesses(&z, &p).unwrap();
        let xs: Vec<_> = w.iter().map(|t| t.0).collect();
        assert_eq!(xs, vec![(0, 0), (2, 0)]);
    }

    #[test]
    fn klein_four_atom() {
        let k = KleinBottle::<i64>::new();
        let c = vec![(0, 0), k.u(), k.v()];
        let b = vec![(0, 0), (0, -1), (1, -1), (1, 0)];
        let p = SubsetPair::new(b, c).unwrap();
        let s = product_stats(&k, &p).unwrap();
        assert_eq!(s.product_size(), 8);
        assert_eq!(s.boundary_size(), 4);
        assert!(!unique_product_witnesses(&k, &p).unwrap().is_empty());
        assert!(assert_nonabelian_bound(&k, &p, &s).unwrap());
    }

    #[test]
    fn free_ball_of_radius_one() {
        let f = Free2;
        let c: Vec<Word> = ["e", "x", "y"].iter().map(|s| Word::parse(s).unwrap()).collect();
        let p = SubsetPair::new(standard_ball(&f, 1), c).unwrap();
        let s = product_stats(&f, &p).unwrap();
        assert!(s.product_size() >= 9);
        assert_lower_bound(&s).unwrap();
        assert!(assert_nonabelian_bound(&f, &p, &s).unwrap());
    }

    #[test]
    fn rejects_duplicates_and_empty() {
        assert!(SubsetPair::new(vec![1i64, 1], vec![0]).is_err());
        assert!(SubsetPair::<i64>::new(vec![], vec![0]).is_err());
    }
}
