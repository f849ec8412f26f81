//! Restricted minimisation of `|∂_C(B)| = |BC \ B|` over `B ⊆ universe`.
//!
//! Every candidate `B` contains the identity (boundary size is invariant
//! under left translation) and lists further universe elements in
//! increasing index order. Branch and bound: for a partial set `B'` whose
//! largest index is `t`, any completion `B = B' ∪ A` satisfies
//! `|BC \ B| ≥ |B'C \ B'| - min(|A|, F)`, where `F` counts elements of
//! `B'C \ B'` with universe index above `t`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::{product_stats, SubsetPair};
use crate::error::{PslError, Result};
use crate::group::Group;

#[derive(Clone, Debug, Serialize)]
pub struct SearchConfig {
    pub k: usize,
    /// Largest `|B|` considered; `None` means `k + 3`.
    pub size_cap: Option<usize>,
    /// Number of minimising sets kept (smallest `|B|` first, then index order).
    pub witness_limit: usize,
    pub parallel: bool,
}

impl SearchConfig {
    pub fn new(k: usize) -> Self {
        SearchConfig { k, size_cap: None, witness_limit: 16, parallel: true }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.size_cap = Some(cap);
        self
    }

    pub fn with_witnesses(mut self, limit: usize) -> Self {
        self.witness_limit = limit;
        self
    }

    pub fn cap(&self) -> usize {
        self.size_cap.unwrap_or(self.k + 3).max(self.k)
    }
}

/// Outcome of a restricted search. `kappa_min` is exact for subsets of the
/// universe containing the identity with `k ≤ |B| ≤ size_cap`; it is an
/// upper bound for the group-wide value.
#[derive(Clone, Debug)]
pub struct KappaReport<E> {
    pub model: String,
    pub c: Vec<E>,
    pub k: usize,
    pub size_cap: usize,
    pub universe: String,
    pub universe_size: usize,
    pub kappa_min: usize,
    /// `(B, |BC|)` for minimising sets.
    pub witnesses: Vec<(Vec<E>, usize)>,
    pub exhaustive_within_universe: bool,
    pub restricted: bool,
}

impl<E: Clone> KappaReport<E> {
    /// Smallest `|BC|` among the witnesses of smallest cardinality.
    pub fn min_product(&self) -> Option<usize> {
        self.witnesses.first().map(|w| w.1)
    }

    pub fn to_json<G: Group<Elem = E>>(&self, g: &G) -> serde_json::Value {
        let fmt = |s: &[E]| s.iter().map(|e| g.format(e)).collect::<Vec<_>>();
        json!({
            "model": self.model,
            "C": fmt(&self.c),
            "k": self.k,
            "size_cap": self.size_cap,
            "universe": { "description": self.universe, "size": self.universe_size },
            "kappa_min": self.kappa_min,
            "witnesses": self.witnesses.iter().map(|(b, n)| json!({"B": fmt(b), "BC": n})).collect::<Vec<_>>(),
            "exhaustive_within_universe": self.exhaustive_within_universe,
            "restricted": self.restricted,
        })
    }
}

/// Product-id table: `prod[i * m + j]` is the id of `u_i c_j`; ids below
/// `n` are universe indices.
struct Table {
    n: usize,
    m: usize,
    prod: Vec<u32>,
    ids: usize,
}

impl Table {
    fn build<G: Group>(g: &G, universe: &[G::Elem], c: &[G::Elem]) -> Table {
        let mut id: HashMap<G::Elem, u32> = super::index_of(universe)
            .into_iter()
            .map(|(e, i)| (e, i as u32))
            .collect();
        let mut prod = Vec::with_capacity(universe.len() * c.len());
        for u in universe {
            for x in c {
                let p = g.multiply(u, x);
                let next = id.len() as u32;
                prod.push(*id.entry(p).or_insert(next));
            }
        }
        Table { n: universe.len(), m: c.len(), prod, ids: id.len() }
    }
}

struct Dfs<'a> {
    t: &'a Table,
    k: usize,
    cap: usize,
    cnt: Vec<u16>,
    chosen: Vec<u32>,
    distinct: usize,
}

enum Mode<'a> {
    /// Shrink the shared incumbent.
    Minimise(&'a AtomicUsize),
    /// Collect sets at exactly this boundary size.
    Collect { target: usize, limit: usize, found: BTreeMap<usize, Vec<Vec<u32>>> },
}

impl<'a> Dfs<'a> {
    fn new(t: &'a Table, k: usize, cap: usize) -> Self {
        Dfs { t, k, cap, cnt: vec![0; t.ids], chosen: Vec::with_capacity(cap), distinct: 0 }
    }

    fn push(&mut self, i: u32) {
        let m = self.t.m;
        for &p in &self.t.prod[i as usize * m..(i as usize + 1) * m] {
            if self.cnt[p as usize] == 0 {
                self.distinct += 1;
            }
            self.cnt[p as usize] += 1;
        }
        self.chosen.push(i);
    }

    fn pop(&mut self) {
        let i = self.chosen.pop().expect("nonempty") as usize;
        let m = self.t.m;
        for &p in &self.t.prod[i * m..(i + 1) * m] {
            self.cnt[p as usize] -= 1;
            if self.cnt[p as usize] == 0 {
                self.distinct -= 1;
            }
        }
    }

    fn run(&mut self, mode: &mut Mode) {
        let s = self.chosen.len();
        let boundary = self.distinct - s;
        if s >= self.k {
            match mode {
                Mode::Minimise(best) => {
                    best.fetch_min(boundary, Ordering::Relaxed);
                }
                Mode::Collect { target, limit, found } => {
                    if boundary == *target {
                        let list = found.entry(s).or_default();
                        if list.len() < *limit {
                            list.push(self.chosen.clone());
                        }
                    }
                }
            }
        }
        if s == self.cap {
            return;
        }
        let last = *self.chosen.last().expect("identity is always chosen") as usize;
        if s + (self.t.n - last - 1) < self.k {
            return;
        }
        let future = (last + 1..self.t.n).filter(|&j| self.cnt[j] > 0).count();
        let lb = boundary.saturating_sub(future.min(self.cap - s));
        let prune = match mode {
            Mode::Minimise(best) => lb >= best.load(Ordering::Relaxed),
            Mode::Collect { target, .. } => lb > *target,
        };
        if prune {
            return;
        }
        for j in last + 1..self.t.n {
            self.push(j as u32);
            self.run(mode);
            self.pop();
        }
    }
}

fn minimise(t: &Table, k: usize, cap: usize, parallel: bool) -> usize {
    let best = AtomicUsize::new(usize::MAX);
    let root_only = |best: &AtomicUsize| {
        if k <= 1 {
            let mut d = Dfs::new(t, k, 1);
            d.push(0);
            d.run(&mut Mode::Minimise(best));
        }
    };
    root_only(&best);
    let branch = |j: usize| {
        let mut d = Dfs::new(t, k, cap);
        d.push(0);
        d.push(j as u32);
        d.run(&mut Mode::Minimise(&best));
    };
    if cap >= 2 {
        if parallel {
            (1..t.n).into_par_iter().for_each(branch);
        } else {
            (1..t.n).for_each(branch);
        }
    }
    best.load(Ordering::Relaxed)
}

fn collect(t: &Table, k: usize, cap: usize, target: usize, limit: usize, parallel: bool) -> Vec<Vec<u32>> {
    let run_branch = |j: Option<usize>| {
        let mut d = Dfs::new(t, k, if j.is_some() { cap } else { 1 });
        d.push(0);
        if let Some(j) = j {
            d.push(j as u32);
        }
        let mut mode = Mode::Collect { target, limit, found: BTreeMap::new() };
        d.run(&mut mode);
        match mode {
            Mode::Collect { found, .. } => found,
            Mode::Minimise(_) => unreachable!(),
        }
    };
    let mut branches: Vec<Option<usize>> = Vec::new();
    if k <= 1 {
        branches.push(None);
    }
    if cap >= 2 {
        branches.extend((1..t.n).map(Some));
    }
    let parts: Vec<BTreeMap<usize, Vec<Vec<u32>>>> = if parallel {
        branches.into_par_iter().map(run_branch).collect()
    } else {
        branches.into_iter().map(run_branch).collect()
    };
    let mut all: Vec<Vec<u32>> = parts.into_iter().flat_map(|m| m.into_values().flatten()).collect();
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    all.truncate(limit);
    all
}

fn prepare<G: Group>(g: &G, c: &[G::Elem], universe: &[G::Elem], k: usize) -> Result<Vec<G::Elem>> {
    let id = g.identity();
    if !c.contains(&id) {
        return Err(PslError::InvalidInput("C must contain the identity".into()));
    }
    if k == 0 {
        return Err(PslError::InvalidInput("k must be at least 1".into()));
    }
    let mut seen = HashSet::new();
    let mut u: Vec<G::Elem> = vec![id.clone()];
    seen.insert(id.clone());
    for e in universe {
        g.validate(e)?;
        if seen.insert(e.clone()) {
            u.push(e.clone());
        }
    }
    for e in c {
        g.validate(e)?;
    }
    if u.len() < k {
        return Err(PslError::InvalidInput(format!(
            "universe has {} elements, fewer than k = {k}",
            u.len()
        )));
    }
    Ok(u)
}

/// Branch-and-bound search for `min |BC \ B|` over `B ∋ 1`, `B ⊆ universe`,
/// `k ≤ |B| ≤ cap`.
pub fn kappa_search<G: Group>(
    g: &G,
    c: &[G::Elem],
    universe: &[G::Elem],
    universe_desc: &str,
    cfg: &SearchConfig,
) -> Result<KappaReport<G::Elem>> {
    let u = prepare(g, c, universe, cfg.k)?;
    let cap = cfg.cap().min(u.len());
    let t = Table::build(g, &u, c);
    let kappa = minimise(&t, cfg.k, cap, cfg.parallel);
    let sets = if cfg.witness_limit > 0 {
        collect(&t, cfg.k, cap, kappa, cfg.witness_limit, cfg.parallel)
    } else {
        Vec::new()
    };
    let witnesses = sets
        .into_iter()
        .map(|s| {
            let b: Vec<G::Elem> = s.iter().map(|&i| u[i as usize].clone()).collect();
            let n = b.len() + kappa;
            (b, n)
        })
        .collect();
    Ok(KappaReport {
        model: g.name(),
        c: c.to_vec(),
        k: cfg.k,
        size_cap: cap,
        universe: universe_desc.to_string(),
        universe_size: u.len(),
        kappa_min: kappa,
        witnesses,
        exhaustive_within_universe: true,
        restricted: true,
    })
}

/// Plain enumeration of every admissible `B`, computing `|BC|` by hashing.
/// Slow; used as an oracle for [`kappa_search`].
pub fn kappa_search_plain<G: Group>(
    g: &G,
    c: &[G::Elem],
    universe: &[G::Elem],
    cfg: &SearchConfig,
) -> Result<(usize, Vec<Vec<G::Elem>>)> {
    let u = prepare(g, c, universe, cfg.k)?;
    let cap = cfg.cap().min(u.len());
    let mut best = usize::MAX;
    let mut sets: Vec<Vec<usize>> = Vec::new();
    let mut cur = vec![0usize];
    fn rec<G: Group>(
        g: &G,
        u: &[G::Elem],
        c: &[G::Elem],
        k: usize,
        cap: usize,
        cur: &mut Vec<usize>,
        best: &mut usize,
        sets: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() >= k {
            let b: Vec<G::Elem> = cur.iter().map(|&i| u[i].clone()).collect();
            let stats = product_stats(g, &SubsetPair { b, c: c.to_vec() }).expect("validated");
            let v = stats.boundary_size();
            if v < *best {
                *best = v;
                sets.clear();
            }
            if v == *best {
                sets.push(cur.clone());
            }
        }
        if cur.len() == cap {
            return;
        }
        let last = *cur.last().expect("nonempty");
        for j in last + 1..u.len() {
            cur.push(j);
            rec(g, u, c, k, cap, cur, best, sets);
            cur.pop();
        }
    }
    rec(g, &u, c, cfg.k, cap, &mut cur, &mut best, &mut sets);
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    sets.truncate(cfg.witness_limit);
    Ok((best, sets.into_iter().map(|s| s.into_iter().map(|i| u[i].clone()).collect()).collect()))
}

/// Witnesses of smallest cardinality, each checked against the atom
/// properties: if `|A| > k` every `z ∈ AC` has `r_AC(z) ≥ 2`; and for
/// `k ≥ 2`, `(k-1)|A ∩ Ag| ≤ (k-2)|A| + 1` for every `g ≠ 1`.
pub fn atom_candidates<G: Group>(g: &G, report: &KappaReport<G::Elem>) -> Result<Vec<Vec<G::Elem>>> {
    let Some(min_len) = report.witnesses.iter().map(|w| w.0.len()).min() else {
        return Ok(Vec::new());
    };
    let k = report.k;
    let mut out = Vec::new();
    for (a, _) in report.witnesses.iter().filter(|w| w.0.len() == min_len) {
        let stats = product_stats(g, &SubsetPair { b: a.clone(), c: report.c.clone() })?;
        if a.len() > k {
            if let Some((z, _)) = stats.fibers.iter().find(|(_, f)| f.len() < 2) {
                return Err(PslError::Contradiction(format!(
                    "atom candidate of size {} > k = {k} has a unique product at {z:?}",
                    a.len()
                )));
            }
        }
        if k >= 2 {
            let set: HashSet<&G::Elem> = a.iter().collect();
            let mut shifts: HashSet<G::Elem> = HashSet::new();
            for p in a {
                for q in a {
                    let s = g.multiply(&g.inverse(p), q);
                    if !g.is_identity(&s) {
                        shifts.insert(s);
                    }
                }
            }
            for s in shifts {
                let meet = a.iter().filter(|p| set.contains(&g.multiply(p, &s))).count();
                if (k - 1) * meet > (k - 2) * a.len() + 1 {
                    return Err(PslError::Contradiction(format!(
                        "atom candidate violates |A ∩ Ag| bound: |A ∩ A{s:?}| = {meet}"
                    )));
                }
            }
        }
        out.push(a.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{standard_ball, FreeAbelian2, KleinBottle};

    #[test]
    fn klein_four_atoms() {
        let k = KleinBottle::<i64>::new();
        let c = vec![(0, 0), k.u(), k.v()];
        let u = standard_ball(&k, 3);
        let r = kappa_search(&k, &c, &u, "ball(x,y;3)", &SearchConfig::new(4).with_cap(4)).unwrap();
        assert_eq!(r.kappa_min, 4);
        let family9 = vec![(0, 0), (0, -1), (1, -1), (1, 0)];
        let mut found: Vec<Vec<(i64, i64)>> = r.witnesses.iter().map(|w| {
            let mut b = w.0.clone();
            b.sort();
            b
        }).collect();
        found.sort();
        let mut f9 = family9.clone();
        f9.sort();
        assert!(found.contains(&f9) || r.witnesses.len() == 16);
        assert_eq!(atom_candidates(&k, &r).unwrap().len(), r.witnesses.len());
    }

    #[test]
    fn pruned_matches_plain() {
        let k = KleinBottle::<i64>::new();
        let c = vec![(0, 0), k.u(), k.v()];
        let u: Vec<_> = standard_ball(&k, 2).into_iter().take(13).collect();
        for kk in 1..=5 {
            let cfg = SearchConfig::new(kk).with_cap(kk + 1).with_witnesses(1000);
            let fast = kappa_search(&k, &c, &u, "", &cfg).unwrap();
            let (best, sets) = kappa_search_plain(&k, &c, &u, &cfg).unwrap();
            assert_eq!(fast.kappa_min, best, "k = {kk}");
            let fast_sets: Vec<_> = fast.witnesses.iter().map(|w| w.0.clone()).collect();
            assert_eq!(fast_sets, sets, "k = {kk}");
        }
    }

    #[test]
    fn singleton_universe() {
        let z = FreeAbelian2::<i64>::new();
        let c = vec![(0, 0), (1, 0), (0, 1)];
        let r = kappa_search(&z, &c, &[(0, 0)], "identity", &SearchConfig::new(1)).unwrap();
        assert_eq!(r.kappa_min, 2);
        assert_eq!(r.witnesses, vec![(vec![(0, 0)], 3)]);
        assert!(kappa_search(&z, &c, &[(0, 0)], "identity", &SearchConfig::new(2)).is_err());
    }

    #[test]
    fn lattice_two_sets() {
        // two-element sets in Z^2 have boundary 3 against {0, e1, e2}
        let z = FreeAbelian2::<i64>::new();
        let c = vec![(0, 0), (1, 0), (0, 1)];
        let u = standard_ball(&z, 3);
        let r = kappa_search(&z, &c, &u, "ball(3)", &SearchConfig::new(2).with_cap(5)).unwrap();
        assert_eq!(r.kappa_min, 3);
        assert!(r.witnesses.iter().any(|w| w.0.len() == 2));
    }

    #[test]
    fn deterministic_across_parallelism() {
        let k = KleinBottle::<i64>::new();
        let c = vec![(0, 0), k.u(), k.v()];
        let u = standard_ball(&k, 3);
        let mut cfg = SearchConfig::new(5).with_cap(6);
        let a = kappa_search(&k, &c, &u, "", &cfg).unwrap();
        cfg.parallel = false;
        let b = kappa_search(&k, &c, &u, "", &cfg).unwrap();
        assert_eq!(a.kappa_min, b.kappa_min);
        assert_eq!(a.witnesses, b.witnesses);
    }
}
