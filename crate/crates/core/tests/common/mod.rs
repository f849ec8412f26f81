//! Seeded random cases and invariant checks shared by the property suite and
//! the acceptance run. Checks panic on the first violation.

#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use psl_core::algebra::{load_certificate, positive_control};
use psl_core::group::standard_ball;
use psl_core::presentation::{Letter, Word};
use psl_core::productset::{
    assert_lower_bound, assert_nonabelian_bound, generates_nonabelian, product_stats, SubsetPair,
};
use psl_core::psgraph::{assert_cayley_induced, build_graph, cycles, find_pattern, noncyclic_witness, Pattern};
use psl_core::{ball, Group};

pub const PAIRS_PER_MODEL: usize = 1000;
pub const CAYLEY_CASES: usize = 100;
pub const GRAPH_CASES: usize = 150;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn sample<E: Clone, R: Rng>(r: &mut R, pool: &[E], n: usize) -> Vec<E> {
    pool.choose_multiple(r, n).cloned().collect()
}

/// `C` of the given size containing the identity.
pub fn sample_c<G: Group, R: Rng>(g: &G, r: &mut R, pool: &[G::Elem], n: usize) -> Vec<G::Elem> {
    let id = g.identity();
    let rest: Vec<G::Elem> = pool.iter().filter(|e| **e != id).cloned().collect();
    let mut c = vec![id];
    c.extend(sample(r, &rest, n - 1));
    c
}

pub fn random_word<R: Rng>(r: &mut R, len: usize) -> Word {
    Word::from_letters((0..len).map(|_| Letter::from_index(r.gen_range(0..4))))
}

type Fibers<E> = BTreeMap<E, Vec<(usize, usize)>>;

pub fn naive_stats<G: Group>(g: &G, b: &[G::Elem], c: &[G::Elem]) -> (Fibers<G::Elem>, Vec<G::Elem>) {
    let mut fibers: Fibers<G::Elem> = BTreeMap::new();
    for (i, x) in b.iter().enumerate() {
        for (j, y) in c.iter().enumerate() {
            fibers.entry(g.multiply(x, y)).or_default().push((i, j));
        }
    }
    let boundary = fibers.keys().filter(|x| !b.contains(x)).cloned().collect();
    (fibers, boundary)
}

/// Random `(B, C)` with `1 ∈ C`: statistics against the naive oracle, then
/// `|BC| ≥ |B| + |C| - 1` always and `|BC| ≥ |B| + |C| + 1` under the
/// non-abelian hypotheses. Returns how many pairs met those hypotheses.
pub fn product_bounds<G: Group>(g: &G, seed: u64) -> usize {
    let mut r = rng(seed);
    let pool = standard_ball(g, 3);
    let small = standard_ball(g, 2);
    let mut nonabelian = 0;
    for _ in 0..PAIRS_PER_MODEL {
        let nc = r.gen_range(1..=5);
        let c = sample_c(g, &mut r, &small, nc);
        let nb = r.gen_range(1..=9);
        let b = sample(&mut r, &pool, nb);
        let p = SubsetPair::new(b.clone(), c.clone()).unwrap();
        let stats = product_stats(g, &p).unwrap();
        stats.check_invariants().unwrap();
        let (fibers, boundary) = naive_stats(g, &b, &c);
        assert_eq!(stats.fibers, fibers);
        assert_eq!(stats.boundary, boundary);
        assert_lower_bound(&stats).unwrap();
        if assert_nonabelian_bound(g, &p, &stats).unwrap() {
            nonabelian += 1;
        }
    }
    nonabelian
}

/// `P(B, C)` is the induced Cayley subgraph for random non-cyclic `C`.
pub fn cayley_cases<G: Group>(g: &G, seed: u64) {
    let mut r = rng(seed);
    let pool = standard_ball(g, 3);
    let small = standard_ball(g, 2);
    let mut checked = 0;
    while checked < CAYLEY_CASES {
        let c = sample_c(g, &mut r, &small, 3);
        if !noncyclic_witness(g, &c) {
            continue;
        }
        let nb = r.gen_range(2..=12);
        let b = sample(&mut r, &pool, nb);
        assert!(assert_cayley_induced(g, &SubsetPair::new(b, c).unwrap()).unwrap());
        checked += 1;
    }
}

/// Random `B`, and balls in `C` (dense graphs), for a non-abelian `C ∋ 1`.
pub fn graph_cases<G: Group>(g: &G, seed: u64, mut visit: impl FnMut(&SubsetPair<G::Elem>)) {
    let mut r = rng(seed);
    let pool = standard_ball(g, 3);
    let small = standard_ball(g, 2);
    let mut done = 0;
    while done < GRAPH_CASES {
        let c = sample_c(g, &mut r, &small, 3);
        if !generates_nonabelian(g, &c) {
            continue;
        }
        let b = if done % 3 == 0 {
            ball(g, &c[1..], 2)
        } else {
            let nb = r.gen_range(4..=14);
            sample(&mut r, &pool, nb)
        };
        visit(&SubsetPair::new(b, c).unwrap());
        done += 1;
    }
}

pub fn no_forbidden_patterns<G: Group>(g: &G, seed: u64) {
    graph_cases(g, seed, |p| {
        let graph = build_graph(g, p).unwrap();
        let adj = graph.adjacency();
        for pat in Pattern::ALL {
            assert!(find_pattern(&adj, pat).is_none(), "{pat} in {} for C = {:?}", g.name(), p.c);
        }
    });
}

pub fn no_k4<G: Group>(g: &G, seed: u64) {
    graph_cases(g, seed, |p| {
        let graph = build_graph(g, p).unwrap();
        assert!(find_pattern(&graph.adjacency(), Pattern::K4).is_none(), "K4 for C = {:?}", p.c);
    });
}

/// Every 3- and 4-cycle tuple telescopes to the identity.
pub fn tuples_telescope<G: Group>(g: &G, seed: u64) {
    graph_cases(g, seed, |p| {
        let graph = build_graph(g, p).unwrap();
        for n in 3..=4 {
            for cyc in cycles(g, &graph, n).unwrap() {
                assert!(g.is_identity(&cyc.tuple.relation_element(g, &p.c)), "r(T) != 1 for {}", cyc.tuple);
            }
        }
    });
}

/// The `(1 + x)^2 = 0` control loads; two mutations of it do not.
pub fn certificate_controls() {
    let (model, cert) = positive_control(2).unwrap();
    assert!(load_certificate(&cert.to_json(&model).to_string()).is_ok());

    let mut bad = cert.to_json(&model);
    bad["product_claim"] = "identity".into();
    assert!(load_certificate(&bad.to_string()).is_err());
    let mut bad = cert.to_json(&model);
    bad["alpha"]["terms"] = serde_json::json!({ "e": 1 });
    assert!(load_certificate(&bad.to_string()).is_err());
}
