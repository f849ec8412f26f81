//! Todd–Coxeter coset enumeration over the two-generator free group.
//!
//! Columns are indexed by [`Letter::index`]: x, X, y, Y. Two strategies are
//! provided: HLT (scan-and-fill every relator at every coset) and Felsch
//! (define the first empty cell, then chase deductions). Both finish with an
//! independent closure check, so a `Complete` table is always a genuine
//! permutation representation on the cosets.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Letter, Presentation, Word};

const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Strategy {
    Hlt,
    Felsch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CosetStatus {
    /// The enumeration closed; the payload is the index of the subgroup.
    Complete(usize),
    /// More than `max_cosets` cosets would have been defined.
    CapExceeded,
}

#[derive(Clone, Debug)]
pub struct CosetTable {
    pub status: CosetStatus,
    /// Rows of the compacted table (coset 0 is the subgroup); empty unless complete.
    pub rows: Vec<[u32; 4]>,
    /// Total cosets defined during the run, live or dead.
    pub defined: usize,
}

impl CosetTable {
    pub fn is_complete(&self) -> bool {
        matches!(self.status, CosetStatus::Complete(_))
    }

    pub fn index(&self) -> Option<usize> {
        match self.status {
            CosetStatus::Complete(n) => Some(n),
            CosetStatus::CapExceeded => None,
        }
    }

    /// Coset reached from `coset` by reading `w` left to right.
    pub fn act(&self, coset: usize, w: &Word) -> usize {
        w.letters()
            .into_iter()
            .fold(coset, |c, l| self.rows[c][l.index()] as usize)
    }

    /// The permutation induced by `w` on the cosets.
    pub fn permutation(&self, w: &Word) -> Vec<usize> {
        (0..self.rows.len()).map(|c| self.act(c, w)).collect()
    }

    /// Order of the permutation induced by `w`. Over the trivial subgroup this
    /// is the order of `w` in the group.
    pub fn permutation_order(&self, w: &Word) -> u64 {
        let perm = self.permutation(w);
        let mut seen = vec![false; perm.len()];
        let mut order: u64 = 1;
        for start in 0..perm.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut c = start;
            while !seen[c] {
                seen[c] = true;
                c = perm[c];
                len += 1;
            }
            order = num_integer::lcm(order, len);
        }
        order
    }

    /// Tab-separated table: header `coset x X y Y`, one row per coset.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("coset\tx\tX\ty\tY\n");
        for (i, row) in self.rows.iter().enumerate() {
            let _ = writeln!(out, "{i}\t{}\t{}\t{}\t{}", row[0], row[1], row[2], row[3]);
        }
        out
    }
}

/// Enumerates the cosets of `<subgroup_gens>` in `<x, y | p>` with HLT.
pub fn todd_coxeter(p: &Presentation, subgroup_gens: &[Word], max_cosets: usize) -> CosetTable {
    todd_coxeter_with(p, subgroup_gens, max_cosets, Strategy::Hlt)
}

pub fn todd_coxeter_with(
    p: &Presentation,
    subgroup_gens: &[Word],
    max_cosets: usize,
    strategy: Strategy,
) -> CosetTable {
    let rels: Vec<Vec<usize>> = p.relators.iter().map(word_cols).collect();
    let subs: Vec<Vec<usize>> = subgroup_gens
        .iter()
        .filter(|w| !w.is_identity())
        .map(word_cols)
        .collect();
    let mut e = Enumerator::new(max_cosets.max(1));
    let ok = match strategy {
        Strategy::Hlt => e.run_hlt(&rels, &subs),
        Strategy::Felsch => e.run_felsch(&rels, &subs),
    };
    let defined = e.table.len();
    if ok.is_err() {
        return CosetTable { status: CosetStatus::CapExceeded, rows: Vec::new(), defined };
    }
    let rows = e.compact();
    assert!(closes(&rows, &rels, &subs), "coset table failed the closure check");
    CosetTable { status: CosetStatus::Complete(rows.len()), rows, defined }
}

/// Order of the group `<x, y | p>` when the enumeration over the trivial
/// subgroup closes within `max_cosets`.
pub fn group_order(p: &Presentation, max_cosets: usize) -> Option<usize> {
    todd_coxeter(p, &[], max_cosets).index()
}

fn word_cols(w: &Word) -> Vec<usize> {
    w.letters().into_iter().map(Letter::index).collect()
}

#[inline]
fn inv(col: usize) -> usize {
    col ^ 1
}

struct CapHit;

struct Enumerator {
    table: Vec<[u32; 4]>,
    parent: Vec<u32>,
    cap: usize,
    deductions: Vec<(u32, usize)>,
    track_deductions: bool,
}

impl Enumerator {
    fn new(cap: usize) -> Self {
        Enumerator {
            table: vec![[NONE; 4]],
            parent: vec![0],
            cap,
            deductions: Vec::new(),
            track_deductions: false,
        }
    }

    fn live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn rep(&mut self, k: u32) -> u32 {
        let mut l = k;
        while self.parent[l as usize] != l {
            l = self.parent[l as usize];
        }
        let mut m = k;
        while self.parent[m as usize] != m {
            let n = self.parent[m as usize];
            self.parent[m as usize] = l;
            m = n;
        }
        l
    }

    fn merge(&mut self, k: u32, l: u32, queue: &mut Vec<u32>) {
        let a = self.rep(k);
        let b = self.rep(l);
        if a != b {
            let (mu, nu) = if a < b { (a, b) } else { (b, a) };
            self.parent[nu as usize] = mu;
            queue.push(nu);
        }
    }

    fn set(&mut self, a: u32, col: usize, b: u32) {
        self.table[a as usize][col] = b;
        self.table[b as usize][inv(col)] = a;
        if self.track_deductions {
            self.deductions.push((a, col));
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let g = queue[i];
            i += 1;
            for col in 0..4 {
                let d = self.table[g as usize][col];
                if d == NONE {
                    continue;
                }
                if self.table[d as usize][inv(col)] == g {
                    self.table[d as usize][inv(col)] = NONE;
                }
                let mu = self.rep(g);
                let nu = self.rep(d);
                let m_col = self.table[mu as usize][col];
                let n_inv = self.table[nu as usize][inv(col)];
                if m_col != NONE {
                    self.merge(nu, m_col, &mut queue);
                } else if n_inv != NONE {
                    self.merge(mu, n_inv, &mut queue);
                } else {
                    self.set(mu, col, nu);
                }
            }
        }
    }

    fn define(&mut self, a: u32, col: usize) -> Result<u32, CapHit> {
        if self.table.len() >= self.cap {
            return Err(CapHit);
        }
        let b = self.table.len() as u32;
        self.table.push([NONE; 4]);
        self.parent.push(b);
        self.set(a, col, b);
        Ok(b)
    }

    fn scan_and_fill(&mut self, a: u32, w: &[usize]) -> Result<(), CapHit> {
        if w.is_empty() {
            return Ok(());
        }
        let mut f = a;
        let mut b = a;
        let mut i = 0usize;
        let mut j = w.len() as isize - 1;
        loop {
            while (i as isize) <= j && self.table[f as usize][w[i]] != NONE {
                f = self.table[f as usize][w[i]];
                i += 1;
            }
            if (i as isize) > j {
                if f != a {
                    self.coincidence(f, a);
                }
                return Ok(());
            }
            while j >= i as isize && self.table[b as usize][inv(w[j as usize])] != NONE {
                b = self.table[b as usize][inv(w[j as usize])];
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if i as isize == j {
                self.set(f, w[i], b);
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    /// Scan without defining; a single gap is closed by deduction.
    fn scan(&mut self, a: u32, w: &[usize]) {
        let mut f = a;
        let mut b = a;
        let mut i = 0usize;
        let mut j = w.len() as isize - 1;
        while (i as isize) <= j && self.table[f as usize][w[i]] != NONE {
            f = self.table[f as usize][w[i]];
            i += 1;
        }
        if (i as isize) > j {
            if f != a {
                self.coincidence(f, a);
            }
            return;
        }
        while j >= i as isize && self.table[b as usize][inv(w[j as usize])] != NONE {
            b = self.table[b as usize][inv(w[j as usize])];
            j -= 1;
        }
        if j < i as isize {
            self.coincidence(f, b);
        } else if i as isize == j {
            self.set(f, w[i], b);
        }
    }

    fn run_hlt(&mut self, rels: &[Vec<usize>], subs: &[Vec<usize>]) -> Result<(), CapHit> {
        for s in subs {
            self.scan_and_fill(0, s)?;
        }
        let mut a = 0usize;
        while a < self.table.len() {
            for r in rels {
                if !self.live(a as u32) {
                    break;
                }
                self.scan_and_fill(a as u32, r)?;
            }
            if self.live(a as u32) {
                for col in 0..4 {
                    if self.table[a][col] == NONE {
                        self.define(a as u32, col)?;
                    }
                }
            }
            a += 1;
        }
        Ok(())
    }

    fn run_felsch(&mut self, rels: &[Vec<usize>], subs: &[Vec<usize>]) -> Result<(), CapHit> {
        // cyclic conjugates of relators and their inverses, bucketed by first letter
        let mut by_first: [Vec<Vec<usize>>; 4] = Default::default();
        for r in rels {
            let inv_r: Vec<usize> = r.iter().rev().map(|&c| inv(c)).collect();
            for w in [r, &inv_r] {
                for k in 0..w.len() {
                    let rot: Vec<usize> = w[k..].iter().chain(&w[..k]).copied().collect();
                    if !by_first[rot[0]].contains(&rot) {
                        by_first[rot[0]].push(rot);
                    }
                }
            }
        }
        self.track_deductions = true;
        for s in subs {
            self.scan_and_fill(0, s)?;
        }
        for r in rels {
            self.scan_and_fill(0, r)?;
        }
        self.process_deductions(&by_first);
        let mut a = 0usize;
        loop {
            while a < self.table.len() && (!self.live(a as u32) || !self.table[a].contains(&NONE)) {
                a += 1;
            }
            if a >= self.table.len() {
                break;
            }
            let col = self.table[a].iter().position(|&v| v == NONE).unwrap();
            self.define(a as u32, col)?;
            self.process_deductions(&by_first);
        }
        self.track_deductions = false;
        // the table is full; fall back to HLT passes until every relator closes
        let mut changed = true;
        while changed {
            changed = false;
            for s in subs {
                if trace(&self.table, 0, s) != Some(0) {
                    self.scan_and_fill(0, s)?;
                    changed = true;
                }
            }
            let mut a = 0usize;
            while a < self.table.len() {
                if self.live(a as u32) {
                    for r in rels {
                        if !self.live(a as u32) {
                            break;
                        }
                        let before = self.table.len();
                        let end = trace(&self.table, a as u32, r);
                        if end != Some(a as u32) {
                            self.scan_and_fill(a as u32, r)?;
                            changed = true;
                        }
                        if self.table.len() != before {
                            changed = true;
                        }
                    }
                    if self.live(a as u32) {
                        for col in 0..4 {
                            if self.table[a][col] == NONE {
                                self.define(a as u32, col)?;
                                changed = true;
                            }
                        }
                    }
                }
                a += 1;
            }
        }
        Ok(())
    }

    fn process_deductions(&mut self, by_first: &[Vec<Vec<usize>>; 4]) {
        while let Some((a, col)) = self.deductions.pop() {
            if !self.live(a) {
                continue;
            }
            for w in &by_first[col] {
                if !self.live(a) {
                    break;
                }
                self.scan(a, w);
            }
            let b = self.table[a as usize][col];
            if b != NONE && self.live(b) {
                for w in &by_first[inv(col)] {
                    if !self.live(b) {
                        break;
                    }
                    self.scan(b, w);
                }
            }
        }
    }

    fn compact(&mut self) -> Vec<[u32; 4]> {
        let mut new_id = vec![NONE; self.table.len()];
        let mut n = 0u32;
        for c in 0..self.table.len() {
            if self.live(c as u32) {
                new_id[c] = n;
                n += 1;
            }
        }
        let mut rows = Vec::with_capacity(n as usize);
        for c in 0..self.table.len() {
            if !self.live(c as u32) {
                continue;
            }
            let row = self.table[c];
            let mut out = [NONE; 4];
            for col in 0..4 {
                let t = self.rep(row[col]);
                out[col] = new_id[t as usize];
            }
            rows.push(out);
        }
        rows
    }
}

fn trace(table: &[[u32; 4]], a: u32, w: &[usize]) -> Option<u32> {
    let mut c = a;
    for &col in w {
        c = table[c as usize][col];
        if c == NONE {
            return None;
        }
    }
    Some(c)
}

/// Closure check used on every completed table: all cells defined, columns
/// mutually inverse, relators loop at every coset, subgroup generators loop
/// at coset 0.
fn closes(rows: &[[u32; 4]], rels: &[Vec<usize>], subs: &[Vec<usize>]) -> bool {
    for (c, row) in rows.iter().enumerate() {
        for col in 0..4 {
            let d = row[col];
            if d == NONE || rows[d as usize][inv(col)] != c as u32 {
                return false;
            }
        }
        if rels.iter().any(|r| trace(rows, c as u32, r) != Some(c as u32)) {
            return false;
        }
    }
    subs.iter().all(|s| trace(rows, 0, s) == Some(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(rels: &[&str]) -> Presentation {
        Presentation::parse_list(&rels.join(",")).unwrap()
    }

    #[test]
    fn symmetric_group_s3() {
        let p = pres(&["x^2", "y^2", "(xy)^3"]);
        for s in [Strategy::Hlt, Strategy::Felsch] {
            let t = todd_coxeter_with(&p, &[], 1000, s);
            assert_eq!(t.status, CosetStatus::Complete(6));
        }
    }

    #[test]
    fn cyclic_of_order_three() {
        // y is killed so that the second generator does not leave the group infinite
        let p = pres(&["x^3", "y"]);
        assert_eq!(group_order(&p, 100), Some(3));
    }

    #[test]
    fn strategies_agree() {
        let cases: [&[&str]; 5] = [
            &["x^2", "y^3", "(xy)^5"],
            &["x^3", "y^3", "(xy)^3", "(xY)^2"],
            &["x^2", "y^3", "(xy)^4"],
            &["xyxY", "x^4", "y^4"],
            &["x^5", "yxY=x^2", "y^4"],
        ];
        for rels in cases {
            let p = pres(rels);
            let a = todd_coxeter_with(&p, &[], 100_000, Strategy::Hlt);
            let b = todd_coxeter_with(&p, &[], 100_000, Strategy::Felsch);
            assert!(a.is_complete(), "{rels:?}");
            assert_eq!(a.status, b.status, "{rels:?}");
        }
        assert_eq!(group_order(&pres(&["x^2", "y^3", "(xy)^5"]), 100_000), Some(60));
        assert_eq!(group_order(&pres(&["x^2", "y^3", "(xy)^4"]), 100_000), Some(24));
        assert_eq!(group_order(&pres(&["x^5", "yxY=x^2", "y^4"]), 100_000), Some(20));
    }

    #[test]
    fn subgroup_index() {
        let p = pres(&["x^2", "y^2", "(xy)^3"]);
        let t = todd_coxeter(&p, &[Word::parse("x").unwrap()], 100);
        assert_eq!(t.index(), Some(3));
        assert_eq!(t.permutation(&Word::parse("x").unwrap())[0], 0);
    }

    #[test]
    fn infinite_group_hits_cap() {
        let p = pres(&["xyxY"]);
        let t = todd_coxeter(&p, &[], 2000);
        assert_eq!(t.status, CosetStatus::CapExceeded);
        assert!(t.rows.is_empty());
    }

    #[test]
    fn element_orders_in_regular_representation() {
        let p = pres(&["x^2", "y^3", "(xy)^5"]);
        let t = todd_coxeter(&p, &[], 10_000);
        assert_eq!(t.permutation_order(&Word::parse("xy").unwrap()), 5);
        assert_eq!(t.permutation_order(&Word::parse("y").unwrap()), 3);
        let tsv = t.to_tsv();
        assert_eq!(tsv.lines().count(), 61);
    }
}
