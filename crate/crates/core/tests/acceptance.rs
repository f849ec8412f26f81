//! Acceptance run: one PASS/FAIL line per criterion, in order, with the
//! measured time against its limit. Exits non-zero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use psl_core::caselab::{
    enumerate_square_relators, pair_elimination, starred_rows, theorem_desk_checks, triangle_analysis,
    verify_atom_families, DeskConfig, FamilyStatus, PairCaps, PairVerdict, PUBLISHED_EXCEPTIONAL, SQUARE_TABLE,
};
use psl_core::group::{standard_ball, Free2, FreeAbelian2, Heisenberg, KleinBottle};
use psl_core::presentation::classify::Mark;
use psl_core::presentation::rewriting::KbCaps;
use psl_core::productset::{kappa_search, SearchConfig};
use psl_core::{Group, Word};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: Vec<String>, ok: String) -> Outcome {
    if failures.is_empty() {
        Outcome { pass: true, detail: ok }
    } else {
        Outcome { pass: false, detail: failures.join("; ") }
    }
}

fn run(n: usize, name: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let t = Instant::now();
    let o = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Outcome { pass: false, detail: format!("panicked: {msg}") }
    });
    let elapsed = t.elapsed();
    let in_time = limit.is_none_or(|l| elapsed <= l);
    let pass = o.pass && in_time;
    let timing = match limit {
        Some(l) => format!("{:.2}s, limit {}s", elapsed.as_secs_f64(), l.as_secs()),
        None => format!("{:.2}s", elapsed.as_secs_f64()),
    };
    println!(
        "criterion {n} {name}: {} ({}; {timing}{})",
        if pass { "PASS" } else { "FAIL" },
        o.detail,
        if in_time { "" } else { ", over time" }
    );
    pass
}

/// Equal up to cyclic permutation and inversion.
fn same_relator(a: &Word, b: &Word) -> bool {
    let b = b.cyclically_reduce();
    a.cyclic_conjugates().contains(&b) || a.inverse().cyclic_conjugates().contains(&b)
}

fn square_table() -> Outcome {
    let t = enumerate_square_relators().unwrap();
    let mut failures = t.diffs.clone();
    if t.rows.len() != 36 {
        failures.push(format!("{} classes", t.rows.len()));
    }
    for (row, (_, mark)) in t.rows.iter().zip(SQUARE_TABLE) {
        if Some(row.mark) != Mark::parse(mark) {
            failures.push(format!("row {}: {} vs {mark}", row.index, row.mark));
        }
    }
    let marks: String = t.rows.iter().map(|r| r.mark.to_string()).collect();
    outcome(failures, format!("36 classes, marks {marks}"))
}

fn triangles() -> Outcome {
    let rep = triangle_analysis(&PairCaps::default()).unwrap();
    let mut failures = rep.table.diffs.clone();
    if rep.table.rows.len() != 13 {
        failures.push(format!("{} classes", rep.table.rows.len()));
    }
    let expected = ["yxyx^-1", "xyxy^-1", "x^2y^-2"].map(|s| Word::parse(s).unwrap());
    let found: Vec<&Word> = rep.survivors.iter().map(|&i| &rep.table.row(i).relator).collect();
    let matched = expected.iter().all(|e| found.iter().filter(|w| same_relator(w, e)).count() == 1);
    if found.len() != 3 || !matched {
        let s: Vec<String> = found.iter().map(|w| w.pretty()).collect();
        failures.push(format!("survivors {s:?}"));
    }
    for e in &rep.exclusivity {
        if !matches!(e.verdict, PairVerdict::Finite { .. } | PairVerdict::TorsionWitness { .. }) {
            failures.push(format!("survivors {} and {}: {:?}", e.i, e.j, e.verdict));
        }
    }
    outcome(failures, format!("13 classes, survivors {:?}, {} exclusivity checks", rep.survivors, rep.exclusivity.len()))
}

fn pairs() -> Outcome {
    let table = enumerate_square_relators().unwrap();
    let caps = PairCaps { max_cosets: 1_000_000, kb: KbCaps { max_rules: 10_000, ..KbCaps::default() }, ..PairCaps::default() };
    let reps = pair_elimination(&table, &caps);
    let published: BTreeSet<(usize, usize)> = PUBLISHED_EXCEPTIONAL.into_iter().collect();
    let mut failures = Vec::new();
    if starred_rows(&table).len() != 21 || reps.len() != 210 {
        failures.push(format!("{} starred rows, {} pairs", starred_rows(&table).len(), reps.len()));
    }
    let exceptional: BTreeSet<(usize, usize)> = reps
        .iter()
        .filter(|p| matches!(p.verdict, PairVerdict::TorsionWitness { .. }))
        .map(|p| (p.i, p.j))
        .collect();
    if exceptional != published {
        failures.push(format!("exceptional set differs at {:?}", exceptional.symmetric_difference(&published).collect::<Vec<_>>()));
    }
    for p in reps.iter().filter(|p| published.contains(&(p.i, p.j))) {
        match &p.listed {
            Some(l) if l.holds == Some(true) => {}
            Some(l) => failures.push(format!("({},{}) listed ({})^{} holds = {:?}", p.i, p.j, l.base.pretty(), l.exponent, l.holds)),
            None => failures.push(format!("({},{}) has no listed witness", p.i, p.j)),
        }
    }
    let rest: Vec<_> = reps.iter().filter(|p| !published.contains(&(p.i, p.j))).collect();
    let resolved = rest.iter().filter(|p| p.verdict.is_finite_or_abelian()).count();
    if resolved < 190 {
        failures.push(format!("only {resolved} of {} remaining pairs finite or abelian", rest.len()));
    }
    let contrary = reps
        .iter()
        .filter(|p| published.contains(&(p.i, p.j)) && p.verdict.is_finite_or_abelian())
        .count();
    if contrary > 0 {
        failures.push(format!("{contrary} listed pairs resolved finite or abelian"));
    }
    outcome(failures, format!("210 pairs, 9 exceptional, {resolved} of {} others finite or abelian", rest.len()))
}

fn families() -> Outcome {
    let checks = verify_atom_families(10_000, 50, 4);
    let mut failures = Vec::new();
    let want = [("4-atom (9)", 8, 6), ("5-atom", 9, 3), ("6-atom", 10, 1)];
    for (family, size, count) in want {
        let hits: Vec<_> = checks.iter().filter(|c| c.family == family).collect();
        if hits.len() != count {
            failures.push(format!("{family}: {} sets", hits.len()));
        }
        for c in hits {
            if c.status != FamilyStatus::Verified || c.product_size != Some(size) {
                failures.push(format!("{family} #{}: |BC| = {:?}, {:?}", c.set_index, c.product_size, c.status));
            }
        }
    }
    let k = KleinBottle::<i64>::new();
    let c = vec![k.identity(), k.u(), k.v()];
    let cfg = SearchConfig::new(7).with_cap(7).with_witnesses(1);
    let r = kappa_search(&k, &c, &standard_ball(&k, 4), "ball(x,y;4)", &cfg).unwrap();
    if r.kappa_min + 7 != 12 {
        failures.push(format!("restricted 7-set minimum {}", r.kappa_min + 7));
    }
    let others = checks.iter().filter(|c| matches!(c.status, FamilyStatus::Mismatch(_))).count();
    if others > 0 {
        failures.push(format!("{others} family mismatches"));
    }
    outcome(failures, format!("family (9) |BC| = 8, 5-atoms 9, 6-atom 10, 7-set min 12 over {} elements", r.universe_size))
}

fn desk_checks() -> Outcome {
    let rep = theorem_desk_checks(&DeskConfig::default()).unwrap();
    let failures: Vec<String> = rep
        .checks
        .iter()
        .filter(|c| !c.holds)
        .map(|c| format!("{} in {}: {} < {}", c.claim, c.model, c.min_product, c.bound))
        .collect();
    let mins: Vec<String> = rep.checks.iter().map(|c| format!("{}:{}>={}", c.model, c.min_product, c.bound)).collect();
    outcome(failures, mins.join(" "))
}

fn property_suites() -> Outcome {
    let (f, k, h, z) = (Free2, KleinBottle::<i64>::new(), Heisenberg::<i64>::new(), FreeAbelian2::<i64>::new());
    let counts = [
        common::product_bounds(&z, 101),
        common::product_bounds(&f, 102),
        common::product_bounds(&k, 103),
        common::product_bounds(&h, 104),
    ];
    common::cayley_cases(&f, 111);
    common::cayley_cases(&k, 112);
    common::cayley_cases(&h, 113);
    common::no_forbidden_patterns(&f, 121);
    common::no_forbidden_patterns(&h, 122);
    common::no_k4(&k, 123);
    common::tuples_telescope(&f, 131);
    common::tuples_telescope(&k, 132);
    common::tuples_telescope(&h, 133);
    common::certificate_controls();
    outcome(
        Vec::new(),
        format!(
            "{} pairs per model, non-abelian cases z2/free2/klein/heisenberg {:?}, {} Cayley and {} graph cases per model",
            common::PAIRS_PER_MODEL,
            counts,
            common::CAYLEY_CASES,
            common::GRAPH_CASES
        ),
    )
}

fn main() -> ExitCode {
    let secs = |n| Some(Duration::from_secs(n));
    let results = [
        run(1, "square relator table", secs(5), square_table),
        run(2, "triangle relator taxonomy", secs(30), triangles),
        run(3, "pair elimination", secs(600), pairs),
        run(4, "atom families", secs(300), families),
        run(5, "lower-bound desk checks", secs(900), desk_checks),
        run(6, "property suites", None, property_suites),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria pass", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
