use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde_json::{json, Value};

use psl_core::algebra::{certificate_from_atom, load_certificate, positive_control, support_bound_scan};
use psl_core::caselab::{
    enumerate_square_relators, pair_elimination, starred_rows, theorem_desk_checks, triangle_analysis,
    verify_atom_families, DeskConfig, FamilyStatus, PairCaps, PairVerdict, PUBLISHED_EXCEPTIONAL,
};
use psl_core::group::standard_ball;
use psl_core::presentation::rewriting::KbCaps;
use psl_core::productset::{
    atom_candidates, generates_nonabelian, kappa_search, product_stats, SearchConfig, SubsetPair,
};
use psl_core::psgraph::{
    build_graph, cayley_induced_check, classify_cycle, cycles, find_pattern, noncyclic_witness, tuple_class, Pattern,
};
use psl_core::{Element, Group, Model, ModelKind, PslError, Result, Word};

use crate::{Command, PairArgs, Report, SearchArgs, Verdict};

pub fn run(cmd: &Command) -> Result<Report> {
    match cmd {
        Command::Stats(a) => stats(a),
        Command::Graph(a) => graph(a),
        Command::Kappa(a) => kappa(a, false),
        Command::Atoms(a) => kappa(a, true),
        Command::TableC4 => table_c4(),
        Command::Triangles { max_cosets } => triangles(*max_cosets),
        Command::Pairs { max_cosets, max_rules } => pairs(*max_cosets, *max_rules),
        Command::Families { max_rules, max_passes, radius } => families(*max_rules, *max_passes, *radius),
        Command::DeskChecks { klein_radius, free_radius, heisenberg_radius } => desk(DeskConfig {
            klein_radius: *klein_radius,
            free_radius: *free_radius,
            heisenberg_radius: *heisenberg_radius,
            parallel: true,
        }),
        Command::ScanSupports { model, cset, radius, max_support } => scan(model, cset, *radius, *max_support),
        Command::Certify { control, model, cset, bset } => certify(*control, model, cset, bset),
        Command::VerifyCert { input } => verify(input),
    }
}

/// Shipped models other than rewriting quotients are torsion-free.
fn torsion_free(m: &Model) -> bool {
    m.kind() != ModelKind::RewritingQuotient
}

fn fmt_set(m: &Model, s: &[Element]) -> Vec<String> {
    s.iter().map(|e| m.format(e)).collect()
}

fn load_pair(a: &PairArgs) -> Result<(Model, SubsetPair<Element>)> {
    let m = Model::by_name(&a.model)?;
    let c = m.parse_set(&a.cset)?;
    let b = m.parse_set(&a.bset)?;
    Ok((m, SubsetPair::new(b, c)?))
}

fn stats(a: &PairArgs) -> Result<Report> {
    let (m, p) = load_pair(a)?;
    let st = product_stats(&m, &p)?;
    st.check_invariants()?;
    let fibers: Vec<Value> = st
        .fibers
        .iter()
        .map(|(x, f)| {
            let fac: Vec<[String; 2]> = f.iter().map(|&(i, j)| [m.format(&p.b[i]), m.format(&p.c[j])]).collect();
            json!({ "x": m.format(x), "r": f.len(), "factorizations": fac })
        })
        .collect();
    let bound = p.b.len() + p.c.len() - 1;
    let n = st.product_size();
    let hist = st.histogram().counts;
    let mut tsv = String::from("x\tr\tfactorizations\n");
    for (x, f) in &st.fibers {
        let fac: Vec<String> = f.iter().map(|&(i, j)| format!("{}*{}", m.format(&p.b[i]), m.format(&p.c[j]))).collect();
        let _ = writeln!(tsv, "{}\t{}\t{}", m.format(x), f.len(), fac.join(" "));
    }
    let payload = json!({
        "model": m.name(),
        "B": fmt_set(&m, &p.b),
        "C": fmt_set(&m, &p.c),
        "product_size": n,
        "boundary_size": st.boundary_size(),
        "boundary": fmt_set(&m, &st.boundary),
        "fiber_histogram": hist,
        "unique_products": st.fibers.values().filter(|f| f.len() == 1).count(),
        "fibers": fibers,
        "lower_bound": { "bound": bound, "holds": n >= bound },
    });
    let mut r = Report::new("|BC| >= |B| + |C| - 1 in torsion-free groups", json!({}), payload);
    r.tsv = Some(tsv);
    if torsion_free(&m) && n < bound {
        r.verdict = Verdict::Contradiction(format!("|BC| = {n} < {bound}"));
    }
    Ok(r)
}

fn graph(a: &PairArgs) -> Result<Report> {
    let (m, p) = load_pair(a)?;
    let gr = build_graph(&m, &p)?;
    let mut cyc = Vec::new();
    for n in [3, 4] {
        for c in cycles(&m, &gr, n)? {
            let class = tuple_class(&c.tuple);
            cyc.push(json!({
                "length": n,
                "vertices": c.vertices,
                "tuple": c.tuple.to_string(),
                "class": class.to_string(),
                "type": format!("{:?}", classify_cycle(&c.tuple)?),
            }));
        }
    }
    let adj = gr.adjacency();
    let mut found = Vec::new();
    let mut patterns = serde_json::Map::new();
    for pat in Pattern::ALL {
        let emb = find_pattern(&adj, pat);
        if emb.is_some() {
            found.push(pat.to_string());
        }
        patterns.insert(pat.to_string(), json!(emb));
    }
    let three = p.c.len() == 3 && p.c.contains(&m.identity());
    let cayley = if three { Some(cayley_induced_check(&m, &p)?) } else { None };
    let payload = json!({
        "model": m.name(),
        "graph": gr.to_json(&m),
        "cycles": cyc,
        "patterns": patterns,
        "cayley_induced": cayley,
    });
    let mut r = Report::new(
        "P(B,C) is an induced subgraph of the Cayley graph on C^-1 C, and has no K4 or Gamma pattern outside the Klein bottle group",
        json!({}),
        payload,
    );
    r.dot = Some(gr.to_dot(&m));
    let strict = torsion_free(&m) && m.kind() != ModelKind::KleinBottle && three && generates_nonabelian(&m, &p.c);
    if cayley == Some(false) && noncyclic_witness(&m, &p.c) && torsion_free(&m) {
        r.verdict = Verdict::Contradiction("P(B,C) is not Cayley-induced".into());
    } else if strict && !found.is_empty() {
        r.verdict = Verdict::Contradiction(format!("forbidden patterns present: {}", found.join(", ")));
    }
    Ok(r)
}

fn kappa(a: &SearchArgs, atoms: bool) -> Result<Report> {
    let m = Model::by_name(&a.model)?;
    let c = m.parse_set(&a.cset)?;
    let universe = standard_ball(&m, a.radius);
    let desc = format!("ball(x,y;{})", a.radius);
    let mut cfg = SearchConfig::new(a.k).with_witnesses(a.witnesses);
    if let Some(cap) = a.size_cap {
        cfg = cfg.with_cap(cap);
    }
    let rep = kappa_search(&m, &c, &universe, &desc, &cfg)?;
    let caps = json!({ "radius": a.radius, "size_cap": rep.size_cap, "witness_limit": a.witnesses });
    let mut payload = rep.to_json(&m);
    let mut r = if atoms {
        let cands = atom_candidates(&m, &rep)?;
        let mut certs = Vec::new();
        let mut verdict = Verdict::Ok;
        for cand in &cands {
            let st = product_stats(&m, &SubsetPair::new(cand.clone(), rep.c.clone())?)?;
            if let Some(cert) = certificate_from_atom(&m, cand, &rep.c, &st)? {
                if torsion_free(&m) {
                    verdict = Verdict::Contradiction(format!("{} certificate from an atom", cert.kind));
                }
                certs.push(cert.to_json(&m));
            }
        }
        payload["atom_candidates"] = json!(cands.iter().map(|s| fmt_set(&m, s)).collect::<Vec<_>>());
        payload["certificates"] = json!(certs);
        let mut r = Report::new("k-atom candidates satisfy the fiber and intersection properties", caps, payload);
        r.verdict = verdict;
        r
    } else {
        Report::new("restricted value of the k-isoperimetric number", caps, payload)
    };
    r.restricted = true;
    Ok(r)
}

fn table_tsv_verdict(diffs: &[String]) -> Verdict {
    if diffs.is_empty() {
        Verdict::Ok
    } else {
        Verdict::Contradiction(diffs.join("; "))
    }
}

fn table_c4() -> Result<Report> {
    let t = enumerate_square_relators()?;
    let mut r = Report::new("36 square relator classes with published A/T/* marks", json!({}), json!(t));
    r.tsv = Some(t.to_tsv());
    r.verdict = table_tsv_verdict(&t.diffs);
    Ok(r)
}

fn triangles(max_cosets: usize) -> Result<Report> {
    let caps = PairCaps { max_cosets, ..PairCaps::default() };
    let rep = triangle_analysis(&caps)?;
    let mut r = Report::new(
        "13 triangle relator classes; survivors yxy=x, xyx=y, x^2=y^2 pairwise exclusive",
        json!({ "max_cosets": max_cosets }),
        json!(rep),
    );
    r.tsv = Some(rep.table.to_tsv());
    r.verdict = table_tsv_verdict(&rep.table.diffs);
    if r.verdict == Verdict::Ok {
        if rep.survivors.len() != 3 {
            r.verdict = Verdict::Contradiction(format!("survivors {:?}", rep.survivors));
        } else if let Some(e) = rep.exclusivity.iter().find(|e| matches!(e.verdict, PairVerdict::Unresolved { .. })) {
            r.verdict = Verdict::CapExhausted(format!("survivors {} and {} undecided", e.i, e.j));
        }
    }
    Ok(r)
}

fn pairs(max_cosets: usize, max_rules: usize) -> Result<Report> {
    let table = enumerate_square_relators()?;
    let caps = PairCaps { max_cosets, kb: KbCaps { max_rules, ..KbCaps::default() }, ..PairCaps::default() };
    let reps = pair_elimination(&table, &caps);
    let starred = starred_rows(&table);
    let exceptional: BTreeSet<(usize, usize)> = reps
        .iter()
        .filter(|p| matches!(p.verdict, PairVerdict::TorsionWitness { .. }))
        .map(|p| (p.i, p.j))
        .collect();
    let published: BTreeSet<(usize, usize)> = PUBLISHED_EXCEPTIONAL.into_iter().collect();
    let unresolved: Vec<String> = reps
        .iter()
        .filter(|p| matches!(p.verdict, PairVerdict::Unresolved { .. }))
        .map(|p| format!("({},{})", p.i, p.j))
        .collect();
    let failed: Vec<String> = reps
        .iter()
        .filter(|p| p.listed.as_ref().is_some_and(|l| l.holds == Some(false)))
        .map(|p| {
            let l = p.listed.as_ref().expect("listed");
            format!("({},{}): {} != 1", p.i, p.j, power(&l.base, l.exponent))
        })
        .collect();
    let undecided: Vec<String> = reps
        .iter()
        .filter(|p| p.listed.as_ref().is_some_and(|l| l.holds.is_none()))
        .map(|p| format!("({},{})", p.i, p.j))
        .collect();
    let mut tsv = String::from("i\tj\tverdict\tlisted\tholds\n");
    for p in &reps {
        let v = match &p.verdict {
            PairVerdict::Finite { order } => format!("finite({order})"),
            PairVerdict::AbelianRewriting => "abelian".into(),
            PairVerdict::AbelianCyclic { generator } => format!("cyclic({})", generator.pretty()),
            PairVerdict::TorsionWitness { base, exponent } => format!("torsion({})", power(base, *exponent)),
            PairVerdict::Unresolved { .. } => "unresolved".into(),
        };
        let (listed, holds) = match &p.listed {
            Some(l) => (power(&l.base, l.exponent), format!("{:?}", l.holds)),
            None => ("-".into(), "-".into()),
        };
        let _ = writeln!(tsv, "{}\t{}\t{v}\t{listed}\t{holds}", p.i, p.j);
    }
    let payload = json!({
        "starred_rows": starred,
        "pair_count": reps.len(),
        "finite_or_abelian": reps.iter().filter(|p| p.verdict.is_finite_or_abelian()).count(),
        "exceptional": exceptional,
        "published_exceptional": published,
        "listed_witness_failures": failed,
        "pairs": reps,
    });
    let mut r = Report::new(
        "every pair of non-Klein starred square relators is finite, abelian, or one of nine listed torsion cases",
        json!({ "max_cosets": max_cosets, "max_rules": max_rules }),
        payload,
    );
    r.tsv = Some(tsv);
    if exceptional != published {
        let extra: Vec<_> = exceptional.symmetric_difference(&published).collect();
        r.verdict = Verdict::Contradiction(format!("exceptional set differs at {extra:?}"));
    } else if !failed.is_empty() {
        r.verdict = Verdict::Contradiction(format!("listed witnesses fail: {}", failed.join("; ")));
    } else if !unresolved.is_empty() || !undecided.is_empty() {
        r.verdict = Verdict::CapExhausted(format!("unresolved {unresolved:?}, undecided witnesses {undecided:?}"));
    }
    Ok(r)
}

fn power(base: &Word, k: u32) -> String {
    if base.len() == 1 {
        format!("{}^{k}", base.pretty())
    } else {
        format!("({})^{k}", base.pretty())
    }
}

fn families(max_rules: usize, max_passes: usize, radius: usize) -> Result<Report> {
    let checks = verify_atom_families(max_rules, max_passes, radius);
    let mut tsv = String::from("family\tset\tmodel\t|B|\t|BC|\texpected\tstatus\n");
    for c in &checks {
        let _ = writeln!(
            tsv,
            "{}\t{}\t{}\t{}\t{}\t{}\t{:?}",
            c.family,
            c.set_index,
            c.model,
            c.b.len(),
            c.product_size.map_or("-".into(), |n| n.to_string()),
            c.expected,
            c.status
        );
    }
    let mismatch: Vec<String> = checks
        .iter()
        .filter_map(|c| match &c.status {
            FamilyStatus::Mismatch(s) => Some(format!("{} #{}: {s}", c.family, c.set_index)),
            _ => None,
        })
        .collect();
    let skipped: Vec<String> = checks
        .iter()
        .filter(|c| matches!(c.status, FamilyStatus::Skipped(_)))
        .map(|c| format!("{} #{}", c.family, c.set_index))
        .collect();
    let mut r = Report::new(
        "4-atoms, 5-atoms and the 6-atom of C = {1, a, b} have |BC| = |B| + 4",
        json!({ "max_rules": max_rules, "max_passes": max_passes, "extension_radius": radius }),
        json!(checks),
    );
    r.tsv = Some(tsv);
    if !mismatch.is_empty() {
        r.verdict = Verdict::Contradiction(mismatch.join("; "));
    } else if !skipped.is_empty() {
        r.verdict = Verdict::CapExhausted(format!("skipped {}", skipped.join(", ")));
    }
    Ok(r)
}

fn desk(cfg: DeskConfig) -> Result<Report> {
    let rep = theorem_desk_checks(&cfg)?;
    let caps = json!({
        "klein_radius": cfg.klein_radius,
        "free_radius": cfg.free_radius,
        "heisenberg_radius": cfg.heisenberg_radius,
    });
    let violated: Vec<String> = rep
        .checks
        .iter()
        .filter(|c| !c.holds)
        .map(|c| format!("{} in {}: min |BC| = {} < {}", c.claim, c.model, c.min_product, c.bound))
        .collect();
    let mut r = Report::new("proved lower bounds on |BC|, checked on balls", caps, json!(rep));
    r.restricted = true;
    if !violated.is_empty() {
        r.verdict = Verdict::Contradiction(violated.join("; "));
    }
    Ok(r)
}

fn scan(model: &str, cset: &str, radius: usize, max_support: usize) -> Result<Report> {
    let m = Model::by_name(model)?;
    let c = m.parse_set(cset)?;
    let universe = standard_ball(&m, radius);
    let rep = support_bound_scan(&m, &c, max_support, &universe, &format!("ball(x,y;{radius})"))?;
    let mut r = Report::new(
        "no zero divisor or unit over F_2 with a support of size 3 on one side and a small support on the other",
        json!({ "radius": radius, "max_support": max_support }),
        rep.to_json(&m),
    );
    r.restricted = true;
    if torsion_free(&m) {
        if let Err(PslError::Contradiction(s)) = rep.check_torsion_free() {
            r.verdict = Verdict::Contradiction(s);
        }
    }
    Ok(r)
}

fn certify(control: Option<u32>, model: &Option<String>, cset: &Option<String>, bset: &Option<String>) -> Result<Report> {
    if let Some(n) = control {
        let (m, cert) = positive_control(n)?;
        let r = Report::new(
            "positive control: a finite group algebra has the certified zero divisor or unit",
            json!({ "control_order": n }),
            cert.to_json(&m),
        );
        return Ok(r);
    }
    let (Some(model), Some(cset), Some(bset)) = (model, cset, bset) else {
        return Err(PslError::InvalidInput("certify needs --control or all of --model, --cset, --bset".into()));
    };
    let (m, p) = load_pair(&PairArgs { model: model.clone(), cset: cset.clone(), bset: bset.clone() })?;
    let st = product_stats(&m, &p)?;
    let cert = certificate_from_atom(&m, &p.b, &p.c, &st)?;
    let payload = match &cert {
        Some(c) => c.to_json(&m),
        None => json!({ "certificate": null, "fiber_histogram": st.histogram().counts, "product_size": st.product_size() }),
    };
    let mut r = Report::new("an atom with fibers of size 2 yields a zero divisor or unit over F_2", json!({}), payload);
    if let (Some(c), true) = (&cert, torsion_free(&m)) {
        r.verdict = Verdict::Contradiction(format!("{} certificate in torsion-free model {}", c.kind, m.name()));
    }
    Ok(r)
}

fn verify(path: &std::path::Path) -> Result<Report> {
    let text = std::fs::read_to_string(path)?;
    // accept either a bare certificate or a `certify` report
    let v: Value = serde_json::from_str(&text)?;
    let inner = match v.get("report") {
        Some(r) if r.get("kind").is_some() => r.to_string(),
        _ => text,
    };
    let (m, cert) = load_certificate(&inner)?;
    let payload = json!({
        "verified": true,
        "kind": cert.kind.to_string(),
        "model": m.name(),
        "alpha_support": cert.alpha.support_size(),
        "beta_support": cert.beta.support_size(),
    });
    let mut r = Report::new("certificate product recomputed and matches its claim", json!({}), payload);
    if torsion_free(&m) {
        r.verdict = Verdict::Contradiction(format!("verified {} certificate in torsion-free model {}", cert.kind, m.name()));
    }
    Ok(r)
}
