//! Restricted searches for the smallest `|BC|` at fixed `|B|`, compared with
//! the proved lower bounds.

use serde::Serialize;

use crate::group::{standard_ball, Free2, Group, Heisenberg, KleinBottle};
use crate::productset::{kappa_search, SearchConfig};
use crate::error::Result;

#[derive(Clone, Debug, Serialize)]
pub struct DeskConfig {
    pub klein_radius: usize,
    pub free_radius: usize,
    pub heisenberg_radius: usize,
    pub parallel: bool,
}

impl Default for DeskConfig {
    fn default() -> Self {
        DeskConfig { klein_radius: 4, free_radius: 3, heisenberg_radius: 3, parallel: true }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DeskCheck {
    pub claim: String,
    pub model: String,
    pub c: Vec<String>,
    pub b_size: usize,
    pub universe: String,
    pub universe_size: usize,
    /// Required: `|BC| ≥ bound` for every `B` of size `b_size`.
    pub bound: usize,
    pub min_product: usize,
    pub witness: Vec<String>,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DeskReport {
    pub checks: Vec<DeskCheck>,
    pub restricted: bool,
}

impl DeskReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

fn check<G: Group>(
    g: &G,
    claim: &str,
    c: Vec<G::Elem>,
    b_size: usize,
    bound: usize,
    radius: usize,
    parallel: bool,
) -> Result<DeskCheck> {
    let universe = standard_ball(g, radius);
    let desc = format!("ball(x,y;{radius})");
    let mut cfg = SearchConfig::new(b_size).with_cap(b_size).with_witnesses(1);
    cfg.parallel = parallel;
    let r = kappa_search(g, &c, &universe, &desc, &cfg)?;
    let min_product = b_size + r.kappa_min;
    Ok(DeskCheck {
        claim: claim.to_string(),
        model: g.name(),
        c: c.iter().map(|e| g.format(e)).collect(),
        b_size,
        universe: desc,
        universe_size: r.universe_size,
        bound,
        min_product,
        witness: r.witnesses.first().map(|w| w.0.iter().map(|e| g.format(e)).collect()).unwrap_or_default(),
        holds: min_product >= bound,
    })
}

/// Klein `C = {1, u, v}` at `|B| = 7`; free group and Heisenberg group with
/// `C = {1, x, y}` at `|B| = 5, 7`; free group with `|C| = 4` at `|B| = 7`.
pub fn theorem_desk_checks(cfg: &DeskConfig) -> Result<DeskReport> {
    let k = KleinBottle::<i64>::new();
    let f = Free2;
    let h = Heisenberg::<i64>::new();
    let fw = |s: &str| f.parse_element(s).expect("literal");
    let [hx, hy] = h.generators();
    let mut checks = vec![
        check(&k, "|BC| >= |B|+5 for |B| >= 7", vec![k.identity(), k.u(), k.v()], 7, 12, cfg.klein_radius, cfg.parallel)?,
    ];
    let free_c = vec![fw("e"), fw("x"), fw("y")];
    checks.push(check(&f, "|BC| >= |B|+5 for |B| >= 5 outside the Klein bottle group", free_c.clone(), 5, 10, cfg.free_radius, cfg.parallel)?);
    checks.push(check(&f, "|BC| >= |B|+|C|+2 for |B| >= 7 in unique product groups", free_c, 7, 12, cfg.free_radius, cfg.parallel)?);
    let heis_c = vec![h.identity(), hx, hy];
    checks.push(check(&h, "|BC| >= |B|+5 for |B| >= 5 outside the Klein bottle group", heis_c.clone(), 5, 10, cfg.heisenberg_radius, cfg.parallel)?);
    checks.push(check(&h, "|BC| >= |B|+5 for |B| >= 7", heis_c, 7, 12, cfg.heisenberg_radius, cfg.parallel)?);
    for c4 in [["e", "x", "y", "xy"], ["e", "x", "X", "y"]] {
        let c: Vec<_> = c4.iter().map(|s| fw(s)).collect();
        checks.push(check(&f, "kappa_7(C) >= 6 for |C| = 4 in unique product groups", c, 7, 13, cfg.free_radius, cfg.parallel)?);
    }
    Ok(DeskReport { checks, restricted: true })
}
