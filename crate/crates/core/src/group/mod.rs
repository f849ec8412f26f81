//! Concrete groups with decidable word problem behind one interface.

mod dynamic;
mod free;
mod heisenberg;
mod klein;
mod lattice;
mod quotient;

use std::collections::HashSet;
use std::fmt::Debug;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::presentation::{Gen, Word};

pub use dynamic::{Element, Model};
pub use free::Free2;
pub use heisenberg::Heisenberg;
pub use klein::KleinBottle;
pub use lattice::FreeAbelian2;
pub use quotient::{instantiate_quotient, QuotientGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModelKind {
    Free2,
    FreeAbelian2,
    KleinBottle,
    Heisenberg,
    RewritingQuotient,
}

/// A group whose elements are stored in canonical normal form, so `==` on
/// elements is equality in the group.
pub trait Group: Send + Sync {
    type Elem: Clone + Eq + Ord + Hash + Debug + Send + Sync;

    fn kind(&self) -> ModelKind;
    fn name(&self) -> String;
    fn identity(&self) -> Self::Elem;
    fn multiply(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inverse(&self, a: &Self::Elem) -> Self::Elem;
    /// The designated generators `x`, `y`.
    fn generators(&self) -> [Self::Elem; 2];
    /// Literal form accepted back by [`Group::parse_element`].
    fn format(&self, a: &Self::Elem) -> String;
    fn parse_element(&self, s: &str) -> Result<Self::Elem>;

    /// Rejects elements that do not belong to this model.
    fn validate(&self, _a: &Self::Elem) -> Result<()> {
        Ok(())
    }

    fn is_identity(&self, a: &Self::Elem) -> bool {
        *a == self.identity()
    }

    /// Image of a word under `x, y` mapped to the designated generators.
    fn eval(&self, w: &Word) -> Self::Elem {
        let [x, y] = self.generators();
        let (xi, yi) = (self.inverse(&x), self.inverse(&y));
        w.letters().into_iter().fold(self.identity(), |acc, l| {
            let g = match (l.gen(), l.is_positive()) {
                (Gen::X, true) => &x,
                (Gen::X, false) => &xi,
                (Gen::Y, true) => &y,
                (Gen::Y, false) => &yi,
            };
            self.multiply(&acc, g)
        })
    }

    fn pow(&self, a: &Self::Elem, k: i64) -> Self::Elem {
        let base = if k < 0 { self.inverse(a) } else { a.clone() };
        (0..k.unsigned_abs()).fold(self.identity(), |acc, _| self.multiply(&acc, &base))
    }

    fn commutes(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.multiply(a, b) == self.multiply(b, a)
    }
}

/// All products of at most `radius` factors from `gens ∪ gens⁻¹`, in
/// breadth-first order starting from the identity.
pub fn ball<G: Group>(g: &G, gens: &[G::Elem], radius: usize) -> Vec<G::Elem> {
    let mut steps: Vec<G::Elem> = Vec::new();
    for s in gens {
        for t in [s.clone(), g.inverse(s)] {
            if !steps.contains(&t) {
                steps.push(t);
            }
        }
    }
    let id = g.identity();
    let mut seen: HashSet<G::Elem> = HashSet::from([id.clone()]);
    let mut out = vec![id];
    let mut start = 0;
    for _ in 0..radius {
        let end = out.len();
        for i in start..end {
            for s in &steps {
                let h = g.multiply(&out[i], s);
                if seen.insert(h.clone()) {
                    out.push(h);
                }
            }
        }
        start = end;
    }
    out
}

/// Ball around the identity for the designated generators.
pub fn standard_ball<G: Group>(g: &G, radius: usize) -> Vec<G::Elem> {
    ball(g, &g.generators(), radius)
}
