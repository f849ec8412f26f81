//! The group algebra `F_p[G]` on finitely supported elements, certificates
//! for zero divisors and units, and support-size scans.

mod certificate;
mod scan;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::error::{PslError, Result};
use crate::group::Group;

pub use certificate::{
    certificate_from_atom, finite_control_model, load_certificate, positive_control, verify_certificate, Certificate,
    CertificateKind, ProductClaim, Provenance,
};
pub use scan::{support_bound_scan, CountingWindow, SupportScan, SupportScanReport};

/// Largest accepted characteristic. Products of two coefficients stay well
/// inside `u64`.
pub const MAX_PRIME: u64 = 65_521;

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// `Σ c_g g` over `F_p`. Zero coefficients are never stored, so the key set
/// is the support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement<E: Ord> {
    model: String,
    p: u64,
    terms: BTreeMap<E, u64>,
}

impl<E: Ord + Clone> AlgebraElement<E> {
    pub fn zero<G: Group<Elem = E>>(g: &G, p: u64) -> Result<Self> {
        if !is_prime(p) || p > MAX_PRIME {
            return Err(PslError::InvalidInput(format!("{p} is not a supported prime")));
        }
        Ok(AlgebraElement { model: g.name(), p, terms: BTreeMap::new() })
    }

    /// Sums the given terms; coefficients are reduced mod `p` and repeated
    /// elements accumulate.
    pub fn from_terms<G, I>(g: &G, p: u64, terms: I) -> Result<Self>
    where
        G: Group<Elem = E>,
        I: IntoIterator<Item = (E, i64)>,
    {
        let mut out = Self::zero(g, p)?;
        for (e, c) in terms {
            g.validate(&e)?;
            let c = c.rem_euclid(p as i64) as u64;
            out.add_term(e, c);
        }
        Ok(out)
    }

    /// `Σ_{s ∈ S} s` over `F_p`.
    pub fn indicator<G: Group<Elem = E>>(g: &G, p: u64, set: &[E]) -> Result<Self> {
        Self::from_terms(g, p, set.iter().map(|e| (e.clone(), 1)))
    }

    pub fn one<G: Group<Elem = E>>(g: &G, p: u64) -> Result<Self> {
        Self::from_terms(g, p, [(g.identity(), 1)])
    }

    fn add_term(&mut self, e: E, c: u64) {
        if c == 0 {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let n = (*o.get() + c) % self.p;
                if n == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = n;
                }
            }
        }
    }

    pub fn model(&self) -> &str {
        &self.model
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn terms(&self) -> &BTreeMap<E, u64> {
        &self.terms
    }

    pub fn support(&self) -> Vec<E> {
        self.terms.keys().cloned().collect()
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, e: &E) -> u64 {
        self.terms.get(e).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.model != other.model {
            return Err(PslError::ModelMismatch(format!("{} vs {}", self.model, other.model)));
        }
        if self.p != other.p {
            return Err(PslError::InvalidInput(format!("field mismatch: F_{} vs F_{}", self.p, other.p)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), *c);
        }
        Ok(out)
    }

    /// Left multiplication by a group element.
    pub fn left_shift<G: Group<Elem = E>>(&self, g: &G, by: &E) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (g.multiply(by, e), *c)).collect();
        AlgebraElement { model: self.model.clone(), p: self.p, terms }
    }

    pub fn right_shift<G: Group<Elem = E>>(&self, g: &G, by: &E) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (g.multiply(e, by), *c)).collect();
        AlgebraElement { model: self.model.clone(), p: self.p, terms }
    }
}

/// Convolution product in `F_p[G]`.
pub fn multiply_algebra<G: Group>(
    g: &G,
    a: &AlgebraElement<G::Elem>,
    b: &AlgebraElement<G::Elem>,
) -> Result<AlgebraElement<G::Elem>> {
    a.compatible(b)?;
    if a.model != g.name() {
        return Err(PslError::ModelMismatch(format!("{} vs {}", a.model, g.name())));
    }
    let p = a.p;
    let mut acc: BTreeMap<G::Elem, u64> = BTreeMap::new();
    for (x, cx) in &a.terms {
        for (y, cy) in &b.terms {
            let v = acc.entry(g.multiply(x, y)).or_insert(0);
            *v = (*v + cx * cy) % p;
        }
    }
    acc.retain(|_, v| *v != 0);
    Ok(AlgebraElement { model: a.model.clone(), p, terms: acc })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{instantiate_quotient, Free2, KleinBottle};
    use crate::presentation::{Presentation, Word};

    #[test]
    fn characteristic_two_square() {
        let q = instantiate_quotient(&Presentation::parse_list("x^2, y").unwrap(), 100, 10).unwrap();
        let g = Word::parse("x").unwrap();
        let a = AlgebraElement::from_terms(&q, 2, [(Word::identity(), 1), (g, 1)]).unwrap();
        assert_eq!(a.support_size(), 2);
        assert!(multiply_algebra(&q, &a, &a).unwrap().is_zero());
    }

    #[test]
    fn free_product_support() {
        let f = Free2;
        let one = Word::identity();
        let x = Word::parse("x").unwrap();
        let y = Word::parse("y").unwrap();
        let a = AlgebraElement::from_terms(&f, 2, [(one.clone(), 1), (x, 1)]).unwrap();
        let b = AlgebraElement::from_terms(&f, 2, [(one, 1), (y, 1)]).unwrap();
        assert_eq!(multiply_algebra(&f, &a, &b).unwrap().support_size(), 4);
    }

    #[test]
    fn klein_atom_product_is_nonzero() {
        let k = KleinBottle::<i64>::new();
        let a = [(0, 0), (0, -1), (1, -1), (1, 0)];
        let c = [(0, 0), (0, 1), (1, 1)];
        let alpha = AlgebraElement::indicator(&k, 2, &a).unwrap();
        let beta = AlgebraElement::indicator(&k, 2, &c).unwrap();
        let prod = multiply_algebra(&k, &alpha, &beta).unwrap();
        // fibers 3, 2, 2 and five singletons: six odd coefficients
        assert_eq!(prod.support_size(), 6);
    }

    #[test]
    fn cancellation_and_mismatch() {
        let f = Free2;
        let x = Word::parse("x").unwrap();
        let a = AlgebraElement::from_terms(&f, 3, [(x.clone(), 1), (x.clone(), 2)]).unwrap();
        assert!(a.is_zero());
        let b = AlgebraElement::from_terms(&f, 2, [(x, 1)]).unwrap();
        assert!(multiply_algebra(&f, &a, &b).is_err());
        let k = KleinBottle::<i64>::new();
        let c = AlgebraElement::one(&k, 2).unwrap();
        let d = AlgebraElement::one(&f, 2).unwrap();
        assert_eq!(c.model(), "klein");
        assert!(AlgebraElement::<Word>::zero(&f, 4).is_err());
        assert!(d.add(&d).unwrap().is_zero());
    }
}
