//! Zero-divisor and unit certificates over `F_2`, built from atoms whose
//! fibers are (almost) all of size 2.

use std::collections::HashMap;
use std::fmt;

use serde_json::{json, Map, Value};

use super::AlgebraElement;
use crate::error::{PslError, Result};
use crate::group::{Element, Group, Model};
use crate::productset::{FiberHistogram, ProductStats};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateKind {
    ZeroDivisor,
    Unit,
}

impl fmt::Display for CertificateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CertificateKind::ZeroDivisor => "ZeroDivisor",
            CertificateKind::Unit => "Unit",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductClaim {
    Zero,
    Identity,
}

impl fmt::Display for ProductClaim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProductClaim::Zero => "zero",
            ProductClaim::Identity => "identity",
        })
    }
}

/// The pair `(A, C)` a certificate was built from. For units, `shift` is the
/// factorization `(a0, c0)` of the size-3 fiber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance<E> {
    pub atom: Vec<E>,
    pub c: Vec<E>,
    pub histogram: FiberHistogram,
    pub product_size: usize,
    pub shift: Option<(E, E)>,
}

/// `alpha * beta` equals the claimed product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate<E: Ord> {
    pub kind: CertificateKind,
    pub alpha: AlgebraElement<E>,
    pub beta: AlgebraElement<E>,
    pub claim: ProductClaim,
    pub provenance: Provenance<E>,
}

/// Builds a certificate when the fibers of `A C` are all of size 2 (zero
/// divisor), or all of size 2 but one of size 3 (unit). The result has
/// already passed [`verify_certificate`].
pub fn certificate_from_atom<G: Group>(
    g: &G,
    a: &[G::Elem],
    c: &[G::Elem],
    stats: &ProductStats<G::Elem>,
) -> Result<Option<Certificate<G::Elem>>> {
    if !c.contains(&g.identity()) || stats.b_len != a.len() || stats.c_len != c.len() {
        return Ok(None);
    }
    let sizes: Vec<usize> = stats.fibers.values().map(Vec::len).collect();
    let threes = sizes.iter().filter(|&&r| r == 3).count();
    let twos = sizes.iter().filter(|&&r| r == 2).count();
    let n = a.len() * c.len();
    let provenance = |shift| Provenance {
        atom: a.to_vec(),
        c: c.to_vec(),
        histogram: stats.histogram(),
        product_size: stats.product_size(),
        shift,
    };
    let cert = if twos == sizes.len() && 2 * sizes.len() == n {
        Certificate {
            kind: CertificateKind::ZeroDivisor,
            alpha: AlgebraElement::indicator(g, 2, a)?,
            beta: AlgebraElement::indicator(g, 2, c)?,
            claim: ProductClaim::Zero,
            provenance: provenance(None),
        }
    } else if threes == 1 && twos + 1 == sizes.len() && 2 * sizes.len() + 1 == n {
        let (_, fiber) = stats.fibers.iter().find(|(_, f)| f.len() == 3).expect("one fiber of size 3");
        let (a0, c0) = (a[fiber[0].0].clone(), c[fiber[0].1].clone());
        let alpha = AlgebraElement::indicator(g, 2, a)?.left_shift(g, &g.inverse(&a0));
        let beta = AlgebraElement::indicator(g, 2, c)?.right_shift(g, &g.inverse(&c0));
        Certificate {
            kind: CertificateKind::Unit,
            alpha,
            beta,
            claim: ProductClaim::Identity,
            provenance: provenance(Some((a0, c0))),
        }
    } else {
        return Ok(None);
    };
    verify_certificate(g, &cert)?;
    Ok(Some(cert))
}

fn reject(msg: impl Into<String>) -> PslError {
    PslError::CertificateRejected(msg.into())
}

/// Recomputes `alpha * beta` term by term (without [`multiply_algebra`]) and
/// checks the claim, the field, the kind and the provenance counts.
pub fn verify_certificate<G: Group>(g: &G, cert: &Certificate<G::Elem>) -> Result<()> {
    let name = g.name();
    for (label, x) in [("alpha", &cert.alpha), ("beta", &cert.beta)] {
        if x.model() != name {
            return Err(reject(format!("{label} lives in {}, not {name}", x.model())));
        }
        if x.characteristic() != 2 {
            return Err(reject(format!("{label} is over F_{}, certificates use F_2", x.characteristic())));
        }
        if x.is_zero() {
            return Err(reject(format!("{label} is zero")));
        }
        for (e, coeff) in x.terms() {
            g.validate(e)?;
            if *coeff % 2 == 0 {
                return Err(reject(format!("{label} stores a zero coefficient")));
            }
        }
    }
    let mut prod: HashMap<G::Elem, u64> = HashMap::new();
    for (x, cx) in cert.alpha.terms() {
        for (y, cy) in cert.beta.terms() {
            *prod.entry(g.multiply(x, y)).or_insert(0) += cx * cy;
        }
    }
    prod.retain(|_, v| *v % 2 != 0);
    match (cert.kind, cert.claim) {
        (CertificateKind::ZeroDivisor, ProductClaim::Zero) => {
            if !prod.is_empty() {
                return Err(reject(format!("product has {} nonzero terms", prod.len())));
            }
        }
        (CertificateKind::Unit, ProductClaim::Identity) => {
            let e = g.identity();
            if prod.len() != 1 || !prod.contains_key(&e) {
                return Err(reject(format!("product has support of size {} and is not 1", prod.len())));
            }
            if cert.alpha.support_size() < 2 || cert.beta.support_size() < 2 {
                return Err(reject("unit is trivial"));
            }
        }
        (k, c) => return Err(reject(format!("kind {k} does not match claim {c}"))),
    }
    verify_provenance(g, &cert.provenance)
}

fn verify_provenance<G: Group>(g: &G, p: &Provenance<G::Elem>) -> Result<()> {
    let mut counts: HashMap<G::Elem, usize> = HashMap::new();
    for a in &p.atom {
        for c in &p.c {
            *counts.entry(g.multiply(a, c)).or_insert(0) += 1;
        }
    }
    let mut hist: Vec<(usize, usize)> = Vec::new();
    let mut sizes: Vec<usize> = counts.values().copied().collect();
    sizes.sort_unstable();
    for r in sizes {
        match hist.last_mut() {
            Some((s, n)) if *s == r => *n += 1,
            _ => hist.push((r, 1)),
        }
    }
    if counts.len() != p.product_size || hist != p.histogram.counts {
        return Err(reject("provenance statistics do not match A C"));
    }
    if let Some((a0, c0)) = &p.shift {
        if counts.get(&g.multiply(a0, c0)) != Some(&3) || !p.atom.contains(a0) || !p.c.contains(c0) {
            return Err(reject("unit shift is not a factorization of the size-3 fiber"));
        }
    }
    Ok(())
}

fn terms_json<G: Group>(g: &G, x: &AlgebraElement<G::Elem>) -> Value {
    let terms: Map<String, Value> = x.terms().iter().map(|(e, c)| (g.format(e), json!(c))).collect();
    json!({ "p": x.characteristic(), "terms": terms })
}

impl<E: Ord + Clone> Certificate<E> {
    pub fn to_json<G: Group<Elem = E>>(&self, g: &G) -> Value {
        let fmt_set = |s: &[E]| s.iter().map(|e| g.format(e)).collect::<Vec<_>>();
        json!({
            "kind": self.kind.to_string(),
            "model": g.name(),
            "alpha": terms_json(g, &self.alpha),
            "beta": terms_json(g, &self.beta),
            "product_claim": self.claim.to_string(),
            "provenance": {
                "A": fmt_set(&self.provenance.atom),
                "C": fmt_set(&self.provenance.c),
                "fiber_histogram": self.provenance.histogram.counts,
                "product_size": self.provenance.product_size,
                "shift": self.provenance.shift.as_ref().map(|(a, c)| [g.format(a), g.format(c)]),
            },
        })
    }
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| PslError::Parse(format!("certificate is missing {key:?}")))
}

fn str_field<'a>(v: &'a Value, key: &str) -> Result<&'a str> {
    field(v, key)?.as_str().ok_or_else(|| PslError::Parse(format!("{key:?} must be a string")))
}

fn element_json(model: &Model, v: &Value) -> Result<AlgebraElement<Element>> {
    let p = field(v, "p")?.as_u64().ok_or_else(|| PslError::Parse("\"p\" must be an integer".into()))?;
    let terms = field(v, "terms")?.as_object().ok_or_else(|| PslError::Parse("\"terms\" must be an object".into()))?;
    let mut out = Vec::new();
    for (k, c) in terms {
        let c = c.as_i64().ok_or_else(|| PslError::Parse(format!("coefficient of {k:?} must be an integer")))?;
        if c.rem_euclid(p.max(1) as i64) == 0 {
            return Err(reject(format!("zero coefficient stored for {k:?}")));
        }
        out.push((model.parse_element(k)?, c));
    }
    let x = AlgebraElement::from_terms(model, p, out)?;
    if x.support_size() != terms.len() {
        return Err(reject("terms name the same element twice"));
    }
    Ok(x)
}

fn set_json(model: &Model, v: &Value) -> Result<Vec<Element>> {
    v.as_array()
        .ok_or_else(|| PslError::Parse("expected an array of elements".into()))?
        .iter()
        .map(|e| model.parse_element(e.as_str().ok_or_else(|| PslError::Parse("element must be a string".into()))?))
        .collect()
}

/// Parses a certificate in the JSON layout of [`Certificate::to_json`] and
/// verifies it.
pub fn load_certificate(text: &str) -> Result<(Model, Certificate<Element>)> {
    let v: Value = serde_json::from_str(text)?;
    let model = Model::by_name(str_field(&v, "model")?)?;
    let kind = match str_field(&v, "kind")? {
        "ZeroDivisor" => CertificateKind::ZeroDivisor,
        "Unit" => CertificateKind::Unit,
        k => return Err(PslError::Parse(format!("unknown certificate kind {k:?}"))),
    };
    let claim = match str_field(&v, "product_claim")? {
        "zero" => ProductClaim::Zero,
        "identity" => ProductClaim::Identity,
        c => return Err(PslError::Parse(format!("unknown product claim {c:?}"))),
    };
    let prov = field(&v, "provenance")?;
    let histogram: Vec<(usize, usize)> = serde_json::from_value(field(prov, "fiber_histogram")?.clone())?;
    let shift = match prov.get("shift") {
        None | Some(Value::Null) => None,
        Some(s) => {
            let pair = set_json(&model, s)?;
            match pair.as_slice() {
                [a, c] => Some((a.clone(), c.clone())),
                _ => return Err(PslError::Parse("\"shift\" must hold two elements".into())),
            }
        }
    };
    let cert = Certificate {
        kind,
        alpha: element_json(&model, field(&v, "alpha")?)?,
        beta: element_json(&model, field(&v, "beta")?)?,
        claim,
        provenance: Provenance {
            atom: set_json(&model, field(prov, "A")?)?,
            c: set_json(&model, field(prov, "C")?)?,
            histogram: FiberHistogram { counts: histogram },
            product_size: serde_json::from_value(field(prov, "product_size")?.clone())?,
            shift,
        },
    };
    verify_certificate(&model, &cert)?;
    Ok((model, cert))
}

/// `<x, y | x^n, y>`, the cyclic group of order `n`. Used only as a positive
/// control for the verifier; it is not torsion-free.
pub fn finite_control_model(n: u32) -> Result<Model> {
    Model::by_name(&format!("quotient<x, y | x^{n}, y>"))
}

/// The certificate `(1 + x)(1 + x) = 0` in `F_2[Z/2]` (`n = 2`), or the unit
/// `(1 + x + x^2)` shifted to `1` in `F_2[Z/4]` (`n = 4`).
pub fn positive_control(n: u32) -> Result<(Model, Certificate<Element>)> {
    let model = finite_control_model(n)?;
    let set: Vec<Element> = match n {
        2 => ["e", "x"].iter().map(|s| model.parse_element(s)).collect::<Result<_>>()?,
        4 => ["e", "x", "x^2"].iter().map(|s| model.parse_element(s)).collect::<Result<_>>()?,
        _ => return Err(PslError::InvalidInput(format!("no positive control for order {n}"))),
    };
    let stats = crate::productset::product_stats(&model, &crate::productset::SubsetPair::new(set.clone(), set.clone())?)?;
    let cert = certificate_from_atom(&model, &set, &set, &stats)?
        .ok_or_else(|| PslError::InvalidInput("control pair does not give a certificate".into()))?;
    Ok((model, cert))
}
