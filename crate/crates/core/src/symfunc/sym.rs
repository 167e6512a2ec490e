use std::collections::BTreeMap;
use std::fmt;

use crate::error::Result;
use crate::partitions::Partition;
use crate::scalars::{Rat, Scalar};

use super::tables::{tables, Basis};

/// Symmetric function in one alphabet, stored sparsely in a single basis.
#[derive(Clone, PartialEq, Eq)]
pub struct SymFunc {
    basis: Basis,
    terms: BTreeMap<Partition, Scalar>,
}

impl SymFunc {
    pub fn zero(basis: Basis) -> Self {
        SymFunc {
            basis,
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::from_terms(Basis::M, [(Partition::empty(), c)])
    }

    pub fn single(basis: Basis, lambda: Partition) -> Self {
        Self::from_terms(basis, [(lambda, Scalar::one())])
    }

    pub fn m(parts: &[usize]) -> Self {
        Self::single(Basis::M, Partition::from(parts))
    }

    pub fn h(parts: &[usize]) -> Self {
        Self::single(Basis::H, Partition::from(parts))
    }

    pub fn e(parts: &[usize]) -> Self {
        Self::single(Basis::E, Partition::from(parts))
    }

    pub fn p(parts: &[usize]) -> Self {
        Self::single(Basis::P, Partition::from(parts))
    }

    pub fn s(parts: &[usize]) -> Self {
        Self::single(Basis::S, Partition::from(parts))
    }

    pub fn from_terms<I: IntoIterator<Item = (Partition, Scalar)>>(basis: Basis, it: I) -> Self {
        let mut terms: BTreeMap<Partition, Scalar> = BTreeMap::new();
        for (l, c) in it {
            let e = terms.entry(l).or_insert_with(Scalar::zero);
            *e = &*e + &c;
        }
        terms.retain(|_, c| !c.is_zero());
        SymFunc { basis, terms }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &BTreeMap<Partition, Scalar> {
        &self.terms
    }

    pub fn coeff(&self, lambda: &Partition) -> Scalar {
        self.terms.get(lambda).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(|l| l.size()).max()
    }

    pub fn is_homogeneous(&self, n: usize) -> bool {
        self.terms.keys().all(|l| l.size() == n)
    }

    /// Degree-n component.
    pub fn homogeneous(&self, n: usize) -> SymFunc {
        SymFunc {
            basis: self.basis,
            terms: self
                .terms
                .iter()
                .filter(|(l, _)| l.size() == n)
                .map(|(l, c)| (l.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn convert(&self, target: Basis) -> Result<SymFunc> {
        if target == self.basis {
            return Ok(self.clone());
        }
        let mut acc: BTreeMap<Partition, Scalar> = BTreeMap::new();
        for (l, c) in &self.terms {
            for (mu, r) in to_m_row(self.basis, l)? {
                for (nu, r2) in from_m_row(target, &mu)? {
                    let e = acc.entry(nu).or_insert_with(Scalar::zero);
                    *e = &*e + &c.scale(&(&r * &r2));
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(SymFunc {
            basis: target,
            terms: acc,
        })
    }

    pub fn to_m(&self) -> Result<SymFunc> {
        self.convert(Basis::M)
    }

    pub fn add(&self, o: &SymFunc) -> Result<SymFunc> {
        let o = o.convert(self.basis)?;
        Ok(Self::from_terms(
            self.basis,
            self.terms.clone().into_iter().chain(o.terms),
        ))
    }

    pub fn sub(&self, o: &SymFunc) -> Result<SymFunc> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> SymFunc {
        self.map_coeffs(|c| -c)
    }

    pub fn scale(&self, s: &Scalar) -> SymFunc {
        self.map_coeffs(|c| c * s)
    }

    pub fn map_coeffs<F: FnMut(&Scalar) -> Scalar>(&self, mut f: F) -> SymFunc {
        Self::from_terms(self.basis, self.terms.iter().map(|(l, c)| (l.clone(), f(c))))
    }

    pub fn try_map_coeffs<F: FnMut(&Scalar) -> Result<Scalar>>(&self, mut f: F) -> Result<SymFunc> {
        let mut out = Vec::with_capacity(self.terms.len());
        for (l, c) in &self.terms {
            out.push((l.clone(), f(c)?));
        }
        Ok(Self::from_terms(self.basis, out))
    }

    pub fn substitute(&self, bindings: &[(usize, Scalar)]) -> Result<SymFunc> {
        self.try_map_coeffs(|c| c.substitute(bindings))
    }

    /// Product, computed in the p basis and returned in the basis of `self`.
    pub fn mul(&self, o: &SymFunc) -> Result<SymFunc> {
        let a = self.convert(Basis::P)?;
        let b = o.convert(Basis::P)?;
        let mut out = Vec::new();
        for (la, ca) in &a.terms {
            for (lb, cb) in &b.terms {
                out.push((la.join(lb), ca * cb));
            }
        }
        SymFunc::from_terms(Basis::P, out).convert(self.basis)
    }

    pub fn to_text(&self) -> String {
        format!("{}", self)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(l, c)| serde_json::json!({"basis": self.basis.name(), "partition": l.parts(), "coeff": c.to_json()}))
                .collect(),
        )
    }
}

fn to_m_row(b: Basis, l: &Partition) -> Result<Vec<(Partition, Rat)>> {
    let t = tables(l.size())?;
    Ok(t.to_m(b)[t.idx(l)]
        .iter()
        .map(|(j, r)| (t.parts[*j].clone(), r.clone()))
        .collect())
}

fn from_m_row(b: Basis, l: &Partition) -> Result<Vec<(Partition, Rat)>> {
    let t = tables(l.size())?;
    Ok(t.from_m(b)[t.idx(l)]
        .iter()
        .map(|(j, r)| (t.parts[*j].clone(), r.clone()))
        .collect())
}

/// Change basis of one tensor factor: rows of b_λ in terms of the target basis.
pub(crate) fn basis_row(from: Basis, to: Basis, l: &Partition) -> Result<Vec<(Partition, Rat)>> {
    if from == to {
        return Ok(vec![(l.clone(), Rat::from_integer(1.into()))]);
    }
    let mut acc: BTreeMap<Partition, Rat> = BTreeMap::new();
    for (mu, r) in to_m_row(from, l)? {
        if to == Basis::M {
            *acc.entry(mu).or_default() += r;
            continue;
        }
        for (nu, r2) in from_m_row(to, &mu)? {
            *acc.entry(nu).or_default() += &r * &r2;
        }
    }
    Ok(acc.into_iter().filter(|(_, r)| *r != Rat::default()).collect())
}

/// Hall scalar product, (h_μ, m_λ) = δ.
pub fn hall_pair(f: &SymFunc, g: &SymFunc) -> Result<Scalar> {
    let fh = f.convert(Basis::H)?;
    let gm = g.convert(Basis::M)?;
    let mut acc = Scalar::zero();
    for (l, c) in &fh.terms {
        if let Some(d) = gm.terms.get(l) {
            acc = acc + c * d;
        }
    }
    Ok(acc)
}

/// (F, G)_{q,t} = (F, G[(q−1)(1−t)X]).
pub fn qt_pair(f: &SymFunc, g: &SymFunc) -> Result<Scalar> {
    let g2 = super::alphabet::plethysm1(g, &super::alphabet::AlphabetExpr::qt_twist())?;
    hall_pair(f, &g2)
}

pub(crate) fn term_text(coeff: &Scalar, basis_elt: &str) -> (bool, String) {
    if coeff.is_one() {
        return (false, basis_elt.to_string());
    }
    if (-coeff).is_one() {
        return (true, basis_elt.to_string());
    }
    let c = coeff.to_compact();
    if let Some(rest) = c.strip_prefix('-') {
        if coeff.as_monomial().is_some() {
            return (true, format!("{}*{}", rest, basis_elt));
        }
    }
    (false, format!("{}*{}", c, basis_elt))
}

pub(crate) fn join_terms(terms: Vec<(bool, String)>) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (neg, t)) in terms.into_iter().enumerate() {
        match (i, neg) {
            (0, false) => s.push_str(&t),
            (0, true) => {
                s.push('-');
                s.push_str(&t);
            }
            (_, false) => {
                s.push_str(" + ");
                s.push_str(&t);
            }
            (_, true) => {
                s.push_str(" - ");
                s.push_str(&t);
            }
        }
    }
    s
}

impl fmt::Display for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .terms
            .iter()
            .map(|(l, c)| {
                let elt = if l.is_empty() {
                    "1".to_string()
                } else {
                    format!("{}{}", self.basis.name(), l.bracketed())
                };
                if l.is_empty() {
                    let s = c.to_compact();
                    match s.strip_prefix('-') {
                        Some(r) if c.as_monomial().is_some() => (true, r.to_string()),
                        _ => (false, s),
                    }
                } else {
                    term_text(c, &elt)
                }
            })
            .collect();
        write!(f, "{}", join_terms(terms))
    }
}

impl fmt::Debug for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
