use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::scalars::Scalar;

use super::sym::{basis_row, join_terms, term_text, SymFunc};
use super::tables::Basis;

/// Element of Sym[X1] ⊗ ... ⊗ Sym[Xk], stored on tensor products of a single basis.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiSym {
    k: usize,
    basis: Basis,
    terms: BTreeMap<Vec<Partition>, Scalar>,
}

impl MultiSym {
    pub fn zero(k: usize, basis: Basis) -> Self {
        MultiSym {
            k,
            basis,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(k: usize, c: Scalar) -> Self {
        Self::from_terms(k, Basis::M, [(vec![Partition::empty(); k], c)]).unwrap()
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<Partition>, Scalar)>>(k: usize, basis: Basis, it: I) -> Result<Self> {
        let mut terms: BTreeMap<Vec<Partition>, Scalar> = BTreeMap::new();
        for (tuple, c) in it {
            if tuple.len() != k {
                return Err(Error::SizeMismatch(format!(
                    "tuple of length {} for {} alphabets",
                    tuple.len(),
                    k
                )));
            }
            let e = terms.entry(tuple).or_insert_with(Scalar::zero);
            *e = &*e + &c;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(MultiSym { k, basis, terms })
    }

    /// f1[X1] f2[X2] ... in the m basis.
    pub fn tensor(fs: &[SymFunc]) -> Result<Self> {
        let mut acc = MultiSym::constant(0, Scalar::one());
        for f in fs {
            let f = f.to_m()?;
            let mut out = Vec::new();
            for (t, c) in &acc.terms {
                for (l, d) in f.terms() {
                    let mut t2 = t.clone();
                    t2.push(l.clone());
                    out.push((t2, c * d));
                }
            }
            acc = MultiSym::from_terms(acc.k + 1, Basis::M, out)?;
        }
        Ok(acc)
    }

    pub fn from_symfunc(f: &SymFunc) -> Self {
        MultiSym {
            k: 1,
            basis: f.basis(),
            terms: f.terms().iter().map(|(l, c)| (vec![l.clone()], c.clone())).collect(),
        }
    }

    /// The single-alphabet function, for k = 1 (or a constant for k = 0).
    pub fn to_symfunc(&self) -> Result<SymFunc> {
        match self.k {
            0 => Ok(SymFunc::constant(self.coeff(&[]))),
            1 => Ok(SymFunc::from_terms(
                self.basis,
                self.terms.iter().map(|(t, c)| (t[0].clone(), c.clone())),
            )),
            k => Err(Error::SizeMismatch(format!("{} alphabets, expected 1", k))),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Partition>, Scalar> {
        &self.terms
    }

    pub fn coeff(&self, tuple: &[Partition]) -> Scalar {
        self.terms.get(tuple).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn convert(&self, target: Basis) -> Result<MultiSym> {
        if target == self.basis {
            return Ok(self.clone());
        }
        let mut out = Vec::new();
        for (tuple, c) in &self.terms {
            let mut partial: Vec<(Vec<Partition>, Scalar)> = vec![(Vec::new(), c.clone())];
            for l in tuple {
                let row = basis_row(self.basis, target, l)?;
                let mut next = Vec::with_capacity(partial.len() * row.len());
                for (t, c) in &partial {
                    for (mu, r) in &row {
                        let mut t2 = t.clone();
                        t2.push(mu.clone());
                        next.push((t2, c.scale(r)));
                    }
                }
                partial = next;
            }
            out.extend(partial);
        }
        MultiSym::from_terms(self.k, target, out)
    }

    pub fn to_m(&self) -> Result<MultiSym> {
        self.convert(Basis::M)
    }

    fn check_k(&self, o: &MultiSym) -> Result<()> {
        if self.k != o.k {
            return Err(Error::SizeMismatch(format!("{} vs {} alphabets", self.k, o.k)));
        }
        Ok(())
    }

    pub fn add(&self, o: &MultiSym) -> Result<MultiSym> {
        self.check_k(o)?;
        let o = o.convert(self.basis)?;
        MultiSym::from_terms(self.k, self.basis, self.terms.clone().into_iter().chain(o.terms))
    }

    pub fn sub(&self, o: &MultiSym) -> Result<MultiSym> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> MultiSym {
        self.map_coeffs(|c| -c)
    }

    pub fn scale(&self, s: &Scalar) -> MultiSym {
        self.map_coeffs(|c| c * s)
    }

    pub fn map_coeffs<F: FnMut(&Scalar) -> Scalar>(&self, mut f: F) -> MultiSym {
        let mut terms = BTreeMap::new();
        for (t, c) in &self.terms {
            let d = f(c);
            if !d.is_zero() {
                terms.insert(t.clone(), d);
            }
        }
        MultiSym {
            k: self.k,
            basis: self.basis,
            terms,
        }
    }

    pub fn try_map_coeffs<F: FnMut(&Scalar) -> Result<Scalar>>(&self, mut f: F) -> Result<MultiSym> {
        let mut terms = BTreeMap::new();
        for (t, c) in &self.terms {
            let d = f(c)?;
            if !d.is_zero() {
                terms.insert(t.clone(), d);
            }
        }
        Ok(MultiSym {
            k: self.k,
            basis: self.basis,
            terms,
        })
    }

    pub fn substitute(&self, bindings: &[(usize, Scalar)]) -> Result<MultiSym> {
        self.try_map_coeffs(|c| c.substitute(bindings))
    }

    /// Product in the p basis (both factors are converted first).
    pub(crate) fn mul_p(&self, o: &MultiSym) -> MultiSym {
        debug_assert!(self.basis == Basis::P && o.basis == Basis::P);
        let mut acc: BTreeMap<Vec<Partition>, Scalar> = BTreeMap::new();
        for (ta, ca) in &self.terms {
            for (tb, cb) in &o.terms {
                let t: Vec<Partition> = ta.iter().zip(tb).map(|(a, b)| a.join(b)).collect();
                let e = acc.entry(t).or_insert_with(Scalar::zero);
                *e = &*e + &(ca * cb);
            }
        }
        acc.retain(|_, c| !c.is_zero());
        MultiSym {
            k: self.k,
            basis: Basis::P,
            terms: acc,
        }
    }

    /// Product, returned in the basis of `self`.
    pub fn mul(&self, o: &MultiSym) -> Result<MultiSym> {
        self.check_k(o)?;
        self.convert(Basis::P)?.mul_p(&o.convert(Basis::P)?).convert(self.basis)
    }

    /// p_n applied to a p-basis element: p_λ → p_{nλ}, coefficients via Adams.
    pub(crate) fn adams_p(&self, n: usize) -> MultiSym {
        debug_assert!(self.basis == Basis::P);
        MultiSym {
            k: self.k,
            basis: Basis::P,
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.iter().map(|l| l.scale(n)).collect(), c.adams(n as u32)))
                .collect(),
        }
    }

    /// Pair alphabet i with the i-th function under the Hall product; the result is a scalar.
    pub fn hall_pair_all(&self, fs: &[SymFunc]) -> Result<Scalar> {
        if fs.len() != self.k {
            return Err(Error::SizeMismatch(format!(
                "{} functions for {} alphabets",
                fs.len(),
                self.k
            )));
        }
        let m = self.to_m()?;
        let hs: Vec<SymFunc> = fs.iter().map(|f| f.convert(Basis::H)).collect::<Result<_>>()?;
        let mut acc = Scalar::zero();
        for (t, c) in &m.terms {
            let mut w = c.clone();
            for (l, h) in t.iter().zip(&hs) {
                w = w * h.coeff(l);
                if w.is_zero() {
                    break;
                }
            }
            acc = acc + w;
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(t, c)| {
                    serde_json::json!({
                        "basis": self.basis.name(),
                        "tuple": t.iter().map(|l| l.parts().to_vec()).collect::<Vec<_>>(),
                        "coeff": c.to_json(),
                    })
                })
                .collect(),
        )
    }
}

impl fmt::Display for MultiSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = self.basis.name();
        let terms = self
            .terms
            .iter()
            .map(|(t, c)| {
                let elt: Vec<String> = t
                    .iter()
                    .enumerate()
                    .filter(|(_, l)| !l.is_empty())
                    .map(|(i, l)| format!("{}{}[X{}]", b, l.bracketed(), i + 1))
                    .collect();
                if elt.is_empty() {
                    let s = c.to_compact();
                    match s.strip_prefix('-') {
                        Some(r) if c.as_monomial().is_some() => (true, r.to_string()),
                        _ => (false, s),
                    }
                } else {
                    term_text(c, &elt.join("*"))
                }
            })
            .collect();
        write!(f, "{}", join_terms(terms))
    }
}

impl fmt::Debug for MultiSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
