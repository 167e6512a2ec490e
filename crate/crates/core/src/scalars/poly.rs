use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;

use super::monomial::{Monomial, NVARS};
use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Sparse Laurent polynomial over Q. Terms are kept sorted by descending monomial with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: Vec<(Monomial, Rat)>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            MultiPoly {
                terms: vec![(Monomial::ONE, c)],
            }
        }
    }

    pub fn int(n: i64) -> Self {
        Self::constant(rat(n))
    }

    pub fn var(i: usize) -> Self {
        Self::monomial(Monomial::var(i, 1), Rat::one())
    }

    pub fn monomial(m: Monomial, c: Rat) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            MultiPoly { terms: vec![(m, c)] }
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rat)>>(it: I) -> Self {
        let mut map: FxHashMap<Monomial, Rat> = FxHashMap::default();
        for (m, c) in it {
            *map.entry(m).or_insert_with(Rat::zero) += c;
        }
        Self::from_map(map)
    }

    fn from_map(map: FxHashMap<Monomial, Rat>) -> Self {
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        MultiPoly { terms }
    }

    fn from_sorted(terms: Vec<(Monomial, Rat)>) -> Self {
        MultiPoly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, Rat)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.as_slice() {
            [] => Some(Rat::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn as_monomial(&self) -> Option<(Monomial, &Rat)> {
        match self.terms.as_slice() {
            [(m, c)] => Some((*m, c)),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, Rat)> {
        self.terms.first()
    }

    /// Coefficient of a monomial.
    pub fn coeff(&self, m: &Monomial) -> Rat {
        match self.terms.binary_search_by(|(k, _)| m.cmp(k)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Rat::zero(),
        }
    }

    /// Componentwise minimum of exponents (the largest monomial dividing every term).
    pub fn min_exponents(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::ONE,
            Some((m, _)) => it.fold(*m, |acc, (k, _)| acc.meet(k)),
        }
    }

    pub fn max_exponents(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::ONE,
            Some((m, _)) => it.fold(*m, |acc, (k, _)| acc.join(k)),
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_nonnegative())
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.0[v] != 0)
    }

    pub fn used_vars(&self) -> [bool; NVARS] {
        let mut u = [false; NVARS];
        for (m, _) in &self.terms {
            for (i, &e) in m.0.iter().enumerate() {
                if e != 0 {
                    u[i] = true;
                }
            }
        }
        u
    }

    pub fn neg(&self) -> Self {
        MultiPoly::from_sorted(self.terms.iter().map(|(m, c)| (*m, -c)).collect())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly::from_sorted(self.terms.iter().map(|(m, k)| (*m, k * c)).collect())
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        MultiPoly::from_sorted(self.terms.iter().map(|(k, c)| (*k + *m, c.clone())).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        self.merge(o, false)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.merge(o, true)
    }

    fn merge(&self, o: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &o.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate { -&t.1 } else { t.1.clone() };
            out.push((t.0, c));
        }
        MultiPoly::from_sorted(out)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return o.mul_monomial(m).scale(c);
        }
        if o.terms.len() == 1 {
            let (m, c) = &o.terms[0];
            return self.mul_monomial(m).scale(c);
        }
        let mut map: FxHashMap<Monomial, Rat> =
            FxHashMap::with_capacity_and_hasher(self.terms.len() * o.terms.len(), Default::default());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                *map.entry(*ma + *mb).or_insert_with(Rat::zero) += ca * cb;
            }
        }
        Self::from_map(map)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Replace every variable v by v^n.
    pub fn adams(&self, n: i32) -> Self {
        if n > 0 {
            MultiPoly::from_sorted(self.terms.iter().map(|(m, c)| (m.scale(n), c.clone())).collect())
        } else {
            MultiPoly::from_terms(self.terms.iter().map(|(m, c)| (m.scale(n), c.clone())))
        }
    }

    /// Rational content c > 0 such that self / c has coprime integer coefficients.
    pub fn rational_content(&self) -> Rat {
        let mut g = BigInt::zero();
        let mut l = BigInt::one();
        for (_, c) in &self.terms {
            g = g.gcd(c.numer());
            l = l.lcm(c.denom());
        }
        if g.is_zero() {
            return Rat::one();
        }
        Rat::new(g, l)
    }

    /// Scale so that the leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Divide out the monomial content; returns (content, quotient).
    pub fn split_monomial_content(&self) -> (Monomial, Self) {
        let m = self.min_exponents();
        if m.is_one() {
            (m, self.clone())
        } else {
            (m, self.mul_monomial(&(-m)))
        }
    }

    /// Exact division in the Laurent polynomial ring.
    pub fn exact_divide(&self, b: &Self) -> Result<Self> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if let Some((m, c)) = b.as_monomial() {
            return Ok(self.mul_monomial(&(-m)).scale(&c.recip()));
        }
        let (ma, a0) = self.split_monomial_content();
        let (mb, b0) = b.split_monomial_content();
        let q = div_exact_poly(&a0, &b0).ok_or(Error::NotDivisible)?;
        Ok(q.mul_monomial(&(ma - mb)))
    }

    pub fn divides(&self, a: &Self) -> bool {
        a.exact_divide(self).is_ok()
    }

    /// Evaluate every variable through `f`; used for monomial substitutions.
    pub fn map_monomials<F: FnMut(&Monomial) -> (Monomial, Rat)>(&self, mut f: F) -> Self {
        MultiPoly::from_terms(self.terms.iter().map(|(m, c)| {
            let (m2, k) = f(m);
            (m2, c * k)
        }))
    }

    /// Degree range of variable v.
    pub fn degree_range(&self, v: usize) -> Option<(i32, i32)> {
        let mut it = self.terms.iter().map(|(m, _)| m.0[v]);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))))
    }

    /// Split into coefficients of powers of v (exponent of v zeroed). Requires nonnegative exponents in v.
    pub fn coefficients_in(&self, v: usize) -> Vec<MultiPoly> {
        let hi = self.degree_range(v).map(|r| r.1).unwrap_or(0).max(0) as usize;
        let mut buckets: Vec<Vec<(Monomial, Rat)>> = vec![Vec::new(); hi + 1];
        for (m, c) in &self.terms {
            let e = m.0[v];
            debug_assert!(e >= 0);
            let mut k = *m;
            k.0[v] = 0;
            buckets[e as usize].push((k, c.clone()));
        }
        buckets.into_iter().map(MultiPoly::from_sorted_unchecked).collect()
    }

    fn from_sorted_unchecked(mut terms: Vec<(Monomial, Rat)>) -> Self {
        // removing one variable keeps lex order among terms with equal exponent in it
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        MultiPoly { terms }
    }

    /// Rebuild from coefficients of powers of v.
    pub fn from_coefficients_in(v: usize, coeffs: &[MultiPoly]) -> Self {
        let mut out = Vec::new();
        for (e, c) in coeffs.iter().enumerate() {
            let shift = Monomial::var(v, e as i32);
            out.extend(c.terms.iter().map(|(m, k)| (*m + shift, k.clone())));
        }
        Self::from_terms(out)
    }

    pub fn to_text(&self) -> String {
        format!("{}", self)
    }

    /// Compact form without spaces, as used inside symmetric function coefficients.
    pub fn to_compact(&self) -> String {
        self.to_text().replace(' ', "")
    }
}

/// Exact division of polynomials with nonnegative exponents; None when b does not divide a.
fn div_exact_poly(a: &MultiPoly, b: &MultiPoly) -> Option<MultiPoly> {
    let (lb, lc) = b.leading()?.clone();
    // necessary degree condition
    let amax = a.max_exponents();
    let bmax = b.max_exponents();
    if !amax.dominates(&bmax) {
        return None;
    }
    let mut rem: BTreeMap<Monomial, Rat> = a.terms.iter().cloned().collect();
    let mut quot = Vec::new();
    let inv = lc.recip();
    while let Some((m, c)) = rem.pop_last() {
        if !m.dominates(&lb) {
            return None;
        }
        let qm = m - lb;
        let qc = &c * &inv;
        for (bm, bc) in b.terms.iter().skip(1) {
            let key = *bm + qm;
            let delta = &qc * bc;
            match rem.entry(key) {
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() -= delta;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(-delta);
                }
            }
        }
        quot.push((qm, qc));
    }
    Some(MultiPoly::from_sorted(quot))
}

pub(crate) fn fmt_rat(c: &Rat) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{}", fmt_rat(&a))?;
            } else if a.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", fmt_rat(&a), m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Greatest common divisor of two polynomials (nonnegative exponents), monic in the term order.
/// Monomial content is handled separately; the result has leading coefficient 1.
pub fn poly_gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let (ma, a0) = a.split_monomial_content();
    let (mb, b0) = b.split_monomial_content();
    let g = gcd_nomono(&a0, &b0);
    g.mul_monomial(&ma.meet(&mb)).monic()
}

fn gcd_nomono(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.as_constant().is_some() || b.as_constant().is_some() {
        return MultiPoly::one();
    }
    if a == b {
        return a.monic();
    }
    let ua = a.used_vars();
    let ub = b.used_vars();
    // a variable used by only one side: the gcd divides every coefficient in it
    for v in 0..NVARS {
        if ua[v] != ub[v] {
            let (p, other) = if ua[v] { (a, b) } else { (b, a) };
            let mut g = other.clone();
            for c in p.coefficients_in(v) {
                if c.is_zero() {
                    continue;
                }
                g = poly_gcd(&g, &c);
                if g.as_constant().is_some() {
                    return MultiPoly::one();
                }
            }
            return g.monic();
        }
    }
    // every variable is shared; choose the one of least degree
    let v = (0..NVARS)
        .filter(|&v| ua[v])
        .min_by_key(|&v| a.degree_range(v).unwrap().1.max(b.degree_range(v).unwrap().1))
        .expect("nonconstant");
    let ca = a.coefficients_in(v);
    let cb = b.coefficients_in(v);
    let conta = content(&ca);
    let contb = content(&cb);
    let c = poly_gcd(&conta, &contb);
    let mut pa = prim(&ca, &conta);
    let mut pb = prim(&cb, &contb);
    if pa.len() < pb.len() {
        std::mem::swap(&mut pa, &mut pb);
    }
    loop {
        let r = prem(&pa, &pb);
        if r.iter().all(|x| x.is_zero()) {
            break;
        }
        let r = trim(r);
        if r.len() == 1 {
            return c.monic();
        }
        let cr = content(&r);
        pa = pb;
        pb = prim(&r, &cr);
    }
    MultiPoly::from_coefficients_in(v, &pb).mul(&c).monic()
}

fn trim(mut v: Vec<MultiPoly>) -> Vec<MultiPoly> {
    while v.len() > 1 && v.last().map(|x| x.is_zero()).unwrap_or(false) {
        v.pop();
    }
    v
}

fn content(cs: &[MultiPoly]) -> MultiPoly {
    let mut g = MultiPoly::zero();
    for c in cs {
        if c.is_zero() {
            continue;
        }
        g = if g.is_zero() { c.monic() } else { poly_gcd(&g, c) };
        if g.as_constant().is_some() {
            return MultiPoly::one();
        }
    }
    g
}

/// Primitive part, scaled to coprime integer coefficients so remainder sequences stay small.
fn prim(cs: &[MultiPoly], c: &MultiPoly) -> Vec<MultiPoly> {
    let v: Vec<MultiPoly> = cs.iter().map(|x| x.exact_divide(c).expect("content divides")).collect();
    let mut g = BigInt::zero();
    let mut l = BigInt::one();
    for x in &v {
        for (_, k) in x.terms() {
            g = g.gcd(k.numer());
            l = l.lcm(k.denom());
        }
    }
    if g.is_zero() {
        return v;
    }
    let s = Rat::new(l, g);
    v.iter().map(|x| x.scale(&s)).collect()
}

/// Pseudo-remainder of univariate polynomials with polynomial coefficients.
fn prem(a: &[MultiPoly], b: &[MultiPoly]) -> Vec<MultiPoly> {
    let mut r: Vec<MultiPoly> = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        if lr.is_zero() {
            r.pop();
            continue;
        }
        for x in r.iter_mut() {
            *x = x.mul(lb);
        }
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] = r[i + shift].sub(&bc.mul(&lr));
        }
        r.pop();
    }
    if r.is_empty() {
        r.push(MultiPoly::zero());
    }
    r
}
