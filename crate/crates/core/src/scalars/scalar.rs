use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::cyclo::{factor_binomial, CycloFactor};
use super::monomial::{Monomial, VarSet, NVARS};
use super::poly::{poly_gcd, rat, MultiPoly, Rat};
use crate::error::{Error, Result};

/// Factored denominator: irreducible cyclotomic binomials plus a leftover monic polynomial.
#[derive(Clone, Default, PartialEq, Eq)]
struct Den {
    cyc: Vec<(CycloFactor, u32)>,
    gen: Option<MultiPoly>,
}

impl Den {
    fn is_one(&self) -> bool {
        self.cyc.is_empty() && self.gen.is_none()
    }

    fn expand(&self) -> MultiPoly {
        let mut p = self.gen.clone().unwrap_or_else(MultiPoly::one);
        for (f, e) in &self.cyc {
            p = p.mul(&f.poly().pow(*e));
        }
        p
    }

    fn push(&mut self, f: CycloFactor, e: u32) {
        match self.cyc.binary_search_by(|(g, _)| g.cmp(&f)) {
            Ok(i) => self.cyc[i].1 += e,
            Err(i) => self.cyc.insert(i, (f, e)),
        }
    }

    fn mul(&self, o: &Den) -> Den {
        let mut d = self.clone();
        for (f, e) in &o.cyc {
            d.push(f.clone(), *e);
        }
        d.gen = match (&self.gen, &o.gen) {
            (None, None) => None,
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (Some(a), Some(b)) => Some(a.mul(b)),
        };
        d
    }

    /// lcm together with the cofactors lcm/self and lcm/o.
    fn lcm(&self, o: &Den) -> (Den, MultiPoly, MultiPoly) {
        let mut l = Den::default();
        let mut ca = MultiPoly::one();
        let mut cb = MultiPoly::one();
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.cyc, &o.cyc);
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                std::cmp::Ordering::Greater
            } else if j == b.len() {
                std::cmp::Ordering::Less
            } else {
                a[i].0.cmp(&b[j].0)
            };
            match ord {
                std::cmp::Ordering::Less => {
                    cb = cb.mul(&a[i].0.poly().pow(a[i].1));
                    l.cyc.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    ca = ca.mul(&b[j].0.poly().pow(b[j].1));
                    l.cyc.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let (ea, eb) = (a[i].1, b[j].1);
                    if ea < eb {
                        ca = ca.mul(&a[i].0.poly().pow(eb - ea));
                    } else if eb < ea {
                        cb = cb.mul(&a[i].0.poly().pow(ea - eb));
                    }
                    l.cyc.push((a[i].0.clone(), ea.max(eb)));
                    i += 1;
                    j += 1;
                }
            }
        }
        l.gen = match (&self.gen, &o.gen) {
            (None, None) => None,
            (Some(g), None) => {
                cb = cb.mul(g);
                Some(g.clone())
            }
            (None, Some(g)) => {
                ca = ca.mul(g);
                Some(g.clone())
            }
            (Some(ga), Some(gb)) if ga == gb => Some(ga.clone()),
            (Some(ga), Some(gb)) => {
                let g = poly_gcd(ga, gb);
                let fa = ga.exact_divide(&g).expect("gcd divides");
                let fb = gb.exact_divide(&g).expect("gcd divides");
                ca = ca.mul(&fb);
                cb = cb.mul(&fa);
                Some(ga.mul(&fb))
            }
        };
        (l, ca, cb)
    }
}

/// Exact element of Q(q, t, s, u, σ1, ..). Kept in lowest terms: the numerator is a Laurent
/// polynomial, the denominator has no monomial content and leading coefficient 1.
#[derive(Clone, Default)]
pub struct Scalar {
    num: MultiPoly,
    den: Den,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Self::from_poly(MultiPoly::one())
    }

    pub fn int(n: i64) -> Self {
        Self::from_poly(MultiPoly::int(n))
    }

    pub fn from_rat(c: Rat) -> Self {
        Self::from_poly(MultiPoly::constant(c))
    }

    pub fn frac(a: i64, b: i64) -> Self {
        Self::from_rat(Rat::new(BigInt::from(a), BigInt::from(b)))
    }

    pub fn var(i: usize) -> Self {
        Self::from_poly(MultiPoly::var(i))
    }

    pub fn monomial(m: Monomial, c: Rat) -> Self {
        Self::from_poly(MultiPoly::monomial(m, c))
    }

    /// v^e for a single variable.
    pub fn var_pow(i: usize, e: i32) -> Self {
        Self::monomial(Monomial::var(i, e), Rat::one())
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        Scalar {
            num: p,
            den: Den::default(),
        }
    }

    /// num / den, reduced.
    pub fn new(num: MultiPoly, den: &MultiPoly) -> Result<Self> {
        Ok(Self::from_poly(num).mul_ref(&inv_poly(den)?))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denominator(&self) -> MultiPoly {
        self.den.expand()
    }

    /// True when the value is a Laurent polynomial.
    pub fn is_laurent_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&MultiPoly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn as_rat(&self) -> Option<Rat> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn as_monomial(&self) -> Option<(Monomial, Rat)> {
        if !self.den.is_one() {
            return None;
        }
        self.num.as_monomial().map(|(m, c)| (m, c.clone()))
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.num.uses_var(v) || self.den.expand().uses_var(v)
    }

    pub fn used_vars(&self) -> [bool; NVARS] {
        let a = self.num.used_vars();
        let b = self.den.expand().used_vars();
        let mut u = [false; NVARS];
        for i in 0..NVARS {
            u[i] = a[i] || b[i];
        }
        u
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Scalar {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn neg_ref(&self) -> Self {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return reduce(self.num.add(&o.num), self.den.clone());
        }
        let (l, ca, cb) = self.den.lcm(&o.den);
        let num = self.num.mul(&ca).add(&o.num.mul(&cb));
        reduce(num, l)
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        self.add_ref(&o.neg_ref())
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if o.den.is_one() && o.num.len() == 1 {
            let (m, c) = &o.num.terms()[0];
            return Scalar {
                num: self.num.mul_monomial(m).scale(c),
                den: self.den.clone(),
            };
        }
        if self.den.is_one() && self.num.len() == 1 {
            return o.mul_ref(self);
        }
        let num = self.num.mul(&o.num);
        if self.den.is_one() && o.den.is_one() {
            return Scalar::from_poly(num);
        }
        reduce(num, self.den.mul(&o.den))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let r = inv_poly(&self.num)?;
        Ok(Scalar {
            num: r.num.mul(&self.den.expand()),
            den: r.den,
        })
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul_ref(&o.inv()?))
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut acc = Scalar::one();
        let mut base = self.clone();
        let mut e = e as u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        Ok(acc)
    }

    /// The ring endomorphism v ↦ v^n on every variable (the action of p_n).
    pub fn adams(&self, n: u32) -> Self {
        assert!(n >= 1);
        if n == 1 || self.is_zero() {
            return self.clone();
        }
        let mut den = Den::default();
        for (f, e) in &self.den.cyc {
            for g in f.adams(n) {
                den.push(g, *e);
            }
        }
        den.gen = self.den.gen.as_ref().map(|g| g.adams(n as i32));
        Scalar {
            num: self.num.adams(n as i32),
            den,
        }
    }

    /// Substitute variables by scalars; unbound variables pass through.
    pub fn substitute(&self, bindings: &[(usize, Scalar)]) -> Result<Self> {
        let num = subst_poly(&self.num, bindings)?;
        let mut den = Scalar::one();
        if let Some(g) = &self.den.gen {
            den = den.mul_ref(&subst_poly(g, bindings)?);
        }
        for (f, e) in &self.den.cyc {
            den = den.mul_ref(&subst_poly(f.poly(), bindings)?.pow(*e as i32)?);
        }
        if den.is_zero() {
            return Err(Error::PoleAtSpecialization);
        }
        num.checked_div(&den)
    }

    /// Substitute every variable by a rational number.
    pub fn eval_rat(&self, values: &[(usize, Rat)]) -> Result<Rat> {
        let b: Vec<(usize, Scalar)> = values.iter().map(|(v, c)| (*v, Scalar::from_rat(c.clone()))).collect();
        let r = self.substitute(&b)?;
        r.as_rat()
            .ok_or_else(|| Error::Invalid(format!("unbound variables remain in {}", r)))
    }

    /// Coefficients of powers of `v` in a Laurent polynomial, as (exponent, coefficient) pairs.
    pub fn laurent_coefficients(&self, v: usize) -> Option<Vec<(i32, MultiPoly)>> {
        let p = self.as_poly()?;
        let mut out: std::collections::BTreeMap<i32, Vec<(Monomial, Rat)>> = Default::default();
        for (m, c) in p.terms() {
            let mut k = *m;
            let e = k.0[v];
            k.0[v] = 0;
            out.entry(e).or_default().push((k, c.clone()));
        }
        Some(out.into_iter().map(|(e, t)| (e, MultiPoly::from_terms(t))).collect())
    }

    /// Power series expansion in `v` through v^dmax; coefficients may involve the other variables.
    pub fn series_in(&self, v: usize, dmax: usize) -> Result<Vec<Scalar>> {
        let mut out = vec![Scalar::zero(); dmax + 1];
        if self.is_zero() {
            return Ok(out);
        }
        let num = &self.num;
        let den = self.denominator();
        let a = num.degree_range(v).map_or(0, |r| r.0);
        let b = den.degree_range(v).map_or(0, |r| r.0);
        let shift = a - b;
        if shift < 0 {
            return Err(Error::PoleAtSpecialization);
        }
        let nc = num.mul_monomial(&Monomial::var(v, -a)).coefficients_in(v);
        let dc = den.mul_monomial(&Monomial::var(v, -b)).coefficients_in(v);
        let d0 = Scalar::from_poly(dc[0].clone()).inv()?;
        let len = (dmax as i32 - shift + 1).max(0) as usize;
        let mut c: Vec<Scalar> = Vec::with_capacity(len);
        for n in 0..len {
            let mut acc = nc.get(n).map_or_else(Scalar::zero, |p| Scalar::from_poly(p.clone()));
            for (k, dk) in dc.iter().enumerate().skip(1).take_while(|(k, _)| *k <= n) {
                acc = acc.sub_ref(&Scalar::from_poly(dk.clone()).mul_ref(&c[n - k]));
            }
            c.push(acc.mul_ref(&d0));
        }
        for (i, ci) in c.into_iter().enumerate() {
            out[i + shift as usize] = ci;
        }
        Ok(out)
    }

    pub fn to_text(&self) -> String {
        format!("{}", self)
    }

    /// Form without spaces, parenthesized when it has more than one term.
    pub fn to_compact(&self) -> String {
        let s = self.to_text().replace(' ', "");
        if self.den.is_one() && self.num.len() <= 1 {
            s
        } else if self.den.is_one() {
            format!("({})", s)
        } else {
            s
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let den = self.denominator();
        let mut used = self.num.used_vars();
        for (i, u) in den.used_vars().iter().enumerate() {
            used[i] |= *u;
        }
        let idx: Vec<usize> = (0..NVARS).filter(|&i| used[i]).collect();
        let terms = |p: &MultiPoly| -> serde_json::Value {
            p.terms()
                .iter()
                .map(|(m, c)| {
                    serde_json::json!({
                        "c": super::poly::fmt_rat(c),
                        "e": idx.iter().map(|&i| m.0[i]).collect::<Vec<_>>(),
                    })
                })
                .collect::<Vec<_>>()
                .into()
        };
        serde_json::json!({
            "vars": idx.iter().map(|&i| VarSet::name(i)).collect::<Vec<_>>(),
            "num": terms(&self.num),
            "den": terms(&den),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = |s: &str| Error::Parse(format!("scalar json: {}", s));
        let vars: Vec<usize> = v["vars"]
            .as_array()
            .ok_or_else(|| bad("vars"))?
            .iter()
            .map(|n| {
                n.as_str()
                    .and_then(VarSet::index_of)
                    .ok_or_else(|| bad("unknown variable"))
            })
            .collect::<Result<_>>()?;
        let poly = |key: &str| -> Result<MultiPoly> {
            let arr = v[key].as_array().ok_or_else(|| bad(key))?;
            let mut terms = Vec::new();
            for t in arr {
                let c: Rat = t["c"]
                    .as_str()
                    .ok_or_else(|| bad("c"))?
                    .parse()
                    .map_err(|_| bad("coefficient"))?;
                let e = t["e"].as_array().ok_or_else(|| bad("e"))?;
                if e.len() != vars.len() {
                    return Err(bad("exponent length"));
                }
                let mut m = Monomial::ONE;
                for (k, x) in e.iter().enumerate() {
                    m.0[vars[k]] = x.as_i64().ok_or_else(|| bad("exponent"))? as i32;
                }
                terms.push((m, c));
            }
            Ok(MultiPoly::from_terms(terms))
        };
        let num = poly("num")?;
        let den = poly("den")?;
        Scalar::new(num, &den)
    }

    /// Parse expressions such as `(q^2-1)/(q-1)`, `-3/2*q*t^-1 + 1`.
    pub fn parse(s: &str) -> Result<Self> {
        super::parse::parse_scalar(s)
    }
}

/// Remove every common factor of num and den.
fn reduce(mut num: MultiPoly, mut den: Den) -> Scalar {
    if num.is_zero() {
        return Scalar::zero();
    }
    for (f, e) in den.cyc.iter_mut() {
        while *e > 0 {
            match num.exact_divide(f.poly()) {
                Ok(q) => {
                    num = q;
                    *e -= 1;
                }
                Err(_) => break,
            }
        }
    }
    den.cyc.retain(|(_, e)| *e > 0);
    if let Some(g) = den.gen.take() {
        let (_, n0) = num.split_monomial_content();
        let c = poly_gcd(&n0, &g);
        if c.as_constant().is_some() {
            den.gen = Some(g);
        } else {
            num = num.exact_divide(&c).expect("gcd divides");
            let g2 = g.exact_divide(&c).expect("gcd divides");
            if g2.as_constant().is_none() {
                den.gen = Some(g2.monic());
            } else {
                num = num.scale(&g2.as_constant().unwrap().recip());
            }
        }
    }
    Scalar { num, den }
}

/// 1/p for a nonzero Laurent polynomial p.
fn inv_poly(p: &MultiPoly) -> Result<Scalar> {
    if p.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let (m, p0) = p.split_monomial_content();
    let lc = p0.leading().unwrap().1.clone();
    let p1 = p0.scale(&lc.recip());
    let base = MultiPoly::monomial(-m, lc.recip());
    if p1.is_one() {
        return Ok(Scalar::from_poly(base));
    }
    if let Some((c, m2, fs)) = factor_binomial(&p1) {
        let mut den = Den::default();
        for f in fs {
            den.push(f, 1);
        }
        let num = base.mul_monomial(&(-m2)).scale(&c.recip());
        return Ok(Scalar { num, den });
    }
    Ok(Scalar {
        num: base,
        den: Den {
            cyc: Vec::new(),
            gen: Some(p1),
        },
    })
}

fn subst_poly(p: &MultiPoly, bindings: &[(usize, Scalar)]) -> Result<Scalar> {
    if bindings.is_empty() {
        return Ok(Scalar::from_poly(p.clone()));
    }
    let mono: Option<Vec<(usize, Monomial, Rat)>> = bindings
        .iter()
        .map(|(v, s)| s.as_monomial().map(|(m, c)| (*v, m, c)))
        .collect();
    if let Some(mono) = mono {
        let mut out = Vec::with_capacity(p.len());
        for (m, c) in p.terms() {
            let mut k = *m;
            let mut coef = c.clone();
            for (v, bm, bc) in &mono {
                let e = m.0[*v];
                if e == 0 {
                    continue;
                }
                k.0[*v] = 0;
                if bc.is_zero() {
                    if e < 0 {
                        return Err(Error::PoleAtSpecialization);
                    }
                    coef = Rat::zero();
                    break;
                }
                k = k + bm.scale(e);
                coef *= pow_rat(bc, e);
            }
            if !coef.is_zero() {
                out.push((k, coef));
            }
        }
        return Ok(Scalar::from_poly(MultiPoly::from_terms(out)));
    }
    let mut acc = Scalar::zero();
    let mut cache: std::collections::HashMap<(usize, i32), Scalar> = Default::default();
    for (m, c) in p.terms() {
        let mut k = *m;
        let mut term = Scalar::one();
        for (v, s) in bindings {
            let e = m.0[*v];
            if e == 0 {
                continue;
            }
            k.0[*v] = 0;
            let pw = match cache.get(&(*v, e)) {
                Some(x) => x.clone(),
                None => {
                    let x = s.pow(e).map_err(|_| Error::PoleAtSpecialization)?;
                    cache.insert((*v, e), x.clone());
                    x
                }
            };
            term = term.mul_ref(&pw);
        }
        acc = acc.add_ref(&term.mul_ref(&Scalar::monomial(k, c.clone())));
    }
    Ok(acc)
}

fn pow_rat(c: &Rat, e: i32) -> Rat {
    if e >= 0 {
        num_traits::pow(c.clone(), e as usize)
    } else {
        num_traits::pow(c.recip(), (-e) as usize)
    }
}

impl PartialEq for Scalar {
    fn eq(&self, o: &Self) -> bool {
        if self.den == o.den {
            return self.num == o.num;
        }
        if self.den.gen.is_none() && o.den.gen.is_none() {
            return false;
        }
        self.num.mul(&o.den.expand()) == o.num.mul(&self.den.expand())
    }
}
impl Eq for Scalar {}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.len() == 1 {
            write!(f, "{}", self.num)?;
        } else {
            write!(f, "({})", self.num)?;
        }
        let d = self.den.expand();
        if d.len() == 1 {
            write!(f, "/{}", d)
        } else {
            write!(f, "/({})", d)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<Rat> for Scalar {
    fn from(c: Rat) -> Self {
        Scalar::from_rat(c)
    }
}

impl From<MultiPoly> for Scalar {
    fn from(p: MultiPoly) -> Self {
        Scalar::from_poly(p)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                self.$f(o)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$f(&o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                self.$f(o)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$f(&o)
            }
        }
    };
}

binop!(Add, add, add_ref);
binop!(Sub, sub, sub_ref);
binop!(Mul, mul, mul_ref);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = self.add_ref(o);
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = self.sub_ref(o);
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = self.mul_ref(o);
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(it: I) -> Scalar {
        it.fold(Scalar::zero(), |a, b| a + b)
    }
}

impl Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(it: I) -> Scalar {
        it.fold(Scalar::one(), |a, b| a * b)
    }
}

/// q^a - c t^b style binomials used throughout: `x - y` for monomial scalars.
pub fn binomial(a: (Monomial, i64), b: (Monomial, i64)) -> Scalar {
    Scalar::from_poly(MultiPoly::from_terms([(a.0, rat(a.1)), (b.0, rat(b.1))]))
}
