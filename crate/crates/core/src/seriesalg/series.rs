use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Primes accepted as residue field characteristic.
pub const PRIMES: [u32; 3] = [2, 3, 5];

pub fn check_prime(p: u32) -> Result<()> {
    if PRIMES.contains(&p) {
        Ok(())
    } else {
        Err(Error::Invalid(format!(
            "unsupported prime {p}, expected one of 2, 3, 5"
        )))
    }
}

/// Element of F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    v: u32,
    p: u32,
}

impl Fp {
    pub fn new(v: i64, p: u32) -> Self {
        Fp {
            v: v.rem_euclid(p as i64) as u32,
            p,
        }
    }

    pub fn zero(p: u32) -> Self {
        Fp { v: 0, p }
    }

    pub fn one(p: u32) -> Self {
        Fp { v: 1 % p, p }
    }

    pub fn value(self) -> u32 {
        self.v
    }

    pub fn p(self) -> u32 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.v == 0
    }

    pub fn inv(self) -> Option<Fp> {
        if self.v == 0 {
            return None;
        }
        // p is tiny, so a linear search is fine
        (1..self.p)
            .find(|&w| (w * self.v) % self.p == 1)
            .map(|w| Fp { v: w, p: self.p })
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, o: Fp) -> Fp {
        debug_assert_eq!(self.p, o.p);
        Fp {
            v: (self.v + o.v) % self.p,
            p: self.p,
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, o: Fp) -> Fp {
        debug_assert_eq!(self.p, o.p);
        Fp {
            v: (self.v + self.p - o.v) % self.p,
            p: self.p,
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, o: Fp) -> Fp {
        debug_assert_eq!(self.p, o.p);
        Fp {
            v: (self.v * o.v) % self.p,
            p: self.p,
        }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp {
            v: (self.p - self.v) % self.p,
            p: self.p,
        }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

/// Order of a truncated series: certified, or only bounded below when the
/// series vanishes to its precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Order {
    Exact(i32),
    AtLeast(i32),
}

impl Order {
    pub fn exact(self) -> Option<i32> {
        match self {
            Order::Exact(k) => Some(k),
            Order::AtLeast(_) => None,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Order::Exact(_))
    }

    /// Lower bound on the true order.
    pub fn bound(self) -> i32 {
        match self {
            Order::Exact(k) | Order::AtLeast(k) => k,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Exact(k) => write!(f, "{k}"),
            Order::AtLeast(k) => write!(f, ">={k}"),
        }
    }
}

/// Truncated Laurent series over F_p: sum of c_i x^(lo+i), known modulo x^prec.
///
/// Elements of F_p[[x]]/x^m have `lo >= 0`. Negative exponents appear only
/// after division by non-units.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TSeries {
    p: u32,
    lo: i32,
    c: Vec<u32>,
    prec: i32,
}

impl TSeries {
    fn build(p: u32, lo: i32, c: Vec<u32>, prec: i32) -> Self {
        let mut s = TSeries { p, lo, c, prec };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        let keep = (self.prec - self.lo).max(0) as usize;
        self.c.truncate(keep);
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
        let lead = self.c.iter().take_while(|&&v| v == 0).count();
        if lead == self.c.len() {
            self.c.clear();
            self.lo = 0;
        } else if lead > 0 {
            self.c.drain(..lead);
            self.lo += lead as i32;
        }
    }

    /// Series with coefficients c_0, c_1, ... for x^0, x^1, ..., known mod x^prec.
    pub fn from_coeffs(p: u32, coeffs: &[i64], prec: usize) -> Self {
        let c = coeffs.iter().map(|&v| v.rem_euclid(p as i64) as u32).collect();
        Self::build(p, 0, c, prec as i32)
    }

    pub fn zero(p: u32, prec: usize) -> Self {
        Self::build(p, 0, vec![], prec as i32)
    }

    pub fn one(p: u32, prec: usize) -> Self {
        Self::constant(p, 1, prec)
    }

    pub fn constant(p: u32, v: i64, prec: usize) -> Self {
        Self::from_coeffs(p, &[v], prec)
    }

    /// c·x^e, possibly with e < 0.
    pub fn monomial(p: u32, v: i64, e: i32, prec: i32) -> Self {
        Self::build(p, e, vec![v.rem_euclid(p as i64) as u32], prec)
    }

    pub fn x(p: u32, prec: usize) -> Self {
        Self::monomial(p, 1, 1, prec as i32)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Absolute precision: the series is known modulo x^precision.
    pub fn precision(&self) -> i32 {
        self.prec
    }

    /// Coefficient of x^e. Reading at or past the precision is an error.
    pub fn coeff(&self, e: i32) -> Result<Fp> {
        if e >= self.prec {
            return Err(Error::InsufficientPrecision((e + 1).max(0) as usize));
        }
        let v = if e < self.lo {
            0
        } else {
            self.c.get((e - self.lo) as usize).copied().unwrap_or(0)
        };
        Ok(Fp::new(v as i64, self.p))
    }

    /// The known coefficients as (exponent, value) pairs.
    pub fn terms(&self) -> impl Iterator<Item = (i32, Fp)> + '_ {
        self.c
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(move |(i, &v)| (self.lo + i as i32, Fp { v, p: self.p }))
    }

    /// True when the series vanishes to its precision.
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn order(&self) -> Order {
        if self.c.is_empty() {
            Order::AtLeast(self.prec)
        } else {
            Order::Exact(self.lo)
        }
    }

    /// Lower bound on the order of the underlying exact series.
    pub fn valuation_bound(&self) -> i32 {
        self.order().bound()
    }

    /// Highest exponent with a nonzero known coefficient.
    pub fn degree(&self) -> Option<i32> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.lo + self.c.len() as i32 - 1)
        }
    }

    /// Reduce precision to `prec` (no-op if already lower).
    pub fn truncate(&self, prec: i32) -> TSeries {
        Self::build(self.p, self.lo, self.c.clone(), prec.min(self.prec))
    }

    /// Regard the known part as an exact polynomial and re-truncate at `prec`.
    pub fn lift(&self, prec: i32) -> TSeries {
        Self::build(self.p, self.lo, self.c.clone(), prec)
    }

    /// Constant term modulo x, i.e. the specialization at x = 0.
    pub fn at_zero(&self) -> Result<TSeries> {
        if self.lo < 0 && !self.c.is_empty() {
            return Err(Error::Invalid("series has a pole at x = 0".into()));
        }
        Ok(TSeries::build(self.p, 0, vec![self.coeff(0)?.value()], 1))
    }

    pub fn scale(&self, a: Fp) -> TSeries {
        let c = self.c.iter().map(|&v| (v * a.value()) % self.p).collect();
        Self::build(self.p, self.lo, c, self.prec)
    }

    fn combine(&self, o: &TSeries, sign: u32) -> TSeries {
        assert_eq!(self.p, o.p, "mixed characteristics");
        let prec = self.prec.min(o.prec);
        let lo = self.lo.min(o.lo);
        let hi = prec.max(lo);
        let mut c = vec![0u32; (hi - lo) as usize];
        for (e, v) in self.terms() {
            if e < prec {
                c[(e - lo) as usize] = v.value();
            }
        }
        for (e, v) in o.terms() {
            if e < prec {
                let k = (e - lo) as usize;
                c[k] = (c[k] + sign * v.value()) % self.p;
            }
        }
        Self::build(self.p, lo, c, prec)
    }

    /// Product with pessimistic precision min(P_a + v_b, P_b + v_a).
    pub fn mul_series(&self, o: &TSeries) -> TSeries {
        assert_eq!(self.p, o.p, "mixed characteristics");
        let prec = (self.prec + o.valuation_bound()).min(o.prec + self.valuation_bound());
        if self.c.is_empty() || o.c.is_empty() {
            return Self::build(self.p, 0, vec![], prec);
        }
        let lo = self.lo + o.lo;
        let len = ((prec - lo).max(0) as usize).min(self.c.len() + o.c.len() - 1);
        let mut c = vec![0u32; len];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 || i >= len {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                c[i + j] = (c[i + j] + a * b) % self.p;
            }
        }
        Self::build(self.p, lo, c, prec)
    }

    /// Inverse in the Laurent series field. Fails if the order is not certified.
    pub fn inv(&self) -> Result<TSeries> {
        let k = match self.order() {
            Order::Exact(k) => k,
            Order::AtLeast(b) => return Err(Error::InsufficientPrecision((b + 1).max(1) as usize)),
        };
        // self = x^k u with u known to relative precision r
        let r = (self.prec - k) as usize;
        let u0inv = Fp {
            v: self.c[0],
            p: self.p,
        }
        .inv()
        .expect("leading coefficient is nonzero");
        let mut w = vec![0u32; r];
        w[0] = u0inv.value();
        for n in 1..r {
            let mut acc = 0u32;
            for i in 1..=n.min(self.c.len() - 1) {
                acc = (acc + self.c[i] * w[n - i]) % self.p;
            }
            w[n] = (Fp { v: acc, p: self.p } * u0inv).neg().value();
        }
        Ok(Self::build(self.p, -k, w, self.prec - 2 * k))
    }

    pub fn div_series(&self, o: &TSeries) -> Result<TSeries> {
        Ok(self.mul_series(&o.inv()?))
    }

    /// Polynomial text of the known part, e.g. `1+x^2` or `x^-1+2x`.
    pub fn to_poly_text(&self) -> String {
        let mut out = String::new();
        for (e, v) in self.terms() {
            if !out.is_empty() {
                out.push('+');
            }
            let coef = v.value();
            match (e, coef) {
                (0, _) => out.push_str(&coef.to_string()),
                (_, 1) => {}
                _ => out.push_str(&coef.to_string()),
            }
            match e {
                0 => {}
                1 => out.push('x'),
                _ => out.push_str(&format!("x^{e}")),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Parse a polynomial in x with integer coefficients, e.g. `1+x^2`, `2x`, `x-3*x^3`.
    pub fn parse(s: &str, p: u32, prec: usize) -> Result<TSeries> {
        let err = || Error::Parse(format!("bad series entry '{s}'"));
        let body: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if body.is_empty() {
            return Err(err());
        }
        let mut coeffs: Vec<i64> = Vec::new();
        let mut rest = body.as_str();
        while !rest.is_empty() {
            let (sign, tail) = match rest.as_bytes()[0] {
                b'+' => (1i64, &rest[1..]),
                b'-' => (-1i64, &rest[1..]),
                _ => (1i64, rest),
            };
            let end = tail.find(['+', '-']).unwrap_or(tail.len());
            let term = &tail[..end];
            rest = &tail[end..];
            if term.is_empty() {
                return Err(err());
            }
            let (num, exp) = match term.find('x') {
                None => (term, 0usize),
                Some(i) => {
                    let num = term[..i].trim_end_matches('*');
                    let after = &term[i + 1..];
                    let exp = if after.is_empty() {
                        1
                    } else {
                        after
                            .strip_prefix('^')
                            .ok_or_else(err)?
                            .parse::<usize>()
                            .map_err(|_| err())?
                    };
                    (num, exp)
                }
            };
            let c: i64 = if num.is_empty() {
                1
            } else {
                num.parse().map_err(|_| err())?
            };
            if coeffs.len() <= exp {
                coeffs.resize(exp + 1, 0);
            }
            coeffs[exp] += sign * c;
        }
        Ok(TSeries::from_coeffs(p, &coeffs, prec))
    }
}

impl fmt::Display for TSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(x^{})", self.to_poly_text(), self.prec)
    }
}

impl Add for &TSeries {
    type Output = TSeries;
    fn add(self, o: &TSeries) -> TSeries {
        self.combine(o, 1)
    }
}

impl Sub for &TSeries {
    type Output = TSeries;
    fn sub(self, o: &TSeries) -> TSeries {
        self.combine(o, self.p - 1)
    }
}

impl Mul for &TSeries {
    type Output = TSeries;
    fn mul(self, o: &TSeries) -> TSeries {
        self.mul_series(o)
    }
}

impl Neg for &TSeries {
    type Output = TSeries;
    fn neg(self) -> TSeries {
        self.scale(Fp::new(-1, self.p))
    }
}
