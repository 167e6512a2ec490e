use std::collections::HashMap;
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::scalars::{Monomial, Scalar, Q, T};

use super::multi::MultiSym;
use super::sym::SymFunc;
use super::tables::Basis;

/// Plethystic argument: an expression in alphabets X1..Xk and scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlphabetExpr {
    /// Alphabet X_{i+1} (0-based index).
    X(usize),
    Scalar(Scalar),
    /// 1/(1 − v).
    Geometric(Monomial),
    Sum(Box<AlphabetExpr>, Box<AlphabetExpr>),
    Diff(Box<AlphabetExpr>, Box<AlphabetExpr>),
    Prod(Box<AlphabetExpr>, Box<AlphabetExpr>),
}

impl AlphabetExpr {
    pub fn x(i: usize) -> Self {
        AlphabetExpr::X(i)
    }

    pub fn scalar(c: Scalar) -> Self {
        AlphabetExpr::Scalar(c)
    }

    /// (q − 1)(1 − t) X.
    pub fn qt_twist() -> Self {
        let c = (Scalar::var(Q) - Scalar::one()) * (Scalar::one() - Scalar::var(T));
        AlphabetExpr::Scalar(c) * AlphabetExpr::X(0)
    }

    /// Largest alphabet index used, plus one.
    pub fn arity(&self) -> usize {
        match self {
            AlphabetExpr::X(i) => i + 1,
            AlphabetExpr::Scalar(_) | AlphabetExpr::Geometric(_) => 0,
            AlphabetExpr::Sum(a, b) | AlphabetExpr::Diff(a, b) | AlphabetExpr::Prod(a, b) => a.arity().max(b.arity()),
        }
    }

    /// p_n[self] in the p basis over k alphabets.
    pub fn power_sum(&self, n: usize, k: usize) -> Result<MultiSym> {
        match self {
            AlphabetExpr::X(i) => {
                if *i >= k {
                    return Err(Error::UnsupportedLeaf(format!(
                        "alphabet X{} with only {} alphabets",
                        i + 1,
                        k
                    )));
                }
                let mut t = vec![Partition::empty(); k];
                t[*i] = Partition::row(n);
                MultiSym::from_terms(k, Basis::P, [(t, Scalar::one())])
            }
            AlphabetExpr::Scalar(c) => {
                MultiSym::from_terms(k, Basis::P, [(vec![Partition::empty(); k], c.adams(n as u32))])
            }
            AlphabetExpr::Geometric(v) => {
                let c = (Scalar::one() - Scalar::monomial(v.scale(n as i32), crate::scalars::rat(1))).inv()?;
                MultiSym::from_terms(k, Basis::P, [(vec![Partition::empty(); k], c)])
            }
            AlphabetExpr::Sum(a, b) => a.power_sum(n, k)?.add(&b.power_sum(n, k)?),
            AlphabetExpr::Diff(a, b) => a.power_sum(n, k)?.sub(&b.power_sum(n, k)?),
            AlphabetExpr::Prod(a, b) => Ok(a.power_sum(n, k)?.mul_p(&b.power_sum(n, k)?)),
        }
    }
}

impl Add for AlphabetExpr {
    type Output = AlphabetExpr;
    fn add(self, o: AlphabetExpr) -> AlphabetExpr {
        AlphabetExpr::Sum(Box::new(self), Box::new(o))
    }
}

impl Sub for AlphabetExpr {
    type Output = AlphabetExpr;
    fn sub(self, o: AlphabetExpr) -> AlphabetExpr {
        AlphabetExpr::Diff(Box::new(self), Box::new(o))
    }
}

impl Mul for AlphabetExpr {
    type Output = AlphabetExpr;
    fn mul(self, o: AlphabetExpr) -> AlphabetExpr {
        AlphabetExpr::Prod(Box::new(self), Box::new(o))
    }
}

/// F[A] over k alphabets, returned in the m basis. Coefficients of F are not acted on.
pub fn plethysm(f: &SymFunc, a: &AlphabetExpr, k: usize) -> Result<MultiSym> {
    let fp = f.convert(Basis::P)?;
    let mut cache: HashMap<usize, MultiSym> = HashMap::new();
    let mut acc = MultiSym::zero(k, Basis::P);
    for (lambda, c) in fp.terms() {
        let mut term = MultiSym::constant(k, c.clone()).convert(Basis::P)?;
        for &part in lambda.parts() {
            if !cache.contains_key(&part) {
                cache.insert(part, a.power_sum(part, k)?);
            }
            term = term.mul_p(&cache[&part]);
        }
        acc = acc.add(&term)?;
    }
    acc.to_m()
}

/// Single-alphabet plethysm F[A(X)].
pub fn plethysm1(f: &SymFunc, a: &AlphabetExpr) -> Result<SymFunc> {
    plethysm(f, a, 1)?.to_symfunc()
}
