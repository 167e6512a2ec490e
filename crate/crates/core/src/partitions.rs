//! Partitions, dominance order, hooks and the hook-product scalars z_λ(q,t) and N_λ(u).

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::scalars::{Monomial, Scalar, Q, T};

/// Weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::Invalid(format!("not a partition: {:?}", parts)));
        }
        Ok(Partition(parts))
    }

    /// Sort and drop zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition(vec![n])
        }
    }

    pub fn column(n: usize) -> Self {
        Partition(vec![1; n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// λ_i with 0-based i, zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let n = self.part(0);
        Partition((1..=n).map(|j| self.0.iter().filter(|&&p| p >= j).count()).collect())
    }

    /// Cells (i, j), 0-based row and column.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &r)| (0..r).map(move |j| (i, j)))
    }

    /// (arm, leg) of every cell.
    pub fn arms_legs(&self) -> Vec<(usize, usize)> {
        let c = self.conjugate();
        self.cells().map(|(i, j)| (self.0[i] - j - 1, c.0[j] - i - 1)).collect()
    }

    /// n(λ) = Σ (i−1) λ_i, the sum of leg lengths.
    pub fn n(&self) -> usize {
        self.0.iter().enumerate().map(|(i, &p)| i * p).sum()
    }

    /// Multiplicity m_i of each part size i (index 0 unused).
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.part(0) + 1];
        for &p in &self.0 {
            m[p] += 1;
        }
        m
    }

    /// z_λ = ∏ i^{m_i} m_i!, the norm of p_λ.
    pub fn z(&self) -> BigInt {
        let mut z = BigInt::one();
        for (i, &m) in self.multiplicities().iter().enumerate().skip(1) {
            for k in 1..=m {
                z *= BigInt::from(i * k);
            }
        }
        z
    }

    /// Union of parts.
    pub fn join(&self, o: &Partition) -> Partition {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        Partition::from_unsorted(v)
    }

    /// Multiply every part by n.
    pub fn scale(&self, n: usize) -> Partition {
        Partition(self.0.iter().map(|p| p * n).collect())
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "-" || s.is_empty() || s == "()" {
            return Ok(Self::empty());
        }
        let s = s.trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        let parts: Vec<usize> = s
            .split(',')
            .map(|x| {
                x.trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad partition {:?}", s)))
            })
            .collect::<Result<_>>()?;
        Partition::new(parts)
    }

    /// Bracketed form `[2,1]`, used inside symmetric function text.
    pub fn bracketed(&self) -> String {
        format!(
            "[{}]",
            self.0.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
        )
    }
}

/// Partitions compare by size, then in reverse lexicographic order, so that (2) < (1,1).
impl Ord for Partition {
    fn cmp(&self, o: &Self) -> Ordering {
        self.size().cmp(&o.size()).then_with(|| o.0.cmp(&self.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "-");
        }
        write!(
            f,
            "{}",
            self.0.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
        )
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})",
            self.0.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
        )
    }
}

impl From<&[usize]> for Partition {
    fn from(v: &[usize]) -> Self {
        Partition::from_unsorted(v.to_vec())
    }
}

/// μ ⪯ λ in dominance order.
pub fn dominance_leq(mu: &Partition, lambda: &Partition) -> Result<bool> {
    if mu.size() != lambda.size() {
        return Err(Error::SizeMismatch(format!("{:?} vs {:?}", mu, lambda)));
    }
    Ok(dominated(mu, lambda))
}

pub(crate) fn dominated(mu: &Partition, lambda: &Partition) -> bool {
    let (mut a, mut b) = (0, 0);
    for i in 0..mu.len().max(lambda.len()) {
        a += mu.part(i);
        b += lambda.part(i);
        if a > b {
            return false;
        }
    }
    true
}

/// All partitions of n in reverse lexicographic order.
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    rec(n, n, &mut cur, &mut out);
    out
}

/// Compositions of n (ordered sequences of positive integers).
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn qt_binomial(qa: usize, tb: usize, coeff_t: &Scalar) -> Scalar {
    Scalar::var_pow(Q, qa as i32) - coeff_t * Scalar::var_pow(T, tb as i32)
}

/// Factors (q^a − t^{l+1}) and (q^{a+1} − t^l) of z_λ(q,t), one pair per cell.
pub fn z_qt_factors(lambda: &Partition) -> Vec<Scalar> {
    let one = Scalar::one();
    lambda
        .arms_legs()
        .into_iter()
        .flat_map(|(a, l)| [qt_binomial(a, l + 1, &one), qt_binomial(a + 1, l, &one)])
        .collect()
}

/// z_λ(q,t) = ∏ (q^a − t^{l+1})(q^{a+1} − t^l).
pub fn z_qt(lambda: &Partition) -> Scalar {
    z_qt_factors(lambda).into_iter().product()
}

/// 1 / z_λ(q,t), built factor by factor so the denominator stays factored.
pub fn z_qt_inv(lambda: &Partition) -> Scalar {
    z_qt_factors(lambda)
        .iter()
        .map(|f| f.inv().expect("hook factor is nonzero"))
        .product()
}

/// Factors (q^a − u t^{1+l}) and (q^{a+1} − u^{-1} t^l) of N_λ(u).
pub fn n_u_factors(lambda: &Partition, u: &Scalar) -> Result<Vec<Scalar>> {
    if u.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let ui = u.inv()?;
    Ok(lambda
        .arms_legs()
        .into_iter()
        .flat_map(|(a, l)| [qt_binomial(a, l + 1, u), qt_binomial(a + 1, l, &ui)])
        .collect())
}

/// N_λ(u) = ∏ (q^a − u t^{1+l})(q^{a+1} − u^{-1} t^l).
pub fn n_u(lambda: &Partition, u: &Scalar) -> Result<Scalar> {
    Ok(n_u_factors(lambda, u)?.into_iter().product())
}

/// The monomial q^a t^b.
pub fn qt_monomial(a: i32, b: i32) -> Monomial {
    let mut m = Monomial::ONE;
    m.0[Q] = a;
    m.0[T] = b;
    m
}
