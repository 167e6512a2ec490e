use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::partitions::{enumerate_partitions, Partition};
use crate::scalars::{Rat, Scalar};

use super::multi::MultiSym;
use super::sym::SymFunc;
use super::tables::Basis;

/// Truncated series Σ_{n ≤ nmax} T^n F_n with F_n ∈ Sym[X1..Xk] homogeneous of degree n in every alphabet.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiSymSeries {
    k: usize,
    slices: Vec<MultiSym>,
}

fn check_slice(n: usize, s: &MultiSym) -> Result<()> {
    for t in s.terms().keys() {
        if t.iter().any(|l| l.size() != n) {
            return Err(Error::SizeMismatch(format!("T^{} term with tuple {:?}", n, t)));
        }
    }
    Ok(())
}

impl MultiSymSeries {
    pub fn zero(k: usize, nmax: usize) -> Self {
        MultiSymSeries {
            k,
            slices: vec![MultiSym::zero(k, Basis::M); nmax + 1],
        }
    }

    pub fn one(k: usize, nmax: usize) -> Self {
        let mut s = Self::zero(k, nmax);
        s.slices[0] = MultiSym::constant(k, Scalar::one());
        s
    }

    /// Build from (n, tuple, coeff) triples given in the m basis.
    pub fn from_terms<I: IntoIterator<Item = (usize, Vec<Partition>, Scalar)>>(
        k: usize,
        nmax: usize,
        it: I,
    ) -> Result<Self> {
        let mut buckets: Vec<Vec<(Vec<Partition>, Scalar)>> = vec![Vec::new(); nmax + 1];
        for (n, t, c) in it {
            if n > nmax {
                continue;
            }
            buckets[n].push((t, c));
        }
        let slices = buckets
            .into_iter()
            .map(|b| MultiSym::from_terms(k, Basis::M, b))
            .collect::<Result<Vec<_>>>()?;
        Self::from_slices(k, slices)
    }

    /// Slices in any basis; stored in the m basis.
    pub fn from_slices(k: usize, slices: Vec<MultiSym>) -> Result<Self> {
        if slices.is_empty() {
            return Err(Error::Invalid("series needs at least the T^0 slice".into()));
        }
        let mut out = Vec::with_capacity(slices.len());
        for (n, s) in slices.into_iter().enumerate() {
            if s.k() != k {
                return Err(Error::SizeMismatch(format!(
                    "slice with {} alphabets, expected {}",
                    s.k(),
                    k
                )));
            }
            let s = s.to_m()?;
            check_slice(n, &s)?;
            out.push(s);
        }
        Ok(MultiSymSeries { k, slices: out })
    }

    /// T^n · f1[X1] ··· fk[Xk] with every fi homogeneous of degree n.
    pub fn monomial_term(n: usize, nmax: usize, c: Scalar, fs: &[SymFunc]) -> Result<Self> {
        let mut s = Self::zero(fs.len(), nmax);
        if n <= nmax {
            let t = MultiSym::tensor(fs)?.scale(&c);
            check_slice(n, &t)?;
            s.slices[n] = t;
        }
        Ok(s)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn nmax(&self) -> usize {
        self.slices.len() - 1
    }

    pub fn slice(&self, n: usize) -> &MultiSym {
        &self.slices[n]
    }

    pub fn slices(&self) -> &[MultiSym] {
        &self.slices
    }

    pub fn coeff(&self, n: usize, tuple: &[Partition]) -> Scalar {
        self.slices.get(n).map(|s| s.coeff(tuple)).unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Vec<Partition>, &Scalar)> {
        self.slices
            .iter()
            .enumerate()
            .flat_map(|(n, s)| s.terms().iter().map(move |(t, c)| (n, t, c)))
    }

    pub fn truncate(&self, nmax: usize) -> Self {
        MultiSymSeries {
            k: self.k,
            slices: self.slices.iter().take(nmax + 1).cloned().collect(),
        }
    }

    fn zip_with<F: Fn(&MultiSym, &MultiSym) -> Result<MultiSym>>(&self, o: &Self, f: F) -> Result<Self> {
        if self.k != o.k {
            return Err(Error::SizeMismatch(format!("{} vs {} alphabets", self.k, o.k)));
        }
        let n = self.nmax().min(o.nmax());
        let slices = (0..=n)
            .map(|i| f(&self.slices[i], &o.slices[i]))
            .collect::<Result<Vec<_>>>()?;
        Ok(MultiSymSeries { k: self.k, slices })
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.zip_with(o, |a, b| a.add(b))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.zip_with(o, |a, b| a.sub(b))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        self.map_coeffs(|x| x * c)
    }

    pub fn map_coeffs<F: Fn(&Scalar) -> Scalar>(&self, f: F) -> Self {
        MultiSymSeries {
            k: self.k,
            slices: self.slices.iter().map(|s| s.map_coeffs(&f)).collect(),
        }
    }

    pub fn try_map_coeffs<F: Fn(&Scalar) -> Result<Scalar> + Sync>(&self, f: F) -> Result<Self> {
        let slices = self
            .slices
            .par_iter()
            .map(|s| s.try_map_coeffs(&f))
            .collect::<Result<Vec<_>>>()?;
        Ok(MultiSymSeries { k: self.k, slices })
    }

    pub fn substitute(&self, bindings: &[(usize, Scalar)]) -> Result<Self> {
        self.try_map_coeffs(|c| c.substitute(bindings))
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.k != o.k {
            return Err(Error::SizeMismatch(format!("{} vs {} alphabets", self.k, o.k)));
        }
        let a = self.to_p()?;
        let b = o.to_p()?;
        let n = a.len().min(b.len()) - 1;
        let slices = (0..=n)
            .into_par_iter()
            .map(|d| {
                let mut acc = MultiSym::zero(self.k, Basis::P);
                for j in 0..=d {
                    acc = acc.add(&a[j].mul_p(&b[d - j]))?;
                }
                acc.to_m()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MultiSymSeries { k: self.k, slices })
    }

    fn to_p(&self) -> Result<Vec<MultiSym>> {
        self.slices.par_iter().map(|s| s.convert(Basis::P)).collect()
    }

    /// Plethystic exponential exp(Σ p_m[H]/m), truncated at nmax.
    pub fn pexp(&self) -> Result<Self> {
        if !self.slices[0].is_zero() {
            return Err(Error::ConstantTermPresent);
        }
        let e = pexp_p(self.k, &self.to_p()?, self.nmax())?;
        let slices = e.par_iter().map(|s| s.to_m()).collect::<Result<Vec<_>>>()?;
        Ok(MultiSymSeries { k: self.k, slices })
    }

    /// Inverse of pexp, by solving degree by degree.
    pub fn plog(&self) -> Result<Self> {
        let c0 = MultiSym::constant(self.k, Scalar::one());
        if self.slices[0] != c0 {
            return Err(Error::BadConstantTerm);
        }
        let omega = self.to_p()?;
        let nmax = self.nmax();
        let mut h: Vec<MultiSym> = vec![MultiSym::zero(self.k, Basis::P); nmax + 1];
        for d in 1..=nmax {
            let e = pexp_p(self.k, &h[..d], d)?;
            h[d] = omega[d].sub(&e[d])?;
        }
        let slices = h.par_iter().map(|s| s.to_m()).collect::<Result<Vec<_>>>()?;
        Ok(MultiSymSeries { k: self.k, slices })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms()
                .map(|(n, t, c)| {
                    serde_json::json!({
                        "T": n,
                        "tuple": t.iter().map(|l| l.parts().to_vec()).collect::<Vec<_>>(),
                        "coeff": c.to_json(),
                    })
                })
                .collect(),
        )
    }

    pub fn from_json(k: usize, nmax: usize, v: &serde_json::Value) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Parse("expected a list of terms".into()))?;
        let mut terms = Vec::with_capacity(arr.len());
        for item in arr {
            let n = item["T"].as_u64().ok_or_else(|| Error::Parse("missing T".into()))? as usize;
            let tuple = item["tuple"]
                .as_array()
                .ok_or_else(|| Error::Parse("missing tuple".into()))?
                .iter()
                .map(|l| {
                    let parts = l
                        .as_array()
                        .ok_or_else(|| Error::Parse("bad partition".into()))?
                        .iter()
                        .map(|x| {
                            x.as_u64()
                                .map(|x| x as usize)
                                .ok_or_else(|| Error::Parse("bad part".into()))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    Partition::new(parts)
                })
                .collect::<Result<Vec<_>>>()?;
            terms.push((n, tuple, Scalar::from_json(&item["coeff"])?));
        }
        Self::from_terms(k, nmax, terms)
    }
}

/// pexp on p-basis slices (missing slices are zero), returning slices 0..=nmax.
fn pexp_p(k: usize, h: &[MultiSym], nmax: usize) -> Result<Vec<MultiSym>> {
    let zero = MultiSym::zero(k, Basis::P);
    let get = |i: usize| if i < h.len() { &h[i] } else { &zero };
    // L_n = Σ_{m | n} (1/m) p_m[H_{n/m}]
    let l: Vec<MultiSym> = (0..=nmax)
        .into_par_iter()
        .map(|n| {
            let mut acc = MultiSym::zero(k, Basis::P);
            if n == 0 {
                return Ok(acc);
            }
            for m in 1..=n {
                if n % m == 0 && !get(n / m).is_zero() {
                    let inv = Rat::new(1.into(), (m as i64).into());
                    acc = acc.add(&get(n / m).adams_p(m).map_coeffs(|c| c.scale(&inv)))?;
                }
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    // n E_n = Σ_{j=1}^n j L_j E_{n-j}
    let mut e: Vec<MultiSym> = vec![MultiSym::constant(k, Scalar::one()).convert(Basis::P)?];
    for n in 1..=nmax {
        let terms = (1..=n)
            .into_par_iter()
            .filter(|&j| !l[j].is_zero() && !e[n - j].is_zero())
            .map(|j| {
                l[j].mul_p(&e[n - j])
                    .map_coeffs(|c| c.scale(&Rat::from_integer((j as i64).into())))
            })
            .collect::<Vec<_>>();
        let mut acc = MultiSym::zero(k, Basis::P);
        for t in terms {
            acc = acc.add(&t)?;
        }
        let inv = Rat::new(1.into(), (n as i64).into());
        e.push(acc.map_coeffs(|c| c.scale(&inv)));
    }
    Ok(e)
}

/// Σ_{|λ| ≤ nmax} T^{|λ|} h_λ[X] m_λ[Y].
pub fn cauchy_kernel(nmax: usize) -> Result<MultiSymSeries> {
    let mut slices = Vec::with_capacity(nmax + 1);
    for n in 0..=nmax {
        let mut acc = MultiSym::zero(2, Basis::M);
        for l in enumerate_partitions(n) {
            let t = MultiSym::tensor(&[SymFunc::single(Basis::H, l.clone()), SymFunc::single(Basis::M, l)])?;
            acc = acc.add(&t)?;
        }
        slices.push(acc);
    }
    MultiSymSeries::from_slices(2, slices)
}

/// pexp[T X Y] truncated at nmax, the other side of the Cauchy identity.
pub fn cauchy_kernel_pexp(nmax: usize) -> Result<MultiSymSeries> {
    MultiSymSeries::monomial_term(1, nmax, Scalar::one(), &[SymFunc::m(&[1]), SymFunc::m(&[1])])?.pexp()
}

impl fmt::Display for MultiSymSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, s) in self.slices.iter().enumerate() {
            if s.is_zero() {
                continue;
            }
            if !first {
                writeln!(f)?;
            }
            first = false;
            write!(f, "T^{}: {}", n, s)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiSymSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
