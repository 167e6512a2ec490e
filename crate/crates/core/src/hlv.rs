//! The HLV kernel Ω, its logarithm ℍ, Poincaré polynomials of parabolic character varieties,
//! Euler forms and the Macdonald-side counting series.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::macdonald::macdonald_htilde;
use crate::partitions::{enumerate_partitions, n_u_factors, Partition};
use crate::scalars::{sigma, Scalar, MAX_SIGMA, Q, S, T};
use crate::symfunc::{hall_pair, Basis, MultiSym, MultiSymSeries, SymFunc};

/// A curve of genus g with k marked points; `sigma` holds the values of σ_1..σ_g.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveData {
    pub g: usize,
    pub k: usize,
    pub sigma: Vec<Scalar>,
}

impl CurveData {
    pub fn new(g: usize, k: usize, sigma: Vec<Scalar>) -> Result<Self> {
        if sigma.len() != g {
            return Err(Error::SizeMismatch(format!(
                "{} sigma values for genus {g}",
                sigma.len()
            )));
        }
        if sigma.iter().any(|s| s.is_zero()) {
            return Err(Error::ZeroArgument);
        }
        Ok(CurveData { g, k, sigma })
    }

    /// σ_i left as the variables σ_1..σ_g.
    pub fn symbolic(g: usize, k: usize) -> Result<Self> {
        if g > MAX_SIGMA {
            return Err(Error::TooLarge(format!(
                "genus {g} exceeds the {MAX_SIGMA} sigma variables"
            )));
        }
        Self::new(g, k, (1..=g).map(|i| Scalar::var(sigma(i))).collect())
    }
}

/// Eigenvalue multiplicities r_{i,j} at each of the k punctures, each row summing to r.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParabolicData {
    pub r: usize,
    pub mults: Vec<Vec<usize>>,
}

impl ParabolicData {
    pub fn new(r: usize, mults: Vec<Vec<usize>>) -> Result<Self> {
        if r == 0 {
            return Err(Error::Invalid("rank must be positive".into()));
        }
        for (i, row) in mults.iter().enumerate() {
            let s: usize = row.iter().sum();
            if s != r {
                return Err(Error::SizeMismatch(format!(
                    "multiplicities at puncture {} sum to {s}, expected {r}",
                    i + 1
                )));
            }
        }
        Ok(ParabolicData { r, mults })
    }

    /// Parse "1,1;2" (rows separated by ';'); the rank is the common row sum.
    pub fn parse(r: usize, s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Self::new(r, Vec::new());
        }
        let mults = s
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|x| {
                        x.trim()
                            .parse::<usize>()
                            .map_err(|e| Error::Parse(format!("multiplicity {x:?}: {e}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(r, mults)
    }

    pub fn k(&self) -> usize {
        self.mults.len()
    }
}

/// ∏_i N_λ(σ_i^{-1}) / N_λ(1).
pub fn kernel_weight(lambda: &Partition, c: &CurveData) -> Result<Scalar> {
    let mut w = Scalar::one();
    for f in n_u_factors(lambda, &Scalar::one())? {
        w = w * f.inv()?;
    }
    for s in &c.sigma {
        for f in n_u_factors(lambda, &s.inv()?)? {
            w = w * f;
        }
    }
    Ok(w)
}

/// Ω = Σ_λ weight(λ) T^{|λ|} H̃_λ[X_1] ··· H̃_λ[X_k], through T^nmax.
pub fn hlv_kernel(c: &CurveData, nmax: usize) -> Result<MultiSymSeries> {
    let slices = (0..=nmax)
        .map(|n| {
            let terms = enumerate_partitions(n)
                .into_par_iter()
                .map(|lambda| {
                    let h = macdonald_htilde(&lambda)?;
                    let tensor = MultiSym::tensor(&vec![h; c.k])?;
                    Ok(tensor.scale(&kernel_weight(&lambda, c)?))
                })
                .collect::<Result<Vec<_>>>()?;
            terms
                .iter()
                .try_fold(MultiSym::zero(c.k, Basis::M), |acc, t| acc.add(t))
        })
        .collect::<Result<Vec<_>>>()?;
    MultiSymSeries::from_slices(c.k, slices)
}

/// ℍ = (q − 1)(1 − t) pLog Ω, with every coefficient certified to be a Laurent polynomial.
#[allow(non_snake_case)]
pub fn hlv_H(c: &CurveData, nmax: usize) -> Result<MultiSymSeries> {
    let pre = (Scalar::var(Q) - Scalar::one()) * (Scalar::one() - Scalar::var(T));
    let h = hlv_kernel(c, nmax)?.plog()?.scale(&pre);
    for (n, tuple, coeff) in h.terms() {
        if !coeff.is_laurent_polynomial() {
            let names: Vec<String> = tuple.iter().map(|l| l.bracketed()).collect();
            return Err(Error::IntegralityFailure(format!(
                "T^{n} {} has coefficient {coeff}",
                names.join("⊗")
            )));
        }
    }
    Ok(h)
}

/// (2g − 2 + k) r² − Σ r_{i,j}² + 2.
pub fn dim_moduli(g: usize, p: &ParabolicData) -> Result<i64> {
    let r = p.r as i64;
    let sq: i64 = p.mults.iter().flatten().map(|&x| (x * x) as i64).sum();
    let d = (2 * g as i64 - 2 + p.k() as i64) * r * r - sq + 2;
    if d < 0 {
        return Err(Error::NegativeDimension(d));
    }
    Ok(d)
}

/// Poincaré polynomial in s = q^{1/2} of the generic character variety with the given
/// eigenvalue multiplicities.
pub fn poincare_polynomial(g: usize, p: &ParabolicData) -> Result<Scalar> {
    let dim = dim_moduli(g, p)?;
    let curve = CurveData::symbolic(g, p.k())?;
    let h = hlv_H(&curve, p.r)?;
    let hs: Vec<SymFunc> = p
        .mults
        .iter()
        .map(|row| {
            let sorted = Partition::from_unsorted(row.iter().copied().filter(|&x| x > 0).collect());
            SymFunc::h(sorted.parts())
        })
        .collect();
    let paired = h.slice(p.r).hall_pair_all(&hs)?;
    let mut bind = vec![(Q, Scalar::var_pow(S, -2)), (T, Scalar::one())];
    for i in 1..=g {
        bind.push((sigma(i), Scalar::var_pow(S, -1)));
    }
    let out = paired.substitute(&bind)? * Scalar::var_pow(S, dim as i32);
    let integral = out
        .as_poly()
        .map(|poly| poly.terms().iter().all(|(_, c)| c.is_integer()))
        .unwrap_or(false);
    if !integral {
        return Err(Error::IntegralityFailure(format!(
            "Poincaré polynomial {out} is not an integral Laurent polynomial in s"
        )));
    }
    Ok(out)
}

/// Numerical invariants of a parabolic bundle: rank, degree and jumps r_{i,j} at each point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleInvariants {
    pub rank: i64,
    pub degree: i64,
    pub jumps: Vec<Vec<i64>>,
}

fn jump(b: &BundleInvariants, i: usize, j: usize) -> i64 {
    b.jumps.get(i).and_then(|r| r.get(j)).copied().unwrap_or(0)
}

fn row_len(e: &BundleInvariants, f: &BundleInvariants, i: usize) -> usize {
    e.jumps
        .get(i)
        .map_or(0, Vec::len)
        .max(f.jumps.get(i).map_or(0, Vec::len))
}

/// χ(E, F) = (1 − g) rk E rk F + rk E deg F − rk F deg E − Σ_i d_i Σ_{j<j'} r_{i,j}(E) r_{i,j'}(F).
pub fn euler_form_parabolic(g: usize, d: &[i64], e: &BundleInvariants, f: &BundleInvariants) -> i64 {
    let mut x = (1 - g as i64) * e.rank * f.rank + e.rank * f.degree - f.rank * e.degree;
    for (i, di) in d.iter().enumerate() {
        let m = row_len(e, f, i);
        for j in 0..m {
            for jp in j + 1..m {
                x -= di * jump(e, i, j) * jump(f, i, jp);
            }
        }
    }
    x
}

/// (2 − 2g − Σ d_i) rk E rk F + Σ_i d_i Σ_j r_{i,j}(E) r_{i,j}(F).
pub fn euler_form_higgs(g: usize, d: &[i64], e: &BundleInvariants, f: &BundleInvariants) -> i64 {
    let mut x = (2 - 2 * g as i64 - d.iter().sum::<i64>()) * e.rank * f.rank;
    for (i, di) in d.iter().enumerate() {
        for j in 0..row_len(e, f, i) {
            x += di * jump(e, i, j) * jump(f, i, j);
        }
    }
    x
}

/// H̃_λ / ∏_{cells, l ≠ 0} (1 − t^l q^{−a−1}) as a power series in t through t^dmax.
pub fn count_gets_macdonald_series(lambda: &Partition, dmax: usize) -> Result<Vec<SymFunc>> {
    let mut den = Scalar::one();
    for (a, l) in lambda.arms_legs() {
        if l != 0 {
            den = den * (Scalar::one() - Scalar::var_pow(T, l as i32) * Scalar::var_pow(Q, -(a as i32) - 1));
        }
    }
    let f = macdonald_htilde(lambda)?.scale(&den.inv()?);
    let mut out = vec![SymFunc::zero(Basis::M); dmax + 1];
    for (mu, c) in f.terms() {
        for (d, cd) in c.series_in(T, dmax)?.into_iter().enumerate() {
            if !cd.is_zero() {
                out[d] = out[d].add(&SymFunc::from_terms(Basis::M, [(mu.clone(), cd)]))?;
            }
        }
    }
    Ok(out)
}

/// (count_gets_macdonald_series(λ), h_μ) through t^dmax.
pub fn springer_count(lambda: &Partition, mu: &Partition, dmax: usize) -> Result<Vec<Scalar>> {
    if lambda.size() != mu.size() {
        return Err(Error::SizeMismatch(format!("|{lambda}| != |{mu}|")));
    }
    let h = SymFunc::h(mu.parts());
    count_gets_macdonald_series(lambda, dmax)?
        .iter()
        .map(|f| hall_pair(f, &h))
        .collect()
}
