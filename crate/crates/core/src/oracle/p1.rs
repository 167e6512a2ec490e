use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use rayon::prelude::*;

use super::counts::{centralizer_order, check_size, pow_u64};
use super::fp::FpMatrix;
use crate::error::{Error, Result};
use crate::macdonald::hall_littlewood;
use crate::partitions::{compositions, Partition};
use crate::scalars::{Rat, Scalar, Q};
use crate::seriesalg::check_prime;
use crate::symfunc::{Basis, MultiSym, SymFunc};

/// H_λ[X; q] at q = p.
pub fn hall_littlewood_at(lambda: &Partition, p: u32) -> Result<SymFunc> {
    hall_littlewood(lambda)?.substitute(&[(Q, Scalar::int(p as i64))])
}

fn gl_order(n: usize, p: u32) -> Result<u64> {
    centralizer_order(&Partition::row(n), p)
}

fn offsets(sizes: &[usize]) -> Vec<usize> {
    let mut o = vec![0];
    for s in sizes {
        o.push(o.last().expect("nonempty") + s);
    }
    o
}

/// All nilpotent k×k matrices over F_p.
fn nilpotents(k: usize, p: u32) -> Result<Vec<FpMatrix>> {
    let total = pow_u64(p, k * k);
    check_size(total, "nilpotent block enumeration")?;
    Ok((0..total)
        .filter_map(|idx| {
            let mut m = FpMatrix::zero(p, k);
            let mut r = idx;
            for i in 0..k {
                for j in 0..k {
                    m.set(i, j, (r % p as u64) as u32);
                    r /= p as u64;
                }
            }
            m.is_nilpotent().then_some(m)
        })
        .collect())
}

/// C_μ[X, Y] at q = p: sum over pairs (A, B) of nilpotent block upper triangular matrices
/// with equal diagonal blocks of H_{type A}[X] H_{type B}[Y], divided by
/// ∏ |GL_{μ_i}(F_p)| ∏_{i<j} p^{2 μ_i μ_j}.
#[allow(non_snake_case)]
pub fn p1_two_point_Cmu(mu: &[usize], p: u32) -> Result<MultiSym> {
    check_prime(p)?;
    if mu.contains(&0) {
        return Err(Error::Invalid(format!("composition {mu:?} has a zero part")));
    }
    let n: usize = mu.iter().sum();
    let offs = offsets(mu);
    let diag: Vec<Vec<FpMatrix>> = mu.iter().map(|&k| nilpotents(k, p)).collect::<Result<_>>()?;
    let off_slots: Vec<(usize, usize)> = (0..mu.len())
        .flat_map(|i| {
            let offs = &offs;
            (i + 1..mu.len()).flat_map(move |j| {
                (offs[i]..offs[i + 1]).flat_map(move |r| (offs[j]..offs[j + 1]).map(move |c| (r, c)))
            })
        })
        .collect();
    let n_diag: u64 = diag.iter().map(|d| d.len() as u64).product();
    let n_off = pow_u64(p, 2 * off_slots.len());
    let total = n_diag.saturating_mul(n_off);
    check_size(total, "Q_mu enumeration")?;

    let counts: HashMap<(Partition, Partition), u64> = (0..total)
        .into_par_iter()
        .fold(HashMap::new, |mut acc: HashMap<(Partition, Partition), u64>, idx| {
            let mut a = FpMatrix::zero(p, n);
            let mut r = idx;
            for (b, choices) in diag.iter().enumerate() {
                let d = &choices[(r % choices.len() as u64) as usize];
                r /= choices.len() as u64;
                for i in 0..mu[b] {
                    for j in 0..mu[b] {
                        a.set(offs[b] + i, offs[b] + j, d.get(i, j));
                    }
                }
            }
            let mut bm = a.clone();
            for &(i, j) in &off_slots {
                a.set(i, j, (r % p as u64) as u32);
                r /= p as u64;
                bm.set(i, j, (r % p as u64) as u32);
                r /= p as u64;
            }
            let ta = a.nilpotent_type().expect("block triangular with nilpotent diagonal");
            let tb = bm.nilpotent_type().expect("block triangular with nilpotent diagonal");
            *acc.entry((ta, tb)).or_insert(0) += 1;
            acc
        })
        .reduce(HashMap::new, |mut x, y| {
            for (k, v) in y {
                *x.entry(k).or_insert(0) += v;
            }
            x
        });

    let mut norm = BigInt::from(1);
    for &k in mu {
        norm *= gl_order(k, p)?;
    }
    for i in 0..mu.len() {
        for j in i + 1..mu.len() {
            norm *= BigInt::from(p).pow((2 * mu[i] * mu[j]) as u32);
        }
    }
    let mut hl: BTreeMap<Partition, SymFunc> = BTreeMap::new();
    let mut out = MultiSym::zero(2, Basis::M);
    let mut keys: Vec<_> = counts.into_iter().collect();
    keys.sort();
    for ((ta, tb), c) in keys {
        for t in [&ta, &tb] {
            if !hl.contains_key(t) {
                hl.insert(t.clone(), hall_littlewood_at(t, p)?);
            }
        }
        let term = MultiSym::tensor(&[hl[&ta].clone(), hl[&tb].clone()])?;
        out = out.add(&term.scale(&Scalar::int(c as i64)))?;
    }
    Ok(out.scale(&Scalar::from_rat(Rat::new(BigInt::from(1), norm))))
}

/// Strictly increasing d_1 < .. < d_m with d_1 ≥ 0 and Σ d_i μ_i = total.
fn splitting_degrees(mu: &[usize], total: usize) -> Vec<Vec<usize>> {
    fn rec(mu: &[usize], min: usize, rem: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some((&m, rest)) = mu.split_first() else {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        };
        let mut d = min;
        while d * m <= rem {
            cur.push(d);
            rec(rest, d + 1, rem - d * m, cur, out);
            cur.pop();
            d += 1;
        }
    }
    let mut out = Vec::new();
    rec(mu, 0, total, &mut Vec::new(), &mut out);
    out
}

/// t-coefficients of the genus 0 two-point kernel Σ_E t^{−deg E} C_{μ(E)} in bidegree (n, n).
pub fn p1_two_point_kernel(n: usize, p: u32, dmax: usize) -> Result<Vec<MultiSym>> {
    let mut out = vec![MultiSym::zero(2, Basis::M); dmax + 1];
    for mu in compositions(n) {
        let c = p1_two_point_Cmu(&mu, p)?;
        for (dd, slot) in out.iter_mut().enumerate() {
            let k = splitting_degrees(&mu, dd).len();
            if k > 0 {
                *slot = slot.add(&c.scale(&Scalar::int(k as i64)))?;
            }
        }
    }
    Ok(out)
}

// Polynomials over F_p as coefficient vectors without trailing zeros.
type Poly = Vec<u32>;

fn ptrim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn padd(a: &Poly, b: &Poly, p: u32) -> Poly {
    let mut r = vec![0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        r[i] = *x;
    }
    for (i, x) in b.iter().enumerate() {
        r[i] = (r[i] + x) % p;
    }
    ptrim(r)
}

fn pneg(a: &Poly, p: u32) -> Poly {
    a.iter().map(|x| (p - x) % p).collect()
}

fn pmul(a: &Poly, b: &Poly, p: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + x * y) % p;
        }
    }
    ptrim(r)
}

type PMat = Vec<Vec<Poly>>;

fn pmat_mul(a: &PMat, b: &PMat, p: u32) -> PMat {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(Vec::new(), |acc, k| padd(&acc, &pmul(&a[i][k], &b[k][j], p), p)))
                .collect()
        })
        .collect()
}

fn pmat_is_zero(a: &PMat) -> bool {
    a.iter().all(|r| r.iter().all(|x| x.is_empty()))
}

/// Laplace expansion along the first row.
fn pdet(a: &PMat, p: u32) -> Poly {
    let n = a.len();
    if n == 0 {
        return vec![1];
    }
    let mut acc = Vec::new();
    for j in 0..n {
        if a[0][j].is_empty() {
            continue;
        }
        let minor: PMat = a[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = pmul(&a[0][j], &pdet(&minor, p), p);
        acc = padd(&acc, &if j % 2 == 0 { term } else { pneg(&term, p) }, p);
    }
    acc
}

/// Rank over F_p(x) by fraction-free elimination.
fn prank(a: &PMat, p: u32) -> usize {
    let mut m = a.clone();
    let n = m.len();
    let ncols = if n == 0 { 0 } else { m[0].len() };
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..n).find(|&i| !m[i][c].is_empty()) else {
            continue;
        };
        m.swap(r, piv);
        for i in r + 1..n {
            if m[i][c].is_empty() {
                continue;
            }
            let (a_rc, a_ic) = (m[r][c].clone(), m[i][c].clone());
            for k in 0..ncols {
                let x = pmul(&a_rc, &m[i][k], p);
                let y = pmul(&a_ic, &m[r][k], p);
                m[i][k] = padd(&x, &pneg(&y, p), p);
            }
        }
        r += 1;
    }
    r
}

/// Nilpotent type of θ over the function field F_p(x).
fn generic_type(theta: &PMat, p: u32) -> Result<Partition> {
    let n = theta.len();
    let mut parts = Vec::new();
    let mut prev = n;
    let mut pw = theta.clone();
    while prev > 0 {
        let r = prank(&pw, p);
        if r == prev {
            return Err(Error::NotNilpotent);
        }
        parts.push(prev - r);
        prev = r;
        pw = pmat_mul(&pw, theta, p);
    }
    Partition::new(parts)
}

/// Brute-force Ω_λ on P¹ over F_p with one marked point at x = 0, through t^dmax:
/// Σ_E t^{−deg E} / |Aut E| Σ_θ H_{type θ(0)}[X; p], over bundles E = ⊕ O(−d_i)^{μ_i} and
/// nilpotent θ ∈ End E of generic type λ.
pub fn p1_parabolic_omega(lambda: &Partition, p: u32, dmax: usize) -> Result<Vec<SymFunc>> {
    check_prime(p)?;
    let n = lambda.size();
    let mut out = vec![SymFunc::zero(Basis::M); dmax + 1];
    let mut hl: BTreeMap<Partition, SymFunc> = BTreeMap::new();
    for dd in 0..=dmax {
        for mu in compositions(n) {
            for d in splitting_degrees(&mu, dd) {
                let (aut, types) = bundle_endomorphisms(lambda, &mu, &d, p)?;
                let mut s = SymFunc::zero(Basis::M);
                for (ty, c) in types {
                    if !hl.contains_key(&ty) {
                        hl.insert(ty.clone(), hall_littlewood_at(&ty, p)?);
                    }
                    s = s.add(&hl[&ty].scale(&Scalar::int(c as i64)))?;
                }
                let w = Scalar::from_rat(Rat::new(BigInt::from(1), BigInt::from(aut)));
                out[dd] = out[dd].add(&s.scale(&w))?;
            }
        }
    }
    Ok(out)
}

/// |Aut E| and the special-fibre types of nilpotent endomorphisms of generic type λ.
fn bundle_endomorphisms(
    lambda: &Partition,
    mu: &[usize],
    d: &[usize],
    p: u32,
) -> Result<(u64, BTreeMap<Partition, u64>)> {
    let n: usize = mu.iter().sum();
    let offs = offsets(mu);
    // (row, col, degree) for every free coefficient
    let mut slots = Vec::new();
    for i in 0..mu.len() {
        for j in i..mu.len() {
            for r in offs[i]..offs[i + 1] {
                for c in offs[j]..offs[j + 1] {
                    for e in 0..=(d[j] - d[i]) {
                        slots.push((r, c, e));
                    }
                }
            }
        }
    }
    let total = pow_u64(p, slots.len());
    check_size(total, "End(E) enumeration")?;
    let (aut, types) = (0..total)
        .into_par_iter()
        .fold(
            || (0u64, BTreeMap::new()),
            |(mut aut, mut types): (u64, BTreeMap<Partition, u64>), idx| {
                let mut theta: PMat = vec![vec![Vec::new(); n]; n];
                let mut r = idx;
                for &(i, j, e) in &slots {
                    let c = (r % p as u64) as u32;
                    r /= p as u64;
                    if c != 0 {
                        let entry = &mut theta[i][j];
                        if entry.len() <= e {
                            entry.resize(e + 1, 0);
                        }
                        entry[e] = c;
                    }
                }
                let det = pdet(&theta, p);
                if det.len() == 1 {
                    aut += 1;
                }
                let pw = (1..n).fold(theta.clone(), |acc, _| pmat_mul(&acc, &theta, p));
                if n > 0 && pmat_is_zero(&pw) && generic_type(&theta, p).ok().as_ref() == Some(lambda) {
                    let mut at0 = FpMatrix::zero(p, n);
                    for i in 0..n {
                        for j in 0..n {
                            at0.set(i, j, theta[i][j].first().copied().unwrap_or(0));
                        }
                    }
                    let ty = at0.nilpotent_type().expect("special fibre of a nilpotent matrix");
                    *types.entry(ty).or_insert(0) += 1;
                }
                (aut, types)
            },
        )
        .reduce(
            || (0u64, BTreeMap::new()),
            |(a1, mut t1), (a2, t2)| {
                for (k, v) in t2 {
                    *t1.entry(k).or_insert(0) += v;
                }
                (a1 + a2, t1)
            },
        );
    if n == 0 {
        return Ok((1, BTreeMap::from([(Partition::empty(), 1)])));
    }
    Ok((aut, types))
}
