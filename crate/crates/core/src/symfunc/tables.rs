//! Per-degree transition matrices between the m basis and the h, e, p, s bases.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partitions::{enumerate_partitions, Partition};
use crate::scalars::Rat;

/// Largest degree for which transition tables are built.
pub const DEGREE_CAP: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    M,
    H,
    E,
    P,
    S,
}

impl Basis {
    pub fn name(self) -> &'static str {
        match self {
            Basis::M => "m",
            Basis::H => "h",
            Basis::E => "e",
            Basis::P => "p",
            Basis::S => "s",
        }
    }

    pub fn parse(s: &str) -> Result<Basis> {
        match s {
            "m" => Ok(Basis::M),
            "h" => Ok(Basis::H),
            "e" => Ok(Basis::E),
            "p" => Ok(Basis::P),
            "s" => Ok(Basis::S),
            _ => Err(Error::Parse(format!("unknown basis {:?}", s))),
        }
    }

    fn slot(self) -> usize {
        self as usize
    }
}

/// Sparse row: (column index, entry).
pub type Row = Vec<(usize, Rat)>;

pub struct DegreeTables {
    pub parts: Vec<Partition>,
    pub index: HashMap<Partition, usize>,
    /// to_m[b][λ] expresses b_λ in the m basis.
    to_m: [Vec<Row>; 5],
    /// from_m[b][μ] expresses m_μ in the b basis.
    from_m: [Vec<Row>; 5],
}

impl DegreeTables {
    pub fn to_m(&self, b: Basis) -> &[Row] {
        &self.to_m[b.slot()]
    }

    pub fn from_m(&self, b: Basis) -> &[Row] {
        &self.from_m[b.slot()]
    }

    pub fn idx(&self, p: &Partition) -> usize {
        self.index[p]
    }

    fn build(n: usize) -> DegreeTables {
        let parts = enumerate_partitions(n);
        let index: HashMap<Partition, usize> = parts.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let np = parts.len();
        let dense = |f: &dyn Fn(&Partition, &Partition) -> BigInt| -> Vec<Vec<Rat>> {
            parts
                .iter()
                .map(|l| parts.iter().map(|m| Rat::from_integer(f(l, m))).collect())
                .collect()
        };
        let ident: Vec<Vec<Rat>> = (0..np)
            .map(|i| (0..np).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
            .collect();
        let p2m = dense(&|l, m| BigInt::from(count_bin_assignments(l.parts(), m.parts())));
        let h2m = dense(&|l, m| BigInt::from(count_matrices(l.parts(), m.parts(), false)));
        let e2m = dense(&|l, m| BigInt::from(count_matrices(l.parts(), m.parts(), true)));
        let s2h = jacobi_trudi(&parts, &index);
        let s2m = matmul(&s2h, &h2m);
        let mats = [ident.clone(), h2m, e2m, p2m, s2m];
        let to_m: Vec<Vec<Row>> = mats.iter().map(|m| sparse(m)).collect();
        let from_m: Vec<Vec<Row>> = mats.iter().map(|m| sparse(&invert(m))).collect();
        DegreeTables {
            parts,
            index,
            to_m: to_m.try_into().ok().unwrap(),
            from_m: from_m.try_into().ok().unwrap(),
        }
    }
}

fn cache() -> &'static Mutex<HashMap<usize, Arc<DegreeTables>>> {
    static C: OnceLock<Mutex<HashMap<usize, Arc<DegreeTables>>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Transition tables for degree n, built once and shared.
pub fn tables(n: usize) -> Result<Arc<DegreeTables>> {
    if n > DEGREE_CAP {
        return Err(Error::DegreeCapExceeded(n, DEGREE_CAP));
    }
    if let Some(t) = cache().lock().unwrap().get(&n) {
        return Ok(t.clone());
    }
    let t = Arc::new(DegreeTables::build(n));
    Ok(cache().lock().unwrap().entry(n).or_insert(t).clone())
}

fn sparse(m: &[Vec<Rat>]) -> Vec<Row> {
    m.iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(j, x)| (j, x.clone()))
                .collect()
        })
        .collect()
}

fn matmul(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = b[0].len();
    a.iter()
        .map(|r| {
            (0..n)
                .map(|j| {
                    r.iter()
                        .zip(b.iter())
                        .fold(Rat::zero(), |acc, (x, row)| acc + x * &row[j])
                })
                .collect()
        })
        .collect()
}

/// Exact inverse by Gauss-Jordan elimination.
fn invert(m: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let piv = (c..n)
            .find(|&r| !a[r][c].is_zero())
            .expect("transition matrix is invertible");
        a.swap(c, piv);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                let pivot_row = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row.iter()) {
                    *x -= &f * y;
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// Number of ways to drop the parts of λ into bins of capacities μ, filling each bin exactly.
fn count_bin_assignments(lambda: &[usize], mu: &[usize]) -> u64 {
    fn rec(lambda: &[usize], bins: Vec<usize>, memo: &mut HashMap<(usize, Vec<usize>), u64>) -> u64 {
        let Some((&p, rest)) = lambda.split_first() else {
            return bins.iter().all(|&b| b == 0) as u64;
        };
        let key = (lambda.len(), bins.clone());
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let mut total = 0;
        for j in 0..bins.len() {
            if bins[j] >= p {
                let mut b = bins.clone();
                b[j] -= p;
                b.sort_unstable();
                total += rec(rest, b, memo);
            }
        }
        memo.insert(key, total);
        total
    }
    let mut bins = mu.to_vec();
    bins.sort_unstable();
    rec(lambda, bins, &mut HashMap::new())
}

/// Number of nonnegative integer (or 0-1) matrices with row sums λ and column sums μ.
fn count_matrices(lambda: &[usize], mu: &[usize], binary: bool) -> u64 {
    fn rows(lambda: &[usize], cols: Vec<usize>, binary: bool, memo: &mut HashMap<(usize, Vec<usize>), u64>) -> u64 {
        let Some((&r, rest)) = lambda.split_first() else {
            return cols.iter().all(|&c| c == 0) as u64;
        };
        let key = (lambda.len(), cols.clone());
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let mut total = 0;
        let mut cur = cols.clone();
        fill(0, r, &mut cur, binary, &mut |c: &[usize]| {
            let mut c = c.to_vec();
            c.sort_unstable();
            total += rows(rest, c, binary, memo);
        });
        memo.insert(key, total);
        total
    }
    fn fill(col: usize, left: usize, cols: &mut Vec<usize>, binary: bool, f: &mut dyn FnMut(&[usize])) {
        if col == cols.len() {
            if left == 0 {
                f(cols);
            }
            return;
        }
        let cap = if binary { 1 } else { left };
        for v in 0..=cap.min(left).min(cols[col]) {
            cols[col] -= v;
            fill(col + 1, left - v, cols, binary, f);
            cols[col] += v;
        }
    }
    let mut cols = mu.to_vec();
    cols.sort_unstable();
    rows(lambda, cols, binary, &mut HashMap::new())
}

/// s_λ in the h basis: det(h_{λ_i − i + j}).
fn jacobi_trudi(parts: &[Partition], index: &HashMap<Partition, usize>) -> Vec<Vec<Rat>> {
    let np = parts.len();
    let mut out = vec![vec![Rat::zero(); np]; np];
    for (r, lambda) in parts.iter().enumerate() {
        let l = lambda.len();
        let mut perm: Vec<usize> = (0..l).collect();
        permutations(&mut perm, 0, &mut |p: &[usize], sign: i64| {
            let mut h = Vec::with_capacity(l);
            for (i, &j) in p.iter().enumerate() {
                let d = lambda.part(i) as i64 - i as i64 + j as i64;
                if d < 0 {
                    return;
                }
                if d > 0 {
                    h.push(d as usize);
                }
            }
            let nu = Partition::from_unsorted(h);
            out[r][index[&nu]] += Rat::from_integer(BigInt::from(sign));
        });
    }
    out
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize], i64)) {
    fn rec(p: &mut Vec<usize>, k: usize, sign: i64, f: &mut dyn FnMut(&[usize], i64)) {
        if k == p.len() {
            f(p, sign);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(p, k + 1, if i == k { sign } else { -sign }, f);
            p.swap(k, i);
        }
    }
    rec(p, k, 1, f)
}
