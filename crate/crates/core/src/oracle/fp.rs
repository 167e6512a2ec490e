use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::partitions::Partition;

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    let a = a % p;
    (1..p)
        .find(|&b| a * b % p == 1)
        .expect("nonzero element of a prime field")
}

/// Square matrix over F_p, entries in 0..p.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: u32,
    n: usize,
    a: Vec<u32>,
}

impl FpMatrix {
    pub fn zero(p: u32, n: usize) -> Self {
        FpMatrix {
            p,
            n,
            a: vec![0; n * n],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zero(p, n);
        for i in 0..n {
            m.a[i * n + i] = 1 % p;
        }
        m
    }

    /// Row-major entries, reduced mod p.
    pub fn from_entries(p: u32, n: usize, entries: &[i64]) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::SizeMismatch(format!(
                "{} entries for a {n}x{n} matrix",
                entries.len()
            )));
        }
        let a = entries.iter().map(|&x| x.rem_euclid(p as i64) as u32).collect();
        Ok(FpMatrix { p, n, a })
    }

    /// N_λ: blocks of sizes λ_1, λ_2, .. with [Id; 0] in block position (i, i+1).
    pub fn standard_nilpotent(p: u32, lambda: &Partition) -> Self {
        let parts = lambda.parts();
        let n = lambda.size();
        let mut m = Self::zero(p, n);
        let mut off = 0;
        for i in 0..parts.len().saturating_sub(1) {
            let next = off + parts[i];
            for k in 0..parts[i + 1] {
                m.set(off + k, next + k, 1);
            }
            off = next;
        }
        m
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.a[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.a[i * self.n + j] = v % self.p;
    }

    pub fn entries(&self) -> &[u32] {
        &self.a
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, o: &FpMatrix) -> FpMatrix {
        let n = self.n;
        let mut r = Self::zero(self.p, n);
        for i in 0..n {
            for k in 0..n {
                let x = self.a[i * n + k];
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    r.a[i * n + j] = (r.a[i * n + j] + x * o.a[k * n + j]) % self.p;
                }
            }
        }
        r
    }

    pub fn sub(&self, o: &FpMatrix) -> FpMatrix {
        let a = self
            .a
            .iter()
            .zip(&o.a)
            .map(|(x, y)| (x + self.p - y) % self.p)
            .collect();
        FpMatrix {
            p: self.p,
            n: self.n,
            a,
        }
    }

    pub fn pow(&self, e: usize) -> FpMatrix {
        (0..e).fold(Self::identity(self.p, self.n), |acc, _| acc.mul(self))
    }

    pub fn rank(&self) -> usize {
        if self.n == 0 {
            return 0;
        }
        rank_rows(self.p, self.n, self.a.chunks(self.n).map(|r| r.to_vec()).collect())
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.n
    }

    pub fn is_nilpotent(&self) -> bool {
        self.pow(self.n).is_zero()
    }

    /// λ_i = rank θ^{i−1} − rank θ^i.
    pub fn nilpotent_type(&self) -> Result<Partition> {
        if !self.is_nilpotent() {
            return Err(Error::NotNilpotent);
        }
        let mut parts = Vec::new();
        let mut prev = self.n;
        let mut pw = self.clone();
        while prev > 0 {
            let r = pw.rank();
            parts.push(prev - r);
            prev = r;
            pw = pw.mul(self);
        }
        Partition::new(parts)
    }

    /// Action on a vector encoded as Σ v_k p^k.
    pub fn apply(&self, v: usize) -> usize {
        let x = decode(self.p, self.n, v);
        let mut y = vec![0u32; self.n];
        for i in 0..self.n {
            y[i] = (0..self.n).map(|j| self.a[i * self.n + j] * x[j]).sum::<u32>() % self.p;
        }
        encode(self.p, &y)
    }
}

/// Rank by Gaussian elimination over F_p.
pub(crate) fn rank_rows(p: u32, ncols: usize, mut rows: Vec<Vec<u32>>) -> usize {
    rref_in_place(p, ncols, &mut rows)
}

/// Reduced row echelon form; returns the rank and leaves the nonzero rows first.
pub(crate) fn rref_in_place(p: u32, ncols: usize, rows: &mut [Vec<u32>]) -> usize {
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for k in 0..ncols {
                    rows[i][k] = (rows[i][k] + (p - f) * rows[r][k]) % p;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Basis of the solution space of M·x = 0 (M given by rows over `ncols` unknowns).
pub(crate) fn nullspace(p: u32, ncols: usize, mut rows: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    let r = rref_in_place(p, ncols, &mut rows);
    let mut pivots = Vec::new();
    for row in rows.iter().take(r) {
        pivots.push(row.iter().position(|&x| x != 0).expect("nonzero pivot row"));
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u32; ncols];
        v[free] = 1;
        for (row, &pc) in rows.iter().zip(&pivots) {
            v[pc] = (p - row[free]) % p;
        }
        basis.push(v);
    }
    basis
}

pub(crate) fn decode(p: u32, n: usize, mut v: usize) -> Vec<u32> {
    let mut x = vec![0u32; n];
    for slot in x.iter_mut() {
        *slot = (v % p as usize) as u32;
        v /= p as usize;
    }
    x
}

pub(crate) fn encode(p: u32, x: &[u32]) -> usize {
    x.iter().rev().fold(0usize, |acc, &c| acc * p as usize + c as usize)
}

/// Largest ambient space handled by the bitmask subspace enumeration.
pub const MAX_POINTS: usize = 128;

/// Subspaces of F_p^n as bitmasks over the p^n encoded vectors.
pub(crate) struct Space {
    pub p: u32,
    pub n: usize,
    pub size: usize,
    add: Vec<usize>,
    smul: Vec<usize>,
}

impl Space {
    pub fn new(p: u32, n: usize) -> Result<Space> {
        let size = (p as usize).checked_pow(n as u32).filter(|&s| s <= MAX_POINTS);
        let Some(size) = size else {
            return Err(Error::TooLarge(format!("F_{p}^{n} has more than {MAX_POINTS} vectors")));
        };
        let mut add = vec![0; size * size];
        let mut smul = vec![0; size * p as usize];
        for u in 0..size {
            let xu = decode(p, n, u);
            for v in 0..size {
                let xv = decode(p, n, v);
                let s: Vec<u32> = xu.iter().zip(&xv).map(|(a, b)| (a + b) % p).collect();
                add[u * size + v] = encode(p, &s);
            }
            for c in 0..p {
                let s: Vec<u32> = xu.iter().map(|a| a * c % p).collect();
                smul[u * p as usize + c as usize] = encode(p, &s);
            }
        }
        Ok(Space { p, n, size, add, smul })
    }

    fn members(mask: u128) -> impl Iterator<Item = usize> {
        (0..128).filter(move |i| mask >> i & 1 == 1)
    }

    /// Span of `mask` together with `v`.
    pub fn extend(&self, mask: u128, v: usize) -> u128 {
        let mut out = mask;
        for w in Self::members(mask) {
            for c in 1..self.p {
                out |= 1u128 << self.add[w * self.size + self.smul[v * self.p as usize + c as usize]];
            }
        }
        out
    }

    pub fn span(&self, vs: impl IntoIterator<Item = usize>) -> u128 {
        vs.into_iter()
            .fold(1u128, |m, v| if m >> v & 1 == 1 { m } else { self.extend(m, v) })
    }

    pub fn dim(&self, mask: u128) -> usize {
        let mut c = mask.count_ones() as usize;
        let mut d = 0;
        while c > 1 {
            c /= self.p as usize;
            d += 1;
        }
        d
    }

    pub fn full(&self) -> u128 {
        if self.size == 128 {
            u128::MAX
        } else {
            (1u128 << self.size) - 1
        }
    }

    /// All subspaces, grouped by dimension.
    pub fn subspaces(&self) -> Vec<Vec<u128>> {
        let mut layers: Vec<Vec<u128>> = vec![vec![1u128]];
        for _ in 0..self.n {
            let mut seen = HashSet::new();
            for &m in layers.last().expect("nonempty") {
                for v in 0..self.size {
                    if m >> v & 1 == 0 {
                        seen.insert(self.extend(m, v));
                    }
                }
            }
            let mut next: Vec<u128> = seen.into_iter().collect();
            next.sort_unstable();
            layers.push(next);
        }
        layers
    }

    /// Image of a subspace under a linear map given by its action table.
    pub fn image(&self, table: &[usize], mask: u128) -> u128 {
        self.span(Self::members(mask).map(|v| table[v]))
    }

    pub fn is_invariant(&self, table: &[usize], mask: u128) -> bool {
        Self::members(mask).all(|v| mask >> table[v] & 1 == 1)
    }

    pub fn sum(&self, a: u128, b: u128) -> u128 {
        Self::members(b).fold(a, |m, v| if m >> v & 1 == 1 { m } else { self.extend(m, v) })
    }

    pub fn table(&self, m: &FpMatrix) -> Vec<usize> {
        (0..self.size).map(|v| m.apply(v)).collect()
    }

    /// Type of θ restricted to the invariant subspace W.
    pub fn restricted_type(&self, table: &[usize], w: u128) -> Result<Partition> {
        let mut dims = vec![self.dim(w)];
        let mut cur = w;
        while *dims.last().expect("nonempty") > 0 {
            cur = self.image(table, cur);
            dims.push(self.dim(cur));
        }
        Partition::new(dims.windows(2).map(|d| d[0] - d[1]).collect())
    }

    /// Type of θ on V/W.
    pub fn quotient_type(&self, table: &[usize], w: u128) -> Result<Partition> {
        let dw = self.dim(w);
        let mut dims = vec![self.n - dw];
        let mut cur = self.full();
        while *dims.last().expect("nonempty") > 0 {
            cur = self.image(table, cur);
            dims.push(self.dim(self.sum(cur, w)) - dw);
        }
        Partition::new(dims.windows(2).map(|d| d[0] - d[1]).collect())
    }
}
