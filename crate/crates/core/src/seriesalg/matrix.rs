use std::fmt;

use crate::error::{Error, Result};
use crate::partitions::Partition;

use super::series::{check_prime, Order, TSeries};

/// Dense matrix of truncated series over F_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TSMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    e: Vec<TSeries>,
}

impl TSMatrix {
    pub fn from_rows(p: u32, rows: Vec<Vec<TSeries>>) -> Result<Self> {
        check_prime(p)?;
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::SizeMismatch("ragged matrix rows".into()));
        }
        let e: Vec<TSeries> = rows.into_iter().flatten().collect();
        if e.iter().any(|s| s.p() != p) {
            return Err(Error::Invalid("entry over a different field".into()));
        }
        Ok(TSMatrix { p, rows: r, cols: c, e })
    }

    /// Matrix of polynomials given by coefficient lists, all at precision `prec`.
    pub fn from_coeffs(p: u32, prec: usize, rows: &[Vec<Vec<i64>>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|row| row.iter().map(|c| TSeries::from_coeffs(p, c, prec)).collect())
            .collect();
        Self::from_rows(p, rows)
    }

    pub fn zero(p: u32, rows: usize, cols: usize, prec: usize) -> Self {
        TSMatrix {
            p,
            rows,
            cols,
            e: vec![TSeries::zero(p, prec); rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize, prec: usize) -> Self {
        let mut m = Self::zero(p, n, n, prec);
        for i in 0..n {
            m.e[i * n + i] = TSeries::one(p, prec);
        }
        m
    }

    /// The standard nilpotent matrix N_λ: blocks N_{i,i+1} = [Id; 0].
    pub fn standard_nilpotent(p: u32, lambda: &Partition, prec: usize) -> Self {
        let n = lambda.size();
        let mut m = Self::zero(p, n, n, prec);
        let offs = block_offsets(lambda.parts());
        for i in 0..lambda.len().saturating_sub(1) {
            for k in 0..lambda.parts()[i + 1] {
                m.e[(offs[i] + k) * n + offs[i + 1] + k] = TSeries::one(p, prec);
            }
        }
        m
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &TSeries {
        &self.e[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: TSeries) {
        self.e[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[TSeries] {
        &self.e
    }

    /// Smallest precision among the entries.
    pub fn precision(&self) -> i32 {
        self.e.iter().map(|s| s.precision()).min().unwrap_or(i32::MAX)
    }

    /// True when every entry vanishes to its precision.
    pub fn is_zero(&self) -> bool {
        self.e.iter().all(|s| s.is_zero())
    }

    /// Largest pole order among the entries (0 if all entries are integral).
    pub fn pole_order(&self) -> i32 {
        self.e
            .iter()
            .filter_map(|s| s.order().exact())
            .map(|k| (-k).max(0))
            .max()
            .unwrap_or(0)
    }

    /// Highest known exponent among the entries.
    pub fn degree(&self) -> i32 {
        self.e.iter().filter_map(|s| s.degree()).max().unwrap_or(0)
    }

    pub fn map(&self, f: impl Fn(&TSeries) -> TSeries) -> TSMatrix {
        TSMatrix {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            e: self.e.iter().map(f).collect(),
        }
    }

    pub fn truncate(&self, prec: i32) -> TSMatrix {
        self.map(|s| s.truncate(prec))
    }

    /// Regard the entries as exact polynomials and re-truncate at `prec`.
    pub fn lift(&self, prec: i32) -> TSMatrix {
        self.map(|s| s.lift(prec))
    }

    /// Specialization θ(0) over F_p, as a matrix of precision 1.
    pub fn at_zero(&self) -> Result<TSMatrix> {
        let e = self.e.iter().map(|s| s.at_zero()).collect::<Result<_>>()?;
        Ok(TSMatrix {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            e,
        })
    }

    fn check_same(&self, o: &TSMatrix, what: &str) -> Result<()> {
        if self.p != o.p || self.rows != o.rows || self.cols != o.cols {
            return Err(Error::SizeMismatch(format!(
                "{what}: {}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &TSMatrix) -> Result<TSMatrix> {
        self.check_same(o, "add")?;
        let e = self.e.iter().zip(&o.e).map(|(a, b)| a + b).collect();
        Ok(TSMatrix {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            e,
        })
    }

    pub fn sub(&self, o: &TSMatrix) -> Result<TSMatrix> {
        self.check_same(o, "sub")?;
        let e = self.e.iter().zip(&o.e).map(|(a, b)| a - b).collect();
        Ok(TSMatrix {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            e,
        })
    }

    pub fn mul(&self, o: &TSMatrix) -> Result<TSMatrix> {
        if self.p != o.p || self.cols != o.rows {
            return Err(Error::SizeMismatch(format!(
                "mul: {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let prec = self.precision().min(o.precision()).max(0) as usize;
        let mut out = Self::zero(self.p, self.rows, o.cols, prec);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc: Option<TSeries> = None;
                for k in 0..self.cols {
                    let t = self.get(i, k) * o.get(k, j);
                    acc = Some(match acc {
                        None => t,
                        Some(a) => &a + &t,
                    });
                }
                if let Some(a) = acc {
                    out.set(i, j, a);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: usize) -> Result<TSMatrix> {
        if !self.is_square() {
            return Err(Error::SizeMismatch("power of a non-square matrix".into()));
        }
        let mut acc = Self::identity(self.p, self.rows, self.precision().max(0) as usize);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn transpose(&self) -> TSMatrix {
        let mut e = Vec::with_capacity(self.e.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                e.push(self.get(i, j).clone());
            }
        }
        TSMatrix {
            p: self.p,
            rows: self.cols,
            cols: self.rows,
            e,
        }
    }

    /// Submatrix rows r0..r1, columns c0..c1.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> TSMatrix {
        let mut e = Vec::with_capacity((r1 - r0) * (c1 - c0));
        for i in r0..r1 {
            for j in c0..c1 {
                e.push(self.get(i, j).clone());
            }
        }
        TSMatrix {
            p: self.p,
            rows: r1 - r0,
            cols: c1 - c0,
            e,
        }
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &TSMatrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    /// Block-diagonal matrix with the given square blocks.
    pub fn block_diag(p: u32, blocks: &[TSMatrix], prec: usize) -> TSMatrix {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let mut m = Self::zero(p, n, n, prec);
        let mut o = 0;
        for b in blocks {
            m.set_block(o, o, b);
            o += b.rows;
        }
        m
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.e.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.e.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row_dst -= f * row_src
    pub fn row_axpy(&mut self, dst: usize, src: usize, f: &TSeries) {
        for j in 0..self.cols {
            let v = self.get(dst, j) - &(f * self.get(src, j));
            self.set(dst, j, v);
        }
    }

    /// col_dst -= col_src * f
    pub fn col_axpy(&mut self, dst: usize, src: usize, f: &TSeries) {
        for i in 0..self.rows {
            let v = self.get(i, dst) - &(self.get(i, src) * f);
            self.set(i, dst, v);
        }
    }

    pub fn scale_row(&mut self, i: usize, f: &TSeries) {
        for j in 0..self.cols {
            let v = f * self.get(i, j);
            self.set(i, j, v);
        }
    }

    /// Determinant by cofactor expansion (exact in precision tracking, meant for small n).
    pub fn det(&self) -> Result<TSeries> {
        if !self.is_square() {
            return Err(Error::SizeMismatch("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let prec = self.precision().max(0) as usize;
        if n == 0 {
            return Ok(TSeries::one(self.p, prec));
        }
        if n == 1 {
            return Ok(self.get(0, 0).clone());
        }
        let mut acc = TSeries::zero(self.p, i32::MAX as usize / 4);
        for j in 0..n {
            let minor = self.minor(0, j);
            let t = self.get(0, j) * &minor.det()?;
            acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn minor(&self, r: usize, c: usize) -> TSMatrix {
        let mut e = Vec::new();
        for i in (0..self.rows).filter(|&i| i != r) {
            for j in (0..self.cols).filter(|&j| j != c) {
                e.push(self.get(i, j).clone());
            }
        }
        TSMatrix {
            p: self.p,
            rows: self.rows - 1,
            cols: self.cols - 1,
            e,
        }
    }

    /// Inverse over the Laurent series field by Gauss-Jordan with minimal-order pivots.
    pub fn inverse(&self) -> Result<TSMatrix> {
        if !self.is_square() {
            return Err(Error::SizeMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(self.p, n, self.precision().max(0) as usize);
        for c in 0..n {
            let cands: Vec<&TSeries> = (c..n).map(|i| a.get(i, c)).collect();
            let Some(k) = select_pivot(&cands)? else {
                return Err(Error::SingularSystem);
            };
            a.swap_rows(c, c + k);
            inv.swap_rows(c, c + k);
            let piv_inv = a.get(c, c).inv()?;
            a.scale_row(c, &piv_inv);
            inv.scale_row(c, &piv_inv);
            for i in (0..n).filter(|&i| i != c) {
                let f = a.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                a.row_axpy(i, c, &f);
                inv.row_axpy(i, c, &f);
            }
        }
        Ok(inv)
    }

    /// Parse `0,x;0,0 @p=2,m=4`: rows separated by `;`, entries by `,`.
    pub fn parse(s: &str) -> Result<TSMatrix> {
        let (body, opts) = s
            .split_once('@')
            .ok_or_else(|| Error::Parse("missing '@p=..,m=..'".into()))?;
        let (mut p, mut m) = (None, None);
        for kv in opts.split(',') {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad option '{kv}'")))?;
            let v: usize = v
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad value in '{kv}'")))?;
            match k.trim() {
                "p" => p = Some(v as u32),
                "m" => m = Some(v),
                other => return Err(Error::Parse(format!("unknown option '{other}'"))),
            }
        }
        let p = p.ok_or_else(|| Error::Parse("missing p".into()))?;
        let m = m.ok_or_else(|| Error::Parse("missing m".into()))?;
        check_prime(p)?;
        if m == 0 {
            return Err(Error::Invalid("precision must be at least 1".into()));
        }
        let rows = body
            .trim()
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|x| TSeries::parse(x, p, m))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(p, rows)
    }

    /// Inverse of [`TSMatrix::parse`] (uses the smallest entry precision).
    pub fn to_text(&self) -> String {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j).to_poly_text())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        format!("{} @p={},m={}", rows.join(";"), self.p, self.precision().max(0))
    }
}

impl fmt::Display for TSMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_poly_text()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "over F_{} mod x^{}", self.p, self.precision())
    }
}

pub(crate) fn block_offsets(sizes: &[usize]) -> Vec<usize> {
    let mut offs = vec![0];
    for &s in sizes {
        offs.push(offs.last().unwrap() + s);
    }
    offs
}

/// Index of a candidate of minimal certified order.
///
/// Returns `None` when every candidate vanishes to precision, and an error when a
/// vanishing candidate could still have smaller order than the best certified one.
pub(crate) fn select_pivot(cands: &[&TSeries]) -> Result<Option<usize>> {
    let mut best: Option<(usize, i32)> = None;
    for (i, s) in cands.iter().enumerate() {
        if let Order::Exact(k) = s.order() {
            if best.is_none_or(|(_, b)| k < b) {
                best = Some((i, k));
            }
        }
    }
    let Some((i, k)) = best else { return Ok(None) };
    for s in cands {
        if let Order::AtLeast(b) = s.order() {
            if b < k {
                return Err(Error::InsufficientPrecision((k + 1) as usize));
            }
        }
    }
    Ok(Some(i))
}
