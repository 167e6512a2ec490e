use crate::error::{Error, Result};
use crate::partitions::Partition;

use super::matrix::{block_offsets, select_pivot, TSMatrix};
use super::series::{Order, TSeries};

#[derive(Clone, Debug)]
pub struct HermiteForm {
    /// Invertible over F_p[[x]].
    pub g: TSMatrix,
    /// g·M, upper triangular.
    pub m: TSMatrix,
    pub orders: Vec<Order>,
}

#[derive(Clone, Debug)]
pub struct SmithForm {
    pub g1: TSMatrix,
    /// g1·M·g2, diagonal.
    pub d: TSMatrix,
    pub g2: TSMatrix,
    /// Weakly increasing; trailing `AtLeast` entries vanish to precision.
    pub orders: Vec<Order>,
}

impl SmithForm {
    /// Rank over the fraction field: number of certified invariant factors.
    pub fn rank(&self) -> usize {
        self.orders.iter().filter(|o| o.is_exact()).count()
    }
}

fn identity_like(m: &TSMatrix, n: usize) -> TSMatrix {
    TSMatrix::identity(m.p(), n, m.precision().max(0) as usize)
}

fn min_bound(it: impl Iterator<Item = i32>) -> i32 {
    it.min().unwrap_or(i32::MAX)
}

/// Row reduction g·M upper triangular, pivoting on minimal order in each column.
pub fn hermite_form(m: &TSMatrix) -> Result<HermiteForm> {
    let (r, c) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut g = identity_like(m, r);
    let mut orders = Vec::new();
    for j in 0..r.min(c) {
        let cands: Vec<&TSeries> = (j..r).map(|i| a.get(i, j)).collect();
        match select_pivot(&cands)? {
            None => {
                orders.push(Order::AtLeast(min_bound(cands.iter().map(|s| s.precision()))));
            }
            Some(k) => {
                a.swap_rows(j, j + k);
                g.swap_rows(j, j + k);
                let piv_inv = a.get(j, j).inv()?;
                for i in j + 1..r {
                    if a.get(i, j).is_zero() {
                        continue;
                    }
                    let f = a.get(i, j) * &piv_inv;
                    a.row_axpy(i, j, &f);
                    g.row_axpy(i, j, &f);
                }
                orders.push(a.get(j, j).order());
            }
        }
    }
    Ok(HermiteForm { g, m: a, orders })
}

/// g1·M·g2 diagonal with weakly increasing orders.
pub fn smith_form(m: &TSMatrix) -> Result<SmithForm> {
    let (r, c) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut g1 = identity_like(m, r);
    let mut g2 = identity_like(m, c);
    let mut orders = Vec::new();
    for t in 0..r.min(c) {
        let mut cells = Vec::new();
        let mut cands = Vec::new();
        for i in t..r {
            for j in t..c {
                cells.push((i, j));
                cands.push(a.get(i, j));
            }
        }
        let Some(k) = select_pivot(&cands)? else {
            let b = min_bound(cands.iter().map(|s| s.precision()));
            orders.extend(std::iter::repeat_n(Order::AtLeast(b), r.min(c) - t));
            break;
        };
        let (pi, pj) = cells[k];
        a.swap_rows(t, pi);
        g1.swap_rows(t, pi);
        a.swap_cols(t, pj);
        g2.swap_cols(t, pj);
        let piv_inv = a.get(t, t).inv()?;
        for i in t + 1..r {
            if !a.get(i, t).is_zero() {
                let f = a.get(i, t) * &piv_inv;
                a.row_axpy(i, t, &f);
                g1.row_axpy(i, t, &f);
            }
        }
        for j in t + 1..c {
            if !a.get(t, j).is_zero() {
                let f = &piv_inv * a.get(t, j);
                a.col_axpy(j, t, &f);
                g2.col_axpy(j, t, &f);
            }
        }
        orders.push(a.get(t, t).order());
    }
    Ok(SmithForm { g1, d: a, g2, orders })
}

fn require_square(theta: &TSMatrix) -> Result<()> {
    if theta.is_square() {
        Ok(())
    } else {
        Err(Error::SizeMismatch(format!(
            "expected a square matrix, got {}x{}",
            theta.rows(),
            theta.cols()
        )))
    }
}

/// Type together with the smallest lower bound among the invariant factors
/// treated as zero (used to certify exact inputs).
pub(crate) fn type_with_bound(theta: &TSMatrix) -> Result<(Partition, i32)> {
    require_square(theta)?;
    let n = theta.rows();
    if n == 0 {
        return Ok((Partition::empty(), i32::MAX));
    }
    let mut bound = i32::MAX;
    let mut kernel_dims = vec![0usize];
    let mut pw = TSMatrix::identity(theta.p(), n, theta.precision().max(0) as usize);
    for _ in 1..=n {
        pw = pw.mul(theta)?;
        let s = smith_form(&pw)?;
        for o in &s.orders {
            if let Order::AtLeast(b) = o {
                bound = bound.min(*b);
            }
        }
        kernel_dims.push(n - s.rank());
    }
    if !pw.is_zero() {
        return Err(Error::NotNilpotent);
    }
    let parts: Vec<usize> = kernel_dims
        .windows(2)
        .map(|w| w[1].saturating_sub(w[0]))
        .filter(|&v| v > 0)
        .collect();
    let ok = kernel_dims.windows(2).all(|w| w[1] >= w[0]) && parts.windows(2).all(|w| w[0] >= w[1]);
    if !ok {
        return Err(Error::InsufficientPrecision(theta.precision().max(0) as usize + 1));
    }
    Ok((Partition::new(parts)?, bound))
}

/// Type λ with λ_i = rank ker θ^i − rank ker θ^(i−1), ranks taken over the fraction field.
pub fn nilpotent_type(theta: &TSMatrix) -> Result<Partition> {
    Ok(type_with_bound(theta)?.0)
}

#[derive(Clone, Debug)]
pub struct KernelForm {
    /// Invertible over F_p[[x]].
    pub g: TSMatrix,
    /// g·θ·g⁻¹, block upper triangular with upper-triangular superdiagonal blocks.
    pub theta: TSMatrix,
    /// Block sizes, equal to the type.
    pub blocks: Partition,
    /// Diagonal orders of each superdiagonal block θ_{i,i+1}.
    pub pivots: Vec<Vec<Order>>,
}

impl KernelForm {
    /// All superdiagonal pivots are units, i.e. θ is conjugate to N_λ over F_p[[x]].
    pub fn has_unit_pivots(&self) -> bool {
        self.pivots.iter().flatten().all(|o| *o == Order::Exact(0))
    }

    pub fn block(&self, i: usize, j: usize) -> TSMatrix {
        let offs = block_offsets(self.blocks.parts());
        self.theta.block(offs[i], offs[i + 1], offs[j], offs[j + 1])
    }
}

/// P ∈ GL_n(R) whose leading columns span ker θ, ker θ², ...; returns P and the block sizes.
fn adapted_basis(theta: &TSMatrix) -> Result<(TSMatrix, Vec<usize>)> {
    let n = theta.rows();
    let prec = theta.precision().max(0) as usize;
    if n == 0 {
        return Ok((TSMatrix::identity(theta.p(), 0, prec), vec![]));
    }
    let s = smith_form(theta)?;
    let rank = s.rank();
    let k = n - rank;
    if k == 0 {
        return Err(Error::NotNilpotent);
    }
    let mut p1 = s.g2.clone();
    // kernel columns first
    let order: Vec<usize> = (rank..n).chain(0..rank).collect();
    let mut cols = TSMatrix::zero(theta.p(), n, n, prec);
    for (dst, &src) in order.iter().enumerate() {
        cols.set_block(0, dst, &p1.block(0, n, src, src + 1));
    }
    p1 = cols;
    let t1 = p1.inverse()?.mul(theta)?.mul(&p1)?;
    let b = t1.block(k, n, k, n);
    let (q, rest) = adapted_basis(&b)?;
    let mut blocks = vec![k];
    blocks.extend(rest);
    if blocks.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InsufficientPrecision(prec + 1));
    }
    let lift = TSMatrix::block_diag(theta.p(), &[TSMatrix::identity(theta.p(), k, prec), q], prec);
    Ok((p1.mul(&lift)?, blocks))
}

/// Conjugate θ into strong kernel form.
pub fn kernel_form(theta: &TSMatrix) -> Result<KernelForm> {
    require_square(theta)?;
    let p = theta.p();
    let prec = theta.precision().max(0) as usize;
    let (pm, blocks) = adapted_basis(theta)?;
    let g0 = pm.inverse()?;
    let t0 = g0.mul(theta)?.mul(&pm)?;
    let offs = block_offsets(&blocks);
    let m = blocks.len();
    let mut gs: Vec<TSMatrix> = blocks.iter().map(|&b| TSMatrix::identity(p, b, prec)).collect();
    let mut ginvs = gs.clone();
    let mut pivots = vec![Vec::new(); m.saturating_sub(1)];
    for i in (0..m.saturating_sub(1)).rev() {
        let blk = t0
            .block(offs[i], offs[i + 1], offs[i + 1], offs[i + 2])
            .mul(&ginvs[i + 1])?;
        let h = hermite_form(&blk)?;
        if h.orders.iter().any(|o| !o.is_exact()) {
            return Err(Error::InsufficientPrecision(prec + 1));
        }
        pivots[i] = h.orders.clone();
        ginvs[i] = h.g.inverse()?;
        gs[i] = h.g;
    }
    let gd = TSMatrix::block_diag(p, &gs, prec);
    let gdinv = TSMatrix::block_diag(p, &ginvs, prec);
    let g = gd.mul(&g0)?;
    let t = gd.mul(&t0)?.mul(&gdinv)?;
    Ok(KernelForm {
        g,
        theta: t,
        blocks: Partition::new(blocks)?,
        pivots,
    })
}
