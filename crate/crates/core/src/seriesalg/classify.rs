use crate::error::{Error, Result};
use crate::partitions::Partition;

use super::matrix::{block_offsets, TSMatrix};
use super::normal::{kernel_form, type_with_bound, KernelForm};
use super::series::TSeries;

/// Result of straightening θ to N_λ.
#[derive(Clone, Debug)]
pub struct Classification {
    /// Kernel-strict, g·θ·g⁻¹ = N_λ.
    pub g: TSMatrix,
    pub lambda: Partition,
    /// ord det g.
    pub d: i32,
    /// Largest pole order among the entries of g.
    pub poles: i32,
    /// Precision to which g·θ − N_λ·g was checked to vanish.
    pub precision: i32,
    /// Working precision used (differs from the input precision only for lifted runs).
    pub working_precision: i32,
    pub kernel: KernelForm,
}

impl Classification {
    pub fn is_nondegenerate(&self) -> bool {
        self.d == 0
    }
}

/// Straighten θ at its own precision.
pub fn classify(theta: &TSMatrix) -> Result<Classification> {
    let p = theta.p();
    let wp = theta.precision();
    let prec = wp.max(0) as usize;
    let kf = kernel_form(theta)?;
    let lambda = kf.blocks.clone();
    let sizes = lambda.parts().to_vec();
    let m = sizes.len();
    let offs = block_offsets(&sizes);

    // h_1 = Id, h_i = top λ_i × λ_i block of h_{i-1} θ_{i-1,i}
    let mut hs: Vec<TSMatrix> = Vec::with_capacity(m);
    if m > 0 {
        hs.push(TSMatrix::identity(p, sizes[0], prec));
    }
    for i in 1..m {
        let prod = hs[i - 1].mul(&kf.block(i - 1, i))?;
        hs.push(prod.block(0, sizes[i], 0, sizes[i]));
    }
    let mut d = 0;
    for h in &hs {
        for k in 0..h.rows() {
            match h.get(k, k).order().exact() {
                Some(o) => d += o,
                None => return Err(Error::InsufficientPrecision(prec + 1)),
            }
        }
    }
    let hinvs = hs.iter().map(|h| h.inverse()).collect::<Result<Vec<_>>>()?;
    let hm = TSMatrix::block_diag(p, &hs, prec);
    let hinv = TSMatrix::block_diag(p, &hinvs, prec);
    let mut th = hm.mul(&kf.theta)?.mul(&hinv)?;
    let mut f_acc = TSMatrix::identity(p, theta.rows(), prec);

    // clear θ_{i,j}, j > i+1, one block column at a time from the right
    for j in (2..m).rev() {
        for i in 0..j - 1 {
            let target = th.block(offs[i], offs[i + 1], offs[j], offs[j + 1]);
            if target.is_zero() {
                continue;
            }
            let mut e = TSMatrix::zero(p, theta.rows(), theta.rows(), prec);
            for r in 0..sizes[i] {
                for c in 0..sizes[j] {
                    e.set(offs[i] + r, offs[j - 1] + c, -target.get(r, c));
                }
            }
            let id = TSMatrix::identity(p, theta.rows(), prec);
            let f = id.add(&e)?;
            let finv = id.sub(&e)?;
            th = f.mul(&th)?.mul(&finv)?;
            f_acc = f.mul(&f_acc)?;
        }
    }

    let g = f_acc.mul(&hm)?.mul(&kf.g)?;
    let n_l = TSMatrix::standard_nilpotent(p, &lambda, prec);
    let resid = g.mul(theta)?.sub(&n_l.mul(&g)?)?;
    if !resid.is_zero() {
        return Err(Error::InsufficientPrecision(prec + 1));
    }
    Ok(Classification {
        poles: g.pole_order(),
        precision: resid.precision(),
        g,
        lambda,
        d,
        working_precision: wp,
        kernel: kf,
    })
}

/// Largest working precision tried by [`classify_polynomial`].
pub const MAX_WORKING_PRECISION: i32 = 1024;

/// Straighten θ regarding its entries as exact polynomials.
///
/// The working precision is doubled until the type is certified (every invariant
/// factor treated as zero is bounded below by more than n²·deg θ) and the
/// round trip g·θ = N_λ·g holds to at least the input precision.
pub fn classify_polynomial(theta: &TSMatrix) -> Result<Classification> {
    let n = theta.rows() as i32;
    let target = theta.precision().max(1);
    let threshold = n * n * theta.degree().max(1);
    let mut w = target.max(8);
    loop {
        let lifted = theta.lift(w);
        let attempt = type_with_bound(&lifted).and_then(|(lambda, bound)| {
            if bound <= threshold {
                return Err(Error::InsufficientPrecision(w as usize + 1));
            }
            let c = classify(&lifted)?;
            if c.lambda != lambda || c.precision < target {
                return Err(Error::InsufficientPrecision(w as usize + 1));
            }
            Ok(c)
        });
        match attempt {
            Ok(c) => return Ok(c),
            Err(Error::InsufficientPrecision(_)) if w < MAX_WORKING_PRECISION => w *= 2,
            Err(e) => return Err(e),
        }
    }
}

/// Type of the specialization θ(0) over F_p.
pub fn special_fiber_type(theta: &TSMatrix) -> Result<Partition> {
    super::normal::nilpotent_type(&theta.at_zero()?)
}

/// Ord det of a matrix over the fraction field, if certified.
pub fn det_order(g: &TSMatrix) -> Result<i32> {
    let det: TSeries = g.det()?;
    det.order()
        .exact()
        .ok_or(Error::InsufficientPrecision(g.precision().max(0) as usize + 1))
}
