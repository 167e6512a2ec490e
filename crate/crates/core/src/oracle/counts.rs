use std::collections::{HashMap, HashSet};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use rayon::prelude::*;

use super::fp::{nullspace, rref_in_place, FpMatrix, Space};
use crate::error::{Error, Result};
use crate::partitions::{enumerate_partitions, Partition};
use crate::scalars::Rat;
use crate::seriesalg::check_prime;

/// Cap on the number of elements any single enumeration visits.
pub const MAX_ENUMERATION: u64 = 1 << 26;

pub(crate) fn check_size(count: u64, what: &str) -> Result<()> {
    if count > MAX_ENUMERATION {
        return Err(Error::TooLarge(format!(
            "{what}: {count} elements exceeds the cap {MAX_ENUMERATION}"
        )));
    }
    Ok(())
}

pub(crate) fn pow_u64(p: u32, e: usize) -> u64 {
    (p as u64).checked_pow(e as u32).unwrap_or(u64::MAX)
}

/// Number of partial flags of type μ in F_p^n fixed by N_λ.
pub fn flag_count_bruteforce(lambda: &Partition, mu: &[usize], p: u32) -> Result<u64> {
    check_prime(p)?;
    let n = lambda.size();
    if mu.iter().sum::<usize>() != n {
        return Err(Error::SizeMismatch(format!(
            "composition {mu:?} does not sum to |{lambda}|"
        )));
    }
    let space = Space::new(p, n)?;
    let table = space.table(&FpMatrix::standard_nilpotent(p, lambda));
    let layers: Vec<Vec<u128>> = space
        .subspaces()
        .into_iter()
        .map(|l| l.into_iter().filter(|&w| space.is_invariant(&table, w)).collect())
        .collect();
    let mut dims = Vec::with_capacity(mu.len());
    let mut acc = 0;
    for &m in mu {
        acc += m;
        dims.push(acc);
    }
    fn count(layers: &[Vec<u128>], dims: &[usize], prev: u128) -> u64 {
        let Some((&d, rest)) = dims.split_first() else { return 1 };
        layers[d]
            .iter()
            .filter(|&&w| w & prev == prev)
            .map(|&w| count(layers, rest, w))
            .sum()
    }
    Ok(count(&layers, &dims, 1))
}

/// |{g ∈ GL_n(F_p) : g N_λ = N_λ g}|, by enumerating the commutant.
pub fn centralizer_order(lambda: &Partition, p: u32) -> Result<u64> {
    check_prime(p)?;
    static CACHE: OnceLock<Mutex<HashMap<(Partition, u32), u64>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(&c) = cache.lock().expect("cache lock").get(&(lambda.clone(), p)) {
        return Ok(c);
    }
    let c = centralizer_enumerate(lambda, p)?;
    cache.lock().expect("cache lock").insert((lambda.clone(), p), c);
    Ok(c)
}

fn centralizer_enumerate(lambda: &Partition, p: u32) -> Result<u64> {
    let n = lambda.size();
    if n > MAX_DIM {
        return Err(Error::TooLarge(format!("centralizer of a {n}x{n} matrix")));
    }
    let nl = FpMatrix::standard_nilpotent(p, lambda);
    // unknown g_{ab} sits at index a*n + b; equation (g N − N g)_{ij} = 0
    let mut rows = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut r = vec![0u32; n * n];
            for k in 0..n {
                r[i * n + k] = (r[i * n + k] + nl.get(k, j)) % p;
                r[k * n + j] = (r[k * n + j] + p - nl.get(i, k)) % p;
            }
            rows.push(r);
        }
    }
    let basis = nullspace(p, n * n, rows);
    let total = pow_u64(p, basis.len());
    check_size(total, "centralizer enumeration")?;
    // parallel over the top coordinates, odometer over the rest: each step adds one basis vector
    let k = basis.len();
    let low = k.min(8);
    let count: u64 = (0..pow_u64(p, k - low))
        .into_par_iter()
        .map(|hi| {
            let mut g = [0u32; MAX_DIM * MAX_DIM];
            let mut h = hi;
            for b in &basis[low..] {
                let c = (h % p as u64) as u32;
                h /= p as u64;
                for (x, y) in g.iter_mut().zip(b) {
                    *x = (*x + c * y) % p;
                }
            }
            let mut digits = vec![0u32; low];
            let mut found = 0u64;
            loop {
                let mut work = g;
                if small_invertible(&mut work, n, p) {
                    found += 1;
                }
                // increment the odometer
                let mut i = 0;
                while i < low {
                    for (x, y) in g.iter_mut().zip(&basis[i]) {
                        *x = (*x + y) % p;
                    }
                    digits[i] += 1;
                    if digits[i] < p {
                        break;
                    }
                    digits[i] = 0;
                    i += 1;
                }
                if i == low {
                    break;
                }
            }
            found
        })
        .sum();
    Ok(count)
}

const MAX_DIM: usize = 6;

/// Gaussian elimination on an n×n row-major block of `a`.
fn small_invertible(a: &mut [u32; MAX_DIM * MAX_DIM], n: usize, p: u32) -> bool {
    for c in 0..n {
        let Some(piv) = (c..n).find(|&i| a[i * n + c] != 0) else {
            return false;
        };
        if piv != c {
            for k in 0..n {
                a.swap(piv * n + k, c * n + k);
            }
        }
        let inv = (1..p).find(|&b| a[c * n + c] * b % p == 1).expect("unit");
        for i in c + 1..n {
            let f = a[i * n + c] * inv % p;
            if f != 0 {
                for k in c..n {
                    a[i * n + k] = (a[i * n + k] + (p - f) * a[c * n + k]) % p;
                }
            }
        }
    }
    true
}

/// Coefficients of Σ_n T^n Σ_{λ ⊢ n} 1/|Aut N_λ| for n ≤ nmax.
pub fn nilpotent_mass_series(nmax: usize, p: u32) -> Result<Vec<Rat>> {
    (0..=nmax)
        .map(|n| {
            let mut s = Rat::from_integer(BigInt::from(0));
            for lambda in enumerate_partitions(n) {
                s += Rat::new(BigInt::from(1), BigInt::from(centralizer_order(&lambda, p)?));
            }
            Ok(s)
        })
        .collect()
}

/// Number of lattices L ⊂ F_p[x]^n with dim F_p[x]^n / L = d and support at x = 0.
///
/// Enumerates lower-triangular Hermite representatives (diagonal x^{m_i}, entry (i, j)
/// reduced mod x^{m_j}) and counts the distinct images L / x^d F_p[x]^n.
pub fn grassmannian_count(n: usize, d: usize, p: u32) -> Result<u64> {
    check_prime(p)?;
    let mut total: u64 = 0;
    let comps = weak_compositions(d, n);
    for m in &comps {
        let free: usize = (0..n).map(|j| m[j] * (n - 1 - j)).sum();
        total = total.saturating_add(pow_u64(p, free));
    }
    check_size(
        total.saturating_mul((n * d * n * d).max(1) as u64),
        "lattice enumeration",
    )?;
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    for m in &comps {
        // slots (i, j, k): coefficient of x^k in entry (i, j), j < i, k < m_j
        let slots: Vec<(usize, usize, usize)> = (0..n)
            .flat_map(|i| (0..i).flat_map(move |j| (0..m[j]).map(move |k| (i, j, k))))
            .collect();
        for idx in 0..pow_u64(p, slots.len()) {
            // rows[i][j] = coefficients of the entry mod x^d
            let mut rows = vec![vec![vec![0u32; d]; n]; n];
            for i in 0..n {
                if m[i] < d {
                    rows[i][i][m[i]] = 1;
                }
            }
            let mut k = idx;
            for &(i, j, e) in &slots {
                rows[i][j][e] = (k % p as u64) as u32;
                k /= p as u64;
            }
            seen.insert(lattice_key(p, n, d, &rows));
        }
    }
    Ok(seen.len() as u64)
}

/// RREF of the F_p-span of x^k·row_i in (F_p[x]/x^d)^n.
fn lattice_key(p: u32, n: usize, d: usize, rows: &[Vec<Vec<u32>>]) -> Vec<u32> {
    let width = n * d;
    let mut gens = Vec::with_capacity(n * d);
    for row in rows {
        for shift in 0..d {
            let mut v = vec![0u32; width];
            for (j, entry) in row.iter().enumerate() {
                for (e, &c) in entry.iter().enumerate() {
                    if e + shift < d {
                        v[j * d + e + shift] = c;
                    }
                }
            }
            gens.push(v);
        }
    }
    if gens.is_empty() {
        return Vec::new();
    }
    let r = rref_in_place(p, width, &mut gens);
    gens.truncate(r);
    gens.concat()
}

fn weak_compositions(d: usize, n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return if d == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=d {
        for mut rest in weak_compositions(d - first, n - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}
