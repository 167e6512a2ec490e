//! Cyclotomic binomial factors Φ_d(w) for a primitive Laurent monomial w.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::One;

use super::monomial::Monomial;
use super::poly::{rat, MultiPoly, Rat};

fn cyclotomic_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<i64>>>> {
    static C: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Integer coefficients of Φ_d, lowest degree first.
pub fn cyclotomic(d: u32) -> Arc<Vec<i64>> {
    assert!(d >= 1);
    if let Some(c) = cyclotomic_cache().lock().unwrap().get(&d) {
        return c.clone();
    }
    let mut p = vec![0i64; d as usize + 1];
    p[0] = -1;
    p[d as usize] = 1;
    for e in 1..d {
        if d % e == 0 {
            let f = cyclotomic(e);
            p = div_monic(&p, &f);
        }
    }
    let p = Arc::new(p);
    cyclotomic_cache().lock().unwrap().insert(d, p.clone());
    p
}

fn div_monic(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let dq = a.len() - 1 - db;
    let mut q = vec![0i64; dq + 1];
    for k in (0..=dq).rev() {
        let c = r[k + db];
        q[k] = c;
        for (i, &bi) in b.iter().enumerate() {
            r[k + i] -= c * bi;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

pub fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Irreducible factor Φ_d(w), stored as the polynomial M₋^φ(d) Φ_d(M₊/M₋) where w = M₊/M₋.
#[derive(Clone, Debug)]
pub struct CycloFactor {
    pub d: u32,
    pub w: Monomial,
    poly: Arc<MultiPoly>,
}

impl CycloFactor {
    /// `w` must be primitive with a positive first nonzero exponent.
    pub fn new(d: u32, w: Monomial) -> Self {
        debug_assert!(w.content() == 1 && w.first_nonzero().unwrap_or(0) > 0);
        let c = cyclotomic(d);
        let phi = c.len() - 1;
        let (p, n) = w.split_signs();
        let poly = MultiPoly::from_terms(
            c.iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(i, &k)| (p.scale(i as i32) + n.scale((phi - i) as i32), rat(k))),
        );
        CycloFactor {
            d,
            w,
            poly: Arc::new(poly),
        }
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    /// Factors of Φ_d(w^n) = ∏ Φ_e(w) over e | dn with e / gcd(e, n) = d.
    pub fn adams(&self, n: u32) -> Vec<CycloFactor> {
        divisors(self.d * n)
            .into_iter()
            .filter(|&e| e / num_integer::gcd(e, n) == self.d)
            .map(|e| CycloFactor::new(e, self.w))
            .collect()
    }

    fn key(&self) -> (u32, Monomial) {
        (self.d, self.w)
    }
}

impl PartialEq for CycloFactor {
    fn eq(&self, o: &Self) -> bool {
        self.key() == o.key()
    }
}
impl Eq for CycloFactor {}
impl PartialOrd for CycloFactor {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for CycloFactor {
    fn cmp(&self, o: &Self) -> Ordering {
        self.key().cmp(&o.key())
    }
}
impl Hash for CycloFactor {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.key().hash(h)
    }
}

/// Factor a two-term polynomial c₁M₁ + c₂M₂ with c₂ = ±c₁ as c₁ · M · ∏ factors.
pub fn factor_binomial(p: &MultiPoly) -> Option<(Rat, Monomial, Vec<CycloFactor>)> {
    let t = p.terms();
    if t.len() != 2 {
        return None;
    }
    let (m1, c1) = &t[0];
    let (m2, c2) = &t[1];
    let ratio = c2 / c1;
    let plus = if ratio.is_one() {
        true
    } else if (-&ratio).is_one() {
        false
    } else {
        return None;
    };
    let w0 = *m1 - *m2;
    let g = w0.content();
    let w = Monomial(w0.0.map(|e| e / g));
    let (_, n) = w.split_signs();
    let g = g as u32;
    let ds: Vec<u32> = if plus {
        divisors(2 * g).into_iter().filter(|d| g % d != 0).collect()
    } else {
        divisors(g)
    };
    let factors = ds.into_iter().map(|d| CycloFactor::new(d, w)).collect();
    Some((c1.clone(), *m2 - n.scale(g as i32), factors))
}
