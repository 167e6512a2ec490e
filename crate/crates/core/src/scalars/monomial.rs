use std::fmt;
use std::ops::{Add, Neg, Sub};

/// Number of slots in the universal variable list.
pub const NVARS: usize = 8;

/// Largest genus whose σ-variables fit in the variable list.
pub const MAX_SIGMA: usize = NVARS - 4;

pub const Q: usize = 0;
pub const T: usize = 1;
pub const S: usize = 2;
pub const U: usize = 3;

/// Index of σ_i (1-based i).
pub fn sigma(i: usize) -> usize {
    assert!(i >= 1 && i <= MAX_SIGMA, "sigma index out of range");
    3 + i
}

const NAMES: [&str; NVARS] = ["q", "t", "s", "u", "σ1", "σ2", "σ3", "σ4"];

/// The fixed ordered variable list shared by every scalar.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VarSet;

impl VarSet {
    pub fn names() -> &'static [&'static str] {
        &NAMES
    }

    pub fn name(i: usize) -> &'static str {
        NAMES[i]
    }

    /// Accepts `σ1` as well as the ASCII spelling `sigma1`.
    pub fn index_of(name: &str) -> Option<usize> {
        if let Some(i) = NAMES.iter().position(|n| *n == name) {
            return Some(i);
        }
        let rest = name.strip_prefix("sigma")?;
        let i: usize = rest.parse().ok()?;
        (1..=MAX_SIGMA).contains(&i).then(|| sigma(i))
    }
}

/// Laurent monomial: an exponent per variable. Ordered lexicographically with q most significant.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(pub [i32; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub fn var(i: usize, e: i32) -> Self {
        let mut m = [0; NVARS];
        m[i] = e;
        Monomial(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn scale(&self, n: i32) -> Self {
        let mut m = self.0;
        for e in m.iter_mut() {
            *e *= n;
        }
        Monomial(m)
    }

    pub fn meet(&self, o: &Self) -> Self {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(o.0.iter()) {
            *a = (*a).min(*b);
        }
        Monomial(m)
    }

    pub fn join(&self, o: &Self) -> Self {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(o.0.iter()) {
            *a = (*a).max(*b);
        }
        Monomial(m)
    }

    /// True when every exponent of `self` is at least the matching one of `o`.
    pub fn dominates(&self, o: &Self) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a >= b)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    /// gcd of the exponents (0 for the unit monomial).
    pub fn content(&self) -> i32 {
        self.0.iter().fold(0, |g, &e| num_integer::gcd(g, e))
    }

    pub fn first_nonzero(&self) -> Option<i32> {
        self.0.iter().copied().find(|&e| e != 0)
    }

    /// Positive and negative parts, as monomials with nonnegative exponents.
    pub fn split_signs(&self) -> (Self, Self) {
        let mut p = [0; NVARS];
        let mut n = [0; NVARS];
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                p[i] = e;
            } else {
                n[i] = -e;
            }
        }
        (Monomial(p), Monomial(n))
    }

    pub fn used_vars(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e != 0).map(|(i, _)| i)
    }
}

impl Add for Monomial {
    type Output = Monomial;
    fn add(self, o: Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(o.0.iter()) {
            *a += *b;
        }
        Monomial(m)
    }
}

impl Sub for Monomial {
    type Output = Monomial;
    fn sub(self, o: Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(o.0.iter()) {
            *a -= *b;
        }
        Monomial(m)
    }
}

impl Neg for Monomial {
    type Output = Monomial;
    fn neg(self) -> Monomial {
        self.scale(-1)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", NAMES[i])?;
            } else {
                write!(f, "{}^{}", NAMES[i], e)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
