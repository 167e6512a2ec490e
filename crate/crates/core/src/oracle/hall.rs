use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::counts::{centralizer_order, flag_count_bruteforce};
use super::fp::{FpMatrix, Space};
use crate::error::{Error, Result};
use crate::partitions::{enumerate_partitions, Partition};
use crate::scalars::{Rat, Scalar};
use crate::seriesalg::check_prime;
use crate::symfunc::{Basis, SymFunc};

/// Element of the Hall algebra of nilpotent pairs over F_p, in the basis of classes [N_λ].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallVector {
    p: u32,
    terms: BTreeMap<Partition, Rat>,
}

impl HallVector {
    pub fn zero(p: u32) -> Self {
        HallVector {
            p,
            terms: BTreeMap::new(),
        }
    }

    /// [N_λ].
    pub fn class(p: u32, lambda: Partition) -> Self {
        Self::from_terms(p, [(lambda, Rat::from_integer(BigInt::from(1)))])
    }

    pub fn from_terms<I: IntoIterator<Item = (Partition, Rat)>>(p: u32, it: I) -> Self {
        let mut v = Self::zero(p);
        for (l, c) in it {
            v.add_term(l, c);
        }
        v
    }

    fn add_term(&mut self, l: Partition, c: Rat) {
        let e = self.terms.entry(l.clone()).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&l);
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn terms(&self) -> &BTreeMap<Partition, Rat> {
        &self.terms
    }

    pub fn coeff(&self, l: &Partition) -> Rat {
        self.terms.get(l).cloned().unwrap_or_else(Rat::zero)
    }

    fn same_prime(&self, o: &Self) -> Result<()> {
        if self.p != o.p {
            return Err(Error::SizeMismatch(format!(
                "Hall vectors over F_{} and F_{}",
                self.p, o.p
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_prime(o)?;
        let mut r = self.clone();
        for (l, c) in &o.terms {
            r.add_term(l.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::from_terms(self.p, self.terms.iter().map(|(l, x)| (l.clone(), x * c)))
    }

    /// Bilinear extension of [`hall_product_bruteforce`].
    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.same_prime(o)?;
        let mut r = Self::zero(self.p);
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                r = r.add(&hall_product_bruteforce(a, b, self.p)?.scale(&(ca * cb)))?;
            }
        }
        Ok(r)
    }
}

impl fmt::Display for HallVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(l, c)| format!("({c})*[N{}]", l.bracketed()))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// [N_λ] * [N_ν]: the coefficient of [N_μ] is the number of N_μ-invariant subspaces W with
/// W of type ν and V/W of type λ, times |Aut N_λ|·|Aut N_ν| / |Aut N_μ|.
pub fn hall_product_bruteforce(lambda: &Partition, nu: &Partition, p: u32) -> Result<HallVector> {
    check_prime(p)?;
    let n = lambda.size() + nu.size();
    let k = nu.size();
    let a_ln = centralizer_order(lambda, p)? * centralizer_order(nu, p)?;
    let space = Space::new(p, n)?;
    let subs = space.subspaces();
    let mut out = HallVector::zero(p);
    for mu in enumerate_partitions(n) {
        let table = space.table(&FpMatrix::standard_nilpotent(p, &mu));
        let mut count: u64 = 0;
        for &w in &subs[k] {
            if space.is_invariant(&table, w)
                && space.restricted_type(&table, w)? == *nu
                && space.quotient_type(&table, w)? == *lambda
            {
                count += 1;
            }
        }
        if count > 0 {
            let c = Rat::new(
                BigInt::from(count) * BigInt::from(a_ln),
                BigInt::from(centralizer_order(&mu, p)?),
            );
            out.add_term(mu, c);
        }
    }
    Ok(out)
}

/// I([N_λ]) = Σ_μ m_μ · #{flags of type μ fixed by N_λ}, extended linearly.
#[allow(non_snake_case)]
pub fn I_map(v: &HallVector) -> Result<SymFunc> {
    let mut terms: BTreeMap<Partition, Rat> = BTreeMap::new();
    for (lambda, c) in v.terms() {
        for mu in enumerate_partitions(lambda.size()) {
            let f = flag_count_bruteforce(lambda, mu.parts(), v.p())?;
            *terms.entry(mu).or_insert_with(Rat::zero) += c * Rat::from_integer(BigInt::from(f));
        }
    }
    Ok(SymFunc::from_terms(
        Basis::M,
        terms.into_iter().map(|(l, c)| (l, Scalar::from_rat(c))),
    ))
}
