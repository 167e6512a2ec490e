//! Named verification suites comparing the symbolic side with the finite-field oracles.

use std::fmt;

use serde_json::json;

use crate::error::{Error, Result};
use crate::hlv::{dim_moduli, hlv_H, poincare_polynomial, CurveData, ParabolicData};
use crate::macdonald::{flag_count_poly, macdonald_htilde, verify_macdonald_axioms};
use crate::oracle::{
    flag_count_bruteforce, grassmannian_count, hall_littlewood_at, nilpotent_mass_series, p1_parabolic_omega,
    p1_two_point_Cmu, p1_two_point_kernel, HallVector, I_map,
};
use crate::partitions::{compositions, enumerate_partitions, z_qt_inv, Partition};
use crate::scalars::{Scalar, Q, T};
use crate::symfunc::{plethysm, plethysm1, AlphabetExpr, MultiSym, SymFunc};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Flags,
    Mass,
    Grass,
    Hall,
    P1TwoPoint,
    P1Parabolic,
    Macdonald,
    Hlv,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Flags,
        Suite::Mass,
        Suite::Grass,
        Suite::Hall,
        Suite::P1TwoPoint,
        Suite::P1Parabolic,
        Suite::Macdonald,
        Suite::Hlv,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Flags => "flags",
            Suite::Mass => "mass",
            Suite::Grass => "grass",
            Suite::Hall => "hall",
            Suite::P1TwoPoint => "p1-two-point",
            Suite::P1Parabolic => "p1-parabolic",
            Suite::Macdonald => "macdonald",
            Suite::Hlv => "hlv",
        }
    }

    pub fn parse(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }

    /// Default size bound when `max` is not given.
    pub fn default_max(self) -> usize {
        match self {
            Suite::Flags | Suite::Mass | Suite::Grass | Suite::Hall | Suite::Hlv => 4,
            Suite::P1TwoPoint | Suite::P1Parabolic => 3,
            Suite::Macdonald => 5,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: Suite,
    pub p: u32,
    pub max: usize,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.ok)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "suite": self.suite.name(),
            "p": self.p,
            "max": self.max,
            "passed": self.passed(),
            "checks": self.checks.len(),
            "failures": self.failures().map(|c| json!({"name": c.name, "detail": c.detail})).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bad = self.failures().count();
        writeln!(
            f,
            "suite={} p={} max={} checks={} failures={} status={}",
            self.suite.name(),
            self.p,
            self.max,
            self.checks.len(),
            bad,
            if bad == 0 { "PASS" } else { "FAIL" }
        )?;
        for c in self.failures() {
            writeln!(f, "FAIL {}: {}", c.name, c.detail)?;
        }
        Ok(())
    }
}

struct Builder(Vec<Check>);

impl Builder {
    fn push(&mut self, name: String, ok: bool, detail: impl FnOnce() -> String) {
        let detail = if ok { String::new() } else { detail() };
        self.0.push(Check { name, ok, detail });
    }
}

fn at_q(x: &Scalar, p: u32) -> Result<Scalar> {
    x.substitute(&[(Q, Scalar::int(p as i64))])
}

fn same_sym(a: &SymFunc, b: &SymFunc) -> Result<bool> {
    Ok(a.to_m()?.sub(&b.to_m()?)?.is_zero())
}

fn same_multi(a: &MultiSym, b: &MultiSym) -> Result<bool> {
    Ok(a.to_m()?.sub(&b.to_m()?)?.is_zero())
}

/// Run one suite. `p` defaults to 2, `max` to the suite's default bound.
pub fn run_suite(suite: Suite, p: Option<u32>, max: Option<usize>) -> Result<SuiteReport> {
    let p = p.unwrap_or(2);
    crate::seriesalg::check_prime(p)?;
    let max = max.unwrap_or(suite.default_max());
    let mut b = Builder(Vec::new());
    match suite {
        Suite::Flags => {
            for n in 0..=max {
                for lambda in enumerate_partitions(n) {
                    for mu in compositions(n) {
                        let want = at_q(&flag_count_poly(&lambda, &mu)?, p)?;
                        let got = Scalar::int(flag_count_bruteforce(&lambda, &mu, p)? as i64);
                        b.push(format!("flags λ={lambda} μ={mu:?}"), want == got, || {
                            format!("poly {want}, brute {got}")
                        });
                    }
                }
            }
        }
        Suite::Mass => {
            let series = nilpotent_mass_series(max, p)?;
            let arg = AlphabetExpr::scalar((Scalar::var(Q) - Scalar::one()).inv()?);
            for (n, c) in series.iter().enumerate() {
                let want = at_q(&plethysm1(&SymFunc::h(&[n]), &arg)?.coeff(&Partition::empty()), p)?;
                let got = Scalar::from_rat(c.clone());
                b.push(format!("mass T^{n}"), want == got, || {
                    format!("pexp {want}, brute {got}")
                });
            }
        }
        Suite::Grass => {
            for n in 1..=3usize {
                let mut f = Scalar::one();
                for i in 0..n {
                    f = f * (Scalar::one() - Scalar::var_pow(Q, i as i32) * Scalar::var(T)).inv()?;
                }
                let series = at_q(&f, p)?.series_in(T, max)?;
                for (d, want) in series.iter().enumerate() {
                    let got = Scalar::int(grassmannian_count(n, d, p)? as i64);
                    b.push(format!("grass n={n} d={d}"), *want == got, || {
                        format!("formula {want}, brute {got}")
                    });
                }
            }
        }
        Suite::Hall => {
            for a in 0..=max {
                for c in 0..=max - a {
                    for la in enumerate_partitions(a) {
                        for nu in enumerate_partitions(c) {
                            let x = HallVector::class(p, la.clone());
                            let y = HallVector::class(p, nu.clone());
                            let got = I_map(&x.mul(&y)?)?;
                            let want = hall_littlewood_at(&la, p)?.mul(&hall_littlewood_at(&nu, p)?)?;
                            b.push(format!("hall I([N{la}]*[N{nu}])"), same_sym(&got, &want)?, || {
                                format!("I(product) = {got}, H·H = {want}")
                            });
                        }
                    }
                }
                for la in enumerate_partitions(a) {
                    let got = I_map(&HallVector::class(p, la.clone()))?;
                    let want = hall_littlewood_at(&la, p)?;
                    b.push(format!("hall I([N{la}])"), same_sym(&got, &want)?, || {
                        format!("{got} vs {want}")
                    });
                }
            }
        }
        Suite::P1TwoPoint => {
            let inv = AlphabetExpr::scalar((Scalar::var(Q) - Scalar::one()).inv()?);
            let xy = inv * AlphabetExpr::x(0) * AlphabetExpr::x(1);
            for n in 1..=max {
                for mu in compositions(n) {
                    let mut want = MultiSym::constant(2, Scalar::one());
                    for &k in &mu {
                        want = want.mul(&plethysm(&SymFunc::h(&[k]), &xy, 2)?)?;
                    }
                    let want = want.substitute(&[(Q, Scalar::int(p as i64))])?;
                    let got = p1_two_point_Cmu(&mu, p)?;
                    b.push(format!("C_μ μ={mu:?}"), same_multi(&got, &want)?, || {
                        format!("{got} vs {want}")
                    });
                }
            }
            let geo = ((Scalar::var(Q) - Scalar::one()) * (Scalar::one() - Scalar::var(T))).inv()?;
            let a = AlphabetExpr::scalar(geo) * AlphabetExpr::x(0) * AlphabetExpr::x(1);
            for n in 1..=max.min(2) {
                let got = p1_two_point_kernel(n, p, max)?;
                let hn = plethysm(&SymFunc::h(&[n]), &a, 2)?.to_m()?;
                for (d, slice) in got.iter().enumerate() {
                    let want = hn.try_map_coeffs(|c| Ok(at_q(c, p)?.series_in(T, max)?[d].clone()))?;
                    b.push(
                        format!("kernel bidegree ({n},{n}) t^{d}"),
                        same_multi(slice, &want)?,
                        || format!("{slice} vs {want}"),
                    );
                }
            }
        }
        Suite::P1Parabolic => {
            for n in 1..=2 {
                for lambda in enumerate_partitions(n) {
                    let got = p1_parabolic_omega(&lambda, p, max)?;
                    let f = macdonald_htilde(&lambda)?.scale(&z_qt_inv(&lambda));
                    for (d, slice) in got.iter().enumerate() {
                        let want = f.try_map_coeffs(|c| Ok(at_q(c, p)?.series_in(T, max)?[d].clone()))?;
                        b.push(format!("Ω λ={lambda} t^{d}"), same_sym(slice, &want)?, || {
                            format!("{slice} vs {want}")
                        });
                    }
                }
            }
        }
        Suite::Macdonald => {
            for n in 0..=max {
                for lambda in enumerate_partitions(n) {
                    let rep = verify_macdonald_axioms(&lambda)?;
                    b.push(format!("axioms λ={lambda}"), rep.passed(), || {
                        format!("failed {:?}", rep.failures())
                    });
                }
            }
        }
        Suite::Hlv => {
            for (g, k) in [(0, 1), (0, 2), (0, 3), (1, 0), (1, 1)] {
                let res = hlv_H(&CurveData::symbolic(g, k)?, max.min(3));
                let detail = match &res {
                    Err(e) => e.to_string(),
                    Ok(_) => String::new(),
                };
                b.push(format!("integrality g={g} k={k}"), res.is_ok(), || detail);
            }
            let cases = [(0usize, 2usize, "1,1;1,1;1,1", "1", 0i64), (1, 1, "1", "(1-s)^2", 2)];
            for (g, r, rows, want, want_dim) in cases {
                let pd = ParabolicData::parse(r, rows)?;
                let got = poincare_polynomial(g, &pd)?;
                let want = Scalar::parse(want)?;
                b.push(format!("poincare g={g} mults={rows}"), got == want, || {
                    format!("{got} vs {want}")
                });
                let dim = dim_moduli(g, &pd)?;
                b.push(format!("dim g={g} mults={rows}"), dim == want_dim, || {
                    format!("{dim} vs {want_dim}")
                });
            }
        }
    }
    Ok(SuiteReport {
        suite,
        p,
        max,
        checks: b.0,
    })
}
