use num_bigint::BigInt;

use super::*;
use crate::macdonald::{hall_littlewood, macdonald_htilde};
use crate::partitions::{compositions, enumerate_partitions, z_qt_inv, Partition};
use crate::scalars::{Rat, Scalar, Q, T};
use crate::symfunc::{plethysm, plethysm1, AlphabetExpr, Basis, MultiSym, SymFunc};
use crate::Error;

fn part(v: &[usize]) -> Partition {
    Partition::from(v)
}

fn r(a: i64, b: i64) -> Rat {
    Rat::new(BigInt::from(a), BigInt::from(b))
}

fn s(x: &str) -> Scalar {
    Scalar::parse(x).unwrap()
}

fn fm(terms: &[(&[usize], &str)]) -> SymFunc {
    SymFunc::from_terms(Basis::M, terms.iter().map(|(l, c)| (part(l), s(c))))
}

fn at_q(x: &Scalar, p: u32) -> Scalar {
    x.substitute(&[(Q, Scalar::int(p as i64))]).unwrap()
}

fn same_sym(a: &SymFunc, b: &SymFunc) -> bool {
    a.to_m().unwrap().sub(&b.to_m().unwrap()).unwrap().is_zero()
}

fn same_multi(a: &MultiSym, b: &MultiSym) -> bool {
    a.to_m().unwrap().sub(&b.to_m().unwrap()).unwrap().is_zero()
}

/// |Aut N_λ| = q^{Σ λ_i²} ∏_i ∏_{k ≤ m_i(λ')} (1 − q^{−k}).
fn centralizer_formula(lambda: &Partition, p: u32) -> Rat {
    let q = Rat::from_integer(BigInt::from(p));
    let one = r(1, 1);
    let mut c = Rat::from_integer(BigInt::from(p).pow(lambda.parts().iter().map(|x| (x * x) as u32).sum()));
    for m in lambda.conjugate().multiplicities() {
        for k in 1..=m {
            c *= &one - Rat::from_integer(BigInt::from(1)) / q.pow(k as i32);
        }
    }
    c
}

#[test]
fn flag_examples() {
    assert_eq!(flag_count_bruteforce(&part(&[2]), &[1, 1], 2).unwrap(), 3);
    assert_eq!(flag_count_bruteforce(&part(&[1, 1]), &[1, 1], 2).unwrap(), 1);
    assert_eq!(flag_count_bruteforce(&part(&[2]), &[2], 3).unwrap(), 1);
    assert!(matches!(
        flag_count_bruteforce(&part(&[2]), &[1], 2),
        Err(Error::SizeMismatch(_))
    ));
    assert!(matches!(
        flag_count_bruteforce(&part(&[4, 4]), &[8], 2),
        Err(Error::TooLarge(_))
    ));
}

#[test]
fn flag_counts_match_hall_littlewood() {
    for p in [2u32, 3] {
        for n in 0..=4 {
            for lambda in enumerate_partitions(n) {
                for mu in compositions(n) {
                    let want = at_q(&crate::macdonald::flag_count_poly(&lambda, &mu).unwrap(), p);
                    let got = flag_count_bruteforce(&lambda, &mu, p).unwrap();
                    assert_eq!(want, Scalar::int(got as i64), "λ={lambda} μ={mu:?} p={p}");
                }
            }
        }
    }
}

#[test]
fn centralizer_examples() {
    assert_eq!(centralizer_order(&part(&[2]), 2).unwrap(), 6);
    assert_eq!(centralizer_order(&part(&[1, 1]), 2).unwrap(), 2);
    assert_eq!(centralizer_order(&part(&[1]), 3).unwrap(), 2);
    for p in [2u32, 3] {
        for n in 0..=4 {
            for lambda in enumerate_partitions(n) {
                let got = centralizer_order(&lambda, p).unwrap();
                assert_eq!(
                    Rat::from_integer(BigInt::from(got)),
                    centralizer_formula(&lambda, p),
                    "{lambda} p={p}"
                );
            }
        }
    }
}

#[test]
fn mass_series_matches_pexp() {
    let m2 = nilpotent_mass_series(4, 2).unwrap();
    assert_eq!(m2[0], r(1, 1));
    assert_eq!(m2[2], r(2, 3));
    let m3 = nilpotent_mass_series(4, 3).unwrap();
    assert_eq!(m3[1], r(1, 2));
    let arg = AlphabetExpr::scalar(s("1/(q-1)"));
    for (p, series) in [(2u32, &m2), (3, &m3)] {
        for (n, c) in series.iter().enumerate() {
            let hn = plethysm1(&SymFunc::h(&[n]), &arg).unwrap();
            let want = at_q(&hn.coeff(&Partition::empty()), p);
            assert_eq!(want, Scalar::from_rat(c.clone()), "n={n} p={p}");
        }
    }
}

#[test]
fn grassmannian_matches_product_formula() {
    assert_eq!(grassmannian_count(1, 3, 2).unwrap(), 1);
    assert_eq!(grassmannian_count(2, 1, 2).unwrap(), 3);
    assert_eq!(grassmannian_count(2, 2, 2).unwrap(), 7);
    for p in [2u32, 3] {
        for n in 1..=3 {
            let mut f = Scalar::one();
            for i in 0..n {
                f = f * (Scalar::one() - Scalar::var_pow(Q, i) * Scalar::var(T)).inv().unwrap();
            }
            let series = at_q(&f, p).series_in(T, 4).unwrap();
            for (d, c) in series.iter().enumerate() {
                assert_eq!(
                    Scalar::int(grassmannian_count(n as usize, d, p).unwrap() as i64),
                    *c,
                    "n={n} d={d} p={p}"
                );
            }
        }
    }
}

#[test]
fn hall_product_examples() {
    let one = HallVector::class(2, part(&[1]));
    let prod = one.mul(&one).unwrap();
    let want = HallVector::from_terms(2, [(part(&[2]), r(1, 2)), (part(&[1, 1]), r(1, 2))]);
    assert_eq!(prod, want);
    let unit = HallVector::class(2, Partition::empty());
    assert_eq!(one.mul(&unit).unwrap(), one);
    assert_eq!(I_map(&prod).unwrap(), fm(&[(&[2], "1"), (&[1, 1], "2")]));
    assert_eq!(
        I_map(&HallVector::class(2, part(&[1, 1]))).unwrap(),
        fm(&[(&[2], "1"), (&[1, 1], "1")])
    );
    assert_eq!(
        I_map(&HallVector::class(2, part(&[2]))).unwrap(),
        fm(&[(&[2], "1"), (&[1, 1], "3")])
    );
    assert_eq!(
        I_map(&HallVector::class(3, part(&[2]))).unwrap(),
        fm(&[(&[2], "1"), (&[1, 1], "4")])
    );
}

#[test]
fn i_map_is_multiplicative() {
    for p in [2u32, 3] {
        for a in 0..=4 {
            for b in 0..=4 - a {
                for la in enumerate_partitions(a) {
                    for nu in enumerate_partitions(b) {
                        let x = HallVector::class(p, la.clone());
                        let y = HallVector::class(p, nu.clone());
                        let lhs = I_map(&x.mul(&y).unwrap()).unwrap();
                        let hl = hall_littlewood_at(&la, p)
                            .unwrap()
                            .mul(&hall_littlewood_at(&nu, p).unwrap())
                            .unwrap();
                        assert!(same_sym(&lhs, &hl), "{la} * {nu} at p={p}");
                        assert!(same_sym(&I_map(&x).unwrap(), &hall_littlewood_at(&la, p).unwrap()));
                    }
                }
            }
        }
    }
}

fn h_xy(k: usize) -> MultiSym {
    let a = AlphabetExpr::scalar(s("1/(q-1)")) * AlphabetExpr::x(0) * AlphabetExpr::x(1);
    plethysm(&SymFunc::h(&[k]), &a, 2).unwrap()
}

#[test]
fn two_point_cmu_matches_product() {
    let p = 2;
    let c1 = p1_two_point_Cmu(&[1], p).unwrap();
    assert!(same_multi(
        &c1,
        &MultiSym::tensor(&[SymFunc::m(&[1]), SymFunc::m(&[1])]).unwrap()
    ));
    let h2 = hall_littlewood_at(&part(&[2]), p).unwrap();
    let h11 = hall_littlewood_at(&part(&[1, 1]), p).unwrap();
    let want2 = MultiSym::tensor(&[h2.clone(), h2])
        .unwrap()
        .add(&MultiSym::tensor(&[h11.clone(), h11]).unwrap().scale(&Scalar::int(3)))
        .unwrap()
        .scale(&s("1/6"));
    assert!(same_multi(&p1_two_point_Cmu(&[2], p).unwrap(), &want2));
    for n in 1..=3 {
        for mu in compositions(n) {
            let mut want = MultiSym::constant(2, Scalar::one());
            for &k in &mu {
                want = want.mul(&h_xy(k)).unwrap();
            }
            let want = want.substitute(&[(Q, Scalar::int(p as i64))]).unwrap();
            assert!(same_multi(&p1_two_point_Cmu(&mu, p).unwrap(), &want), "μ={mu:?}");
        }
    }
}

#[test]
fn two_point_kernel_matches_pexp() {
    let p = 2;
    let dmax = 3;
    let a = AlphabetExpr::scalar(s("1/((q-1)*(1-t))")) * AlphabetExpr::x(0) * AlphabetExpr::x(1);
    for n in 1..=2 {
        let got = p1_two_point_kernel(n, p, dmax).unwrap();
        let hn = plethysm(&SymFunc::h(&[n]), &a, 2).unwrap().to_m().unwrap();
        for (d, slice) in got.iter().enumerate() {
            let want = hn
                .try_map_coeffs(|c| Ok(at_q(c, p).series_in(T, dmax)?[d].clone()))
                .unwrap();
            assert!(same_multi(slice, &want), "n={n} t^{d}");
        }
    }
}

#[test]
fn parabolic_omega_examples() {
    let p = 2;
    let o1 = p1_parabolic_omega(&part(&[1]), p, 3).unwrap();
    for c in &o1 {
        assert_eq!(*c, SymFunc::m(&[1]));
    }
    let o2 = p1_parabolic_omega(&part(&[2]), p, 0).unwrap();
    assert_eq!(o2[0], fm(&[(&[2], "1/6"), (&[1, 1], "1/2")]));
    let o11 = p1_parabolic_omega(&part(&[1, 1]), p, 0).unwrap();
    assert_eq!(o11[0], fm(&[(&[2], "1/2"), (&[1, 1], "1/2")]));
}

#[test]
fn parabolic_omega_matches_macdonald() {
    let p = 2;
    let dmax = 3;
    for n in 1..=2 {
        for lambda in enumerate_partitions(n) {
            let got = p1_parabolic_omega(&lambda, p, dmax).unwrap();
            let f = macdonald_htilde(&lambda).unwrap().scale(&z_qt_inv(&lambda));
            for (d, slice) in got.iter().enumerate() {
                let want = f
                    .try_map_coeffs(|c| Ok(at_q(c, p).series_in(T, dmax)?[d].clone()))
                    .unwrap();
                assert!(
                    same_sym(slice, &want),
                    "λ={lambda} t^{d}: {} vs {}",
                    slice.to_text(),
                    want.to_text()
                );
            }
        }
    }
}

#[test]
fn fp_matrix_types() {
    for n in 0..=4 {
        for lambda in enumerate_partitions(n) {
            assert_eq!(
                FpMatrix::standard_nilpotent(3, &lambda).nilpotent_type().unwrap(),
                lambda
            );
        }
    }
    let m = FpMatrix::from_entries(2, 2, &[1, 0, 0, 0]).unwrap();
    assert!(matches!(m.nilpotent_type(), Err(Error::NotNilpotent)));
    assert_eq!(hall_littlewood(&part(&[1])).unwrap(), SymFunc::m(&[1]));
}
