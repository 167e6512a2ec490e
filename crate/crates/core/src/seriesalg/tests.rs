use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::error::Error;
use crate::partitions::{dominance_leq, Partition};

// Exact polynomials over F_p, used as an independent oracle.
type Poly = Vec<u32>;

fn pnorm(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn padd(a: &Poly, b: &Poly, p: u32, sign: u32) -> Poly {
    let mut c = vec![0; a.len().max(b.len())];
    for (i, v) in a.iter().enumerate() {
        c[i] = *v;
    }
    for (i, v) in b.iter().enumerate() {
        c[i] = (c[i] + sign * v) % p;
    }
    pnorm(c)
}

fn pmul(a: &Poly, b: &Poly, p: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut c = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] = (c[i + j] + x * y) % p;
        }
    }
    pnorm(c)
}

fn pord(a: &Poly) -> Option<usize> {
    a.iter().position(|&v| v != 0)
}

fn pdet(m: &[Vec<Poly>], p: u32) -> Poly {
    let n = m.len();
    if n == 0 {
        return vec![1];
    }
    let mut acc: Poly = vec![];
    for j in 0..n {
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let t = pmul(&m[0][j], &pdet(&minor, p), p);
        acc = padd(&acc, &t, p, if j % 2 == 0 { 1 } else { p - 1 });
    }
    acc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|s| s.count_ones() as usize == k)
        .map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect())
        .collect()
}

fn to_polys(m: &TSMatrix) -> Vec<Vec<Poly>> {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| {
                    let s = m.get(i, j);
                    let d = s.degree().unwrap_or(-1);
                    pnorm((0..=d).map(|e| s.coeff(e).unwrap().value()).collect())
                })
                .collect()
        })
        .collect()
}

/// Minimal order among k×k minors of the given columns (None if all vanish).
fn minor_order(m: &[Vec<Poly>], cols: &[usize], k: usize, p: u32) -> Option<usize> {
    let mut best: Option<usize> = None;
    for rs in subsets(m.len(), k) {
        for cs in subsets(cols.len(), k) {
            let sub: Vec<Vec<Poly>> = rs
                .iter()
                .map(|&r| cs.iter().map(|&c| m[r][cols[c]].clone()).collect())
                .collect();
            if let Some(o) = pord(&pdet(&sub, p)) {
                best = Some(best.map_or(o, |b| b.min(o)));
            }
        }
    }
    best
}

fn oracle_smith_orders(m: &[Vec<Poly>], p: u32) -> Vec<usize> {
    let cols: Vec<usize> = (0..m[0].len()).collect();
    let mut out = vec![];
    let mut prev = 0;
    for k in 1..=m.len().min(cols.len()) {
        match minor_order(m, &cols, k, p) {
            Some(d) => {
                out.push(d - prev);
                prev = d;
            }
            None => break,
        }
    }
    out
}

fn oracle_hermite_orders(m: &[Vec<Poly>], p: u32) -> Vec<usize> {
    let mut out = vec![];
    let mut prev = 0;
    for k in 1..=m.len().min(m[0].len()) {
        let cols: Vec<usize> = (0..k).collect();
        let d = minor_order(m, &cols, k, p).expect("nonsingular leading columns");
        out.push(d - prev);
        prev = d;
    }
    out
}

fn oracle_rank(m: &[Vec<Poly>], p: u32) -> usize {
    let cols: Vec<usize> = (0..m[0].len()).collect();
    (1..=m.len())
        .take_while(|&k| minor_order(m, &cols, k, p).is_some())
        .count()
}

fn oracle_type(m: &[Vec<Poly>], p: u32) -> Partition {
    let n = m.len();
    let mut pw: Vec<Vec<Poly>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { vec![1] } else { vec![] }).collect())
        .collect();
    let mut dims = vec![0];
    for _ in 0..n {
        let mut next = vec![vec![vec![]; n]; n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    next[i][j] = padd(&next[i][j], &pmul(&pw[i][k], &m[k][j], p), p, 1);
                }
            }
        }
        pw = next;
        dims.push(n - oracle_rank(&pw, p));
    }
    Partition::new(dims.windows(2).map(|w| w[1] - w[0]).filter(|&v| v > 0).collect()).unwrap()
}

fn mat(s: &str) -> TSMatrix {
    TSMatrix::parse(s).unwrap()
}

fn exact_orders(os: &[Order]) -> Vec<i32> {
    os.iter().map(|o| o.exact().expect("certified order")).collect()
}

// Random generators.

fn rand_poly(rng: &mut ChaCha8Rng, p: u32, deg: usize) -> Vec<i64> {
    (0..deg).map(|_| rng.gen_range(0..p as i64)).collect()
}

fn rand_const_unit(rng: &mut ChaCha8Rng, p: u32, n: usize, prec: usize) -> TSMatrix {
    loop {
        let rows: Vec<Vec<Vec<i64>>> = (0..n)
            .map(|_| (0..n).map(|_| vec![rng.gen_range(0..p as i64)]).collect())
            .collect();
        let m = TSMatrix::from_coeffs(p, prec, &rows).unwrap();
        if m.det().unwrap().order() == Order::Exact(0) {
            return m;
        }
    }
}

/// Product of elementary matrices over F_p[x] and its exact inverse.
fn rand_unimodular(rng: &mut ChaCha8Rng, p: u32, n: usize, prec: usize, steps: usize) -> (TSMatrix, TSMatrix) {
    let c = rand_const_unit(rng, p, n, prec);
    let mut u = c.clone();
    let mut uinv = c.inverse().unwrap();
    if n < 2 {
        return (u, uinv);
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let a = rng.gen_range(1..p as i64);
        let k = rng.gen_range(0..3);
        let mut e = TSMatrix::identity(p, n, prec);
        let mut einv = TSMatrix::identity(p, n, prec);
        e.set(i, j, TSeries::monomial(p, a, k, prec as i32));
        einv.set(i, j, TSeries::monomial(p, -a, k, prec as i32));
        u = e.mul(&u).unwrap();
        uinv = uinv.mul(&einv).unwrap();
    }
    (u, uinv)
}

/// Random nilpotent matrix with polynomial entries of degree < deg.
fn rand_nilpotent(rng: &mut ChaCha8Rng, p: u32, n: usize, deg: usize) -> TSMatrix {
    let mut rows = vec![vec![vec![0i64]; n]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            if j > i && rng.gen_bool(0.7) {
                *e = if rng.gen_bool(0.5) {
                    let mut v = vec![0; rng.gen_range(0..deg)];
                    v.push(1);
                    v
                } else {
                    rand_poly(rng, p, deg)
                };
            }
        }
    }
    let t = TSMatrix::from_coeffs(p, deg, &rows).unwrap();
    let c = rand_const_unit(rng, p, n, deg);
    c.mul(&t).unwrap().mul(&c.inverse().unwrap()).unwrap()
}

fn rand_square(rng: &mut ChaCha8Rng, p: u32, n: usize, deg: usize, prec: usize) -> TSMatrix {
    let rows: Vec<Vec<Vec<i64>>> = (0..n)
        .map(|_| (0..n).map(|_| rand_poly(rng, p, deg)).collect())
        .collect();
    TSMatrix::from_coeffs(p, prec, &rows).unwrap()
}

// Scalars.

#[test]
fn fp_arithmetic() {
    let a = Fp::new(3, 5);
    assert_eq!((a * a).value(), 4);
    assert_eq!(a.inv().unwrap().value(), 2);
    assert_eq!((-a).value(), 2);
    assert!(Fp::zero(3).inv().is_none());
    assert!(check_prime(7).is_err());
}

#[test]
fn series_arithmetic_and_precision() {
    let one_plus_x = TSeries::from_coeffs(2, &[1, 1], 4);
    let inv = one_plus_x.inv().unwrap();
    assert_eq!(inv, TSeries::from_coeffs(2, &[1, 1, 1, 1], 4));
    assert_eq!((&inv * &one_plus_x), TSeries::one(2, 4));

    let x = TSeries::x(3, 4);
    let xi = x.inv().unwrap();
    assert_eq!(xi.order(), Order::Exact(-1));
    assert_eq!(xi.precision(), 2);
    assert!(matches!(x.coeff(4), Err(Error::InsufficientPrecision(_))));
    assert!(matches!(
        TSeries::zero(2, 3).inv(),
        Err(Error::InsufficientPrecision(_))
    ));

    // x^2 + O(x^4) times (1 + O(x^2)) is known to x^4
    let a = TSeries::monomial(2, 1, 2, 4);
    let b = TSeries::one(2, 2);
    assert_eq!((&a * &b).precision(), 4);
    assert_eq!((&a + &b).precision(), 2);
}

#[test]
fn text_round_trip() {
    let m = mat("0,x;0,0 @p=2,m=4");
    assert_eq!(m.to_text(), "0,x;0,0 @p=2,m=4");
    let m = mat("1+x^2, 2x ; x-3*x^3, 4 @p=5,m=6");
    assert_eq!(m.to_text(), "1+x^2,2x;x+2x^3,4 @p=5,m=6");
    assert!(TSMatrix::parse("0,x;0 @p=2,m=4").is_err());
    assert!(TSMatrix::parse("0,x;0,0 @p=7,m=4").is_err());
    assert!(TSMatrix::parse("0,y;0,0 @p=2,m=4").is_err());
    assert!(TSMatrix::parse("0,x;0,0").is_err());
}

// Normal forms.

#[test]
fn hermite_examples() {
    let h = hermite_form(&mat("0,1;1,0 @p=2,m=4")).unwrap();
    assert_eq!(h.m, TSMatrix::identity(2, 2, 4));

    let h = hermite_form(&mat("x,0;0,1 @p=2,m=4")).unwrap();
    assert_eq!(exact_orders(&h.orders), vec![1, 0]);
    assert_eq!(h.m, mat("x,0;0,1 @p=2,m=4"));

    // singular: det = x^2 - x^2 = 0, so the second pivot vanishes to precision
    let m = mat("x,1;x^2,x @p=2,m=4");
    let h = hermite_form(&m).unwrap();
    assert_eq!(h.orders[0], Order::Exact(1));
    assert!(matches!(h.orders[1], Order::AtLeast(b) if b >= 3));
    assert_eq!(h.g.mul(&m).unwrap(), h.m);
    assert!(h.m.get(1, 0).is_zero());
}

#[test]
fn smith_examples() {
    let s = smith_form(&mat("x,0;0,1 @p=2,m=4")).unwrap();
    assert_eq!(exact_orders(&s.orders), vec![0, 1]);
    assert_eq!(s.d, mat("1,0;0,x @p=2,m=4"));

    let m = mat("x,x;x,x @p=2,m=4");
    let s = smith_form(&m).unwrap();
    assert_eq!(s.orders[0], Order::Exact(1));
    assert!(matches!(s.orders[1], Order::AtLeast(b) if b >= 3));
    assert_eq!(s.rank(), 1);

    let id = TSMatrix::identity(3, 3, 5);
    let s = smith_form(&id).unwrap();
    assert_eq!(s.d, id);
    assert_eq!(exact_orders(&s.orders), vec![0, 0, 0]);
}

#[test]
fn hermite_needs_certified_pivots() {
    // x^3 is the only certified entry but the other one may have order 2
    let m = TSMatrix::from_rows(2, vec![vec![TSeries::monomial(2, 1, 3, 4)], vec![TSeries::zero(2, 2)]]).unwrap();
    assert!(matches!(hermite_form(&m), Err(Error::InsufficientPrecision(_))));
}

#[test]
fn type_examples() {
    assert_eq!(nilpotent_type(&TSMatrix::zero(2, 3, 3, 4)).unwrap(), Partition::row(3));
    assert_eq!(nilpotent_type(&mat("0,x;0,0 @p=2,m=4")).unwrap(), Partition::column(2));
    let l = Partition::new(vec![2, 1]).unwrap();
    assert_eq!(nilpotent_type(&TSMatrix::standard_nilpotent(3, &l, 4)).unwrap(), l);
    assert!(matches!(
        nilpotent_type(&mat("1,0;0,0 @p=2,m=4")),
        Err(Error::NotNilpotent)
    ));
    // N_(1,1) is the regular Jordan block
    assert_eq!(
        TSMatrix::standard_nilpotent(2, &Partition::column(2), 4),
        mat("0,1;0,0 @p=2,m=4")
    );
}

#[test]
fn kernel_form_examples() {
    for l in [vec![1], vec![2, 1], vec![1, 1, 1], vec![2, 2, 1]] {
        let l = Partition::new(l).unwrap();
        let n = TSMatrix::standard_nilpotent(2, &l, 4);
        let kf = kernel_form(&n).unwrap();
        assert_eq!(kf.blocks, l);
        assert!(kf.has_unit_pivots());
    }
    let kf = kernel_form(&mat("0,x;0,0 @p=2,m=4")).unwrap();
    assert_eq!(kf.blocks, Partition::column(2));
    assert_eq!(kf.pivots, vec![vec![Order::Exact(1)]]);
    assert_eq!(kf.block(0, 1).get(0, 0).order(), Order::Exact(1));
}

#[test]
fn kernel_form_of_random_conjugates() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let theta = mat("0,x;0,0 @p=2,m=3");
    for _ in 0..50 {
        let u = loop {
            let u = rand_square(&mut rng, 2, 2, 3, 3);
            if u.det().unwrap().order() == Order::Exact(0) {
                break u;
            }
        };
        let conj = u.mul(&theta).unwrap().mul(&u.inverse().unwrap()).unwrap();
        let kf = kernel_form(&conj).unwrap();
        assert_eq!(kf.blocks, Partition::column(2));
        assert_eq!(kf.pivots, vec![vec![Order::Exact(1)]]);
        // g θ g^-1 computed independently
        let g = &kf.g;
        let direct = g.mul(&conj).unwrap().mul(&g.inverse().unwrap()).unwrap();
        assert!(direct.sub(&kf.theta).unwrap().is_zero());
        assert!(direct.get(1, 0).is_zero() && direct.get(0, 0).is_zero() && direct.get(1, 1).is_zero());
    }
}

// Straightening.

#[test]
fn classify_examples() {
    for l in [
        vec![1],
        vec![2],
        vec![1, 1],
        vec![2, 1],
        vec![1, 1, 1],
        vec![3, 2, 2, 1],
    ] {
        let l = Partition::new(l).unwrap();
        let c = classify(&TSMatrix::standard_nilpotent(2, &l, 4)).unwrap();
        assert_eq!(c.lambda, l);
        assert_eq!(c.d, 0);
        assert_eq!(c.poles, 0);
    }
    let c = classify(&mat("0,x;0,0 @p=2,m=4")).unwrap();
    assert_eq!((c.lambda.clone(), c.d), (Partition::column(2), 1));
    assert_eq!(c.poles, 0);
    let c = classify(&mat("0,1;0,0 @p=2,m=4")).unwrap();
    assert_eq!((c.lambda.clone(), c.d), (Partition::column(2), 0));
    assert!(c.is_nondegenerate());
}

#[test]
fn classify_with_poles() {
    // θ = [[0,x,0],[0,0,x],[0,0,0]]: h = diag(1, x, x^2), so d = 3
    let theta = mat("0,x,0;0,0,x;0,0,0 @p=3,m=6");
    let c = classify(&theta).unwrap();
    assert_eq!(c.lambda, Partition::column(3));
    assert_eq!(c.d, 3);
    assert_eq!(det_order(&c.g).unwrap(), 3);
    // an f-step is needed: the corner entry must be cleared
    let theta = mat("0,x,1;0,0,x;0,0,0 @p=2,m=8");
    let c = classify(&theta).unwrap();
    assert_eq!(c.lambda, Partition::column(3));
    assert_eq!(c.d, 3);
    let n = TSMatrix::standard_nilpotent(2, &c.lambda, 8);
    assert!(c.g.mul(&theta).unwrap().sub(&n.mul(&c.g).unwrap()).unwrap().is_zero());
}

#[test]
fn dynamic_precision_is_reported() {
    // sharp precision tracking certifies this one at m = 4
    let c = classify(&mat("0,x^3,0;0,0,x^3;0,0,0 @p=2,m=4")).unwrap();
    assert_eq!((c.lambda.clone(), c.d), (Partition::column(3), 9));

    let theta = mat("1+x,1,1+x;x,0,x;1+x,1,1+x @p=2,m=2");
    assert!(matches!(classify(&theta), Err(Error::InsufficientPrecision(_))));
    let c = classify_polynomial(&theta).unwrap();
    assert_eq!((c.lambda.clone(), c.d), (Partition::column(3), 1));
    assert!(c.working_precision > 2);
    assert!(c.precision >= 2);
    let n = TSMatrix::standard_nilpotent(2, &c.lambda, 8);
    let lifted = theta.lift(c.working_precision);
    assert!(c.g.mul(&lifted).unwrap().sub(&n.mul(&c.g).unwrap()).unwrap().is_zero());
}

#[test]
fn two_by_two_degree_matches_content() {
    // rank-one nilpotent 2x2: d is the order of its only invariant factor
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let theta = rand_nilpotent(&mut rng, 2, 2, 4);
        let c = classify_polynomial(&theta).unwrap();
        let polys = to_polys(&theta);
        match oracle_smith_orders(&polys, 2).first() {
            None => assert_eq!((c.lambda.clone(), c.d), (Partition::row(2), 0)),
            Some(&k) => assert_eq!((c.lambda.clone(), c.d), (Partition::column(2), k as i32)),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_orders_match_determinantal_divisors(seed in any::<u64>(), n in 1usize..4, pi in 0usize..3) {
        let p = PRIMES[pi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = rand_square(&mut rng, p, n, 3, 40);
        let s = smith_form(&m).unwrap();
        let certified: Vec<usize> = s.orders.iter().filter_map(|o| o.exact()).map(|k| k as usize).collect();
        prop_assert_eq!(certified, oracle_smith_orders(&to_polys(&m), p));
        prop_assert!(s.orders.windows(2).all(|w| w[0].bound() <= w[1].bound()));
        let d = s.g1.mul(&m).unwrap().mul(&s.g2).unwrap();
        prop_assert!(d.sub(&s.d).unwrap().is_zero());
        for i in 0..n { for j in 0..n { if i != j { prop_assert!(s.d.get(i, j).is_zero()); } } }
    }

    #[test]
    fn smith_orders_invariant_under_units(seed in any::<u64>(), n in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = rand_square(&mut rng, 2, n, 3, 40);
        let (u, _) = rand_unimodular(&mut rng, 2, n, 40, 3);
        let (v, _) = rand_unimodular(&mut rng, 2, n, 40, 3);
        let a = smith_form(&m).unwrap();
        let b = smith_form(&u.mul(&m).unwrap().mul(&v).unwrap()).unwrap();
        let ea: Vec<_> = a.orders.iter().filter_map(|o| o.exact()).collect();
        let eb: Vec<_> = b.orders.iter().filter_map(|o| o.exact()).collect();
        prop_assert_eq!(ea, eb);
    }

    #[test]
    fn hermite_orders_invariant_under_left_units(seed in any::<u64>(), n in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = rand_square(&mut rng, 3, n, 3, 40);
        let polys = to_polys(&m);
        prop_assume!((1..=n).all(|k| minor_order(&polys, &(0..k).collect::<Vec<_>>(), k, 3).is_some()));
        let (u, _) = rand_unimodular(&mut rng, 3, n, 40, 3);
        let a = hermite_form(&m).unwrap();
        let b = hermite_form(&u.mul(&m).unwrap()).unwrap();
        let oracle: Vec<i32> = oracle_hermite_orders(&polys, 3).into_iter().map(|k| k as i32).collect();
        prop_assert_eq!(exact_orders(&a.orders), oracle.clone());
        prop_assert_eq!(exact_orders(&b.orders), oracle);
        prop_assert!(a.g.mul(&m).unwrap().sub(&a.m).unwrap().is_zero());
        for i in 0..n { for j in 0..i { prop_assert!(a.m.get(i, j).is_zero()); } }
    }

    #[test]
    fn type_matches_minor_ranks(seed in any::<u64>(), n in 1usize..4, pi in 0usize..3) {
        let p = PRIMES[pi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let theta = rand_nilpotent(&mut rng, p, n, 3).lift(40);
        prop_assert_eq!(nilpotent_type(&theta).unwrap(), oracle_type(&to_polys(&theta), p));
    }

    #[test]
    fn classify_invariants(seed in any::<u64>(), n in 1usize..4, pi in 0usize..3) {
        let p = PRIMES[pi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let theta = rand_nilpotent(&mut rng, p, n, 4);
        let c = classify_polynomial(&theta).unwrap();
        prop_assert_eq!(&c.lambda, &oracle_type(&to_polys(&theta), p));
        let special = special_fiber_type(&theta).unwrap();
        prop_assert!(dominance_leq(&c.lambda, &special).unwrap());
        prop_assert_eq!(c.d == 0, special == c.lambda);
        prop_assert_eq!(c.d == 0, c.kernel.has_unit_pivots());
        prop_assert_eq!(det_order(&c.g).unwrap(), c.d);
        if c.d == 0 {
            prop_assert_eq!(c.poles, 0);
        }
        // g is kernel-strict: it maps ker θ onto the first block of ker N_λ, invertibly over R
        let lifted = theta.lift(c.working_precision);
        let sm = smith_form(&lifted).unwrap();
        let l1 = c.lambda.part(0);
        let kern = sm.g2.block(0, n, sm.rank(), n);
        let image = c.g.mul(&kern).unwrap();
        for i in l1..n { for j in 0..l1 { prop_assert!(image.get(i, j).is_zero()); } }
        let top = image.block(0, l1, 0, l1);
        prop_assert_eq!(top.pole_order(), 0);
        prop_assert_eq!(det_order(&top).unwrap(), 0);

        // conjugation invariance
        let w = 48;
        let (u, uinv) = rand_unimodular(&mut rng, p, n, w as usize, 2);
        let conj = u.mul(&theta.lift(w)).unwrap().mul(&uinv).unwrap();
        prop_assume!(conj.degree() < 16);
        let conj = conj.truncate(conj.degree() + 1).lift(theta.precision().max(conj.degree() + 1));
        let c2 = classify_polynomial(&conj).unwrap();
        prop_assert_eq!(c2.lambda, c.lambda);
        prop_assert_eq!(c2.d, c.d);
    }
}
