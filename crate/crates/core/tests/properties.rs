use num::{One, Zero};
use proptest::prelude::*;
use taukit_core::models::{quartic_conjugation_failures, quartic_series};
use taukit_core::symfun::{
    int, rat, schur, schur_from_eigenvalues, schur_bialternant, schur_from_h, h_sequence, skew_schur, skew_schur_from_h,
    standard_product, symbolic_vars, Rational, TimesVector,
};
use taukit_core::tau::hirota_residual;
use taukit_core::weights::{
    content_product, hook_product, hook_product_q, pochhammer_partition, skew_content_product,
};
use taukit_core::{enumerate, tau_series, ContentFunction, Partition, PolySeries, Side, SkewShape,
    TauSpec, VarSpace};

fn partition(max_weight: usize) -> impl Strategy<Value = Partition> {
    let all: Vec<Partition> = enumerate(max_weight, None, None).into_iter().collect();
    proptest::sample::select(all)
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn off_integer() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 2i64..=6)
        .prop_filter("non-integer", |(n, d)| n % d != 0)
        .prop_map(|(n, d)| rat(n, d))
}

/// Rational r with no zero or pole at any integer.
fn content_function() -> impl Strategy<Value = ContentFunction> {
    (
        proptest::collection::vec(off_integer(), 0..3),
        proptest::collection::vec(off_integer(), 0..3),
        small_rational().prop_filter("nonzero", |c| !c.is_zero()),
    )
        .prop_map(|(a, b, c)| ContentFunction::rational(a, b).with_scale(c))
}

fn sorted<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    v.sort();
    v
}

fn euler_counts(k: usize) -> Vec<u64> {
    let mut p = vec![0i64; k + 1];
    p[0] = 1;
    for n in 1..=k as i64 {
        let mut acc = 0i64;
        for j in 1.. {
            let g1 = j * (3 * j - 1) / 2;
            if g1 > n {
                break;
            }
            let sign = if j % 2 == 1 { 1 } else { -1 };
            acc += sign * p[(n - g1) as usize];
            let g2 = j * (3 * j + 1) / 2;
            if g2 <= n {
                acc += sign * p[(n - g2) as usize];
            }
        }
        p[n as usize] = acc;
    }
    p.into_iter().map(|x| x as u64).collect()
}

#[test]
fn enumerate_counts_match_pentagonal_recurrence() {
    let p = euler_counts(16);
    let mut cum = 0;
    for (k, pk) in p.iter().enumerate() {
        cum += pk;
        assert_eq!(enumerate(k, None, None).into_iter().count() as u64, cum, "k = {k}");
    }
}

#[test]
fn limit_degenerations() {
    let q = rat(1, 3);
    for l in enumerate(6, None, None) {
        let d = l.weight().max(1);
        let h = Rational::from_integer(hook_product(&l));
        assert_eq!(schur(&l, &TimesVector::t_inf(d)), h.recip());
        let nq = num::pow(q.clone(), l.n_lambda());
        assert_eq!(schur(&l, &TimesVector::q_geometric(&q, d)), nq / hook_product_q(&l, &q));
    }
}

#[test]
fn skew_littlewood_richardson_pairing() {
    let d = 6;
    let sp = VarSpace::times("t", d);
    let caps = [d as u32];
    let proto = PolySeries::zero(&sp, &caps);
    let h = h_sequence(&symbolic_vars(&sp, &caps, 0), &proto, d);
    let all: Vec<Partition> = enumerate(d, None, None).into_iter().collect();
    let s: Vec<PolySeries> = all.iter().map(|l| schur_from_h(l, &h)).collect();
    for (i, lambda) in all.iter().enumerate() {
        for (j, mu) in all.iter().enumerate() {
            if !lambda.contains(mu) {
                continue;
            }
            let skew = skew_schur_from_h(&SkewShape::new(lambda.clone(), mu.clone()).unwrap(), &h);
            for (k, nu) in all.iter().enumerate() {
                if mu.weight() + nu.weight() != lambda.weight() {
                    continue;
                }
                let left = standard_product(&skew, &s[k]);
                let right = standard_product(&s[i], &s[j].mul(&s[k]));
                assert_eq!(left, right, "{lambda}/{mu} vs {nu}");
            }
        }
    }
}

#[test]
fn quartic_orders_are_even_in_n() {
    assert!(quartic_conjugation_failures(2).is_empty());
    let s = quartic_series(2).unwrap();
    for o in &s.orders {
        assert!(o.is_even());
    }
    for n in 1..=6 {
        let v = s.orders[1].eval(&int(n));
        assert_eq!(v, -(int(n * n) / int(2) + rat(1, 4)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugation_preserves_weight_hooks_and_negates_contents(l in partition(12)) {
        let c = l.conjugate();
        prop_assert_eq!(c.weight(), l.weight());
        prop_assert_eq!(sorted(c.hooks()), sorted(l.hooks()));
        prop_assert_eq!(sorted(c.contents()), sorted(l.contents().into_iter().map(|x| -x).collect()));
        prop_assert_eq!(c.conjugate(), l);
    }

    #[test]
    fn frobenius_roundtrip(l in partition(12)) {
        let (a, b) = l.frobenius();
        prop_assert_eq!(Partition::from_frobenius(&a, &b).unwrap(), l);
    }

    #[test]
    fn display_parse_roundtrip(l in partition(10)) {
        prop_assert_eq!(l.to_string().parse::<Partition>().unwrap(), l);
    }

    #[test]
    fn jacobi_trudi_matches_bialternant(
        l in partition(8),
        xs in proptest::collection::btree_set((-7i64..=7, 1i64..=4).prop_map(|(n, d)| rat(n, d)), 1..=4),
    ) {
        let x: Vec<Rational> = xs.into_iter().collect();
        let k = l.weight().max(1);
        let via_times = schur(&l, &TimesVector::miwa(&x, 1, k));
        prop_assert_eq!(via_times, schur_from_eigenvalues(&l, &x));
        let direct = schur_bialternant(&l, &x);
        if l.len() <= x.len() {
            prop_assert_eq!(direct.unwrap(), schur_from_eigenvalues(&l, &x));
        }
    }

    #[test]
    fn schur_conjugation_rule(l in partition(8), t in proptest::collection::vec(small_rational(), 8)) {
        let tv = TimesVector::new(t);
        let sign = if l.weight() % 2 == 0 { int(1) } else { int(-1) };
        prop_assert_eq!(schur(&l.conjugate(), &tv.neg()), sign * schur(&l, &tv));
    }

    #[test]
    fn skew_by_empty_is_schur(l in partition(8), m in partition(4), t in proptest::collection::vec(small_rational(), 8)) {
        let tv = TimesVector::new(t);
        prop_assert_eq!(skew_schur(&l, &Partition::empty(), &tv), schur(&l, &tv));
        if !l.contains(&m) {
            prop_assert!(skew_schur(&l, &m, &tv).is_zero());
        }
    }

    #[test]
    fn weight_conjugation(r in content_function(), l in partition(8), n in -4i64..=4) {
        let lhs = content_product(&r.reflect(), n, &l).unwrap();
        prop_assert_eq!(lhs, content_product(&r, -n, &l.conjugate()).unwrap());
    }

    #[test]
    fn weight_multiplicative_over_skew(r in content_function(), l in partition(8), m in partition(8), n in -4i64..=4) {
        prop_assume!(l.contains(&m));
        let skew = SkewShape::new(l.clone(), m.clone()).unwrap();
        let whole = content_product(&r, n, &l).unwrap();
        let split = content_product(&r, n, &m).unwrap() * skew_content_product(&r, n, &skew).unwrap();
        prop_assert_eq!(whole, split);
    }

    #[test]
    fn pochhammer_is_shifted_linear_content(a in small_rational(), l in partition(10)) {
        let r = ContentFunction::shifted_linear(a.clone());
        prop_assert_eq!(pochhammer_partition(&a, &l), content_product(&r, 0, &l).unwrap());
    }

    #[test]
    fn zero_of_r_truncates_length(k in 1i64..=3, n in -2i64..=3) {
        // r(n - k) = 0
        let r = ContentFunction::shifted_linear(int(k - n));
        let s = tau_series(&TauSpec::new(r, n, Side::Formal(6), Side::Formal(6)), 6).unwrap();
        for (l, c) in s.terms() {
            prop_assert!(l.len() as i64 <= k || c.is_zero(), "{} survives", l);
        }
    }

    #[test]
    fn hirota_vanishes_for_sampled_r(r in content_function(), n in -2i64..=2) {
        let res = hirota_residual(&r, n, 4, &Rational::one()).unwrap();
        prop_assert!(res.is_empty(), "{}", res);
    }
}
