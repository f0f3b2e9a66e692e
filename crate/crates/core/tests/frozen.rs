use num::{One, Zero};
use taukit_core::models::{
    gauss_closed_form, normal_matrix_map, quartic_series, two_matrix_series, ModelCoefficients,
};
use taukit_core::oracle::{quartic_wick, wick_gaussian_moment, wick_pairing_count};
use taukit_core::symfun::{
    complete_h, int, rat, rpow, schur, schur_from_eigenvalues, skew_schur, Rational, TimesVector,
    UPoly,
};
use taukit_core::tau::{baker_akhiezer, hyper_pfs};
use taukit_core::weights::{
    c_constant, content_product, hook_product, hook_product_q, pochhammer, pochhammer_partition,
    skew_content_product, WeightTable,
};
use taukit_core::{enumerate, ContentFunction, Partition, Side, SkewShape};

fn p(v: &[usize]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

fn sorted<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    v.sort();
    v
}

fn times(v: &[Rational]) -> TimesVector {
    TimesVector::new(v.to_vec())
}

#[test]
fn conjugates_and_frobenius() {
    assert_eq!(p(&[3, 3, 1]).conjugate(), p(&[3, 2, 2]));
    assert_eq!(p(&[5]).conjugate(), p(&[1, 1, 1, 1, 1]));
    assert_eq!(p(&[3, 3, 1]).frobenius(), (vec![2, 1], vec![2, 0]));
    assert_eq!(p(&[3, 2, 2]).frobenius(), (vec![2, 0], vec![2, 1]));
    assert_eq!(p(&[4, 2, 2, 1]).frobenius(), (vec![3, 0], vec![3, 1]));
}

#[test]
fn contents_and_hooks() {
    assert_eq!(sorted(p(&[3, 3, 1]).contents()), vec![-2, -1, 0, 0, 1, 1, 2]);
    assert_eq!(sorted(p(&[2, 2]).contents()), vec![-1, 0, 0, 1]);
    assert_eq!(sorted(p(&[2, 2]).hooks()), vec![1, 2, 2, 3]);
    assert_eq!(sorted(p(&[2, 1]).hooks()), vec![1, 1, 3]);
    assert_eq!(hook_product(&p(&[2, 2])), 12.into());
    let q = rat(1, 3);
    assert_eq!(hook_product_q(&p(&[1]), &q), Rational::one() - &q);
}

#[test]
fn enumeration_order() {
    let got: Vec<String> = enumerate(4, None, None).into_iter().map(|l| l.to_string()).collect();
    let want = [
        "[]", "[1]", "[2]", "[1,1]", "[3]", "[2,1]", "[1,1,1]", "[4]", "[3,1]", "[2,2]", "[2,1,1]",
        "[1,1,1,1]",
    ];
    assert_eq!(got, want);
    let rows: Vec<Partition> = enumerate(3, Some(1), None).into_iter().collect();
    assert_eq!(rows, vec![Partition::empty(), p(&[1]), p(&[2]), p(&[3])]);
}

#[test]
fn complete_and_schur_polynomials() {
    let (a, b, c) = (rat(1, 2), rat(1, 3), rat(1, 5));
    let t = times(&[a.clone(), b.clone(), c.clone()]);
    assert_eq!(complete_h(3, &t), rpow(&a, 3) / int(6) + &a * &b + &c);
    assert_eq!(schur(&p(&[2, 1]), &t), rpow(&a, 3) / int(3) - &c);
    assert_eq!(skew_schur(&p(&[3]), &p(&[1]), &t), complete_h(2, &t));
    assert_eq!(skew_schur(&p(&[2, 1]), &p(&[1]), &t), &a * &a);
}

#[test]
fn schur_at_special_points() {
    let lambda = p(&[3, 3, 1]);
    let a = rat(2, 7);
    let h = Rational::from_integer(hook_product(&lambda));
    assert_eq!(
        schur(&lambda, &TimesVector::t_a(&a, 7)),
        pochhammer_partition(&a, &lambda) / &h
    );
    assert_eq!(schur_from_eigenvalues(&p(&[2]), &[int(2), int(3)]), int(19));
    for n in 1..=3usize {
        let ones = vec![int(1); n];
        for l in enumerate(5, Some(n), None) {
            let h = Rational::from_integer(hook_product(&l));
            assert_eq!(
                schur_from_eigenvalues(&l, &ones),
                pochhammer_partition(&int(n as i64), &l) / h
            );
        }
    }
    let m = TimesVector::miwa(&[int(2), int(-2)], 1, 4);
    assert_eq!(m.entries(), &[int(0), int(4), int(0), int(8)]);
}

#[test]
fn content_products() {
    let r = ContentFunction::rational(vec![rat(1, 3)], vec![rat(2, 7)]);
    let x = 2;
    let f = |k: i64| r.eval(k).unwrap();
    let want = f(x + 2) * f(x + 1) * f(x + 1) * f(x) * f(x) * f(x - 1) * f(x - 2);
    assert_eq!(content_product(&r, x, &p(&[3, 3, 1])).unwrap(), want);
    for n in [-3i64, 2, 5] {
        assert_eq!(
            content_product(&ContentFunction::linear(), n, &p(&[2])).unwrap(),
            int(n * (n + 1))
        );
    }
    let skew = SkewShape::new(p(&[2, 1]), p(&[1])).unwrap();
    assert_eq!(skew_content_product(&ContentFunction::linear(), 3, &skew).unwrap(), int(8));
    let a = rat(-5, 3);
    assert_eq!(pochhammer_partition(&a, &p(&[2])), &a * (&a + int(1)));
}

#[test]
fn c_constants() {
    assert_eq!(c_constant(&ContentFunction::shifted_linear(int(1)), 2).unwrap(), rat(1, 2));
    assert_eq!(
        c_constant(&ContentFunction::shifted_linear(int(3)), 3).unwrap(),
        Rational::one() / int(27 * 16 * 5)
    );
}

#[test]
fn graded_weight_sums() {
    let t = WeightTable::new(&ContentFunction::shifted_linear(int(1)), 0, 2, None).unwrap();
    let s: Rational = t.graded_sum().iter().sum();
    assert_eq!(s, int(4));
    let t = WeightTable::new(&ContentFunction::one(), 0, 3, None).unwrap();
    assert_eq!(t.graded_sum(), vec![int(1), int(1), int(2), int(3)]);
}

#[test]
fn one_variable_hypergeometric() {
    let s = hyper_pfs(&[], &[], 0, Side::Eigen(vec![int(1)]), 5).unwrap();
    let want = [int(1), int(1), rat(1, 2), rat(1, 6), rat(1, 24), rat(1, 120)];
    assert_eq!(s.graded(), want);
    let a = rat(3, 4);
    let s = hyper_pfs(&[a.clone()], &[], 0, Side::EigenFormal(1), 10).unwrap();
    let mut fact = Rational::one();
    for (m, c) in s.row_coefficients().iter().enumerate() {
        if m > 0 {
            fact *= int(m as i64);
        }
        assert_eq!(c, &(pochhammer(&a, m) / &fact));
    }
}

#[test]
fn baker_akhiezer_values() {
    let inf = TimesVector::t_inf(8);
    let c = baker_akhiezer(&ContentFunction::one(), 0, &inf, 6).unwrap();
    let mut fact = Rational::one();
    for (m, x) in c.iter().enumerate() {
        if m > 0 {
            fact *= int(m as i64);
        }
        let sign = if m % 2 == 0 { int(1) } else { int(-1) };
        assert_eq!(x, &(sign / &fact));
    }
    let c = baker_akhiezer(&ContentFunction::linear(), 2, &inf, 6).unwrap();
    assert!(c[3..].iter().all(Zero::is_zero));
}

#[test]
fn gauss_closed_form_low_orders() {
    // exp((t1 s1 + t2 s1^2 + s2 t1^2) / (1 - 4 t2 s2)) / sqrt(1 - 4 t2 s2)
    let g = gauss_closed_form(4).unwrap();
    let sp = g.space().clone();
    let idx = |n: &str| sp.index_of(n).unwrap();
    let mono = |pairs: &[(&str, u32)]| {
        let mut m = vec![0u32; sp.nvars()];
        for &(n, e) in pairs {
            m[idx(n)] = e;
        }
        m
    };
    assert_eq!(g.coeff(&mono(&[])), int(1));
    assert_eq!(g.coeff(&mono(&[("t1", 1), ("s1", 1)])), int(1));
    assert_eq!(g.coeff(&mono(&[("t2", 1), ("s2", 1)])), int(2));
    assert_eq!(g.coeff(&mono(&[("t2", 1), ("s1", 2)])), int(1));
    assert_eq!(g.coeff(&mono(&[("t1", 2), ("s1", 2)])), rat(1, 2));
    assert_eq!(g.coeff(&mono(&[("t2", 2), ("s2", 2)])), int(6));
    let m = two_matrix_series(1, Side::Formal(2), Side::Formal(2), 4).unwrap();
    let ModelCoefficients::Series(s) = m.coefficients else { panic!("series expected") };
    assert_eq!(s, g);
}

#[test]
fn quartic_orders_against_wick() {
    let s = quartic_series(2).unwrap();
    assert_eq!(s.orders[1], UPoly::new(vec![rat(-1, 4), int(0), rat(-1, 2)]));
    assert_eq!(s.orders[2], UPoly::new(vec![rat(61, 32), int(0), rat(5, 4), int(0), rat(1, 8)]));
    assert_eq!(quartic_wick(2).unwrap(), s.orders);
    let p2 = wick_pairing_count(&[4, 4]).unwrap();
    let total: Rational = p2.coeffs().iter().sum();
    assert_eq!(total, int(105));
}

#[test]
fn wick_second_moment() {
    for n in 1..=5 {
        let g = rat(3, 2);
        assert_eq!(wick_gaussian_moment(&[2], n, &g).unwrap(), int(n) / &g);
    }
}

#[test]
fn normal_matrix_dictionary() {
    let map = normal_matrix_map(&TimesVector::new(vec![int(1)]), 6).unwrap();
    for m in 1..=6i64 {
        assert_eq!(map.table[&-m], int(m));
    }
    let mut fact = Rational::one();
    for (m, h) in map.rebuild_h().iter().enumerate() {
        if m > 0 {
            fact *= int(m as i64);
        }
        assert_eq!(h, &fact.recip());
    }
    let u = TimesVector::new(vec![int(1), rat(1, 2)]);
    let map = normal_matrix_map(&u, 5).unwrap();
    for m in 1..=5i64 {
        let want = complete_h(m as usize - 1, &u) / complete_h(m as usize, &u);
        assert_eq!(map.table[&-m], want);
    }
}
