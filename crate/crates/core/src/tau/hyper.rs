//! Hypergeometric specializations and their one-variable equations.

use num::{One, Zero};

use super::{tau_series, Side, TauSeries, TauSpec};
use crate::error::TauError;
use crate::symfun::{int, Rational};
use crate::weights::ContentFunction;

/// `pFs(a + M; b + M | arg)` as `tau_r(M, arg, t_inf)` with `r = rational(a, b)`.
pub fn hyper_pfs(
    a: &[Rational],
    b: &[Rational],
    m: i64,
    arg: Side,
    d: usize,
) -> Result<TauSeries, TauError> {
    let r = ContentFunction::rational(a.to_vec(), b.to_vec());
    tau_series(&TauSpec::new(r, m, arg, Side::Inf), d)
}

/// Content function of the two-argument series: `b` gains the entry `N - M`,
/// which turns `r_lambda(M)` into `(a+M)_lambda / ((b+M)_lambda (N)_lambda)`.
pub fn two_set_r(a: &[Rational], b: &[Rational], m: i64, n: usize) -> ContentFunction {
    let mut b = b.to_vec();
    b.push(int(n as i64 - m));
    ContentFunction::rational(a.to_vec(), b)
}

fn two_set_size(x: &Side, y: &Side) -> Result<usize, TauError> {
    match (x.length_cap(), y.length_cap()) {
        (Some(n), Some(k)) if n == k => Ok(n),
        _ => Err(TauError::Precondition(
            "two-argument series needs two eigenvalue sides of equal size".into(),
        )),
    }
}

pub fn hyper_two(
    a: &[Rational],
    b: &[Rational],
    m: i64,
    x: Side,
    y: Side,
    d: usize,
) -> Result<TauSeries, TauError> {
    let n = two_set_size(&x, &y)?;
    tau_series(&TauSpec::new(two_set_r(a, b, m, n), m, x, y), d)
}

/// Single-set basic series `pPhi_s(q^{a+M}; q^{b+M} | arg)`.
pub fn hyper_q_one(
    a: &[Rational],
    b: &[Rational],
    q: &Rational,
    m: i64,
    arg: Side,
    d: usize,
) -> Result<TauSeries, TauError> {
    let r = ContentFunction::q_rational(a.to_vec(), b.to_vec(), q.clone());
    tau_series(&TauSpec::new(r, m, arg, Side::QGeom(q.clone())), d)
}

pub fn hyper_q_two(
    a: &[Rational],
    b: &[Rational],
    q: &Rational,
    m: i64,
    x: Side,
    y: Side,
    d: usize,
) -> Result<TauSeries, TauError> {
    let n = two_set_size(&x, &y)?;
    let mut b = b.to_vec();
    b.push(int(n as i64 - m));
    let r = ContentFunction::q_rational(a.to_vec(), b, q.clone());
    tau_series(&TauSpec::new(r, m, x, y), d)
}

/// Coefficients of `(prod_k (theta + b_k - 1) - x prod_j (theta + a_j)) F` with
/// `theta = x d/dx`, `b_0 = 1`, for `F = sum f_m x^m`; degrees `0..D-1`.
pub fn ode_residual(a: &[Rational], b: &[Rational], f: &[Rational]) -> Vec<Rational> {
    let d = f.len().saturating_sub(1);
    (0..d)
        .map(|m| {
            let mm = int(m as i64);
            let left: Rational = b
                .iter()
                .map(|bk| &mm + bk - Rational::one())
                .product::<Rational>()
                * &mm
                * &f[m];
            if m == 0 {
                return left;
            }
            let right: Rational = a
                .iter()
                .map(|aj| &mm - Rational::one() + aj)
                .product::<Rational>()
                * &f[m - 1];
            left - right
        })
        .collect()
}

/// `(d/dx - r(M + theta)) F`, degrees `0..D-1`.
pub fn ode_residual_content(
    r: &ContentFunction,
    charge: i64,
    f: &[Rational],
) -> Result<Vec<Rational>, TauError> {
    let d = f.len().saturating_sub(1);
    (0..d)
        .map(|m| {
            let rm = if f[m].is_zero() { Rational::zero() } else { r.eval(charge + m as i64)? };
            Ok(int(m as i64 + 1) * &f[m + 1] - rm * &f[m])
        })
        .collect()
}

/// `((1 - q^theta)/x - r(M + theta)) Phi`, degrees `0..D-1`.
pub fn q_difference_residual(
    r: &ContentFunction,
    charge: i64,
    q: &Rational,
    f: &[Rational],
) -> Result<Vec<Rational>, TauError> {
    let d = f.len().saturating_sub(1);
    (0..d)
        .map(|m| {
            let rm = if f[m].is_zero() { Rational::zero() } else { r.eval(charge + m as i64)? };
            let lead = Rational::one() - num::pow(q.clone(), m + 1);
            Ok(lead * &f[m + 1] - rm * &f[m])
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use num::Signed;

    use super::*;
    use crate::partitions::Partition;
    use crate::symfun::rat;
    use crate::weights::{pochhammer, q_pochhammer};

    fn factorial(m: usize) -> Rational {
        (1..=m).map(|k| int(k as i64)).product()
    }

    #[test]
    fn exponential_partial_sums() {
        let s = hyper_pfs(&[], &[], 0, Side::Eigen(vec![int(1)]), 5).unwrap();
        let want: Vec<Rational> = (0..=5).map(|m| factorial(m).recip()).collect();
        assert_eq!(s.graded(), want);
    }

    #[test]
    fn one_f_zero_is_binomial() {
        let a = rat(3, 7);
        let s = hyper_pfs(&[a.clone()], &[], 0, Side::EigenFormal(1), 8).unwrap();
        for (m, c) in s.row_coefficients().iter().enumerate() {
            assert_eq!(c, &(pochhammer(&a, m) / factorial(m)));
        }
    }

    #[test]
    fn two_f_one_matches_recurrence_for_thirty_terms() {
        let (a, b, c) = (rat(1, 2), rat(1, 3), rat(5, 4));
        let s = hyper_pfs(&[a.clone(), b.clone()], &[c.clone()], 0, Side::EigenFormal(1), 30).unwrap();
        let f = s.row_coefficients();
        assert_eq!(f[2], &a * (&a + int(1)) * &b * (&b + int(1)) / (&c * (&c + int(1)) * int(2)));
        for m in 0..30 {
            let ratio = (&a + int(m)) * (&b + int(m)) / ((&c + int(m)) * int(m + 1));
            assert_eq!(f[m as usize + 1], &f[m as usize] * ratio);
        }
        assert!(ode_residual(&[a, b], &[c.clone()], &f).iter().all(Zero::is_zero));
    }

    #[test]
    fn charge_shifts_parameters() {
        let s = hyper_pfs(&[rat(1, 2)], &[rat(2, 3)], 2, Side::EigenFormal(1), 6).unwrap();
        let t = hyper_pfs(&[rat(5, 2)], &[rat(8, 3)], 0, Side::EigenFormal(1), 6).unwrap();
        assert_eq!(s.row_coefficients(), t.row_coefficients());
    }

    #[test]
    fn two_argument_degree_one() {
        let s = hyper_two(
            &[],
            &[],
            0,
            Side::Eigen(vec![int(1), int(2), int(3)]),
            Side::Eigen(vec![int(1), int(1), int(4)]),
            3,
        )
        .unwrap();
        assert_eq!(s.coefficient(&Partition::empty()), int(1));
        assert_eq!(s.graded()[1], int(6) * int(6) / int(3));
    }

    #[test]
    fn two_argument_one_variable_reduces() {
        let x = Side::Eigen(vec![rat(1, 2)]);
        let y = Side::Eigen(vec![int(3)]);
        let s = hyper_two(&[rat(1, 3)], &[rat(7, 5)], 0, x, y, 8).unwrap();
        let o = hyper_pfs(&[rat(1, 3)], &[rat(7, 5)], 0, Side::Eigen(vec![rat(3, 2)]), 8).unwrap();
        assert_eq!(s.graded(), o.graded());
    }

    #[test]
    fn q_exponential() {
        let q = rat(1, 3);
        let s = hyper_q_one(&[], &[], &q, 0, Side::EigenFormal(1), 10).unwrap();
        for (m, c) in s.row_coefficients().iter().enumerate() {
            assert_eq!(c, &q_pochhammer(&q, &q, m).recip());
        }
    }

    #[test]
    fn two_phi_one_q_difference() {
        let q = rat(1, 3);
        let (a, b) = (vec![int(2), int(3)], vec![int(4)]);
        let s = hyper_q_one(&a, &b, &q, 0, Side::EigenFormal(1), 30).unwrap();
        let f = s.row_coefficients();
        let r = ContentFunction::q_rational(a, b, q.clone());
        assert!(q_difference_residual(&r, 0, &q, &f).unwrap().iter().all(Zero::is_zero));
        let poisoned = ContentFunction::q_rational(vec![int(2), int(3)], vec![int(5)], q.clone());
        assert!(!q_difference_residual(&poisoned, 0, &q, &f).unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn content_form_ode() {
        let r = ContentFunction::rational(vec![rat(1, 2), rat(1, 3)], vec![rat(5, 4)]);
        let f = hyper_pfs(&[rat(1, 2), rat(1, 3)], &[rat(5, 4)], 0, Side::EigenFormal(1), 20)
            .unwrap()
            .row_coefficients();
        assert!(ode_residual_content(&r, 0, &f).unwrap().iter().all(Zero::is_zero));
        let e = hyper_pfs(&[], &[], 0, Side::EigenFormal(1), 10).unwrap().row_coefficients();
        assert!(ode_residual_content(&ContentFunction::one(), 0, &e).unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn q_to_one_trend() {
        // (q^2; q)_m / (q; q)_m -> (2)_m / m! as q -> 1
        let m = 4;
        let limit = pochhammer(&int(2), m) / factorial(m);
        let mut last = None;
        for eps in [rat(1, 2), rat(1, 4), rat(1, 8)] {
            let q = Rational::one() - eps;
            let s = hyper_q_one(&[int(2)], &[], &q, 0, Side::EigenFormal(1), m).unwrap();
            let gap = (s.row_coefficients()[m].clone() - &limit).abs();
            if let Some(prev) = last {
                assert!(gap < prev);
            }
            last = Some(gap);
        }
    }
}
