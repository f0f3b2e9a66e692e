//! Hirota residual, Baker-Akhiezer coefficients and symmetries of tau.

use num::{One, Zero};

use super::{tau_series, Side, TauSpec};
use crate::error::TauError;
use crate::symfun::{rpow, PolySeries, Rational, TimesVector};
use crate::weights::ContentFunction;

fn formal(r: &ContentFunction, n: i64, d: usize) -> Result<PolySeries, TauError> {
    Ok(tau_series(&TauSpec::new(r.clone(), n, Side::Formal(d), Side::Formal(d)), d)?.expand())
}

/// `tau(n) d_t1 d_s1 tau(n) - d_t1 tau(n) d_s1 tau(n) - coupling r(n) tau(n-1) tau(n+1)`,
/// truncated at bidegree `D - 1`. Vanishes for every `r` when `coupling = 1`.
pub fn hirota_residual(
    r: &ContentFunction,
    n: i64,
    d: usize,
    coupling: &Rational,
) -> Result<PolySeries, TauError> {
    if d == 0 {
        return Err(TauError::Precondition("Hirota residual needs D >= 1".into()));
    }
    let (lo, mid, hi) = (formal(r, n - 1, d)?, formal(r, n, d)?, formal(r, n + 1, d)?);
    let sp = mid.space().clone();
    let (t1, s1) = (sp.index_of("t1").expect("t1"), sp.index_of("s1").expect("s1"));
    let dt = mid.derivative(t1);
    let ds = mid.derivative(s1);
    let dts = dt.derivative(s1);
    let caps = [d as u32 - 1, d as u32 - 1];
    let rn = r.eval(n)?;
    let lhs = mid.mul(&dts).sub(&dt.mul(&ds));
    let rhs = lo.mul(&hi).scale(&(rn * coupling));
    Ok(lhs.sub(&rhs).truncate(&caps))
}

fn ba_coefficients(
    r: &ContentFunction,
    n: i64,
    step: i64,
    h: impl Fn(usize) -> Rational,
    d: usize,
) -> Result<Vec<Rational>, TauError> {
    let mut out = vec![Rational::one()];
    let mut acc = Rational::one();
    for m in 1..=d {
        if !acc.is_zero() {
            acc *= r.eval(n + step * (m as i64 - 1))?;
        }
        out.push(if acc.is_zero() { Rational::zero() } else { &acc * h(m) });
    }
    Ok(out)
}

/// Coefficients of `z^{n-m}` in `w(n, 0, t*, z)`: `r(n) r(n-1) ... r(n-m+1) h_m(-t*)`.
pub fn baker_akhiezer(
    r: &ContentFunction,
    n: i64,
    tstar: &TimesVector,
    d: usize,
) -> Result<Vec<Rational>, TauError> {
    let neg = tstar.neg();
    let h = |m: usize| crate::symfun::complete_h(m, &neg);
    ba_coefficients(r, n, -1, h, d)
}

/// Dual coefficients: `r(n) r(n+1) ... r(n+m-1) h_m(t*)`.
pub fn baker_akhiezer_dual(
    r: &ContentFunction,
    n: i64,
    tstar: &TimesVector,
    d: usize,
) -> Result<Vec<Rational>, TauError> {
    let h = |m: usize| crate::symfun::complete_h(m, tstar);
    ba_coefficients(r, n, 1, h, d)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymmetryReport {
    pub swap: bool,
    pub reflection: bool,
    pub scaling: bool,
}

impl SymmetryReport {
    pub fn all(&self) -> bool {
        self.swap && self.reflection && self.scaling
    }
}

/// Checks `tau(t, t*) = tau(t*, t)`, `tau_{r'}(-n, -t, -t*) = tau_r(n, t, t*)` and
/// invariance under `t_m -> a^m t_m, t*_m -> a^{-m} t*_m`, through weight `D`.
pub fn symmetry_checks(
    r: &ContentFunction,
    n: i64,
    d: usize,
    a: &Rational,
) -> Result<SymmetryReport, TauError> {
    let tau = formal(r, n, d)?;
    let sp = tau.space().clone();
    let k = sp.nvars() / 2;
    let perm: Vec<usize> = (0..2 * k).map(|v| (v + k) % (2 * k)).collect();
    let swap = tau.permute_vars(&perm, &[1, 0]) == tau;

    let minus: Vec<Rational> = vec![-Rational::one(); 2 * k];
    let reflected = formal(&r.reflect(), -n, d)?.rescale_vars(&minus);
    let reflection = reflected == tau;

    let factors: Vec<Rational> = (0..2 * k)
        .map(|v| {
            let w = sp.weight(v) as i64;
            rpow(a, if sp.group(v) == 0 { w } else { -w })
        })
        .collect();
    let scaling = !a.is_zero() && tau.rescale_vars(&factors) == tau;
    Ok(SymmetryReport {
        swap,
        reflection,
        scaling,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfun::{int, rat};

    #[test]
    fn hirota_vanishes() {
        for (r, n) in [
            (ContentFunction::one(), 0),
            (ContentFunction::shifted_linear(int(2)), 0),
            (ContentFunction::linear(), 1),
        ] {
            let res = hirota_residual(&r, n, 5, &Rational::one()).unwrap();
            assert!(res.is_empty(), "{r}: {res}");
        }
    }

    #[test]
    fn poisoned_hirota_fails() {
        let res = hirota_residual(&ContentFunction::shifted_linear(int(2)), 0, 4, &int(2)).unwrap();
        assert!(!res.is_empty());
    }

    #[test]
    fn baker_akhiezer_examples() {
        let inf = TimesVector::t_inf(6);
        let c = baker_akhiezer(&ContentFunction::one(), 0, &inf, 4).unwrap();
        assert_eq!(c, vec![int(1), int(-1), rat(1, 2), rat(-1, 6), rat(1, 24)]);
        let c = baker_akhiezer(&ContentFunction::linear(), 2, &inf, 4).unwrap();
        assert!(c[3].is_zero() && c[4].is_zero());
        assert_eq!(c[2], rat(2, 2));
        let dual = baker_akhiezer_dual(&ContentFunction::linear(), 2, &inf, 3).unwrap();
        assert_eq!(dual, vec![int(1), int(2), int(3), int(4)]);
    }

    #[test]
    fn symmetries_hold() {
        let rep = symmetry_checks(&ContentFunction::shifted_linear(int(2)), 1, 6, &int(2)).unwrap();
        assert!(rep.all(), "{rep:?}");
        let rep = symmetry_checks(&ContentFunction::one(), 0, 5, &rat(-1, 3)).unwrap();
        assert!(rep.all(), "{rep:?}");
    }
}
