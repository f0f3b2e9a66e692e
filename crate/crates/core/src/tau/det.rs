//! Determinant representations, expanded symbolically and compared with the series.

use std::sync::Arc;

use num::{One, Zero};

use super::{tau_series, Side, TauSpec};
use crate::error::TauError;
use crate::partitions::Partition;
use crate::symfun::{det, Monomial, PolySeries, Rational, VarSpace};
use crate::weights::{det_prefactor, ContentFunction};

/// A determinant form next to the series it should reproduce.
#[derive(Clone, Debug)]
pub struct DetCheck {
    pub determinant: PolySeries,
    pub series: PolySeries,
}

impl DetCheck {
    pub fn agrees(&self) -> bool {
        self.determinant.agrees_with(&self.series)
    }

    pub fn mismatches(&self) -> Vec<(Monomial, Rational, Rational)> {
        self.determinant.diff_terms(&self.series)
    }
}

/// `r(c) r(c+1) ... r(c+j-1)` for `j = 0..=len`, stopping evaluation at the first zero.
fn rising_products(r: &ContentFunction, c: i64, len: usize) -> Result<Vec<Rational>, TauError> {
    let mut out = vec![Rational::one()];
    let mut acc = Rational::one();
    for j in 0..len {
        if !acc.is_zero() {
            acc *= r.eval(c + j as i64)?;
        }
        out.push(acc.clone());
    }
    Ok(out)
}

fn vandermonde_divide(mut num: PolySeries, vars: &[usize]) -> Result<PolySeries, TauError> {
    for i in 0..vars.len() {
        for j in i + 1..vars.len() {
            num = num.div_difference(vars[i], vars[j])?;
        }
    }
    Ok(num)
}

/// `det(x_i^{N-k} tau_r(M-k+1, x_i, t*)) / Delta(x)` against `tau_r(M, x^N, t*)`.
pub fn det_rep_one_side(
    r: &ContentFunction,
    m: i64,
    n: usize,
    tstar: &Side,
    d: usize,
) -> Result<DetCheck, TauError> {
    if tstar.is_symbolic() {
        return Err(TauError::Precondition("one-sided determinant needs a numeric t*".into()));
    }
    let spec = TauSpec::new(r.clone(), m, Side::EigenFormal(n), tstar.clone());
    let series = tau_series(&spec, d)?.expand();
    let space = series.space().clone();
    let cap = (d + n * (n - 1) / 2) as u32;
    let caps = [cap];
    let h: Vec<Rational> = (0..=cap as usize)
        .map(|j| tstar.value(&Partition::row(j)).expect("numeric side"))
        .collect();
    let mut kernels = Vec::with_capacity(n);
    for k in 1..=n {
        kernels.push(rising_products(r, m - k as i64 + 1, cap as usize)?);
    }
    let matrix: Vec<Vec<PolySeries>> = (0..n)
        .map(|i| {
            (1..=n)
                .map(|k| {
                    let shift = (n - k) as u32;
                    let mut e = PolySeries::zero(&space, &caps);
                    for j in 0..=cap {
                        let c = &kernels[k - 1][j as usize] * &h[j as usize];
                        let mut mono = vec![0; n];
                        mono[i] = j + shift;
                        e.insert(mono, c);
                    }
                    e
                })
                .collect()
        })
        .collect();
    let num = det(&matrix, &PolySeries::zero(&space, &caps));
    let vars: Vec<usize> = (0..n).collect();
    let determinant = vandermonde_divide(num, &vars)?;
    Ok(DetCheck {
        determinant,
        series,
    })
}

/// `P det(tau_r(M-N+1, x_i, y_j)) / (Delta(x) Delta(y))` against `tau_r(M, x^N, y^N)`,
/// with `P = prod_{j=1}^{N-1} r(M-N+j)^{j-N}`.
pub fn det_rep_two_side(
    r: &ContentFunction,
    m: i64,
    n: usize,
    d: usize,
) -> Result<DetCheck, TauError> {
    let pre = det_prefactor(r, m, n)?;
    let spec = TauSpec::new(r.clone(), m, Side::EigenFormal(n), Side::EigenFormal(n));
    let series = tau_series(&spec, d)?.expand();
    let space: Arc<VarSpace> = series.space().clone();
    let cap = (d + n * (n - 1) / 2) as u32;
    let caps = [cap, cap];
    let w = rising_products(r, m - n as i64 + 1, cap as usize)?;
    let matrix: Vec<Vec<PolySeries>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut e = PolySeries::zero(&space, &caps);
                    for (l, c) in w.iter().enumerate() {
                        let mut mono = vec![0; 2 * n];
                        mono[i] = l as u32;
                        mono[n + j] = l as u32;
                        e.insert(mono, c.clone());
                    }
                    e
                })
                .collect()
        })
        .collect();
    let num = det(&matrix, &PolySeries::zero(&space, &caps));
    let xs: Vec<usize> = (0..n).collect();
    let ys: Vec<usize> = (n..2 * n).collect();
    let determinant = vandermonde_divide(vandermonde_divide(num, &xs)?, &ys)?.scale(&pre);
    Ok(DetCheck {
        determinant,
        series,
    })
}

/// `P det(d^{a+b} tau_r(1) / dt_1^a dt*_1^b)_{a,b<n}` against `tau_r(n)`, for `r(0) = 0`.
pub fn det_rep_derivatives(r: &ContentFunction, n: usize, d: usize) -> Result<DetCheck, TauError> {
    if n == 0 {
        return Err(TauError::Precondition("derivative determinant needs n > 0".into()));
    }
    if !r.eval(0)?.is_zero() {
        return Err(TauError::Precondition("derivative determinant needs r(0) = 0".into()));
    }
    let pre = det_prefactor(r, n as i64, n)?;
    let k = d + n - 1;
    let one = tau_series(&TauSpec::new(r.clone(), 1, Side::Formal(k), Side::Formal(k)), k)?.expand();
    let series = tau_series(&TauSpec::new(r.clone(), n as i64, Side::Formal(k), Side::Formal(k)), d)?
        .expand();
    let sp = one.space().clone();
    let (t1, s1) = (sp.index_of("t1").expect("t1"), sp.index_of("s1").expect("s1"));
    let mut rows: Vec<PolySeries> = vec![one];
    for a in 1..n {
        rows.push(rows[a - 1].derivative(t1));
    }
    let matrix: Vec<Vec<PolySeries>> = rows
        .iter()
        .map(|row| {
            let mut cols = vec![row.clone()];
            for b in 1..n {
                cols.push(cols[b - 1].derivative(s1));
            }
            cols
        })
        .collect();
    let proto = PolySeries::zero(&sp, &[d as u32, d as u32]);
    let matrix: Vec<Vec<PolySeries>> = matrix
        .into_iter()
        .map(|row| row.into_iter().map(|e| e.truncate(&[d as u32, d as u32])).collect())
        .collect();
    let determinant = det(&matrix, &proto).scale(&pre);
    Ok(DetCheck {
        determinant,
        series,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfun::{int, rat};

    #[test]
    fn one_side_n1_is_kernel() {
        let c = det_rep_one_side(&ContentFunction::shifted_linear(int(3)), 2, 1, &Side::Inf, 6).unwrap();
        assert!(c.agrees());
    }

    #[test]
    fn one_side_n2() {
        let r = ContentFunction::shifted_linear(int(3));
        assert!(det_rep_one_side(&r, 2, 2, &Side::Inf, 6).unwrap().agrees());
        assert!(det_rep_one_side(&ContentFunction::one(), 0, 2, &Side::TA(rat(1, 2)), 5)
            .unwrap()
            .agrees());
    }

    #[test]
    fn two_side_small() {
        let r = ContentFunction::shifted_linear(rat(1, 2));
        assert!(det_rep_two_side(&r, 2, 2, 5).unwrap().agrees());
        let hciz = ContentFunction::rational(vec![], vec![int(0)]);
        assert!(det_rep_two_side(&hciz, 2, 2, 5).unwrap().agrees());
    }

    #[test]
    fn derivatives_n2() {
        assert!(det_rep_derivatives(&ContentFunction::linear(), 2, 4).unwrap().agrees());
        assert!(det_rep_derivatives(&ContentFunction::one(), 2, 2).is_err());
    }

    #[test]
    fn wrong_prefactor_is_caught() {
        let r = ContentFunction::shifted_linear(rat(1, 2));
        let c = det_rep_two_side(&r, 2, 2, 4).unwrap();
        let bad = DetCheck {
            determinant: c.determinant.scale(&int(2)),
            series: c.series,
        };
        assert!(!bad.agrees());
        assert!(!bad.mismatches().is_empty());
    }
}
