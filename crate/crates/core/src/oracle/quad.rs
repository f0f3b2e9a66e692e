//! Moment measures `mu_r`: numerical moments on their contours and the annihilation
//! identity on the series.

use std::f64::consts::PI;

use num::complex::Complex64;
use num::{One, Zero};
use serde_json::json;

use crate::error::TauError;
use crate::symfun::{int, Rational};
use crate::tau::{tau_series, Side, TauSpec};
use crate::weights::{pochhammer, ContentFunction};

const GL_ORDER: usize = 10;

fn gauss_legendre_nodes() -> Vec<(f64, f64)> {
    let n = GL_ORDER;
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// Composite Gauss-Legendre over `[lo, hi]` with `panels` panels.
fn integrate<F: Fn(f64) -> Complex64>(f: F, lo: f64, hi: f64, panels: usize, nodes: &[(f64, f64)]) -> Complex64 {
    let h = (hi - lo) / panels as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let mid = lo + (p as f64 + 0.5) * h;
        for &(x, w) in nodes {
            acc += f(mid + 0.5 * h * x) * (0.5 * h * w);
        }
    }
    acc
}

/// Contours and measures with known moments.
#[derive(Clone, Debug, PartialEq)]
pub enum MomentCase {
    /// `mu = e^{-xy}`, `x` on the real axis, `y` on the imaginary axis from `+i inf` to `-i inf`.
    RealImaginary,
    /// `mu = (xy)^{-1} e^{1/(xy)}`, both on the positive unit circle.
    Circles,
    /// `1F1(a; b; -x)` on `[0, inf)` with `a - b` a positive integer, so the integrand is
    /// `e^{-x}` times a polynomial. `a = b` gives `e^{-x}`.
    HalfLine { a: Rational, b: Rational },
    /// `(1 - x)^{-a}` on `[0, 1]`, `a < 1`.
    UnitInterval { a: Rational },
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuadReport {
    pub case: MomentCase,
    pub n: usize,
    pub m: usize,
    pub value: (f64, f64),
    /// Same quadrature with the step halved.
    pub refined: (f64, f64),
    pub exact: (f64, f64),
    /// Error relative to the diagonal scale of the case.
    pub rel_error: f64,
    /// Relative change between the two steps.
    pub step_change: f64,
}

impl QuadReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.rel_error <= tol
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "case": self.case.to_string(),
            "n": self.n,
            "m": self.m,
            "value": [self.refined.0, self.refined.1],
            "exact": [self.exact.0, self.exact.1],
            "rel_error": self.rel_error,
            "step_change": self.step_change,
        })
    }
}

impl std::fmt::Display for MomentCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MomentCase::RealImaginary => write!(f, "real-imaginary e^(-xy)"),
            MomentCase::Circles => write!(f, "circles (xy)^(-1) e^(1/(xy))"),
            MomentCase::HalfLine { a, b } => write!(f, "half-line 1F1({a}; {b}; -x)"),
            MomentCase::UnitInterval { a } => write!(f, "interval (1-x)^(-{a})"),
        }
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn real_imaginary(n: usize, m: usize, panels: usize, nodes: &[(f64, f64)]) -> Complex64 {
    // Damping e^{-x^2} on the variable with the larger power leaves the iterated
    // integral unchanged; the roles of x and s are symmetric.
    let (p, q) = if n >= m { (n, m) } else { (m, n) };
    let (lx, ls) = (9.0, 22.0);
    let inner = |s: f64| -> Complex64 {
        integrate(
            |x| Complex64::new(0.0, -x * s).exp() * (x.powi(p as i32) * (-x * x).exp()),
            -lx,
            lx,
            panels,
            nodes,
        )
    };
    let j = integrate(|s| inner(s) * s.powi(q as i32), -ls, ls, 2 * panels, nodes);
    // y = i s runs from +i inf to -i inf: dy = -i ds over s increasing.
    Complex64::new(0.0, -1.0) * Complex64::new(0.0, 1.0).powu(m as u32) * j
}

fn circles(n: usize, m: usize, points: usize) -> Complex64 {
    let h = 2.0 * PI / points as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for a in 0..points {
        for b in 0..points {
            let (phi, psi) = (a as f64 * h, b as f64 * h);
            let w = Complex64::new(0.0, -(phi + psi)).exp().exp();
            acc += w * Complex64::new(0.0, n as f64 * phi + m as f64 * psi).exp();
        }
    }
    // dx/x dy/y = (i dphi)(i dpsi).
    -acc * h * h
}

fn kummer_poly(a: &Rational, b: &Rational) -> Result<Vec<f64>, TauError> {
    let k = a - b;
    if !k.is_integer() || k < Rational::zero() {
        return Err(TauError::Precondition(format!(
            "half-line case needs a - b a nonnegative integer, got a={a} b={b}"
        )));
    }
    let c = b - a;
    let deg: usize = k.to_integer().try_into().unwrap_or(0);
    let mut out = Vec::with_capacity(deg + 1);
    for j in 0..=deg {
        let v = pochhammer(&c, j) / (pochhammer(b, j) * int((1..=j as i64).product::<i64>().max(1)));
        out.push(crate::symfun::rational_to_f64(&v));
    }
    Ok(out)
}

fn half_line(coeffs: &[f64], n: usize, panels: usize, nodes: &[(f64, f64)]) -> f64 {
    let f = |x: f64| {
        let p: f64 = coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c);
        Complex64::new(x.powi(n as i32) * p * (-x).exp(), 0.0)
    };
    integrate(f, 0.0, 80.0, panels, nodes).re
}

fn unit_interval(a: f64, n: usize, panels: usize, nodes: &[(f64, f64)]) -> f64 {
    if a > 0.0 {
        // t = (1 - x)^{1 - a} removes the endpoint singularity.
        let p = 1.0 / (1.0 - a);
        let f = |t: f64| Complex64::new((1.0 - t.powf(p)).powi(n as i32) * p, 0.0);
        integrate(f, 0.0, 1.0, panels, nodes).re
    } else {
        let f = |x: f64| Complex64::new(x.powi(n as i32) * (1.0 - x).powf(-a), 0.0);
        integrate(f, 0.0, 1.0, panels, nodes).re
    }
}

/// Quadrature of the `(n, m)` moment against its closed form.
pub fn mu_moment_check(case: &MomentCase, n: usize, m: usize) -> Result<QuadReport, TauError> {
    if n > 8 || m > 8 {
        return Err(TauError::Precondition("moment indices must be at most 8".into()));
    }
    let nodes = gauss_legendre_nodes();
    let (value, refined, exact, scale) = match case {
        MomentCase::RealImaginary => {
            let v = real_imaginary(n, m, 48, &nodes);
            let r = real_imaginary(n, m, 96, &nodes);
            let e = if n == m {
                Complex64::new(0.0, -2.0 * PI * factorial(n))
            } else {
                Complex64::new(0.0, 0.0)
            };
            (v, r, e, 2.0 * PI * factorial(n.max(m)))
        }
        MomentCase::Circles => {
            let v = circles(n, m, 32);
            let r = circles(n, m, 64);
            let e = if n == m {
                Complex64::new(-4.0 * PI * PI / factorial(n), 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            };
            (v, r, e, 4.0 * PI * PI / factorial(n.min(m)))
        }
        MomentCase::HalfLine { a, b } => {
            if m != n {
                return Err(TauError::Precondition("half-line moments are single-index".into()));
            }
            let c = kummer_poly(a, b)?;
            let v = half_line(&c, n, 80, &nodes);
            let r = half_line(&c, n, 160, &nodes);
            let one = Rational::one();
            let e = if a == b {
                Rational::one()
            } else {
                let den = pochhammer(&(&one - a), n + 1);
                if den.is_zero() {
                    return Err(TauError::Precondition(format!(
                        "moment {n} of 1F1({a}; {b}; -x) has no closed form"
                    )));
                }
                pochhammer(&(&one - b), n + 1) / den
            };
            let e = crate::symfun::rational_to_f64(&e) * factorial(n);
            let z = |x: f64| Complex64::new(x, 0.0);
            (z(v), z(r), z(e), e.abs())
        }
        MomentCase::UnitInterval { a } => {
            if m != n {
                return Err(TauError::Precondition("interval moments are single-index".into()));
            }
            if *a >= Rational::one() {
                return Err(TauError::Precondition(format!("(1-x)^(-a) diverges on [0,1] for a = {a}")));
            }
            let af = crate::symfun::rational_to_f64(a);
            let v = unit_interval(af, n, 16, &nodes);
            let r = unit_interval(af, n, 32, &nodes);
            let two = int(2);
            let e = Rational::one() / ((Rational::one() - a) * pochhammer(&(two - a), n));
            let e = crate::symfun::rational_to_f64(&e) * factorial(n);
            let z = |x: f64| Complex64::new(x, 0.0);
            (z(v), z(r), z(e), e.abs())
        }
    };
    if !value.re.is_finite() || !value.im.is_finite() {
        return Err(TauError::Precondition(format!("quadrature diverged for {case:?} at ({n},{m})")));
    }
    let rel_error = (refined - exact).norm() / scale;
    let step_change = (refined - value).norm() / scale;
    Ok(QuadReport {
        case: case.clone(),
        n,
        m,
        value: (value.re, value.im),
        refined: (refined.re, refined.im),
        exact: (exact.re, exact.im),
        rel_error,
        step_change,
    })
}

/// `mu_r(x) = 1 + x / r(-1) + x^2 / (r(-1) r(-2)) + ...`, read off the tau series of
/// `1/r'` at charge 1 with both sides at the single eigenvalue 1.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentMeasure {
    pub r: ContentFunction,
    pub coeffs: Vec<Rational>,
}

impl MomentMeasure {
    pub fn new(r: &ContentFunction, d: usize) -> Result<Self, TauError> {
        for m in 1..=d as i64 {
            if r.eval(-m)?.is_zero() {
                return Err(TauError::ZeroOfR { k: -m });
            }
        }
        let inv = r.reflect().reciprocal();
        let one = Side::Eigen(vec![Rational::one()]);
        let series = tau_series(&TauSpec::new(inv, 1, one.clone(), one), d)?;
        Ok(MomentMeasure {
            r: r.clone(),
            coeffs: series.row_coefficients(),
        })
    }

    /// `pFs(a; b; -x)` coefficients.
    pub fn pfs_coefficients(a: &[Rational], b: &[Rational], d: usize) -> Vec<Rational> {
        let mut out = Vec::with_capacity(d + 1);
        for m in 0..=d {
            let mut c: Rational = a.iter().map(|x| pochhammer(x, m)).product();
            c /= b.iter().map(|x| pochhammer(x, m)).product::<Rational>();
            c /= int((1..=m as i64).product::<i64>().max(1));
            if m % 2 == 1 {
                c = -c;
            }
            out.push(c);
        }
        out
    }

    /// `r(k) = k prod (b_i - k - 1) / prod (a_i - k - 1)`, whose measure is `pFs(a; b; -x)`.
    pub fn pfs_r(a: &[Rational], b: &[Rational]) -> ContentFunction {
        let one = Rational::one();
        let mut num = vec![Rational::zero()];
        num.extend(b.iter().map(|x| &one - x));
        let den: Vec<Rational> = a.iter().map(|x| &one - x).collect();
        let sign = if (b.len() + a.len()).is_multiple_of(2) { int(1) } else { int(-1) };
        ContentFunction::rational(num, den).with_scale(sign)
    }
}

/// `(1 - x^{-1} r(-D_x)) mu_r(x)` coefficient by coefficient through degree `D - 1`.
pub fn mu_annihilation_check(measure: &MomentMeasure, d: usize) -> Result<Vec<Rational>, TauError> {
    let c = &measure.coeffs;
    if c.len() < d + 1 {
        return Err(TauError::Precondition("measure series is shorter than the check degree".into()));
    }
    (0..d)
        .map(|m| {
            let shifted = measure.r.eval(-(m as i64 + 1))? * &c[m + 1];
            Ok(&c[m] - shifted)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfun::rat;

    #[test]
    fn nodes_integrate_polynomials() {
        let nodes = gauss_legendre_nodes();
        let v = integrate(|x| Complex64::new(x.powi(7) + x * x, 0.0), 0.0, 1.0, 1, &nodes);
        assert!((v.re - (1.0 / 8.0 + 1.0 / 3.0)).abs() < 1e-14);
    }

    #[test]
    fn circle_and_interval() {
        let r = mu_moment_check(&MomentCase::Circles, 3, 3).unwrap();
        assert!(r.passed(1e-10), "{r:?}");
        let r = mu_moment_check(&MomentCase::Circles, 2, 4).unwrap();
        assert!(r.passed(1e-10), "{r:?}");
        for n in 0..=4 {
            let r = mu_moment_check(&MomentCase::UnitInterval { a: int(-1) }, n, n).unwrap();
            assert!(r.passed(1e-10), "{r:?}");
        }
        let r = mu_moment_check(&MomentCase::UnitInterval { a: rat(1, 2) }, 2, 2).unwrap();
        assert!(r.passed(1e-8), "{r:?}");
        assert!(mu_moment_check(&MomentCase::UnitInterval { a: int(1) }, 0, 0).is_err());
    }

    #[test]
    fn half_line() {
        for (a, b) in [(int(1), int(1)), (rat(7, 2), rat(1, 2))] {
            for n in 0..=3 {
                let r = mu_moment_check(&MomentCase::HalfLine { a: a.clone(), b: b.clone() }, n, n).unwrap();
                assert!(r.passed(1e-9), "{r:?}");
            }
        }
    }

    #[test]
    fn real_imaginary_diagonal() {
        let r = mu_moment_check(&MomentCase::RealImaginary, 2, 2).unwrap();
        assert!(r.passed(1e-6), "{r:?}");
        let r = mu_moment_check(&MomentCase::RealImaginary, 1, 3).unwrap();
        assert!(r.passed(1e-6), "{r:?}");
    }

    #[test]
    fn annihilation() {
        let mu = MomentMeasure::new(&ContentFunction::linear(), 8).unwrap();
        let exp: Vec<Rational> = MomentMeasure::pfs_coefficients(&[], &[], 8);
        assert_eq!(mu.coeffs, exp);
        assert!(mu_annihilation_check(&mu, 8).unwrap().iter().all(|c| c.is_zero()));
        let (a, b) = (vec![rat(1, 2)], vec![rat(3, 2), rat(5, 3)]);
        let mu = MomentMeasure::new(&MomentMeasure::pfs_r(&a, &b), 8).unwrap();
        assert_eq!(mu.coeffs, MomentMeasure::pfs_coefficients(&a, &b, 8));
        assert!(MomentMeasure::new(&ContentFunction::shifted_linear(int(2)), 3).is_err());
    }
}
