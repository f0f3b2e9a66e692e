//! Monte Carlo checks of Schur-function integrals over `U(n)` and complex Gaussian matrices.

use num::complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::partitions::{enumerate, Partition};
use crate::symfun::{rational_to_f64, schur_from_eigenvalues, Rational};
use crate::weights::hook_product;

/// A reproducible random stream: ChaCha8 seeded from `seed`, on stream `stream`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RngStream {
    pub seed: u64,
    pub stream: u64,
}

impl RngStream {
    pub fn rng(&self) -> ChaCha8Rng {
        let mut r = ChaCha8Rng::seed_from_u64(self.seed);
        r.set_stream(self.stream);
        r
    }
}

/// Dense square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct CMat {
    pub n: usize,
    pub a: Vec<Complex64>,
}

impl CMat {
    pub fn zeros(n: usize) -> Self {
        CMat {
            n,
            a: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn diag(d: &[f64]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, &x) in d.iter().enumerate() {
            m.a[i * m.n + i] = Complex64::new(x, 0.0);
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.a[i * self.n + j]
    }

    pub fn mul(&self, o: &CMat) -> CMat {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let x = self.a[i * n + k];
                if x == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.a[i * n + j] += x * o.a[k * n + j];
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> CMat {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.a[j * n + i] = self.a[i * n + j].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self.a[i * self.n + i]).sum()
    }

    /// `max |(M M^+ - I)_{ij}|`.
    pub fn unitarity_defect(&self) -> f64 {
        let p = self.mul(&self.adjoint());
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in 0..self.n {
                let e = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((p.get(i, j) - e).norm());
            }
        }
        worst
    }
}

fn gaussian(n: usize, rng: &mut ChaCha8Rng) -> CMat {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut m = CMat::zeros(n);
    for z in m.a.iter_mut() {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        *z = Complex64::new(re * s, im * s);
    }
    m
}

/// Complex Gaussian matrix with `E |Z_ij|^2 = 1`.
pub fn sample_ginibre(n: usize, rng: &mut ChaCha8Rng) -> CMat {
    gaussian(n, rng)
}

/// Haar unitary: Gram-Schmidt on the columns of a complex Gaussian matrix.
pub fn sample_haar_unitary(n: usize, rng: &mut ChaCha8Rng) -> CMat {
    let g = gaussian(n, rng);
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| (0..n).map(|i| g.get(i, j)).collect()).collect();
    for j in 0..n {
        for k in 0..j {
            let proj: Complex64 = (0..n).map(|i| cols[k][i].conj() * cols[j][i]).sum();
            for i in 0..n {
                let v = cols[k][i];
                cols[j][i] -= proj * v;
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in cols[j].iter_mut() {
            *z /= norm;
        }
    }
    let mut u = CMat::zeros(n);
    for (j, col) in cols.iter().enumerate() {
        for (i, z) in col.iter().enumerate() {
            u.a[i * n + j] = *z;
        }
    }
    u
}

fn complex_det(mut m: Vec<Vec<Complex64>>) -> Complex64 {
    let n = m.len();
    let mut det = Complex64::new(1.0, 0.0);
    for c in 0..n {
        let p = (c..n)
            .max_by(|&a, &b| m[a][c].norm().total_cmp(&m[b][c].norm()))
            .unwrap_or(c);
        if m[p][c].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= m[c][c];
        for r in c + 1..n {
            let f = m[r][c] / m[c][c];
            for k in c..n {
                let v = m[c][k];
                m[r][k] -= f * v;
            }
        }
    }
    det
}

/// `s_lambda(M)` for every `lambda` in `lambdas`, from the power sums `Tr M^k`.
fn schur_values(m: &CMat, lambdas: &[Partition], dmax: usize) -> Vec<Complex64> {
    let mut p = Vec::with_capacity(dmax);
    let mut pw = m.clone();
    for k in 1..=dmax {
        if k > 1 {
            pw = pw.mul(m);
        }
        p.push(pw.trace());
    }
    let mut h = vec![Complex64::new(1.0, 0.0)];
    for k in 1..=dmax {
        let s: Complex64 = (1..=k).map(|j| p[j - 1] * h[k - j]).sum();
        h.push(s / k as f64);
    }
    let hk = |k: i64| -> Complex64 {
        if k < 0 {
            Complex64::new(0.0, 0.0)
        } else {
            h[k as usize]
        }
    };
    lambdas
        .iter()
        .map(|l| {
            let len = l.len();
            let rows: Vec<Vec<Complex64>> = (0..len)
                .map(|i| {
                    (0..len)
                        .map(|j| hk(l.parts()[i] as i64 - i as i64 + j as i64))
                        .collect()
                })
                .collect();
            complex_det(rows)
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Ensemble {
    Haar,
    Ginibre,
}

/// Mean and standard error of one real quantity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: usize,
}

impl McEstimate {
    fn from_sums(s: f64, ss: f64, n: usize) -> Self {
        let nf = n as f64;
        let mean = s / nf;
        let var = ((ss - nf * mean * mean) / (nf - 1.0)).max(0.0);
        McEstimate {
            mean,
            std_error: (var / nf).sqrt(),
            samples: n,
        }
    }

    /// `|mean - exact| / std_error`, with an exact match scoring 0.
    pub fn z_score(&self, exact: f64) -> f64 {
        let d = (self.mean - exact).abs();
        if d <= 1e-12 * exact.abs().max(1.0) {
            0.0
        } else if self.std_error == 0.0 {
            f64::INFINITY
        } else {
            d / self.std_error
        }
    }
}

/// One identity: `mu = None` is the conjugated form `s_lambda(A U B U^+)`, `Some(mu)` the
/// split form `s_lambda(A U) s_mu(U^+ B)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct McCheck {
    pub ensemble: Ensemble,
    pub lambda: String,
    pub mu: Option<String>,
    pub exact: f64,
    pub re: McEstimate,
    pub im: McEstimate,
}

impl McCheck {
    pub fn z_score(&self) -> f64 {
        self.re.z_score(self.exact).max(self.im.z_score(0.0))
    }

    pub fn passed(&self, sigma: f64) -> bool {
        self.z_score() <= sigma
    }

    pub fn label(&self) -> String {
        let kind = match self.ensemble {
            Ensemble::Haar => "haar",
            Ensemble::Ginibre => "ginibre",
        };
        match &self.mu {
            None => format!("{kind} s{}(AUBU+)", self.lambda),
            Some(mu) => format!("{kind} s{}(AU) s{}(U+B)", self.lambda, mu),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct McConfig {
    pub seed: u64,
    pub samples: usize,
    pub chunks: usize,
    pub sigma: f64,
}

impl Default for McConfig {
    fn default() -> Self {
        McConfig {
            seed: 20240601,
            samples: 100_000,
            chunks: 64,
            sigma: 3.0,
        }
    }
}

/// All checks of one ensemble, with the allowed number of 3-sigma misses.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct McSuite {
    pub config: McConfig,
    pub checks: Vec<McCheck>,
}

impl McSuite {
    pub fn failures(&self) -> Vec<&McCheck> {
        self.checks.iter().filter(|c| !c.passed(self.config.sigma)).collect()
    }

    /// One miss per 20 checks.
    pub fn budget(&self) -> usize {
        self.checks.len() / 20
    }

    pub fn passed(&self) -> bool {
        self.failures().len() <= self.budget()
    }
}

fn f64s(x: &[Rational]) -> Vec<f64> {
    x.iter().map(rational_to_f64).collect()
}

/// Exact right-hand sides for `(lambda, mu)`.
fn exact_value(e: Ensemble, lambda: &Partition, mu: Option<&Partition>, a: &[Rational], b: &[Rational]) -> f64 {
    let n = a.len();
    let norm = match e {
        Ensemble::Haar => {
            let ones = vec![Rational::from_integer(1.into()); n];
            Rational::from_integer(1.into()) / schur_from_eigenvalues(lambda, &ones)
        }
        Ensemble::Ginibre => Rational::from_integer(hook_product(lambda)),
    };
    let v = match mu {
        None => schur_from_eigenvalues(lambda, a) * schur_from_eigenvalues(lambda, b) * norm,
        Some(mu) if mu != lambda => return 0.0,
        Some(_) => {
            let ab: Vec<Rational> = a.iter().zip(b).map(|(x, y)| x * y).collect();
            schur_from_eigenvalues(lambda, &ab) * norm
        }
    };
    rational_to_f64(&v)
}

/// Every conjugated and split identity for `l(lambda), l(mu) <= n`, `|lambda|, |mu| <= dmax`,
/// with diagonal `A`, `B`. Chunks use streams `0..chunks` and are merged in order.
pub fn mc_suite(e: Ensemble, a: &[Rational], b: &[Rational], dmax: usize, cfg: McConfig) -> McSuite {
    let n = a.len();
    let lambdas: Vec<Partition> = enumerate(dmax, Some(n), None).collect();
    let pairs: Vec<(usize, usize)> = (0..lambdas.len())
        .flat_map(|i| (0..lambdas.len()).map(move |j| (i, j)))
        .collect();
    let nchecks = lambdas.len() + pairs.len();
    let (am, bm) = (CMat::diag(&f64s(a)), CMat::diag(&f64s(b)));
    let chunks = cfg.chunks.max(1);
    let sums: Vec<Vec<[f64; 4]>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let count = cfg.samples / chunks + usize::from(c < cfg.samples % chunks);
            let mut rng = RngStream {
                seed: cfg.seed,
                stream: c as u64,
            }
            .rng();
            let mut acc = vec![[0.0f64; 4]; nchecks];
            for _ in 0..count {
                let u = match e {
                    Ensemble::Haar => sample_haar_unitary(n, &mut rng),
                    Ensemble::Ginibre => sample_ginibre(n, &mut rng),
                };
                let ud = u.adjoint();
                let conj = schur_values(&am.mul(&u).mul(&bm).mul(&ud), &lambdas, dmax);
                let left = schur_values(&am.mul(&u), &lambdas, dmax);
                let right = schur_values(&ud.mul(&bm), &lambdas, dmax);
                let vals = conj
                    .iter()
                    .copied()
                    .chain(pairs.iter().map(|&(i, j)| left[i] * right[j]));
                for (slot, v) in acc.iter_mut().zip(vals) {
                    slot[0] += v.re;
                    slot[1] += v.re * v.re;
                    slot[2] += v.im;
                    slot[3] += v.im * v.im;
                }
            }
            acc
        })
        .collect();
    let mut total = vec![[0.0f64; 4]; nchecks];
    for chunk in &sums {
        for (t, s) in total.iter_mut().zip(chunk) {
            for k in 0..4 {
                t[k] += s[k];
            }
        }
    }
    let est = |k: usize| {
        let t = total[k];
        (
            McEstimate::from_sums(t[0], t[1], cfg.samples),
            McEstimate::from_sums(t[2], t[3], cfg.samples),
        )
    };
    let mut checks = Vec::with_capacity(nchecks);
    for (i, l) in lambdas.iter().enumerate() {
        let (re, im) = est(i);
        checks.push(McCheck {
            ensemble: e,
            lambda: l.to_string(),
            mu: None,
            exact: exact_value(e, l, None, a, b),
            re,
            im,
        });
    }
    for (k, &(i, j)) in pairs.iter().enumerate() {
        let (re, im) = est(lambdas.len() + k);
        checks.push(McCheck {
            ensemble: e,
            lambda: lambdas[i].to_string(),
            mu: Some(lambdas[j].to_string()),
            exact: exact_value(e, &lambdas[i], Some(&lambdas[j]), a, b),
            re,
            im,
        });
    }
    McSuite { config: cfg, checks }
}

fn single(
    e: Ensemble,
    lambda: &Partition,
    mu: Option<&Partition>,
    a: &[Rational],
    b: &[Rational],
    cfg: McConfig,
) -> McCheck {
    let dmax = lambda.weight().max(mu.map_or(0, |m| m.weight()));
    let suite = mc_suite(e, a, b, dmax, cfg);
    let (ls, ms) = (lambda.to_string(), mu.map(|m| m.to_string()));
    suite
        .checks
        .into_iter()
        .find(|c| c.lambda == ls && c.mu == ms)
        .expect("pair is enumerated")
}

/// `int s_lambda(A U B U^+) dU` (or the split form when `mu` is given) against the exact value.
pub fn mc_schur_unitary_identity(
    lambda: &Partition,
    mu: Option<&Partition>,
    a: &[Rational],
    b: &[Rational],
    cfg: McConfig,
) -> McCheck {
    single(Ensemble::Haar, lambda, mu, a, b, cfg)
}

/// Complex Gaussian analogue of [`mc_schur_unitary_identity`].
pub fn mc_schur_ginibre_identity(
    lambda: &Partition,
    mu: Option<&Partition>,
    a: &[Rational],
    b: &[Rational],
    cfg: McConfig,
) -> McCheck {
    single(Ensemble::Ginibre, lambda, mu, a, b, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfun::{int, rat};

    #[test]
    fn haar_is_unitary() {
        let mut rng = RngStream { seed: 7, stream: 0 }.rng();
        for n in 1..=4 {
            let u = sample_haar_unitary(n, &mut rng);
            assert!(u.unitarity_defect() < 1e-12);
        }
    }

    #[test]
    fn haar_moments() {
        let mut rng = RngStream { seed: 11, stream: 3 }.rng();
        let (mut s, mut s2, mut a, mut a2) = (Complex64::new(0.0, 0.0), 0.0, 0.0, 0.0);
        let m = 20_000;
        for _ in 0..m {
            let u1 = sample_haar_unitary(1, &mut rng).get(0, 0);
            s += u1;
            s2 += u1.norm_sqr();
            let x = sample_haar_unitary(3, &mut rng).get(0, 0).norm_sqr();
            a += x;
            a2 += x * x;
        }
        let mf = m as f64;
        let se = (s2 / mf / mf).sqrt();
        assert!((s / mf).norm() < 4.0 * se);
        let mean = a / mf;
        let se = ((a2 / mf - mean * mean) / mf).sqrt();
        assert!((mean - 1.0 / 3.0).abs() < 3.0 * se);
    }

    #[test]
    fn streams_are_deterministic() {
        let cfg = McConfig {
            samples: 2000,
            chunks: 8,
            ..McConfig::default()
        };
        let a = [int(1), rat(1, 2)];
        let b = [int(1), rat(1, 3)];
        let x = mc_suite(Ensemble::Haar, &a, &b, 2, cfg);
        let y = mc_suite(Ensemble::Haar, &a, &b, 2, cfg);
        assert_eq!(x, y);
    }

    #[test]
    fn trivial_and_exact_sides() {
        let cfg = McConfig {
            samples: 500,
            chunks: 4,
            ..McConfig::default()
        };
        let one = [int(1), int(1)];
        let c = mc_schur_unitary_identity(&Partition::empty(), None, &one, &one, cfg);
        assert_eq!(c.re.mean, 1.0);
        let c = mc_schur_unitary_identity(&Partition::row(1), None, &one, &one, cfg);
        assert_eq!(c.exact, 2.0);
        assert!((c.re.mean - 2.0).abs() < 1e-12);
        let g = mc_schur_ginibre_identity(&Partition::row(1), None, &one, &one, cfg);
        assert_eq!(g.exact, 4.0);
    }
}
