//! Matrix-model perturbation series as specializations of tau series.

use std::collections::BTreeMap;

use num::{One, Zero};
use serde_json::json;

use crate::error::TauError;
use crate::fock::{FockOperator, Sector};
use crate::partitions::{enumerate, partitions_of, Partition};
use crate::symfun::{
    complete_h, fmt_rational, int, rat, schur, Coeff, PolySeries, Rational, TimesVector, UPoly,
};
use crate::tau::{det_rep_two_side, tau_series, DetCheck, Side, TauSeries, TauSpec};
use crate::weights::{content_product, hook_product, pochhammer_partition, ContentFunction, WeightTable};

/// Coefficients of a normalized partition function, with the tau spec that produced them.
#[derive(Clone, Debug, PartialEq)]
pub enum ModelCoefficients {
    Series(PolySeries),
    /// Coefficient of the `k`-th power of the small parameter, as a polynomial in `N`.
    Orders(Vec<UPoly>),
    Graded(Vec<Rational>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModelSeries {
    pub provenance: String,
    pub coefficients: ModelCoefficients,
}

impl ModelSeries {
    pub fn constant_term(&self) -> Rational {
        match &self.coefficients {
            ModelCoefficients::Series(p) => p.constant_term(),
            ModelCoefficients::Orders(o) => o.first().map(|p| p.coeff(0)).unwrap_or_else(Rational::zero),
            ModelCoefficients::Graded(g) => g.first().cloned().unwrap_or_else(Rational::zero),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let body = match &self.coefficients {
            ModelCoefficients::Series(p) => p.to_json(),
            ModelCoefficients::Orders(o) => json!(o.iter().map(|p| p.to_string()).collect::<Vec<_>>()),
            ModelCoefficients::Graded(g) => json!(g.iter().map(fmt_rational).collect::<Vec<_>>()),
        };
        json!({ "provenance": self.provenance, "coefficients": body })
    }
}

fn from_tau(series: &TauSeries) -> ModelSeries {
    let coefficients = if series.spec().t.is_symbolic() || series.spec().tstar.is_symbolic() {
        ModelCoefficients::Series(series.expand())
    } else {
        ModelCoefficients::Graded(series.graded())
    };
    ModelSeries {
        provenance: series.spec().to_string(),
        coefficients,
    }
}

/// `sum_lambda (n)_lambda s_lambda(t) s_lambda(t*)`.
pub fn two_matrix_series(n: i64, t: Side, tstar: Side, d: usize) -> Result<ModelSeries, TauError> {
    let spec = TauSpec::new(ContentFunction::linear(), n, t, tstar);
    Ok(from_tau(&tau_series(&spec, d)?))
}

/// `exp((t1 s1 + t2 s1^2 + s2 t1^2) / (1 - 4 t2 s2)) / sqrt(1 - 4 t2 s2)` in the space of
/// `Formal(2)` on both sides, through bidegree `D`.
pub fn gauss_closed_form(d: usize) -> Result<PolySeries, TauError> {
    let sp = TauSpec::new(ContentFunction::one(), 0, Side::Formal(2), Side::Formal(2)).space();
    let caps = [d as u32, d as u32];
    let v = |name: &str| PolySeries::var(&sp, &caps, sp.index_of(name).expect("var"));
    let (t1, t2, s1, s2) = (v("t1"), v("t2"), v("s1"), v("s2"));
    let one = PolySeries::constant(&sp, &caps, Rational::one());
    let u = one.sub(&t2.mul(&s2).scale(&int(4)));
    let num = t1.mul(&s1).add(&t2.mul(&s1).mul(&s1)).add(&s2.mul(&t1).mul(&t1));
    let arg = num.mul(&u.powr(&int(-1))?);
    Ok(arg.exp()?.mul(&u.powr(&rat(-1, 2))?))
}

/// Couplings of `Z(N, g, g4) = int dM exp(-N Tr(g/2 M^2 + g4 M^4))`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuarticModelParams {
    pub n: i64,
    pub g: Rational,
    pub g4: Rational,
}

impl QuarticModelParams {
    pub fn new(n: i64, g: Rational, g4: Rational) -> Result<Self, TauError> {
        if n < 1 {
            return Err(TauError::Precondition("quartic model needs N >= 1".into()));
        }
        if g.is_zero() {
            return Err(TauError::Precondition("quartic model needs g != 0".into()));
        }
        Ok(QuarticModelParams { n, g, g4 })
    }

    /// `(t4, t2*) = (-N g4 / 4, 1 / (2 N g))`.
    pub fn times(&self) -> (Rational, Rational) {
        let n = int(self.n);
        (-&n * &self.g4 / int(4), Rational::one() / (int(2) * n * &self.g))
    }
}

/// `(N)_lambda` as a polynomial in `N`.
pub fn pochhammer_poly(lambda: &Partition) -> UPoly {
    lambda
        .contents()
        .into_iter()
        .fold(UPoly::constant(Rational::one()), |acc, c| acc.mul(&UPoly::shifted_var(c)))
}

fn padded(entries: &[(usize, i64)], len: usize) -> TimesVector {
    let mut v = vec![Rational::zero(); len.max(1)];
    for &(m, c) in entries {
        if m <= len {
            v[m - 1] = int(c);
        }
    }
    TimesVector::new(v)
}

/// `(N)_lambda a_lambda b_lambda` with `a = s_lambda(0,0,0,1)`, `b = s_lambda(0,1)`.
pub fn quartic_contribution(lambda: &Partition) -> UPoly {
    let w = lambda.weight();
    let a = schur(lambda, &padded(&[(4, 1)], w));
    let b = schur(lambda, &padded(&[(2, 1)], w));
    pochhammer_poly(lambda).scale(&(a * b))
}

/// Perturbative coefficients of `Z / Z(g4 = 0)` in powers of `g4 / g^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuarticSeries {
    /// `orders[k]` multiplies `(g4 / g^2)^k`.
    pub orders: Vec<UPoly>,
}

impl QuarticSeries {
    pub fn value(&self, params: &QuarticModelParams) -> Rational {
        let x = &params.g4 / (&params.g * &params.g);
        let n = int(params.n);
        let mut acc = Rational::zero();
        let mut p = Rational::one();
        for c in &self.orders {
            acc += c.eval(&n) * &p;
            p *= &x;
        }
        acc
    }

    pub fn model(&self) -> ModelSeries {
        ModelSeries {
            provenance: "r=linear n=N t=(0,0,0,-N g4/4) tstar=(0,1/(2 N g))".into(),
            coefficients: ModelCoefficients::Orders(self.orders.clone()),
        }
    }
}

/// Schur side of the quartic model through `order`.
pub fn quartic_series(order: usize) -> Result<QuarticSeries, TauError> {
    if order == 0 {
        return Err(TauError::Precondition("quartic series needs order >= 1".into()));
    }
    let mut orders = vec![UPoly::constant(Rational::one())];
    for k in 1..=order {
        let total = partitions_of(4 * k, None, None)
            .iter()
            .fold(UPoly::zero(), |acc, l| acc.add(&quartic_contribution(l)));
        let reduced = total
            .div_var_pow(k)
            .ok_or_else(|| TauError::NotDivisible(format!("order {k} sum {total} by N^{k}")))?;
        orders.push(reduced.scale(&crate::symfun::rpow(&rat(-1, 16), k as i64)));
    }
    Ok(QuarticSeries { orders })
}

/// Every `lambda` of weight `4k`, `k <= order`, whose conjugate does not contribute
/// `(-1)^k` times its own contribution at `-N`.
pub fn quartic_conjugation_failures(order: usize) -> Vec<Partition> {
    let mut bad = Vec::new();
    for k in 1..=order {
        let sign = if k % 2 == 0 { int(1) } else { int(-1) };
        for l in partitions_of(4 * k, None, None) {
            let lhs = quartic_contribution(&l.conjugate());
            let rhs = quartic_contribution(&l).reflect().scale(&sign);
            if lhs != rhs {
                bad.push(l);
            }
        }
    }
    bad
}

/// Comparison of one order with the printed value.
#[derive(Clone, Debug, PartialEq)]
pub struct QuarticReport {
    pub order: usize,
    pub computed: UPoly,
    pub printed: UPoly,
    /// `printed / computed` when it is a constant.
    pub ratio: Option<Rational>,
}

impl QuarticReport {
    pub fn matches(&self) -> bool {
        self.computed == self.printed
    }

    pub fn describe(&self) -> String {
        if self.matches() {
            format!("order {}: {} matches the printed value", self.order, self.computed)
        } else {
            let r = self
                .ratio
                .as_ref()
                .map(|r| format!(" (printed = {r} x computed)"))
                .unwrap_or_default();
            format!(
                "order {}: computed {}, printed {}{r}",
                self.order, self.computed, self.printed
            )
        }
    }
}

/// Printed first and second order coefficients: `-(N^2/2 + 1/4)` and
/// `32 N^4 + 320 N^2 + 488`.
pub fn quartic_printed() -> Vec<UPoly> {
    vec![
        UPoly::new(vec![rat(-1, 4), int(0), rat(-1, 2)]),
        UPoly::new(vec![int(488), int(0), int(320), int(0), int(32)]),
    ]
}

pub fn quartic_report(series: &QuarticSeries) -> Vec<QuarticReport> {
    quartic_printed()
        .into_iter()
        .enumerate()
        .filter(|(i, _)| i + 1 < series.orders.len())
        .map(|(i, printed)| {
            let computed = series.orders[i + 1].clone();
            let ratio = constant_ratio(&printed, &computed);
            QuarticReport {
                order: i + 1,
                computed,
                printed,
                ratio,
            }
        })
        .collect()
}

fn constant_ratio(p: &UPoly, q: &UPoly) -> Option<Rational> {
    let k = q.coeffs().iter().position(|c| !c.is_zero())?;
    let r = p.coeff(k) / q.coeff(k);
    (q.scale(&r) == *p).then_some(r)
}

/// Closed form of the HCIZ series next to `0!..(n-1)! det(e^{x_i y_j}) / (Delta(x) Delta(y))`.
pub fn hciz(n: usize, d: usize) -> Result<DetCheck, TauError> {
    det_rep_two_side(&hciz_r(), n as i64, n, d)
}

/// `r(k) = 1/k`, giving weights `1 / (n)_lambda` at charge `n`.
pub fn hciz_r() -> ContentFunction {
    ContentFunction::rational(vec![], vec![int(0)])
}

/// `c_n det(e^{x_i y_j}) / (Delta(x) Delta(y))` in floating point.
pub fn hciz_closed_numeric(x: &[f64], y: &[f64]) -> Result<f64, TauError> {
    let n = x.len();
    if y.len() != n {
        return Err(TauError::Precondition("x and y need the same length".into()));
    }
    let mut vdm = 1.0;
    for v in [x, y] {
        for i in 0..n {
            for j in i + 1..n {
                if v[i] == v[j] {
                    return Err(TauError::CoincidentEigenvalues(i + 1, j + 1));
                }
                vdm *= v[i] - v[j];
            }
        }
    }
    let m: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| (x[i] * y[j]).exp()).collect()).collect();
    let c: f64 = (1..n).map(|k| (1..=k).map(|j| j as f64).product::<f64>()).product();
    Ok(c * det_f64(m) / vdm)
}

fn det_f64(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut det = 1.0;
    for c in 0..n {
        let p = (c..n)
            .max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs()))
            .unwrap_or(c);
        if m[p][c] == 0.0 {
            return 0.0;
        }
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= m[c][c];
        for r in c + 1..n {
            let f = m[r][c] / m[c][c];
            for k in c..n {
                m[r][k] -= f * m[c][k];
            }
        }
    }
    det
}

/// `r(-m) = h_{m-1}(u) / h_m(u)` for `1 <= m <= D`, with the `h_m(u)`.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalMatrixMap {
    pub h: Vec<Rational>,
    pub table: BTreeMap<i64, Rational>,
}

pub fn normal_matrix_map(u: &TimesVector, d: usize) -> Result<NormalMatrixMap, TauError> {
    let h: Vec<Rational> = (0..=d).map(|m| complete_h(m, u)).collect();
    let mut table = BTreeMap::new();
    for m in 1..=d {
        if h[m].is_zero() {
            return Err(TauError::VanishingMoment(m));
        }
        table.insert(-(m as i64), &h[m - 1] / &h[m]);
    }
    Ok(NormalMatrixMap { h, table })
}

impl NormalMatrixMap {
    /// `h_m = 1 / (r(-1) ... r(-m))` rebuilt from the table.
    pub fn rebuild_h(&self) -> Vec<Rational> {
        let mut out = vec![Rational::one()];
        let mut acc = Rational::one();
        for v in self.table.values().rev() {
            acc /= v;
            out.push(acc.clone());
        }
        out
    }

    /// Points `-m` where `r` disagrees with the table.
    pub fn mismatches(&self, r: &ContentFunction) -> Result<Vec<i64>, TauError> {
        let mut bad = Vec::new();
        for (k, v) in &self.table {
            if r.eval(*k)? != *v {
                bad.push(*k);
            }
        }
        Ok(bad)
    }
}

/// Normal-matrix series `sum r_lambda(n) s_lambda(t) s_lambda(t*)`; `r` must reproduce
/// the map on the negative axis.
pub fn normal_matrix_series(
    u: &TimesVector,
    r: &ContentFunction,
    n: i64,
    t: Side,
    tstar: Side,
    d: usize,
) -> Result<ModelSeries, TauError> {
    let map = normal_matrix_map(u, d)?;
    let bad = map.mismatches(r)?;
    if !bad.is_empty() {
        return Err(TauError::Precondition(format!("r disagrees with the potential at {bad:?}")));
    }
    Ok(from_tau(&tau_series(&TauSpec::new(r.clone(), n, t, tstar), d)?))
}

/// `sum_{l(lambda) <= n} s_lambda(JJ+) s_lambda(1,0,...) / (n)_lambda`.
pub fn gross_witten_series(n: i64, jj: &[Rational], d: usize) -> Result<TauSeries, TauError> {
    let spec = TauSpec::new(hciz_r(), n, Side::Eigen(jj.to_vec()), Side::Inf).with_length_cap(n.max(0) as usize);
    tau_series(&spec, d)
}

/// `sum_{l(lambda) <= n} s_lambda(t) s_lambda(t*)`.
pub fn unitary_model_series(n: usize, t: Side, tstar: Side, d: usize) -> Result<TauSeries, TauError> {
    tau_series(&TauSpec::new(ContentFunction::one(), 0, t, tstar).with_length_cap(n), d)
}

/// Angle-integrated families: average over `U(n)`, over complex `Z`, and the
/// Gross-Witten type average of two tau functions.
#[derive(Clone, Debug, PartialEq)]
pub enum AngleKind {
    Unitary,
    Complex,
    GrossWitten { rt: ContentFunction },
}

/// Specialization of the averaged times: `t(a)` or `(1, 0, 0, ...)`.
#[derive(Clone, Debug, PartialEq)]
pub enum StarChoice {
    TA(Rational),
    Delta,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AngleIntegral {
    pub kind: AngleKind,
    pub r: ContentFunction,
    pub n: i64,
    pub star: StarChoice,
    /// Exchange `t` and `t*` in the result.
    pub swapped: bool,
}

impl AngleIntegral {
    /// The composed content function, at charge `n`.
    pub fn composed_r(&self) -> ContentFunction {
        let n = int(self.n);
        let star = match &self.star {
            StarChoice::TA(a) => ContentFunction::rational(vec![a - &n], vec![]),
            StarChoice::Delta => ContentFunction::one(),
        };
        let mut factors = vec![(self.r.clone(), 1), (star, 1)];
        match &self.kind {
            AngleKind::Unitary => factors.push((hciz_r(), 1)),
            AngleKind::Complex => {}
            AngleKind::GrossWitten { rt } => {
                factors.push((rt.clone(), 1));
                factors.push((hciz_r(), 1));
            }
        }
        ContentFunction::product(factors)
    }

    /// Composed tau series in the two remaining sides, with `l(lambda) <= n`.
    pub fn series(&self, x: Side, y: Side, d: usize) -> Result<TauSeries, TauError> {
        let (a, b) = if self.swapped { (y, x) } else { (x, y) };
        let spec = TauSpec::new(self.composed_r(), self.n, a, b).with_length_cap(self.n.max(0) as usize);
        tau_series(&spec, d)
    }

    /// The averaged sum written out term by term with explicit Schur values, graded by
    /// weight. `sides` are the numeric specializations left after averaging: `X, Y` for
    /// the unitary and complex kinds, `XY, t` for the Gross-Witten kind.
    pub fn direct_graded(&self, x: &Side, y: &Side, d: usize) -> Result<Vec<Rational>, TauError> {
        let n = self.n.max(0) as usize;
        let mut out = vec![Rational::zero(); d + 1];
        for lambda in enumerate(d, Some(n), None) {
            let hook = Rational::from_integer(hook_product(&lambda));
            let star = match &self.star {
                StarChoice::TA(a) => pochhammer_partition(a, &lambda) / &hook,
                StarChoice::Delta => Rational::one() / &hook,
            };
            let i_n = pochhammer_partition(&int(self.n), &lambda) / &hook;
            let mut w = content_product(&self.r, self.n, &lambda)? * star;
            match &self.kind {
                AngleKind::Unitary => w /= i_n,
                AngleKind::Complex => w *= &hook,
                AngleKind::GrossWitten { rt } => {
                    w = w * content_product(rt, self.n, &lambda)? / i_n;
                }
            }
            let (sx, sy) = (x.value(&lambda), y.value(&lambda));
            let (Some(sx), Some(sy)) = (sx, sy) else {
                return Err(TauError::Precondition("direct sum needs numeric sides".into()));
            };
            out[lambda.weight()] += w * sx * sy;
        }
        Ok(out)
    }

    /// Determinant form of the composed series for the unitary and complex kinds.
    pub fn determinant(&self, d: usize) -> Result<DetCheck, TauError> {
        if matches!(self.kind, AngleKind::GrossWitten { .. }) {
            return Err(TauError::Precondition("determinant form needs a two-sided kind".into()));
        }
        det_rep_two_side(&self.composed_r(), self.n, self.n.max(0) as usize, d)
    }
}

/// `XY = I_n`: `tau_{r rt}(n, t, t*)` with `l(lambda) <= n`.
pub fn angle_identity_case(
    r: &ContentFunction,
    rt: &ContentFunction,
    n: i64,
    t: Side,
    tstar: Side,
    d: usize,
) -> Result<TauSeries, TauError> {
    let spec = TauSpec::new(r.times(rt), n, t, tstar).with_length_cap(n.max(0) as usize);
    tau_series(&spec, d)
}

/// `sum_{|lambda| = k} prod_i r^{(i)}_lambda(n)` for `k = 0..=D`.
pub fn loop_scalar_product(rs: &[ContentFunction], n: i64, d: usize) -> Result<Vec<Rational>, TauError> {
    let tables: Vec<WeightTable> = rs
        .iter()
        .map(|r| WeightTable::new(r, n, d, None))
        .collect::<Result<_, _>>()?;
    let mut out = vec![Rational::zero(); d + 1];
    for lambda in enumerate(d, None, None) {
        let mut w = Rational::one();
        for t in &tables {
            w *= t.get(&lambda).cloned().unwrap_or_else(Rational::zero);
        }
        out[lambda.weight()] += w;
    }
    Ok(out)
}

/// Composes the diagonal operators `g_i` as matrices and returns the diagonal of the
/// product next to the pointwise weight product, keyed by partition.
pub fn loop_composition(
    rs: &[ContentFunction],
    n: i64,
    d: usize,
) -> Result<Vec<(Partition, Rational, Rational)>, TauError> {
    let sector = Sector::new(n, d);
    let mut op = FockOperator::identity(&sector);
    for r in rs {
        let g = FockOperator::diagonal(&sector, |s| content_product(r, n, s.lambda()))?;
        op = op.mul(&g);
    }
    let mut out = Vec::new();
    for s in &sector.basis {
        let mut w = Rational::one();
        for r in rs {
            w *= content_product(r, n, s.lambda())?;
        }
        out.push((s.lambda().clone(), op.entry(s, s), w));
    }
    Ok(out)
}

/// `rho(z) = tau_r(1, (1,0,0,...), z)`: coefficients `r(1)...r(m) / m!` for `m <= D`.
pub fn chain_kernel(r: &ContentFunction, d: usize) -> Result<Vec<Rational>, TauError> {
    let mut out = vec![Rational::one()];
    let mut acc = Rational::one();
    for m in 1..=d {
        acc = acc * r.eval(m as i64)? / int(m as i64);
        out.push(acc.clone());
    }
    Ok(out)
}

/// Product of chain kernels as a series in one variable each, through total degree `D`.
pub fn chain_weight(rs: &[ContentFunction], d: usize) -> Result<Vec<Vec<Rational>>, TauError> {
    rs.iter().map(|r| chain_kernel(r, d)).collect()
}
