//! The acceptance suite: one function per criterion, each returning a [`Outcome`].

use std::time::Instant;

use num::{One, Zero};
use serde_json::{json, Value};
use taukit_core::fock::{lemma1_enumerate, trace_h0, vacuum_tau};
use taukit_core::models::{
    gauss_closed_form, hciz, quartic_report, quartic_series, two_matrix_series,
    ModelCoefficients,
};
use taukit_core::oracle::{
    mc_suite, mu_annihilation_check, mu_moment_check, quartic_wick, Ensemble, McConfig, McSuite,
    MomentCase, MomentMeasure,
};
use taukit_core::symfun::{cauchy_truncated, int, rat, schur, Rational, TimesVector};
use taukit_core::tau::{
    det_rep_derivatives, det_rep_one_side, det_rep_two_side, hirota_residual, hyper_pfs,
    hyper_q_one, ode_residual, q_difference_residual, DetCheck,
};
use taukit_core::weights::{
    content_product, hook_product, hook_product_q, pochhammer_partition, rational_r_decomposition,
};
use taukit_core::{enumerate, ContentFunction, PolySeries, Side, TauError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Profile {
    /// Everything except Monte Carlo.
    Fast,
    Full,
}

/// Deliberate faults for exercising the failure path.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poison {
    pub hirota: bool,
}

impl Poison {
    pub fn parse(names: &[String]) -> Result<Self, String> {
        let mut p = Poison::default();
        for n in names {
            match n.as_str() {
                "hirota" => p.hirota = true,
                other => return Err(format!("unknown poison target {other:?}")),
            }
        }
        Ok(p)
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub checks: usize,
    pub detail: String,
    /// First failing case, if any.
    pub counterexample: Option<Value>,
    pub seconds: f64,
    pub time_limit: Option<f64>,
}

impl Outcome {
    pub fn line(&self) -> String {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        let limit = match self.time_limit {
            Some(l) => format!(" (limit {l:.0}s)"),
            None => String::new(),
        };
        format!(
            "[{verdict}] {:>2} {:<22} {:>6} checks {:>8.2}s{limit}  {}",
            self.id, self.name, self.checks, self.seconds, self.detail
        )
    }

    pub fn to_json(&self, timings: bool) -> Value {
        let mut v = json!({
            "id": self.id,
            "name": self.name,
            "passed": self.passed,
            "checks": self.checks,
            "detail": self.detail,
            "counterexample": self.counterexample,
        });
        if timings {
            v["seconds"] = json!(self.seconds);
            v["time_limit"] = json!(self.time_limit);
        }
        v
    }
}

struct Tally {
    checks: usize,
    counterexample: Option<Value>,
    failures: usize,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checks: 0,
            counterexample: None,
            failures: 0,
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> Value) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(what());
            }
        }
    }

    fn error(&mut self, context: &str, e: TauError) {
        self.check(false, || json!({"case": context, "error": e.to_string()}));
    }
}

pub const NAMES: [&str; 11] = [
    "cauchy",
    "fock-equivalence",
    "lemma1",
    "determinants",
    "residuals",
    "quartic",
    "gauss-closed-form",
    "monte-carlo",
    "moment-measures",
    "rational-r-lemmas",
    "trace",
];

const LIMITS: [Option<f64>; 11] = [
    Some(10.0),
    Some(60.0),
    None,
    None,
    None,
    Some(120.0),
    None,
    Some(300.0),
    None,
    None,
    None,
];

pub fn id_of(name: &str) -> Option<usize> {
    if let Ok(i) = name.parse::<usize>() {
        return (1..=NAMES.len()).contains(&i).then_some(i);
    }
    NAMES.iter().position(|n| *n == name).map(|i| i + 1)
}

pub fn run_criterion(id: usize, poison: &Poison, mc: McConfig) -> Outcome {
    let start = Instant::now();
    let (tally, detail) = match id {
        1 => cauchy(),
        2 => fock_equivalence(),
        3 => lemma1(),
        4 => determinants(),
        5 => residuals(poison),
        6 => quartic(),
        7 => gauss(),
        8 => monte_carlo(mc),
        9 => moments(),
        10 => rational_lemmas(),
        11 => trace(),
        _ => panic!("no criterion {id}"),
    };
    let seconds = start.elapsed().as_secs_f64();
    let time_limit = LIMITS[id - 1];
    let in_time = time_limit.is_none_or(|l| seconds < l);
    let mut counterexample = tally.counterexample;
    if !in_time && counterexample.is_none() {
        counterexample = Some(json!({"runtime_seconds": seconds, "limit": time_limit}));
    }
    Outcome {
        id,
        name: NAMES[id - 1],
        passed: tally.failures == 0 && in_time,
        checks: tally.checks,
        detail,
        counterexample,
        seconds,
        time_limit,
    }
}

pub fn verify_all(profile: Profile, poison: &Poison, mc: McConfig) -> Vec<Outcome> {
    (1..=NAMES.len())
        .filter(|&id| profile == Profile::Full || id != 8)
        .map(|id| run_criterion(id, poison, mc))
        .collect()
}

fn first_diff(a: &PolySeries, b: &PolySeries) -> Value {
    match a.diff_terms(b).first() {
        Some((m, x, y)) => json!({"monomial": a.monomial_name(m), "left": x.to_string(), "right": y.to_string()}),
        None => json!({"note": "series differ in truncation"}),
    }
}

fn det_case(t: &mut Tally, label: &str, res: Result<DetCheck, TauError>) {
    match res {
        Ok(c) => t.check(c.agrees(), || {
            let first = c.mismatches().into_iter().next();
            json!({
                "case": label,
                "first_mismatch": first.map(|(m, x, y)| json!({
                    "monomial": c.series.monomial_name(&m),
                    "determinant": x.to_string(),
                    "series": y.to_string(),
                })),
            })
        }),
        Err(e) => t.error(label, e),
    }
}

fn cauchy() -> (Tally, String) {
    let mut t = Tally::new();
    let (lhs, rhs) = cauchy_truncated(10, 10);
    t.check(lhs == rhs, || first_diff(&lhs, &rhs));
    let detail = format!("exp(sum m t_m s_m) vs sum s_l(t)s_l(s), bidegree 10, {} monomials", lhs.len());
    (t, detail)
}

fn fock_equivalence() -> (Tally, String) {
    let mut t = Tally::new();
    let half = ContentFunction::shifted_linear(rat(1, 2));
    let cases = [(half.clone(), 0), (half, 1), (ContentFunction::linear(), 2)];
    for (r, n) in &cases {
        let label = format!("r={r} n={n}");
        match vacuum_tau(r, *n, 6) {
            Ok((fock, series)) => t.check(fock == series, || {
                let mut v = first_diff(&fock, &series);
                v["case"] = json!(label);
                v
            }),
            Err(e) => t.error(&label, e),
        }
    }
    (t, "<n|e^H(t) e^-A(s)|n> vs sum r_l(n) s_l(t) s_l(s), |l| <= 6".into())
}

fn lemma1() -> (Tally, String) {
    let mut t = Tally::new();
    let (imax, jmax, smax, d) = (9, 5, 5, 5);
    match lemma1_enumerate(imax, jmax, smax, d) {
        Ok(cases) => {
            for c in &cases {
                t.check(c.holds(), || {
                    json!({
                        "i": c.i, "j": c.j, "charge": c.charge,
                        "lambda": c.lambda.as_ref().map(|l| l.to_string()),
                        "maya": c.maya.as_ref().map(|l| l.to_string()),
                        "sign": c.sign,
                    })
                });
            }
        }
        Err(e) => t.error("enumeration", e),
    }
    let detail = format!("i in [0,{imax}], j in [1,{jmax}], up to {smax} modes, |l| <= {d}");
    (t, detail)
}

fn determinants() -> (Tally, String) {
    let mut t = Tally::new();
    let r3 = ContentFunction::shifted_linear(int(3));
    det_case(&mut t, "one-sided N=2 r=k+3 t*=inf deg 6", det_rep_one_side(&r3, 2, 2, &Side::Inf, 6));
    let half = ContentFunction::shifted_linear(rat(1, 2));
    for n in [2usize, 3] {
        det_case(
            &mut t,
            &format!("two-sided N={n} r=k+1/2 deg 8"),
            det_rep_two_side(&half, n as i64, n, 8),
        );
        det_case(&mut t, &format!("HCIZ N={n} deg 8"), hciz(n, 8));
    }
    det_case(&mut t, "derivatives n=2 r=k bideg 6", det_rep_derivatives(&ContentFunction::linear(), 2, 6));
    (t, "one-sided, two-sided (with HCIZ) and derivative determinants vs series".into())
}

fn residuals(poison: &Poison) -> (Tally, String) {
    let mut t = Tally::new();
    let coupling = if poison.hirota { int(2) } else { Rational::one() };
    let cases = [
        (ContentFunction::one(), 0),
        (ContentFunction::shifted_linear(int(2)), 0),
        (ContentFunction::linear(), 1),
    ];
    for (r, n) in &cases {
        let label = format!("hirota r={r} n={n}");
        match hirota_residual(r, *n, 6, &coupling) {
            Ok(res) => t.check(res.is_empty(), || {
                let (m, c) = res.terms().iter().next().expect("nonempty residual");
                json!({
                    "case": label,
                    "coupling": coupling.to_string(),
                    "monomial": res.monomial_name(m),
                    "residual": c.to_string(),
                })
            }),
            Err(e) => t.error(&label, e),
        }
    }

    let (a, b) = (vec![rat(1, 2), rat(1, 3)], vec![rat(5, 4)]);
    match hyper_pfs(&a, &b, 0, Side::EigenFormal(1), 30) {
        Ok(s) => {
            let res = ode_residual(&a, &b, &s.row_coefficients());
            t.check(res.len() == 30 && res.iter().all(Zero::is_zero), || {
                let k = res.iter().position(|c| !c.is_zero());
                json!({"case": "2F1(1/2,1/3;5/4) ODE", "degree": k})
            });
        }
        Err(e) => t.error("2F1 series", e),
    }

    let q = rat(1, 3);
    let (qa, qb) = (vec![int(2), int(3)], vec![int(4)]);
    let qr = ContentFunction::q_rational(qa.clone(), qb.clone(), q.clone());
    let res = hyper_q_one(&qa, &qb, &q, 0, Side::EigenFormal(1), 30)
        .and_then(|s| q_difference_residual(&qr, 0, &q, &s.row_coefficients()));
    match res {
        Ok(res) => t.check(res.len() == 30 && res.iter().all(Zero::is_zero), || {
            let k = res.iter().position(|c| !c.is_zero());
            json!({"case": "2phi1(q^2,q^3;q^4) q-difference", "degree": k})
        }),
        Err(e) => t.error("2phi1 series", e),
    }
    (
        t,
        "Hirota bidegree 5 for r in {1, k+2, k}; 2F1 ODE and 2phi1 (q=1/3) q-difference through degree 29"
            .into(),
    )
}

fn quartic() -> (Tally, String) {
    let mut t = Tally::new();
    let series = match quartic_series(2) {
        Ok(s) => s,
        Err(e) => {
            t.error("quartic series", e);
            return (t, "quartic series failed".into());
        }
    };
    let first = taukit_core::symfun::UPoly::new(vec![rat(-1, 4), int(0), rat(-1, 2)]);
    t.check(series.orders[1] == first, || {
        json!({"case": "order 1", "computed": series.orders[1].to_string(), "expected": first.to_string()})
    });
    match quartic_wick(2) {
        Ok(w) => {
            for k in 1..=2 {
                t.check(w[k] == series.orders[k], || {
                    json!({"case": format!("order {k} vs Wick"), "schur": series.orders[k].to_string(), "wick": w[k].to_string()})
                });
            }
        }
        Err(e) => t.error("Wick oracle", e),
    }
    let report: Vec<String> = quartic_report(&series).iter().map(|r| r.describe()).collect();
    (t, format!("orders 1-2 equal Wick; printed: {}", report.join("; ")))
}

fn gauss() -> (Tally, String) {
    let mut t = Tally::new();
    let d = 10;
    match (two_matrix_series(1, Side::Formal(2), Side::Formal(2), d), gauss_closed_form(d)) {
        (Ok(m), Ok(closed)) => {
            let ModelCoefficients::Series(s) = m.coefficients else {
                t.check(false, || json!({"error": "model did not return a series"}));
                return (t, String::new());
            };
            t.check(s == closed, || first_diff(&s, &closed));
        }
        (Err(e), _) | (_, Err(e)) => t.error("gauss closed form", e),
    }
    (t, format!("n=1 two-matrix series vs closed form, bidegree {d}"))
}

/// Diagonal test matrices used by the Monte Carlo criterion.
pub fn mc_points() -> (Vec<Rational>, Vec<Rational>) {
    (vec![int(1), rat(1, 2)], vec![int(1), rat(1, 3)])
}

pub fn mc_suites(cfg: McConfig) -> Vec<McSuite> {
    let (a, b) = mc_points();
    [Ensemble::Haar, Ensemble::Ginibre]
        .into_iter()
        .map(|e| mc_suite(e, &a, &b, 3, cfg))
        .collect()
}

fn monte_carlo(cfg: McConfig) -> (Tally, String) {
    let mut t = Tally::new();
    let first = mc_suites(cfg);
    for s in &first {
        for c in &s.checks {
            t.check(c.passed(cfg.sigma), || {
                json!({"check": c.label(), "z": c.z_score(), "exact": c.exact, "re": c.re.mean, "im": c.im.mean})
            });
        }
    }
    let again = mc_suites(cfg);
    let bytes = |v: &[McSuite]| serde_json::to_vec(v).expect("serializable");
    t.check(bytes(&first) == bytes(&again), || json!({"case": "fixed-seed rerun differs"}));
    let worst = first
        .iter()
        .flat_map(|s| s.checks.iter())
        .map(|c| c.z_score())
        .fold(0.0, f64::max);
    (
        t,
        format!(
            "Haar and Ginibre, n=2, |l|,|m| <= 3, {} samples, seed {}, max |z| = {worst:.2}, rerun byte-identical",
            cfg.samples, cfg.seed
        ),
    )
}

fn moments() -> (Tally, String) {
    let mut t = Tally::new();
    let mut quad = |case: &MomentCase, n: usize, m: usize| match mu_moment_check(case, n, m) {
        Ok(r) => t.check(r.passed(1e-6), || r.to_json()),
        Err(e) => t.error(&format!("{case} ({n},{m})"), e),
    };
    for n in 0..=4 {
        quad(&MomentCase::RealImaginary, n, n);
    }
    for (n, m) in [(1, 3), (2, 4)] {
        quad(&MomentCase::RealImaginary, n, m);
    }
    for n in 0..=4 {
        quad(&MomentCase::UnitInterval { a: int(-1) }, n, n);
    }
    let rs = [
        ContentFunction::linear(),
        MomentMeasure::pfs_r(&[rat(1, 2)], &[rat(3, 2), rat(5, 3)]),
    ];
    for r in &rs {
        let label = format!("annihilation r={r}");
        match MomentMeasure::new(r, 14).and_then(|mu| mu_annihilation_check(&mu, 13)) {
            Ok(res) => t.check(res.len() >= 13 && res.iter().all(Zero::is_zero), || {
                json!({"case": label, "degree": res.iter().position(|c| !c.is_zero())})
            }),
            Err(e) => t.error(&label, e),
        }
    }
    (
        t,
        "R x iR moments n=m<=4 and (1,3),(2,4); (1-x)^1 moments n<=4; annihilation through degree 12".into(),
    )
}

fn rational_lemmas() -> (Tally, String) {
    let mut t = Tally::new();
    let q = rat(1, 3);
    let rationals = [
        ContentFunction::rational(vec![rat(1, 2), rat(-7, 3)], vec![rat(5, 4)]),
        ContentFunction::rational(vec![rat(2, 3)], vec![]),
        ContentFunction::rational(vec![], vec![rat(9, 5), rat(-1, 7)]),
        ContentFunction::rational(vec![rat(3, 8), rat(11, 6)], vec![rat(-5, 2), rat(4, 9)]),
    ];
    let qrationals = [
        ContentFunction::q_rational(vec![int(2)], vec![int(5)], q.clone()),
        ContentFunction::q_rational(vec![int(1), int(-3)], vec![int(7)], q.clone()),
        ContentFunction::q_rational(vec![], vec![int(4)], q.clone()),
    ];
    for l in enumerate(6, None, None) {
        let d = l.weight().max(1);
        for r in rationals.iter().chain(qrationals.iter()) {
            for n in [0i64, 2, 5] {
                let label = format!("r={r} n={n} l={l}");
                match rational_r_decomposition(r, n, &l) {
                    Ok(dec) => t.check(dec.holds(), || {
                        json!({"case": label, "product": dec.product.to_string(), "direct": dec.direct.to_string()})
                    }),
                    Err(TauError::Pole { .. }) => {}
                    Err(e) => t.error(&label, e),
                }
            }
        }
        for a in [rat(1, 2), rat(-7, 3), rat(5, 4)] {
            let h = Rational::from_integer(hook_product(&l));
            let via_schur = schur(&l, &TimesVector::t_a(&a, d)) * &h;
            t.check(via_schur == pochhammer_partition(&a, &l), || {
                json!({"case": format!("(a)_l = H_l s_l(t(a)), a={a}, l={l}")})
            });
            let cp = content_product(&ContentFunction::shifted_linear(a.clone()), 0, &l);
            t.check(cp.as_ref().ok() == Some(&pochhammer_partition(&a, &l)), || {
                json!({"case": format!("(a)_l content product, a={a}, l={l}")})
            });
        }
        let h = Rational::from_integer(hook_product(&l));
        t.check(schur(&l, &TimesVector::t_inf(d)) == h.recip(), || {
            json!({"case": format!("s_l(t_inf) = 1/H_l, l={l}")})
        });
        let nq = num::pow(q.clone(), l.n_lambda());
        t.check(
            schur(&l, &TimesVector::q_geometric(&q, d)) == nq / hook_product_q(&l, &q),
            || json!({"case": format!("s_l(t_inf,q) = q^n(l)/H_l(q), l={l}")}),
        );
    }
    (t, "Schur factorizations of r_l(n), ordinary and q = 1/3, |l| <= 6".into())
}

fn trace() -> (Tally, String) {
    let mut t = Tally::new();
    let rs = [
        ContentFunction::shifted_linear(rat(1, 2)),
        ContentFunction::rational(vec![rat(1, 3)], vec![rat(2, 5)]),
    ];
    for r in &rs {
        for n in [0i64, 1] {
            let label = format!("r={r} n={n}");
            match trace_h0(r, n, 6) {
                Ok((fock, direct)) => t.check(fock == direct, || {
                    json!({
                        "case": label,
                        "fock": fock.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                        "weights": direct.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    })
                }),
                Err(e) => t.error(&label, e),
            }
        }
    }
    (t, "graded Tr e^H0 on the Fock space vs sum r_l(n), |l| <= 6".into())
}
