//! Subcommand execution. Each handler returns a [`Report`]; rendering and exit codes
//! live in `lib.rs`.

use num::Zero;
use serde_json::{json, Value};
use taukit_core::fock::{
    commutation_suite, heisenberg_suite, lemma1_check, lemma1_enumerate, matrix_element_suite,
    prop2_suite, prop3_suite, schur_state_suite, trace_h0, vacuum_tau, Lemma1Case, SuiteReport,
};
use taukit_core::models::{
    gauss_closed_form, gross_witten_series, hciz, loop_composition, loop_scalar_product,
    normal_matrix_map, normal_matrix_series, quartic_conjugation_failures, quartic_report,
    quartic_series, two_matrix_series, unitary_model_series, AngleIntegral, AngleKind,
    ModelCoefficients, QuarticModelParams, StarChoice,
};
use taukit_core::oracle::{
    mc_schur_ginibre_identity, mc_schur_unitary_identity, mc_suite, mu_annihilation_check,
    mu_moment_check, quartic_wick, wick_gaussian_moment, wick_pairing_count, Ensemble, McCheck,
    McConfig, MomentCase, MomentMeasure,
};
use taukit_core::symfun::{
    cauchy_truncated, complete_h, schur, schur_from_eigenvalues, skew_schur, PolySeries, Rational,
    TimesVector,
};
use taukit_core::tau::{
    baker_akhiezer, baker_akhiezer_dual, det_rep_derivatives, det_rep_one_side, det_rep_two_side,
    hirota_residual, hyper_pfs, hyper_q_one, hyper_q_two, hyper_two, ode_residual,
    q_difference_residual, symmetry_checks, DetCheck,
};
use taukit_core::weights::{
    c_constant, content_product, hook_product, hook_product_q, pochhammer_partition,
    q_pochhammer_partition, rational_r_decomposition, skew_content_product,
};
use taukit_core::{
    enumerate, tau_series, ContentFunction, Partition, Side, SkewShape, TauError, TauSeries,
    TauSpec,
};

use crate::args::*;
use crate::criteria::{self, Poison, Profile};

/// Result of one subcommand. `ok = false` means a verification failed (exit 1).
#[derive(Debug)]
pub struct Report {
    pub value: Value,
    /// Optional flat table for CSV output; otherwise the JSON is flattened.
    pub table: Option<(Vec<String>, Vec<Vec<String>>)>,
    pub ok: bool,
}

impl Report {
    fn ok(value: Value) -> Self {
        Report {
            value,
            table: None,
            ok: true,
        }
    }

    fn checked(value: Value, ok: bool) -> Self {
        Report {
            value,
            table: None,
            ok,
        }
    }

    fn with_table(mut self, header: &[&str], rows: Vec<Vec<String>>) -> Self {
        self.table = Some((header.iter().map(|h| h.to_string()).collect(), rows));
        self
    }
}

#[derive(Debug)]
pub enum CmdError {
    /// Bad input or an unsatisfied precondition (exit 2).
    Usage(String),
}

impl From<TauError> for CmdError {
    fn from(e: TauError) -> Self {
        CmdError::Usage(e.to_string())
    }
}

impl std::fmt::Display for CmdError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CmdError::Usage(m) => write!(f, "{m}"),
        }
    }
}

type Res = Result<Report, CmdError>;

fn s(x: &Rational) -> String {
    x.to_string()
}

fn strs(v: &[Rational]) -> Vec<String> {
    v.iter().map(s).collect()
}

fn poly_table(p: &PolySeries) -> Vec<Vec<String>> {
    p.terms()
        .iter()
        .map(|(m, c)| vec![p.monomial_name(m), s(c)])
        .collect()
}

fn poly_json(p: &PolySeries) -> Value {
    Value::Array(
        p.terms()
            .iter()
            .map(|(m, c)| json!({"monomial": p.monomial_name(m), "coeff": s(c)}))
            .collect(),
    )
}

fn series_report(t: &TauSeries) -> Report {
    let mut v = t.to_json();
    v["graded"] = json!(strs(&t.graded()));
    let mut rows: Vec<Vec<String>> = t
        .terms()
        .iter()
        .map(|(l, c)| vec!["lambda".into(), l.to_string(), s(c)])
        .collect();
    if t.spec().t.is_symbolic() || t.spec().tstar.is_symbolic() {
        let e = t.expand();
        v["expanded"] = poly_json(&e);
        rows.extend(poly_table(&e).into_iter().map(|r| {
            let mut row = vec!["monomial".to_string()];
            row.extend(r);
            row
        }));
    }
    Report::ok(v).with_table(&["kind", "key", "coeff"], rows)
}

fn det_json(label: &str, c: &DetCheck) -> Value {
    let first = c.mismatches().into_iter().next().map(|(m, x, y)| {
        json!({"monomial": c.series.monomial_name(&m), "determinant": s(&x), "series": s(&y)})
    });
    json!({
        "case": label,
        "agrees": c.agrees(),
        "monomials": c.series.len(),
        "first_mismatch": first,
    })
}

fn suite_json(r: &SuiteReport) -> Value {
    json!({"name": r.name, "checks": r.checks, "passed": r.passed(), "failures": r.failures})
}

fn lemma1_json(c: &Lemma1Case) -> Value {
    json!({
        "i": c.i,
        "j": c.j,
        "charge": c.charge,
        "lambda": c.lambda.as_ref().map(|l| l.to_string()),
        "maya": c.maya.as_ref().map(|l| l.to_string()),
        "sign": c.sign,
        "holds": c.holds(),
    })
}

fn mc_json(c: &McCheck, sigma: f64) -> Value {
    json!({
        "identity": c.label(),
        "exact": c.exact,
        "estimate": {"re": c.re.mean, "im": c.im.mean},
        "std_error": {"re": c.re.std_error, "im": c.im.std_error},
        "samples": c.re.samples,
        "z_score": c.z_score(),
        "passed": c.passed(sigma),
    })
}

pub fn execute(cmd: &Command) -> Res {
    match cmd {
        Command::Partition(p) => partition_cmd(&p.action),
        Command::Schur(a) => schur_cmd(a),
        Command::Weights(a) => weights_cmd(a),
        Command::Tau(a) => {
            let mut spec = TauSpec::new(a.r.clone(), a.n, a.t.clone(), a.tstar.clone());
            if let Some(c) = a.cap {
                spec = spec.with_length_cap(c);
            }
            Ok(series_report(&tau_series(&spec, a.deg)?))
        }
        Command::Ba(a) => {
            let t = TimesVector::new(a.tstar.clone());
            let c = if a.dual {
                baker_akhiezer_dual(&a.r, a.n, &t, a.deg)?
            } else {
                baker_akhiezer(&a.r, a.n, &t, a.deg)?
            };
            let rows = c.iter().enumerate().map(|(k, x)| vec![k.to_string(), s(x)]).collect();
            Ok(Report::ok(json!({"r": a.r.to_string(), "n": a.n, "dual": a.dual, "coefficients": strs(&c)}))
                .with_table(&["power", "coeff"], rows))
        }
        Command::Hyper(h) => hyper_cmd(h),
        Command::Model(m) => model_cmd(m),
        Command::Fock(f) => fock_cmd(f),
        Command::Oracle(o) => oracle_cmd(o),
        Command::Verify(v) => verify_cmd(v),
    }
}

fn partition_cmd(a: &PartitionAction) -> Res {
    match a {
        PartitionAction::Show { lambda } => {
            let (al, be) = lambda.frobenius();
            Ok(Report::ok(json!({
                "lambda": lambda.to_string(),
                "weight": lambda.weight(),
                "length": lambda.len(),
                "conjugate": lambda.conjugate().to_string(),
                "frobenius": {"alphas": al, "betas": be},
                "contents": lambda.contents(),
                "hooks": lambda.hooks(),
                "hook_product": hook_product(lambda).to_string(),
                "n_lambda": lambda.n_lambda(),
            })))
        }
        PartitionAction::List { weight, length, cols } => {
            let all: Vec<Partition> = enumerate(*weight, *length, *cols).collect();
            let rows = all.iter().map(|l| vec![l.to_string(), l.weight().to_string()]).collect();
            let names: Vec<String> = all.iter().map(|l| l.to_string()).collect();
            Ok(Report::ok(json!({"count": names.len(), "partitions": names}))
                .with_table(&["lambda", "weight"], rows))
        }
    }
}

fn schur_cmd(a: &SchurArgs) -> Res {
    let d = a.lambda.weight().max(1);
    let (t, from_x) = match (&a.t, &a.x) {
        (Some(t), _) => (TimesVector::new(t.clone()).with_cutoff(d.max(t.len())), None),
        (None, Some(x)) => (TimesVector::miwa(x, 1, d), Some(x.clone())),
        (None, None) => return Err(CmdError::Usage("give --t or --x".into())),
    };
    let mut v = json!({
        "lambda": a.lambda.to_string(),
        "times": strs(&t.entries()[..d.min(t.entries().len())]),
        "complete_h": strs(&(0..=d).map(|m| complete_h(m, &t)).collect::<Vec<_>>()),
    });
    match &a.mu {
        Some(mu) => {
            SkewShape::new(a.lambda.clone(), mu.clone())?;
            v["mu"] = json!(mu.to_string());
            v["skew_schur"] = json!(s(&skew_schur(&a.lambda, mu, &t)));
        }
        None => {
            v["schur"] = json!(s(&schur(&a.lambda, &t)));
            if let Some(x) = from_x {
                v["schur_from_eigenvalues"] = json!(s(&schur_from_eigenvalues(&a.lambda, &x)));
            }
        }
    }
    Ok(Report::ok(v))
}

fn weights_cmd(a: &WeightsArgs) -> Res {
    let mut v = json!({
        "r": a.r.to_string(),
        "n": a.n,
        "lambda": a.lambda.to_string(),
        "content_product": s(&content_product(&a.r, a.n, &a.lambda)?),
        "hook_product": hook_product(&a.lambda).to_string(),
        "c_constant": c_constant(&a.r, a.n.max(0) as usize).ok().map(|c| s(&c)),
    });
    if let Some(mu) = &a.mu {
        let shape = SkewShape::new(a.lambda.clone(), mu.clone())?;
        v["skew_content_product"] = json!(s(&skew_content_product(&a.r, a.n, &shape)?));
    }
    if let Some(x) = &a.a {
        v["pochhammer"] = json!(s(&pochhammer_partition(x, &a.lambda)));
    }
    if let Some(q) = &a.q {
        v["hook_product_q"] = json!(s(&hook_product_q(&a.lambda, q)));
        if let Some(x) = &a.a {
            v["q_pochhammer"] = json!(s(&q_pochhammer_partition(x, q, &a.lambda)));
        }
    }
    match rational_r_decomposition(&a.r, a.n, &a.lambda) {
        Ok(d) => {
            let factors: Vec<Value> = d
                .factors
                .iter()
                .map(|f| json!({"factor": f.label, "exponent": f.exponent, "value": s(&f.value)}))
                .collect();
            v["decomposition"] = json!({"factors": factors, "product": s(&d.product), "holds": d.holds()});
        }
        Err(TauError::Precondition(_)) => {}
        Err(e) => return Err(e.into()),
    }
    Ok(Report::ok(v))
}

fn hyper_cmd(h: &HyperCmd) -> Res {
    let t = match h {
        HyperCmd::Pfs { p, x } => hyper_pfs(&p.a, &p.b, p.m, x.clone(), p.deg)?,
        HyperCmd::Two { p, x, y } => hyper_two(&p.a, &p.b, p.m, x.clone(), y.clone(), p.deg)?,
        HyperCmd::Qphi { p, q, x, y } => match y {
            Some(y) => hyper_q_two(&p.a, &p.b, q, p.m, x.clone(), y.clone(), p.deg)?,
            None => hyper_q_one(&p.a, &p.b, q, p.m, x.clone(), p.deg)?,
        },
    };
    Ok(series_report(&t))
}

fn model_series_json(m: &taukit_core::models::ModelSeries) -> Value {
    json!({"provenance": m.provenance, "coefficients": m.to_json()})
}

fn model_cmd(m: &ModelCmd) -> Res {
    match m {
        ModelCmd::Quartic { order, at_n, g, g4, check_oracle } => {
            let series = quartic_series(*order)?;
            let wick = if *check_oracle { Some(quartic_wick(*order)?) } else { None };
            let agree = wick.as_ref().map(|w| w == &series.orders);
            let report: Vec<Value> = quartic_report(&series)
                .iter()
                .map(|r| json!({"order": r.order, "matches_printed": r.matches(), "ratio": r.ratio.as_ref().map(s), "note": r.describe()}))
                .collect();
            let mut v = json!({
                "orders": series.orders.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                "wick": wick.as_ref().map(|w| w.iter().map(|p| p.to_string()).collect::<Vec<_>>()),
                "wick_agrees": agree,
                "conjugation_failures": quartic_conjugation_failures(*order).iter().map(|l| l.to_string()).collect::<Vec<_>>(),
                "printed_report": report,
            });
            if let Some(n) = at_n {
                let params = QuarticModelParams::new(*n, g.clone(), g4.clone())?;
                v["value"] = json!(s(&series.value(&params)));
            }
            Ok(Report::checked(v, agree != Some(false)))
        }
        ModelCmd::Two { n, t, tstar, deg } => {
            let ms = two_matrix_series(*n, t.clone(), tstar.clone(), *deg)?;
            let mut v = model_series_json(&ms);
            let mut ok = true;
            let gauss_shape = *n == 1 && *t == Side::Formal(2) && *tstar == Side::Formal(2);
            if gauss_shape {
                if let ModelCoefficients::Series(p) = &ms.coefficients {
                    let same = p == &gauss_closed_form(*deg)?;
                    v["gauss_closed_form_agrees"] = json!(same);
                    ok = same;
                }
            }
            Ok(Report::checked(v, ok))
        }
        ModelCmd::Hciz { n, deg } => {
            let c = hciz(*n, *deg)?;
            let mut v = det_json(&format!("HCIZ n={n}"), &c);
            v["series"] = poly_json(&c.series);
            Ok(Report::checked(v, c.agrees()))
        }
        ModelCmd::Nmm { u, r, n, t, tstar, deg } => {
            let u = TimesVector::new(u.clone());
            let map = normal_matrix_map(&u, *deg)?;
            let table: Vec<Value> = map.table.iter().map(|(k, x)| json!({"k": k, "r": s(x)})).collect();
            let mut v = json!({"h": strs(&map.h), "r_negative_axis": table});
            if let Some(r) = r {
                let ms = normal_matrix_series(&u, r, *n, t.clone(), tstar.clone(), *deg)?;
                v["series"] = model_series_json(&ms);
            }
            Ok(Report::ok(v))
        }
        ModelCmd::Gw { n, jj, deg } => Ok(series_report(&gross_witten_series(*n, jj, *deg)?)),
        ModelCmd::Unitary { n, t, tstar, deg } => {
            Ok(series_report(&unitary_model_series(*n, t.clone(), tstar.clone(), *deg)?))
        }
        ModelCmd::Gen43 { kind, r, rt, n, star, swapped, x, y, deg } => {
            let kind = match kind {
                AngleArg::Unitary => AngleKind::Unitary,
                AngleArg::Complex => AngleKind::Complex,
                AngleArg::Gw => AngleKind::GrossWitten {
                    rt: rt.clone().ok_or_else(|| CmdError::Usage("--kind gw needs --rt".into()))?,
                },
            };
            let star = match star.trim() {
                "delta" => StarChoice::Delta,
                other => match other.strip_prefix("ta:") {
                    Some(a) => StarChoice::TA(rational(a).map_err(CmdError::Usage)?),
                    None => return Err(CmdError::Usage(format!("bad --star {other:?}"))),
                },
            };
            let ai = AngleIntegral { kind, r: r.clone(), n: *n, star, swapped: *swapped };
            let series = ai.series(x.clone(), y.clone(), *deg)?;
            let (dx, dy) = if *swapped { (y, x) } else { (x, y) };
            let direct = ai.direct_graded(dx, dy, *deg)?;
            let ok = direct == series.graded();
            let mut rep = series_report(&series);
            rep.value["composed_r"] = json!(ai.composed_r().to_string());
            rep.value["direct_graded"] = json!(strs(&direct));
            rep.value["agrees"] = json!(ok);
            rep.ok = ok;
            Ok(rep)
        }
        ModelCmd::Loop { rs, n, deg } => {
            let sp = loop_scalar_product(rs, *n, *deg)?;
            let comp = loop_composition(rs, *n, *deg)?;
            let ok = comp.iter().all(|(_, a, b)| a == b);
            let rows: Vec<Value> = comp
                .iter()
                .map(|(l, a, b)| json!({"lambda": l.to_string(), "operator": s(a), "product": s(b)}))
                .collect();
            Ok(Report::checked(
                json!({"r": rs.iter().map(|r| r.to_string()).collect::<Vec<_>>(), "scalar_product": strs(&sp), "composition": rows}),
                ok,
            ))
        }
    }
}

fn fock_cmd(f: &FockCmd) -> Res {
    match f {
        FockCmd::Vacuum { r, n, deg } => {
            let (fock, series) = vacuum_tau(r, *n, *deg)?;
            let ok = fock == series;
            Ok(Report::checked(
                json!({"r": r.to_string(), "n": n, "deg": deg, "agrees": ok, "fock": poly_json(&fock)}),
                ok,
            )
            .with_table(&["monomial", "coeff"], poly_table(&fock)))
        }
        FockCmd::Lemma1 { i, j, deg, imax, jmax, modes } => {
            let cases = match i {
                Some(i) => vec![lemma1_check(i, j, *deg)?],
                None => lemma1_enumerate(*imax, *jmax, *modes, *deg)?,
            };
            let ok = cases.iter().all(|c| c.holds());
            Ok(Report::checked(
                json!({"cases": cases.iter().map(lemma1_json).collect::<Vec<_>>(), "all_hold": ok}),
                ok,
            ))
        }
        FockCmd::Trace { r, n, deg } => {
            let (fock, direct) = trace_h0(r, *n, *deg)?;
            let ok = fock == direct;
            let rows = fock
                .iter()
                .zip(&direct)
                .enumerate()
                .map(|(k, (a, b))| vec![k.to_string(), s(a), s(b)])
                .collect();
            Ok(Report::checked(
                json!({"r": r.to_string(), "n": n, "fock": strs(&fock), "weights": strs(&direct), "agrees": ok}),
                ok,
            )
            .with_table(&["degree", "fock", "weights"], rows))
        }
        FockCmd::Suite { r, rt, n, deg } => {
            let reports = [
                schur_state_suite(r, *n, *deg)?,
                heisenberg_suite(*n, 2 * deg, 4)?,
                commutation_suite(r, rt, *n, 2 * deg, 3)?,
                prop2_suite(*deg)?,
                prop3_suite(r, *n, *deg)?,
                matrix_element_suite(r, rt, *n, *deg)?,
            ];
            let ok = reports.iter().all(|r| r.passed());
            Ok(Report::checked(json!({"suites": reports.iter().map(suite_json).collect::<Vec<_>>()}), ok))
        }
        FockCmd::Verify { suite, r, rt, n, deg } => {
            let (r, rt, n, deg) = (r.clone(), rt.clone(), *n, *deg);
            let single = |rep: SuiteReport| {
                let ok = rep.passed();
                Report::checked(suite_json(&rep), ok)
            };
            match suite {
                SuiteArg::Lemma1 => fock_cmd(&FockCmd::Lemma1 { i: None, j: vec![], deg, imax: 9, jmax: 5, modes: 5 }),
                SuiteArg::Trace => fock_cmd(&FockCmd::Trace { r, n, deg }),
                SuiteArg::Vacuum => fock_cmd(&FockCmd::Vacuum { r, n, deg }),
                SuiteArg::Heisenberg => Ok(single(heisenberg_suite(n, 2 * deg, 4)?)),
                SuiteArg::Prop2 => Ok(single(prop2_suite(deg)?)),
                SuiteArg::Prop3 => Ok(single(prop3_suite(&r, n, deg)?)),
                SuiteArg::Schur => Ok(single(schur_state_suite(&r, n, deg)?)),
                SuiteArg::Commutation => Ok(single(commutation_suite(&r, &rt, n, 2 * deg, 3)?)),
                SuiteArg::Matrix => Ok(single(matrix_element_suite(&r, &rt, n, deg)?)),
            }
        }
    }
}

fn mc_config(a: &McArgs) -> McConfig {
    McConfig {
        seed: a.seed,
        samples: a.samples,
        chunks: a.chunks,
        sigma: a.sigma,
    }
}

fn mc_cmd(e: Ensemble, a: &McArgs) -> Res {
    if a.a.len() != a.b.len() || a.a.is_empty() {
        return Err(CmdError::Usage("--a and --b need the same nonzero length".into()));
    }
    let cfg = mc_config(a);
    match &a.lambda {
        Some(l) => {
            let c = match e {
                Ensemble::Haar => mc_schur_unitary_identity(l, a.mu.as_ref(), &a.a, &a.b, cfg),
                Ensemble::Ginibre => mc_schur_ginibre_identity(l, a.mu.as_ref(), &a.a, &a.b, cfg),
            };
            let ok = c.passed(cfg.sigma);
            Ok(Report::checked(mc_json(&c, cfg.sigma), ok))
        }
        None => {
            let suite = mc_suite(e, &a.a, &a.b, a.dmax, cfg);
            let rows = suite
                .checks
                .iter()
                .map(|c| {
                    vec![
                        c.label(),
                        c.exact.to_string(),
                        c.re.mean.to_string(),
                        c.re.std_error.to_string(),
                        c.im.mean.to_string(),
                        c.im.std_error.to_string(),
                        c.z_score().to_string(),
                    ]
                })
                .collect();
            Ok(Report::checked(
                json!({
                    "ensemble": format!("{e:?}"),
                    "seed": cfg.seed,
                    "samples": cfg.samples,
                    "sigma": cfg.sigma,
                    "checks": suite.checks.iter().map(|c| mc_json(c, cfg.sigma)).collect::<Vec<_>>(),
                    "misses": suite.failures().len(),
                    "budget": suite.budget(),
                }),
                suite.passed(),
            )
            .with_table(&["identity", "exact", "re", "re_std_error", "im", "im_std_error", "z"], rows))
        }
    }
}

fn oracle_cmd(o: &OracleCmd) -> Res {
    match o {
        OracleCmd::Haar(a) => mc_cmd(Ensemble::Haar, a),
        OracleCmd::Ginibre(a) => mc_cmd(Ensemble::Ginibre, a),
        OracleCmd::Wick { ks, n, g } => {
            let p = wick_pairing_count(ks)?;
            let mut v = json!({"ks": ks, "pairings": p.to_string()});
            if let Some(n) = n {
                v["moment"] = json!(s(&wick_gaussian_moment(ks, *n, g)?));
            }
            Ok(Report::ok(v))
        }
        OracleCmd::Mu { case, n, m, a, b, r, deg, tol } => {
            let need = |x: &Option<Rational>, f: &str| {
                x.clone().ok_or_else(|| CmdError::Usage(format!("this case needs --{f}")))
            };
            let mc = match case {
                MuCase::Ri => MomentCase::RealImaginary,
                MuCase::Circles => MomentCase::Circles,
                MuCase::HalfLine => MomentCase::HalfLine { a: need(a, "a")?, b: need(b, "b")? },
                MuCase::Interval => MomentCase::UnitInterval { a: need(a, "a")? },
                MuCase::Annihilation => {
                    let r = r.clone().ok_or_else(|| CmdError::Usage("annihilation needs --r".into()))?;
                    let mu = MomentMeasure::new(&r, deg + 1)?;
                    let res = mu_annihilation_check(&mu, *deg)?;
                    let ok = res.iter().all(Zero::is_zero);
                    return Ok(Report::checked(
                        json!({"r": r.to_string(), "moments": strs(&mu.coeffs), "residual": strs(&res), "vanishes": ok}),
                        ok,
                    ));
                }
            };
            let rep = mu_moment_check(&mc, *n, *m)?;
            let ok = rep.passed(*tol);
            let mut v = rep.to_json();
            v["tol"] = json!(tol);
            v["passed"] = json!(ok);
            Ok(Report::checked(v, ok))
        }
    }
}

fn outcomes_report(outs: &[criteria::Outcome], timings: bool) -> Report {
    let ok = outs.iter().all(|o| o.passed);
    let rows = outs
        .iter()
        .map(|o| {
            let mut r = vec![o.id.to_string(), o.name.to_string(), o.passed.to_string(), o.checks.to_string()];
            if timings {
                r.push(format!("{:.3}", o.seconds));
            }
            r
        })
        .collect();
    let header: &[&str] = if timings {
        &["id", "name", "passed", "checks", "seconds"]
    } else {
        &["id", "name", "passed", "checks"]
    };
    let lines: Vec<String> = outs.iter().map(|o| o.line()).collect();
    let mut v = json!({
        "passed": ok,
        "criteria": outs.iter().map(|o| o.to_json(timings)).collect::<Vec<_>>(),
    });
    if timings {
        v["lines"] = json!(lines);
    }
    Report::checked(v, ok).with_table(header, rows)
}

fn verify_cmd(v: &VerifyCmd) -> Res {
    match v {
        VerifyCmd::Cauchy { deg } => {
            let (lhs, rhs) = cauchy_truncated(*deg, (*deg).max(1));
            let ok = lhs == rhs;
            let first = lhs.diff_terms(&rhs).into_iter().next().map(|(m, a, b)| {
                json!({"monomial": lhs.monomial_name(&m), "lhs": s(&a), "rhs": s(&b)})
            });
            Ok(Report::checked(
                json!({"deg": deg, "monomials": lhs.len(), "agrees": ok, "counterexample": first}),
                ok,
            ))
        }
        VerifyCmd::Hirota { r, n, deg } => {
            let res = hirota_residual(r, *n, deg + 1, &Rational::from_integer(1.into()))?;
            let ok = res.is_empty();
            Ok(Report::checked(
                json!({"r": r.to_string(), "n": n, "bidegree": deg, "vanishes": ok, "residual": poly_json(&res)}),
                ok,
            ))
        }
        VerifyCmd::Ode { a, b, deg } => {
            let f = hyper_pfs(a, b, 0, Side::EigenFormal(1), *deg)?.row_coefficients();
            let res = ode_residual(a, b, &f);
            let ok = res.iter().all(Zero::is_zero);
            Ok(Report::checked(json!({"coefficients": strs(&f), "residual": strs(&res), "vanishes": ok}), ok))
        }
        VerifyCmd::Qdiff { a, b, q, deg } => {
            let f = hyper_q_one(a, b, q, 0, Side::EigenFormal(1), *deg)?.row_coefficients();
            let r = ContentFunction::q_rational(a.clone(), b.clone(), q.clone());
            let res = q_difference_residual(&r, 0, q, &f)?;
            let ok = res.iter().all(Zero::is_zero);
            Ok(Report::checked(json!({"coefficients": strs(&f), "residual": strs(&res), "vanishes": ok}), ok))
        }
        VerifyCmd::Det { kind, r, m, n, tstar, deg } => {
            let m = m.unwrap_or(*n as i64);
            let c = match kind {
                DetKind::One => det_rep_one_side(r, m, *n, tstar, *deg)?,
                DetKind::Two => det_rep_two_side(r, m, *n, *deg)?,
                DetKind::Deriv => det_rep_derivatives(r, *n, *deg)?,
            };
            let ok = c.agrees();
            Ok(Report::checked(det_json(&format!("{kind:?} r={r} M={m} N={n}"), &c), ok))
        }
        VerifyCmd::Symmetry { r, n, deg, a } => {
            let rep = symmetry_checks(r, *n, *deg, a)?;
            let ok = rep.all();
            Ok(Report::checked(
                json!({"swap": rep.swap, "reflection": rep.reflection, "scaling": rep.scaling, "all": ok}),
                ok,
            ))
        }
        VerifyCmd::Criterion { name, timings, seed } => {
            let id = criteria::id_of(name).ok_or_else(|| {
                CmdError::Usage(format!("unknown criterion {name:?}; known: {}", criteria::NAMES.join(", ")))
            })?;
            let cfg = McConfig { seed: *seed, ..McConfig::default() };
            let o = criteria::run_criterion(id, &Poison::default(), cfg);
            Ok(outcomes_report(&[o], *timings))
        }
        VerifyCmd::All { profile, poison, timings, seed } => {
            let poison = Poison::parse(poison).map_err(CmdError::Usage)?;
            let profile = match profile {
                ProfileArg::Fast => Profile::Fast,
                ProfileArg::Full => Profile::Full,
            };
            let cfg = McConfig { seed: *seed, ..McConfig::default() };
            Ok(outcomes_report(&criteria::verify_all(profile, &poison, cfg), *timings))
        }
    }
}

/// Module operation -> subcommand path that reaches it.
pub const ROUTES: &[(&str, &str)] = &[
    ("partitions::conjugate", "partition show"),
    ("partitions::frobenius", "partition show"),
    ("partitions::contents", "partition show"),
    ("partitions::hooks", "partition show"),
    ("partitions::enumerate", "partition list"),
    ("symfun::complete_h", "schur"),
    ("symfun::schur", "schur"),
    ("symfun::skew_schur", "schur"),
    ("symfun::schur_from_eigenvalues", "schur"),
    ("symfun::miwa", "schur"),
    ("symfun::standard_product", "fock suite"),
    ("symfun::cauchy_truncated", "verify cauchy"),
    ("weights::content_product", "weights"),
    ("weights::skew_content_product", "weights"),
    ("weights::hook_product", "weights"),
    ("weights::pochhammer_partition", "weights"),
    ("weights::c_constant", "weights"),
    ("weights::rational_r_decomposition", "weights"),
    ("tau::tau_series", "tau"),
    ("tau::hyper_pfs", "hyper pfs"),
    ("tau::hyper_two", "hyper two"),
    ("tau::hyper_q", "hyper qphi"),
    ("tau::det_rep_one_side", "verify det"),
    ("tau::det_rep_two_side", "verify det"),
    ("tau::det_rep_derivatives", "verify det"),
    ("tau::hirota_residual", "verify hirota"),
    ("tau::ode_residual", "verify ode"),
    ("tau::q_difference_residual", "verify qdiff"),
    ("tau::baker_akhiezer", "ba"),
    ("tau::symmetry_checks", "verify symmetry"),
    ("fock::apply", "fock suite"),
    ("fock::pair", "fock suite"),
    ("fock::schur_of_operators", "fock suite"),
    ("fock::exp_action", "fock vacuum"),
    ("fock::lemma1_check", "fock lemma1"),
    ("fock::trace_h0", "fock trace"),
    ("fock::heisenberg", "fock verify"),
    ("models::two_matrix_series", "model two"),
    ("models::quartic_series", "model quartic"),
    ("models::hciz", "model hciz"),
    ("models::normal_matrix_map", "model nmm"),
    ("models::gross_witten_series", "model gw"),
    ("models::unitary_model_series", "model unitary"),
    ("models::generalized_angle_integrals", "model gen43"),
    ("models::loop_scalar_product", "model loop"),
    ("oracle::sample_haar_unitary", "oracle haar"),
    ("oracle::mc_schur_unitary_identity", "oracle haar"),
    ("oracle::mc_schur_ginibre_identity", "oracle ginibre"),
    ("oracle::wick_gaussian_moment", "oracle wick"),
    ("oracle::mu_moment_check", "oracle mu"),
    ("oracle::mu_annihilation_check", "oracle mu"),
    ("cli::run_criterion", "verify criterion"),
    ("cli::verify_all", "verify all"),
];
