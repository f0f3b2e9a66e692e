//! Identity checks on the truncated Fock space.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::{One, Zero};
use serde::Serialize;

use super::{exp_action, schur_of_operators, Elementary, Family, FockOperator, FockState, FockVector, Sector};
use crate::error::TauError;
use crate::partitions::{enumerate, Partition, SkewShape};
use crate::symfun::{
    h_sequence, int, schur_from_h, skew_schur_from_h, standard_product, symbolic_vars, Coeff,
    PolySeries, Rational, VarSpace,
};
use crate::tau::{tau_series, Side, TauSpec};
use crate::weights::{
    content_product, deformed_product, skew_content_product, ContentFunction, WeightTable,
};

/// Outcome of a batch of identity checks; `failures` names counterexamples.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport {
            name: name.to_string(),
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn times_space(d: usize) -> (Arc<VarSpace>, [u32; 1], Vec<PolySeries>) {
    let sp = VarSpace::times("t", d);
    let caps = [d as u32];
    let t = symbolic_vars(&sp, &caps, 0);
    (sp, caps, t)
}

/// `<n| e^{H(t)} e^{-A(t*)} |n>` on the Fock space next to the Schur series, both
/// through bidegree `D`.
pub fn vacuum_tau(
    r: &ContentFunction,
    n: i64,
    d: usize,
) -> Result<(PolySeries, PolySeries), TauError> {
    let spec = TauSpec::new(r.clone(), n, Side::Formal(d), Side::Formal(d));
    let series = tau_series(&spec, d)?.expand();
    let sp = spec.space();
    let caps = [d as u32, d as u32];
    let t = symbolic_vars(&sp, &caps, 0);
    let s = symbolic_vars(&sp, &caps, 1);
    let one = PolySeries::constant(&sp, &caps, Rational::one());
    let vac = FockVector::basis_with(FockState::vacuum(n), one, d);
    let ket = exp_action(&Family::NegA(r.clone()), &s, &vac)?;
    let full = exp_action(&Family::H, &t, &ket)?;
    Ok((full.component(&FockState::vacuum(n)), series))
}

/// `s_lambda(H*)|n> = |lambda,n>` and `s_lambda(-A)|n> = r_lambda(n)|lambda,n>`.
pub fn schur_state_suite(r: &ContentFunction, n: i64, d: usize) -> Result<SuiteReport, TauError> {
    let mut rep = SuiteReport::new("schur-states");
    let sector = Sector::new(n, d);
    let vac = FockVector::vacuum(n, d);
    for lambda in enumerate(d, None, None) {
        let target = FockVector::basis(FockState::new(lambda.clone(), n), d);
        let a = schur_of_operators(&lambda, &Family::HStar, &sector)?.apply(&vac);
        rep.check(a == target, || format!("s_{lambda}(H*)|{n}> != |{lambda},{n}>"));
        let w = content_product(r, n, &lambda)?;
        let b = schur_of_operators(&lambda, &Family::NegA(r.clone()), &sector)?.apply(&vac);
        rep.check(b == target.scale(&w), || format!("s_{lambda}(-A)|{n}> != r_lambda |{lambda},{n}>"));
    }
    Ok(rep)
}

fn commutator(a: &FockOperator, b: &FockOperator) -> FockOperator {
    a.mul(b).sub(&b.mul(a))
}

/// `[H_k, H_m] = k delta_{k+m,0}` for `0 < |k|, |m| <= kmax`, on states at least
/// `2 kmax` below the cap.
pub fn heisenberg_suite(n: i64, cap: usize, kmax: i64) -> Result<SuiteReport, TauError> {
    let mut rep = SuiteReport::new("heisenberg");
    let sector = Sector::new(n, cap);
    let mut ops = BTreeMap::new();
    for k in (-kmax..=kmax).filter(|&k| k != 0) {
        ops.insert(k, FockOperator::elementary(&sector, &Elementary::H(k))?);
    }
    let safe: Vec<&FockState> = sector
        .basis
        .iter()
        .filter(|s| s.weight() + 2 * kmax as usize <= cap)
        .collect();
    for (&k, hk) in &ops {
        for (&m, hm) in &ops {
            let c = commutator(hk, hm);
            let want = if k + m == 0 { int(k) } else { Rational::zero() };
            for s in &safe {
                let v = c.column(s);
                let expect = FockVector::basis((*s).clone(), cap).scale(&want);
                rep.check(v == expect, || format!("[H_{k}, H_{m}] on {s}"));
            }
        }
    }
    Ok(rep)
}

/// `[A_m, A_k] = 0` and `[A~_m, A~_k] = 0` on safe states.
pub fn commutation_suite(
    r: &ContentFunction,
    rt: &ContentFunction,
    n: i64,
    cap: usize,
    kmax: usize,
) -> Result<SuiteReport, TauError> {
    let mut rep = SuiteReport::new("commutation");
    let sector = Sector::new(n, cap);
    for (label, fam) in [("A", Family::NegA(r.clone())), ("A~", Family::ATilde(rt.clone()))] {
        let ops: Vec<FockOperator> = (1..=kmax)
            .map(|m| FockOperator::elementary(&sector, &fam.raw(m)))
            .collect::<Result<_, _>>()?;
        for a in 0..kmax {
            for b in a + 1..kmax {
                let c = commutator(&ops[a], &ops[b]);
                for s in sector.basis.iter().filter(|s| s.weight() + 2 * kmax <= cap) {
                    rep.check(c.column(s).is_zero(), || {
                        format!("[{label}_{}, {label}_{}] on {s}", a + 1, b + 1)
                    });
                }
            }
        }
    }
    Ok(rep)
}

/// Vacuum expectation `<n| X |n>` of a sector operator.
fn vev(op: &FockOperator, n: i64) -> Rational {
    let v = FockState::vacuum(n);
    op.entry(&v, &v)
}

/// Power sums `p_nu` of the raw family operators, as a sector operator.
fn power_product(nu: &Partition, fam: &Family, sector: &Arc<Sector>) -> Result<FockOperator, TauError> {
    let mut acc = FockOperator::identity(sector);
    for &m in nu.parts() {
        acc = FockOperator::elementary(sector, &fam.raw(m))?.mul(&acc);
    }
    Ok(acc)
}

fn power_poly(nu: &Partition, t: &[PolySeries], proto: &PolySeries) -> PolySeries {
    let mut acc = proto.one_like();
    for &m in nu.parts() {
        acc = acc.mul(&t[m - 1].scale(&int(m as i64)));
    }
    acc
}

/// `<0| f(H) g(H*) |0> = <f, g>` on Schur and power-sum bases through weight `D`.
pub fn prop2_suite(d: usize) -> Result<SuiteReport, TauError> {
    let mut rep = SuiteReport::new("prop2");
    let sector = Sector::new(0, d);
    let (sp, caps, t) = times_space(d);
    let proto = PolySeries::zero(&sp, &caps);
    let h = h_sequence(&t, &proto, d);
    let lambdas: Vec<Partition> = enumerate(d, None, None).collect();
    let sh: Vec<FockOperator> = lambdas
        .iter()
        .map(|l| schur_of_operators(l, &Family::H, &sector))
        .collect::<Result<_, _>>()?;
    let ss: Vec<FockOperator> = lambdas
        .iter()
        .map(|l| schur_of_operators(l, &Family::HStar, &sector))
        .collect::<Result<_, _>>()?;
    let polys: Vec<PolySeries> = lambdas.iter().map(|l| schur_from_h(l, &h)).collect();
    for (i, a) in lambdas.iter().enumerate() {
        for (j, b) in lambdas.iter().enumerate() {
            if a.weight() != b.weight() && (i + j) % 3 != 0 {
                continue;
            }
            let got = vev(&sh[i].mul(&ss[j]), 0);
            let want = standard_product(&polys[i], &polys[j]);
            rep.check(got == want, || format!("<s_{a}(H) s_{b}(H*)> = {got}, want {want}"));
        }
    }
    for a in &lambdas {
        for b in lambdas.iter().filter(|b| b.weight() == a.weight()) {
            let got = vev(
                &power_product(a, &Family::H, &sector)?.mul(&power_product(b, &Family::HStar, &sector)?),
                0,
            );
            let want = standard_product(&power_poly(a, &t, &proto), &power_poly(b, &t, &proto));
            rep.check(got == want, || format!("<p_{a}(H) p_{b}(H*)> = {got}, want {want}"));
        }
    }
    Ok(rep)
}

/// `<n| f(H) g(-A) |n> = <f, g>_{r,n}` on Schur and power-sum bases through weight `D`.
pub fn prop3_suite(r: &ContentFunction, n: i64, d: usize) -> Result<SuiteReport, TauError> {
    let mut rep = SuiteReport::new("prop3");
    let sector = Sector::new(n, d);
    let (sp, caps, t) = times_space(d);
    let proto = PolySeries::zero(&sp, &caps);
    let h = h_sequence(&t, &proto, d);
    let lambdas: Vec<Partition> = enumerate(d, None, None).collect();
    let neg_a = Family::NegA(r.clone());
    for a in &lambdas {
        let fa = schur_of_operators(a, &Family::H, &sector)?;
        let pa = schur_from_h(a, &h);
        for b in lambdas.iter().filter(|b| b.weight() == a.weight()) {
            let got = vev(&fa.mul(&schur_of_operators(b, &neg_a, &sector)?), n);
            let want = deformed_product(&pa, &schur_from_h(b, &h), r, n, d)?;
            rep.check(got == want, || format!("<s_{a}(H) s_{b}(-A)>_{n} = {got}, want {want}"));
        }
    }
    for a in &lambdas {
        for b in lambdas.iter().filter(|b| b.weight() == a.weight()) {
            let got = vev(
                &power_product(a, &Family::H, &sector)?.mul(&power_product(b, &neg_a, &sector)?),
                n,
            );
            let want = deformed_product(&power_poly(a, &t, &proto), &power_poly(b, &t, &proto), r, n, d)?;
            rep.check(got == want, || format!("<p_{a}(H) p_{b}(-A)>_{n} = {got}, want {want}"));
        }
    }
    Ok(rep)
}

/// `<lambda,n| e^{-A(t*)} |mu,n> = s_{lambda/mu}(t*) r_{lambda/mu}(n)` and
/// `<mu,n| e^{A~(t)} |lambda,n> = s_{lambda/mu}(t) r~_{lambda/mu}(n)` for `|lambda| <= D`.
pub fn matrix_element_suite(
    r: &ContentFunction,
    rt: &ContentFunction,
    n: i64,
    d: usize,
) -> Result<SuiteReport, TauError> {
    let mut rep = SuiteReport::new("matrix-elements");
    let (sp, caps, t) = times_space(d);
    let proto = PolySeries::zero(&sp, &caps);
    let h = h_sequence(&t, &proto, d);
    let one = proto.one_like();
    let lambdas: Vec<Partition> = enumerate(d, None, None).collect();
    let skew = |outer: &Partition, inner: &Partition, f: &ContentFunction| -> Result<PolySeries, TauError> {
        match SkewShape::new(outer.clone(), inner.clone()) {
            Ok(shape) => Ok(skew_schur_from_h(&shape, &h).scale(&skew_content_product(f, n, &shape)?)),
            Err(_) => Ok(proto.clone()),
        }
    };
    for mu in &lambdas {
        let v = FockVector::basis_with(FockState::new(mu.clone(), n), one.clone(), d);
        let up = exp_action(&Family::NegA(r.clone()), &t, &v)?;
        for lambda in &lambdas {
            let got = up.component(&FockState::new(lambda.clone(), n));
            let want = skew(lambda, mu, r)?;
            rep.check(got == want, || format!("<{lambda}| e^(-A) |{mu}>"));
        }
    }
    for lambda in &lambdas {
        let v = FockVector::basis_with(FockState::new(lambda.clone(), n), one.clone(), d);
        let down = exp_action(&Family::ATilde(rt.clone()), &t, &v)?;
        for mu in &lambdas {
            let got = down.component(&FockState::new(mu.clone(), n));
            let want = skew(lambda, mu, rt)?;
            rep.check(got == want, || format!("<{mu}| e^(A~) |{lambda}>"));
        }
    }
    Ok(rep)
}

/// One index pattern of Lemma 1 with both sides evaluated.
#[derive(Clone, Debug)]
pub struct Lemma1Case {
    pub i: Vec<i64>,
    pub j: Vec<i64>,
    pub charge: i64,
    /// Shape assembled from the rows `i_l - c + l` and the Frobenius block.
    pub lambda: Option<Partition>,
    /// Shape read off the Maya diagram of the state.
    pub maya: Option<Partition>,
    pub sign: i64,
    pub value: PolySeries,
    pub expected: PolySeries,
}

impl Lemma1Case {
    pub fn holds(&self) -> bool {
        self.lambda.is_some() && self.lambda == self.maya && self.value == self.expected
    }
}

fn strictly_decreasing(v: &[i64]) -> bool {
    v.windows(2).all(|w| w[0] > w[1])
}

fn lemma1_shape(i: &[i64], j: &[i64]) -> Option<Partition> {
    let c = i.len() - j.len();
    let mut rows: Vec<usize> = Vec::new();
    for (l, &il) in i[..c].iter().enumerate() {
        let v = il - c as i64 + l as i64 + 1;
        rows.push(usize::try_from(v).ok()?);
    }
    let alphas: Vec<usize> = i[c..].iter().map(|&x| x as usize).collect();
    let betas: Vec<usize> = j.iter().map(|&x| x as usize - 1).collect();
    let frob = Partition::from_frobenius(&alphas, &betas).ok()?;
    rows.extend(frob.parts());
    Partition::new(rows).ok()
}

/// `<s-k| e^{H(t)} psi*_{-j_1}..psi*_{-j_k} psi_{i_s}..psi_{i_1} |0>` against
/// `(-1)^{j_1+..+j_k+(k-s)(k-s+1)/2} s_lambda(t)`, through weight `D`.
pub fn lemma1_check(i: &[i64], j: &[i64], d: usize) -> Result<Lemma1Case, TauError> {
    let (s, k) = (i.len(), j.len());
    let bad = !strictly_decreasing(i)
        || !strictly_decreasing(j)
        || i.last().is_some_and(|&x| x < 0)
        || j.last().is_some_and(|&x| x < 1)
        || s < k;
    if bad {
        return Err(TauError::InvalidIndexPattern(format!("i={i:?} j={j:?}")));
    }
    let c = (s - k) as i64;
    let wide = 4 * (i.first().copied().unwrap_or(0) + j.first().copied().unwrap_or(0)) as usize + 8;
    let mut state = FockVector::vacuum(0, wide);
    for &x in i {
        state = state.apply_mode(x, true)?;
    }
    for &y in j.iter().rev() {
        state = state.apply_mode(-y, false)?;
    }
    let (sp, caps, t) = times_space(d);
    let one = PolySeries::constant(&sp, &caps, Rational::one());
    let (maya, lifted) = match state.terms().iter().next() {
        Some((st, sign)) => (
            Some(st.lambda().clone()),
            FockVector::basis_with(st.clone(), one.scale(sign), d.max(st.weight())),
        ),
        None => (None, FockVector::zero_with(&one, d)),
    };
    let value = exp_action(&Family::H, &t, &lifted)?.component(&FockState::vacuum(c));
    let lambda = lemma1_shape(i, j);
    let ksum: i64 = j.iter().sum::<i64>() + (k as i64 - s as i64) * (k as i64 - s as i64 + 1) / 2;
    let sign = if ksum.rem_euclid(2) == 0 { 1 } else { -1 };
    let expected = match &lambda {
        Some(l) => schur_from_h(l, &h_sequence(&t, &one.zero_like(), d)).scale(&int(sign)),
        None => one.zero_like(),
    };
    Ok(Lemma1Case {
        i: i.to_vec(),
        j: j.to_vec(),
        charge: c,
        lambda,
        maya,
        sign,
        value,
        expected,
    })
}

fn subsets_desc(lo: i64, hi: i64, max: usize) -> Vec<Vec<i64>> {
    let n = (hi - lo + 1) as u32;
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize <= max)
        .map(|m| (lo..=hi).rev().filter(|&x| m >> (x - lo) & 1 == 1).collect())
        .collect()
}

fn maya_weight(i: &[i64], j: &[i64]) -> usize {
    let c = (i.len() - j.len()) as i64;
    let mut ps: Vec<i64> = i.to_vec();
    let deepest = j.iter().copied().max().unwrap_or(0);
    ps.extend((1..=deepest + 1).map(|y| -y).filter(|y| !j.contains(&-y)));
    ps.sort_unstable_by(|a, b| b.cmp(a));
    ps.iter()
        .enumerate()
        .map(|(l, p)| (p + l as i64 + 1 - c) as usize)
        .sum()
}

/// Every pattern with `i ⊂ [0, imax]`, `j ⊂ [1, jmax]`, `k <= s <= smax` whose shape has
/// weight at most `D`.
pub fn lemma1_enumerate(imax: i64, jmax: i64, smax: usize, d: usize) -> Result<Vec<Lemma1Case>, TauError> {
    let is = subsets_desc(0, imax, smax);
    let js = subsets_desc(1, jmax, smax);
    let mut out = Vec::new();
    for i in &is {
        for j in js.iter().filter(|j| j.len() <= i.len()) {
            if maya_weight(i, j) <= d {
                out.push(lemma1_check(i, j, d)?);
            }
        }
    }
    Ok(out)
}

/// Diagonal of `e^{H_0(T)}` with `r(k) = e^{T_{k-1} - T_k}`, normalized so that the
/// vacuum of each charge has eigenvalue 1.
#[derive(Clone, Debug)]
pub struct H0Diag {
    lo: i64,
    hi: i64,
    e: Vec<Rational>,
}

impl H0Diag {
    /// Covers every state of charge `n` and weight at most `d`.
    pub fn new(r: &ContentFunction, n: i64, d: usize) -> Result<Self, TauError> {
        let (lo, hi) = (n - d as i64 - 1, n + d as i64);
        let mut e = vec![Rational::one()];
        for k in lo + 1..=hi {
            let v = r.eval(k)?;
            if v.is_zero() {
                return Err(TauError::ZeroOfR { k });
            }
            let prev = e.last().expect("nonempty").clone();
            e.push(prev / v);
        }
        Ok(H0Diag { lo, hi, e })
    }

    fn raw(&self, s: &FockState) -> Rational {
        let mut acc = Rational::one();
        for k in self.lo..=self.hi {
            let ek = &self.e[(k - self.lo) as usize];
            match (k < 0, s.occupied(k)) {
                (true, false) => acc *= ek,
                (false, true) => acc /= ek,
                _ => {}
            }
        }
        acc
    }

    pub fn eigenvalue(&self, s: &FockState) -> Rational {
        self.raw(s) / self.raw(&FockState::vacuum(s.charge()))
    }
}

/// Graded trace of `e^{H_0}` over charge `n`, weights `0..=D`, next to the graded
/// sum of `r_lambda(n)`.
pub fn trace_h0(
    r: &ContentFunction,
    n: i64,
    d: usize,
) -> Result<(Vec<Rational>, Vec<Rational>), TauError> {
    let diag = H0Diag::new(r, n, d)?;
    let sector = Sector::new(n, d);
    let op = FockOperator::diagonal(&sector, |s| Ok(diag.eigenvalue(s)))?;
    let mut fock = vec![Rational::zero(); d + 1];
    for s in &sector.basis {
        let v = op.apply(&FockVector::basis(s.clone(), d));
        fock[s.weight()] += v.component(s);
    }
    let direct = WeightTable::new(r, n, d, None)?.graded_sum();
    Ok((fock, direct))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfun::rat;

    #[test]
    fn vacuum_tau_small() {
        for (r, n) in [
            (ContentFunction::shifted_linear(rat(1, 2)), 0),
            (ContentFunction::linear(), 2),
            (ContentFunction::one(), -1),
        ] {
            let (f, s) = vacuum_tau(&r, n, 4).unwrap();
            assert_eq!(f, s, "{r} n={n}");
        }
    }

    #[test]
    fn schur_states() {
        let r = ContentFunction::shifted_linear(rat(1, 3));
        assert!(schur_state_suite(&r, 1, 4).unwrap().passed());
    }

    #[test]
    fn heisenberg_and_commutation() {
        assert!(heisenberg_suite(0, 8, 3).unwrap().passed());
        let r = ContentFunction::shifted_linear(rat(1, 2));
        let rt = ContentFunction::rational(vec![int(2)], vec![rat(1, 3)]);
        assert!(commutation_suite(&r, &rt, 1, 8, 3).unwrap().passed());
    }

    #[test]
    fn props() {
        assert!(prop2_suite(4).unwrap().passed());
        let r = ContentFunction::shifted_linear(rat(1, 2));
        let rep = prop3_suite(&r, 1, 4).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
    }

    #[test]
    fn matrix_elements() {
        let r = ContentFunction::shifted_linear(rat(1, 2));
        let rt = ContentFunction::rational(vec![int(1)], vec![rat(7, 2)]);
        let rep = matrix_element_suite(&r, &rt, 0, 4).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
    }

    #[test]
    fn lemma1_small() {
        let c = lemma1_check(&[0], &[], 3).unwrap();
        assert!(c.holds());
        assert_eq!(c.lambda, Some(Partition::empty()));
        let c = lemma1_check(&[3, 0], &[1], 5).unwrap();
        assert_eq!(c.lambda, Some(Partition::new(vec![3, 1]).unwrap()));
        assert!(c.holds(), "{c:?}");
        assert!(lemma1_check(&[0, 1], &[], 3).is_err());
        assert!(lemma1_check(&[], &[1], 3).is_err());
    }

    #[test]
    fn trace_examples() {
        let (f, w) = trace_h0(&ContentFunction::shifted_linear(rat(1, 2)), 1, 3).unwrap();
        assert_eq!(f, w);
        let (f, _) = trace_h0(&ContentFunction::one(), 0, 3).unwrap();
        assert_eq!(f, vec![int(1), int(1), int(2), int(3)]);
        assert!(trace_h0(&ContentFunction::shifted_linear(int(1)), 0, 2).is_err());
    }
}
