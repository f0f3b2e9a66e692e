//! Symmetric functions in the higher-times coordinates.
//!
//! `t_m` is tied to eigenvalues by `m t_m = sum_i x_i^m`. Complete functions come
//! from `exp(sum t_m z^m) = sum h_k z^k` and Schur functions from Jacobi-Trudi.
//! The determinant and `h` recursions are generic over [`Coeff`], so the same
//! code runs on exact rationals, complex floats and truncated series.

pub mod poly;
pub mod ring;
pub mod upoly;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num::{BigInt, One, Signed, Zero};

use crate::error::TauError;
use crate::partitions::{enumerate, Partition, SkewShape};
pub use poly::{Monomial, PolySeries, VarSpace};
pub use ring::{rational_to_f64, Coeff};
pub use upoly::UPoly;

pub type Rational = num::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn parse_rational(s: &str) -> Result<Rational, TauError> {
    let s = s.trim();
    Rational::from_str(s).map_err(|_| TauError::Parse(format!("not a rational: {s:?}")))
}

/// Integer power, negative exponents allowed for nonzero bases.
pub fn rpow(x: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num::pow(x.clone(), e as usize)
    } else {
        num::pow(x.recip(), (-e) as usize)
    }
}

/// `(t_1, ..., t_K)`; entries past `K` are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TimesVector {
    entries: Vec<Rational>,
}

impl TimesVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        TimesVector { entries }
    }

    pub fn zeros(k: usize) -> Self {
        TimesVector {
            entries: vec![Rational::zero(); k],
        }
    }

    pub fn cutoff(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    /// `t_m`, 1-based.
    pub fn get(&self, m: usize) -> Rational {
        if m == 0 || m > self.entries.len() {
            Rational::zero()
        } else {
            self.entries[m - 1].clone()
        }
    }

    /// `t_m = sign * (1/m) sum_i x_i^m`.
    pub fn miwa(x: &[Rational], sign: i64, k: usize) -> Self {
        let entries = (1..=k)
            .map(|m| {
                let p: Rational = x.iter().map(|xi| num::pow(xi.clone(), m)).sum();
                p * int(sign) / int(m as i64)
            })
            .collect();
        TimesVector { entries }
    }

    /// `t(a) = (a, a/2, a/3, ...)`.
    pub fn t_a(a: &Rational, k: usize) -> Self {
        TimesVector {
            entries: (1..=k).map(|m| a / int(m as i64)).collect(),
        }
    }

    /// `(1, 0, 0, ...)`.
    pub fn t_inf(k: usize) -> Self {
        let mut t = Self::zeros(k.max(1));
        t.entries[0] = Rational::one();
        t
    }

    /// `t_m = 1/(m (1 - q^m))`.
    pub fn q_geometric(q: &Rational, k: usize) -> Self {
        TimesVector {
            entries: (1..=k)
                .map(|m| (int(m as i64) * (Rational::one() - num::pow(q.clone(), m))).recip())
                .collect(),
        }
    }

    /// `t_m = (1 - Q^m) / (m (1 - q^m))`, the q-analogue of `t(a)` with `Q = q^a`.
    pub fn q_t_a(big_q: &Rational, q: &Rational, k: usize) -> Self {
        TimesVector {
            entries: (1..=k)
                .map(|m| {
                    (Rational::one() - num::pow(big_q.clone(), m))
                        / (int(m as i64) * (Rational::one() - num::pow(q.clone(), m)))
                })
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        TimesVector {
            entries: self.entries.iter().map(|x| -x).collect(),
        }
    }

    /// `t_m -> a^m t_m`.
    pub fn rescale(&self, a: &Rational) -> Self {
        TimesVector {
            entries: self
                .entries
                .iter()
                .enumerate()
                .map(|(i, x)| x * num::pow(a.clone(), i + 1))
                .collect(),
        }
    }

    pub fn with_cutoff(&self, k: usize) -> Self {
        TimesVector {
            entries: (1..=k).map(|m| self.get(m)).collect(),
        }
    }
}

impl fmt::Display for TimesVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.entries.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for TimesVector {
    type Err = TauError;

    /// Comma-separated rationals, brackets optional: `"1,1/2,0"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s.trim().trim_start_matches(['[', '(']).trim_end_matches([']', ')']);
        if body.trim().is_empty() {
            return Ok(TimesVector::zeros(0));
        }
        body.split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>, _>>()
            .map(TimesVector::new)
    }
}

/// `h_0 .. h_mmax` from `t_1, t_2, ...` (`t[0]` is `t_1`) by `m h_m = sum k t_k h_{m-k}`.
pub fn h_sequence<C: Coeff>(t: &[C], proto: &C, mmax: usize) -> Vec<C> {
    let mut h = vec![proto.one_like()];
    for m in 1..=mmax {
        let mut acc = proto.zero_like();
        for k in 1..=m.min(t.len()) {
            if t[k - 1].vanishes() || h[m - k].vanishes() {
                continue;
            }
            acc.add_assign(&t[k - 1].mul(&h[m - k]).scale(&int(k as i64)));
        }
        h.push(acc.scale(&rat(1, m as i64)));
    }
    h
}

/// Elementary functions from complete ones: `e_m = sum_k (-1)^(k-1) h_k e_{m-k}`.
pub fn e_from_h<C: Coeff>(h: &[C]) -> Vec<C> {
    let mut e = vec![h[0].one_like()];
    for m in 1..h.len() {
        let mut acc = h[0].zero_like();
        for k in 1..=m {
            let term = h[k].mul(&e[m - k]);
            if k % 2 == 1 {
                acc.add_assign(&term);
            } else {
                acc = acc.sub(&term);
            }
        }
        e.push(acc);
    }
    e
}

/// Determinant by dynamic programming over column subsets.
pub fn det<C: Coeff>(a: &[Vec<C>], proto: &C) -> C {
    let n = a.len();
    if n == 0 {
        return proto.one_like();
    }
    assert!(n <= 20, "determinant too large for subset expansion");
    let mut dp: Vec<Option<C>> = vec![None; 1 << n];
    dp[0] = Some(proto.one_like());
    for s in 0..(1usize << n) {
        let Some(cur) = dp[s].take() else { continue };
        let row = s.count_ones() as usize;
        if row == n {
            dp[s] = Some(cur);
            continue;
        }
        for c in 0..n {
            if s & (1 << c) != 0 || a[row][c].vanishes() {
                continue;
            }
            let above = (s >> (c + 1)).count_ones();
            let mut term = cur.mul(&a[row][c]);
            if above % 2 == 1 {
                term = term.neg();
            }
            let slot = &mut dp[s | (1 << c)];
            match slot {
                Some(v) => v.add_assign(&term),
                None => *slot = Some(term),
            }
        }
    }
    dp[(1 << n) - 1].take().unwrap_or_else(|| proto.zero_like())
}

fn seq_at<C: Coeff>(seq: &[C], proto: &C, k: i64) -> C {
    if k < 0 {
        proto.zero_like()
    } else {
        seq.get(k as usize).cloned().unwrap_or_else(|| proto.zero_like())
    }
}

/// `det(f_{lambda_i - mu_j - i + j})` for `f` equal to `h` (or `e` with conjugate shapes).
fn jt_matrix<C: Coeff>(outer: &[usize], inner: &[usize], seq: &[C], proto: &C) -> C {
    let n = outer.len();
    let m: Vec<Vec<C>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mu_j = inner.get(j).copied().unwrap_or(0) as i64;
                    seq_at(seq, proto, outer[i] as i64 - mu_j - i as i64 + j as i64)
                })
                .collect()
        })
        .collect();
    det(&m, proto)
}

/// Skew Jacobi-Trudi from a precomputed `h` sequence (needs `h` up to the skew weight).
/// Picks the `e`-form with conjugate shapes when it gives the smaller determinant.
pub fn skew_schur_from_h<C: Coeff>(shape: &SkewShape, h: &[C]) -> C {
    let proto = &h[0];
    let (outer, inner) = (shape.outer(), shape.inner());
    if outer.len() <= outer.part(1) {
        jt_matrix(outer.parts(), inner.parts(), h, proto)
    } else {
        let e = e_from_h(h);
        let (oc, ic) = (outer.conjugate(), inner.conjugate());
        jt_matrix(oc.parts(), ic.parts(), &e, proto)
    }
}

pub fn schur_from_h<C: Coeff>(lambda: &Partition, h: &[C]) -> C {
    skew_schur_from_h(&SkewShape::whole(lambda.clone()), h)
}

/// Generic `s_lambda(t)` for times in any coefficient ring.
pub fn schur_generic<C: Coeff>(lambda: &Partition, t: &[C], proto: &C) -> C {
    let h = h_sequence(t, proto, lambda.weight());
    schur_from_h(lambda, &h)
}

pub fn complete_h(m: usize, t: &TimesVector) -> Rational {
    h_sequence(t.entries(), &Rational::one(), m).pop().unwrap()
}

pub fn schur(lambda: &Partition, t: &TimesVector) -> Rational {
    schur_generic(lambda, t.entries(), &Rational::one())
}

/// `s_{lambda/mu}(t)`; zero when the inner shape does not fit.
pub fn skew_schur(outer: &Partition, inner: &Partition, t: &TimesVector) -> Rational {
    match SkewShape::new(outer.clone(), inner.clone()) {
        Ok(shape) => {
            let h = h_sequence(t.entries(), &Rational::one(), shape.weight());
            skew_schur_from_h(&shape, &h)
        }
        Err(_) => Rational::zero(),
    }
}

/// `s_lambda(x_1, ..., x_n)` by the bialternant, falling back to the Miwa route when
/// eigenvalues coincide.
pub fn schur_from_eigenvalues(lambda: &Partition, x: &[Rational]) -> Rational {
    match schur_bialternant(lambda, x) {
        Ok(v) => v,
        Err(_) => schur(lambda, &TimesVector::miwa(x, 1, lambda.weight())),
    }
}

/// `det(x_i^{lambda_j + n - j}) / det(x_i^{n - j})`; errors on coincident eigenvalues.
pub fn schur_bialternant(lambda: &Partition, x: &[Rational]) -> Result<Rational, TauError> {
    let n = x.len();
    for i in 0..n {
        for j in i + 1..n {
            if x[i] == x[j] {
                return Err(TauError::CoincidentEigenvalues(i + 1, j + 1));
            }
        }
    }
    if lambda.len() > n {
        return Ok(Rational::zero());
    }
    if n == 0 {
        return Ok(Rational::one());
    }
    let alt = |shift: &dyn Fn(usize) -> usize| -> Rational {
        let m: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| num::pow(x[i].clone(), shift(j))).collect())
            .collect();
        det(&m, &Rational::one())
    };
    let num_ = alt(&|j| lambda.part(j + 1) + n - 1 - j);
    let den = alt(&|j| n - 1 - j);
    Ok(num_ / den)
}

/// `sum_alpha c_alpha d_alpha prod_m alpha_m! / m^alpha_m`: the power-sum scalar product
/// written in times. Each variable's weight is taken as its index `m`.
pub fn standard_product(f: &PolySeries, g: &PolySeries) -> Rational {
    let sp = f.space();
    let mut total = Rational::zero();
    for (m, c) in f.terms() {
        let d = g.coeff(m);
        if d.is_zero() {
            continue;
        }
        let mut z = Rational::one();
        for (v, &e) in m.iter().enumerate() {
            let w = int(sp.weight(v) as i64);
            for k in 1..=e {
                z = z * int(k as i64) / &w;
            }
        }
        total += c * d * z;
    }
    total
}

/// Group `g` variables of a space as series, in declaration order.
pub fn symbolic_vars(space: &Arc<VarSpace>, caps: &[u32], g: usize) -> Vec<PolySeries> {
    space
        .group_vars(g)
        .into_iter()
        .map(|v| PolySeries::var(space, caps, v))
        .collect()
}

/// Miwa image `t_m = (1/m) sum x_i^m` of symbolic eigenvalues, for `m <= k`.
pub fn symbolic_miwa(x: &[PolySeries], proto: &PolySeries, k: usize) -> Vec<PolySeries> {
    (1..=k)
        .map(|m| {
            let mut acc = proto.zero_like();
            for xi in x {
                acc = acc.add(&xi.pow(m as u32));
            }
            acc.scale(&rat(1, m as i64))
        })
        .collect()
}

/// `exp(sum m t_m t*_m)` and `sum_lambda s_lambda(t) s_lambda(t*)`, truncated at bidegree `d`.
pub fn cauchy_truncated(d: usize, k: usize) -> (PolySeries, PolySeries) {
    assert!(d <= k, "cauchy_truncated needs D <= K");
    let sp = VarSpace::bitimes(k);
    let caps = [d as u32, d as u32];
    let t = symbolic_vars(&sp, &caps, 0);
    let s = symbolic_vars(&sp, &caps, 1);
    let proto = PolySeries::zero(&sp, &caps);
    let mut arg = proto.clone();
    for m in 0..k {
        arg = arg.add(&t[m].mul(&s[m]).scale(&int(m as i64 + 1)));
    }
    let lhs = arg.exp().expect("zero constant term");
    let ht = h_sequence(&t, &proto, d);
    let hs = h_sequence(&s, &proto, d);
    let mut rhs = proto.clone();
    for lambda in enumerate(d, None, None) {
        let a = schur_from_h(&lambda, &ht);
        let b = schur_from_h(&lambda, &hs);
        rhs = rhs.add(&a.mul(&b));
    }
    (lhs, rhs)
}

/// Exact reduced fraction as `"num/den"` (or `"num"` for integers).
pub fn fmt_rational(x: &Rational) -> String {
    x.to_string()
}

pub fn is_nonneg_integer(x: &Rational) -> bool {
    x.is_integer() && !x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn tv(v: &[(i64, i64)]) -> TimesVector {
        TimesVector::new(v.iter().map(|&(a, b)| rat(a, b)).collect())
    }

    #[test]
    fn complete_h_cubic() {
        let t = tv(&[(2, 1), (3, 1), (5, 1)]);
        // t1^3/6 + t1 t2 + t3 at (2,3,5)
        assert_eq!(complete_h(3, &t), rat(8, 6) + int(6) + int(5));
        assert_eq!(complete_h(0, &t), int(1));
        let u = TimesVector::t_inf(6);
        assert_eq!(complete_h(5, &u), rat(1, 120));
    }

    #[test]
    fn schur_small_cases() {
        let t = tv(&[(2, 1), (3, 1), (5, 1)]);
        assert_eq!(schur(&p(&[1]), &t), int(2));
        // t1^3/3 - t3
        assert_eq!(schur(&p(&[2, 1]), &t), rat(8, 3) - int(5));
        assert_eq!(skew_schur(&p(&[3]), &p(&[1]), &t), complete_h(2, &t));
        // two disconnected cells: h_1^2
        assert_eq!(skew_schur(&p(&[2, 1]), &p(&[1]), &t), int(4));
        assert_eq!(skew_schur(&p(&[2, 1]), &p(&[2, 1]), &t), int(1));
        assert_eq!(skew_schur(&p(&[2]), &p(&[1, 1]), &t), int(0));
    }

    #[test]
    fn bialternant_example() {
        assert_eq!(schur_from_eigenvalues(&p(&[2]), &[int(2), int(3)]), int(19));
        assert!(schur_bialternant(&p(&[1]), &[int(1), int(1)]).is_err());
        assert_eq!(schur_from_eigenvalues(&p(&[1]), &[int(1), int(1)]), int(2));
    }

    #[test]
    fn miwa_examples() {
        assert_eq!(TimesVector::miwa(&[int(1)], 1, 3), tv(&[(1, 1), (1, 2), (1, 3)]));
        assert_eq!(
            TimesVector::miwa(&[int(2), int(-2)], 1, 4),
            tv(&[(0, 1), (4, 1), (0, 1), (8, 1)])
        );
    }

    #[test]
    fn power_sum_products() {
        let sp = VarSpace::times("t", 4);
        let caps = [4];
        let t = symbolic_vars(&sp, &caps, 0);
        let p2 = t[1].scale(&int(2));
        assert_eq!(standard_product(&p2, &p2), int(2));
        let proto = PolySeries::zero(&sp, &caps);
        let h = h_sequence(&t, &proto, 3);
        let s21 = schur_from_h(&p(&[2, 1]), &h);
        let s2 = schur_from_h(&p(&[2]), &h);
        let s11 = schur_from_h(&p(&[1, 1]), &h);
        assert_eq!(standard_product(&s21, &s21), int(1));
        assert_eq!(standard_product(&s2, &s11), int(0));
    }

    #[test]
    fn cauchy_low_degree() {
        let (l, r) = cauchy_truncated(1, 1);
        assert!(l.agrees_with(&r));
        assert_eq!(l.len(), 2);
        let (l, r) = cauchy_truncated(4, 4);
        assert!(l.agrees_with(&r));
    }

    #[test]
    fn times_parse() {
        let t: TimesVector = "[1, 1/2, 0]".parse().unwrap();
        assert_eq!(t, tv(&[(1, 1), (1, 2), (0, 1)]));
        assert!("1,x".parse::<TimesVector>().is_err());
    }
}
