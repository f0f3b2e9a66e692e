//! Sparse truncated multivariate series with exact rational coefficients.
//!
//! Variables live in a [`VarSpace`]. Each variable has a positive weight and
//! belongs to a group; a series keeps one degree cap per group and never stores
//! a monomial whose weighted degree in some group exceeds that group's cap.
//! With a single group this is the usual truncation by weighted total degree;
//! two groups give the bidegree truncation used for `t (x) t*` series.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::{One, Signed, Zero};

use super::ring::Coeff;
use super::Rational;
use crate::error::TauError;

pub type Monomial = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarSpace {
    names: Vec<String>,
    weights: Vec<u32>,
    groups: Vec<usize>,
    ngroups: usize,
}

impl VarSpace {
    /// `vars` lists `(name, weight, group)`; groups are numbered from 0.
    pub fn new(vars: Vec<(String, u32, usize)>) -> Arc<Self> {
        let ngroups = vars.iter().map(|v| v.2 + 1).max().unwrap_or(1);
        let (mut names, mut weights, mut groups) = (Vec::new(), Vec::new(), Vec::new());
        for (n, w, g) in vars {
            assert!(w > 0, "variable weights must be positive");
            names.push(n);
            weights.push(w);
            groups.push(g);
        }
        Arc::new(VarSpace {
            names,
            weights,
            groups,
            ngroups,
        })
    }

    /// A space with no variables; series in it are plain rationals.
    pub fn scalar() -> Arc<Self> {
        Self::new(Vec::new())
    }

    /// Higher times `t_1..t_k` (weight m) in group 0.
    pub fn times(prefix: &str, k: usize) -> Arc<Self> {
        Self::new((1..=k).map(|m| (format!("{prefix}{m}"), m as u32, 0)).collect())
    }

    /// Two sets of times, `t_1..t_k` in group 0 and `s_1..s_k` in group 1.
    pub fn bitimes(k: usize) -> Arc<Self> {
        let mut v: Vec<_> = (1..=k).map(|m| (format!("t{m}"), m as u32, 0)).collect();
        v.extend((1..=k).map(|m| (format!("s{m}"), m as u32, 1)));
        Self::new(v)
    }

    /// Eigenvalue variables `x_1..x_n` of weight 1 in group 0.
    pub fn eigen(prefix: &str, n: usize) -> Arc<Self> {
        Self::new((1..=n).map(|i| (format!("{prefix}{i}"), 1, 0)).collect())
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn ngroups(&self) -> usize {
        self.ngroups
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn weight(&self, v: usize) -> u32 {
        self.weights[v]
    }

    pub fn group(&self, v: usize) -> usize {
        self.groups[v]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Variables of a group, in declaration order.
    pub fn group_vars(&self, g: usize) -> Vec<usize> {
        (0..self.nvars()).filter(|&v| self.groups[v] == g).collect()
    }

    pub fn degrees(&self, m: &[u32]) -> Vec<u32> {
        let mut d = vec![0; self.ngroups];
        for (v, &e) in m.iter().enumerate() {
            d[self.groups[v]] += e * self.weights[v];
        }
        d
    }
}

#[derive(Clone, Debug)]
pub struct PolySeries {
    space: Arc<VarSpace>,
    caps: Vec<u32>,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for PolySeries {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.caps == other.caps && self.terms == other.terms
    }
}

impl PolySeries {
    pub fn zero(space: &Arc<VarSpace>, caps: &[u32]) -> Self {
        assert_eq!(caps.len(), space.ngroups(), "one cap per group");
        PolySeries {
            space: space.clone(),
            caps: caps.to_vec(),
            terms: BTreeMap::new(),
        }
    }

    /// Same cap for every group.
    pub fn zero_uniform(space: &Arc<VarSpace>, cap: u32) -> Self {
        Self::zero(space, &vec![cap; space.ngroups()])
    }

    pub fn constant(space: &Arc<VarSpace>, caps: &[u32], c: Rational) -> Self {
        let mut s = Self::zero(space, caps);
        if !c.is_zero() {
            s.terms.insert(vec![0; space.nvars()], c);
        }
        s
    }

    pub fn var(space: &Arc<VarSpace>, caps: &[u32], v: usize) -> Self {
        let mut m = vec![0; space.nvars()];
        m[v] = 1;
        Self::monomial(space, caps, m, Rational::one())
    }

    pub fn monomial(space: &Arc<VarSpace>, caps: &[u32], m: Monomial, c: Rational) -> Self {
        let mut s = Self::zero(space, caps);
        s.insert(m, c);
        s
    }

    /// Builds a series from explicit terms; terms beyond the caps are dropped.
    pub fn from_terms(
        space: &Arc<VarSpace>,
        caps: &[u32],
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Self {
        let mut s = Self::zero(space, caps);
        for (m, c) in terms {
            s.insert(m, c);
        }
        s
    }

    pub fn space(&self) -> &Arc<VarSpace> {
        &self.space
    }

    pub fn caps(&self) -> &[u32] {
        &self.caps
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &[u32]) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.space.nvars()])
    }

    fn fits(&self, m: &[u32]) -> bool {
        self.space
            .degrees(m)
            .iter()
            .zip(&self.caps)
            .all(|(d, c)| d <= c)
    }

    /// Adds `c * m`, ignoring monomials beyond the caps.
    pub fn insert(&mut self, m: Monomial, c: Rational) {
        assert_eq!(m.len(), self.space.nvars());
        if c.is_zero() || !self.fits(&m) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn min_caps(&self, other: &Self) -> Vec<u32> {
        assert!(
            Arc::ptr_eq(&self.space, &other.space) || self.space == other.space,
            "series live in different variable spaces"
        );
        self.caps
            .iter()
            .zip(&other.caps)
            .map(|(a, b)| *a.min(b))
            .collect()
    }

    /// Drops everything beyond `caps` (which must not exceed the current caps).
    pub fn truncate(&self, caps: &[u32]) -> Self {
        let caps: Vec<u32> = caps.iter().zip(&self.caps).map(|(a, b)| *a.min(b)).collect();
        let mut s = Self::zero(&self.space, &caps);
        for (m, c) in &self.terms {
            s.insert(m.clone(), c.clone());
        }
        s
    }

    pub fn add(&self, other: &Self) -> Self {
        let caps = self.min_caps(other);
        let mut s = self.truncate(&caps);
        for (m, c) in &other.terms {
            s.insert(m.clone(), c.clone());
        }
        s
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut s = self.clone();
        for c in s.terms.values_mut() {
            *c = -c.clone();
        }
        s
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero(&self.space, &self.caps);
        }
        let mut s = self.clone();
        for c in s.terms.values_mut() {
            *c *= k;
        }
        s
    }

    pub fn mul(&self, other: &Self) -> Self {
        let caps = self.min_caps(other);
        let mut out = Self::zero(&self.space, &caps);
        let right: Vec<(&Monomial, &Rational, Vec<u32>)> = other
            .terms
            .iter()
            .map(|(m, c)| (m, c, self.space.degrees(m)))
            .collect();
        for (m1, c1) in &self.terms {
            let d1 = self.space.degrees(m1);
            if d1.iter().zip(&caps).any(|(d, c)| d > c) {
                continue;
            }
            for (m2, c2, d2) in &right {
                if d1
                    .iter()
                    .zip(d2.iter())
                    .zip(&caps)
                    .any(|((a, b), c)| a + b > *c)
                {
                    continue;
                }
                let m: Monomial = m1.iter().zip(m2.iter()).map(|(a, b)| a + b).collect();
                out.insert(m, c1 * *c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(&self.space, &self.caps, Rational::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `exp(self)`; the constant term must vanish.
    pub fn exp(&self) -> Result<Self, TauError> {
        if !self.constant_term().is_zero() {
            return Err(TauError::Precondition("exp needs a zero constant term".into()));
        }
        let mut total = Self::constant(&self.space, &self.caps, Rational::one());
        let mut term = total.clone();
        let mut k = 1i64;
        loop {
            term = term.mul(self).scale(&Rational::new(1.into(), k.into()));
            if term.is_empty() {
                break;
            }
            total = total.add(&term);
            k += 1;
        }
        Ok(total)
    }

    /// `self^alpha` through the binomial series; the constant term must be 1.
    pub fn powr(&self, alpha: &Rational) -> Result<Self, TauError> {
        if self.constant_term() != Rational::one() {
            return Err(TauError::Precondition("powr needs constant term 1".into()));
        }
        let one = Self::constant(&self.space, &self.caps, Rational::one());
        let g = self.sub(&one);
        let mut total = one.clone();
        let mut term = one;
        let mut binom = Rational::one();
        let mut k = 0i64;
        loop {
            binom = binom * (alpha - Rational::from_integer(k.into()))
                / Rational::from_integer((k + 1).into());
            term = term.mul(&g);
            if term.is_empty() {
                break;
            }
            total = total.add(&term.scale(&binom));
            k += 1;
        }
        Ok(total)
    }

    /// Partial derivative in variable `v`; the cap of its group drops by its weight.
    pub fn derivative(&self, v: usize) -> Self {
        let g = self.space.group(v);
        let mut caps = self.caps.clone();
        caps[g] = caps[g].saturating_sub(self.space.weight(v));
        let mut s = Self::zero(&self.space, &caps);
        for (m, c) in &self.terms {
            if m[v] > 0 {
                let mut m2 = m.clone();
                m2[v] -= 1;
                s.insert(m2, c * Rational::from_integer(m[v].into()));
            }
        }
        s
    }

    /// Exact quotient by `x_i - x_j`, for two variables of equal weight in one group.
    pub fn div_difference(&self, i: usize, j: usize) -> Result<Self, TauError> {
        let sp = &self.space;
        if sp.group(i) != sp.group(j) || sp.weight(i) != sp.weight(j) || i == j {
            return Err(TauError::Precondition(
                "divisor variables must share group and weight".into(),
            ));
        }
        let g = sp.group(i);
        let mut caps = self.caps.clone();
        caps[g] = caps[g].saturating_sub(sp.weight(i));
        let mut rem = self.terms.clone();
        let mut quot = Self::zero(sp, &caps);
        // eliminate the largest power of x_i first; each step moves one factor x_i to x_j
        loop {
            let pick = rem
                .iter()
                .filter(|(m, _)| m[i] > 0)
                .max_by(|a, b| a.0[i].cmp(&b.0[i]).then_with(|| b.0.cmp(a.0)))
                .map(|(m, c)| (m.clone(), c.clone()));
            let Some((m, c)) = pick else { break };
            let mut q = m.clone();
            q[i] -= 1;
            rem.remove(&m);
            let mut shifted = q.clone();
            shifted[j] += 1;
            let e = rem.entry(shifted).or_insert_with(Rational::zero);
            *e += &c;
            if e.is_zero() {
                let mut key = q.clone();
                key[j] += 1;
                rem.remove(&key);
            }
            quot.insert(q, c);
        }
        if let Some((m, _)) = rem.iter().next() {
            return Err(TauError::NotDivisible(format!(
                "remainder term {} by {}-{}",
                fmt_monomial(sp, m),
                sp.name(i),
                sp.name(j)
            )));
        }
        Ok(quot)
    }

    /// Substitutes `x_v -> f_v * x_v`.
    pub fn rescale_vars(&self, factors: &[Rational]) -> Self {
        let mut s = Self::zero(&self.space, &self.caps);
        for (m, c) in &self.terms {
            let mut k = c.clone();
            for (v, &e) in m.iter().enumerate() {
                if e > 0 {
                    k *= num::pow(factors[v].clone(), e as usize);
                }
            }
            s.insert(m.clone(), k);
        }
        s
    }

    /// Renames variables by `perm` (variable `v` becomes `perm[v]`) and permutes
    /// group caps by `group_perm`.
    pub fn permute_vars(&self, perm: &[usize], group_perm: &[usize]) -> Self {
        let mut caps = vec![0; self.caps.len()];
        for (g, &c) in self.caps.iter().enumerate() {
            caps[group_perm[g]] = c;
        }
        let mut s = Self::zero(&self.space, &caps);
        for (m, c) in &self.terms {
            let mut m2 = vec![0; m.len()];
            for (v, &e) in m.iter().enumerate() {
                m2[perm[v]] = e;
            }
            s.insert(m2, c.clone());
        }
        s
    }

    /// Value at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut k = c.clone();
            for (v, &e) in m.iter().enumerate() {
                if e > 0 {
                    k *= num::pow(point[v].clone(), e as usize);
                }
            }
            total += k;
        }
        total
    }

    /// Differences against `other` on the common truncation: `(monomial, self, other)`.
    pub fn diff_terms(&self, other: &Self) -> Vec<(Monomial, Rational, Rational)> {
        let caps = self.min_caps(other);
        let a = self.truncate(&caps);
        let b = other.truncate(&caps);
        let mut keys: Vec<&Monomial> = a.terms.keys().chain(b.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .filter_map(|m| {
                let (x, y) = (a.coeff(m), b.coeff(m));
                (x != y).then(|| (m.clone(), x, y))
            })
            .collect()
    }

    /// Whether the two series agree on their common truncation.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.diff_terms(other).is_empty()
    }

    /// JSON object `{"[e1,e2,...]": "num/den"}` with sorted keys.
    pub fn to_json(&self) -> serde_json::Value {
        let map: BTreeMap<String, serde_json::Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let key = format!(
                    "[{}]",
                    m.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
                );
                (key, serde_json::Value::String(c.to_string()))
            })
            .collect();
        serde_json::Value::Object(map.into_iter().collect())
    }

    pub fn monomial_name(&self, m: &[u32]) -> String {
        fmt_monomial(&self.space, m)
    }
}

fn fmt_monomial(sp: &VarSpace, m: &[u32]) -> String {
    let parts: Vec<String> = m
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(v, &e)| {
            if e == 1 {
                sp.name(v).to_string()
            } else {
                format!("{}^{}", sp.name(v), e)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for PolySeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        let mut by_degree: Vec<(&Monomial, &Rational)> = self.terms.iter().collect();
        by_degree.sort_by_key(|(m, _)| (self.space.degrees(m).iter().sum::<u32>(), (*m).clone()));
        for (m, c) in by_degree {
            let neg = c.is_negative();
            let a = c.abs();
            let mono = fmt_monomial(&self.space, m);
            let body = match (a.is_one(), mono.as_str()) {
                (_, "1") => a.to_string(),
                (true, _) => mono,
                (false, _) => format!("{a}*{mono}"),
            };
            match (first, neg) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl Coeff for PolySeries {
    fn zero_like(&self) -> Self {
        Self::zero(&self.space, &self.caps)
    }
    fn one_like(&self) -> Self {
        Self::constant(&self.space, &self.caps, Rational::one())
    }
    fn vanishes(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        PolySeries::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        PolySeries::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        PolySeries::mul(self, other)
    }
    fn neg(&self) -> Self {
        PolySeries::neg(self)
    }
    fn scale(&self, c: &Rational) -> Self {
        PolySeries::scale(self, c)
    }
    fn add_assign(&mut self, other: &Self) {
        if self.caps.iter().zip(&other.caps).all(|(a, b)| a <= b) {
            for (m, c) in &other.terms {
                self.insert(m.clone(), c.clone());
            }
        } else {
            *self = PolySeries::add(self, other);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn truncated_product_respects_group_caps() {
        let sp = VarSpace::bitimes(2);
        let t1 = PolySeries::var(&sp, &[2, 2], 0);
        let s1 = PolySeries::var(&sp, &[2, 2], 2);
        let p = t1.add(&s1).pow(3);
        // only t1^2 s1 and t1 s1^2 survive from (t1+s1)^3
        assert_eq!(p.len(), 2);
        assert_eq!(p.coeff(&[2, 0, 1, 0]), r(3, 1));
    }

    #[test]
    fn exp_and_powr() {
        let sp = VarSpace::times("t", 1);
        let x = PolySeries::var(&sp, &[5], 0);
        let e = x.exp().unwrap();
        assert_eq!(e.coeff(&[5]), r(1, 120));
        let one = PolySeries::constant(&sp, &[5], r(1, 1));
        let inv = one.sub(&x).powr(&r(-1, 1)).unwrap();
        for k in 0..=5 {
            assert_eq!(inv.coeff(&[k]), r(1, 1));
        }
        let sq = one.add(&x).powr(&r(1, 2)).unwrap();
        assert_eq!(sq.mul(&sq), one.add(&x));
    }

    #[test]
    fn difference_division() {
        let sp = VarSpace::eigen("x", 2);
        let caps = [4];
        let x = PolySeries::var(&sp, &caps, 0);
        let y = PolySeries::var(&sp, &caps, 1);
        let p = x.pow(3).sub(&y.pow(3));
        let q = p.div_difference(0, 1).unwrap();
        let expect = x.pow(2).add(&x.mul(&y)).add(&y.pow(2));
        assert!(q.agrees_with(&expect));
        assert!(x.div_difference(0, 1).is_err());
    }

    #[test]
    fn derivative_lowers_cap() {
        let sp = VarSpace::times("t", 2);
        let t2 = PolySeries::var(&sp, &[4], 1);
        let d = t2.pow(2).derivative(1);
        assert_eq!(d.caps(), &[2]);
        assert_eq!(d.coeff(&[0, 1]), r(2, 1));
    }

    #[test]
    fn json_keys_sorted() {
        let sp = VarSpace::times("t", 2);
        let s = PolySeries::var(&sp, &[3], 0)
            .add(&PolySeries::var(&sp, &[3], 1).scale(&r(1, 2)));
        assert_eq!(s.to_json().to_string(), r#"{"[0,1]":"1/2","[1,0]":"1"}"#);
    }
}
