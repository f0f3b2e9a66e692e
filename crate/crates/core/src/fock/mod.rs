//! Charged free fermions on the Maya-diagram basis.
//!
//! `|lambda, n>` has particles at `lambda_i - i + n`, `i >= 1`. `psi_k` fills site `k`,
//! `psi*_k` empties it, each with sign `(-1)^{#particles above k}`. Moving one
//! particle picks up `(-1)^{#occupied sites strictly between}`.

mod operator;
mod suites;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::TauError;
use crate::partitions::Partition;
use crate::symfun::{Coeff, Rational};
use crate::weights::ContentFunction;
use num::{One, Zero};

pub use operator::{exp_action, schur_of_operators, Family, FockOperator, Sector};
pub use suites::{
    commutation_suite, heisenberg_suite, lemma1_check, lemma1_enumerate, matrix_element_suite,
    prop2_suite, prop3_suite, schur_state_suite, trace_h0, vacuum_tau, H0Diag, Lemma1Case,
    SuiteReport,
};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FockState {
    charge: i64,
    lambda: Partition,
}

impl FockState {
    pub fn new(lambda: Partition, charge: i64) -> Self {
        FockState { charge, lambda }
    }

    pub fn vacuum(charge: i64) -> Self {
        Self::new(Partition::empty(), charge)
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn charge(&self) -> i64 {
        self.charge
    }

    pub fn weight(&self) -> usize {
        self.lambda.weight()
    }

    /// Sites below this one are all occupied.
    pub fn floor(&self) -> i64 {
        self.charge - self.lambda.len() as i64
    }

    /// Occupied sites `>= lo` in decreasing order; needs `lo <= floor()`.
    pub fn particles_down_to(&self, lo: i64) -> Vec<i64> {
        let lo = lo.min(self.floor());
        (1..=(self.charge - lo))
            .map(|i| self.lambda.part(i as usize) as i64 - i + self.charge)
            .collect()
    }

    /// Inverse of [`particles_down_to`](Self::particles_down_to): `ps` decreasing, all `>= lo`.
    pub fn from_particles(ps: &[i64], lo: i64) -> Self {
        let c = lo + ps.len() as i64;
        let parts = ps
            .iter()
            .enumerate()
            .map(|(l, p)| (p + l as i64 + 1 - c) as usize)
            .collect();
        FockState::new(Partition::new(parts).expect("Maya positions decrease"), c)
    }

    pub fn occupied(&self, site: i64) -> bool {
        site < self.floor() || self.particles_down_to(self.floor()).contains(&site)
    }

    /// Moves the particle at `src` to `dst`: `Some((sign, state))` or `None` by exclusion.
    pub fn move_particle(&self, src: i64, dst: i64) -> Option<(i64, FockState)> {
        let lo = src.min(dst).min(self.floor());
        let mut ps = self.particles_down_to(lo);
        let at = ps.iter().position(|&p| p == src)?;
        if ps.contains(&dst) {
            return None;
        }
        let (a, b) = (src.min(dst), src.max(dst));
        let between = ps.iter().filter(|&&p| p > a && p < b).count();
        ps[at] = dst;
        ps.sort_unstable_by(|x, y| y.cmp(x));
        let sign = if between % 2 == 0 { 1 } else { -1 };
        Some((sign, FockState::from_particles(&ps, lo)))
    }

    /// `psi_k` (create) or `psi*_k` (annihilate) at site `k`.
    pub fn mode(&self, k: i64, create: bool) -> Option<(i64, FockState)> {
        let lo = k.min(self.floor());
        let mut ps = self.particles_down_to(lo);
        let present = ps.contains(&k);
        if present == create {
            return None;
        }
        let above = ps.iter().filter(|&&p| p > k).count();
        if create {
            ps.push(k);
            ps.sort_unstable_by(|x, y| y.cmp(x));
        } else {
            ps.retain(|&p| p != k);
        }
        let sign = if above % 2 == 0 { 1 } else { -1 };
        Some((sign, FockState::from_particles(&ps, lo)))
    }
}

impl fmt::Display for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{},{}>", self.lambda, self.charge)
    }
}

/// Bilinears that move one particle.
#[derive(Clone, Debug, PartialEq)]
pub enum Elementary {
    /// `H_m = sum psi_k psi*_{k+m}`: a particle goes down by `m` (up if `m < 0`).
    H(i64),
    /// `-A_m`: a particle goes up from `s` to `s+m` with weight `r(s+1)...r(s+m)`.
    NegA(usize, ContentFunction),
    /// `A~_m`: a particle goes down from `p+m` to `p` with weight `r~(p+1)...r~(p+m)`.
    ATilde(usize, ContentFunction),
}

fn run_weight(r: &ContentFunction, from: i64, len: usize) -> Result<Rational, TauError> {
    let mut acc = Rational::one();
    for k in from..from + len as i64 {
        acc *= r.eval(k)?;
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

impl Elementary {
    fn shift(&self) -> i64 {
        match self {
            Elementary::H(m) => -m,
            Elementary::NegA(m, _) => *m as i64,
            Elementary::ATilde(m, _) => -(*m as i64),
        }
    }

    /// Image of a basis state as `(state, coefficient)` pairs.
    pub fn act(&self, s: &FockState) -> Result<Vec<(FockState, Rational)>, TauError> {
        let up = self.shift();
        if up == 0 {
            return Err(TauError::Precondition("H_0 is not a particle move".into()));
        }
        let lo = s.floor() - up.abs();
        let mut out = Vec::new();
        for p in s.particles_down_to(lo) {
            let Some((sign, t)) = s.move_particle(p, p + up) else {
                continue;
            };
            let w = match self {
                Elementary::H(_) => Rational::one(),
                Elementary::NegA(m, r) => run_weight(r, p + 1, *m)?,
                Elementary::ATilde(m, r) => run_weight(r, p + up + 1, *m)?,
            };
            if !w.is_zero() {
                out.push((t, w * Rational::from_integer(sign.into())));
            }
        }
        Ok(out)
    }
}

/// Finite combination of basis states, dropping states heavier than `cap`.
#[derive(Clone, Debug)]
pub struct FockVector<C: Coeff = Rational> {
    terms: BTreeMap<FockState, C>,
    proto: C,
    cap: usize,
    truncated: bool,
}

impl FockVector<Rational> {
    pub fn new(cap: usize) -> Self {
        Self::zero_with(&Rational::zero(), cap)
    }

    pub fn basis(state: FockState, cap: usize) -> Self {
        Self::basis_with(state, Rational::one(), cap)
    }

    pub fn vacuum(n: i64, cap: usize) -> Self {
        Self::basis(FockState::vacuum(n), cap)
    }
}

impl<C: Coeff> FockVector<C> {
    pub fn zero_with(proto: &C, cap: usize) -> Self {
        FockVector {
            terms: BTreeMap::new(),
            proto: proto.zero_like(),
            cap,
            truncated: false,
        }
    }

    pub fn basis_with(state: FockState, c: C, cap: usize) -> Self {
        let mut v = Self::zero_with(&c, cap);
        v.insert(state, c);
        v
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Whether some component was dropped for exceeding the cap.
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn terms(&self) -> &BTreeMap<FockState, C> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn insert(&mut self, s: FockState, c: C) {
        if c.vanishes() {
            return;
        }
        if s.weight() > self.cap {
            self.truncated = true;
            return;
        }
        match self.terms.get_mut(&s) {
            Some(v) => {
                v.add_assign(&c);
                if v.vanishes() {
                    self.terms.remove(&s);
                }
            }
            None => {
                self.terms.insert(s, c);
            }
        }
    }

    pub fn component(&self, s: &FockState) -> C {
        self.terms.get(s).cloned().unwrap_or_else(|| self.proto.clone())
    }

    fn empty_like(&self) -> Self {
        let mut v = Self::zero_with(&self.proto, self.cap);
        v.truncated = self.truncated;
        v
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut v = self.clone();
        v.truncated |= other.truncated;
        for (s, c) in &other.terms {
            v.insert(s.clone(), c.clone());
        }
        v
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let mut v = self.empty_like();
        for (s, c) in &self.terms {
            v.insert(s.clone(), c.scale(k));
        }
        v
    }

    /// Multiplies every component by a ring element.
    pub fn times(&self, k: &C) -> Self {
        let mut v = self.empty_like();
        for (s, c) in &self.terms {
            v.insert(s.clone(), c.mul(k));
        }
        v
    }

    pub fn apply(&self, op: &Elementary) -> Result<Self, TauError> {
        let mut v = self.empty_like();
        for (s, c) in &self.terms {
            for (t, w) in op.act(s)? {
                v.insert(t, c.scale(&w));
            }
        }
        Ok(v)
    }

    /// `psi_k` (`create`) or `psi*_k`; sites far outside the cap window are an error.
    pub fn apply_mode(&self, k: i64, create: bool) -> Result<Self, TauError> {
        let mut v = self.empty_like();
        for (s, c) in &self.terms {
            let (lo, hi) = (s.charge() - self.cap as i64 - 1, s.charge() + self.cap as i64);
            if k < lo || k > hi {
                return Err(TauError::WindowOverflow { site: k, lo, hi });
            }
            if let Some((sign, t)) = s.mode(k, create) {
                v.insert(t, c.scale(&Rational::from_integer(sign.into())));
            }
        }
        Ok(v)
    }

    /// Orthonormal pairing `<self|other>`.
    pub fn pair(&self, other: &Self) -> C {
        let mut acc = self.proto.clone();
        for (s, c) in &self.terms {
            if let Some(d) = other.terms.get(s) {
                acc.add_assign(&c.mul(d));
            }
        }
        acc
    }
}

impl<C: Coeff + PartialEq> PartialEq for FockVector<C> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfun::int;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn maya_roundtrip() {
        for n in -2..3 {
            for lambda in crate::partitions::enumerate(6, None, None) {
                let s = FockState::new(lambda, n);
                let lo = s.floor() - 3;
                assert_eq!(FockState::from_particles(&s.particles_down_to(lo), lo), s);
            }
        }
    }

    #[test]
    fn h_minus_one_on_vacuum() {
        let v = FockVector::vacuum(0, 6).apply(&Elementary::H(-1)).unwrap();
        assert_eq!(v, FockVector::basis(FockState::new(p(&[1]), 0), 6));
        for m in 1..4 {
            assert!(FockVector::vacuum(2, 6).apply(&Elementary::H(m)).unwrap().is_zero());
        }
    }

    #[test]
    fn neg_a_on_vacuum() {
        let r = ContentFunction::shifted_linear(int(5));
        let v = FockVector::vacuum(0, 6).apply(&Elementary::NegA(1, r)).unwrap();
        assert_eq!(v, FockVector::basis(FockState::new(p(&[1]), 0), 6).scale(&int(5)));
    }

    #[test]
    fn pairing() {
        let a = FockVector::basis(FockState::new(p(&[2, 1]), 0), 6);
        assert_eq!(a.pair(&a), int(1));
        let b = FockVector::basis(FockState::new(p(&[2]), 0), 6);
        let c = FockVector::basis(FockState::new(p(&[1, 1]), 0), 6);
        assert_eq!(b.pair(&c), int(0));
        let d = FockVector::basis(FockState::new(p(&[2, 1]), 1), 6);
        assert_eq!(a.pair(&d), int(0));
    }

    #[test]
    fn modes_build_charged_vacua() {
        let mut v = FockVector::vacuum(0, 6);
        for k in 0..3 {
            v = v.apply_mode(k, true).unwrap();
        }
        assert_eq!(v, FockVector::vacuum(3, 6));
        assert!(FockVector::vacuum(0, 4).apply_mode(40, true).is_err());
        assert!(FockVector::vacuum(0, 4).apply_mode(-1, true).unwrap().is_zero());
    }

    #[test]
    fn truncation_is_flagged() {
        let v = FockVector::basis(FockState::new(p(&[2]), 0), 2).apply(&Elementary::H(-1)).unwrap();
        assert!(v.is_zero() && v.truncated());
    }
}
