//! Operators as sparse matrices on one charge sector, operator families and
//! exponentials of their linear combinations.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::{One, Zero};

use super::{Elementary, FockState, FockVector};
use crate::error::TauError;
use crate::partitions::{enumerate, Partition};
use crate::symfun::{rat, schur_generic, Coeff, Rational};
use crate::weights::ContentFunction;

/// Basis `|lambda, n>`, `|lambda| <= cap`, of one charge.
#[derive(Debug, PartialEq, Eq)]
pub struct Sector {
    pub charge: i64,
    pub cap: usize,
    pub basis: Vec<FockState>,
}

impl Sector {
    pub fn new(charge: i64, cap: usize) -> Arc<Self> {
        Arc::new(Sector {
            charge,
            cap,
            basis: enumerate(cap, None, None)
                .map(|l| FockState::new(l, charge))
                .collect(),
        })
    }
}

type Column = BTreeMap<FockState, Rational>;

/// Matrix of a charge-preserving operator on a [`Sector`]; images heavier than the
/// cap are dropped.
#[derive(Clone, Debug)]
pub struct FockOperator {
    sector: Arc<Sector>,
    cols: BTreeMap<FockState, Column>,
}

fn add_into(col: &mut Column, s: &FockState, c: Rational) {
    if c.is_zero() {
        return;
    }
    let e = col.entry(s.clone()).or_insert_with(Rational::zero);
    *e += c;
    if e.is_zero() {
        col.remove(s);
    }
}

impl FockOperator {
    pub fn zero(sector: &Arc<Sector>) -> Self {
        FockOperator {
            sector: sector.clone(),
            cols: BTreeMap::new(),
        }
    }

    pub fn identity(sector: &Arc<Sector>) -> Self {
        let mut op = Self::zero(sector);
        for s in &sector.basis {
            op.cols.insert(s.clone(), BTreeMap::from([(s.clone(), Rational::one())]));
        }
        op
    }

    pub fn elementary(sector: &Arc<Sector>, e: &Elementary) -> Result<Self, TauError> {
        let mut op = Self::zero(sector);
        for s in &sector.basis {
            let mut col = Column::new();
            for (t, w) in e.act(s)? {
                if t.weight() <= sector.cap {
                    add_into(&mut col, &t, w);
                }
            }
            if !col.is_empty() {
                op.cols.insert(s.clone(), col);
            }
        }
        Ok(op)
    }

    /// Diagonal operator with the given eigenvalue function.
    pub fn diagonal(
        sector: &Arc<Sector>,
        f: impl Fn(&FockState) -> Result<Rational, TauError>,
    ) -> Result<Self, TauError> {
        let mut op = Self::zero(sector);
        for s in &sector.basis {
            let v = f(s)?;
            if !v.is_zero() {
                op.cols.insert(s.clone(), BTreeMap::from([(s.clone(), v)]));
            }
        }
        Ok(op)
    }

    pub fn sector(&self) -> &Arc<Sector> {
        &self.sector
    }

    /// `<bra| op |ket>`.
    pub fn entry(&self, bra: &FockState, ket: &FockState) -> Rational {
        self.cols
            .get(ket)
            .and_then(|c| c.get(bra))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn column(&self, ket: &FockState) -> FockVector {
        let mut v = FockVector::new(self.sector.cap);
        if let Some(c) = self.cols.get(ket) {
            for (s, x) in c {
                v.insert(s.clone(), x.clone());
            }
        }
        v
    }

    pub fn apply(&self, v: &FockVector) -> FockVector {
        let mut out = FockVector::new(self.sector.cap);
        for (s, c) in v.terms() {
            if let Some(col) = self.cols.get(s) {
                for (t, x) in col {
                    out.insert(t.clone(), c * x);
                }
            }
        }
        out
    }

    fn combine(&self, other: &Self, k: &Rational) -> Self {
        let mut out = self.clone();
        for (s, col) in &other.cols {
            let dst = out.cols.entry(s.clone()).or_default();
            for (t, x) in col {
                add_into(dst, t, x * k);
            }
            if dst.is_empty() {
                out.cols.remove(s);
            }
        }
        out
    }
}

impl Coeff for FockOperator {
    fn zero_like(&self) -> Self {
        Self::zero(&self.sector)
    }
    fn one_like(&self) -> Self {
        Self::identity(&self.sector)
    }
    fn vanishes(&self) -> bool {
        self.cols.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        self.combine(other, &Rational::one())
    }
    fn sub(&self, other: &Self) -> Self {
        self.combine(other, &-Rational::one())
    }
    /// Composition `self . other`.
    fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.sector);
        for (s, col) in &other.cols {
            let mut acc = Column::new();
            for (u, x) in col {
                if let Some(c2) = self.cols.get(u) {
                    for (t, y) in c2 {
                        add_into(&mut acc, t, x * y);
                    }
                }
            }
            if !acc.is_empty() {
                out.cols.insert(s.clone(), acc);
            }
        }
        out
    }
    fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }
    fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(&self.sector);
        if c.is_zero() {
            return out;
        }
        for (s, col) in &self.cols {
            out.cols
                .insert(s.clone(), col.iter().map(|(t, x)| (t.clone(), x * c)).collect());
        }
        out
    }
}

/// Operator vectors whose Schur functions act on the Fock space.
#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    /// `(H_1, H_2/2, ...)`.
    H,
    /// `(H_{-1}, H_{-2}/2, ...)`.
    HStar,
    /// `(-A_1, -A_2/2, ...)`.
    NegA(ContentFunction),
    /// `(A~_1, A~_2/2, ...)`.
    ATilde(ContentFunction),
}

impl Family {
    /// `m` times the `m`-th component.
    pub fn raw(&self, m: usize) -> Elementary {
        match self {
            Family::H => Elementary::H(m as i64),
            Family::HStar => Elementary::H(-(m as i64)),
            Family::NegA(r) => Elementary::NegA(m, r.clone()),
            Family::ATilde(r) => Elementary::ATilde(m, r.clone()),
        }
    }

    pub fn components(&self, sector: &Arc<Sector>, k: usize) -> Result<Vec<FockOperator>, TauError> {
        (1..=k)
            .map(|m| Ok(FockOperator::elementary(sector, &self.raw(m))?.scale(&rat(1, m as i64))))
            .collect()
    }
}

/// `s_lambda(X)` by the Jacobi-Trudi determinant in the commuting components of `X`.
pub fn schur_of_operators(
    lambda: &Partition,
    family: &Family,
    sector: &Arc<Sector>,
) -> Result<FockOperator, TauError> {
    let comps = family.components(sector, lambda.weight())?;
    Ok(schur_generic(lambda, &comps, &FockOperator::zero(sector)))
}

/// `exp(sum_m t_m X_m^raw) v`, with `X_m^raw` the `m`-th raw operator of the family.
pub fn exp_action<C: Coeff>(
    family: &Family,
    t: &[C],
    v: &FockVector<C>,
) -> Result<FockVector<C>, TauError> {
    let step = |w: &FockVector<C>| -> Result<FockVector<C>, TauError> {
        let mut acc = w.empty_like();
        for (m, tm) in t.iter().enumerate() {
            if tm.vanishes() {
                continue;
            }
            acc = acc.add(&w.apply(&family.raw(m + 1))?.times(tm));
        }
        Ok(acc)
    };
    let mut total = v.clone();
    let mut term = v.clone();
    for k in 1.. {
        term = step(&term)?.scale(&rat(1, k));
        if term.is_zero() {
            break;
        }
        total = total.add(&term);
    }
    Ok(total)
}
