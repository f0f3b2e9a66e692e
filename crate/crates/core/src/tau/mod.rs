//! Tau functions of hypergeometric type as truncated Schur series.
//!
//! `tau_r(n, t, t*) = sum_lambda r_lambda(n) s_lambda(t) s_lambda(t*)`. Each side is
//! either symbolic (kept as variables) or specialized to numbers.

mod checks;
mod det;
mod hyper;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::TauError;
use crate::partitions::{enumerate, Partition};
use crate::symfun::{
    h_sequence, parse_rational, schur, schur_from_eigenvalues, schur_from_h, symbolic_miwa,
    symbolic_vars, PolySeries, Rational, TimesVector, VarSpace,
};
use crate::weights::{hook_product, ContentFunction, WeightTable};

pub use checks::{
    baker_akhiezer, baker_akhiezer_dual, hirota_residual, symmetry_checks, SymmetryReport,
};
pub use det::{det_rep_derivatives, det_rep_one_side, det_rep_two_side, DetCheck};
pub use hyper::{
    hyper_pfs, hyper_q_one, hyper_q_two, hyper_two, ode_residual, ode_residual_content,
    q_difference_residual, two_set_r,
};

/// A specialization of one set of times.
#[derive(Clone, Debug, PartialEq)]
pub enum Side {
    /// Symbolic `t_1..t_K`.
    Formal(usize),
    /// Symbolic eigenvalues `x_1..x_N`; restricts to `l(lambda) <= N`.
    EigenFormal(usize),
    Times(TimesVector),
    /// Numeric eigenvalues; restricts to `l(lambda) <=` their number.
    Eigen(Vec<Rational>),
    /// `t(a) = (a, a/2, a/3, ...)`.
    TA(Rational),
    /// `(1, 0, 0, ...)`.
    Inf,
    /// `t_m = 1 / (m (1 - q^m))`.
    QGeom(Rational),
}

impl Side {
    pub fn is_symbolic(&self) -> bool {
        matches!(self, Side::Formal(_) | Side::EigenFormal(_))
    }

    pub fn length_cap(&self) -> Option<usize> {
        match self {
            Side::EigenFormal(n) => Some(*n),
            Side::Eigen(x) => Some(x.len()),
            _ => None,
        }
    }

    fn validate(&self) -> Result<(), TauError> {
        if let Side::QGeom(q) = self {
            if q.is_zero() || q.abs() >= Rational::one() {
                return Err(TauError::Precondition(format!("qgeom needs 0 < |q| < 1, got {q}")));
            }
        }
        Ok(())
    }

    /// `s_lambda` at this specialization, or `None` for symbolic sides.
    pub fn value(&self, lambda: &Partition) -> Option<Rational> {
        let d = lambda.weight();
        Some(match self {
            Side::Formal(_) | Side::EigenFormal(_) => return None,
            Side::Times(t) => schur(lambda, t),
            Side::Eigen(x) => schur_from_eigenvalues(lambda, x),
            Side::TA(a) => schur(lambda, &TimesVector::t_a(a, d)),
            Side::Inf => Rational::new(1.into(), hook_product(lambda)),
            Side::QGeom(q) => schur(lambda, &TimesVector::q_geometric(q, d)),
        })
    }

    fn vars(&self, group: usize) -> Vec<(String, u32, usize)> {
        let (tp, xp) = if group == 0 { ("t", "x") } else { ("s", "y") };
        match self {
            Side::Formal(k) => (1..=*k).map(|m| (format!("{tp}{m}"), m as u32, group)).collect(),
            Side::EigenFormal(n) => (1..=*n).map(|i| (format!("{xp}{i}"), 1, group)).collect(),
            _ => Vec::new(),
        }
    }

    /// Symbolic `h_0..h_d` on this side, living in `space`.
    fn symbolic_h(&self, space: &Arc<VarSpace>, caps: &[u32], group: usize, d: usize) -> Vec<PolySeries> {
        let proto = PolySeries::zero(space, caps);
        let vars = symbolic_vars(space, caps, group);
        match self {
            Side::Formal(_) => h_sequence(&vars, &proto, d),
            Side::EigenFormal(_) => h_sequence(&symbolic_miwa(&vars, &proto, d), &proto, d),
            _ => unreachable!("numeric side has no symbolic h"),
        }
    }
}

fn join(x: &[Rational]) -> String {
    x.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Formal(k) => write!(f, "t:{k}"),
            Side::EigenFormal(n) => write!(f, "x:{n}"),
            Side::Times(t) => write!(f, "times:{}", join(t.entries())),
            Side::Eigen(x) => write!(f, "eigs:{}", join(x)),
            Side::TA(a) => write!(f, "ta:{a}"),
            Side::Inf => write!(f, "inf"),
            Side::QGeom(q) => write!(f, "qgeom:{q}"),
        }
    }
}

fn parse_list(s: &str) -> Result<Vec<Rational>, TauError> {
    let s = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_rational).collect()
}

impl FromStr for Side {
    type Err = TauError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "inf" {
            return Ok(Side::Inf);
        }
        let (head, rest) = s
            .split_once(':')
            .ok_or_else(|| TauError::Parse(format!("bad specialization {s:?}")))?;
        let count = |v: &str| {
            v.trim()
                .parse::<usize>()
                .map_err(|_| TauError::Parse(format!("bad count in {s:?}")))
        };
        let side = match head.trim() {
            "t" => Side::Formal(count(rest)?),
            "x" => Side::EigenFormal(count(rest)?),
            "times" => Side::Times(TimesVector::new(parse_list(rest)?)),
            "eigs" => Side::Eigen(parse_list(rest)?),
            "ta" => Side::TA(parse_rational(rest)?),
            "qgeom" => Side::QGeom(parse_rational(rest)?),
            _ => return Err(TauError::Parse(format!("unknown specialization {head:?}"))),
        };
        side.validate()?;
        Ok(side)
    }
}

/// Parameters of one tau function.
#[derive(Clone, Debug, PartialEq)]
pub struct TauSpec {
    pub r: ContentFunction,
    pub n: i64,
    pub t: Side,
    pub tstar: Side,
    /// Extra `l(lambda) <= cap` not coming from a zero of `r`.
    pub length_cap: Option<usize>,
}

impl TauSpec {
    pub fn new(r: ContentFunction, n: i64, t: Side, tstar: Side) -> Self {
        TauSpec {
            r,
            n,
            t,
            tstar,
            length_cap: None,
        }
    }

    pub fn with_length_cap(mut self, cap: usize) -> Self {
        self.length_cap = Some(cap);
        self
    }

    pub fn effective_length_cap(&self) -> Option<usize> {
        [self.length_cap, self.t.length_cap(), self.tstar.length_cap()]
            .into_iter()
            .flatten()
            .min()
    }

    /// Variables of the symbolic sides: `t` side in group 0, `t*` side in group 1.
    pub fn space(&self) -> Arc<VarSpace> {
        let mut v = self.t.vars(0);
        v.extend(self.tstar.vars(1));
        VarSpace::new(v)
    }
}

impl fmt::Display for TauSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r={} n={} t={} tstar={}", self.r, self.n, self.t, self.tstar)?;
        if let Some(c) = self.length_cap {
            write!(f, " lmax={c}")?;
        }
        Ok(())
    }
}

/// Nonzero terms `lambda -> r_lambda(n) * (numeric side values)` for `|lambda| <= D`.
///
/// Symbolic sides contribute no factor; [`TauSeries::expand`] multiplies them in.
#[derive(Clone, Debug, PartialEq)]
pub struct TauSeries {
    spec: TauSpec,
    cutoff: usize,
    terms: Vec<(Partition, Rational)>,
}

pub fn tau_series(spec: &TauSpec, d: usize) -> Result<TauSeries, TauError> {
    spec.t.validate()?;
    spec.tstar.validate()?;
    let cap = spec.effective_length_cap();
    let weights = WeightTable::new(&spec.r, spec.n, d, cap)?;
    let lambdas: Vec<Partition> = enumerate(d, cap, None).collect();
    let terms: Vec<Option<(Partition, Rational)>> = lambdas
        .into_par_iter()
        .map(|lambda| {
            let mut c = weights.get(&lambda).cloned().unwrap_or_else(Rational::zero);
            for side in [&spec.t, &spec.tstar] {
                if c.is_zero() {
                    break;
                }
                if let Some(v) = side.value(&lambda) {
                    c *= v;
                }
            }
            (!c.is_zero()).then_some((lambda, c))
        })
        .collect();
    Ok(TauSeries {
        spec: spec.clone(),
        cutoff: d,
        terms: terms.into_iter().flatten().collect(),
    })
}

impl TauSeries {
    pub fn spec(&self) -> &TauSpec {
        &self.spec
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn terms(&self) -> &[(Partition, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, lambda: &Partition) -> Rational {
        self.terms
            .iter()
            .find(|(l, _)| l == lambda)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Sums of coefficients by weight `|lambda| = 0..=D`.
    pub fn graded(&self) -> Vec<Rational> {
        let mut g = vec![Rational::zero(); self.cutoff + 1];
        for (l, c) in &self.terms {
            g[l.weight()] += c;
        }
        g
    }

    /// Coefficients of the one-row partitions `(m)`, `m = 0..=D`.
    pub fn row_coefficients(&self) -> Vec<Rational> {
        (0..=self.cutoff)
            .map(|m| self.coefficient(&Partition::row(m)))
            .collect()
    }

    /// The series as a polynomial in the symbolic side variables, cap `D` per group.
    pub fn expand(&self) -> PolySeries {
        let space = self.spec.space();
        let caps = vec![self.cutoff as u32; space.ngroups()];
        let d = self.cutoff;
        let ht = self
            .spec
            .t
            .is_symbolic()
            .then(|| self.spec.t.symbolic_h(&space, &caps, 0, d));
        let hs = self
            .spec
            .tstar
            .is_symbolic()
            .then(|| self.spec.tstar.symbolic_h(&space, &caps, 1, d));
        let pieces: Vec<PolySeries> = self
            .terms
            .par_iter()
            .map(|(lambda, c)| {
                let mut p = PolySeries::constant(&space, &caps, c.clone());
                for h in [&ht, &hs].into_iter().flatten() {
                    p = p.mul(&schur_from_h(lambda, h));
                }
                p
            })
            .collect();
        let mut out = PolySeries::zero(&space, &caps);
        for p in &pieces {
            out = out.add(p);
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "spec": self.spec.to_string(),
            "deg": self.cutoff,
            "terms": self
                .terms
                .iter()
                .map(|(l, c)| serde_json::json!({"lambda": l.to_string(), "coeff": c.to_string()}))
                .collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfun::{int, rat};
    use crate::weights::content_product;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn side_roundtrip() {
        for s in ["t:4", "x:3", "eigs:1,2", "times:1,1/2", "ta:1/2", "inf", "qgeom:1/3"] {
            let side: Side = s.parse().unwrap();
            assert_eq!(side.to_string(), s);
        }
        assert!("qgeom:2".parse::<Side>().is_err());
        assert!("zz:1".parse::<Side>().is_err());
    }

    #[test]
    fn r_one_is_exponential() {
        let spec = TauSpec::new(ContentFunction::one(), 0, Side::Formal(4), Side::Formal(4));
        let got = tau_series(&spec, 4).unwrap().expand();
        let sp = spec.space();
        let caps = [4, 4];
        let t = symbolic_vars(&sp, &caps, 0);
        let s = symbolic_vars(&sp, &caps, 1);
        let mut arg = PolySeries::zero(&sp, &caps);
        for m in 0..4 {
            arg = arg.add(&t[m].mul(&s[m]).scale(&int(m as i64 + 1)));
        }
        assert!(got.agrees_with(&arg.exp().unwrap()));
    }

    #[test]
    fn zero_of_r_truncates_length() {
        // r(k) = k at n = 1 vanishes on content -1, so only one-row diagrams survive
        let spec = TauSpec::new(ContentFunction::linear(), 1, Side::Formal(6), Side::Formal(6));
        let s = tau_series(&spec, 6).unwrap();
        assert!(s.terms().iter().all(|(l, _)| l.len() <= 1));
        assert_eq!(s.len(), 7);
        for (l, c) in s.terms() {
            assert_eq!(c, &content_product(&ContentFunction::linear(), 1, l).unwrap());
        }
    }

    #[test]
    fn eigen_side_caps_length() {
        let spec = TauSpec::new(
            ContentFunction::one(),
            0,
            Side::Eigen(vec![int(1), int(2)]),
            Side::Inf,
        );
        let s = tau_series(&spec, 5).unwrap();
        assert!(s.terms().iter().all(|(l, _)| l.len() <= 2));
        // lambda = (1): s_(1)(1,2) / H = 3
        assert_eq!(s.coefficient(&p(&[1])), int(3));
        assert_eq!(s.coefficient(&Partition::empty()), int(1));
    }

    #[test]
    fn numeric_and_symbolic_agree() {
        let r = ContentFunction::shifted_linear(rat(1, 2));
        let x = vec![rat(1, 3), int(2)];
        let num = tau_series(&TauSpec::new(r.clone(), 1, Side::Eigen(x.clone()), Side::TA(int(3))), 5)
            .unwrap();
        let sym = tau_series(&TauSpec::new(r, 1, Side::EigenFormal(2), Side::TA(int(3))), 5)
            .unwrap()
            .expand();
        assert_eq!(num.graded().iter().sum::<Rational>(), sym.eval(&x));
    }
}
