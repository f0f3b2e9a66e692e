//! Integer partitions and skew shapes.
//!
//! Cells are indexed from 1: cell `(i, j)` sits in row `i`, column `j`.
//! The canonical order on partitions is graded by weight and then
//! reverse-lexicographic within each weight, so `(4) < (3,1) < (2,2)`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::TauError;

/// A weakly decreasing list of positive parts. The empty list is the zero partition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition, dropping trailing zeros. Fails if the parts increase anywhere.
    pub fn new(mut parts: Vec<usize>) -> Result<Self, TauError> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(TauError::InvalidPartition(format!("{parts:?}")));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Single row `(m)`.
    pub fn row(m: usize) -> Self {
        if m == 0 {
            Self::empty()
        } else {
            Partition { parts: vec![m] }
        }
    }

    /// Single column `(1^m)`.
    pub fn column(m: usize) -> Self {
        Partition { parts: vec![1; m] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part `i` counted from 1; zero past the end.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.part(1);
        let parts = (1..=cols)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count())
            .collect();
        Partition { parts }
    }

    /// Frobenius coordinates `(alphas | betas)` with `alpha_i = lambda_i - i`
    /// and `beta_i = lambda'_i - i` over the diagonal cells.
    pub fn frobenius(&self) -> (Vec<usize>, Vec<usize>) {
        let conj = self.conjugate();
        let r = (1..=self.len()).take_while(|&i| self.part(i) >= i).count();
        let alphas = (1..=r).map(|i| self.part(i) - i).collect();
        let betas = (1..=r).map(|i| conj.part(i) - i).collect();
        (alphas, betas)
    }

    pub fn from_frobenius(alphas: &[usize], betas: &[usize]) -> Result<Self, TauError> {
        let bad = || TauError::InvalidPartition(format!("frobenius {alphas:?} | {betas:?}"));
        if alphas.len() != betas.len()
            || alphas.windows(2).any(|w| w[0] <= w[1])
            || betas.windows(2).any(|w| w[0] <= w[1])
        {
            return Err(bad());
        }
        let r = alphas.len();
        let rows = if r == 0 { 0 } else { betas[0] + 1 };
        let mut parts = vec![0usize; rows];
        for (i, a) in alphas.iter().enumerate() {
            parts[i] = a + i + 1;
        }
        for (j, b) in betas.iter().enumerate() {
            // column j+1 has length b + j + 1; rows below the diagonal pick it up
            for row in parts.iter_mut().take(b + j + 1).skip(j + 1) {
                *row = (*row).max(j + 1);
            }
        }
        let p = Partition::new(parts).map_err(|_| bad())?;
        if p.frobenius() != (alphas.to_vec(), betas.to_vec()) {
            return Err(bad());
        }
        Ok(p)
    }

    /// All cells `(i, j)`, row by row.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (1..=p).map(move |j| (i + 1, j)))
    }

    /// Contents `j - i`, one per cell, in row-major order.
    pub fn contents(&self) -> Vec<i64> {
        self.cells().map(|(i, j)| j as i64 - i as i64).collect()
    }

    /// Hook lengths `lambda_i + lambda'_j - i - j + 1`, one per cell.
    pub fn hooks(&self) -> Vec<usize> {
        let conj = self.conjugate();
        self.cells()
            .map(|(i, j)| self.part(i) + conj.part(j) + 1 - i - j)
            .collect()
    }

    /// `n(lambda) = sum (i-1) lambda_i`.
    pub fn n_lambda(&self) -> usize {
        self.parts.iter().enumerate().map(|(i, p)| i * p).sum()
    }

    /// Multiplicities `m_i`, indexed by part size (entry 0 unused).
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.part(1) + 1];
        for &p in &self.parts {
            m[p] += 1;
        }
        m
    }

    /// Cell-wise containment `mu <= self`.
    pub fn contains(&self, mu: &Partition) -> bool {
        mu.len() <= self.len() && (1..=mu.len()).all(|i| mu.part(i) <= self.part(i))
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Partition {
    type Err = TauError;

    /// Parses `[3,3,1]`; brackets are optional and `[]` is the zero partition.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']').trim();
        if body.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = body
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| TauError::InvalidPartition(s.to_string()))?;
        Partition::new(parts)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = TauError;
    fn try_from(parts: Vec<usize>) -> Result<Self, TauError> {
        Partition::new(parts)
    }
}

/// Skew diagram `outer / inner`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewShape {
    outer: Partition,
    inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self, TauError> {
        if !outer.contains(&inner) {
            return Err(TauError::NotContained {
                outer: outer.to_string(),
                inner: inner.to_string(),
            });
        }
        Ok(SkewShape { outer, inner })
    }

    /// `lambda / 0`.
    pub fn whole(outer: Partition) -> Self {
        SkewShape {
            outer,
            inner: Partition::empty(),
        }
    }

    pub fn outer(&self) -> &Partition {
        &self.outer
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    pub fn weight(&self) -> usize {
        self.outer.weight() - self.inner.weight()
    }

    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.outer
            .cells()
            .filter(|&(i, j)| j > self.inner.part(i))
    }

    pub fn contents(&self) -> Vec<i64> {
        self.cells().map(|(i, j)| j as i64 - i as i64).collect()
    }
}

/// Partitions of exactly `n` with at most `max_len` parts, each at most `max_part`,
/// in reverse-lexicographic order.
pub fn partitions_of(n: usize, max_len: Option<usize>, max_part: Option<usize>) -> Vec<Partition> {
    fn rec(
        rest: usize,
        cap: usize,
        slots: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Partition>,
    ) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        if slots == 0 {
            return;
        }
        for p in (1..=cap.min(rest)).rev() {
            cur.push(p);
            rec(rest - p, p, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(
        n,
        max_part.unwrap_or(n),
        max_len.unwrap_or(n),
        &mut Vec::new(),
        &mut out,
    );
    out
}

/// Every partition with `|lambda| <= weight_max`, `l(lambda) <= length_max` and
/// `lambda_1 <= col_max`, each once, in canonical order.
pub fn enumerate(
    weight_max: usize,
    length_max: Option<usize>,
    col_max: Option<usize>,
) -> impl Iterator<Item = Partition> {
    (0..=weight_max).flat_map(move |n| partitions_of(n, length_max, col_max))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p(&[3, 3, 1]).conjugate(), p(&[3, 2, 2]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(p(&[5]).conjugate(), p(&[1, 1, 1, 1, 1]));
    }

    #[test]
    fn frobenius_examples() {
        assert_eq!(p(&[3, 3, 1]).frobenius(), (vec![2, 1], vec![2, 0]));
        // the printed (2,0|2,1) is the conjugate shape
        assert_eq!(p(&[3, 2, 2]).frobenius(), (vec![2, 0], vec![2, 1]));
        assert_eq!(Partition::empty().frobenius(), (vec![], vec![]));
        assert_eq!(p(&[4, 2, 2, 1]).frobenius(), (vec![3, 0], vec![3, 1]));
        assert_eq!(Partition::from_frobenius(&[2, 1], &[2, 0]).unwrap(), p(&[3, 3, 1]));
        assert!(Partition::from_frobenius(&[0, 1], &[1, 0]).is_err());
    }

    #[test]
    fn contents_and_hooks() {
        let mut c = p(&[3, 3, 1]).contents();
        c.sort();
        assert_eq!(c, vec![-2, -1, 0, 0, 1, 1, 2]);
        assert_eq!(p(&[1]).contents(), vec![0]);
        let mut c = p(&[2, 2]).contents();
        c.sort();
        assert_eq!(c, vec![-1, 0, 0, 1]);

        let mut h = p(&[2, 2]).hooks();
        h.sort();
        assert_eq!(h, vec![1, 2, 2, 3]);
        assert_eq!(p(&[1]).hooks(), vec![1]);
        let mut h = p(&[2, 1]).hooks();
        h.sort();
        assert_eq!(h, vec![1, 1, 3]);
    }

    #[test]
    fn enumerate_examples() {
        let all: Vec<String> = enumerate(4, None, None).map(|l| l.to_string()).collect();
        assert_eq!(
            all,
            vec![
                "[]", "[1]", "[2]", "[1,1]", "[3]", "[2,1]", "[1,1,1]", "[4]", "[3,1]", "[2,2]",
                "[2,1,1]", "[1,1,1,1]"
            ]
        );
        assert_eq!(enumerate(0, None, None).collect::<Vec<_>>(), vec![Partition::empty()]);
        let rows: Vec<_> = enumerate(3, Some(1), None).collect();
        assert_eq!(rows, vec![Partition::empty(), p(&[1]), p(&[2]), p(&[3])]);
        let cols: Vec<_> = enumerate(3, None, Some(1)).collect();
        assert_eq!(cols.len(), 4);
    }

    #[test]
    fn order_matches_enumeration() {
        let all: Vec<_> = enumerate(7, None, None).collect();
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
    }

    #[test]
    fn parse_roundtrip() {
        let l: Partition = "[3,3,1]".parse().unwrap();
        assert_eq!(l.to_string(), "[3,3,1]");
        assert_eq!("[]".parse::<Partition>().unwrap(), Partition::empty());
        assert!("[1,2]".parse::<Partition>().is_err());
        assert!("[a]".parse::<Partition>().is_err());
    }

    #[test]
    fn skew_shapes() {
        let s = SkewShape::new(p(&[2, 1]), p(&[1])).unwrap();
        let mut c = s.contents();
        c.sort();
        assert_eq!(c, vec![-1, 1]);
        assert!(SkewShape::new(p(&[1]), p(&[2])).is_err());
        assert_eq!(p(&[2, 2]).n_lambda(), 2);
    }
}
