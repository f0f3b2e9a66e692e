//! Content functions `r` and the weights built from them.
//!
//! `r_lambda(n) = prod_{(i,j) in lambda} r(n + j - i)`. Zeros of `r` are allowed and
//! simply kill terms; poles are errors.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use num::{BigInt, One, Signed, Zero};

use crate::error::TauError;
use crate::partitions::{enumerate, Partition, SkewShape};
use crate::symfun::{
    h_sequence, int, parse_rational, rpow, schur, schur_from_h, standard_product, symbolic_vars,
    PolySeries, Rational, TimesVector,
};

#[derive(Clone, Debug, PartialEq)]
pub enum ContentKind {
    /// `prod (k + a_i) / prod (k + b_j)`.
    Rational { a: Vec<Rational>, b: Vec<Rational> },
    /// `prod (1 - q^{a_i + k}) / prod (1 - q^{b_j + k})`.
    QRational {
        a: Vec<Rational>,
        b: Vec<Rational>,
        q: Rational,
    },
    /// `r(k) = k`.
    Linear,
    One,
    Table(BTreeMap<i64, Rational>),
    /// `prod f_i(k)^{e_i}`.
    Product(Vec<(ContentFunction, i32)>),
    /// `r'(k) = r(-k)`.
    Reflect(Box<ContentFunction>),
}

/// `r(k) = scale * base(k + shift)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ContentFunction {
    kind: ContentKind,
    shift: i64,
    scale: Rational,
}

impl ContentFunction {
    pub fn new(kind: ContentKind) -> Self {
        ContentFunction {
            kind,
            shift: 0,
            scale: Rational::one(),
        }
    }

    pub fn one() -> Self {
        Self::new(ContentKind::One)
    }

    pub fn linear() -> Self {
        Self::new(ContentKind::Linear)
    }

    pub fn rational(a: Vec<Rational>, b: Vec<Rational>) -> Self {
        Self::new(ContentKind::Rational { a, b })
    }

    /// `r(k) = k + a`.
    pub fn shifted_linear(a: Rational) -> Self {
        Self::rational(vec![a], vec![])
    }

    pub fn q_rational(a: Vec<Rational>, b: Vec<Rational>, q: Rational) -> Self {
        Self::new(ContentKind::QRational { a, b, q })
    }

    pub fn table(t: BTreeMap<i64, Rational>) -> Self {
        Self::new(ContentKind::Table(t))
    }

    pub fn product(factors: Vec<(ContentFunction, i32)>) -> Self {
        Self::new(ContentKind::Product(factors))
    }

    pub fn reflect(&self) -> Self {
        Self::new(ContentKind::Reflect(Box::new(self.clone())))
    }

    pub fn times(&self, other: &ContentFunction) -> Self {
        Self::product(vec![(self.clone(), 1), (other.clone(), 1)])
    }

    pub fn reciprocal(&self) -> Self {
        Self::product(vec![(self.clone(), -1)])
    }

    pub fn with_shift(mut self, s: i64) -> Self {
        self.shift += s;
        self
    }

    pub fn with_scale(mut self, c: Rational) -> Self {
        self.scale *= c;
        self
    }

    pub fn kind(&self) -> &ContentKind {
        &self.kind
    }

    pub fn eval(&self, k: i64) -> Result<Rational, TauError> {
        let base = self.eval_base(k + self.shift)?;
        Ok(base * &self.scale)
    }

    fn eval_base(&self, k: i64) -> Result<Rational, TauError> {
        let kr = int(k);
        match &self.kind {
            ContentKind::One => Ok(Rational::one()),
            ContentKind::Linear => Ok(kr),
            ContentKind::Rational { a, b } => {
                let num: Rational = a.iter().map(|x| &kr + x).product();
                let den: Rational = b.iter().map(|x| &kr + x).product();
                if den.is_zero() {
                    return Err(TauError::Pole { k, cell: None });
                }
                Ok(num / den)
            }
            ContentKind::QRational { a, b, q } => {
                let factor = |x: &Rational| -> Result<Rational, TauError> {
                    let e = x + &kr;
                    if !e.is_integer() {
                        return Err(TauError::NonIntegerQPower {
                            q: q.to_string(),
                            exponent: e.to_string(),
                        });
                    }
                    let e = e.to_integer();
                    let e: i64 = e.try_into().map_err(|_| TauError::Precondition("q exponent too large".into()))?;
                    Ok(Rational::one() - rpow(q, e))
                };
                let mut num = Rational::one();
                for x in a {
                    num *= factor(x)?;
                }
                let mut den = Rational::one();
                for x in b {
                    den *= factor(x)?;
                }
                if den.is_zero() {
                    return Err(TauError::Pole { k, cell: None });
                }
                Ok(num / den)
            }
            ContentKind::Table(t) => t.get(&k).cloned().ok_or_else(|| {
                TauError::Precondition(format!("table content function undefined at k = {k}"))
            }),
            ContentKind::Product(fs) => {
                let mut acc = Rational::one();
                for (f, e) in fs {
                    let v = f.eval(k)?;
                    if *e < 0 && v.is_zero() {
                        return Err(TauError::Pole { k, cell: None });
                    }
                    acc *= rpow(&v, *e as i64);
                }
                Ok(acc)
            }
            ContentKind::Reflect(f) => f.eval(-k),
        }
    }

    /// Points of `[lo, hi]` where `r` vanishes.
    pub fn zeros_on(&self, lo: i64, hi: i64) -> Result<Vec<i64>, TauError> {
        let mut z = Vec::new();
        for k in lo..=hi {
            if self.eval(k)?.is_zero() {
                z.push(k);
            }
        }
        Ok(z)
    }

    /// Points of `[lo, hi]` where `r` has a pole (or is otherwise undefined).
    pub fn poles_on(&self, lo: i64, hi: i64) -> Vec<i64> {
        (lo..=hi).filter(|&k| self.eval(k).is_err()).collect()
    }

    /// Memoized values on the window `[lo, hi]`.
    pub fn tabulate(&self, lo: i64, hi: i64) -> Result<BTreeMap<i64, Rational>, TauError> {
        (lo..=hi).map(|k| Ok((k, self.eval(k)?))).collect()
    }
}

impl fmt::Display for ContentFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.scale.is_one() {
            write!(f, "scale:{}:", self.scale)?;
        }
        if self.shift != 0 {
            write!(f, "shift:{}:", self.shift)?;
        }
        let list = |v: &[Rational]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match &self.kind {
            ContentKind::One => write!(f, "one"),
            ContentKind::Linear => write!(f, "linear"),
            ContentKind::Rational { a, b } => write!(f, "rational:a={};b={}", list(a), list(b)),
            ContentKind::QRational { a, b, q } => {
                write!(f, "qrational:a={};b={};q={}", list(a), list(b), q)
            }
            ContentKind::Table(t) => {
                let body: Vec<String> = t.iter().map(|(k, v)| format!("{k}:{v}")).collect();
                write!(f, "table:{{{}}}", body.join(","))
            }
            ContentKind::Product(fs) => {
                let body: Vec<String> = fs.iter().map(|(g, e)| format!("({g})^{e}")).collect();
                write!(f, "product[{}]", body.join("*"))
            }
            ContentKind::Reflect(g) => write!(f, "reflect({g})"),
        }
    }
}

impl FromStr for ContentFunction {
    type Err = TauError;

    /// `one`, `linear`, `rational:a=1/2,2;b=3`, `qrational:a=1;b=2;q=1/3`,
    /// `table:{-2:1,0:3}`, with optional prefixes `shift:n0:` and `scale:c:`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || TauError::Parse(format!("bad content function {s:?}"));
        if let Some(rest) = s.strip_prefix("shift:") {
            let (n, inner) = rest.split_once(':').ok_or_else(bad)?;
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            return Ok(inner.parse::<ContentFunction>()?.with_shift(n));
        }
        if let Some(rest) = s.strip_prefix("scale:") {
            let (c, inner) = rest.split_once(':').ok_or_else(bad)?;
            let c = parse_rational(c)?;
            return Ok(inner.parse::<ContentFunction>()?.with_scale(c));
        }
        let list = |v: &str| -> Result<Vec<Rational>, TauError> {
            let v = v.trim();
            if v.is_empty() {
                return Ok(Vec::new());
            }
            v.split(',').map(parse_rational).collect()
        };
        let fields = |body: &str| -> Result<BTreeMap<String, String>, TauError> {
            let mut m = BTreeMap::new();
            for kv in body.split(';').filter(|x| !x.trim().is_empty()) {
                let (k, v) = kv.split_once('=').ok_or_else(bad)?;
                let k = k.trim().to_string();
                if !["a", "b", "q"].contains(&k.as_str()) || m.contains_key(&k) {
                    return Err(bad());
                }
                m.insert(k, v.to_string());
            }
            Ok(m)
        };
        match s {
            "one" => return Ok(Self::one()),
            "linear" => return Ok(Self::linear()),
            _ => {}
        }
        if let Some(body) = s.strip_prefix("rational:") {
            let m = fields(body)?;
            if m.contains_key("q") {
                return Err(bad());
            }
            let a = list(m.get("a").map(String::as_str).unwrap_or(""))?;
            let b = list(m.get("b").map(String::as_str).unwrap_or(""))?;
            return Ok(Self::rational(a, b));
        }
        if let Some(body) = s.strip_prefix("qrational:") {
            let m = fields(body)?;
            let a = list(m.get("a").map(String::as_str).unwrap_or(""))?;
            let b = list(m.get("b").map(String::as_str).unwrap_or(""))?;
            let q = parse_rational(m.get("q").ok_or_else(bad)?)?;
            if q.is_zero() || q.abs() >= Rational::one() {
                return Err(TauError::Parse(format!("q must lie in (-1,1)\\{{0}}, got {q}")));
            }
            return Ok(Self::q_rational(a, b, q));
        }
        if let Some(body) = s.strip_prefix("table:") {
            let body = body.trim().trim_start_matches('{').trim_end_matches('}');
            let mut t = BTreeMap::new();
            for kv in body.split(',').filter(|x| !x.trim().is_empty()) {
                let (k, v) = kv.split_once(':').ok_or_else(bad)?;
                let k: i64 = k.trim().parse().map_err(|_| bad())?;
                t.insert(k, parse_rational(v)?);
            }
            return Ok(Self::table(t));
        }
        Err(bad())
    }
}

fn pole_at(e: TauError, cell: (usize, usize)) -> TauError {
    match e {
        TauError::Pole { k, .. } => TauError::Pole {
            k,
            cell: Some(cell),
        },
        other => other,
    }
}

fn product_over_cells(
    r: &ContentFunction,
    n: i64,
    cells: impl Iterator<Item = (usize, usize)>,
) -> Result<Rational, TauError> {
    let mut acc = Rational::one();
    let mut zero = false;
    for (i, j) in cells {
        let v = r
            .eval(n + j as i64 - i as i64)
            .map_err(|e| pole_at(e, (i, j)))?;
        if v.is_zero() {
            zero = true;
        } else {
            acc *= v;
        }
    }
    Ok(if zero { Rational::zero() } else { acc })
}

/// `r_lambda(n)`.
pub fn content_product(r: &ContentFunction, n: i64, lambda: &Partition) -> Result<Rational, TauError> {
    product_over_cells(r, n, lambda.cells())
}

/// `r_{lambda/mu}(n)`, the product over skew cells only.
pub fn skew_content_product(
    r: &ContentFunction,
    n: i64,
    shape: &SkewShape,
) -> Result<Rational, TauError> {
    product_over_cells(r, n, shape.cells())
}

pub fn hook_product(lambda: &Partition) -> BigInt {
    lambda.hooks().into_iter().map(BigInt::from).product()
}

/// `H_lambda(q) = prod (1 - q^{h})`.
pub fn hook_product_q(lambda: &Partition, q: &Rational) -> Rational {
    lambda
        .hooks()
        .into_iter()
        .map(|h| Rational::one() - num::pow(q.clone(), h))
        .product()
}

/// `(a)_lambda = prod_i (a - i + 1)_{lambda_i}`.
pub fn pochhammer_partition(a: &Rational, lambda: &Partition) -> Rational {
    let mut acc = Rational::one();
    for (i, &p) in lambda.parts().iter().enumerate() {
        let base = a - int(i as i64);
        for k in 0..p {
            acc *= &base + int(k as i64);
        }
    }
    acc
}

/// `(Q; q)_lambda = prod_i (Q q^{1-i}; q)_{lambda_i}` for `Q = q^a` given as a value.
pub fn q_pochhammer_partition(big_q: &Rational, q: &Rational, lambda: &Partition) -> Rational {
    let mut acc = Rational::one();
    for (i, &p) in lambda.parts().iter().enumerate() {
        let base = big_q * rpow(q, -(i as i64));
        for k in 0..p {
            acc *= Rational::one() - &base * num::pow(q.clone(), k);
        }
    }
    acc
}

/// Ordinary q-Pochhammer `(x; q)_m`.
pub fn q_pochhammer(x: &Rational, q: &Rational, m: usize) -> Rational {
    (0..m)
        .map(|k| Rational::one() - x * num::pow(q.clone(), k))
        .product()
}

/// Rising factorial `(a)_m`.
pub fn pochhammer(a: &Rational, m: usize) -> Rational {
    (0..m).map(|k| a + int(k as i64)).product()
}

/// `c_n = prod_{k=0}^{n-1} r(k)^{k-n}`.
pub fn c_constant(r: &ContentFunction, n: usize) -> Result<Rational, TauError> {
    let mut acc = Rational::one();
    for k in 0..n as i64 {
        let v = r.eval(k)?;
        if v.is_zero() {
            return Err(TauError::ZeroOfR { k });
        }
        acc *= rpow(&v, k - n as i64);
    }
    Ok(acc)
}

/// Prefactor of the two-sided determinant: `prod_{j=1}^{N-1} r(M-N+j)^{j-N}`.
///
/// With `M = N = n` and `r(0) = 0` this is also the prefactor of the derivative
/// determinant.
pub fn det_prefactor(r: &ContentFunction, m: i64, n: usize) -> Result<Rational, TauError> {
    let mut acc = Rational::one();
    for j in 1..n as i64 {
        let k = m - n as i64 + j;
        let v = r.eval(k)?;
        if v.is_zero() {
            return Err(TauError::ZeroOfR { k });
        }
        acc *= rpow(&v, j - n as i64);
    }
    Ok(acc)
}

/// One factor of a Schur-evaluation decomposition of `r_lambda(n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SchurFactor {
    pub label: String,
    pub exponent: i32,
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    pub factors: Vec<SchurFactor>,
    pub product: Rational,
    pub direct: Rational,
}

impl Decomposition {
    pub fn holds(&self) -> bool {
        self.product == self.direct
    }
}

/// Writes `r_lambda(n)` as a product of Schur functions at `t(a)`-type points
/// (and their q-analogues), and the direct content product next to it.
pub fn rational_r_decomposition(
    r: &ContentFunction,
    n: i64,
    lambda: &Partition,
) -> Result<Decomposition, TauError> {
    if r.shift != 0 || !r.scale.is_one() {
        return Err(TauError::Precondition("decomposition needs an unwrapped rational kind".into()));
    }
    let d = lambda.weight().max(1);
    let mut factors = Vec::new();
    match &r.kind {
        ContentKind::Rational { a, b } => {
            let inf = schur(lambda, &TimesVector::t_inf(d));
            let p = a.len() as i32;
            let s = b.len() as i32;
            if s != p {
                factors.push(SchurFactor {
                    label: "s(t_inf)".into(),
                    exponent: s - p,
                    value: inf,
                });
            }
            for (list, e) in [(a, 1), (b, -1)] {
                for x in list {
                    let arg = x + int(n);
                    factors.push(SchurFactor {
                        label: format!("s(t({arg}))"),
                        exponent: e,
                        value: schur(lambda, &TimesVector::t_a(&arg, d)),
                    });
                }
            }
        }
        ContentKind::QRational { a, b, q } => {
            let inf = schur(lambda, &TimesVector::q_geometric(q, d));
            let p = a.len() as i32;
            let s = b.len() as i32;
            if s != p {
                factors.push(SchurFactor {
                    label: "s(t_inf,q)".into(),
                    exponent: s - p,
                    value: inf,
                });
            }
            for (list, e) in [(a, 1), (b, -1)] {
                for x in list {
                    let arg = x + int(n);
                    if !arg.is_integer() {
                        return Err(TauError::NonIntegerQPower {
                            q: q.to_string(),
                            exponent: arg.to_string(),
                        });
                    }
                    let big_q = rpow(q, arg.to_integer().try_into().unwrap_or(i64::MAX));
                    factors.push(SchurFactor {
                        label: format!("s(t({arg},q))"),
                        exponent: e,
                        value: schur(lambda, &TimesVector::q_t_a(&big_q, q, d)),
                    });
                }
            }
        }
        _ => {
            return Err(TauError::Precondition(
                "decomposition needs a rational or q-rational kind".into(),
            ))
        }
    }
    let mut product = Rational::one();
    for f in &factors {
        if f.exponent < 0 && f.value.is_zero() {
            return Err(TauError::Pole { k: n, cell: None });
        }
        product *= rpow(&f.value, f.exponent as i64);
    }
    let direct = content_product(r, n, lambda)?;
    Ok(Decomposition {
        factors,
        product,
        direct,
    })
}

/// `<f, g>_{r,n} = sum_lambda <f, s_lambda> <g, s_lambda> r_lambda(n)` over `|lambda| <= D`,
/// for series in the times `t_1..t_K` of a single group.
pub fn deformed_product(
    f: &PolySeries,
    g: &PolySeries,
    r: &ContentFunction,
    n: i64,
    d: usize,
) -> Result<Rational, TauError> {
    let space = f.space();
    let caps = [d as u32];
    let proto = PolySeries::zero(space, &caps);
    let h = h_sequence(&symbolic_vars(space, &caps, 0), &proto, d);
    let mut acc = Rational::zero();
    for lambda in enumerate(d, None, None) {
        let s = schur_from_h(&lambda, &h);
        let a = standard_product(f, &s);
        if a.is_zero() {
            continue;
        }
        let b = standard_product(g, &s);
        if !b.is_zero() {
            acc += a * b * content_product(r, n, &lambda)?;
        }
    }
    Ok(acc)
}

/// `r_lambda(n)` for every partition up to a weight cutoff.
#[derive(Debug)]
pub struct WeightTable {
    r: ContentFunction,
    n: i64,
    cutoff: usize,
    values: BTreeMap<Partition, Rational>,
    cache: Mutex<BTreeMap<i64, Rational>>,
}

impl WeightTable {
    /// Builds the table, checking the whole content window for poles up front.
    pub fn new(
        r: &ContentFunction,
        n: i64,
        cutoff: usize,
        length_max: Option<usize>,
    ) -> Result<Self, TauError> {
        let rows = length_max.unwrap_or(cutoff).min(cutoff) as i64;
        let lo = n - rows.max(1) + 1;
        let hi = n + cutoff as i64 - 1;
        let cache = r.tabulate(lo.min(hi), hi.max(lo))?;
        let mut values = BTreeMap::new();
        for lambda in enumerate(cutoff, length_max, None) {
            let mut acc = Rational::one();
            for c in lambda.contents() {
                acc *= &cache[&(n + c)];
            }
            values.insert(lambda, acc);
        }
        Ok(WeightTable {
            r: r.clone(),
            n,
            cutoff,
            values,
            cache: Mutex::new(cache),
        })
    }

    pub fn r(&self) -> &ContentFunction {
        &self.r
    }

    pub fn charge(&self) -> i64 {
        self.n
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn get(&self, lambda: &Partition) -> Option<&Rational> {
        self.values.get(lambda)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &Rational)> {
        self.values.iter()
    }

    /// Memoized `r(k)`.
    pub fn r_at(&self, k: i64) -> Result<Rational, TauError> {
        let mut c = self.cache.lock().expect("cache poisoned");
        if let Some(v) = c.get(&k) {
            return Ok(v.clone());
        }
        let v = self.r.eval(k)?;
        c.insert(k, v.clone());
        Ok(v)
    }

    /// `sum_{|lambda| = d} r_lambda(n)` for `d = 0..=cutoff`.
    pub fn graded_sum(&self) -> Vec<Rational> {
        let mut g = vec![Rational::zero(); self.cutoff + 1];
        for (l, v) in &self.values {
            g[l.weight()] += v;
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfun::rat;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn content_product_examples() {
        let r = ContentFunction::linear();
        assert_eq!(content_product(&r, 5, &p(&[2])).unwrap(), int(30));
        assert_eq!(content_product(&r, 5, &Partition::empty()).unwrap(), int(1));
        let shape = SkewShape::new(p(&[2, 1]), p(&[1])).unwrap();
        assert_eq!(skew_content_product(&r, 3, &shape).unwrap(), int(8));
    }

    #[test]
    fn pole_names_cell() {
        let r = ContentFunction::rational(vec![], vec![int(0)]);
        let e = content_product(&r, 0, &p(&[2, 1])).unwrap_err();
        assert_eq!(e, TauError::Pole { k: 0, cell: Some((1, 1)) });
    }

    #[test]
    fn hooks_and_pochhammer() {
        assert_eq!(hook_product(&p(&[2, 2])), BigInt::from(12));
        assert_eq!(hook_product_q(&p(&[1]), &rat(1, 3)), rat(2, 3));
        let a = rat(7, 2);
        assert_eq!(
            pochhammer_partition(&a, &p(&[2, 1])),
            &a * (&a + int(1)) * (&a - int(1))
        );
    }

    #[test]
    fn c_constant_examples() {
        assert_eq!(c_constant(&ContentFunction::linear(), 0).unwrap(), int(1));
        let r1 = ContentFunction::shifted_linear(int(1));
        assert_eq!(c_constant(&r1, 2).unwrap(), rat(1, 2));
        let r3 = ContentFunction::shifted_linear(int(3));
        assert_eq!(c_constant(&r3, 3).unwrap(), rat(1, 27 * 16 * 5));
        assert!(c_constant(&ContentFunction::linear(), 2).is_err());
    }

    #[test]
    fn parse_roundtrip() {
        for s in [
            "one",
            "linear",
            "rational:a=1/2,2;b=3",
            "qrational:a=1;b=2;q=1/3",
            "table:{-2:1,0:3/4}",
            "scale:2:shift:-1:linear",
        ] {
            let r: ContentFunction = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
            assert_eq!(r.to_string().parse::<ContentFunction>().unwrap(), r);
        }
        assert!("rational:c=1".parse::<ContentFunction>().is_err());
        assert!("qrational:a=1;q=2".parse::<ContentFunction>().is_err());
        let r: ContentFunction = "scale:2:shift:-1:linear".parse().unwrap();
        assert_eq!(r.eval(4).unwrap(), int(6));
    }

    #[test]
    fn q_rational_needs_integer_exponent() {
        let r = ContentFunction::q_rational(vec![rat(1, 2)], vec![], rat(1, 3));
        assert!(matches!(r.eval(0), Err(TauError::NonIntegerQPower { .. })));
    }

    #[test]
    fn decomposition_small() {
        let r = ContentFunction::shifted_linear(rat(2, 3));
        let d = rational_r_decomposition(&r, 0, &p(&[2])).unwrap();
        assert!(d.holds());
        assert_eq!(d.direct, rat(2, 3) * rat(5, 3));
    }

    #[test]
    fn weight_table_zero_is_one() {
        let t = WeightTable::new(&ContentFunction::shifted_linear(int(1)), 0, 2, None).unwrap();
        assert_eq!(t.get(&Partition::empty()), Some(&int(1)));
        assert_eq!(t.graded_sum(), vec![int(1), int(1), int(2)]);
    }
}
