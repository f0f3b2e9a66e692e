//! Exact Gaussian expectations of products of traces by enumerating Wick pairings.

use num::{One, Zero};

use crate::error::TauError;
use crate::symfun::{int, rat, rpow, Rational, UPoly};

fn find(p: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while p[r] != r {
        r = p[r];
    }
    let mut y = x;
    while p[y] != r {
        let next = p[y];
        p[y] = r;
        y = next;
    }
    r
}

fn union(p: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(p, a), find(p, b));
    if ra != rb {
        p[ra] = rb;
    }
}

fn count_pairings(
    row: &[usize],
    col: &[usize],
    nidx: usize,
    free: &mut Vec<usize>,
    pairs: &mut Vec<(usize, usize)>,
    out: &mut Vec<u64>,
) {
    if free.is_empty() {
        let mut p: Vec<usize> = (0..nidx).collect();
        for &(a, b) in pairs.iter() {
            union(&mut p, row[a], col[b]);
            union(&mut p, col[a], row[b]);
        }
        let faces = (0..nidx).filter(|&i| find(&mut p, i) == i).count();
        if out.len() <= faces {
            out.resize(faces + 1, 0);
        }
        out[faces] += 1;
        return;
    }
    let first = free.remove(0);
    for k in 0..free.len() {
        let other = free.remove(k);
        pairs.push((first, other));
        count_pairings(row, col, nidx, free, pairs, out);
        pairs.pop();
        free.insert(k, other);
    }
    free.insert(0, first);
}

/// `sum over pairings of N^{faces}` for `E[prod_i Tr M^{k_i}]` with unit propagator
/// `<M_ij M_kl> = delta_il delta_jk`.
pub fn wick_pairing_count(ks: &[usize]) -> Result<UPoly, TauError> {
    let total: usize = ks.iter().sum();
    if total % 2 == 1 {
        return Err(TauError::OddTotal(total));
    }
    if total > 12 {
        return Err(TauError::TooLarge(total));
    }
    let mut row = Vec::with_capacity(total);
    let mut col = Vec::with_capacity(total);
    let mut base = 0;
    let mut empty = 0;
    for &k in ks {
        if k == 0 {
            empty += 1;
            continue;
        }
        for p in 0..k {
            row.push(base + p);
            col.push(base + (p + 1) % k);
        }
        base += k;
    }
    let mut counts = Vec::new();
    count_pairings(&row, &col, base, &mut (0..total).collect(), &mut Vec::new(), &mut counts);
    let mut coeffs = vec![Rational::zero(); empty];
    coeffs.extend(counts.into_iter().map(|c| Rational::from_integer((c as i64).into())));
    Ok(UPoly::new(coeffs))
}

/// `E[prod_i Tr M^{k_i}]` under `exp(-N g/2 Tr M^2)`, propagator `1 / (N g)`.
pub fn wick_gaussian_moment(ks: &[usize], n: i64, g: &Rational) -> Result<Rational, TauError> {
    let p = wick_pairing_count(ks)?;
    let total: usize = ks.iter().sum();
    let prop = Rational::one() / (int(n) * g);
    Ok(p.eval(&int(n)) * rpow(&prop, (total / 2) as i64))
}

/// Coefficients of `(g4 / g^2)^k` in `<exp(-N g4 / 4 Tr M^4)>`, `k <= order`:
/// `(-1/4)^k / k! * P_k(N) / N^k`, with `P_k` the pairing count of `(Tr M^4)^k`.
pub fn quartic_wick(order: usize) -> Result<Vec<UPoly>, TauError> {
    let mut out = vec![UPoly::constant(Rational::one())];
    let mut fact = Rational::one();
    for k in 1..=order {
        fact *= int(k as i64);
        let p = wick_pairing_count(&vec![4; k])?;
        let q = p
            .div_var_pow(k)
            .ok_or_else(|| TauError::NotDivisible(format!("pairing count {p} by N^{k}")))?;
        out.push(q.scale(&(rpow(&rat(-1, 4), k as i64) / &fact)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_moments() {
        assert_eq!(wick_pairing_count(&[2]).unwrap(), UPoly::new(vec![int(0), int(0), int(1)]));
        assert_eq!(
            wick_pairing_count(&[4]).unwrap(),
            UPoly::new(vec![int(0), int(1), int(0), int(2)])
        );
        assert!(matches!(wick_pairing_count(&[1]), Err(TauError::OddTotal(1))));
        assert!(matches!(wick_pairing_count(&[8, 6]), Err(TauError::TooLarge(14))));
        assert_eq!(wick_gaussian_moment(&[2], 3, &int(2)).unwrap(), rat(3, 2));
        assert_eq!(wick_pairing_count(&[0, 2]).unwrap().coeff(3), int(1));
    }

    #[test]
    fn quartic_square() {
        let p = wick_pairing_count(&[4, 4]).unwrap();
        assert_eq!(p, UPoly::new(vec![int(0), int(0), int(61), int(0), int(40), int(0), int(4)]));
        assert_eq!(quartic_wick(1).unwrap()[1], UPoly::new(vec![rat(-1, 4), int(0), rat(-1, 2)]));
    }
}
