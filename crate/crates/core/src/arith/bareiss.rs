//! Fraction-free determinants over exact polynomial rings.

use super::{Poly2, QPoly};

pub trait ExactRing: Clone {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Exact quotient; the caller guarantees divisibility.
    fn div_exact(&self, o: &Self) -> Self;
}

impl ExactRing for QPoly {
    fn zero() -> Self {
        QPoly::zero()
    }
    fn is_zero(&self) -> bool {
        QPoly::is_zero(self)
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Self {
        QPoly::div_exact(self, o).expect("Bareiss division is exact")
    }
}

impl ExactRing for Poly2 {
    fn zero() -> Self {
        Poly2::zero()
    }
    fn is_zero(&self) -> bool {
        Poly2::is_zero(self)
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Self {
        Poly2::div_exact(self, o).expect("Bareiss division is exact")
    }
}

/// Determinant of a square matrix by Bareiss elimination with row pivoting.
pub fn determinant<R: ExactRing>(mut m: Vec<Vec<R>>) -> R {
    let n = m.len();
    if n == 0 {
        panic!("empty matrix");
    }
    let mut negate = false;
    let mut prev: Option<R> = None;
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else { return R::zero() };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = match &prev {
                    Some(d) => v.div_exact(d),
                    None => v,
                };
            }
        }
        prev = Some(m[k][k].clone());
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        d.neg()
    } else {
        d
    }
}

/// Resultant in `w` of two bivariate polynomials, as a polynomial in `z`.
pub fn resultant_w(a: &Poly2, b: &Poly2) -> QPoly {
    let (ca, cb) = (a.w_coeffs(), b.w_coeffs());
    if ca.is_empty() || cb.is_empty() {
        return QPoly::zero();
    }
    let (m, n) = (ca.len() - 1, cb.len() - 1);
    if m == 0 && n == 0 {
        return QPoly::one();
    }
    if m == 0 {
        return ca[0].pow(n as u32);
    }
    if n == 0 {
        return cb[0].pow(m as u32);
    }
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (coeffs, shifts, d) in [(&ca, n, m), (&cb, m, n)] {
        for s in 0..shifts {
            let mut row = vec![QPoly::zero(); size];
            for (i, c) in coeffs.iter().enumerate() {
                row[s + d - i] = c.clone();
            }
            rows.push(row);
        }
    }
    determinant(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::int;

    #[test]
    fn integer_determinant() {
        let c = |v: i64| QPoly::constant(int(v));
        let m = vec![vec![c(0), c(2), c(1)], vec![c(3), c(1), c(4)], vec![c(1), c(5), c(9)]];
        // oracle: cofactor expansion along the first row, whose first entry is zero
        let det = -2 * (27 - 4) + (15 - 1);
        assert_eq!(determinant(m), c(det));
    }

    #[test]
    fn resultant_detects_common_root() {
        // w^2 - z and w - 2: resultant 4 - z
        let a = Poly2::from_ints(&[(1, 0, 2), (-1, 1, 0)]);
        let b = Poly2::from_ints(&[(1, 0, 1), (-2, 0, 0)]);
        assert_eq!(resultant_w(&a, &b), QPoly::from_ints(&[4, -1]));
        assert_eq!(resultant_w(&b, &b), QPoly::zero());
    }
}
