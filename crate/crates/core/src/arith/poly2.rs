//! Bivariate polynomials over the rationals in the variables `z` and `w`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::qpoly::QPoly;
use super::rational::{fmt_rational, Rational};

/// Sparse map from `(z exponent, w exponent)` to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl Poly2 {
    pub fn zero() -> Poly2 {
        Poly2::default()
    }

    pub fn one() -> Poly2 {
        Poly2::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Poly2 {
        Poly2::monomial(c, 0, 0)
    }

    pub fn monomial(c: Rational, i: u32, j: u32) -> Poly2 {
        let mut p = Poly2::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn z() -> Poly2 {
        Poly2::monomial(Rational::one(), 1, 0)
    }

    pub fn w() -> Poly2 {
        Poly2::monomial(Rational::one(), 0, 1)
    }

    /// Builds from `(coeff, z exp, w exp)` integer triples.
    pub fn from_ints(ts: &[(i64, u32, u32)]) -> Poly2 {
        let mut p = Poly2::zero();
        for &(c, i, j) in ts {
            p.add_term(i, j, Rational::from_integer(c.into()));
        }
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i == 0 && j == 0)
    }

    /// Total degree; zero for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|&(i, j)| i + j).max().unwrap_or(0)
    }

    pub fn deg_z(&self) -> u32 {
        self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    pub fn deg_w(&self) -> u32 {
        self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Poly2 {
        if c.is_zero() {
            return Poly2::zero();
        }
        Poly2 { terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Poly2 {
        let mut acc = Poly2::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplies by `z^i w^j`.
    pub fn shift(&self, i: u32, j: u32) -> Poly2 {
        Poly2 { terms: self.terms.iter().map(|(&(a, b), v)| ((a + i, b + j), v.clone())).collect() }
    }

    pub fn eval(&self, z: &Rational, w: &Rational) -> Rational {
        self.terms
            .iter()
            .map(|(&(i, j), c)| c * num_traits::pow(z.clone(), i as usize) * num_traits::pow(w.clone(), j as usize))
            .sum()
    }

    /// `P(z0, w)` as a polynomial in `w`.
    pub fn at_z(&self, z0: &Rational) -> QPoly {
        let mut cs = vec![Rational::zero(); self.deg_w() as usize + 1];
        for (&(i, j), c) in &self.terms {
            cs[j as usize] += c * num_traits::pow(z0.clone(), i as usize);
        }
        QPoly::new(cs)
    }

    /// `P(z, w0)` as a polynomial in `z`.
    pub fn at_w(&self, w0: &Rational) -> QPoly {
        self.swap().at_z(w0)
    }

    /// Exchanges the roles of `z` and `w`.
    pub fn swap(&self) -> Poly2 {
        Poly2 { terms: self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect() }
    }

    pub fn dz(&self) -> Poly2 {
        let mut p = Poly2::zero();
        for (&(i, j), c) in &self.terms {
            if i > 0 {
                p.add_term(i - 1, j, c * Rational::from_integer(i.into()));
            }
        }
        p
    }

    pub fn dw(&self) -> Poly2 {
        self.swap().dz().swap()
    }

    /// Substitutes polynomials for both variables.
    pub fn compose(&self, zs: &Poly2, ws: &Poly2) -> Poly2 {
        let mut zp: Vec<Poly2> = vec![Poly2::one()];
        let mut wp: Vec<Poly2> = vec![Poly2::one()];
        for _ in 0..self.deg_z() {
            let next = zp.last().unwrap() * zs;
            zp.push(next);
        }
        for _ in 0..self.deg_w() {
            let next = wp.last().unwrap() * ws;
            wp.push(next);
        }
        let mut out = Poly2::zero();
        for (&(i, j), c) in &self.terms {
            for (&(a, b), x) in &(&zp[i as usize] * &wp[j as usize]).terms {
                out.add_term(a, b, x * c);
            }
        }
        out
    }

    /// Homogeneous component of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Poly2 {
        Poly2 {
            terms: self.terms.iter().filter(|(&(i, j), _)| i + j == d).map(|(k, v)| (*k, v.clone())).collect(),
        }
    }

    /// Coefficients as a polynomial in `w` over `Q[z]`.
    pub fn w_coeffs(&self) -> Vec<QPoly> {
        let mut cs = vec![vec![Rational::zero(); self.deg_z() as usize + 1]; self.deg_w() as usize + 1];
        for (&(i, j), c) in &self.terms {
            cs[j as usize][i as usize] = c.clone();
        }
        if self.is_zero() {
            return vec![];
        }
        cs.into_iter().map(QPoly::new).collect()
    }

    pub fn from_w_coeffs(cs: &[QPoly]) -> Poly2 {
        let mut p = Poly2::zero();
        for (j, q) in cs.iter().enumerate() {
            for (i, c) in q.coeffs().iter().enumerate() {
                p.add_term(i as u32, j as u32, c.clone());
            }
        }
        p
    }

    /// Leading term in graded order (total degree, then `w` degree).
    pub fn leading(&self) -> Option<((u32, u32), Rational)> {
        self.terms
            .iter()
            .max_by_key(|(&(i, j), _)| (i + j, j))
            .map(|(k, v)| (*k, v.clone()))
    }

    /// Scalar multiple with coprime integer coefficients and positive leading term.
    pub fn primitive(&self) -> Poly2 {
        let Some((_, lead)) = self.leading() else { return Poly2::zero() };
        let den = self.terms.values().fold(BigInt::one(), |a, c| a.lcm(c.denom()));
        let num = self.terms.values().fold(BigInt::zero(), |a, c| a.gcd(&(c.numer() * &den / c.denom())));
        let mut s = Rational::new(den, num);
        if lead.is_negative() {
            s = -s;
        }
        self.scale(&s)
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly2) -> Option<Poly2> {
        // lexicographic order, so the leading term is the last key
        let (&(li, lj), lc) = d.terms.last_key_value()?;
        let mut r = self.clone();
        let mut q = Poly2::zero();
        while let Some((&(i, j), c)) = r.terms.last_key_value() {
            if i < li || j < lj {
                return None;
            }
            let f = c / lc;
            let (di, dj) = (i - li, j - lj);
            for (&(a, b), x) in &d.terms {
                r.add_term(a + di, b + dj, -(x * &f));
            }
            q.terms.insert((di, dj), f);
        }
        Some(q)
    }

    /// Division in graded order: `self = q·d + r` with no term of `r`
    /// divisible by the leading monomial of `d`.
    pub fn div_rem(&self, d: &Poly2) -> (Poly2, Poly2) {
        let ((li, lj), lc) = d.leading().expect("division by zero polynomial");
        let mut p = self.clone();
        let mut q = Poly2::zero();
        let mut r = Poly2::zero();
        while let Some(((i, j), c)) = p.leading() {
            if i >= li && j >= lj {
                let f = c / &lc;
                let (di, dj) = (i - li, j - lj);
                for (&(a, b), x) in &d.terms {
                    p.add_term(a + di, b + dj, -(x * &f));
                }
                q.add_term(di, dj, f);
            } else {
                p.add_term(i, j, -c.clone());
                r.add_term(i, j, c);
            }
        }
        (q, r)
    }

    /// Content with respect to `w`: gcd of the `Q[z]` coefficients (monic).
    pub fn content_w(&self) -> QPoly {
        self.w_coeffs().iter().fold(QPoly::zero(), |g, c| QPoly::gcd(&g, c))
    }

    fn div_qpoly_z(&self, c: &QPoly) -> Poly2 {
        let cs: Vec<QPoly> = self.w_coeffs().iter().map(|x| x.div_exact(c).expect("content divides")).collect();
        Poly2::from_w_coeffs(&cs)
    }

    /// Primitive part with respect to `w`.
    pub fn primitive_part_w(&self) -> Poly2 {
        if self.is_zero() {
            return Poly2::zero();
        }
        self.div_qpoly_z(&self.content_w())
    }

    /// Greatest common divisor, normalized by [`Poly2::primitive`].
    pub fn gcd(a: &Poly2, b: &Poly2) -> Poly2 {
        if a.is_zero() {
            return b.primitive();
        }
        if b.is_zero() {
            return a.primitive();
        }
        let cont = QPoly::gcd(&a.content_w(), &b.content_w());
        let (mut x, mut y) = (a.primitive_part_w(), b.primitive_part_w());
        if x.deg_w() < y.deg_w() {
            std::mem::swap(&mut x, &mut y);
        }
        while y.deg_w() > 0 {
            let r = x.prem_w(&y);
            x = y;
            y = if r.is_zero() { Poly2::zero() } else { r.primitive_part_w() };
            if y.is_zero() {
                break;
            }
        }
        let g = if y.is_zero() { x } else { Poly2::one() };
        let g = if g.deg_w() == 0 { Poly2::one() } else { g };
        (&g * &Poly2::from_w_coeffs(&[cont])).primitive()
    }

    /// Pseudo-remainder in `w` over `Q[z]`.
    pub fn prem_w(&self, d: &Poly2) -> Poly2 {
        let dc = d.w_coeffs();
        let dd = dc.len() - 1;
        let lc = dc[dd].clone();
        let mut r = self.w_coeffs();
        while r.len() > dd && !r.is_empty() {
            let top = r.pop().unwrap();
            let k = r.len() - dd;
            for c in r.iter_mut() {
                *c = &*c * &lc;
            }
            for (i, x) in dc.iter().take(dd).enumerate() {
                r[k + i] = &r[k + i] - &(&top * x);
            }
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        Poly2::from_w_coeffs(&r)
    }

    pub fn fmt_vars(&self, zv: &str, wv: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut keys: Vec<&(u32, u32)> = self.terms.keys().collect();
        keys.sort_by_key(|&&(i, j)| std::cmp::Reverse((i + j, i)));
        let mut s = String::new();
        for (n, &&(i, j)) in keys.iter().enumerate() {
            let c = &self.terms[&(i, j)];
            let mut vars = Vec::new();
            for (v, e) in [(zv, i), (wv, j)] {
                match e {
                    0 => {}
                    1 => vars.push(v.to_string()),
                    _ => vars.push(format!("{v}^{e}")),
                }
            }
            let mono = vars.join("*");
            let mag = c.abs();
            let body = if mono.is_empty() {
                fmt_rational(&mag)
            } else if mag.is_one() {
                mono
            } else {
                format!("{}*{mono}", fmt_rational(&mag))
            };
            match (n, c.is_negative()) {
                (0, true) => s.push_str(&format!("-{body}")),
                (0, false) => s.push_str(&body),
                (_, true) => s.push_str(&format!(" - {body}")),
                (_, false) => s.push_str(&format!(" + {body}")),
            }
        }
        s
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_vars("z", "w"))
    }
}

impl fmt::Debug for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly2({self})")
    }
}

impl Add for &Poly2 {
    type Output = Poly2;
    fn add(self, o: &Poly2) -> Poly2 {
        let mut p = self.clone();
        for (&(i, j), c) in &o.terms {
            p.add_term(i, j, c.clone());
        }
        p
    }
}

impl Sub for &Poly2 {
    type Output = Poly2;
    fn sub(self, o: &Poly2) -> Poly2 {
        let mut p = self.clone();
        for (&(i, j), c) in &o.terms {
            p.add_term(i, j, -c.clone());
        }
        p
    }
}

impl Neg for &Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        self.scale(&-Rational::one())
    }
}

impl Mul for &Poly2 {
    type Output = Poly2;
    fn mul(self, o: &Poly2) -> Poly2 {
        let mut p = Poly2::zero();
        for (&(a, b), x) in &self.terms {
            for (&(c, d), y) in &o.terms {
                p.add_term(a + c, b + d, x * y);
            }
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{frac, int};

    #[test]
    fn gcd_and_division() {
        let a = Poly2::from_ints(&[(1, 1, 0), (1, 0, 1), (-1, 0, 0)]); // z + w - 1
        let b = Poly2::from_ints(&[(1, 2, 0), (-3, 0, 1)]); // z^2 - 3w
        let c = Poly2::from_ints(&[(2, 1, 1), (1, 0, 0)]); // 2zw + 1
        let g = Poly2::gcd(&(&a * &b), &(&a * &c));
        assert_eq!(g, a);
        assert_eq!((&a * &b).div_exact(&b), Some(a.clone()));
        assert_eq!(b.div_exact(&a), None);
        // pure-z content is kept
        let z = Poly2::z();
        assert_eq!(Poly2::gcd(&(&z * &b), &(&z * &c)), z);
    }

    #[test]
    fn formatting_and_eval() {
        let p = Poly2::from_ints(&[(1, 1, 1), (-2, 0, 1), (3, 0, 0)]).scale(&frac(1, 2));
        assert_eq!(p.to_string(), "1/2*z*w - w + 3/2");
        assert_eq!(p.eval(&int(2), &int(1)), int(3) / int(2));
        assert_eq!(p.primitive().to_string(), "z*w - 2*w + 3");
    }

    #[test]
    fn compose_shear() {
        let p = Poly2::from_ints(&[(1, 0, 2), (-1, 1, 0)]); // w^2 - z
        let shear = &Poly2::z() + &Poly2::w(); // z -> z + w
        let q = p.compose(&shear, &Poly2::w());
        assert_eq!(q, Poly2::from_ints(&[(1, 0, 2), (-1, 1, 0), (-1, 0, 1)]));
        assert_eq!(p.dz(), Poly2::from_ints(&[(-1, 0, 0)]));
        assert_eq!(p.dw(), Poly2::from_ints(&[(2, 0, 1)]));
    }
}
