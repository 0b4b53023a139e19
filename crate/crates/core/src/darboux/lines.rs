//! Invariant straight lines by elimination.
//!
//! A vertical line `z = c` is invariant iff `ż(c, w) ≡ 0`. A line
//! `w = m z + c` is invariant iff `ẇ − m ż` vanishes on it identically in `z`,
//! which gives polynomial equations in `(m, c)` solved by resultants.

use super::canonical;
use super::verify::VectorField;
use crate::arith::bareiss::resultant_w;
use crate::arith::factor::{factor_univariate, rational_roots};
use crate::arith::rational::binomial;
use crate::arith::{Poly2, QPoly};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LineSearch {
    /// Rational Darboux polynomials whose zero sets are unions of invariant
    /// lines; an irreducible factor of degree `d > 1` is a conjugate family.
    pub lines: Vec<Poly2>,
    /// Infinitely many invariant lines.
    pub pencil: bool,
    /// Some lines have irrational slope and are not listed.
    pub irrational_slopes: bool,
}

fn from_qpoly_in(p: &QPoly, var: &Poly2) -> Poly2 {
    let mut out = Poly2::zero();
    let mut pw = Poly2::one();
    for c in p.coeffs() {
        out = &out + &pw.scale(c);
        pw = &pw * var;
    }
    out
}

fn irreducible_parts(p: &QPoly) -> Vec<QPoly> {
    if p.deg() == 0 {
        return vec![];
    }
    factor_univariate(p, p.deg()).expect("nonzero").into_iter().map(|f| f.poly).collect()
}

/// Coefficients in `z` of `ẇ(z, mz+c) − m ż(z, mz+c)`, each a polynomial in
/// `(m, c)` stored with `m` in the first slot.
fn slope_equations(field: &VectorField) -> Vec<Poly2> {
    let mut eqs: Vec<Poly2> = Vec::new();
    let mut put = |k: usize, t: Poly2| {
        if eqs.len() <= k {
            eqs.resize(k + 1, Poly2::zero());
        }
        eqs[k] = &eqs[k] + &t;
    };
    for (src, extra_m, sign) in [(&field.wdot, 0u32, 1i64), (&field.zdot, 1, -1)] {
        for (&(i, j), c) in src.terms() {
            for l in 0..=j {
                let coef = c * binomial(j, l) * crate::arith::rational::int(sign);
                put((i + l) as usize, Poly2::monomial(coef, l + extra_m, j - l));
            }
        }
    }
    eqs.into_iter().filter(|e| !e.is_zero()).collect()
}

pub fn invariant_lines(field: &VectorField) -> LineSearch {
    let mut out = LineSearch::default();
    let zc = field.zdot.w_coeffs();
    let vertical = zc.iter().fold(QPoly::zero(), |g, c| QPoly::gcd(&g, c));
    if field.zdot.is_zero() {
        out.pencil = true;
    } else {
        for h in irreducible_parts(&vertical) {
            out.lines.push(from_qpoly_in(&h, &Poly2::z()));
        }
    }

    let mut eqs = slope_equations(field);
    if eqs.is_empty() {
        out.pencil = true;
        return finish(out);
    }
    let common = eqs.iter().skip(1).fold(eqs[0].clone(), |g, e| Poly2::gcd(&g, e));
    if !common.is_constant() {
        out.pencil = true;
        eqs = eqs.iter().map(|e| e.div_exact(&common).expect("gcd divides")).collect();
    }
    if eqs.iter().any(|e| e.is_constant()) {
        return finish(out);
    }
    let mut slope_poly = QPoly::zero();
    for (a, e) in eqs.iter().enumerate() {
        if e.deg_w() == 0 {
            slope_poly = QPoly::gcd(&slope_poly, &e.w_coeffs()[0]);
            continue;
        }
        for f in &eqs[a + 1..] {
            let r = if f.deg_w() == 0 { f.w_coeffs()[0].clone() } else { resultant_w(e, f) };
            slope_poly = QPoly::gcd(&slope_poly, &r);
        }
    }
    if slope_poly.is_zero() {
        // a single equation in c left over; no finite elimination possible
        out.pencil = true;
        return finish(out);
    }
    out.irrational_slopes = irreducible_parts(&slope_poly).iter().any(|h| h.deg() > 1);
    for (m, _) in rational_roots(&slope_poly) {
        let g = eqs.iter().fold(QPoly::zero(), |g, e| QPoly::gcd(&g, &e.at_z(&m)));
        let shifted = &Poly2::w() - &Poly2::z().scale(&m);
        for h in irreducible_parts(&g) {
            out.lines.push(from_qpoly_in(&h, &shifted));
        }
    }
    finish(out)
}

fn finish(mut out: LineSearch) -> LineSearch {
    out.lines = out.lines.iter().map(canonical).collect();
    out.lines.sort_by(super::canonical_order);
    out.lines.dedup();
    out
}
