//! Polynomials in `w` whose coefficients are finite Puiseux sums in `z`
//! with coefficients in an extension tower.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::rational::{binomial, fmt_rational};
use crate::arith::{Alg, Poly2, Rational, Tower};

/// Finite sum `Σ c_e z^e` with rational exponents.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ZSeries {
    terms: BTreeMap<Rational, Alg>,
}

impl ZSeries {
    pub fn zero() -> ZSeries {
        ZSeries::default()
    }

    pub fn monomial(e: Rational, c: Alg) -> ZSeries {
        let mut s = ZSeries::zero();
        if !c.is_zero() {
            s.terms.insert(e, c);
        }
        s
    }

    pub fn from_terms(ts: impl IntoIterator<Item = (Rational, Alg)>, k: &Tower) -> ZSeries {
        let mut s = ZSeries::zero();
        for (e, c) in ts {
            s.add_term(e, &c, k);
        }
        s
    }

    pub fn add_term(&mut self, e: Rational, c: &Alg, k: &Tower) {
        if c.is_zero() {
            return;
        }
        let v = match self.terms.remove(&e) {
            Some(old) => k.add(&old, c),
            None => c.clone(),
        };
        if !v.is_zero() {
            self.terms.insert(e, v);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &Alg)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lowest(&self) -> Option<(&Rational, &Alg)> {
        self.terms.iter().next()
    }

    pub fn valuation(&self) -> Option<Rational> {
        self.lowest().map(|(e, _)| e.clone())
    }

    pub fn coeff(&self, e: &Rational) -> Alg {
        self.terms.get(e).cloned().unwrap_or_else(Alg::zero)
    }

    pub fn add(&self, o: &ZSeries, k: &Tower) -> ZSeries {
        let mut s = self.clone();
        for (e, c) in &o.terms {
            s.add_term(e.clone(), c, k);
        }
        s
    }

    pub fn sub(&self, o: &ZSeries, k: &Tower) -> ZSeries {
        self.add(&o.neg(k), k)
    }

    pub fn neg(&self, k: &Tower) -> ZSeries {
        ZSeries { terms: self.terms.iter().map(|(e, c)| (e.clone(), k.neg(c))).collect() }
    }

    pub fn mul(&self, o: &ZSeries, k: &Tower) -> ZSeries {
        let mut s = ZSeries::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                s.add_term(e1 + e2, &k.mul(c1, c2), k);
            }
        }
        s
    }

    pub fn scale(&self, c: &Alg, k: &Tower) -> ZSeries {
        ZSeries::from_terms(self.terms.iter().map(|(e, x)| (e.clone(), k.mul(x, c))), k)
    }

    /// Multiplies by `z^e`.
    pub fn shift(&self, e: &Rational) -> ZSeries {
        ZSeries { terms: self.terms.iter().map(|(x, c)| (x + e, c.clone())).collect() }
    }

    pub fn derivative(&self, k: &Tower) -> ZSeries {
        ZSeries::from_terms(
            self.terms.iter().map(|(e, c)| (e - Rational::one(), k.scale_q(c, e))),
            k,
        )
    }

    /// Drops terms of exponent `>= bound`.
    pub fn truncate_below(&self, bound: &Rational) -> ZSeries {
        ZSeries { terms: self.terms.iter().filter(|(e, _)| *e < bound).map(|(e, c)| (e.clone(), c.clone())).collect() }
    }

    pub fn fmt(&self, k: &Tower, var: &str) -> String {
        fmt_terms(self.terms.iter().map(|(e, c)| (e.clone(), c.clone())), k, var)
    }
}

fn fmt_zpow(var: &str, e: &Rational) -> String {
    if e.is_zero() {
        String::new()
    } else if e.is_one() {
        var.to_string()
    } else if e.is_integer() && e.is_positive() {
        format!("{var}^{}", e.numer())
    } else {
        format!("{var}^({})", fmt_rational(e))
    }
}

/// Renders `Σ c z^e`, lowest exponent first.
pub fn fmt_terms(ts: impl Iterator<Item = (Rational, Alg)>, k: &Tower, var: &str) -> String {
    let mut parts = Vec::new();
    for (e, c) in ts {
        let zp = fmt_zpow(var, &e);
        let cs = k.fmt(&c);
        let term = if zp.is_empty() {
            cs
        } else if c.is_one() {
            zp
        } else if cs == "-1" {
            format!("-{zp}")
        } else if c.as_rational().is_some() {
            format!("{cs}*{zp}")
        } else {
            format!("({cs})*{zp}")
        };
        parts.push(term);
    }
    crate::arith::tower::join_signed(&parts)
}

/// Polynomial in `w` with [`ZSeries`] coefficients, stored sparsely by
/// `(w exponent, z exponent)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, Rational), Alg>,
}

impl BiPoly {
    pub fn zero() -> BiPoly {
        BiPoly::default()
    }

    pub fn from_poly2(p: &Poly2) -> BiPoly {
        let mut b = BiPoly::zero();
        for (&(i, j), c) in p.terms() {
            b.terms.insert((j, Rational::from_integer(i.into())), Alg::Q(c.clone()));
        }
        b
    }

    /// Back to a rational polynomial when exponents are integral and coefficients rational.
    pub fn to_poly2(&self) -> Option<Poly2> {
        let mut p = Poly2::zero();
        for ((j, e), c) in &self.terms {
            if !e.is_integer() || e.is_negative() {
                return None;
            }
            let i: u32 = e.numer().try_into().ok()?;
            p.add_term(i, *j, c.as_rational()?.clone());
        }
        Some(p)
    }

    pub fn add_term(&mut self, j: u32, e: Rational, c: &Alg, k: &Tower) {
        if c.is_zero() {
            return;
        }
        let key = (j, e);
        let v = match self.terms.remove(&key) {
            Some(old) => k.add(&old, c),
            None => c.clone(),
        };
        if !v.is_zero() {
            self.terms.insert(key, v);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, Rational), &Alg)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn deg_w(&self) -> u32 {
        self.terms.keys().map(|(j, _)| *j).max().unwrap_or(0)
    }

    /// Coefficient of `w^j`.
    pub fn slice(&self, j: u32) -> ZSeries {
        ZSeries {
            terms: self
                .terms
                .iter()
                .filter(|((jj, _), _)| *jj == j)
                .map(|((_, e), c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn from_slices(slices: &[ZSeries]) -> BiPoly {
        let mut b = BiPoly::zero();
        for (j, s) in slices.iter().enumerate() {
            for (e, c) in s.terms() {
                b.terms.insert((j as u32, e.clone()), c.clone());
            }
        }
        b
    }

    pub fn slices(&self) -> Vec<ZSeries> {
        (0..=self.deg_w()).map(|j| self.slice(j)).collect()
    }

    pub fn add(&self, o: &BiPoly, k: &Tower) -> BiPoly {
        let mut b = self.clone();
        for ((j, e), c) in &o.terms {
            b.add_term(*j, e.clone(), c, k);
        }
        b
    }

    pub fn neg(&self, k: &Tower) -> BiPoly {
        BiPoly { terms: self.terms.iter().map(|(key, c)| (key.clone(), k.neg(c))).collect() }
    }

    pub fn sub(&self, o: &BiPoly, k: &Tower) -> BiPoly {
        self.add(&o.neg(k), k)
    }

    pub fn scale(&self, c: &Alg, k: &Tower) -> BiPoly {
        let mut b = BiPoly::zero();
        for ((j, e), x) in &self.terms {
            b.add_term(*j, e.clone(), &k.mul(x, c), k);
        }
        b
    }

    /// Multiplies by the series `s` (no `w`).
    pub fn mul_series(&self, s: &ZSeries, k: &Tower) -> BiPoly {
        let mut b = BiPoly::zero();
        for ((j, e), x) in &self.terms {
            for (f, y) in s.terms() {
                b.add_term(*j, e + f, &k.mul(x, y), k);
            }
        }
        b
    }

    /// Multiplies by `w^dj z^dz` (`dz` may be negative).
    pub fn shift(&self, dj: i64, dz: &Rational) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|((j, e), c)| (((*j as i64 + dj) as u32, e + dz), c.clone()))
                .collect(),
        }
    }

    pub fn min_z(&self) -> Option<Rational> {
        self.terms.keys().map(|(_, e)| e.clone()).min()
    }

    pub fn min_w(&self) -> Option<u32> {
        self.terms.keys().map(|(j, _)| *j).min()
    }

    /// Common denominator of the `z` exponents.
    pub fn ramification(&self) -> u64 {
        self.terms
            .keys()
            .fold(num_bigint::BigInt::one(), |a, (_, e)| a.lcm(e.denom()))
            .try_into()
            .unwrap_or(u64::MAX)
    }

    /// `P(z, s(z) + w)`.
    pub fn shift_w(&self, s: &ZSeries, k: &Tower) -> BiPoly {
        if s.is_zero() {
            return self.clone();
        }
        let n = self.deg_w();
        let mut pows = vec![ZSeries::monomial(Rational::zero(), Alg::one())];
        for _ in 0..n {
            let next = pows.last().unwrap().mul(s, k);
            pows.push(next);
        }
        let mut out = BiPoly::zero();
        for j in 0..=n {
            let pj = self.slice(j);
            if pj.is_zero() {
                continue;
            }
            for m in 0..=j {
                let coef = binomial(j, m);
                let t = pj.mul(&pows[(j - m) as usize], k);
                for (e, c) in t.terms() {
                    out.add_term(m, e.clone(), &k.scale_q(c, &coef), k);
                }
            }
        }
        out
    }

    /// `P(z, s(z))`.
    pub fn eval_series(&self, s: &ZSeries, k: &Tower) -> ZSeries {
        let mut acc = ZSeries::zero();
        for j in (0..=self.deg_w()).rev() {
            acc = acc.mul(s, k).add(&self.slice(j), k);
        }
        acc
    }

    /// `w^d P(z, 1/w)`; requires `d >= deg_w`.
    pub fn reverse_w(&self, d: u32) -> BiPoly {
        BiPoly { terms: self.terms.iter().map(|((j, e), c)| ((d - j, e.clone()), c.clone())).collect() }
    }

    pub fn fmt(&self, k: &Tower, zv: &str, wv: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for j in (0..=self.deg_w()).rev() {
            let s = self.slice(j);
            if s.is_zero() {
                continue;
            }
            let wp = match j {
                0 => String::new(),
                1 => wv.to_string(),
                _ => format!("{wv}^{j}"),
            };
            let body = s.fmt(k, zv);
            let single = s.terms().count() == 1;
            parts.push(match (wp.is_empty(), body.as_str()) {
                (true, _) => body.clone(),
                (false, "1") => wp,
                (false, "-1") => format!("-{wp}"),
                (false, _) if single => format!("{body}*{wp}"),
                (false, _) => format!("({body})*{wp}"),
            });
        }
        crate::arith::tower::join_signed(&parts)
    }
}
