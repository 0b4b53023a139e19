//! Towers of simple algebraic extensions of the rationals.
//!
//! An element is a polynomial in the generator of some level whose
//! coefficients live strictly below that level. Moduli are monic and are
//! usually, but not always, known to be irreducible; when a modulus turns
//! out to be reducible an attempted inversion reports a [`Split`] instead
//! of a wrong answer (dynamic evaluation).

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::rational::{fmt_rational, Rational};
use super::unipoly::KPoly;
use crate::error::ArithError;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Alg {
    Q(Rational),
    /// `X(level, coeffs)`: ascending coefficients, each below `level`,
    /// fewer than the degree of that level's modulus, at least two.
    X(usize, Vec<Alg>),
}

impl Alg {
    pub fn zero() -> Alg {
        Alg::Q(Rational::zero())
    }

    pub fn one() -> Alg {
        Alg::Q(Rational::one())
    }

    /// Structural zero. Exact when every modulus below is irreducible.
    pub fn is_zero(&self) -> bool {
        matches!(self, Alg::Q(q) if q.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Alg::Q(q) if q.is_one())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Alg::Q(q) => Some(q),
            Alg::X(..) => None,
        }
    }

    fn level(&self) -> Option<usize> {
        match self {
            Alg::Q(_) => None,
            Alg::X(l, _) => Some(*l),
        }
    }

    /// Highest level this element depends on, plus one.
    pub fn height(&self) -> usize {
        self.level().map_or(0, |l| l + 1)
    }
}

impl From<Rational> for Alg {
    fn from(q: Rational) -> Alg {
        Alg::Q(q)
    }
}

impl fmt::Debug for Alg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alg::Q(q) => write!(f, "{}", fmt_rational(q)),
            Alg::X(l, cs) => write!(f, "X{l}{cs:?}"),
        }
    }
}

#[derive(Debug)]
pub struct Level {
    pub name: String,
    /// Monic, ascending; coefficients below this level.
    pub modulus: Vec<Alg>,
    /// Irreducibility of the modulus was proved.
    pub certified: bool,
}

/// A zero divisor was met at `level`; its modulus factors as `factors`.
#[derive(Clone, Debug)]
pub struct Split {
    pub level: usize,
    pub factors: Vec<KPoly>,
}

#[derive(Clone, Debug, Default)]
pub struct Tower {
    levels: Vec<Arc<Level>>,
}

impl PartialEq for Tower {
    fn eq(&self, other: &Tower) -> bool {
        self.levels.len() == other.levels.len()
            && self.levels.iter().zip(&other.levels).all(|(a, b)| Arc::ptr_eq(a, b))
    }
}

impl Tower {
    pub fn rationals() -> Tower {
        Tower::default()
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[Arc<Level>] {
        &self.levels
    }

    /// Degree over the rationals, assuming all moduli irreducible.
    pub fn degree(&self) -> usize {
        self.levels.iter().map(|l| l.modulus.len() - 1).product()
    }

    pub fn all_certified(&self) -> bool {
        self.levels.iter().all(|l| l.certified)
    }

    /// `self` is `other` possibly followed by more levels.
    pub fn extends(&self, other: &Tower) -> bool {
        other.levels.len() <= self.levels.len()
            && other.levels.iter().zip(&self.levels).all(|(a, b)| Arc::ptr_eq(a, b))
    }

    /// Adjoins a root of the monic polynomial `modulus` (degree at least 2).
    pub fn extend(&self, modulus: &KPoly, certified: bool) -> (Tower, Alg) {
        assert!(modulus.deg() >= 2, "extension by a linear polynomial");
        let l = self.levels.len();
        let m = modulus.monic_unchecked(self);
        let mut levels = self.levels.clone();
        levels.push(Arc::new(Level {
            name: format!("t{}", l + 1),
            modulus: m.coeffs().to_vec(),
            certified,
        }));
        let mut g = vec![Alg::zero(); 2];
        g[1] = Alg::one();
        (Tower { levels }, Alg::X(l, g))
    }

    /// Checked adjunction of a root of `m`: degree at least two, no rational
    /// root, and total degree within `cap`.
    pub fn adjoin_root(&self, m: &KPoly, cap: usize) -> Result<(Tower, Alg), ArithError> {
        if m.is_zero() {
            return Err(ArithError::ZeroPolynomial);
        }
        if m.deg() < 2 {
            return Err(ArithError::ReducibleLinearPart);
        }
        if let Some(q) = m.as_qpoly() {
            if !super::factor::rational_roots(&q).is_empty() {
                return Err(ArithError::ReducibleLinearPart);
            }
        }
        if self.degree() * m.deg() > cap {
            return Err(ArithError::TowerCapExceeded(cap));
        }
        let certified = self.depth() == 0
            && m.as_qpoly().is_some_and(|q| super::factor::modular_irreducible(&q) == Some(true) || q.deg() <= 3);
        Ok(self.extend(m, certified))
    }

    /// Tower truncated below `level`.
    pub fn truncate(&self, level: usize) -> Tower {
        Tower { levels: self.levels[..level.min(self.levels.len())].to_vec() }
    }

    pub fn generator(&self, level: usize) -> Alg {
        Alg::X(level, vec![Alg::zero(), Alg::one()])
    }

    fn norm(level: usize, mut cs: Vec<Alg>) -> Alg {
        while cs.last().is_some_and(Alg::is_zero) {
            cs.pop();
        }
        match cs.len() {
            0 => Alg::zero(),
            1 => cs.pop().unwrap(),
            _ => Alg::X(level, cs),
        }
    }

    pub fn add(&self, a: &Alg, b: &Alg) -> Alg {
        match (a, b) {
            (Alg::Q(x), Alg::Q(y)) => Alg::Q(x + y),
            _ => {
                let (la, lb) = (a.level(), b.level());
                if la < lb {
                    return self.add(b, a);
                }
                let Alg::X(l, ca) = a else { unreachable!() };
                let mut cs = ca.clone();
                if la == lb {
                    let Alg::X(_, cb) = b else { unreachable!() };
                    if cs.len() < cb.len() {
                        cs.resize(cb.len(), Alg::zero());
                    }
                    for (i, c) in cb.iter().enumerate() {
                        cs[i] = self.add(&cs[i], c);
                    }
                } else {
                    cs[0] = self.add(&cs[0], b);
                }
                Self::norm(*l, cs)
            }
        }
    }

    pub fn neg(&self, a: &Alg) -> Alg {
        match a {
            Alg::Q(q) => Alg::Q(-q),
            Alg::X(l, cs) => Alg::X(*l, cs.iter().map(|c| self.neg(c)).collect()),
        }
    }

    pub fn sub(&self, a: &Alg, b: &Alg) -> Alg {
        self.add(a, &self.neg(b))
    }

    pub fn scale_q(&self, a: &Alg, q: &Rational) -> Alg {
        if q.is_zero() {
            return Alg::zero();
        }
        match a {
            Alg::Q(x) => Alg::Q(x * q),
            Alg::X(l, cs) => Alg::X(*l, cs.iter().map(|c| self.scale_q(c, q)).collect()),
        }
    }

    pub fn mul(&self, a: &Alg, b: &Alg) -> Alg {
        match (a, b) {
            (Alg::Q(x), Alg::Q(y)) => Alg::Q(x * y),
            (Alg::Q(x), _) => self.scale_q(b, x),
            (_, Alg::Q(y)) => self.scale_q(a, y),
            (Alg::X(l1, c1), Alg::X(l2, c2)) => {
                if l1 < l2 {
                    return self.mul(b, a);
                }
                if l1 > l2 {
                    let cs = c1.iter().map(|c| self.mul(c, b)).collect();
                    return Self::norm(*l1, cs);
                }
                let mut prod = vec![Alg::zero(); c1.len() + c2.len() - 1];
                for (i, x) in c1.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in c2.iter().enumerate() {
                        let t = self.mul(x, y);
                        prod[i + j] = self.add(&prod[i + j], &t);
                    }
                }
                self.reduce(*l1, prod)
            }
        }
    }

    /// Reduces a coefficient vector modulo the modulus of `level`.
    pub fn reduce(&self, level: usize, mut v: Vec<Alg>) -> Alg {
        let m = &self.levels[level].modulus;
        let dm = m.len() - 1;
        if v.len() > dm {
            for i in (dm..v.len()).rev() {
                let c = v[i].clone();
                if c.is_zero() {
                    continue;
                }
                for j in 0..dm {
                    let t = self.mul(&c, &m[j]);
                    v[i - dm + j] = self.sub(&v[i - dm + j], &t);
                }
            }
            v.truncate(dm);
        }
        Self::norm(level, v)
    }

    pub fn pow(&self, a: &Alg, mut e: u64) -> Alg {
        let mut base = a.clone();
        let mut acc = Alg::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Inverse of a structurally nonzero element.
    pub fn try_inv(&self, a: &Alg) -> Result<Alg, Split> {
        match a {
            Alg::Q(q) => {
                assert!(!q.is_zero(), "inverse of zero");
                Ok(Alg::Q(q.recip()))
            }
            Alg::X(l, cs) => {
                let below = self.truncate(*l);
                let modulus = KPoly::new(self.levels[*l].modulus.clone());
                let b = KPoly::new(cs.clone());
                // extended Euclid over the level below, tracking the b-cofactor only
                let (mut r0, mut r1) = (modulus.clone(), b);
                let (mut t0, mut t1) = (KPoly::zero(), KPoly::one());
                while r1.deg() > 0 {
                    let (q, r) = r0.div_rem(&r1, &below)?;
                    let t = t0.sub(&q.mul(&t1, &below), &below);
                    r0 = std::mem::replace(&mut r1, r);
                    t0 = std::mem::replace(&mut t1, t);
                }
                if r1.is_zero() {
                    let g = r0.monic(&below)?;
                    let h = modulus.div_rem(&g, &below)?.0;
                    return Err(Split { level: *l, factors: vec![g, h] });
                }
                let c = below.try_inv(&r1.coeff(0))?;
                let inv = t1.scale(&c, &below);
                Ok(self.reduce(*l, inv.coeffs().to_vec()))
            }
        }
    }

    pub fn try_div(&self, a: &Alg, b: &Alg) -> Result<Alg, Split> {
        Ok(self.mul(a, &self.try_inv(b)?))
    }

    /// Zero test that detects zero divisors.
    pub fn is_zero_checked(&self, a: &Alg) -> Result<bool, Split> {
        if a.is_zero() {
            return Ok(true);
        }
        self.try_inv(a).map(|_| false)
    }

    /// Renders `a` using the generator names of this tower.
    pub fn fmt(&self, a: &Alg) -> String {
        match a {
            Alg::Q(q) => fmt_rational(q),
            Alg::X(l, cs) => {
                let name = &self.levels[*l].name;
                let mut terms: Vec<String> = Vec::new();
                for (i, c) in cs.iter().enumerate().rev() {
                    if c.is_zero() {
                        continue;
                    }
                    let mono = match i {
                        0 => String::new(),
                        1 => name.clone(),
                        _ => format!("{name}^{i}"),
                    };
                    let term = match c {
                        Alg::Q(q) if i > 0 && q.is_one() => mono,
                        Alg::Q(q) if i > 0 && (-q).is_one() => format!("-{mono}"),
                        Alg::Q(q) if i > 0 => format!("{}*{mono}", fmt_rational(q)),
                        Alg::Q(q) => fmt_rational(q),
                        _ if i > 0 => format!("({})*{mono}", self.fmt(c)),
                        _ => self.fmt(c),
                    };
                    terms.push(term);
                }
                join_signed(&terms)
            }
        }
    }

    /// Minimal-polynomial description of each level, e.g. `t1^2 + 1`.
    pub fn describe(&self) -> Vec<(String, String, bool)> {
        self.levels
            .iter()
            .map(|lvl| {
                let p = KPoly::new(lvl.modulus.clone());
                (lvl.name.clone(), p.fmt_var(self, &lvl.name), lvl.certified)
            })
            .collect()
    }

    /// Whether `a` is a positive rational.
    pub fn is_positive_rational(&self, a: &Alg) -> bool {
        a.as_rational().is_some_and(|q| q.is_positive())
    }
}

pub(crate) fn join_signed(terms: &[String]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = terms[0].clone();
    for t in &terms[1..] {
        match t.strip_prefix('-') {
            Some(rest) => {
                s.push_str(" - ");
                s.push_str(rest);
            }
            None => {
                s.push_str(" + ");
                s.push_str(t);
            }
        }
    }
    s
}
