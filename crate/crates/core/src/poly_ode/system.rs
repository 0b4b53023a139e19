//! The equation `dw/dz = P(z,w) / Q(z,w)` and its point transforms.

use num_traits::{One, Zero};

use super::bipoly::{BiPoly, ZSeries};
use crate::arith::{Alg, Poly2, Rational, Tower};
use crate::error::{Error, Result};

/// `dw/dz = p / q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OdeSystem {
    pub p: BiPoly,
    pub q: BiPoly,
}

/// Lowest `z` exponent of a `w`-slice and its coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lowest {
    pub exp: Rational,
    pub coeff: Alg,
}

/// Per `w`-power lowest terms of `P` and `Q`; `None` marks an absent power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffProfile {
    pub p: Vec<Option<Lowest>>,
    pub q: Vec<Option<Lowest>>,
}

impl CoeffProfile {
    pub fn k(&self, j: usize) -> Option<&Lowest> {
        self.p.get(j).and_then(Option::as_ref)
    }

    pub fn l(&self, i: usize) -> Option<&Lowest> {
        self.q.get(i).and_then(Option::as_ref)
    }
}

fn profile_of(b: &BiPoly) -> Vec<Option<Lowest>> {
    if b.is_zero() {
        return vec![];
    }
    b.slices()
        .iter()
        .map(|s| s.lowest().map(|(e, c)| Lowest { exp: e.clone(), coeff: c.clone() }))
        .collect()
}

impl OdeSystem {
    pub fn new(p: BiPoly, q: BiPoly) -> OdeSystem {
        OdeSystem { p, q }
    }

    /// Top-level constructor: `q` nonzero and `p`, `q` coprime.
    pub fn from_poly2(p: &Poly2, q: &Poly2) -> Result<OdeSystem> {
        if q.is_zero() {
            return Err(Error::Invalid("denominator is zero".into()));
        }
        let g = Poly2::gcd(p, q);
        if !g.is_constant() {
            return Err(Error::NotCoprime(g.to_string()));
        }
        Ok(OdeSystem::new(BiPoly::from_poly2(p), BiPoly::from_poly2(q)))
    }

    /// Rational polynomial form, when available.
    pub fn to_poly2(&self) -> Option<(Poly2, Poly2)> {
        Some((self.p.to_poly2()?, self.q.to_poly2()?))
    }

    pub fn profile(&self) -> CoeffProfile {
        CoeffProfile { p: profile_of(&self.p), q: profile_of(&self.q) }
    }

    /// `w ≡ 0` solves the equation.
    pub fn zero_is_solution(&self) -> bool {
        self.p.slice(0).is_zero()
    }

    /// Moves `(z0, w0)` to the origin. Requires integral `z` exponents when `z0 ≠ 0`.
    pub fn translate(&self, z0: &Rational, w0: &Alg, k: &Tower) -> Result<OdeSystem> {
        let mut sys = self.clone();
        if !z0.is_zero() {
            let (p, q) = self
                .to_poly2()
                .ok_or_else(|| Error::Invalid("z-translation needs a rational polynomial system".into()))?;
            let zs = &Poly2::constant(z0.clone()) + &Poly2::z();
            sys = OdeSystem::new(
                BiPoly::from_poly2(&p.compose(&zs, &Poly2::w())),
                BiPoly::from_poly2(&q.compose(&zs, &Poly2::w())),
            );
        }
        if !w0.is_zero() {
            let s = ZSeries::monomial(Rational::zero(), w0.clone());
            sys = OdeSystem::new(sys.p.shift_w(&s, k), sys.q.shift_w(&s, k));
        }
        Ok(sys)
    }

    /// Moves `(z0, ∞)` to the origin with `w̄ = 1/w`, clearing common monomial content.
    pub fn at_infinity(&self, z0: &Rational, k: &Tower) -> Result<OdeSystem> {
        let t = self.translate(z0, &Alg::zero(), k)?;
        let d = t.p.deg_w().max(t.q.deg_w());
        let p = t.p.reverse_w(d).shift(2, &Rational::zero()).neg(k);
        let q = t.q.reverse_w(d);
        Ok(OdeSystem::new(p, q).strip_monomial_content(true))
    }

    /// Divides `P` and `Q` by their common `z`-power (and `w`-power if asked).
    pub fn strip_monomial_content(&self, with_w: bool) -> OdeSystem {
        let mz = match (self.p.min_z(), self.q.min_z()) {
            (Some(a), Some(b)) => a.min(b),
            (None, Some(b)) => b,
            (Some(a), None) => a,
            (None, None) => return self.clone(),
        };
        let mw = if with_w {
            match (self.p.min_w(), self.q.min_w()) {
                (Some(a), Some(b)) => a.min(b),
                (None, Some(b)) => b,
                (Some(a), None) => a,
                (None, None) => 0,
            }
        } else {
            0
        };
        OdeSystem::new(self.p.shift(-(mw as i64), &-mz.clone()), self.q.shift(-(mw as i64), &-mz))
    }

    /// Lowest exponent and its total coefficient when `w = α z^λ` is substituted
    /// into `Q w' − P`, plus the number of contributing terms.
    pub fn leading_balance(&self, lambda: &Rational, alpha: &Alg, k: &Tower) -> (Rational, Alg, usize) {
        let prof = self.profile();
        let mut contrib: Vec<(Rational, Alg)> = Vec::new();
        for (j, e) in prof.p.iter().enumerate() {
            if let Some(l) = e {
                let c = k.mul(&l.coeff, &k.pow(alpha, j as u64));
                contrib.push((&l.exp + lambda * Rational::from_integer(j.into()), k.neg(&c)));
            }
        }
        for (i, e) in prof.q.iter().enumerate() {
            if let Some(l) = e {
                let c = k.scale_q(&k.mul(&l.coeff, &k.pow(alpha, i as u64 + 1)), lambda);
                let x = &l.exp + lambda * Rational::from_integer((i + 1).into()) - Rational::one();
                contrib.push((x, c));
            }
        }
        let m = contrib.iter().map(|(x, _)| x.clone()).min().expect("nonempty system");
        let mut total = Alg::zero();
        let mut n = 0;
        for (x, c) in &contrib {
            if *x == m {
                total = k.add(&total, c);
                n += 1;
            }
        }
        (m, total, n)
    }

    /// Remainder equation for `w = α z^λ + w₁`.
    pub fn substitute_branch(&self, lambda: &Rational, alpha: &Alg, k: &Tower) -> Result<OdeSystem> {
        let (_, total, n) = self.leading_balance(lambda, alpha, k);
        if alpha.is_zero() || n < 2 || !total.is_zero() || lambda <= &Rational::zero() {
            return Err(Error::Invalid("not an acceptable pair".into()));
        }
        let s = ZSeries::monomial(lambda.clone(), alpha.clone());
        let ds = s.derivative(k);
        let q1 = self.q.shift_w(&s, k);
        let p1 = self.p.shift_w(&s, k).sub(&q1.mul_series(&ds, k), k);
        Ok(OdeSystem::new(p1, q1).strip_monomial_content(false))
    }

    /// `Q(z,s) s' − P(z,s)`.
    pub fn residual(&self, s: &ZSeries, k: &Tower) -> ZSeries {
        let qs = self.q.eval_series(s, k);
        let ps = self.p.eval_series(s, k);
        qs.mul(&s.derivative(k), k).sub(&ps, k)
    }

    /// Lowest exponent of the residual; `None` when it vanishes identically.
    pub fn residual_valuation(&self, s: &ZSeries, k: &Tower) -> Option<Rational> {
        self.residual(s, k).valuation()
    }

    /// Common denominator of all `z` exponents.
    pub fn ramification(&self) -> u64 {
        self.p.ramification().max(self.q.ramification())
    }

    pub fn fmt(&self, k: &Tower) -> String {
        format!("dw/dz = ({}) / ({})", self.p.fmt(k, "z", "w"), self.q.fmt(k, "z", "w"))
    }
}

/// Applies `W = a(w − w0) + b(z − z0)`, `Z = c(z − z0)` to `dw/dz = p/q`,
/// returning the numerator and denominator of `dW/dZ`.
pub fn shear(
    p: &Poly2,
    q: &Poly2,
    point: (&Rational, &Rational),
    abc: (&Rational, &Rational, &Rational),
) -> Result<(Poly2, Poly2)> {
    let (z0, w0) = point;
    let (a, b, c) = abc;
    if a.is_zero() || c.is_zero() {
        return Err(Error::Invalid("degenerate shear".into()));
    }
    let zs = &Poly2::constant(z0.clone()) + &Poly2::z().scale(&c.recip());
    let ws = &Poly2::constant(w0.clone())
        + &(&Poly2::w() - &Poly2::z().scale(&(b / c))).scale(&a.recip());
    let pp = p.compose(&zs, &ws);
    let qq = q.compose(&zs, &ws);
    let num = &pp.scale(a) + &qq.scale(b);
    let den = qq.scale(c);
    Ok((num, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{frac, int};

    fn mu_family(mu: i64) -> OdeSystem {
        let p = Poly2::from_ints(&[(1, 2, 0), (mu, 0, 1)]);
        let q = Poly2::from_ints(&[(1, 1, 0), (1, 0, 2)]);
        OdeSystem::from_poly2(&p, &q).unwrap()
    }

    fn lv(a: i64, b: i64, c: i64) -> OdeSystem {
        // dw/dz = w(bz + w - a) / (z(z + cw - 1))
        let p = Poly2::from_ints(&[(b, 1, 1), (1, 0, 2), (-a, 0, 1)]);
        let q = Poly2::from_ints(&[(1, 2, 0), (c, 1, 1), (-1, 1, 0)]);
        OdeSystem::from_poly2(&p, &q).unwrap()
    }

    #[test]
    fn profile_of_mu_family() {
        let pr = mu_family(0).profile();
        assert_eq!(pr.k(0).unwrap().exp, int(2));
        assert!(pr.k(1).is_none());
        assert_eq!(pr.l(0).unwrap().exp, int(1));
        assert!(pr.l(1).is_none());
        assert_eq!(pr.l(2).unwrap().exp, int(0));
    }

    #[test]
    fn lv_profile_at_origin() {
        let pr = lv(-1, 0, 0).profile();
        assert!(pr.k(0).is_none());
        assert_eq!(pr.k(1).unwrap(), &Lowest { exp: int(0), coeff: Alg::Q(int(1)) });
        assert_eq!(pr.k(2).unwrap().exp, int(0));
        assert_eq!(pr.l(0).unwrap(), &Lowest { exp: int(1), coeff: Alg::Q(int(-1)) });
        assert!(pr.l(1).is_none());
    }

    #[test]
    fn lv_at_infinity_matches_hand_form() {
        let k = Tower::rationals();
        let (a, b, c) = (-1, 2, 3);
        let s = lv(a, b, c).at_infinity(&int(0), &k).unwrap();
        let (p, q) = s.to_poly2().unwrap();
        // -w(bzw + 1 - aw), z(zw + c - w)
        let pe = Poly2::from_ints(&[(-b, 1, 2), (-1, 0, 1), (a, 0, 2)]);
        let qe = Poly2::from_ints(&[(1, 2, 1), (c, 1, 0), (-1, 1, 1)]);
        assert_eq!((p, q), (pe, qe));
    }

    #[test]
    fn lv_translated_to_axis_root() {
        let k = Tower::rationals();
        let (a, b, c) = (-1i64, 3i64, 2i64);
        let s = lv(a, b, c).translate(&int(0), &Alg::Q(int(a)), &k).unwrap();
        let pr = s.profile();
        assert_eq!(pr.k(0).unwrap().exp, int(1));
        assert_eq!(pr.k(0).unwrap().coeff, Alg::Q(int(a * b)));
        assert_eq!(pr.l(0).unwrap().coeff, Alg::Q(int(c * a - 1)));
    }

    #[test]
    fn mu_family_first_remainder() {
        let k = Tower::rationals();
        let r = mu_family(0).substitute_branch(&int(2), &Alg::Q(frac(1, 2)), &k).unwrap();
        let p0 = r.p.slice(0);
        let q0 = r.q.slice(0);
        let (pe, pc) = p0.lowest().unwrap();
        let (qe, qc) = q0.lowest().unwrap();
        assert_eq!((pe.clone(), qe.clone()), (int(5), int(1)));
        // same ratio as 2 z^5 / (-8 z)
        let ratio = k.try_div(pc, qc).unwrap();
        assert_eq!(ratio, Alg::Q(frac(-1, 4)));
        assert!(mu_family(0).substitute_branch(&int(1), &Alg::Q(int(1)), &k).is_err());
    }

    #[test]
    fn mu_family_half_branch_denominator() {
        let k0 = Tower::rationals();
        let mu = -4;
        let m = crate::arith::KPoly::from_qpoly(&crate::arith::QPoly::from_ints(&[9, 0, 1]));
        let (k, theta) = k0.extend(&m, true);
        let r = mu_family(mu).substitute_branch(&frac(1, 2), &theta, &k).unwrap();
        let (qe, _) = r.q.slice(0).lowest().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        assert_eq!(qe, frac(3, 2));
        let (pe, _) = r.p.slice(0).lowest().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        assert!(pe > qe);
    }

    #[test]
    fn residual_of_invariant_line_branch() {
        let k = Tower::rationals();
        let s = ZSeries::from_terms([(int(0), Alg::Q(int(-1))), (int(1), Alg::Q(int(1)))], &k);
        assert_eq!(lv(-1, 0, 0).residual_valuation(&s, &k), None);
    }

    #[test]
    fn identity_shear() {
        let p = Poly2::from_ints(&[(1, 2, 0), (3, 0, 1)]);
        let q = Poly2::from_ints(&[(1, 1, 0), (1, 0, 2)]);
        let (z0, one) = (int(0), int(1));
        let (pp, qq) = shear(&p, &q, (&z0, &z0), (&one, &z0, &one)).unwrap();
        assert_eq!((pp, qq), (p.clone(), q.clone()));
        assert!(shear(&p, &q, (&z0, &z0), (&z0, &z0, &one)).is_err());
    }
}
