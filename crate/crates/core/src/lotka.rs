//! The Lotka–Volterra family `ż = z(z + c w − 1)`, `ẇ = w(b z + w − a)`.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::rational::fmt_rational;
use crate::arith::{Poly2, Rational};
use crate::bounds::{axis_bound, BoundValue};
use crate::caps::Caps;
use crate::darboux::{search_darboux, verify_darboux, DarbouxCertificate, DarbouxOutcome, DarbouxSearch, VectorField, EXTACTIC_DIM_CAP};
use crate::error::{Error, Result};
use crate::poly_ode::OdeSystem;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LvParams {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl LvParams {
    pub fn new(a: Rational, b: Rational, c: Rational) -> LvParams {
        LvParams { a, b, c }
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> LvParams {
        let r = |n: i64| Rational::from_integer(n.into());
        LvParams::new(r(a), r(b), r(c))
    }

    pub fn label(&self) -> String {
        format!("({}, {}, {})", fmt_rational(&self.a), fmt_rational(&self.b), fmt_rational(&self.c))
    }

    pub fn field(&self) -> VectorField {
        let z = Poly2::z();
        let w = Poly2::w();
        let one = Poly2::one();
        let zdot = &z * &(&(&z + &w.scale(&self.c)) - &one);
        let wdot = &w * &(&(&z.scale(&self.b) + &w) - &Poly2::constant(self.a.clone()));
        VectorField::new(zdot, wdot)
    }

    /// `dw/dz = w(bz + w − a) / (z(z + cw − 1))`.
    pub fn system(&self) -> Result<OdeSystem> {
        let f = self.field();
        OdeSystem::from_poly2(&f.wdot, &f.zdot)
    }

    /// `a(1 − c) + (1 − b)`; zero exactly when the line `a(z − 1) + w` is invariant.
    pub fn line_condition(&self) -> Rational {
        &self.a * (Rational::one() - &self.c) + (Rational::one() - &self.b)
    }

    /// `a(z − 1) + w`.
    pub fn candidate_line(&self) -> Poly2 {
        &(&Poly2::z() - &Poly2::one()).scale(&self.a) + &Poly2::w()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClauseVerdict {
    Holds,
    Violated,
    Undefined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenericityCheck {
    /// `a` is not a positive rational.
    pub a_not_positive: ClauseVerdict,
    /// `c` is not a negative rational.
    pub c_not_negative: ClauseVerdict,
    /// `c − 1/a` is not a positive rational other than 1.
    pub c_minus_inverse_a: ClauseVerdict,
}

impl GenericityCheck {
    pub fn holds(&self) -> bool {
        [self.a_not_positive, self.c_not_negative, self.c_minus_inverse_a].iter().all(|v| *v == ClauseVerdict::Holds)
    }

    pub fn violated(&self) -> Vec<String> {
        [
            ("a-not-positive", self.a_not_positive),
            ("c-not-negative", self.c_not_negative),
            ("c-minus-inverse-a", self.c_minus_inverse_a),
        ]
        .iter()
        .filter(|(_, v)| *v != ClauseVerdict::Holds)
        .map(|(n, _)| n.to_string())
        .collect()
    }
}

fn verdict(ok: bool) -> ClauseVerdict {
    if ok {
        ClauseVerdict::Holds
    } else {
        ClauseVerdict::Violated
    }
}

pub fn genericity_check(p: &LvParams) -> GenericityCheck {
    let third = if p.a.is_zero() {
        ClauseVerdict::Undefined
    } else {
        let d = &p.c - p.a.recip();
        verdict(!d.is_positive() || d.is_one())
    };
    GenericityCheck { a_not_positive: verdict(!p.a.is_positive()), c_not_negative: verdict(!p.c.is_negative()), c_minus_inverse_a: third }
}

#[derive(Clone, Debug)]
pub enum LvVerdict {
    Inapplicable { violated: Vec<String> },
    StrictCurve { certificate: DarbouxCertificate },
    /// No strict curve; the search ran up to `searched_degree`.
    NoStrictCurve { sum_bound: BoundValue, searched_degree: u32, search: DarbouxSearch },
}

#[derive(Clone, Debug)]
pub struct LvReport {
    pub params: LvParams,
    pub genericity: GenericityCheck,
    pub line_condition: Rational,
    pub verdict: LvVerdict,
}

pub fn classify(p: &LvParams, caps: &Caps) -> Result<LvReport> {
    let genericity = genericity_check(p);
    let line_condition = p.line_condition();
    let verdict = if !genericity.holds() {
        LvVerdict::Inapplicable { violated: genericity.violated() }
    } else if line_condition.is_zero() {
        match verify_darboux(&p.field(), &p.candidate_line())? {
            DarbouxOutcome::Certificate(certificate) => LvVerdict::StrictCurve { certificate },
            DarbouxOutcome::NotDarboux { remainder } => return Err(Error::NotInvariant(remainder.to_string())),
        }
    } else {
        let bound = axis_bound(&p.system()?, caps)?;
        let searched_degree = bound.sum_bound.value().unwrap_or(1).clamp(1, 3) as u32;
        let search = search_darboux(&p.field(), searched_degree, EXTACTIC_DIM_CAP)?;
        LvVerdict::NoStrictCurve { sum_bound: bound.sum_bound, searched_degree, search }
    };
    Ok(LvReport { params: p.clone(), genericity, line_condition, verdict })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Symmetry {
    /// `(z, w) ↦ (w/a, z/a)`, parameters `(1/a, c, b)`.
    Exchange,
    /// `(z, w) ↦ (1/z, (1 − c) w/z)`, parameters `(1 − b, 1 − a, c/(c − 1))`.
    Inversion,
}

/// New coordinates `(Z, W) = (z_num/den, w_num/den)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateMap {
    pub z_num: Poly2,
    pub w_num: Poly2,
    pub den: Poly2,
}

impl CoordinateMap {
    pub fn describe(&self) -> String {
        let part = |n: &Poly2| {
            if self.den.is_constant() {
                n.scale(&self.den.coeff(0, 0).recip()).to_string()
            } else if n.terms().count() > 1 {
                format!("({n})/{}", self.den)
            } else {
                format!("{n}/{}", self.den)
            }
        };
        format!("(z, w) -> ({}, {})", part(&self.z_num), part(&self.w_num))
    }

    /// Numerator of `F(Z, W)` over the common denominator `den^deg F`.
    fn pull_back(&self, f: &Poly2) -> Poly2 {
        let d = f.degree();
        let mut out = Poly2::zero();
        for (&(i, j), c) in f.terms() {
            let t = &(&self.z_num.pow(i) * &self.w_num.pow(j)) * &self.den.pow(d - i - j);
            out = &out + &t.scale(c);
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct SymmetryImage {
    pub params: LvParams,
    pub map: CoordinateMap,
}

pub fn apply_symmetry(p: &LvParams, which: Symmetry) -> Result<SymmetryImage> {
    let one = Rational::one();
    match which {
        Symmetry::Exchange => {
            if p.a.is_zero() {
                return Err(Error::Invalid("exchange symmetry requires a ≠ 0".into()));
            }
            let params = LvParams::new(p.a.recip(), p.c.clone(), p.b.clone());
            let map = CoordinateMap { z_num: Poly2::w(), w_num: Poly2::z(), den: Poly2::constant(p.a.clone()) };
            Ok(SymmetryImage { params, map })
        }
        Symmetry::Inversion => {
            if p.c.is_one() {
                return Err(Error::Invalid("inversion symmetry requires c ≠ 1".into()));
            }
            let params = LvParams::new(&one - &p.b, &one - &p.a, &p.c / (&p.c - &one));
            let map = CoordinateMap { z_num: Poly2::one(), w_num: Poly2::w().scale(&(&one - &p.c)), den: Poly2::z() };
            Ok(SymmetryImage { params, map })
        }
    }
}

/// Whether `map` carries the field `from` onto a multiple of `to`, as an exact identity.
pub fn orbitally_equivalent(from: &VectorField, to: &VectorField, map: &CoordinateMap) -> bool {
    let d = &map.den;
    let xd = from.apply(d);
    let zdot = &(&from.apply(&map.z_num) * d) - &(&map.z_num * &xd);
    let wdot = &(&from.apply(&map.w_num) * d) - &(&map.w_num * &xd);
    let target_z = map.pull_back(&to.zdot);
    let target_w = map.pull_back(&to.wdot);
    // pull-backs carry den^deg; equalize before comparing
    let (dz, dw) = (to.zdot.degree(), to.wdot.degree());
    let (target_z, target_w) = if dz >= dw {
        (target_z, &target_w * &d.pow(dz - dw))
    } else {
        (&target_z * &d.pow(dw - dz), target_w)
    };
    if target_z.is_zero() && target_w.is_zero() {
        return false;
    }
    (&(&zdot * &target_w) - &(&wdot * &target_z)).is_zero()
}
