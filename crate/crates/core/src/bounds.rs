//! Degree bounds for invariant curves from multiplicities along an invariant line.
//!
//! For `dw/dz = P/(z Q)` the axis `z = 0` is invariant. The `w`-degree of an
//! irreducible invariant curve is bounded by the sum of multiplicities at
//! `(0, ∞)` and at the roots of `P(0, w)`; when none of those points is
//! critical the cruder bound `M (k + 1)` also holds. An arbitrary invariant
//! line is first moved onto the axis.

use num_traits::{One, Zero};

use crate::arith::factor::factor_univariate;
use crate::arith::rational::fmt_rational;
use crate::arith::{KPoly, Poly2, QPoly, Rational, Tower};
use crate::branching::{multiplicity_at, multiplicity_at_alg, CriticalWitness, Multiplicity, MultiplicityResult, Point};
use crate::caps::{CapKind, Caps};
use crate::darboux::{invariant_lines, verify_darboux, DarbouxOutcome, VectorField};
use crate::error::{Error, Result};
use crate::poly_ode::OdeSystem;

/// A singular point on the axis `z = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxisRoot {
    Infinity,
    Rational(Rational),
    /// All roots of an irreducible factor of degree at least two.
    Conjugates(QPoly),
}

impl AxisRoot {
    pub fn label(&self) -> String {
        match self {
            AxisRoot::Infinity => "(0, inf)".into(),
            AxisRoot::Rational(a) => format!("(0, {})", fmt_rational(a)),
            AxisRoot::Conjugates(h) => format!("(0, roots of {})", h.fmt_var("w")),
        }
    }

    /// Number of points represented.
    pub fn count(&self) -> usize {
        match self {
            AxisRoot::Conjugates(h) => h.deg(),
            _ => 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct AxisPoint {
    pub root: AxisRoot,
    pub multiplicity: MultiplicityResult,
}

#[derive(Clone, Debug)]
pub enum BoundValue {
    Value(usize),
    /// Caps were hit somewhere; `lower_bound` is what the finished points add up to.
    Inconclusive { lower_bound: usize, caps: Vec<CapKind> },
    /// A critical point defeats the method.
    Blocked { point: String, witness: CriticalWitness },
}

impl BoundValue {
    pub fn value(&self) -> Option<usize> {
        match self {
            BoundValue::Value(n) => Some(*n),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct AxisBound {
    /// `max(deg P, deg zQ)`.
    pub m: u32,
    /// Number of distinct complex roots of `P(0, w)`.
    pub k: usize,
    pub points: Vec<AxisPoint>,
    /// Bound on `deg_w f` by the sum of multiplicities.
    pub sum_bound: BoundValue,
    /// `M (k + 1)`, only when every point has finite multiplicity.
    pub axis_count_bound: Option<usize>,
}

fn rational_pair(sys: &OdeSystem) -> Result<(Poly2, Poly2)> {
    sys.to_poly2().ok_or_else(|| Error::Invalid("system has non-rational coefficients".into()))
}

/// `∞` followed by the roots of `P(0, w)`, rational ones first.
pub fn axis_singular_points(sys: &OdeSystem) -> Result<Vec<AxisRoot>> {
    let (p, q) = rational_pair(sys)?;
    if q.terms().any(|(&(i, _), _)| i == 0) {
        return Err(Error::Invalid("denominator is not divisible by z".into()));
    }
    let p0 = p.at_z(&Rational::zero());
    if p0.is_zero() {
        return Err(Error::Invalid("axis is not isolated: P(0,w) vanishes identically".into()));
    }
    let mut out = vec![AxisRoot::Infinity];
    if p0.deg() == 0 {
        return Ok(out);
    }
    let mut conj = Vec::new();
    for f in factor_univariate(&p0, p0.deg())? {
        if f.poly.deg() == 1 {
            out.push(AxisRoot::Rational(-f.poly.coeff(0) / f.poly.coeff(1)));
        } else {
            conj.push(AxisRoot::Conjugates(f.poly));
        }
    }
    out.extend(conj);
    Ok(out)
}

/// Multiplicity at a root of the irreducible `h`, redone on the factors if `h` splits.
fn conjugate_multiplicities(sys: &OdeSystem, h: &QPoly, caps: &Caps) -> Result<Vec<(QPoly, MultiplicityResult)>> {
    let (k, gen) = Tower::rationals().extend(&KPoly::from_qpoly(h), false);
    match multiplicity_at_alg(sys, &Rational::zero(), &gen, &k, caps)? {
        Ok(r) => Ok(vec![(h.clone(), r)]),
        Err(split) if split.level == 0 => {
            let mut out = Vec::new();
            for f in split.factors {
                let f = f.as_qpoly().expect("rational split").monic();
                if f.deg() == 1 {
                    let a = -f.coeff(0);
                    out.push((f, multiplicity_at(sys, &Point::Finite(Rational::zero(), a), caps)?));
                } else {
                    out.extend(conjugate_multiplicities(sys, &f, caps)?);
                }
            }
            Ok(out)
        }
        Err(_) => Err(Error::Invalid("unexpected split of an inner extension".into())),
    }
}

fn combine(points: &[AxisPoint]) -> BoundValue {
    let mut total = 0;
    let mut caps: Vec<CapKind> = Vec::new();
    for pt in points {
        match &pt.multiplicity.outcome {
            Multiplicity::Critical(w) => {
                return BoundValue::Blocked { point: pt.root.label(), witness: w.clone() };
            }
            Multiplicity::Finite(n) => total += n * pt.root.count(),
            Multiplicity::Capped { lower_bound, caps: c } => {
                total += lower_bound * pt.root.count();
                caps.extend(c.iter().copied());
            }
        }
    }
    if caps.is_empty() {
        BoundValue::Value(total)
    } else {
        caps.sort_by_key(|c| c.to_string());
        caps.dedup();
        BoundValue::Inconclusive { lower_bound: total, caps }
    }
}

/// Multiplicities along the axis and the two `w`-degree bounds.
pub fn axis_bound(sys: &OdeSystem, caps: &Caps) -> Result<AxisBound> {
    let (p, q) = rational_pair(sys)?;
    let roots = axis_singular_points(sys)?;
    let m = p.degree().max(q.degree());
    let k = roots.iter().filter(|r| **r != AxisRoot::Infinity).map(AxisRoot::count).sum();
    let mut points = Vec::new();
    for root in roots {
        match &root {
            AxisRoot::Infinity => {
                let r = multiplicity_at(sys, &Point::Infinity(Rational::zero()), caps)?;
                points.push(AxisPoint { root, multiplicity: r });
            }
            AxisRoot::Rational(a) => {
                let r = multiplicity_at(sys, &Point::Finite(Rational::zero(), a.clone()), caps)?;
                points.push(AxisPoint { root, multiplicity: r });
            }
            AxisRoot::Conjugates(h) => {
                for (f, r) in conjugate_multiplicities(sys, h, caps)? {
                    let root = if f.deg() == 1 { AxisRoot::Rational(-f.coeff(0)) } else { AxisRoot::Conjugates(f) };
                    points.push(AxisPoint { root, multiplicity: r });
                }
            }
        }
    }
    let sum_bound = combine(&points);
    let all_finite = points.iter().all(|p| p.multiplicity.outcome.finite().is_some());
    let axis_count_bound = all_finite.then(|| m as usize * (k + 1));
    Ok(AxisBound { m, k, points, sum_bound, axis_count_bound })
}

/// A line `a z + b w + c = 0` moved onto the axis.
#[derive(Clone, Debug)]
pub struct LineTransform {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    /// `z` and `w` were exchanged first because `a = 0`.
    pub swapped: bool,
    /// The equation in the new coordinates `z̄ = a z + b w + c`, `w̄ = w`.
    pub system: OdeSystem,
}

impl LineTransform {
    pub fn line(&self) -> Poly2 {
        line_poly(&self.a, &self.b, &self.c)
    }
}

fn line_poly(a: &Rational, b: &Rational, c: &Rational) -> Poly2 {
    &(&Poly2::z().scale(a) + &Poly2::w().scale(b)) + &Poly2::constant(c.clone())
}

pub fn line_transform(sys: &OdeSystem, a: &Rational, b: &Rational, c: &Rational) -> Result<LineTransform> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::Invalid("degenerate line".into()));
    }
    let (p, q) = rational_pair(sys)?;
    let field = VectorField::new(q.clone(), p.clone());
    if let DarbouxOutcome::NotDarboux { remainder } = verify_darboux(&field, &line_poly(a, b, c))? {
        return Err(Error::NotInvariant(remainder.to_string()));
    }
    let swapped = a.is_zero();
    let (p, q, a1, b1) = if swapped { (q.swap(), p.swap(), b.clone(), a.clone()) } else { (p, q, a.clone(), b.clone()) };
    // z = (z̄ − b w̄ − c)/a
    let zs = (&(&Poly2::z() - &Poly2::w().scale(&b1)) - &Poly2::constant(c.clone())).scale(&a1.recip());
    let ws = Poly2::w();
    let pn = p.compose(&zs, &ws);
    let qn = (&q.scale(&a1) + &p.scale(&b1)).compose(&zs, &ws);
    let system = OdeSystem::from_poly2(&pn, &qn)?;
    Ok(LineTransform { a: a.clone(), b: b.clone(), c: c.clone(), swapped, system })
}

#[derive(Clone, Debug)]
pub struct LineBound {
    pub transform: LineTransform,
    /// Maximal degree of the original vector field.
    pub m: u32,
    pub axis: AxisBound,
    /// `M (M + 1)` on the total degree, or why it is unavailable.
    pub line_bound: BoundValue,
}

pub fn line_bound(sys: &OdeSystem, a: &Rational, b: &Rational, c: &Rational, caps: &Caps) -> Result<LineBound> {
    let (p, q) = rational_pair(sys)?;
    let m = p.degree().max(q.degree());
    let transform = line_transform(sys, a, b, c)?;
    let axis = axis_bound(&transform.system, caps)?;
    let line_bound = match combine(&axis.points) {
        BoundValue::Value(_) => BoundValue::Value(m as usize * (m as usize + 1)),
        BoundValue::Inconclusive { caps, .. } => BoundValue::Inconclusive { lower_bound: 0, caps },
        blocked => blocked,
    };
    Ok(LineBound { transform, m, axis, line_bound })
}

/// An invariant line `a z + b w + c = 0` with first nonzero coefficient 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl Line {
    pub fn poly(&self) -> Poly2 {
        line_poly(&self.a, &self.b, &self.c)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DetectedLines {
    pub lines: Vec<Line>,
    /// Conjugate families of lines with irrational coefficients, as rational products.
    pub families: Vec<Poly2>,
    /// Infinitely many invariant lines.
    pub dicritical: bool,
    /// Lines with irrational slope exist and are not listed.
    pub irrational_slopes: bool,
}

pub fn detect_invariant_lines(sys: &OdeSystem) -> Result<DetectedLines> {
    let (p, q) = rational_pair(sys)?;
    let found = invariant_lines(&VectorField::new(q, p));
    let mut out = DetectedLines { dicritical: found.pencil, irrational_slopes: found.irrational_slopes, ..Default::default() };
    for f in found.lines {
        if f.degree() != 1 {
            out.families.push(f);
            continue;
        }
        let (a, b, c) = (f.coeff(1, 0), f.coeff(0, 1), f.coeff(0, 0));
        let lead = if a.is_zero() { b.clone() } else { a.clone() };
        let s = Rational::one() / lead;
        out.lines.push(Line { a: a * &s, b: b * &s, c: c * &s });
    }
    Ok(out)
}
