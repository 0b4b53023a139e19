//! Iterated Newton-polygon expansion of local algebraic solutions and the
//! multiplicity drivers built on it.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::rational::fmt_rational;
use crate::arith::{Alg, KPoly, Rational, Split, Tower, TowerError};
use crate::caps::{CapKind, Caps};
use crate::error::{ArithError, Result};
use crate::newton::{self, VertexVerdict};
use crate::poly_ode::bipoly::fmt_terms;
use crate::poly_ode::{OdeSystem, ZSeries};

/// Number of terms shown for a closed branch.
pub const DISPLAY_TERMS: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BranchStatus {
    /// The continuation is a uniquely determined formal series.
    ClosedUnique,
    /// A free coefficient enters: a one-parameter family.
    CriticalFamily,
    /// The prefix admits no continuation.
    NonAlgebraic,
    CapExceeded(CapKind),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessRule {
    /// Merged support point strictly below the rest of the diagram.
    VertexDominance,
    /// Same test on the remainder equation of a uniquely continued branch.
    Resonance,
}

#[derive(Clone, Debug)]
pub struct CriticalWitness {
    pub rule: WitnessRule,
    pub lambda: Rational,
    /// Number of substitutions before the test fired.
    pub step: usize,
    pub prefix: Vec<(Rational, Alg)>,
    pub tower: Tower,
}

#[derive(Clone, Debug)]
pub struct Branch {
    /// Exponent–coefficient pairs at the origin of the transformed system.
    pub terms: Vec<(Rational, Alg)>,
    pub tower: Tower,
    /// Number of conjugate branches represented.
    pub conjugacy: usize,
    pub status: BranchStatus,
    /// Multiplicity of the last coefficient as a root of its edge polynomial.
    pub folded: usize,
    /// The listed terms are an exact solution.
    pub exact: bool,
    /// Number of terms fixed by the expansion before display continuation.
    pub determined: usize,
}

impl Branch {
    pub fn series(&self) -> ZSeries {
        ZSeries::from_terms(self.terms.iter().cloned(), &self.tower)
    }

    pub fn truncated(&self, n: usize) -> ZSeries {
        ZSeries::from_terms(self.terms.iter().take(n).cloned(), &self.tower)
    }

    pub fn ramification(&self) -> u64 {
        self.terms
            .iter()
            .fold(num_bigint::BigInt::one(), |a, (e, _)| a.lcm(e.denom()))
            .try_into()
            .unwrap_or(u64::MAX)
    }

    pub fn fmt(&self, var: &str) -> String {
        fmt_terms(self.terms.iter().cloned(), &self.tower, var)
    }

    fn sort_key(&self) -> (Rational, usize, String) {
        let first = self.terms.first().map(|t| t.0.clone()).unwrap_or_else(Rational::zero);
        (first, self.conjugacy, self.fmt("z"))
    }
}

#[derive(Clone, Debug, Default)]
pub struct BranchTree {
    pub branches: Vec<Branch>,
    pub critical: Option<CriticalWitness>,
    pub flags: BTreeSet<String>,
}

struct Ctx<'a> {
    caps: &'a Caps,
    out: Vec<Branch>,
    critical: Option<CriticalWitness>,
    flags: BTreeSet<String>,
}

struct Node<'a> {
    sys: &'a OdeSystem,
    k: &'a Tower,
    prefix: &'a [(Rational, Alg)],
    floor: Rational,
    /// `None` at the root.
    folded: Option<usize>,
    conj: usize,
    depth: usize,
}

impl Ctx<'_> {
    fn leaf(&mut self, n: &Node, status: BranchStatus, exact: bool) {
        self.out.push(Branch {
            terms: n.prefix.to_vec(),
            tower: n.k.clone(),
            conjugacy: n.conj,
            status,
            folded: n.folded.unwrap_or(0),
            exact,
            determined: n.prefix.len(),
        });
    }

    fn expand(&mut self, n: &Node) -> std::result::Result<(), Split> {
        if self.critical.is_some() {
            return Ok(());
        }
        if n.depth > self.caps.depth {
            self.leaf(n, BranchStatus::CapExceeded(CapKind::Depth), false);
            return Ok(());
        }
        let profile = n.sys.profile();
        if n.folded == Some(1) && !self.resonant(n, &profile)? {
            let (more, exact) = extend_unique(n.sys, n.k, &n.floor, DISPLAY_TERMS.saturating_sub(n.prefix.len()));
            let mut terms = n.prefix.to_vec();
            terms.extend(more);
            self.out.push(Branch {
                terms,
                tower: n.k.clone(),
                conjugacy: n.conj,
                status: BranchStatus::ClosedUnique,
                folded: 1,
                exact,
                determined: n.prefix.len(),
            });
            return Ok(());
        }
        let mut produced = false;
        if n.folded.is_some() && n.sys.zero_is_solution() {
            self.leaf(n, BranchStatus::ClosedUnique, true);
            produced = true;
        }
        let d = newton::lower_hull(newton::support_points(&profile));
        match newton::vertex_critical_check(&d, &n.floor, n.k) {
            VertexVerdict::Critical { lambda, .. } => {
                let rule = if n.folded == Some(1) { WitnessRule::Resonance } else { WitnessRule::VertexDominance };
                self.critical = Some(CriticalWitness {
                    rule,
                    lambda,
                    step: n.depth,
                    prefix: n.prefix.to_vec(),
                    tower: n.k.clone(),
                });
                self.leaf(n, BranchStatus::CriticalFamily, false);
                return Ok(());
            }
            VertexVerdict::NotCritical { irrational_ratios } => {
                if !irrational_ratios.is_empty() {
                    self.flags.insert("dicritical-suspect".into());
                }
            }
        }
        for edge in d.edges.iter().filter(|e| e.admissible() && e.lambda > n.floor) {
            let phi = newton::edge_char_poly(&d, edge, n.k);
            let factors = match phi.factor_over(n.k, self.caps.factor_degree) {
                Ok(f) => f,
                Err(TowerError::Split(s)) => return Err(s),
                Err(TowerError::Arith(_)) => {
                    self.leaf(n, BranchStatus::CapExceeded(CapKind::FactorDegree), false);
                    produced = true;
                    continue;
                }
            };
            for f in factors {
                if f.poly.deg() == 1 && f.poly.coeff(0).is_zero() {
                    continue;
                }
                produced = true;
                self.child(n, &edge.lambda, &f.poly, f.multiplicity, f.certified)?;
            }
        }
        if !produced && n.folded.is_some() {
            self.leaf(n, BranchStatus::NonAlgebraic, false);
        }
        Ok(())
    }

    /// Indicial ratio of a uniquely continued node lies in `(floor, ∞) ∩ Q⁺`.
    fn resonant(&mut self, n: &Node, profile: &crate::poly_ode::CoeffProfile) -> std::result::Result<bool, Split> {
        let (Some(k1), Some(l0)) = (profile.k(1), profile.l(0)) else { return Ok(false) };
        if k1.exp != &l0.exp - Rational::one() {
            return Ok(false);
        }
        let rho = n.k.try_div(&k1.coeff, &l0.coeff)?;
        Ok(matches!(rho.as_rational(), Some(r) if r.is_positive() && *r > n.floor))
    }

    fn child(
        &mut self,
        n: &Node,
        lambda: &Rational,
        g: &KPoly,
        mult: usize,
        certified: bool,
    ) -> std::result::Result<(), Split> {
        let ram = n
            .prefix
            .iter()
            .map(|(e, _)| e.denom().clone())
            .fold(lambda.denom().clone(), |a, d| a.lcm(&d));
        let deg = g.deg();
        let over_ram = ram > num_bigint::BigInt::from(self.caps.ramification);
        let over_tower = deg >= 2 && n.k.degree() * deg > self.caps.tower;
        if over_ram || over_tower {
            let kind = if over_ram { CapKind::Ramification } else { CapKind::Tower };
            let mut terms = n.prefix.to_vec();
            if deg == 1 {
                terms.push((lambda.clone(), n.k.neg(&g.coeff(0))));
            }
            self.out.push(Branch {
                determined: terms.len(),
                terms,
                tower: n.k.clone(),
                conjugacy: n.conj * deg,
                status: BranchStatus::CapExceeded(kind),
                folded: mult,
                exact: false,
            });
            return Ok(());
        }
        if deg == 1 {
            let g = g.monic(n.k)?;
            let alpha = n.k.neg(&g.coeff(0));
            return self.descend(n, n.k, lambda, alpha, mult, n.conj);
        }
        let level = n.k.depth();
        let (k2, theta) = n.k.extend(g, certified);
        let mark = (self.out.len(), self.critical.clone(), self.flags.clone());
        match self.descend(n, &k2, lambda, theta, mult, n.conj * deg) {
            Err(s) if s.level == level => {
                self.out.truncate(mark.0);
                self.critical = mark.1;
                self.flags = mark.2;
                for f in &s.factors {
                    self.child(n, lambda, f, mult, false)?;
                }
                Ok(())
            }
            other => other,
        }
    }

    fn descend(
        &mut self,
        n: &Node,
        k: &Tower,
        lambda: &Rational,
        alpha: Alg,
        mult: usize,
        conj: usize,
    ) -> std::result::Result<(), Split> {
        let sys = n
            .sys
            .substitute_branch(lambda, &alpha, k)
            .expect("edge roots are acceptable pairs");
        let mut prefix = n.prefix.to_vec();
        prefix.push((lambda.clone(), alpha));
        self.expand(&Node {
            sys: &sys,
            k,
            prefix: &prefix,
            floor: lambda.clone(),
            folded: Some(mult),
            conj,
            depth: n.depth + 1,
        })
    }
}

/// Continues a uniquely determined branch by at most `max_terms` terms.
/// Returns the new terms and whether the result is an exact solution.
pub fn extend_unique(sys: &OdeSystem, k: &Tower, floor: &Rational, max_terms: usize) -> (Vec<(Rational, Alg)>, bool) {
    let mut sys = sys.clone();
    let mut floor = floor.clone();
    let mut out = Vec::new();
    loop {
        if sys.zero_is_solution() {
            return (out, true);
        }
        if out.len() >= max_terms {
            return (out, false);
        }
        let d = newton::diagram(&sys.profile());
        let Some(edge) = d.edges.iter().find(|e| e.admissible() && e.lambda > floor) else {
            return (out, false);
        };
        if edge.left.0 != 0 || edge.width() != 1 {
            return (out, false);
        }
        let phi = newton::edge_char_poly(&d, edge, k);
        if phi.deg() != 1 {
            return (out, false);
        }
        let Ok(alpha) = k.try_div(&k.neg(&phi.coeff(0)), &phi.coeff(1)) else {
            return (out, false);
        };
        let Ok(next) = sys.substitute_branch(&edge.lambda, &alpha, k) else {
            return (out, false);
        };
        floor = edge.lambda.clone();
        out.push((floor.clone(), alpha));
        sys = next;
    }
}

/// Expands all local algebraic solutions at the origin of `sys`, whose
/// coefficients live in `k`. The solution `w ≡ 0` is never listed.
pub fn expand_branches(sys: &OdeSystem, k: &Tower, caps: &Caps) -> std::result::Result<BranchTree, Split> {
    let mut ctx = Ctx { caps, out: Vec::new(), critical: None, flags: BTreeSet::new() };
    ctx.expand(&Node { sys, k, prefix: &[], floor: Rational::zero(), folded: None, conj: 1, depth: 0 })?;
    let mut branches = ctx.out;
    branches.sort_by_key(|b| b.sort_key());
    Ok(BranchTree { branches, critical: ctx.critical, flags: ctx.flags })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Point {
    Finite(Rational, Rational),
    /// `(z0, ∞)`.
    Infinity(Rational),
}

impl Point {
    pub fn label(&self) -> String {
        match self {
            Point::Finite(z, w) => format!("({}, {})", fmt_rational(z), fmt_rational(w)),
            Point::Infinity(z) => format!("({}, inf)", fmt_rational(z)),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Multiplicity {
    Finite(usize),
    Critical(CriticalWitness),
    /// Caps were hit; `lower_bound` closed branches were found.
    Capped { lower_bound: usize, caps: Vec<CapKind> },
}

impl Multiplicity {
    pub fn finite(&self) -> Option<usize> {
        match self {
            Multiplicity::Finite(n) => Some(*n),
            _ => None,
        }
    }

    pub fn is_critical(&self) -> bool {
        matches!(self, Multiplicity::Critical(_))
    }
}

#[derive(Clone, Debug)]
pub struct MultiplicityResult {
    pub outcome: Multiplicity,
    pub tree: BranchTree,
    /// The equation after moving the point to the origin.
    pub local: OdeSystem,
    pub tower: Tower,
}

/// Summarizes a tree: closed branches counted with conjugacy.
pub fn summarize(tree: BranchTree, local: OdeSystem, tower: Tower) -> MultiplicityResult {
    let outcome = if let Some(w) = &tree.critical {
        Multiplicity::Critical(w.clone())
    } else {
        let count: usize = tree
            .branches
            .iter()
            .filter(|b| b.status == BranchStatus::ClosedUnique)
            .map(|b| b.conjugacy)
            .sum();
        let caps: BTreeSet<String> = tree
            .branches
            .iter()
            .filter_map(|b| match b.status {
                BranchStatus::CapExceeded(c) => Some(c.to_string()),
                _ => None,
            })
            .collect();
        if caps.is_empty() {
            Multiplicity::Finite(count)
        } else {
            let mut kinds: Vec<CapKind> = tree
                .branches
                .iter()
                .filter_map(|b| match b.status {
                    BranchStatus::CapExceeded(c) => Some(c),
                    _ => None,
                })
                .collect();
            kinds.sort_by_key(|c| c.to_string());
            kinds.dedup();
            Multiplicity::Capped { lower_bound: count, caps: kinds }
        }
    };
    MultiplicityResult { outcome, tree, local, tower }
}

/// Multiplicity at a point with rational coordinates (or at `(z0, ∞)`).
pub fn multiplicity_at(sys: &OdeSystem, point: &Point, caps: &Caps) -> Result<MultiplicityResult> {
    let k = Tower::rationals();
    let local = match point {
        Point::Finite(z0, w0) => sys.translate(z0, &Alg::Q(w0.clone()), &k)?,
        Point::Infinity(z0) => sys.at_infinity(z0, &k)?,
    };
    let tree = expand_branches(&local, &k, caps).map_err(|_| ArithError::DivisionByZero)?;
    Ok(summarize(tree, local, k))
}

/// Multiplicity at `(z0, w0)` with `w0` in the tower `k`.
pub fn multiplicity_at_alg(
    sys: &OdeSystem,
    z0: &Rational,
    w0: &Alg,
    k: &Tower,
    caps: &Caps,
) -> Result<std::result::Result<MultiplicityResult, Split>> {
    let local = sys.translate(z0, w0, k)?;
    Ok(expand_branches(&local, k, caps).map(|tree| summarize(tree, local, k.clone())))
}

/// Residual valuations of a branch truncated at `orders` terms, against the local system.
pub fn residual_profile(local: &OdeSystem, b: &Branch, orders: std::ops::RangeInclusive<usize>) -> Vec<Option<Rational>> {
    orders.map(|t| local.residual_valuation(&b.truncated(t), &b.tower)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{frac, int};
    use crate::arith::Poly2;

    fn mu_family(mu: Rational) -> OdeSystem {
        let p = &Poly2::from_ints(&[(1, 2, 0)]) + &Poly2::monomial(mu, 0, 1);
        let q = Poly2::from_ints(&[(1, 1, 0), (1, 0, 2)]);
        OdeSystem::from_poly2(&p, &q).unwrap()
    }

    fn origin(mu: Rational) -> MultiplicityResult {
        multiplicity_at(&mu_family(mu), &Point::Finite(int(0), int(0)), &Caps::default()).unwrap()
    }

    #[test]
    fn mu_family_mu_zero_has_three() {
        let r = origin(int(0));
        assert_eq!(r.outcome.finite(), Some(3));
        let b = &r.tree.branches;
        assert_eq!(b.len(), 2);
        assert_eq!(b[0].terms[0].0, frac(1, 2));
        assert_eq!(b[0].conjugacy, 2);
        assert_eq!(b[1].terms[0], (int(2), Alg::Q(frac(1, 2))));
        assert_eq!(b[1].terms[1], (int(5), Alg::Q(frac(-1, 20))));
        assert_eq!(b[0].terms[1], (int(2), Alg::Q(int(-1))));
    }

    #[test]
    fn mu_family_critical_cases() {
        let step = |mu| match origin(mu).outcome {
            Multiplicity::Critical(w) => Some((w.step, w.lambda)),
            _ => None,
        };
        assert_eq!(step(frac(3, 2)), Some((0, frac(3, 2))));
        assert_eq!(step(int(3)), Some((1, int(3))));
        assert_eq!(step(frac(7, 2)), Some((1, frac(7, 2))));
        assert_eq!(step(frac(17, 2)), Some((3, frac(17, 2))));
    }

    #[test]
    fn mu_family_mu_minus_four_in_extension() {
        let r = origin(int(-4));
        assert_eq!(r.outcome.finite(), Some(3));
        let half = r.tree.branches.iter().find(|b| b.terms[0].0 == frac(1, 2)).unwrap();
        assert_eq!(half.tower.describe()[0].1, "t1^2 + 9");
    }

    #[test]
    fn mu_family_mu_five_non_algebraic_branch() {
        let r = origin(int(5));
        assert_eq!(r.outcome.finite(), Some(2));
        assert!(r.tree.branches.iter().any(|b| b.status == BranchStatus::NonAlgebraic));
    }

    #[test]
    fn regular_points() {
        let s = mu_family(int(0));
        let caps = Caps::default();
        let r = multiplicity_at(&s, &Point::Finite(int(1), int(1)), &caps).unwrap();
        assert_eq!(r.outcome.finite(), Some(1));
        // dw/dz = w: the constant solution w = 0 through (1, 0) is not counted
        let t = OdeSystem::from_poly2(&Poly2::w(), &Poly2::one()).unwrap();
        let r = multiplicity_at(&t, &Point::Finite(int(1), int(0)), &caps).unwrap();
        assert_eq!(r.outcome.finite(), Some(0));
    }

    #[test]
    fn residuals_grow() {
        let r = origin(int(0));
        for b in &r.tree.branches {
            let v = residual_profile(&r.local, b, 1..=b.terms.len());
            for w in v.windows(2) {
                match (&w[0], &w[1]) {
                    (Some(a), Some(b)) => assert!(b > a),
                    (None, x) => assert!(x.is_none()),
                    _ => {}
                }
            }
        }
    }
}
