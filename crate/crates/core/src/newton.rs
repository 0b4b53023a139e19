//! Newton diagrams of `Q w' = P`: support points, lower hull, edge
//! characteristic polynomials and the vertex criticality test.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::arith::{Alg, KPoly, Rational, Tower};
use crate::poly_ode::CoeffProfile;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Origin {
    P,
    Q,
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportPoint {
    pub x: u32,
    pub y: Rational,
    pub origin: Origin,
    /// Lowest coefficient of `P_x` when the point comes from `P`.
    pub p: Option<Alg>,
    /// Lowest coefficient of `Q_{x-1}` when the point comes from `Q`.
    pub q: Option<Alg>,
}

#[derive(Clone, Debug)]
pub struct Edge {
    pub left: (u32, Rational),
    pub right: (u32, Rational),
    /// Minus the slope.
    pub lambda: Rational,
    /// Indices into the diagram's points lying on this edge.
    pub on_edge: Vec<usize>,
}

impl Edge {
    pub fn width(&self) -> u32 {
        self.right.0 - self.left.0
    }

    pub fn admissible(&self) -> bool {
        self.lambda.is_positive()
    }
}

#[derive(Clone, Debug)]
pub struct NewtonDiagram {
    pub points: Vec<SupportPoint>,
    /// Hull vertices left to right.
    pub vertices: Vec<(u32, Rational)>,
    pub edges: Vec<Edge>,
}

/// Points `(j, k_j)` from `P` and `(i+1, l_i − 1)` from `Q`, merged when they coincide.
pub fn support_points(profile: &CoeffProfile) -> Vec<SupportPoint> {
    let mut pts: Vec<SupportPoint> = Vec::new();
    for (j, e) in profile.p.iter().enumerate() {
        if let Some(l) = e {
            pts.push(SupportPoint { x: j as u32, y: l.exp.clone(), origin: Origin::P, p: Some(l.coeff.clone()), q: None });
        }
    }
    for (i, e) in profile.q.iter().enumerate() {
        if let Some(l) = e {
            let x = i as u32 + 1;
            let y = &l.exp - Rational::from_integer(1.into());
            if let Some(pt) = pts.iter_mut().find(|pt| pt.x == x && pt.y == y) {
                pt.origin = Origin::Both;
                pt.q = Some(l.coeff.clone());
            } else {
                pts.push(SupportPoint { x, y, origin: Origin::Q, p: None, q: Some(l.coeff.clone()) });
            }
        }
    }
    pts.sort_by(|a, b| a.x.cmp(&b.x).then_with(|| a.y.cmp(&b.y)));
    pts
}

fn cross(o: &(u32, Rational), a: &(u32, Rational), b: &(u32, Rational)) -> Rational {
    let dx1 = Rational::from_integer((a.0 as i64 - o.0 as i64).into());
    let dx2 = Rational::from_integer((b.0 as i64 - o.0 as i64).into());
    dx1 * (&b.1 - &o.1) - (&a.1 - &o.1) * dx2
}

/// Lower convex hull of the support points.
pub fn lower_hull(points: Vec<SupportPoint>) -> NewtonDiagram {
    let mut lowest: Vec<(u32, Rational)> = Vec::new();
    for p in &points {
        match lowest.last() {
            Some((x, _)) if *x == p.x => {}
            _ => lowest.push((p.x, p.y.clone())),
        }
    }
    let mut hull: Vec<(u32, Rational)> = Vec::new();
    for p in lowest {
        while hull.len() >= 2 && cross(&hull[hull.len() - 2], &hull[hull.len() - 1], &p) <= Rational::zero() {
            hull.pop();
        }
        hull.push(p);
    }
    let edges = hull
        .windows(2)
        .map(|w| {
            let (l, r) = (&w[0], &w[1]);
            let lambda = (&l.1 - &r.1) / Rational::from_integer(((r.0 - l.0) as i64).into());
            let c = &l.1 + &lambda * Rational::from_integer((l.0 as i64).into());
            let on_edge = points
                .iter()
                .enumerate()
                .filter(|(_, p)| &p.y + &lambda * Rational::from_integer((p.x as i64).into()) == c)
                .map(|(i, _)| i)
                .collect();
            Edge { left: l.clone(), right: r.clone(), lambda, on_edge }
        })
        .collect();
    NewtonDiagram { points, vertices: hull, edges }
}

pub fn diagram(profile: &CoeffProfile) -> NewtonDiagram {
    lower_hull(support_points(profile))
}

/// `φ(α) = Σ_Q q λ α^x − Σ_P p α^x` over the points on `edge`.
pub fn edge_char_poly(d: &NewtonDiagram, edge: &Edge, k: &Tower) -> KPoly {
    let mut cs = vec![Alg::zero(); edge.right.0 as usize + 1];
    for &i in &edge.on_edge {
        let pt = &d.points[i];
        let x = pt.x as usize;
        if let Some(q) = &pt.q {
            cs[x] = k.add(&cs[x], &k.scale_q(q, &edge.lambda));
        }
        if let Some(p) = &pt.p {
            cs[x] = k.sub(&cs[x], p);
        }
    }
    KPoly::new(cs)
}

/// Outcome of the vertex test on one diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexVerdict {
    NotCritical {
        /// Merged points whose ratio `p/q` is not rational.
        irrational_ratios: Vec<u32>,
    },
    Critical { x: u32, lambda: Rational },
}

/// Looks for a merged point with `λ* = p/q` rational, above `floor`, and
/// strictly dominated: `y' + λ* x' > y + λ* x` for every other point.
pub fn vertex_critical_check(d: &NewtonDiagram, floor: &Rational, k: &Tower) -> VertexVerdict {
    let mut irrational = Vec::new();
    for (idx, pt) in d.points.iter().enumerate() {
        if pt.origin != Origin::Both {
            continue;
        }
        let (p, q) = (pt.p.as_ref().unwrap(), pt.q.as_ref().unwrap());
        let ratio = match (p.as_rational(), q.as_rational()) {
            (Some(p), Some(q)) => p / q,
            _ => match k.try_div(p, q) {
                Ok(Alg::Q(r)) => r,
                _ => {
                    irrational.push(pt.x);
                    continue;
                }
            },
        };
        if ratio <= *floor || !ratio.is_positive() {
            continue;
        }
        let at = |p: &SupportPoint| &p.y + &ratio * Rational::from_integer((p.x as i64).into());
        let own = at(pt);
        if d.points.iter().enumerate().all(|(j, other)| j == idx || at(other) > own) {
            return VertexVerdict::Critical { x: pt.x, lambda: ratio };
        }
    }
    VertexVerdict::NotCritical { irrational_ratios: irrational }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{frac, int};
    use crate::arith::Poly2;
    use crate::poly_ode::OdeSystem;

    fn mu_family(mu: Rational) -> OdeSystem {
        let p = &Poly2::from_ints(&[(1, 2, 0)]) + &Poly2::monomial(mu, 0, 1);
        let q = Poly2::from_ints(&[(1, 1, 0), (1, 0, 2)]);
        OdeSystem::from_poly2(&p, &q).unwrap()
    }

    fn coords(d: &NewtonDiagram) -> Vec<(u32, Rational, Origin)> {
        d.points.iter().map(|p| (p.x, p.y.clone(), p.origin)).collect()
    }

    #[test]
    fn mu_family_polygon() {
        let k = Tower::rationals();
        let d = diagram(&mu_family(int(1)).profile());
        assert_eq!(
            coords(&d),
            vec![(0, int(2), Origin::P), (1, int(0), Origin::Both), (3, int(-1), Origin::Q)]
        );
        let lambdas: Vec<Rational> = d.edges.iter().map(|e| e.lambda.clone()).collect();
        assert_eq!(lambdas, vec![int(2), frac(1, 2)]);
        // at mu = 0 the merged point is a plain Q point
        let d0 = diagram(&mu_family(int(0)).profile());
        let phi = edge_char_poly(&d0, &d0.edges[0], &k);
        assert_eq!(phi, KPoly::new(vec![Alg::Q(int(-1)), Alg::Q(int(2))]));
        let phi2 = edge_char_poly(&d0, &d0.edges[1], &k);
        assert_eq!(
            phi2,
            KPoly::new(vec![Alg::zero(), Alg::Q(frac(1, 2)), Alg::zero(), Alg::Q(frac(1, 2))])
        );
    }

    #[test]
    fn trivial_diagrams() {
        // P = w, Q = 1
        let s = OdeSystem::from_poly2(&Poly2::w(), &Poly2::one()).unwrap();
        let d = diagram(&s.profile());
        assert_eq!(coords(&d), vec![(1, int(-1), Origin::Q), (1, int(0), Origin::P)]);
        assert!(d.edges.is_empty());
    }

    #[test]
    fn vertex_test_on_mu_family() {
        let k = Tower::rationals();
        let zero = int(0);
        let crit = vertex_critical_check(&diagram(&mu_family(frac(3, 2)).profile()), &zero, &k);
        assert_eq!(crit, VertexVerdict::Critical { x: 1, lambda: frac(3, 2) });
        let not = vertex_critical_check(&diagram(&mu_family(int(3)).profile()), &zero, &k);
        assert!(matches!(not, VertexVerdict::NotCritical { .. }));
        // boundary values fail the strict inequality
        for mu in [frac(1, 2), int(2)] {
            let v = vertex_critical_check(&diagram(&mu_family(mu).profile()), &zero, &k);
            assert!(matches!(v, VertexVerdict::NotCritical { .. }));
        }
    }

    #[test]
    fn scaling_invariance() {
        let k = Tower::rationals();
        let s = mu_family(frac(3, 2));
        let (p, q) = s.to_poly2().unwrap();
        let t = OdeSystem::from_poly2(&p.scale(&int(-7)), &q.scale(&int(-7))).unwrap();
        assert_eq!(
            vertex_critical_check(&diagram(&s.profile()), &int(0), &k),
            vertex_critical_check(&diagram(&t.profile()), &int(0), &k)
        );
    }
}
