use num_traits::Zero;
use pbound_core::arith::rational::{frac, int};
use pbound_core::arith::{factor_univariate, rational_roots, KPoly};
use pbound_core::darboux::{small_factors, DarbouxOutcome};
use pbound_core::lotka::orbitally_equivalent;
use pbound_core::{apply_symmetry, verify_darboux, Alg, LvParams, Poly2, QPoly, Rational, Symmetry, Tower};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| frac(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |q| !q.is_zero())
}

/// `Q(r)` with `r^3 = r + 1` and `Q(r, s)` with `s^2 = 2` on top.
fn towers() -> (Tower, Alg, Tower, Alg) {
    let q = Tower::rationals();
    let (k1, r) = q.adjoin_root(&KPoly::from_qpoly(&QPoly::from_ints(&[-1, -1, 0, 1])), 16).unwrap();
    let m = KPoly::new(vec![Alg::Q(int(-2)), Alg::zero(), Alg::one()]);
    let (k2, s) = k1.adjoin_root(&m, 16).unwrap();
    (k1, r, k2, s)
}

fn element(k: &Tower, gens: &[Alg], cs: &[Rational]) -> Alg {
    // sum of c_i * products of generators
    let mut basis = vec![Alg::one()];
    for g in gens {
        let mut next = basis.clone();
        for b in &basis {
            next.push(k.mul(b, g));
            next.push(k.mul(&k.mul(b, g), g));
        }
        basis = next;
    }
    basis.iter().zip(cs).fold(Alg::zero(), |acc, (b, c)| k.add(&acc, &k.scale_q(b, c)))
}

fn poly_from_roots(roots: &[Rational], extra: &QPoly) -> QPoly {
    roots.iter().fold(extra.clone(), |acc, r| &acc * &QPoly::new(vec![-r.clone(), int(1)]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tower_field_axioms(a in prop::collection::vec(rational(), 9), b in prop::collection::vec(rational(), 9), c in prop::collection::vec(rational(), 9)) {
        let (_, r, k, s) = towers();
        let gens = [r, s];
        let (x, y, z) = (element(&k, &gens, &a), element(&k, &gens, &b), element(&k, &gens, &c));
        prop_assert_eq!(k.mul(&k.mul(&x, &y), &z), k.mul(&x, &k.mul(&y, &z)));
        prop_assert_eq!(k.mul(&x, &k.add(&y, &z)), k.add(&k.mul(&x, &y), &k.mul(&x, &z)));
        prop_assert_eq!(k.mul(&x, &y), k.mul(&y, &x));
        prop_assert!(k.add(&x, &k.neg(&x)).is_zero());
        if !x.is_zero() {
            let inv = k.try_inv(&x).expect("irreducible tower has no zero divisors");
            prop_assert!(k.mul(&x, &inv).is_one());
        }
    }

    #[test]
    fn rational_roots_match_construction(roots in prop::collection::vec(rational(), 0..5), lead in nonzero_rational()) {
        // x^2 + 2 contributes no rational root
        let p = poly_from_roots(&roots, &QPoly::new(vec![int(2) * &lead, int(0), lead.clone()]));
        let mut expected: Vec<(Rational, usize)> = Vec::new();
        for r in &roots {
            match expected.iter_mut().find(|(x, _)| x == r) {
                Some(e) => e.1 += 1,
                None => expected.push((r.clone(), 1)),
            }
        }
        let mut got = rational_roots(&p);
        expected.sort();
        got.sort();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn factors_multiply_back(roots in prop::collection::vec(rational(), 0..4), c in prop::collection::vec(-5i64..=5, 3)) {
        let extra = QPoly::new(vec![int(c[0]), int(c[1]), int(c[2]), int(1)]);
        let p = poly_from_roots(&roots, &extra);
        let fs = factor_univariate(&p, 32).unwrap();
        let prod = fs.iter().fold(QPoly::new(vec![int(1)]), |acc, f| &acc * &f.poly.pow(f.multiplicity as u32));
        prop_assert_eq!(prod.monic(), p.monic());
        prop_assert!(fs.iter().all(|f| f.certified));
    }

    #[test]
    fn bivariate_lines_are_recovered(ls in prop::collection::vec((-3i64..=3, -3i64..=3, -3i64..=3), 1..4)) {
        let lines: Vec<Poly2> = ls
            .iter()
            .filter(|(a, b, _)| *a != 0 || *b != 0)
            .map(|&(a, b, c)| Poly2::from_ints(&[(a, 1, 0), (b, 0, 1), (c, 0, 0)]))
            .collect();
        prop_assume!(!lines.is_empty());
        let f = lines.iter().fold(Poly2::one(), |acc, l| &acc * l);
        let r = small_factors(&f, 1);
        prop_assert!(r.complete);
        let total: usize = r.factors.iter().map(|(_, m)| m).sum();
        prop_assert_eq!(total, lines.len());
        for l in &lines {
            prop_assert!(r.factors.iter().any(|(g, _)| l.div_exact(g).is_some_and(|q| q.is_constant())));
        }
    }

    #[test]
    fn lv_symmetries_are_orbital_equivalences(a in nonzero_rational(), b in rational(), c in rational()) {
        let p = LvParams::new(a, b, c);
        for which in [Symmetry::Exchange, Symmetry::Inversion] {
            if let Ok(img) = apply_symmetry(&p, which) {
                prop_assert!(orbitally_equivalent(&p.field(), &img.params.field(), &img.map));
            }
        }
    }

    #[test]
    fn darboux_cofactors_add(a in rational(), b in rational(), c in rational()) {
        // z and w are invariant for every parameter choice
        let field = LvParams::new(a, b, c).field();
        let cof = |f: &Poly2| match verify_darboux(&field, f).unwrap() {
            DarbouxOutcome::Certificate(cert) => Some(cert.cofactor),
            DarbouxOutcome::NotDarboux { .. } => None,
        };
        let (rz, rw) = (cof(&Poly2::z()).unwrap(), cof(&Poly2::w()).unwrap());
        let zw = &(&Poly2::z() * &Poly2::z()) * &Poly2::w();
        prop_assert_eq!(cof(&zw), Some(&(&rz + &rz) + &rw));
    }
}
