//! Univariate factorization over the rationals.
//!
//! Factors are found by the classical Zassenhaus route: a square-free
//! reduction modulo a prime, Cantor–Zassenhaus splitting, linear Hensel
//! lifting and subset recombination. Recombination can be limited to
//! factors of bounded degree, which is how rational roots are found.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::modp::{self, PolyP, PRIMES};
use super::qpoly::QPoly;
use super::rational::Rational;
use crate::error::ArithError;

/// Default cap on the degree accepted by [`factor_univariate`].
pub const DEFAULT_FACTOR_CAP: usize = 8;

const SUBSET_BUDGET: usize = 200_000;

/// One monic irreducible factor over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub poly: QPoly,
    pub multiplicity: usize,
    /// `false` when irreducibility was not certified (recombination budget exhausted).
    pub certified: bool,
}

/// Irreducible integer factors of bounded degree.
#[derive(Clone, Debug)]
pub struct IntFactors {
    /// Primitive factors with positive leading coefficient.
    pub factors: Vec<Vec<BigInt>>,
    /// What is left after dividing out `factors`.
    pub cofactor: Vec<BigInt>,
    /// `false` if the subset search was truncated.
    pub complete: bool,
}

fn to_qpoly(c: &[BigInt]) -> QPoly {
    QPoly::from_bigints(c)
}

fn symmetric(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn mul_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out.iter().map(|c| c.mod_floor(m)).collect()
}

fn poly_p_to_big(f: &PolyP) -> Vec<BigInt> {
    f.c.iter().map(|&x| BigInt::from(x)).collect()
}

/// Lifts `target ≡ g * h (mod p)` with `g` monic to a factorization modulo
/// `p^k`. `target` must be given modulo `p^k`.
fn hensel_lift(
    target: &[BigInt],
    g0: &PolyP,
    h0: &PolyP,
    p: u64,
    k: u32,
) -> (Vec<BigInt>, Vec<BigInt>) {
    let pb = BigInt::from(p);
    let (_, _, t) = PolyP::egcd(g0, h0);
    let mut g = poly_p_to_big(g0);
    let mut h = poly_p_to_big(h0);
    let mut pj = pb.clone();
    for _ in 1..k {
        let next = &pj * &pb;
        let gh = mul_mod(&g, &h, &next);
        let n = target.len().max(gh.len());
        let e: Vec<BigInt> = (0..n)
            .map(|i| {
                let a = target.get(i).cloned().unwrap_or_default();
                let b = gh.get(i).cloned().unwrap_or_default();
                ((a - b).mod_floor(&next)) / &pj
            })
            .collect();
        let ep = PolyP::from_ints(&e, p);
        let dg = ep.mul(&t).rem(g0);
        let dh = ep.sub(&h0.mul(&dg)).div_rem(g0).0;
        let add = |base: &mut Vec<BigInt>, d: &PolyP| {
            if base.len() < d.c.len() {
                base.resize(d.c.len(), BigInt::zero());
            }
            for (i, &c) in d.c.iter().enumerate() {
                base[i] = (&base[i] + &pj * BigInt::from(c)).mod_floor(&next);
            }
        };
        add(&mut g, &dg);
        add(&mut h, &dh);
        pj = next;
    }
    (g, h)
}

fn norm2_bound(f: &[BigInt]) -> BigInt {
    let sq: BigInt = f.iter().map(|c| c * c).sum();
    sq.sqrt() + 1
}

fn choose_prime(f: &[BigInt]) -> Option<(u64, PolyP)> {
    let lc = f.last()?;
    for &p in PRIMES.iter() {
        if modp::reduce_int(lc, p) == 0 {
            continue;
        }
        let fp = PolyP::from_ints(f, p);
        if fp.is_squarefree() {
            return Some((p, fp));
        }
    }
    None
}

/// Finds every irreducible factor of degree at most `max_deg` of a primitive,
/// square-free integer polynomial.
pub fn integer_factors(f: &[BigInt], max_deg: usize) -> IntFactors {
    let n = f.len().saturating_sub(1);
    if n == 0 {
        return IntFactors { factors: vec![], cofactor: f.to_vec(), complete: true };
    }
    if n == 1 {
        let (factors, cofactor) = if max_deg >= 1 {
            (vec![f.to_vec()], vec![BigInt::one()])
        } else {
            (vec![], f.to_vec())
        };
        return IntFactors { factors, cofactor, complete: true };
    }
    let (p, fp) = choose_prime(f).expect("square-free polynomial has a good prime");
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ n as u64);
    let modular = modp::factor_squarefree(&fp, &mut rng);
    if modular.len() == 1 {
        let (factors, cofactor) = if max_deg >= n {
            (vec![f.to_vec()], vec![BigInt::one()])
        } else {
            (vec![], f.to_vec())
        };
        return IntFactors { factors, cofactor, complete: true };
    }
    let d_max = max_deg.min(n);
    let lc = f.last().unwrap().abs();
    let bound = &lc * (BigInt::one() << d_max) * norm2_bound(f) * 2;
    let mut k = 1u32;
    let mut pk = BigInt::from(p);
    while pk <= bound {
        pk *= p;
        k += 1;
    }
    // lift one factor at a time off the remaining product
    let mut lifted: Vec<Vec<BigInt>> = Vec::new();
    let target: Vec<BigInt> = f.iter().map(|c| c.mod_floor(&pk)).collect();
    let mut rest_target = target;
    let mut rest_mod = fp.clone();
    for u in modular.iter().take(modular.len() - 1) {
        let h0 = rest_mod.div_rem(u).0;
        let (g, h) = hensel_lift(&rest_target, u, &h0, p, k);
        lifted.push(g);
        rest_target = h;
        rest_mod = h0;
    }
    // last factor: make it monic modulo p^k
    let lead = rest_target.last().cloned().unwrap();
    let lead_inv = lead
        .to_biguint()
        .and_then(|l| mod_inverse(&l, &pk.to_biguint().unwrap()))
        .map(BigInt::from)
        .expect("leading coefficient is a unit");
    lifted.push(rest_target.iter().map(|c| (c * &lead_inv).mod_floor(&pk)).collect());

    recombine(f, lifted, &pk, d_max)
}

fn mod_inverse(a: &BigUint, m: &BigUint) -> Option<BigUint> {
    let a = BigInt::from(a.clone());
    let m = BigInt::from(m.clone());
    let e = a.extended_gcd(&m);
    if !e.gcd.is_one() {
        return None;
    }
    e.x.mod_floor(&m).to_biguint()
}

fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let mut g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return v.to_vec();
    }
    if v.last().is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    v.iter().map(|c| c / &g).collect()
}

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn recombine(f: &[BigInt], mut pool: Vec<Vec<BigInt>>, pk: &BigInt, d_max: usize) -> IntFactors {
    let mut current = f.to_vec();
    let mut found = Vec::new();
    let mut budget = SUBSET_BUDGET;
    let mut complete = true;
    let mut s = 1;
    'outer: while s <= pool.len() {
        let degs: Vec<usize> = pool.iter().map(|u| u.len() - 1).collect();
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            let dsum: usize = idx.iter().map(|&i| degs[i]).sum();
            if dsum <= d_max && dsum < current.len() - 1 || (dsum <= d_max && idx.len() == pool.len()) {
                if budget == 0 {
                    complete = false;
                    break 'outer;
                }
                budget -= 1;
                let lc = current.last().unwrap().clone();
                let mut prod = vec![lc.mod_floor(pk)];
                for &i in &idx {
                    prod = mul_mod(&prod, &pool[i], pk);
                }
                let cand = primitive(&trim(prod.iter().map(|c| symmetric(c, pk)).collect()));
                if cand.len() > 1 {
                    if let Some(q) = to_qpoly(&current).div_exact(&to_qpoly(&cand)) {
                        let (_, qi) = q.to_primitive_ints();
                        current = qi;
                        found.push(cand);
                        let mut rm = idx.clone();
                        rm.sort_unstable_by(|a, b| b.cmp(a));
                        for i in rm {
                            pool.remove(i);
                        }
                        continue 'outer;
                    }
                }
            }
            // next combination
            let mut i = s;
            loop {
                if i == 0 {
                    s += 1;
                    continue 'outer;
                }
                i -= 1;
                if idx[i] < pool.len() - s + i {
                    idx[i] += 1;
                    for j in i + 1..s {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
    // whatever remains of degree <= d_max is itself irreducible
    if current.len() > 1 && current.len() - 1 <= d_max && complete {
        found.push(current.clone());
        current = vec![BigInt::one()];
    }
    IntFactors { factors: found, cofactor: current, complete }
}

/// Monic irreducible factors over the rationals with multiplicities.
///
/// Fails for the zero polynomial and above `cap`.
pub fn factor_univariate(p: &QPoly, cap: usize) -> Result<Vec<Factor>, ArithError> {
    if p.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    if p.deg() > cap {
        return Err(ArithError::FactorCapExceeded { degree: p.deg(), cap });
    }
    let mut out = Vec::new();
    for (part, mult) in p.squarefree_decomposition() {
        let (_, ints) = part.to_primitive_ints();
        let r = integer_factors(&ints, part.deg());
        for fac in r.factors {
            out.push(Factor { poly: to_qpoly(&fac).monic(), multiplicity: mult, certified: true });
        }
        if r.cofactor.len() > 1 {
            out.push(Factor {
                poly: to_qpoly(&r.cofactor).monic(),
                multiplicity: mult,
                certified: r.complete,
            });
        }
    }
    out.sort_by(|a, b| {
        a.poly
            .deg()
            .cmp(&b.poly.deg())
            .then_with(|| cmp_coeffs(a.poly.coeffs(), b.poly.coeffs()))
    });
    Ok(out)
}

fn cmp_coeffs(a: &[Rational], b: &[Rational]) -> std::cmp::Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

/// Rational roots with multiplicity, ascending.
pub fn rational_roots(p: &QPoly) -> Vec<(Rational, usize)> {
    let mut out = Vec::new();
    for (part, mult) in p.squarefree_decomposition() {
        let (_, ints) = part.to_primitive_ints();
        for fac in integer_factors(&ints, 1).factors {
            if fac.len() == 2 {
                out.push((Rational::new(-fac[0].clone(), fac[1].clone()), mult));
            }
        }
    }
    out.sort();
    out
}

/// Square-free part together with all rational roots and their multiplicities.
pub fn squarefree_and_rational_roots(
    p: &QPoly,
) -> Result<(QPoly, Vec<(Rational, usize)>), ArithError> {
    if p.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    Ok((p.squarefree_part(), rational_roots(p)))
}

/// Irreducibility over the rationals, certified by factor-degree patterns
/// modulo several small primes; `None` when the patterns are inconclusive.
pub fn modular_irreducible(p: &QPoly) -> Option<bool> {
    let n = p.deg();
    if n <= 1 {
        return Some(n == 1);
    }
    let (_, ints) = p.to_primitive_ints();
    let mut possible: Vec<bool> = vec![true; n + 1];
    let mut used = 0;
    for &q in modp::SMALL_PRIMES.iter().chain(PRIMES.iter()) {
        if modp::reduce_int(ints.last().unwrap(), q) == 0 {
            continue;
        }
        let fq = PolyP::from_ints(&ints, q);
        if !fq.is_squarefree() {
            continue;
        }
        used += 1;
        let degs = modp::factor_degrees(&fq);
        let mut sums = vec![false; n + 1];
        sums[0] = true;
        for d in degs {
            for s in (d..=n).rev() {
                if sums[s - d] {
                    sums[s] = true;
                }
            }
        }
        for s in 0..=n {
            possible[s] &= sums[s];
        }
        if (1..n).all(|s| !possible[s]) {
            return Some(true);
        }
        if used >= 8 {
            break;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{frac, int};

    #[test]
    fn cyclotomic_split() {
        let f = QPoly::from_ints(&[-1, 0, 0, 1]);
        let fs = factor_univariate(&f, 8).unwrap();
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0].poly, QPoly::from_ints(&[-1, 1]));
        assert_eq!(fs[1].poly, QPoly::from_ints(&[1, 1, 1]));
        assert!(fs.iter().all(|f| f.certified && f.multiplicity == 1));
    }

    #[test]
    fn irreducible_quadratic() {
        let fs = factor_univariate(&QPoly::from_ints(&[-2, 0, 1]), 8).unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].poly.deg(), 2);
        assert!(rational_roots(&QPoly::from_ints(&[-2, 0, 1])).is_empty());
    }

    #[test]
    fn quartic_into_quadratics() {
        // (x^2+1)(x^2+2): no rational roots yet reducible
        let f = &QPoly::from_ints(&[1, 0, 1]) * &QPoly::from_ints(&[2, 0, 1]);
        let fs = factor_univariate(&f, 8).unwrap();
        assert_eq!(fs.len(), 2);
        assert_eq!(modular_irreducible(&f), None);
        assert_eq!(modular_irreducible(&QPoly::from_ints(&[-2, 0, 0, 0, 1])), Some(true));
    }

    #[test]
    fn edge_polynomial_linear_factor() {
        // (2 - mu) a - 1 at mu = 0
        let fs = factor_univariate(&QPoly::from_ints(&[-1, 2]), 8).unwrap();
        assert_eq!(fs[0].poly, QPoly::linear_root(&frac(1, 2)));
    }

    #[test]
    fn roots_with_multiplicity() {
        let f = &QPoly::linear_root(&int(2)).pow(3) * &QPoly::from_ints(&[0, 1, 1]);
        let (sqf, roots) = squarefree_and_rational_roots(&f).unwrap();
        assert_eq!(roots, vec![(int(-1), 1), (int(0), 1), (int(2), 3)]);
        assert_eq!(sqf.deg(), 3);
        assert!(matches!(
            squarefree_and_rational_roots(&QPoly::zero()),
            Err(ArithError::ZeroPolynomial)
        ));
    }

    #[test]
    fn cap_exceeded() {
        let f = QPoly::from_ints(&[1, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
        assert!(matches!(
            factor_univariate(&f, 8),
            Err(ArithError::FactorCapExceeded { .. })
        ));
    }
}
