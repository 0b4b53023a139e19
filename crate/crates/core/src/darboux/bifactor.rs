//! Bivariate factors of bounded total degree over the rationals.
//!
//! After a shear `z ↦ z + s·w` the polynomial has constant leading
//! coefficient in `w`, so every factor of total degree `d` has `w`-degree
//! `d` and `z`-coefficients of degree at most `d`. Factors are lifted from
//! a specialization `z = z0` in `Q[[z − z0]]` up to that order and
//! confirmed by exact division.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::factor::integer_factors;
use crate::arith::{Poly2, QPoly, Rational};

const SUBSET_BUDGET: usize = 50_000;

#[derive(Clone, Debug, Default)]
pub struct BiFactors {
    /// Primitive irreducible factors with their multiplicity in the input.
    pub factors: Vec<(Poly2, usize)>,
    /// `false` when a search budget was exhausted.
    pub complete: bool,
}

fn candidates() -> impl Iterator<Item = Rational> {
    (0i64..).flat_map(|n| if n == 0 { vec![0] } else { vec![n, -n] }).map(|n| Rational::from_integer(n.into()))
}

fn shear(f: &Poly2, s: &Rational) -> Poly2 {
    f.compose(&(&Poly2::z() + &Poly2::w().scale(s)), &Poly2::w())
}

/// Coefficients of `f(z0 + t, w)` in powers of `t`, each a polynomial in `w`.
fn t_expansion(f: &Poly2, z0: &Rational) -> Vec<QPoly> {
    let g = f.compose(&(&Poly2::constant(z0.clone()) + &Poly2::z()), &Poly2::w());
    g.swap().w_coeffs()
}

/// Product of truncated series in `t`, up to `order`.
fn series_mul(a: &[QPoly], b: &[QPoly], order: usize) -> Vec<QPoly> {
    let mut out = vec![QPoly::zero(); order + 1];
    for (i, x) in a.iter().enumerate().take(order + 1) {
        for (j, y) in b.iter().enumerate().take(order + 1 - i) {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

/// Lifts `G ≡ u^m·h (mod t)` with `gcd(u, h) = 1` to `G ≡ F^m·H (mod t^(order+1))`
/// and returns `F`, which stays monic of the degree of `u`.
fn lift(gt: &[QPoly], u: &QPoly, m: usize, order: usize) -> Option<Vec<QPoly>> {
    let um1 = u.pow(m as u32 - 1);
    let h0 = gt[0].div_exact(&(&um1 * u))?;
    let mh0 = h0.scale(&Rational::from_integer((m as i64).into()));
    let (g, s, _) = QPoly::egcd(&mh0, u);
    if g.deg() != 0 {
        return None;
    }
    let mut f = vec![u.clone()];
    let mut h = vec![h0.clone()];
    for k in 1..=order {
        f.push(QPoly::zero());
        h.push(QPoly::zero());
        let mut prod = h.clone();
        for _ in 0..m {
            prod = series_mul(&prod, &f, k);
        }
        let e = &gt.get(k).cloned().unwrap_or_else(QPoly::zero) - &prod[k];
        let e = e.div_exact(&um1)?;
        let df = (&e * &s).rem(u);
        let dh = (&e - &(&df * &mh0)).div_exact(u)?;
        f[k] = df;
        h[k] = dh;
    }
    Some(f)
}

const PRIME: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn inv_mod(a: u64) -> u64 {
    let (mut base, mut e, mut r) = (a, PRIME - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, base);
        }
        base = mul_mod(base, base);
        e >>= 1;
    }
    r
}

fn reduce(q: &Rational) -> Option<u64> {
    let p = num_bigint::BigInt::from(PRIME);
    let n = u64::try_from(q.numer().mod_floor(&p)).ok()?;
    let d = u64::try_from(q.denom().mod_floor(&p)).ok()?;
    (d != 0).then(|| mul_mod(n, inv_mod(d)))
}

fn rem_mod(a: &mut Vec<u64>, b: &[u64]) {
    let inv = inv_mod(*b.last().expect("nonzero divisor"));
    while a.len() >= b.len() {
        let c = mul_mod(*a.last().expect("nonempty"), inv);
        let shift = a.len() - b.len();
        for (j, &bj) in b.iter().enumerate() {
            a[shift + j] = (a[shift + j] + PRIME - mul_mod(c, bj)) % PRIME;
        }
        a.pop();
        while a.last() == Some(&0) {
            a.pop();
        }
    }
}

/// Degree of `gcd(g, g')` modulo a large prime, an upper bound for the
/// degree over the rationals; `None` if the reduction loses the degree.
fn repeated_degree_mod(g: &QPoly) -> Option<usize> {
    let mut a: Vec<u64> = g.coeffs().iter().map(reduce).collect::<Option<_>>()?;
    if a.last() == Some(&0) {
        return None;
    }
    let mut b: Vec<u64> = a.iter().enumerate().skip(1).map(|(i, &c)| mul_mod(c, i as u64 % PRIME)).collect();
    while b.last() == Some(&0) {
        b.pop();
    }
    while !b.is_empty() {
        rem_mod(&mut a, &b);
        std::mem::swap(&mut a, &mut b);
    }
    Some(a.len() - 1)
}

/// Specialization with the least repeated part among the first few candidates.
fn pick_point(g: &Poly2, dw: usize) -> Rational {
    let mut best: Option<(usize, Rational)> = None;
    for z0 in candidates().take(40) {
        let g0 = g.at_z(&z0);
        if g0.deg() != dw {
            continue;
        }
        let Some(rep) = repeated_degree_mod(&g0) else { continue };
        if best.as_ref().is_none_or(|(r, _)| rep < *r) {
            best = Some((rep, z0));
        }
        if rep == 0 {
            break;
        }
    }
    match best {
        Some((_, z0)) => z0,
        None => candidates().find(|z0| g.at_z(z0).deg() == dw).expect("a point with full degree exists"),
    }
}

/// Irreducible factors of total degree at most `max_deg`.
///
/// Factors are found for each multiplicity class of the specialization; a
/// point where two classes collide can hide a factor, which is the only way
/// the result may be short.
pub fn small_factors(f: &Poly2, max_deg: u32) -> BiFactors {
    if f.is_zero() || f.is_constant() || max_deg == 0 {
        return BiFactors { factors: vec![], complete: true };
    }
    let d = f.degree();
    let top = f.homogeneous_part(d);
    let s = candidates()
        .find(|s| !top.eval(s, &Rational::one()).is_zero())
        .expect("a nonzero value exists");
    let g = shear(f, &s);
    let dw = g.deg_w() as usize;
    let g = g.scale(&g.w_coeffs()[dw].coeff(0).recip());
    let z0 = pick_point(&g, dw);
    let gt = t_expansion(&g, &z0);
    let unshear_z = &(&Poly2::z() - &Poly2::constant(z0.clone())) - &Poly2::w().scale(&s);

    let mut complete = true;
    let mut budget = SUBSET_BUDGET;
    let mut found: Vec<Poly2> = Vec::new();
    for (part, m) in gt[0].squarefree_decomposition() {
        let (_, ints) = part.to_primitive_ints();
        let uni = integer_factors(&ints, max_deg as usize);
        complete &= uni.complete;
        let mut pool: Vec<QPoly> = uni.factors.iter().map(|c| QPoly::from_bigints(c).monic()).collect();
        pool.sort_by_key(|p| p.deg());
        let mut size = 1;
        'sizes: while size <= pool.len() {
            let mut idx: Vec<usize> = (0..size).collect();
            loop {
                let deg: usize = idx.iter().map(|&i| pool[i].deg()).sum();
                if deg <= max_deg as usize {
                    if budget == 0 {
                        complete = false;
                        break 'sizes;
                    }
                    budget -= 1;
                    let u = idx.iter().fold(QPoly::one(), |acc, &i| &acc * &pool[i]);
                    if let Some(ft) = lift(&gt, &u, m, max_deg as usize) {
                        // coefficients of t back to a polynomial in (t, w), then undo the substitutions
                        let ftw = Poly2::from_w_coeffs(&ft).swap();
                        let cand = ftw.compose(&unshear_z, &Poly2::w()).primitive();
                        if cand.degree() <= max_deg && f.div_exact(&cand).is_some() {
                            found.push(cand);
                            let mut rm = idx.clone();
                            rm.sort_unstable_by(|a, b| b.cmp(a));
                            for i in rm {
                                pool.remove(i);
                            }
                            continue 'sizes;
                        }
                    }
                }
                let mut i = size;
                loop {
                    if i == 0 {
                        size += 1;
                        continue 'sizes;
                    }
                    i -= 1;
                    if idx[i] < pool.len() - size + i {
                        idx[i] += 1;
                        for j in i + 1..size {
                            idx[j] = idx[j - 1] + 1;
                        }
                        break;
                    }
                }
            }
        }
    }
    let mut factors: Vec<(Poly2, usize)> = found
        .into_iter()
        .map(|c| {
            let mut m = 0;
            let mut rest = f.clone();
            while let Some(q) = rest.div_exact(&c) {
                rest = q;
                m += 1;
            }
            (c, m)
        })
        .collect();
    factors.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then_with(|| a.0.to_string().cmp(&b.0.to_string())));
    BiFactors { factors, complete }
}

/// Irreducibility over the rationals; `None` when the search was truncated.
pub fn is_irreducible(f: &Poly2) -> Option<bool> {
    let d = f.degree();
    if d == 0 {
        return Some(false);
    }
    if d == 1 {
        return Some(true);
    }
    let r = small_factors(f, d / 2);
    if !r.factors.is_empty() {
        return Some(false);
    }
    r.complete.then_some(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_lines_and_conics() {
        let l1 = Poly2::from_ints(&[(1, 0, 0), (-1, 1, 0), (1, 0, 1)]); // 1 - z + w
        let c = Poly2::from_ints(&[(1, 1, 1), (2, 1, 0), (-2, 0, 1), (-2, 0, 0)]); // zw + 2z - 2w - 2
        let z = Poly2::z();
        let f = &(&(&l1 * &l1) * &c) * &z;
        let r = small_factors(&f, 1);
        let lines: Vec<(String, usize)> = r.factors.iter().map(|(p, m)| (p.to_string(), *m)).collect();
        assert_eq!(lines, vec![("-z + w + 1".to_string(), 2), ("z".to_string(), 1)]);
        let r2 = small_factors(&f, 2);
        assert_eq!(r2.factors.len(), 3);
        assert!(r.complete && r2.complete);
    }

    #[test]
    fn irreducibility() {
        let circle = Poly2::from_ints(&[(1, 2, 0), (1, 0, 2), (-1, 0, 0)]);
        assert_eq!(is_irreducible(&circle), Some(true));
        let hyper = Poly2::from_ints(&[(1, 2, 0), (-1, 0, 2)]); // (z-w)(z+w)
        assert_eq!(is_irreducible(&hyper), Some(false));
        // pure-w factor after shear
        let f = &Poly2::from_ints(&[(1, 0, 2), (-2, 0, 0)]) * &circle;
        let r = small_factors(&f, 2);
        assert_eq!(r.factors.len(), 2);
    }
}
