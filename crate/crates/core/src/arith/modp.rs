//! Polynomial arithmetic over a prime field GF(p), used for modular
//! irreducibility tests and as the base of Hensel lifting.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};
use rand::Rng;

/// Primes below 2^31 so that products fit comfortably in `u64`.
pub const PRIMES: [u64; 12] = [
    1_000_003, 1_000_033, 1_000_037, 1_000_039, 1_000_081, 1_000_099, 1_000_117, 1_000_121,
    1_000_133, 1_000_151, 1_000_159, 1_000_171,
];

/// Small primes for degree-pattern certification.
pub const SMALL_PRIMES: [u64; 10] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyP {
    pub p: u64,
    /// Ascending, trimmed.
    pub c: Vec<u64>,
}

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powm(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, a, p);
        }
        a = mulm(a, a, p);
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    powm(a, p - 2, p)
}

/// Reduces a big integer into `[0, p)`.
pub fn reduce_int(x: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let r = ((x % &m) + &m) % &m;
    r.to_u64().unwrap()
}

impl PolyP {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        PolyP { p, c }
    }

    pub fn from_ints(cs: &[BigInt], p: u64) -> Self {
        Self::new(p, cs.iter().map(|x| reduce_int(x, p)).collect())
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lead(&self) -> u64 {
        *self.c.last().unwrap_or(&0)
    }

    pub fn add(&self, o: &PolyP) -> PolyP {
        let n = self.c.len().max(o.c.len());
        let p = self.p;
        Self::new(
            p,
            (0..n)
                .map(|i| (self.c.get(i).unwrap_or(&0) + o.c.get(i).unwrap_or(&0)) % p)
                .collect(),
        )
    }

    pub fn sub(&self, o: &PolyP) -> PolyP {
        let n = self.c.len().max(o.c.len());
        let p = self.p;
        Self::new(
            p,
            (0..n)
                .map(|i| (self.c.get(i).unwrap_or(&0) + p - o.c.get(i).unwrap_or(&0)) % p)
                .collect(),
        )
    }

    pub fn mul(&self, o: &PolyP) -> PolyP {
        if self.is_zero() || o.is_zero() {
            return Self::new(self.p, vec![]);
        }
        let p = self.p;
        let mut out = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                out[i + j] = (out[i + j] + mulm(a, b, p)) % p;
            }
        }
        Self::new(p, out)
    }

    pub fn scale(&self, k: u64) -> PolyP {
        Self::new(self.p, self.c.iter().map(|&a| mulm(a, k, self.p)).collect())
    }

    pub fn monic(&self) -> PolyP {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.lead(), self.p))
    }

    pub fn div_rem(&self, d: &PolyP) -> (PolyP, PolyP) {
        assert!(!d.is_zero());
        let p = self.p;
        if self.c.len() < d.c.len() {
            return (Self::new(p, vec![]), self.clone());
        }
        let dd = d.deg();
        let li = inv_mod(d.lead(), p);
        let mut r = self.c.clone();
        let mut q = vec![0u64; r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = mulm(r[i + dd], li, p);
            if c != 0 {
                for (j, &dc) in d.c.iter().enumerate() {
                    r[i + j] = (r[i + j] + p - mulm(c, dc, p)) % p;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Self::new(p, q), Self::new(p, r))
    }

    pub fn rem(&self, d: &PolyP) -> PolyP {
        self.div_rem(d).1
    }

    pub fn gcd(a: &PolyP, b: &PolyP) -> PolyP {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*a + t*b = g` monic.
    pub fn egcd(a: &PolyP, b: &PolyP) -> (PolyP, PolyP, PolyP) {
        let p = a.p;
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::new(p, vec![]));
        let (mut t0, mut t1) = (Self::new(p, vec![]), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        let k = inv_mod(r0.lead(), p);
        (r0.scale(k), s0.scale(k), t0.scale(k))
    }

    pub fn derivative(&self) -> PolyP {
        let p = self.p;
        Self::new(
            p,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &a)| mulm(a, i as u64 % p, p))
                .collect(),
        )
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &PolyP) -> PolyP {
        let mut result = Self::one(self.p);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            result = result.mul(&result).rem(m);
            if e.bit(i) {
                result = result.mul(&base).rem(m);
            }
        }
        result
    }

    pub fn is_squarefree(&self) -> bool {
        Self::gcd(self, &self.derivative()).deg() == 0
    }
}

/// Distinct-degree factorization of a monic square-free polynomial:
/// returns `(product of all irreducible factors of degree d, d)`.
pub fn distinct_degree(f: &PolyP) -> Vec<(PolyP, usize)> {
    let p = f.p;
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = PolyP::x(p);
    let pe = BigUint::from(p);
    let mut d = 0;
    while rest.deg() >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod(&pe, &rest);
        let g = PolyP::gcd(&rest, &h.sub(&PolyP::x(p)));
        if g.deg() > 0 {
            out.push((g.clone(), d));
            rest = rest.div_rem(&g).0;
            h = h.rem(&rest);
        }
    }
    if rest.deg() > 0 {
        let dd = rest.deg();
        out.push((rest.monic(), dd));
    }
    out
}

/// Splits a product of irreducibles of equal degree `d` (Cantor–Zassenhaus, odd p).
pub fn equal_degree<R: Rng>(g: &PolyP, d: usize, rng: &mut R) -> Vec<PolyP> {
    if g.deg() == d {
        return vec![g.monic()];
    }
    let p = g.p;
    let exp = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
    loop {
        let a = PolyP::new(p, (0..g.deg()).map(|_| rng.gen_range(0..p)).collect());
        if a.deg() == 0 {
            continue;
        }
        let b = a.pow_mod(&exp, g).sub(&PolyP::one(p));
        let h = PolyP::gcd(g, &b);
        if h.deg() > 0 && h.deg() < g.deg() {
            let other = g.div_rem(&h).0;
            let mut out = equal_degree(&h, d, rng);
            out.extend(equal_degree(&other, d, rng));
            return out;
        }
    }
}

/// Full factorization of a square-free polynomial into monic irreducibles.
pub fn factor_squarefree<R: Rng>(f: &PolyP, rng: &mut R) -> Vec<PolyP> {
    let mut out = Vec::new();
    for (g, d) in distinct_degree(&f.monic()) {
        out.extend(equal_degree(&g, d, rng));
    }
    out.sort_by(|a, b| a.deg().cmp(&b.deg()).then(a.c.cmp(&b.c)));
    out
}

/// Degrees of the irreducible factors of a square-free polynomial.
pub fn factor_degrees(f: &PolyP) -> Vec<usize> {
    let mut out = Vec::new();
    for (g, d) in distinct_degree(&f.monic()) {
        for _ in 0..g.deg() / d {
            out.push(d);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn cantor_zassenhaus_splits() {
        let p = 1_000_003;
        // (x-1)(x-2)(x^2+1) mod p; -1 is a non-residue since p = 3 mod 4
        let f = PolyP::new(p, vec![p - 1, 1])
            .mul(&PolyP::new(p, vec![p - 2, 1]))
            .mul(&PolyP::new(p, vec![1, 0, 1]));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let fs = factor_squarefree(&f, &mut rng);
        assert_eq!(fs.len(), 3);
        assert_eq!(fs.iter().map(|g| g.deg()).collect::<Vec<_>>(), vec![1, 1, 2]);
        assert_eq!(factor_degrees(&f), vec![1, 1, 2]);
    }
}
