//! Univariate polynomials over an extension tower.

use num_integer::Integer;

use super::factor::factor_univariate;
use super::qpoly::QPoly;
use super::rational::Rational;
use super::tower::{join_signed, Alg, Split, Tower};
use crate::error::ArithError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KPoly {
    c: Vec<Alg>,
}

/// Failure while working over a tower.
#[derive(Clone, Debug)]
pub enum TowerError {
    Split(Split),
    Arith(ArithError),
}

impl From<Split> for TowerError {
    fn from(s: Split) -> Self {
        TowerError::Split(s)
    }
}

impl From<ArithError> for TowerError {
    fn from(e: ArithError) -> Self {
        TowerError::Arith(e)
    }
}

/// A monic factor over the tower with multiplicity.
#[derive(Clone, Debug)]
pub struct KFactor {
    pub poly: KPoly,
    pub multiplicity: usize,
    /// Irreducibility over the tower was proved.
    pub certified: bool,
}

impl KPoly {
    pub fn new(mut c: Vec<Alg>) -> KPoly {
        while c.last().is_some_and(Alg::is_zero) {
            c.pop();
        }
        KPoly { c }
    }

    pub fn zero() -> KPoly {
        KPoly { c: vec![] }
    }

    pub fn one() -> KPoly {
        KPoly { c: vec![Alg::one()] }
    }

    pub fn constant(a: Alg) -> KPoly {
        KPoly::new(vec![a])
    }

    pub fn from_qpoly(p: &QPoly) -> KPoly {
        KPoly::new(p.coeffs().iter().cloned().map(Alg::Q).collect())
    }

    /// Rational coefficients, if all are structurally rational.
    pub fn as_qpoly(&self) -> Option<QPoly> {
        let cs: Option<Vec<Rational>> = self.c.iter().map(|a| a.as_rational().cloned()).collect();
        cs.map(QPoly::new)
    }

    pub fn coeffs(&self) -> &[Alg] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> Alg {
        self.c.get(i).cloned().unwrap_or_else(Alg::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lead(&self) -> Alg {
        self.c.last().cloned().unwrap_or_else(Alg::zero)
    }

    pub fn add(&self, o: &KPoly, k: &Tower) -> KPoly {
        let n = self.c.len().max(o.c.len());
        KPoly::new((0..n).map(|i| k.add(&self.coeff(i), &o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &KPoly, k: &Tower) -> KPoly {
        let n = self.c.len().max(o.c.len());
        KPoly::new((0..n).map(|i| k.sub(&self.coeff(i), &o.coeff(i))).collect())
    }

    pub fn mul(&self, o: &KPoly, k: &Tower) -> KPoly {
        if self.is_zero() || o.is_zero() {
            return KPoly::zero();
        }
        let mut out = vec![Alg::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                let t = k.mul(a, b);
                out[i + j] = k.add(&out[i + j], &t);
            }
        }
        KPoly::new(out)
    }

    pub fn scale(&self, a: &Alg, k: &Tower) -> KPoly {
        KPoly::new(self.c.iter().map(|c| k.mul(c, a)).collect())
    }

    pub fn div_rem(&self, d: &KPoly, k: &Tower) -> Result<(KPoly, KPoly), Split> {
        assert!(!d.is_zero(), "polynomial division by zero");
        if self.c.len() < d.c.len() {
            return Ok((KPoly::zero(), self.clone()));
        }
        let dd = d.deg();
        let li = k.try_inv(&d.lead())?;
        let mut r = self.c.clone();
        let mut q = vec![Alg::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = k.mul(&r[i + dd], &li);
            if !c.is_zero() {
                for (j, dc) in d.c.iter().enumerate() {
                    let t = k.mul(&c, dc);
                    r[i + j] = k.sub(&r[i + j], &t);
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        Ok((KPoly::new(q), KPoly::new(r)))
    }

    pub fn monic(&self, k: &Tower) -> Result<KPoly, Split> {
        if self.is_zero() || self.lead().is_one() {
            return Ok(self.clone());
        }
        Ok(self.scale(&k.try_inv(&self.lead())?, k))
    }

    /// Monic normalization for a polynomial whose leading coefficient is known to be a unit.
    pub fn monic_unchecked(&self, k: &Tower) -> KPoly {
        self.monic(k).expect("leading coefficient is a unit")
    }

    pub fn gcd(&self, o: &KPoly, k: &Tower) -> Result<KPoly, Split> {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b, k)?.1;
            a = b;
            b = r;
        }
        a.monic(k)
    }

    pub fn derivative(&self, k: &Tower) -> KPoly {
        KPoly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| k.scale_q(a, &Rational::from_integer(i.into())))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Alg, k: &Tower) -> Alg {
        let mut acc = Alg::zero();
        for c in self.c.iter().rev() {
            acc = k.add(&k.mul(&acc, x), c);
        }
        acc
    }

    /// Yun's square-free decomposition: monic parts with multiplicities.
    pub fn squarefree_decomposition(&self, k: &Tower) -> Result<Vec<(KPoly, usize)>, Split> {
        let mut out = Vec::new();
        if self.deg() == 0 {
            return Ok(out);
        }
        let f = self.monic(k)?;
        let df = f.derivative(k);
        let a = f.gcd(&df, k)?;
        let mut b = f.div_rem(&a, k)?.0;
        let c = df.div_rem(&a, k)?.0;
        let mut d = c.sub(&b.derivative(k), k);
        let mut i = 1;
        while b.deg() > 0 {
            let ai = b.gcd(&d, k)?;
            b = b.div_rem(&ai, k)?.0;
            let c = d.div_rem(&ai, k)?.0;
            d = c.sub(&b.derivative(k), k);
            if ai.deg() > 0 {
                out.push((ai, i));
            }
            i += 1;
        }
        Ok(out)
    }

    /// Factors into monic pieces. Polynomials with rational coefficients are
    /// factored over the rationals; irreducibility over a nontrivial tower is
    /// certified only when the factor degree is coprime to the tower degree.
    /// Other polynomials are only made square-free.
    pub fn factor_over(&self, k: &Tower, cap: usize) -> Result<Vec<KFactor>, TowerError> {
        if self.is_zero() {
            return Err(ArithError::ZeroPolynomial.into());
        }
        if let Some(qp) = self.as_qpoly() {
            let n = k.degree();
            let base_ok = k.depth() == 0 || k.all_certified();
            return Ok(factor_univariate(&qp, cap)?
                .into_iter()
                .map(|f| {
                    let d = f.poly.deg();
                    KFactor {
                        certified: f.certified
                            && (d == 1 || k.depth() == 0 || (base_ok && d.gcd(&n) == 1)),
                        poly: KPoly::from_qpoly(&f.poly),
                        multiplicity: f.multiplicity,
                    }
                })
                .collect());
        }
        Ok(self
            .squarefree_decomposition(k)?
            .into_iter()
            .map(|(p, m)| KFactor { certified: p.deg() == 1, poly: p, multiplicity: m })
            .collect())
    }

    pub fn fmt_var(&self, k: &Tower, var: &str) -> String {
        let mut terms = Vec::new();
        for (i, c) in self.c.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let cs = k.fmt(c);
            let term = if i == 0 {
                cs
            } else if c.is_one() {
                mono
            } else if cs == "-1" {
                format!("-{mono}")
            } else if c.as_rational().is_some() {
                format!("{cs}*{mono}")
            } else {
                format!("({cs})*{mono}")
            };
            terms.push(term);
        }
        join_signed(&terms)
    }
}
