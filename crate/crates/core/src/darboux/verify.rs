//! Exact Darboux checks: `ż f_z + ẇ f_w = R f`.

use crate::arith::factor::integer_factors;
use crate::arith::{Poly2, QPoly};
use crate::error::{Error, Result};

/// Polynomial vector field `(ż, ẇ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    pub zdot: Poly2,
    pub wdot: Poly2,
}

impl VectorField {
    pub fn new(zdot: Poly2, wdot: Poly2) -> VectorField {
        VectorField { zdot, wdot }
    }

    /// Maximum total degree of the components.
    pub fn degree(&self) -> u32 {
        self.zdot.degree().max(self.wdot.degree())
    }

    /// The derivation `X(f) = ż f_z + ẇ f_w`.
    pub fn apply(&self, f: &Poly2) -> Poly2 {
        &(&self.zdot * &f.dz()) + &(&self.wdot * &f.dw())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DarbouxCertificate {
    pub f: Poly2,
    pub cofactor: Poly2,
    /// No component of the form `z − z0` or `w − w0`.
    pub strict: bool,
    /// Components of the form `z − z0` or `w − w0`, grouped by rational factor.
    pub constant_components: Vec<Poly2>,
    /// `Some(true)` when irreducibility over the rationals was proved.
    pub irreducible: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DarbouxOutcome {
    Certificate(DarbouxCertificate),
    /// `X(f) = q f + remainder` with a nonzero remainder.
    NotDarboux { remainder: Poly2 },
}

/// Divides `X(f)` by `f` exactly.
pub fn verify_darboux(field: &VectorField, f: &Poly2) -> Result<DarbouxOutcome> {
    if f.is_constant() {
        return Err(Error::Invalid("constant candidate".into()));
    }
    let xf = field.apply(f);
    let (q, r) = xf.div_rem(f);
    if !r.is_zero() {
        return Ok(DarbouxOutcome::NotDarboux { remainder: r });
    }
    let constant_components = constant_components(f);
    let irreducible = super::bifactor::is_irreducible(f);
    Ok(DarbouxOutcome::Certificate(DarbouxCertificate {
        f: f.clone(),
        cofactor: q,
        strict: constant_components.is_empty(),
        constant_components,
        irreducible,
    }))
}

fn univariate_factors(c: &QPoly) -> Vec<QPoly> {
    if c.deg() == 0 {
        return vec![];
    }
    let mut out = Vec::new();
    for (part, _) in c.squarefree_decomposition() {
        let (_, ints) = part.to_primitive_ints();
        let r = integer_factors(&ints, part.deg());
        out.extend(r.factors.iter().map(|f| QPoly::from_bigints(f)));
        if r.cofactor.len() > 1 {
            out.push(QPoly::from_bigints(&r.cofactor));
        }
    }
    out
}

/// Irreducible factors of `f` involving only `z` or only `w`.
pub fn constant_components(f: &Poly2) -> Vec<Poly2> {
    let mut out = Vec::new();
    for g in univariate_factors(&f.content_w()) {
        out.push(Poly2::from_w_coeffs(&[g]).primitive());
    }
    for g in univariate_factors(&f.swap().content_w()) {
        out.push(Poly2::from_w_coeffs(&[g]).swap().primitive());
    }
    out
}

/// Strictness verdict with the offending components.
pub fn strictness_check(f: &Poly2) -> (bool, Vec<Poly2>) {
    let c = constant_components(f);
    (c.is_empty(), c)
}
