//! Bounded-degree search through extactic determinants.
//!
//! For the monomial basis `v_1..v_N` of degree at most `n`, the determinant
//! of `X^i(v_j)` vanishes on every invariant curve of degree at most `n`.
//! Its small factors are the candidates; an identically zero determinant
//! signals a rational first integral of degree at most `n`.

use std::collections::BTreeSet;

use super::bifactor::small_factors;
use super::lines::invariant_lines;
use super::verify::{verify_darboux, DarbouxCertificate, DarbouxOutcome, VectorField};
use super::{canonical, canonical_order};
use crate::arith::bareiss::determinant;
use crate::arith::Poly2;
use crate::error::Result;

/// Largest extactic matrix size searched by default (degree 3).
pub const EXTACTIC_DIM_CAP: usize = 10;

pub fn monomial_basis(n: u32) -> Vec<Poly2> {
    let mut out = Vec::new();
    for d in 0..=n {
        for j in 0..=d {
            out.push(Poly2::monomial(crate::arith::rational::int(1), d - j, j));
        }
    }
    out
}

pub fn extactic(field: &VectorField, n: u32) -> Poly2 {
    let mut row = monomial_basis(n);
    let mut rows = Vec::with_capacity(row.len());
    for _ in 0..row.len() {
        let next = row.iter().map(|v| field.apply(v)).collect();
        rows.push(row);
        row = next;
    }
    determinant(rows)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DarbouxSearch {
    /// Irreducible Darboux polynomials, one per curve, canonically sorted.
    pub certificates: Vec<DarbouxCertificate>,
    /// `extactic-zero:n`, `extactic-cap:n`, `factor-budget:n`, `line-pencil`,
    /// `irrational-lines`.
    pub flags: BTreeSet<String>,
    /// Every degree up to the requested one was searched to completion.
    pub complete: bool,
}

fn accept(field: &VectorField, f: &Poly2, found: &mut Vec<DarbouxCertificate>) -> Result<()> {
    let f = canonical(f);
    if f.is_constant() || found.iter().any(|c| c.f == f) {
        return Ok(());
    }
    if let DarbouxOutcome::Certificate(c) = verify_darboux(field, &f)? {
        assert!(
            c.cofactor.is_zero() || c.cofactor.degree() < field.degree().max(1),
            "cofactor degree exceeds the field degree minus one"
        );
        found.push(c);
    }
    Ok(())
}

pub fn search_darboux(field: &VectorField, max_degree: u32, dim_cap: usize) -> Result<DarbouxSearch> {
    let mut out = DarbouxSearch { complete: true, ..Default::default() };
    if max_degree == 0 {
        return Ok(out);
    }
    let lines = invariant_lines(field);
    if lines.pencil {
        out.flags.insert("line-pencil".into());
    }
    if lines.irrational_slopes {
        out.flags.insert("irrational-lines".into());
    }
    for l in lines.lines.iter().filter(|l| l.degree() <= max_degree) {
        accept(field, l, &mut out.certificates)?;
    }
    for n in 1..=max_degree {
        if (n as usize + 1) * (n as usize + 2) / 2 > dim_cap {
            out.flags.insert(format!("extactic-cap:{n}"));
            out.complete = false;
            break;
        }
        let e = extactic(field, n);
        if e.is_zero() {
            out.flags.insert(format!("extactic-zero:{n}"));
            out.complete = false;
            continue;
        }
        // known Darboux factors divide the extactic; strip them before factoring
        let mut e = e;
        for c in &out.certificates {
            while let Some(q) = e.div_exact(&c.f) {
                e = q;
            }
        }
        let fs = small_factors(&e, n);
        if !fs.complete {
            out.flags.insert(format!("factor-budget:{n}"));
            out.complete = false;
        }
        for (f, _) in &fs.factors {
            accept(field, f, &mut out.certificates)?;
        }
    }
    out.certificates.sort_by(|a, b| canonical_order(&a.f, &b.f));
    Ok(out)
}
