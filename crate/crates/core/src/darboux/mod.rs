//! Invariant algebraic curves of polynomial vector fields.

use std::cmp::Ordering;

use num_traits::Signed;

use crate::arith::Poly2;

pub mod bifactor;
pub mod extactic;
pub mod lines;
pub mod verify;

pub use bifactor::{is_irreducible, small_factors, BiFactors};
pub use extactic::{extactic, monomial_basis, search_darboux, DarbouxSearch, EXTACTIC_DIM_CAP};
pub use lines::{invariant_lines, LineSearch};
pub use verify::{constant_components, strictness_check, verify_darboux, DarbouxCertificate, DarbouxOutcome, VectorField};

/// Terms from highest total degree down, `z` before `w` within a degree.
fn ordered_terms(f: &Poly2) -> Vec<(u32, u32)> {
    let mut ks: Vec<(u32, u32)> = f.terms().map(|(k, _)| *k).collect();
    ks.sort_by(|a, b| (b.0 + b.1).cmp(&(a.0 + a.1)).then(b.0.cmp(&a.0)));
    ks
}

/// Integer-primitive representative whose first term is positive.
pub fn canonical(f: &Poly2) -> Poly2 {
    let p = f.primitive();
    match ordered_terms(&p).first() {
        Some(&(i, j)) if p.coeff(i, j).is_negative() => -&p,
        _ => p,
    }
}

/// Degree first, then the printed form.
pub fn canonical_order(a: &Poly2, b: &Poly2) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| a.to_string().cmp(&b.to_string()))
}
