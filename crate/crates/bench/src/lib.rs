//! Benchmark fixtures shared by the criterion targets.

use pbound_core::arith::rational::int;
use pbound_core::{OdeSystem, Poly2, Rational};

/// `dw/dz = (z^2 + mu*w) / (z + w^2)`.
pub fn mu_family(mu: Rational) -> OdeSystem {
    let p = &Poly2::from_ints(&[(1, 2, 0)]) + &Poly2::monomial(mu, 0, 1);
    let q = Poly2::from_ints(&[(1, 1, 0), (1, 0, 2)]);
    OdeSystem::from_poly2(&p, &q).expect("valid system")
}

pub fn mu_family_int(mu: i64) -> OdeSystem {
    mu_family(int(mu))
}
