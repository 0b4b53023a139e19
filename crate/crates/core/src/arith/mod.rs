//! Exact arithmetic: rationals, univariate and bivariate polynomials,
//! factorization and algebraic extension towers.

pub mod bareiss;
pub mod factor;
pub mod modp;
pub mod poly2;
pub mod qpoly;
pub mod rational;

pub use factor::{factor_univariate, rational_roots, squarefree_and_rational_roots, Factor};
pub use poly2::Poly2;
pub use qpoly::QPoly;
pub use rational::Rational;
pub mod tower;
pub mod unipoly;

pub use tower::{Alg, Split, Tower};
pub use unipoly::{KFactor, KPoly, TowerError};
