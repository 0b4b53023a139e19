//! Puiseux-coefficient polynomials, the ODE system and its transforms.

pub mod bipoly;
pub mod system;

pub use bipoly::{BiPoly, ZSeries};
pub use system::{shear, CoeffProfile, Lowest, OdeSystem};
