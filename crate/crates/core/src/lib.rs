//! Exact local analysis of planar polynomial differential equations:
//! algebraic multiplicities of singular points by iterated Newton polygons,
//! degree bounds for invariant algebraic curves, and Darboux polynomial search.

pub mod arith;
pub mod bounds;
pub mod branching;
pub mod caps;
pub mod darboux;
pub mod error;
pub mod lotka;
pub mod newton;
pub mod poly_ode;
pub mod sysparse;

pub use arith::{Alg, Poly2, QPoly, Rational, Tower};
pub use bounds::{axis_bound, detect_invariant_lines, line_bound, line_transform, AxisBound, BoundValue, DetectedLines, LineBound};
pub use branching::{multiplicity_at, Branch, BranchStatus, CriticalWitness, Multiplicity, MultiplicityResult, Point, WitnessRule};
pub use caps::{CapKind, Caps};
pub use darboux::{search_darboux, verify_darboux, DarbouxCertificate, DarbouxOutcome, DarbouxSearch, VectorField};
pub use error::{ArithError, Error, ParseError, Result};
pub use lotka::{apply_symmetry, classify, LvParams, LvReport, LvVerdict, Symmetry};
pub use poly_ode::OdeSystem;
pub use sysparse::{parse_system, Form, ParsedSystem};
