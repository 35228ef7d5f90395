//! Exact computations for the Weierstrass curves `W_D` in genus two and the
//! Hilbert modular surfaces they live on: prototype enumeration, Euler
//! characteristics, the boundary complex of `Y_D`, intersection numbers and
//! Siegel–Veech constants. Everything is exact; the only decimal output is
//! the labelled billiards coefficient.

pub mod arith;
pub mod boundary;
mod error;
pub mod euler;
pub mod prototypes;
pub mod siegel_veech;
pub mod verify;

pub use arith::{decompose_discriminant, Discriminant, QuadNum, Rational};
pub use boundary::{
    build_complex, export_dot, fundamental_class, intersect, CohClass, CuspComplex, Intersection,
};
pub use error::{Error, Result};
pub use euler::{EulerReport, HTable};
pub use prototypes::{enumerate, Kind, Prototype};
pub use siegel_veech::SvReport;
