//! Finite combinatorial models of the Torelli geometry of a closed surface.

pub mod error;
pub mod hyperbolic;
pub mod algebra;
pub mod complex;
pub mod curve;
pub mod encoding;
pub mod intmat;
pub mod inventory;
pub mod normal;
pub mod standard;
pub mod surface;
pub mod twist;

pub use error::{CurveError, SurfaceError};
