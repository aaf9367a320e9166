//! Trigonometric sums of squares, moment lifts and lower bounds for
//! regular polygons.

pub mod error;
pub mod interp;
pub mod lift;
pub mod lowerbound;
pub mod momentmap;
pub mod poly;
pub mod sdpa;
pub mod soscert;
pub mod trigspace;

pub use error::{Error, Result};
pub use poly::{ChebPoly, Domain, Nonnegativity, Poly1, Univariate};
pub use trigspace::{Frequency, FrequencySet, RealBasisFn, RealCoeffs, TrigPoly};
