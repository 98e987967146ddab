//! Exact arithmetic in `Z[q^{±1/2}]` and based quantum tori over skew lattices.

pub mod error;
pub mod scalar;
pub mod torus;

pub use error::{Error, Result};
pub use scalar::QScalar;
pub use torus::{ChebyshevKind, ChebyshevPoly, SkewLattice, TorusElement};
