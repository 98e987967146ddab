//! Marked surfaces, ideal triangulations, their matrices and flips, and curve classes on
//! the standard disk and annulus models.

pub mod curve;
pub mod geometry;
pub mod json;
pub mod surface;

pub use curve::{Curve, Multicurve};
pub use json::TriangulationJson;
pub use surface::{EdgeClass, EdgeId, EdgeKind, FlipReceipt, MarkedSurface, Model, PointId, Side, Triangulation};
