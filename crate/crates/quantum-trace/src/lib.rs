//! The quantum trace as a triangle-local state sum into the square-root torus, its
//! congruent part in the X-torus, the duality map on A-laminations, and the transport of
//! X-torus elements across a flip.

pub mod rational;
pub mod trace;

pub use rational::{transport_x, RationalX};
pub use trace::{
    duality_a, to_congruent_x, trace_curve, trace_lamination, trace_stated, trace_word, x_lattice,
    z_lattice,
};
