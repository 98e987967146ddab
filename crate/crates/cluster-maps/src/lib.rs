//! Quantum cluster tori bound to triangulations, ensemble maps, the quantum exchange
//! relation, the duality map on P-laminations and the verifiers for the compatibility
//! squares between the skein and cluster sides.

pub mod duality;
pub mod ensemble;
pub mod report;
pub mod suites;

pub use duality::{duality_x, pointedness, span_check, Pointedness, SpanCheck};
pub use ensemble::{
    a_lattice, ensemble_balanced, ensemble_q, ensemble_vector, exchange_adjoint_form, quantum_exchange,
    transport_a,
};
pub use report::{Report, SuiteSummary};
pub use suites::{shifted_monomial_check, run_suite, verify_square, verify_trace_cut, SuiteConfig, SUITES};
