//! Scalar polynomial machinery shared by all projectors.

mod bessel;
mod chebyshev;
mod complexity;
mod filter;
mod ite;
mod step;
mod wall;

pub use bessel::bessel_i;
pub use chebyshev::{cheb_eval, ChebSeries, Parity};
pub use complexity::{predicted_order, ComplexityEstimate, Method};
pub use filter::{eigenstate_filter_eval, EigenstateFilter};
pub use ite::{
    first_order_error, ite_cheb_coefficients, ite_order_bound, ite_timestep_select,
    ite_truncation_bound, DEFAULT_TRUNCATION_BUDGET,
};
pub use step::{step_poly_fit, StepFit, StepOutcome};
pub use wall::{
    convergence_factor, wall_cheb_coefficients, wall_cheb_eval, wall_cheb_nodes,
    wall_unit_nodes, EvalMode, NodeSet,
};
