//! Convexity facts behind the minimum of `Xi_n` at equal scales: log-convexity
//! of `u -> theta(e^u)`, the determinant identity for matrices with diagonal
//! `z_i` and off-diagonal `w_i w_j`, Hessian minors of theta products, and
//! convexity of `Xi_n` along hyperplane charts.

mod chart;
mod determinant;
mod theta;
mod xi;

pub use chart::HyperplaneChart;
pub use determinant::{det_jn, jn_closed_form, jn_recursion, sylvester_check, JnInput, SylvesterReport};
pub use theta::{
    claim_ab_check, claim_coefficient, claim_q, h_of_v, log_theta_convexity, log_theta_second_derivative,
    ClaimReport, LogConvexityReport,
};
pub use xi::{
    midpoint_convexity_xi, product_one_samples, verify_minimum_at_equal_scales, MidpointReport, MinimumReport,
    STRICT_MARGIN,
};
