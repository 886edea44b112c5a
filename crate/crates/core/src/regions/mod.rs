//! Sign labels of `Xi_n(s; .)` over rectangular grids in hyperplane-chart
//! coordinates, and discrete checks of connectivity and convexity of the
//! negative region.

mod geometry;
mod grid;

pub use geometry::{
    certify_connected, certify_discrete_convex, center_solution, supercover, ConnectivityReport,
    ConnectivityStatus, ConvexityCheck, DEFAULT_MAX_PAIRS,
};
pub use grid::{scan, Label, RegionGrid, DEFAULT_STEPS, MAX_FREE_DIMENSIONS};
