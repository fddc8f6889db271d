//! Numerics for the concave-convex p-Laplacian problem on an interval,
//!
//! ```text
//! -(|u'|^{p-2} u')' = Λ u^{q-1} + u^{r-1}  in (a, b),   u(a) = u(b) = 0,
//! ```
//!
//! with `1 < q < p < r`. The crate computes the first eigenpair of the
//! p-Laplacian, solves the auxiliary concave and linear-concave problems,
//! runs the monotone sub/supersolution iteration, evaluates the closed-form
//! upper and lower bounds for the existence threshold `Λ_{q,r}` and brackets
//! the threshold itself by bisection.

pub mod cli;
pub mod eigen;
pub mod error;
pub mod grid;
pub mod model_problems;
pub mod monotone_iteration;
pub mod solver;
pub mod threshold;

pub use error::{Error, Result};
pub use grid::{lp_norm, make_grid, sup_norm, w1p_seminorm, Grid, GridFunction};
pub use solver::{
    energy, solve_p_poisson, solve_p_poisson_with, weak_residual, SolveOptions, SolveReport, SolveStatus,
    SolverConfig,
};
