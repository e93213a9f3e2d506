//! Grids, finite differences, quadrature, special functions and the two grid
//! eigensolvers every other module leans on as an oracle.

pub mod diff;
pub mod eigen;
pub mod grid;
pub mod quad;
pub mod special;

pub use diff::differentiate;
pub use eigen::{
    numerov_eigensolve, schrodinger_residual, sl_eigensolve, sl_residual, solve_potential, Level,
    Spectrum,
};
pub use grid::{Grid1D, Kinetic, SampledFunction, MIN_NODES};
pub use quad::{gauss_kronrod, integrate_cumulative};
