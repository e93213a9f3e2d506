//! Supersymmetric quantum mechanics on a grid.
//!
//! Partner potentials and Darboux families, the two-parameter Pöschl-Teller
//! factorization, quasi-exactly solvable sinh potentials and a few 2D
//! constructions. Each analytic result is paired with an independent
//! numerical check; see [`verify`].

// `!(x > 0.0)` is used on purpose: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod io;
pub mod numcore;
pub mod pt_twoparam;
pub mod qes;
pub mod report;
pub mod susy1d;
pub mod susy2d;
pub mod verify;

pub use error::{Error, Result};
