//! Two-dimensional pieces: separable factorization with 4×4 supercharges,
//! the Taub minisuperspace modes and their isospectral deformation, and the
//! Grassmann-component supermultiplet.

pub mod bessel;
pub mod grassmann;
pub mod separable;
pub mod taub;

pub use bessel::{bessel_i_imag_order, bessel_k_imag, bessel_l_imag};
pub use grassmann::{
    constraint_residuals, probability_density, solve_supermultiplet, ConstraintResiduals, Density, Metric,
    NullDirection, SupermultipletParams, SupermultipletState,
};
pub use separable::{separable_2d_factorization, separable_2d_factorization_with, SeparableReport};
pub use taub::{taub_iso, taub_modes, TaubIso, TaubModel, TaubModes};

use crate::error::{Error, Result};
use crate::numcore::diff::{d1, d2};
use crate::numcore::Grid1D;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid2D {
    pub q0: Grid1D,
    pub q1: Grid1D,
}

impl Grid2D {
    pub fn new(q0: Grid1D, q1: Grid1D) -> Self {
        Self { q0, q1 }
    }

    pub fn square(lo: f64, hi: f64, n: usize) -> Result<Self> {
        let g = Grid1D::new(lo, hi, n)?;
        Ok(Self { q0: g, q1: g })
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.q0.len(), self.q1.len())
    }

    pub fn len(&self) -> usize {
        self.q0.len() * self.q1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Q0,
    Q1,
}

/// Samples on a [`Grid2D`], stored with `q0` as the slow index.
#[derive(Debug, Clone, PartialEq)]
pub struct Field2D {
    grid: Grid2D,
    values: Vec<f64>,
}

impl Field2D {
    pub fn new(grid: Grid2D, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::LengthMismatch { expected: grid.len(), got: values.len() });
        }
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index: k, x: grid.q0.x(k / grid.q1.len()) });
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: Grid2D, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        let mut v = Vec::with_capacity(grid.len());
        for i in 0..grid.q0.len() {
            let a = grid.q0.x(i);
            for j in 0..grid.q1.len() {
                v.push(f(a, grid.q1.x(j)));
            }
        }
        Self::new(grid, v)
    }

    pub fn zeros(grid: Grid2D) -> Self {
        Self { grid, values: vec![0.0; grid.len()] }
    }

    pub fn grid(&self) -> &Grid2D {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.grid.q1.len() + j]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self { grid: self.grid, values: self.values.iter().map(|&v| f(v)).collect() }
    }

    pub fn zip_with(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect();
        Ok(Self { grid: self.grid, values })
    }

    /// Fourth-order partial derivative of order 1 or 2 along `axis`.
    pub fn partial(&self, axis: Axis, order: u8) -> Result<Self> {
        let (n0, n1) = self.grid.shape();
        let op: fn(&[f64], f64) -> Vec<f64> = match order {
            1 => d1,
            2 => d2,
            _ => return Err(Error::InvalidInput(format!("derivative order {order} not supported"))),
        };
        let mut out = vec![0.0; self.values.len()];
        match axis {
            Axis::Q1 => {
                let h = self.grid.q1.h();
                for i in 0..n0 {
                    let row = &self.values[i * n1..(i + 1) * n1];
                    out[i * n1..(i + 1) * n1].copy_from_slice(&op(row, h));
                }
            }
            Axis::Q0 => {
                let h = self.grid.q0.h();
                let mut col = vec![0.0; n0];
                for j in 0..n1 {
                    for i in 0..n0 {
                        col[i] = self.values[i * n1 + j];
                    }
                    for (i, d) in op(&col, h).into_iter().enumerate() {
                        out[i * n1 + j] = d;
                    }
                }
            }
        }
        Ok(Self { grid: self.grid, values: out })
    }

    /// Largest `|v|` over nodes at least `margin` away from every edge.
    pub fn interior_max_abs(&self, margin: usize) -> f64 {
        let (n0, n1) = self.grid.shape();
        let mut m = 0.0_f64;
        for i in margin..n0.saturating_sub(margin) {
            for j in margin..n1.saturating_sub(margin) {
                m = m.max(self.at(i, j).abs());
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partials_of_a_polynomial_are_exact() {
        let g = Grid2D::square(-1.0, 1.0, 41).unwrap();
        let f = Field2D::from_fn(g, |a, b| a * a * b + 3.0 * b * b).unwrap();
        let f0 = f.partial(Axis::Q0, 1).unwrap();
        let f11 = f.partial(Axis::Q1, 2).unwrap();
        for i in 0..41 {
            for j in 0..41 {
                let (a, b) = (g.q0.x(i), g.q1.x(j));
                assert!((f0.at(i, j) - 2.0 * a * b).abs() < 1e-11);
                assert!((f11.at(i, j) - 6.0).abs() < 1e-9);
            }
        }
    }
}
