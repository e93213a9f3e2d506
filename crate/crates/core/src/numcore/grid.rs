use crate::error::{Error, Result};
use crate::numcore::quad;

/// Smallest grid accepted anywhere in the crate.
pub const MIN_NODES: usize = 16;

/// Which kinetic term a Schrödinger-type equation uses.
///
/// `Half` is `-1/2 d²/dx²`, `Unit` is `-d²/dx²`. Every solver takes this
/// explicitly so the two conventions never mix silently.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Kinetic {
    #[default]
    Half,
    Unit,
}

impl Kinetic {
    pub fn kappa(self) -> f64 {
        match self {
            Kinetic::Half => 0.5,
            Kinetic::Unit => 1.0,
        }
    }
}

/// Uniform grid with `n` nodes on `[x_min, x_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    x_min: f64,
    x_max: f64,
    n: usize,
}

impl Grid1D {
    pub fn new(x_min: f64, x_max: f64, n: usize) -> Result<Self> {
        if n < MIN_NODES {
            return Err(Error::GridTooSmall(n));
        }
        if !(x_min.is_finite() && x_max.is_finite()) || x_max <= x_min {
            return Err(Error::InvalidGrid(format!(
                "need finite x_min < x_max, got [{x_min}, {x_max}]"
            )));
        }
        Ok(Self { x_min, x_max, n })
    }

    /// The default box `[-12, 12]` with 3001 nodes.
    pub fn default_box() -> Self {
        Self { x_min: -12.0, x_max: 12.0, n: 3001 }
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }
    pub fn x_max(&self) -> f64 {
        self.x_max
    }
    pub fn len(&self) -> usize {
        self.n
    }
    pub fn is_empty(&self) -> bool {
        false
    }
    pub fn h(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        // last node pinned so x_max is hit exactly
        if i + 1 == self.n {
            self.x_max
        } else {
            self.x_min + i as f64 * self.h()
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.x(i)).collect()
    }

    /// Grid made of nodes `i0..=i1` of this one.
    pub fn sub(&self, i0: usize, i1: usize) -> Result<Self> {
        if i1 >= self.n || i1 <= i0 {
            return Err(Error::InvalidGrid(format!("bad node range {i0}..={i1}")));
        }
        Grid1D::new(self.x(i0), self.x(i1), i1 - i0 + 1)
    }

    /// Index of the node closest to `x` (clamped).
    pub fn index_of(&self, x: f64) -> usize {
        let t = ((x - self.x_min) / self.h()).round();
        t.clamp(0.0, (self.n - 1) as f64) as usize
    }

    /// Two grids are the same if they agree to rounding.
    pub fn same_as(&self, other: &Grid1D) -> bool {
        let tol = 1e-12 * (self.x_max - self.x_min).abs().max(1.0);
        self.n == other.n
            && (self.x_min - other.x_min).abs() <= tol
            && (self.x_max - other.x_max).abs() <= tol
    }
}

/// Real function sampled on a [`Grid1D`].
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    grid: Grid1D,
    values: Vec<f64>,
}

impl SampledFunction {
    pub fn new(grid: Grid1D, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::LengthMismatch { expected: grid.len(), got: values.len() });
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index: i, x: grid.x(i) });
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: Grid1D, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = (0..grid.len()).map(|i| f(grid.x(i))).collect();
        Self::new(grid, values)
    }

    pub fn zeros(grid: Grid1D) -> Self {
        Self { grid, values: vec![0.0; grid.len()] }
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }
    pub fn values(&self) -> &[f64] {
        &self.values
    }
    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
    pub fn len(&self) -> usize {
        self.values.len()
    }
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
    pub fn at(&self, i: usize) -> f64 {
        self.values[i]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(self.grid, self.values.iter().map(|&v| f(v)).collect())
    }

    /// Pointwise combination with another function on the same grid.
    pub fn zip_with(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        if !self.grid.same_as(&other.grid) {
            return Err(Error::GridMismatch);
        }
        let v = self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect();
        Self::new(self.grid, v)
    }

    /// Sup-norm of the difference.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        Ok(self.zip_with(other, |a, b| a - b)?.max_abs())
    }

    pub fn integral(&self) -> f64 {
        quad::simpson(&self.values, self.grid.h())
    }

    pub fn norm_sq(&self) -> f64 {
        quad::simpson_sq(&self.values, self.grid.h())
    }

    /// Rescaled so that the grid integral of the square is one.
    pub fn normalized(&self) -> Result<Self> {
        let n2 = self.norm_sq();
        if !(n2 > 0.0) {
            return Err(Error::InvalidInput("cannot normalize a zero function".into()));
        }
        let s = 1.0 / n2.sqrt();
        self.map(|v| v * s)
    }

    /// Restriction to nodes `i0..=i1`.
    pub fn restrict(&self, i0: usize, i1: usize) -> Result<Self> {
        let g = self.grid.sub(i0, i1)?;
        Self::new(g, self.values[i0..=i1].to_vec())
    }

    /// Sign changes, ignoring nodes with `|v| < rel * max|v|`.
    pub fn sign_changes(&self, rel: f64) -> usize {
        count_sign_changes(&self.values, rel)
    }

    /// Value interpolated linearly at `x` (clamped to the grid).
    pub fn interp(&self, x: f64) -> f64 {
        let h = self.grid.h();
        let t = ((x - self.grid.x_min()) / h).clamp(0.0, (self.len() - 1) as f64);
        let i = (t.floor() as usize).min(self.len() - 2);
        let s = t - i as f64;
        self.values[i] * (1.0 - s) + self.values[i + 1] * s
    }
}

pub(crate) fn count_sign_changes(v: &[f64], rel: f64) -> usize {
    let cut = rel * v.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    let mut last = 0.0_f64;
    let mut changes = 0;
    for &x in v {
        if x.abs() <= cut {
            continue;
        }
        if last != 0.0 && (x > 0.0) != (last > 0.0) {
            changes += 1;
        }
        last = x;
    }
    changes
}
