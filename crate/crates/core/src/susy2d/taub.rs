//! Taub minisuperspace: separated modes in `x₁ = 4α − 8β`, `x₂ = 4α − 2β`
//! and their one-parameter isospectral deformations.
//!
//! The separated equations (unit kinetic term) are
//! `−f₁″ + e^{x₁}/144 f₁ = ω²/4 f₁` and `−f₂″ + e^{x₂}/9 f₂ = ω² f₂`,
//! solved by `f₁ = K_{iω}(e^{x₁/2}/6)` and
//! `f₂ = L_{2iω}(2e^{x₂/2}/3) + K_{2iω}(2e^{x₂/2}/3)`.

use super::bessel::{bessel_k_imag, bessel_l_imag};
use crate::error::{Error, Result};
use crate::numcore::{schrodinger_residual, Grid1D, Kinetic, SampledFunction};
use crate::susy1d::{isospectral_shift, IsospectralFamily};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TaubModel {
    pub omega: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    /// Grids on which the modes are tabulated.
    pub mode_grid1: Grid1D,
    pub mode_grid2: Grid1D,
    /// Node-free windows used for the deformation.
    pub iso_window1: (f64, f64),
    pub iso_window2: (f64, f64),
}

impl TaubModel {
    pub fn new(omega: f64, lambda1: f64, lambda2: f64) -> Result<Self> {
        if !(omega > 0.0) || !omega.is_finite() {
            return Err(Error::InvalidInput(format!("omega must be positive, got {omega}")));
        }
        let g = Grid1D::new(-8.0, 4.0, 1201)?;
        Ok(Self {
            omega,
            lambda1,
            lambda2,
            mode_grid1: g,
            mode_grid2: g,
            iso_window1: (-1.5, 4.0),
            iso_window2: (0.5, 4.0),
        })
    }

    pub fn potential1(&self, grid: Grid1D) -> SampledFunction {
        SampledFunction::from_fn(grid, |x| x.exp() / 144.0).expect("finite")
    }

    pub fn potential2(&self, grid: Grid1D) -> SampledFunction {
        SampledFunction::from_fn(grid, |x| x.exp() / 9.0).expect("finite")
    }

    pub fn energy1(&self) -> f64 {
        self.omega * self.omega / 4.0
    }

    pub fn energy2(&self) -> f64 {
        self.omega * self.omega
    }
}

#[derive(Debug, Clone)]
pub struct TaubModes {
    pub f1: SampledFunction,
    pub f2: SampledFunction,
    /// ODE residuals relative to `max|fᵢ|`.
    pub residual1: f64,
    pub residual2: f64,
}

/// Residual over the span where `|f| > 1e−10 max|f|`.
fn window_residual(v: &SampledFunction, f: &SampledFunction, e: f64) -> Result<f64> {
    let m = f.max_abs();
    let vals = f.values();
    let first = vals.iter().position(|x| x.abs() > 1e-10 * m).unwrap_or(0);
    let last = vals.iter().rposition(|x| x.abs() > 1e-10 * m).unwrap_or(vals.len() - 1);
    let f = f.restrict(first, last)?;
    let v = v.restrict(first, last)?;
    schrodinger_residual(&v, &f, e, Kinetic::Unit)
}

pub fn taub_modes(model: &TaubModel) -> Result<TaubModes> {
    let w = model.omega;
    let f1 = tabulate(model.mode_grid1, |x| bessel_k_imag(w, (x / 2.0).exp() / 6.0))?;
    let f2 = tabulate(model.mode_grid2, |x| {
        let y = 2.0 * (x / 2.0).exp() / 3.0;
        Ok(bessel_l_imag(2.0 * w, y)? + bessel_k_imag(2.0 * w, y)?)
    })?;
    let residual1 = window_residual(&model.potential1(model.mode_grid1), &f1, model.energy1())?;
    let residual2 = window_residual(&model.potential2(model.mode_grid2), &f2, model.energy2())?;
    Ok(TaubModes { f1, f2, residual1, residual2 })
}

fn tabulate(grid: Grid1D, f: impl Fn(f64) -> Result<f64>) -> Result<SampledFunction> {
    let v = (0..grid.len()).map(|i| f(grid.x(i))).collect::<Result<Vec<_>>>()?;
    SampledFunction::new(grid, v)
}

#[derive(Debug, Clone)]
pub struct TaubIso {
    pub family1: IsospectralFamily,
    pub family2: IsospectralFamily,
    /// Residuals of `f̂ᵢ` in the deformed equations.
    pub residual1: f64,
    pub residual2: f64,
    /// `sup|V₊ − e^{x}/c|` on the window: how well the seed reproduces its
    /// own potential through `W² − W′`.
    pub v_plus_error1: f64,
    pub v_plus_error2: f64,
}

impl TaubIso {
    pub fn v_hat1(&self) -> &SampledFunction {
        &self.family1.v_hat
    }
    pub fn v_hat2(&self) -> &SampledFunction {
        &self.family2.v_hat
    }
    pub fn f_hat1(&self) -> &SampledFunction {
        &self.family1.u_hat
    }
    pub fn f_hat2(&self) -> &SampledFunction {
        &self.family2.u_hat
    }
}

fn window(f: &SampledFunction, (lo, hi): (f64, f64)) -> Result<SampledFunction> {
    let g = f.grid();
    if lo < g.x_min() || hi > g.x_max() || lo >= hi {
        return Err(Error::InvalidInput(format!(
            "window [{lo}, {hi}] not inside [{}, {}]",
            g.x_min(),
            g.x_max()
        )));
    }
    let w = f.restrict(g.index_of(lo), g.index_of(hi))?;
    let s0 = w.at(0).signum();
    if let Some(i) = w.values().iter().position(|v| v.signum() != s0 || *v == 0.0) {
        return Err(Error::NodeInSeed { x: w.grid().x(i) });
    }
    Ok(w)
}

pub fn taub_iso(model: &TaubModel, modes: &TaubModes) -> Result<TaubIso> {
    let u1 = window(&modes.f1, model.iso_window1)?;
    let u2 = window(&modes.f2, model.iso_window2)?;
    let family1 = isospectral_shift(&u1, model.lambda1, model.energy1(), Kinetic::Unit)?;
    let family2 = isospectral_shift(&u2, model.lambda2, model.energy2(), Kinetic::Unit)?;
    let residual1 = schrodinger_residual(&family1.v_hat, &family1.u_hat, model.energy1(), Kinetic::Unit)?;
    let residual2 = schrodinger_residual(&family2.v_hat, &family2.u_hat, model.energy2(), Kinetic::Unit)?;
    let v_err = |fam: &IsospectralFamily, exact: SampledFunction| -> Result<f64> {
        let d = fam.v_plus.zip_with(&exact, |a, b| a - b)?;
        let n = d.len();
        Ok(d.values()[1..n - 1].iter().fold(0.0, |m, x| m.max(x.abs())))
    };
    let v_plus_error1 = v_err(&family1, model.potential1(*u1.grid()))?;
    let v_plus_error2 = v_err(&family2, model.potential2(*u2.grid()))?;
    Ok(TaubIso { family1, family2, residual1, residual2, v_plus_error1, v_plus_error2 })
}
