//! Razavy potential `½(ζ cosh 2x − M)²` and its three-term recursion.
//!
//! For a sector `(σ, η)` and rank `n` the truncating value is
//! `M = 2n + 2 − σ`; expanding the square gives
//! `2ζ² sinh⁴ + 2ζ(ζ − M) sinh² + ½(ζ − M)²`, i.e. the QES family with
//! `V₀ = 2ζ²`, `k = (M − ζ)/ζ` and a constant offset `½(ζ − M)²`.

use super::{newton_polish, Parity, QESProblem};
use crate::error::{Error, Result};
use crate::numcore::special::gamma;
use crate::numcore::{Grid1D, SampledFunction};
use nalgebra::DMatrix;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RazavyRecursion {
    pub zeta: f64,
    pub n: u32,
    pub sigma: i32,
    pub eta: i32,
}

impl RazavyRecursion {
    pub fn new(zeta: f64, n: u32, sigma: i32, eta: i32) -> Result<Self> {
        let ok = matches!((sigma, eta), (1, 0) | (-1, 0) | (0, 1) | (0, -1));
        if !ok {
            return Err(Error::InvalidInput(format!(
                "(sigma, eta) must be (+-1, 0) or (0, +-1), got ({sigma}, {eta})"
            )));
        }
        if !(zeta > 0.0 && zeta.is_finite()) {
            return Err(Error::InvalidInput(format!("zeta must be positive, got {zeta}")));
        }
        Ok(Self { zeta, n, sigma, eta })
    }

    /// The configuration describing the same potential as a QES problem:
    /// `ζ = α/2`, even ↔ `(1, 0)`, odd ↔ `(0, −1)`, same rank.
    pub fn for_qes(problem: QESProblem) -> Result<Self> {
        let zeta = problem.alpha() / 2.0;
        match problem.parity {
            Parity::Even => Self::new(zeta, problem.n, 1, 0),
            Parity::Odd => Self::new(zeta, problem.n, 0, -1),
        }
    }

    pub fn m_param(&self) -> f64 {
        (2 * self.n as i32 + 2 - self.sigma) as f64
    }

    pub fn a(&self, j: u32) -> f64 {
        let (jf, nf) = (j as f64, self.n as f64);
        16.0 * self.zeta * jf * (2.0 * jf - self.sigma as f64 + self.eta as f64) * (jf - nf - 1.0)
    }

    pub fn b(&self, j: u32) -> f64 {
        let (jf, nf) = (j as f64, self.n as f64);
        let (s, e, z) = (self.sigma as f64, self.eta as f64, self.zeta);
        -4.0 * jf * (jf + 1.0 - s + 2.0 * z) + (2.0 * nf + 1.0) * (2.0 * (nf - s) + 3.0) + z * (z - 2.0 * e + 4.0 * nf)
    }

    /// `P̂₀ … P̂_{n+1}` at `E_R`.
    pub fn polynomials(&self, e_r: f64) -> Vec<f64> {
        let mut p = Vec::with_capacity(self.n as usize + 2);
        p.push(1.0);
        p.push(e_r - self.b(0));
        for j in 1..=self.n {
            let j_us = j as usize;
            p.push((e_r - self.b(j)) * p[j_us] - self.a(j) * p[j_us - 1]);
        }
        p
    }

    /// `P̂_{n+1}` and its derivative.
    fn top(&self, e_r: f64) -> (f64, f64) {
        let (mut p0, mut p1) = (1.0, e_r - self.b(0));
        let (mut d0, mut d1) = (0.0, 1.0);
        for j in 1..=self.n {
            let (a, b) = (self.a(j), self.b(j));
            let p2 = (e_r - b) * p1 - a * p0;
            let d2 = p1 + (e_r - b) * d1 - a * d0;
            p0 = p1;
            p1 = p2;
            d0 = d1;
            d1 = d2;
        }
        (p1, d1)
    }

    pub fn potential(&self, grid: Grid1D) -> SampledFunction {
        let (z, m) = (self.zeta, self.m_param());
        SampledFunction::from_fn(grid, |x| 0.5 * (z * (2.0 * x).cosh() - m).powi(2)).expect("finite")
    }

    /// `(V₀, k, offset)` with `½(ζcosh2x − M)² = V₀(sinh⁴ − k sinh²) + offset`.
    pub fn qes_equivalent(&self) -> (f64, f64, f64) {
        let (z, m) = (self.zeta, self.m_param());
        (2.0 * z * z, (m - z) / z, 0.5 * (z - m).powi(2))
    }
}

/// Roots `E_R` of `P̂_{n+1}` (increasing). Energies are `E_R/2`.
pub fn razavy_recursion_eigen(rec: &RazavyRecursion) -> Result<Vec<f64>> {
    let n = rec.n as usize + 1;
    let mut j = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        j[(i, i)] = rec.b(i as u32);
        if i > 0 {
            j[(i, i - 1)] = rec.a(i as u32);
            j[(i - 1, i)] = 1.0;
        }
    }
    let ev = j.complex_eigenvalues();
    let scale = ev.iter().fold(1.0_f64, |s, z| s.max(z.norm()));
    let mut roots = Vec::with_capacity(n);
    for z in ev.iter() {
        if z.im.abs() > 1e-7 * scale {
            return Err(Error::Degenerate(format!(
                "complex root {z} for (sigma, eta, n) = ({}, {}, {})",
                rec.sigma, rec.eta, rec.n
            )));
        }
        roots.push(newton_polish(z.re, |x| rec.top(x)));
    }
    roots.sort_by(|a, b| a.total_cmp(b));
    Ok(roots)
}

/// Closed-form eigenfunction at a root `E_R`, normalized on `grid`:
/// `sinh^{(1−σ−η)/2} cosh^{(1−σ+η)/2} e^{−(ζ/2)cosh 2x} Σ P̂ⱼ cosh^{2j} / Γ(2j + (η−σ+1)/2 + 1)`.
pub fn finkel_eigenfunction(rec: &RazavyRecursion, e_r: f64, grid: Grid1D) -> Result<SampledFunction> {
    let p = rec.polynomials(e_r);
    let shift = (rec.eta - rec.sigma + 1) as f64 / 2.0;
    let weights: Vec<f64> = (0..=rec.n as usize)
        .map(|j| p[j] / gamma(2.0 * j as f64 + shift + 1.0))
        .collect();
    let sinh_pow = (1 - rec.sigma - rec.eta) / 2;
    let cosh_pow = (1 - rec.sigma + rec.eta) / 2;
    let z = rec.zeta;
    let f = SampledFunction::from_fn(grid, |x| {
        let env = (-0.5 * z * (2.0 * x).cosh()).exp();
        if env == 0.0 {
            return 0.0;
        }
        let c2 = x.cosh().powi(2);
        let s = weights.iter().rev().fold(0.0, |acc, w| acc * c2 + w);
        x.sinh().powi(sinh_pow) * x.cosh().powi(cosh_pow) * env * s
    })?;
    let f = f.normalized()?;
    let m = f.max_abs();
    let first = f.values().iter().find(|v| v.abs() > 1e-3 * m).copied().unwrap_or(1.0);
    if first < 0.0 {
        f.map(|v| -v)
    } else {
        Ok(f)
    }
}
