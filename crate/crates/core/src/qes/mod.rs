//! Quasi-exactly solvable `V₀(sinh⁴x − k sinh²x)` with `−½d²/dx²`.
//!
//! With `β = cosh²x` and `ψ = e^{−αβ/2} f(β)` (even) or
//! `ψ = sinh x · e^{−αβ/2} g(β)` (odd), the Gaussian-like factor removes the
//! `β²` term only if `α² = 2V₀`. A polynomial of rank `N` then truncates the
//! coefficient recurrence when
//!
//! ```text
//! even: α = (4N+2)/(1+k)     odd: α = 4(N+1)/(1+k)
//! ```
//!
//! so `V₀ = α²/2`. The `N+1` energies are eigenvalues of the tridiagonal
//! recurrence matrix (times two).

pub mod razavy;

pub use razavy::{finkel_eigenfunction, razavy_recursion_eigen, RazavyRecursion};

use crate::error::{Error, Result};
use crate::numcore::{numerov_eigensolve, Grid1D, Kinetic, SampledFunction, Spectrum};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl std::str::FromStr for Parity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            _ => Err(Error::InvalidInput(format!("parity must be even or odd, got {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QESProblem {
    pub parity: Parity,
    pub n: u32,
    pub k: f64,
}

impl QESProblem {
    pub fn new(parity: Parity, n: u32, k: f64) -> Result<Self> {
        if !k.is_finite() || k <= -1.0 {
            return Err(Error::Divergent { k });
        }
        Ok(Self { parity, n, k })
    }

    pub fn alpha(&self) -> f64 {
        let nf = self.n as f64;
        match self.parity {
            Parity::Even => (4.0 * nf + 2.0) / (1.0 + self.k),
            Parity::Odd => 4.0 * (nf + 1.0) / (1.0 + self.k),
        }
    }

    pub fn v0(&self) -> f64 {
        let a = self.alpha();
        0.5 * a * a
    }

    /// `V₀(sinh⁴x − k sinh²x)` on `grid`.
    pub fn potential(&self, grid: Grid1D) -> SampledFunction {
        let (v0, k) = (self.v0(), self.k);
        SampledFunction::from_fn(grid, |x| {
            let s2 = x.sinh().powi(2);
            v0 * (s2 * s2 - k * s2)
        })
        .expect("finite")
    }

    /// Recurrence matrix acting on the coefficient vector; its eigenvalues
    /// are `E/2`.
    pub fn recurrence_matrix(&self) -> DMatrix<f64> {
        let n = self.n as usize;
        let a = self.alpha();
        let kk = 1.0 + self.k;
        let (shift, extra, sub_c) = match self.parity {
            Parity::Even => (1.0, 0.0, 0.5 * a),
            Parity::Odd => (2.0, 0.25, a),
        };
        let mut m = DMatrix::zeros(n + 1, n + 1);
        for p in 0..=n {
            let pf = p as f64;
            m[(p, p)] = -(pf * (pf - 1.0) + (a + shift) * pf + a / 4.0 - a * a * kk / 4.0 + extra);
            if p > 0 {
                m[(p, p - 1)] = -(-a * (pf - 1.0) + a * a * kk / 4.0 - sub_c);
            }
            if p < n {
                let q = pf + 1.0;
                m[(p, p + 1)] = q * pf + q / 2.0;
            }
        }
        m
    }
}

#[derive(Debug, Clone)]
pub struct QESSolution {
    pub problem: QESProblem,
    pub alpha: f64,
    pub v0: f64,
    /// Increasing.
    pub energies: Vec<f64>,
    /// `c_p` of `f(β) = Σ c_p β^p`, `c₀ = 1`, one row per energy.
    pub coefficients: Vec<Vec<f64>>,
    /// Roots `βᵢ` of each `f`.
    pub roots: Vec<Vec<Complex64>>,
}

/// Continuant `det(M − μI)` and its derivative for tridiagonal `M`.
fn continuant(m: &DMatrix<f64>, mu: f64) -> (f64, f64) {
    let n = m.nrows();
    let (mut d_prev, mut d) = (1.0, m[(0, 0)] - mu);
    let (mut dd_prev, mut dd) = (0.0, -1.0);
    for p in 1..n {
        let off = m[(p, p - 1)] * m[(p - 1, p)];
        let diag = m[(p, p)] - mu;
        let nd = diag * d - off * d_prev;
        let ndd = diag * dd - d - off * dd_prev;
        d_prev = d;
        d = nd;
        dd_prev = dd;
        dd = ndd;
    }
    (d, dd)
}

fn real_eigenvalues(m: &DMatrix<f64>, what: &str) -> Result<Vec<f64>> {
    let ev = m.clone().complex_eigenvalues();
    let scale = ev.iter().fold(1.0_f64, |s, z| s.max(z.norm()));
    let mut out = Vec::with_capacity(ev.len());
    for z in ev.iter() {
        if z.im.abs() > 1e-7 * scale {
            return Err(Error::Degenerate(format!("{what}: complex eigenvalue {z}")));
        }
        out.push(z.re);
    }
    out.sort_by(|a, b| a.total_cmp(b));
    Ok(out)
}

/// Polish a simple root of `f` with Newton steps; keeps the start if a step
/// would wander off.
pub(crate) fn newton_polish(x0: f64, f: impl Fn(f64) -> (f64, f64)) -> f64 {
    let mut x = x0;
    for _ in 0..8 {
        let (v, dv) = f(x);
        if dv == 0.0 || !v.is_finite() || !dv.is_finite() {
            break;
        }
        let step = v / dv;
        if !step.is_finite() || step.abs() > 1e-3 * (1.0 + x.abs()) {
            break;
        }
        x -= step;
        if step.abs() <= 1e-16 * (1.0 + x.abs()) {
            break;
        }
    }
    x
}

fn poly_roots(c: &[f64]) -> Vec<Complex64> {
    let deg = c.len() - 1;
    if deg == 0 {
        return vec![];
    }
    let lead = c[deg];
    let mut comp = DMatrix::<f64>::zeros(deg, deg);
    for i in 0..deg {
        comp[(0, i)] = -c[deg - 1 - i] / lead;
        if i + 1 < deg {
            comp[(i + 1, i)] = 1.0;
        }
    }
    let mut roots: Vec<Complex64> = comp.complex_eigenvalues().iter().copied().collect();
    for r in roots.iter_mut() {
        for _ in 0..6 {
            let (mut p, mut dp) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
            for &ck in c.iter().rev() {
                dp = dp * *r + p;
                p = p * *r + ck;
            }
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            if !(step.norm() < 1e-3 * (1.0 + r.norm())) {
                break;
            }
            *r -= step;
        }
    }
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    roots
}

/// Solve the truncated recurrence: energies, coefficients and roots.
pub fn qes_solve(problem: QESProblem) -> Result<QESSolution> {
    let problem = QESProblem::new(problem.parity, problem.n, problem.k)?;
    let m = problem.recurrence_matrix();
    let n = m.nrows();
    let mut mus = real_eigenvalues(&m, "recurrence matrix")?;
    for mu in mus.iter_mut() {
        *mu = newton_polish(*mu, |x| continuant(&m, x));
    }
    for w in mus.windows(2) {
        if (w[1] - w[0]).abs() <= 1e-10 * (1.0 + w[0].abs()) {
            return Err(Error::Degenerate("repeated recurrence eigenvalue".into()));
        }
    }
    let mut coefficients = Vec::with_capacity(n);
    let mut roots = Vec::with_capacity(n);
    for &mu in &mus {
        let mut c = vec![0.0; n];
        c[0] = 1.0;
        for p in 0..n - 1 {
            let prev = if p > 0 { m[(p, p - 1)] * c[p - 1] } else { 0.0 };
            c[p + 1] = -(prev + (m[(p, p)] - mu) * c[p]) / m[(p, p + 1)];
        }
        roots.push(poly_roots(&c));
        coefficients.push(c);
    }
    Ok(QESSolution {
        problem,
        alpha: problem.alpha(),
        v0: problem.v0(),
        energies: mus.iter().map(|mu| 2.0 * mu).collect(),
        coefficients,
        roots,
    })
}

impl QESSolution {
    /// Slot of level `j` in the full spectrum: `2j` even, `2j+1` odd.
    pub fn spectrum_index(&self, level: usize) -> usize {
        match self.problem.parity {
            Parity::Even => 2 * level,
            Parity::Odd => 2 * level + 1,
        }
    }

    /// Normalized closed-form eigenfunction of `level` on `grid`.
    pub fn eigenfunction(&self, level: usize, grid: Grid1D) -> Result<SampledFunction> {
        let c = self
            .coefficients
            .get(level)
            .ok_or_else(|| Error::InvalidInput(format!("level {level} out of range")))?;
        let a = self.alpha;
        let odd = self.problem.parity == Parity::Odd;
        let f = SampledFunction::from_fn(grid, |x| {
            let b = x.cosh().powi(2);
            let poly = c.iter().rev().fold(0.0, |acc, ck| acc * b + ck);
            let env = (-0.5 * a * b).exp();
            let pre = if odd { x.sinh() } else { 1.0 };
            if env == 0.0 {
                0.0
            } else {
                pre * env * poly
            }
        })?;
        let f = f.normalized()?;
        // sign: positive at the first significant lobe
        let m = f.max_abs();
        let first = f.values().iter().find(|v| v.abs() > 1e-3 * m).copied().unwrap_or(1.0);
        if first < 0.0 {
            f.map(|v| -v)
        } else {
            Ok(f)
        }
    }

    /// Energy recovered from the sum of roots of `level`.
    pub fn sum_rule_energy(&self, level: usize) -> f64 {
        let a = self.alpha;
        let nf = self.problem.n as f64;
        let kk = 1.0 + self.problem.k;
        let s1: f64 = self.roots[level].iter().map(|r| r.re).sum();
        let e = a * a * kk / 2.0 + a * (2.0 * s1 - 2.0 * nf - 0.5) - 2.0 * nf * nf;
        match self.problem.parity {
            Parity::Even => e,
            Parity::Odd => e - (2.0 * nf + 0.5),
        }
    }
}

/// Residual of the root system `Σ_{j≠i} 2/(βᵢ−βⱼ) + P(βᵢ)/(βᵢ²−βᵢ)` for
/// explicit roots. `P = −αβ² + (α+1)β − ½` (even), `(α+2)` in place of
/// `α+1` (odd).
pub fn bethe_residual_for_roots(roots: &[Complex64], alpha: f64, parity: Parity) -> Result<f64> {
    let lin = match parity {
        Parity::Even => alpha + 1.0,
        Parity::Odd => alpha + 2.0,
    };
    let scale = roots.iter().fold(1.0_f64, |s, r| s.max(r.norm()));
    let mut worst = 0.0_f64;
    for (i, &bi) in roots.iter().enumerate() {
        let denom = bi * bi - bi;
        if denom.norm() < 1e-12 * scale * scale {
            return Err(Error::Degenerate(format!("root {bi} sits on a singular point")));
        }
        let mut s = Complex64::new(0.0, 0.0);
        for (j, &bj) in roots.iter().enumerate() {
            if i != j {
                let d = bi - bj;
                if d.norm() < 1e-9 * scale {
                    return Err(Error::Degenerate("repeated roots".into()));
                }
                s += 2.0 / d;
            }
        }
        let p = -alpha * bi * bi + lin * bi - 0.5;
        worst = worst.max((s + p / denom).norm());
    }
    Ok(worst)
}

pub fn bethe_root_residual(solution: &QESSolution, level: usize) -> Result<f64> {
    let roots = solution
        .roots
        .get(level)
        .ok_or_else(|| Error::InvalidInput(format!("level {level} out of range")))?;
    bethe_residual_for_roots(roots, solution.alpha, solution.problem.parity)
}

/// Even `N = 1`: `E± = [9 − (1+k) ± √((1+k)² + 36)] / (1+k)`, returned as
/// `(E₋, E₊)`.
pub fn closed_form_n1(k: f64) -> Result<(f64, f64)> {
    if !k.is_finite() || k <= -1.0 {
        return Err(Error::Divergent { k });
    }
    let kk = 1.0 + k;
    let r = (kk * kk + 36.0).sqrt();
    Ok(((9.0 - kk - r) / kk, (9.0 - kk + r) / kk))
}

/// Ground state of `α²/2 cosh²x − 3α/2 cosh x + α/cosh x`:
/// `ψ ∝ e^{−α cosh x} cosh x`, `E = (α² − 1)/2`.
pub fn unclassified_groundstate(alpha: f64, grid: Grid1D) -> Result<(SampledFunction, SampledFunction, f64)> {
    if !(alpha > 0.0) {
        return Err(Error::InvalidInput(format!("alpha must be positive, got {alpha}")));
    }
    let v = SampledFunction::from_fn(grid, |x| {
        let c = x.cosh();
        0.5 * alpha * alpha * c * c - 1.5 * alpha * c + alpha / c
    })?;
    let psi = SampledFunction::from_fn(grid, |x| {
        let c = x.cosh();
        (-alpha * c).exp() * c
    })?
    .normalized()?;
    Ok((v, psi, 0.5 * (alpha * alpha - 1.0)))
}

#[derive(Debug, Clone, Serialize)]
pub struct DivergenceRow {
    pub k: f64,
    pub v0: f64,
    pub e0: f64,
    /// `E₀(1+k)`.
    pub e0_scaled: f64,
    /// `V₀(1+k)²`, constant along the table.
    pub v0_scaled: f64,
}

pub fn divergence_profile(parity: Parity, n: u32, k_values: &[f64]) -> Result<Vec<DivergenceRow>> {
    k_values
        .iter()
        .map(|&k| {
            let sol = qes_solve(QESProblem::new(parity, n, k)?)?;
            let e0 = sol.energies[0];
            let kk = 1.0 + k;
            Ok(DivergenceRow { k, v0: sol.v0, e0, e0_scaled: e0 * kk, v0_scaled: sol.v0 * kk * kk })
        })
        .collect()
}

/// `(E₁ − E₀)/|E₀|` of the two lowest grid levels of `V₀(sinh⁴ − k sinh²)`.
pub fn doublet_gap(v0: f64, k: f64, grid: Grid1D) -> Result<f64> {
    let v = SampledFunction::from_fn(grid, |x| {
        let s2 = x.sinh().powi(2);
        v0 * (s2 * s2 - k * s2)
    })?;
    let spec = numerov_eigensolve(&v, 2, Kinetic::Half)?;
    if spec.levels.len() < 2 {
        return Err(Error::Degenerate("fewer than two bound states".into()));
    }
    let (e0, e1) = (spec.levels[0].energy, spec.levels[1].energy);
    Ok((e1 - e0) / e0.abs())
}

/// Grid spectrum of the QES potential, deep enough to hold every slot.
pub fn oracle_spectrum(solution: &QESSolution, grid: Grid1D) -> Result<Spectrum> {
    let count = solution.spectrum_index(solution.energies.len() - 1) + 1;
    numerov_eigensolve(&solution.problem.potential(grid), count, Kinetic::Half)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_state_n0() {
        let s = qes_solve(QESProblem::new(Parity::Even, 0, 0.0).unwrap()).unwrap();
        assert_eq!(s.v0, 2.0);
        assert!((s.energies[0] - 1.0).abs() < 1e-14);
        assert!(s.roots[0].is_empty());
    }

    #[test]
    fn divergent_k_rejected() {
        assert!(matches!(QESProblem::new(Parity::Even, 1, -1.0), Err(Error::Divergent { .. })));
        assert!(closed_form_n1(-2.0).is_err());
    }

    #[test]
    fn continuant_vanishes_at_eigenvalues() {
        let p = QESProblem::new(Parity::Odd, 3, 0.5).unwrap();
        let s = qes_solve(p).unwrap();
        let m = p.recurrence_matrix();
        for e in &s.energies {
            let (d, dd) = continuant(&m, e / 2.0);
            assert!(d.abs() < 1e-9 * dd.abs().max(1.0));
        }
    }

    #[test]
    fn companion_roots() {
        // (x-1)(x-2)(x+3) = x^3 - 7x + 6
        let r = poly_roots(&[6.0, -7.0, 0.0, 1.0]);
        let re: Vec<f64> = r.iter().map(|z| z.re).collect();
        assert!((re[0] + 3.0).abs() < 1e-12 && (re[1] - 1.0).abs() < 1e-12 && (re[2] - 2.0).abs() < 1e-12);
    }
}
