//! Pöschl-Teller ladder operators and the two-parameter factorization.
//!
//! Unit kinetic term throughout: `H_{m+1} = −d² − α²m(m+1) sech²(αx)`.
//! With `λ = m+1`, `s = sech(αx)` and `J(x) = ∫₀ˣ s^{2λ}`, the deformation
//! is carried by `φ = s^λ / (1 + γ₁J)`:
//!
//! ```text
//! η = (1 + γ₂ φ²)^{−1/2}
//! β = (αλ tanh(αx) + S₁) η,      S₁ = γ₁ s^{2λ} / (1 + γ₁J)
//! ```
//!
//! `B = η⁻¹d/dx + β` and `B* = −η d/dx + β` then satisfy
//! `B B* = H_{m+1} + α²λ²`. The reversed product gives a Sturm-Liouville
//! problem with `p = w = η⁻²` whose spectrum is that of the PT well of
//! index `λ`: `−α²(λ − n)²`, `n = 0..m`.

use crate::error::{Error, Result};
use crate::numcore::special::{binomial, gamma};
use crate::numcore::{
    diff, numerov_eigensolve, sl_eigensolve, Grid1D, Kinetic, SampledFunction,
};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PTParams {
    pub alpha: f64,
    pub m: u32,
}

impl PTParams {
    pub fn new(alpha: f64, m: u32) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidInput(format!("alpha must be positive, got {alpha}")));
        }
        if m < 1 {
            return Err(Error::InvalidInput("m must be at least 1".into()));
        }
        Ok(Self { alpha, m })
    }

    /// `ε_m = α²m²`.
    pub fn epsilon(&self, index: u32) -> f64 {
        self.alpha * self.alpha * (index as f64).powi(2)
    }
}

/// `−α² ℓ(ℓ+1) sech²(αx)`.
pub fn pt_potential(index: u32, alpha: f64, grid: Grid1D) -> SampledFunction {
    let l = index as f64;
    SampledFunction::from_fn(grid, |x| -alpha * alpha * l * (l + 1.0) / (alpha * x).cosh().powi(2))
        .expect("finite")
}

/// Bound energies `−α²(ℓ−n)²`, `n = 0..ℓ−1`, of [`pt_potential`].
pub fn pt_spectrum(index: u32, alpha: f64) -> Vec<f64> {
    (0..index).map(|n| -alpha * alpha * ((index - n) as f64).powi(2)).collect()
}

/// Normalized `ψ_ℓ^ℓ ∝ sech^ℓ(αx)`.
pub fn ih_ground(l: u32, alpha: f64, grid: Grid1D) -> Result<SampledFunction> {
    if l < 1 {
        return Err(Error::InvalidInput("ih_ground needs l >= 1".into()));
    }
    let lf = l as f64;
    let c = (alpha * gamma(lf + 0.5) / (PI.sqrt() * gamma(lf))).sqrt();
    SampledFunction::from_fn(grid, |x| c * (alpha * x).cosh().powi(-(l as i32)))
}

/// `A⁻_{s+1} ψ = (α(s+1) tanh(αx) − d/dx) ψ`, renormalized. Maps an
/// eigenstate of the index-`s` well to the same level of index `s+1`.
pub fn ih_raise(psi: &SampledFunction, s: u32, alpha: f64) -> Result<SampledFunction> {
    let k = alpha * (s + 1) as f64;
    let g = *psi.grid();
    let d = diff::d1(psi.values(), g.h());
    let v: Vec<f64> = (0..g.len()).map(|i| k * (alpha * g.x(i)).tanh() * psi.at(i) - d[i]).collect();
    SampledFunction::new(g, v)?.normalized()
}

/// `2αΓ(m+3/2) / (√π Γ(m+1))`, the reciprocal of `∫₀^∞ sech^{2(m+1)}(αx)`.
/// Accepts `m = 0` for completeness.
pub fn gamma1_bound(m: u32, alpha: f64) -> f64 {
    let mf = m as f64;
    2.0 * alpha * gamma(mf + 1.5) / (PI.sqrt() * gamma(mf + 1.0))
}

/// `∫₀ˣ sech^{2λ}(αy) dy` in closed form (polynomial in `tanh`).
pub fn sech_power_integral(lambda: u32, alpha: f64, x: f64) -> f64 {
    let t = (alpha * x).tanh();
    let mut s = 0.0;
    for j in 0..lambda {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        s += binomial(lambda - 1, j) * sign * t.powi(2 * j as i32 + 1) / (2 * j + 1) as f64;
    }
    s / alpha
}

#[derive(Debug, Clone)]
pub struct TwoParamFactorization {
    pub params: PTParams,
    pub gamma1: f64,
    pub gamma2: f64,
    pub bound: f64,
    pub grid: Grid1D,
    pub eta: SampledFunction,
    pub beta: SampledFunction,
    /// `S₁ = γ₁ s^{2λ} / (1 + γ₁J)`.
    pub s1: SampledFunction,
    /// `1 + γ₁J`.
    pub denom: SampledFunction,
    pub valid: bool,
    /// Reason and location when `valid` is false. Values of `eta`/`beta`
    /// at failing nodes are zero.
    pub failure: Option<(String, f64)>,
    /// `γ₂ > −1 + γ₁²` with `γ₁` taken raw.
    pub gamma2_condition_raw: bool,
    /// Same with `γ₁` divided by its bound.
    pub gamma2_condition_normalized: bool,
}

impl TwoParamFactorization {
    pub fn lambda(&self) -> u32 {
        self.params.m + 1
    }

    /// `ε_{m+1} = α²(m+1)²`.
    pub fn epsilon(&self) -> f64 {
        self.params.epsilon(self.lambda())
    }

    fn require_valid(&self) -> Result<()> {
        if self.valid {
            Ok(())
        } else {
            let (reason, x) = self.failure.clone().unwrap_or_else(|| ("invalid".into(), f64::NAN));
            Err(Error::InvalidFactorization { reason, x })
        }
    }
}

/// Build `(η, β)` on `grid`. An out-of-bound `γ₁` is an error; a region of
/// `(γ₁, γ₂)` where `η` stops being real and positive yields `valid = false`.
pub fn build_factorization(params: PTParams, gamma1: f64, gamma2: f64, grid: Grid1D) -> Result<TwoParamFactorization> {
    let bound = gamma1_bound(params.m, params.alpha);
    if !gamma1.is_finite() || !gamma2.is_finite() {
        return Err(Error::InvalidInput("gamma1 and gamma2 must be finite".into()));
    }
    if gamma1.abs() >= bound {
        return Err(Error::Gamma1OutOfBound { gamma1, bound });
    }
    let a = params.alpha;
    let lam = params.m + 1;
    let lf = lam as f64;
    let n = grid.len();
    let mut eta = vec![0.0; n];
    let mut beta = vec![0.0; n];
    let mut s1 = vec![0.0; n];
    let mut denom = vec![0.0; n];
    let mut failure = None;
    for i in 0..n {
        let x = grid.x(i);
        let s = 1.0 / (a * x).cosh();
        let d = 1.0 + gamma1 * sech_power_integral(lam, a, x);
        denom[i] = d;
        if !(d > 0.0) {
            failure.get_or_insert(("1 + gamma1*J vanishes".to_string(), x));
            continue;
        }
        let phi = s.powi(lam as i32) / d;
        let arg = 1.0 + gamma2 * phi * phi;
        if !(arg > 0.0) {
            failure.get_or_insert(("eta is not real and positive".to_string(), x));
            continue;
        }
        let e = arg.powf(-0.5);
        let sv = gamma1 * s.powi(2 * lam as i32) / d;
        eta[i] = e;
        s1[i] = sv;
        beta[i] = (a * lf * (a * x).tanh() + sv) * e;
    }
    let nb = gamma1 / bound;
    Ok(TwoParamFactorization {
        params,
        gamma1,
        gamma2,
        bound,
        grid,
        eta: SampledFunction::new(grid, eta)?,
        beta: SampledFunction::new(grid, beta)?,
        s1: SampledFunction::new(grid, s1)?,
        denom: SampledFunction::new(grid, denom)?,
        valid: failure.is_none(),
        failure,
        gamma2_condition_raw: gamma2 > -1.0 + gamma1 * gamma1,
        gamma2_condition_normalized: gamma2 > -1.0 + nb * nb,
    })
}

/// Residuals of the coupled first-order system for `(η, β)`:
/// `−η'/η + β/η − βη` and `β'/η + β² + α²m(m+1)sech² − ε`, sup over
/// interior nodes.
pub fn coupled_residuals(fact: &TwoParamFactorization) -> Result<(f64, f64)> {
    fact.require_valid()?;
    let g = fact.grid;
    let h = g.h();
    let de = diff::d1(fact.eta.values(), h);
    let db = diff::d1(fact.beta.values(), h);
    let a = fact.params.alpha;
    let mm = fact.params.m as f64;
    let eps = fact.epsilon();
    let (mut r1, mut r2) = (0.0_f64, 0.0_f64);
    for i in 2..g.len() - 2 {
        let (e, b) = (fact.eta.at(i), fact.beta.at(i));
        let s2 = (a * g.x(i)).cosh().powi(-2);
        r1 = r1.max((-de[i] / e + b / e - b * e).abs());
        r2 = r2.max((db[i] / e + b * b + a * a * mm * (mm + 1.0) * s2 - eps).abs());
    }
    Ok((r1, r2))
}

/// `max_f ‖(B B* − H_{m+1} − ε)f‖∞ / ‖f‖∞`, interior nodes.
pub fn factorization_residual(fact: &TwoParamFactorization, testfns: &[SampledFunction]) -> Result<f64> {
    fact.require_valid()?;
    let g = fact.grid;
    let h = g.h();
    let a = fact.params.alpha;
    let mm = fact.params.m as f64;
    let eps = fact.epsilon();
    let mut worst = 0.0_f64;
    for f in testfns {
        if !f.grid().same_as(&g) {
            return Err(Error::GridMismatch);
        }
        let fv = f.values();
        let df = diff::d1(fv, h);
        let bstar: Vec<f64> = (0..g.len())
            .map(|i| -fact.eta.at(i) * df[i] + fact.beta.at(i) * fv[i])
            .collect();
        let dbs = diff::d1(&bstar, h);
        let d2f = diff::d2(fv, h);
        let scale = f.max_abs();
        for i in 2..g.len() - 2 {
            let bb = dbs[i] / fact.eta.at(i) + fact.beta.at(i) * bstar[i];
            let s2 = (a * g.x(i)).cosh().powi(-2);
            let hf = -d2f[i] - a * a * mm * (mm + 1.0) * s2 * fv[i];
            worst = worst.max((bb - hf - eps * fv[i]).abs() / scale);
        }
    }
    Ok(worst)
}

/// Coefficients of `(pΦ')' + qΦ + wEΦ = 0`.
#[derive(Debug, Clone)]
pub struct SLProblem {
    pub p: SampledFunction,
    pub q: SampledFunction,
    pub w: SampledFunction,
}

/// Reversed product. `p = w = η⁻²`,
/// `q = (ε − β²)(1 + η⁻²) − α²m(m+1) sech²(αx)` with `η, β, ε` of index
/// `m+1`. At `γ₂ = 0` this is exactly `−Ṽ` of [`susy_partner`].
pub fn build_sl_problem(fact: &TwoParamFactorization) -> Result<SLProblem> {
    fact.require_valid()?;
    let g = fact.grid;
    let a = fact.params.alpha;
    let mm = fact.params.m as f64;
    let eps = fact.epsilon();
    let p = fact.eta.map(|e| 1.0 / (e * e))?;
    let q: Vec<f64> = (0..g.len())
        .map(|i| {
            let inv2 = p.at(i);
            let b = fact.beta.at(i);
            let s2 = (a * g.x(i)).cosh().powi(-2);
            (eps - b * b) * (1.0 + inv2) - a * a * mm * (mm + 1.0) * s2
        })
        .collect();
    Ok(SLProblem { p: p.clone(), q: SampledFunction::new(g, q)?, w: p })
}

/// `Φ₀ = η sech^{m+1}(αx) / (1 + γ₁J)`, normalized with weight `η⁻²`.
/// Eigenvalue `−α²(m+1)²`.
pub fn sl_ground(fact: &TwoParamFactorization) -> Result<SampledFunction> {
    fact.require_valid()?;
    let g = fact.grid;
    let a = fact.params.alpha;
    let lam = fact.lambda() as i32;
    let v: Vec<f64> = (0..g.len())
        .map(|i| fact.eta.at(i) * (a * g.x(i)).cosh().powi(-lam) / fact.denom.at(i))
        .collect();
    let phi = SampledFunction::new(g, v)?;
    let weighted = phi.zip_with(&fact.eta, |f, e| f * f / (e * e))?;
    let s = 1.0 / weighted.integral().sqrt();
    phi.map(|f| f * s)
}

#[derive(Debug, Clone)]
pub struct SusyPartner {
    pub v_tilde: SampledFunction,
    pub phi0: SampledFunction,
    /// `−α²λ²`, the energy of `phi0`.
    pub ground_energy: f64,
}

/// `γ₂ = 0` branch: `Ṽ = −α²λ(λ+1)sech² + 2S₁² + 4αλ tanh·S₁` and its
/// ground state `φ₀ = sech^λ / (1 + γ₁J)` (normalized, weight 1).
pub fn susy_partner(gamma1: f64, params: PTParams, grid: Grid1D) -> Result<SusyPartner> {
    let fact = build_factorization(params, gamma1, 0.0, grid)?;
    fact.require_valid()?;
    let a = params.alpha;
    let lam = fact.lambda();
    let lf = lam as f64;
    let n = grid.len();
    let mut v = vec![0.0; n];
    let mut phi = vec![0.0; n];
    for i in 0..n {
        let x = grid.x(i);
        let s = 1.0 / (a * x).cosh();
        let s1 = fact.s1.at(i);
        v[i] = -a * a * lf * (lf + 1.0) * s * s + 2.0 * s1 * s1 + 4.0 * a * lf * (a * x).tanh() * s1;
        phi[i] = s.powi(lam as i32) / fact.denom.at(i);
    }
    Ok(SusyPartner {
        v_tilde: SampledFunction::new(grid, v)?,
        phi0: SampledFunction::new(grid, phi)?.normalized()?,
        ground_energy: -a * a * lf * lf,
    })
}

/// One point of an isospectrality sweep.
#[derive(Debug, Clone)]
pub struct SweepPoint {
    pub gamma1: f64,
    pub gamma2: f64,
    pub valid: bool,
    pub energies: Vec<f64>,
    /// Max per-level deviation from the PT spectrum of index `m+1`.
    pub max_deviation: f64,
}

/// SL spectrum at `(γ₁, γ₂)` against `−α²(m+1−n)²`. Invalid points are
/// returned with `valid = false` and an infinite deviation.
pub fn sl_isospectrality(params: PTParams, gamma1: f64, gamma2: f64, grid: Grid1D) -> Result<SweepPoint> {
    let fact = build_factorization(params, gamma1, gamma2, grid)?;
    if !fact.valid {
        return Ok(SweepPoint { gamma1, gamma2, valid: false, energies: vec![], max_deviation: f64::INFINITY });
    }
    let sl = build_sl_problem(&fact)?;
    let reference = pt_spectrum(params.m + 1, params.alpha);
    let spec = sl_eigensolve(&sl.p, &sl.q, &sl.w, reference.len())?;
    let energies = spec.energies();
    let max_deviation = if energies.len() < reference.len() {
        f64::INFINITY
    } else {
        energies.iter().zip(&reference).fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()))
    };
    Ok(SweepPoint { gamma1, gamma2, valid: true, energies, max_deviation })
}

/// 5×5 sample of the parameter plane: `γ₁` at 0, ±30%, ±60% of the bound,
/// `γ₂ ∈ {−0.5, 0, 0.5, 1, 2}`. Points are ordered by `γ₁` then `γ₂`.
pub fn parameter_sample(params: PTParams) -> Vec<(f64, f64)> {
    let b = gamma1_bound(params.m, params.alpha);
    let mut out = Vec::with_capacity(25);
    for f1 in [-0.6, -0.3, 0.0, 0.3, 0.6] {
        for g2 in [-0.5, 0.0, 0.5, 1.0, 2.0] {
            out.push((f1 * b, g2));
        }
    }
    out
}

/// Spectrum of the γ₂ = 0 partner potential against PT of index `m+1`.
pub fn partner_spectrum(partner: &SusyPartner, params: PTParams) -> Result<Vec<f64>> {
    let count = params.m as usize + 1;
    Ok(numerov_eigensolve(&partner.v_tilde, count, Kinetic::Unit)?.energies())
}

/// How the undefined constant of the reversed product was resolved.
pub const V0_RESOLUTION: &str = "reversed product built from the index m+1 functions; \
the constant term is the index m+1 PT well -alpha^2 m(m+1) sech^2, fixed by requiring \
the gamma=0 spectrum -alpha^2 (m+1-n)^2";

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_integral_matches_quadrature() {
        for lam in 1..5 {
            let x = 1.3;
            let num = crate::numcore::quad::gauss_kronrod(
                |y| (0.7 * y).cosh().powi(-2 * lam as i32),
                0.0,
                x,
                1e-14,
                1e-14,
            );
            assert!((sech_power_integral(lam, 0.7, x) - num).abs() < 1e-12);
        }
    }

    #[test]
    fn bound_values() {
        assert!((gamma1_bound(1, 1.0) - 1.5).abs() < 1e-12);
        assert!((gamma1_bound(0, 1.0) - 1.0).abs() < 1e-12);
        assert!((gamma1_bound(4, 2.0) - 2.0 * gamma1_bound(4, 1.0)).abs() < 1e-12);
        // reciprocal of the half-line integral
        assert!((gamma1_bound(2, 1.0) * sech_power_integral(3, 1.0, 40.0) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn out_of_bound_rejected() {
        let p = PTParams::new(1.0, 3).unwrap();
        let g = Grid1D::new(-5.0, 5.0, 101).unwrap();
        assert!(matches!(build_factorization(p, 99.0, 0.0, g), Err(Error::Gamma1OutOfBound { .. })));
    }

    #[test]
    fn negative_gamma2_can_break_positivity() {
        let p = PTParams::new(1.0, 1).unwrap();
        let g = Grid1D::new(-5.0, 5.0, 101).unwrap();
        let f = build_factorization(p, 0.0, -1.5, g).unwrap();
        assert!(!f.valid);
        assert!(build_sl_problem(&f).is_err());
    }
}
