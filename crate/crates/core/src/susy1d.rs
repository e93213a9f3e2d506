//! Superpotentials, partner potentials and the one-parameter Darboux family.
//!
//! With kinetic coefficient κ the factorization reads
//! `H± = κ(-d² + W² ∓ W')`, so `V± = κ(W² ∓ W')`. The family seeded by a
//! node-free state `u` at energy `E` is
//!
//! ```text
//! g      = u² / (λ + I),   I(x) = ∫_{x_min}^x u²
//! Ŵ      = W + g
//! V̂      = V₊ − 2κ g'
//! û      = √(λ(λ+1)) u / (λ + I)
//! ```
//!
//! where `V₊` carries the seed energy back (`V₊ = κ(W² − W') + E`) so that
//! `û` sits at the same energy as `u`.

use crate::error::{Error, Result};
use crate::numcore::{
    differentiate, integrate_cumulative, numerov_eigensolve, Grid1D, Kinetic, SampledFunction,
};

#[derive(Debug, Clone)]
pub struct PartnerPair {
    pub w: SampledFunction,
    pub v_plus: SampledFunction,
    pub v_minus: SampledFunction,
}

/// `W = −d ln u / dx`. The two end nodes may vanish (Dirichlet states);
/// there `W` is extrapolated from the interior.
pub fn superpotential_from_state(u: &SampledFunction) -> Result<SampledFunction> {
    let n = u.len();
    let vals = u.values();
    let sign = if vals[n / 2] < 0.0 { -1.0 } else { 1.0 };
    for i in 1..n - 1 {
        if !(sign * vals[i] > 0.0) {
            return Err(Error::NodeInSeed { x: u.grid().x(i) });
        }
    }
    let h = u.grid().h();
    let ends_ok = sign * vals[0] > 0.0 && sign * vals[n - 1] > 0.0;
    let w = if ends_ok {
        let ln: Vec<f64> = vals.iter().map(|v| (sign * v).ln()).collect();
        crate::numcore::diff::d1(&ln, h).into_iter().map(|d| -d).collect()
    } else {
        let ln: Vec<f64> = vals[1..n - 1].iter().map(|v| (sign * v).ln()).collect();
        let inner: Vec<f64> = crate::numcore::diff::d1(&ln, h).into_iter().map(|d| -d).collect();
        let m = inner.len();
        let mut w = Vec::with_capacity(n);
        w.push(4.0 * inner[0] - 6.0 * inner[1] + 4.0 * inner[2] - inner[3]);
        w.extend_from_slice(&inner);
        w.push(4.0 * inner[m - 1] - 6.0 * inner[m - 2] + 4.0 * inner[m - 3] - inner[m - 4]);
        w
    };
    SampledFunction::new(*u.grid(), w)
}

/// `V∓ = κ(W² ∓ W')`; `V₋ − V₊ = 2κW'`.
pub fn partner_potentials(w: &SampledFunction, kinetic: Kinetic) -> Result<PartnerPair> {
    let k = kinetic.kappa();
    let dw = differentiate(w, 1)?;
    let v_plus = w.zip_with(&dw, |a, b| k * (a * a - b))?;
    let v_minus = w.zip_with(&dw, |a, b| k * (a * a + b))?;
    Ok(PartnerPair { w: w.clone(), v_plus, v_minus })
}

/// `max |κ(W² − W') − (V − E)|` over interior nodes.
pub fn riccati_residual(w: &SampledFunction, v: &SampledFunction, e: f64, kinetic: Kinetic) -> Result<f64> {
    let pair = partner_potentials(w, kinetic)?;
    let d = pair.v_plus.zip_with(v, |a, b| a - (b - e))?;
    let n = d.len();
    Ok(d.values()[1..n - 1].iter().fold(0.0, |m, r| m.max(r.abs())))
}

#[derive(Debug, Clone)]
pub struct IsospectralFamily {
    pub lambda: f64,
    pub kinetic: Kinetic,
    pub seed_energy: f64,
    /// Normalized seed.
    pub u: SampledFunction,
    /// Cumulative `∫ u²` from the left edge.
    pub i_cum: SampledFunction,
    /// `W` and `Ŵ`; absent when the family was built straight from a
    /// potential whose seed has Dirichlet tails.
    pub w: Option<SampledFunction>,
    pub w_hat: Option<SampledFunction>,
    pub v_plus: SampledFunction,
    pub v_hat: SampledFunction,
    pub u_hat: SampledFunction,
    /// `√(λ(λ+1))`.
    pub g_lambda: f64,
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !lambda.is_finite() || (-1.0..=0.0).contains(&lambda) {
        return Err(Error::LambdaExcluded(lambda));
    }
    Ok(())
}

struct Deformation {
    u: SampledFunction,
    i_cum: SampledFunction,
    g: SampledFunction,
    u_hat: SampledFunction,
    g_lambda: f64,
}

fn deform(u: &SampledFunction, lambda: f64) -> Result<Deformation> {
    check_lambda(lambda)?;
    let u = u.normalized()?;
    let u = if u.values()[u.len() / 2] < 0.0 { u.map(|v| -v)? } else { u };
    let u2 = u.map(|v| v * v)?;
    let i_cum = integrate_cumulative(&u2);
    let (imin, imax) = (i_cum.at(0), i_cum.at(i_cum.len() - 1));
    let closest = (lambda + imin).abs().min((lambda + imax).abs());
    if closest < 1e-8 {
        return Err(Error::LambdaExcluded(lambda));
    }
    let g = u2.zip_with(&i_cum, |a, b| a / (lambda + b))?;
    let g_lambda = (lambda * (lambda + 1.0)).sqrt();
    let u_hat = u.zip_with(&i_cum, |a, b| g_lambda * a / (lambda + b))?;
    Ok(Deformation { u, i_cum, g, u_hat, g_lambda })
}

/// Deform a node-free seed `u` at energy `seed_energy`. Excluded:
/// `λ ∈ [−1, 0]`, where `λ + I` has a zero since `I` runs over `[0, 1]`.
pub fn isospectral_shift(
    u: &SampledFunction,
    lambda: f64,
    seed_energy: f64,
    kinetic: Kinetic,
) -> Result<IsospectralFamily> {
    let w = superpotential_from_state(u)?;
    let d = deform(u, lambda)?;
    let k = kinetic.kappa();
    let pair = partner_potentials(&w, kinetic)?;
    let v_plus = pair.v_plus.map(|v| v + seed_energy)?;
    let dg = differentiate(&d.g, 1)?;
    let v_hat = v_plus.zip_with(&dg, |a, b| a - 2.0 * k * b)?;
    let w_hat = w.zip_with(&d.g, |a, b| a + b)?;
    Ok(IsospectralFamily {
        lambda,
        kinetic,
        seed_energy,
        u: d.u,
        i_cum: d.i_cum,
        w: Some(w),
        w_hat: Some(w_hat),
        v_plus,
        v_hat,
        u_hat: d.u_hat,
        g_lambda: d.g_lambda,
    })
}

/// Same family, seeded by the numerically computed ground state of `v`.
/// `v` itself plays the role of `V₊`, so no second derivative of the seed
/// is taken.
pub fn isospectral_from_potential(v: &SampledFunction, lambda: f64, kinetic: Kinetic) -> Result<IsospectralFamily> {
    check_lambda(lambda)?;
    let spec = numerov_eigensolve(v, 1, kinetic)?;
    let ground = spec
        .levels
        .first()
        .ok_or_else(|| Error::InvalidInput("potential has no bound state on this grid".into()))?;
    let d = deform(&ground.psi, lambda)?;
    let dg = differentiate(&d.g, 1)?;
    let k = kinetic.kappa();
    let v_hat = v.zip_with(&dg, |a, b| a - 2.0 * k * b)?;
    Ok(IsospectralFamily {
        lambda,
        kinetic,
        seed_energy: ground.energy,
        u: d.u,
        i_cum: d.i_cum,
        w: None,
        w_hat: None,
        v_plus: v.clone(),
        v_hat,
        u_hat: d.u_hat,
        g_lambda: d.g_lambda,
    })
}

#[derive(Debug, Clone)]
pub struct FamilySpectrumReport {
    pub deformed: Vec<f64>,
    pub original: Vec<f64>,
    pub gaps: Vec<f64>,
}

impl FamilySpectrumReport {
    pub fn max_gap(&self) -> f64 {
        self.gaps.iter().fold(0.0, |m, g| m.max(*g))
    }
}

/// Per-level `|Eᵢ(V̂) − Eᵢ(V)|` from the grid eigensolver.
pub fn family_spectrum_check(
    family: &IsospectralFamily,
    v_original: &SampledFunction,
    count: usize,
) -> Result<FamilySpectrumReport> {
    let a = numerov_eigensolve(&family.v_hat, count, family.kinetic)?.energies();
    let b = numerov_eigensolve(v_original, count, family.kinetic)?.energies();
    let gaps = a.iter().zip(&b).map(|(x, y)| (x - y).abs()).collect();
    Ok(FamilySpectrumReport { deformed: a, original: b, gaps })
}

/// Oscillator ground state `π^{-1/4} e^{−ωq²/2}·ω^{1/4}` sampled on `grid`.
pub fn oscillator_ground(grid: Grid1D, omega: f64) -> SampledFunction {
    let c = (omega / std::f64::consts::PI).powf(0.25);
    SampledFunction::from_fn(grid, |q| c * (-0.5 * omega * q * q).exp()).expect("finite")
}
