//! Two-dimensional supermultiplet `Ψ = A₊ + B₀θ⁰ + B₁θ¹ + A₋θ⁰θ¹`, handled
//! through its bosonic component fields.
//!
//! `Q⁺Ψ = 0` and `Q⁻Ψ = 0` split into seven component equations; all of them
//! are evaluated on the grid and kept as residuals.

use super::{Axis, Field2D};
use crate::error::Result;
use serde::Serialize;

/// Diagonal `η^{μν}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Metric {
    pub eta00: f64,
    pub eta11: f64,
}

impl Default for Metric {
    fn default() -> Self {
        Self { eta00: -1.0, eta11: 1.0 }
    }
}

/// Argument of the seed: `h(q⁰ + q¹)` or `h(q⁰ − q¹)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NullDirection {
    #[default]
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SupermultipletParams {
    pub direction: NullDirection,
    pub metric: Metric,
    pub a_plus: f64,
    pub a_minus: f64,
}

impl Default for SupermultipletParams {
    fn default() -> Self {
        Self { direction: NullDirection::Plus, metric: Metric::default(), a_plus: 1.0, a_minus: 1.0 }
    }
}

/// Each entry is `max|equation| / max(Σ|terms|)` over nodes off the edge,
/// zero when every term vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstraintResiduals {
    pub tetabar0: f64,
    pub tetabar1: f64,
    pub tetabar01: f64,
    pub teta0: f64,
    pub teta1: f64,
    pub tetalibre: f64,
    pub master_plus: f64,
}

impl ConstraintResiduals {
    pub fn named(&self) -> [(&'static str, f64); 7] {
        [
            ("tetabar0", self.tetabar0),
            ("tetabar1", self.tetabar1),
            ("tetabar01", self.tetabar01),
            ("teta0", self.teta0),
            ("teta1", self.teta1),
            ("tetalibre", self.tetalibre),
            ("master_plus", self.master_plus),
        ]
    }

    pub fn max(&self) -> f64 {
        self.named().iter().fold(0.0, |m, (_, r)| m.max(*r))
    }
}

#[derive(Debug, Clone)]
pub struct SupermultipletState {
    pub s: Field2D,
    pub f_plus: Field2D,
    pub a_plus: Field2D,
    pub b0: Field2D,
    pub b1: Field2D,
    pub a_minus: Field2D,
    pub params: SupermultipletParams,
    pub residuals: ConstraintResiduals,
}

impl SupermultipletState {
    /// Residuals of the current fields; differs from `residuals` after the
    /// fields are edited.
    pub fn check(&self) -> Result<ConstraintResiduals> {
        constraint_residuals(self)
    }
}

/// `A± = a± e^{±S}`, `f₊ = h(q⁰ ± q¹)`, `B_μ = e^{−S} ∂_μ f₊`.
pub fn solve_supermultiplet(
    s: &Field2D,
    h: impl Fn(f64) -> f64,
    params: SupermultipletParams,
) -> Result<SupermultipletState> {
    let g = *s.grid();
    let sign = match params.direction {
        NullDirection::Plus => 1.0,
        NullDirection::Minus => -1.0,
    };
    let f_plus = Field2D::from_fn(g, |a, b| h(a + sign * b))?;
    let a_plus = s.map(|v| params.a_plus * v.exp());
    let a_minus = s.map(|v| params.a_minus * (-v).exp());
    let df0 = f_plus.partial(Axis::Q0, 1)?;
    let df1 = f_plus.partial(Axis::Q1, 1)?;
    let b0 = s.zip_with(&df0, |sv, d| (-sv).exp() * d)?;
    let b1 = s.zip_with(&df1, |sv, d| (-sv).exp() * d)?;
    let mut state = SupermultipletState {
        s: s.clone(),
        f_plus,
        a_plus,
        b0,
        b1,
        a_minus,
        params,
        residuals: ConstraintResiduals {
            tetabar0: 0.0,
            tetabar1: 0.0,
            tetabar01: 0.0,
            teta0: 0.0,
            teta1: 0.0,
            tetalibre: 0.0,
            master_plus: 0.0,
        },
    };
    state.residuals = constraint_residuals(&state)?;
    Ok(state)
}

/// Relative residual of `Σ cₖ tₖ` from its terms.
fn relative(terms: &[(f64, &Field2D)]) -> f64 {
    let g = terms[0].1.grid();
    let (n0, n1) = g.shape();
    let (mut num, mut den) = (0.0_f64, 0.0_f64);
    for i in 1..n0 - 1 {
        for j in 1..n1 - 1 {
            let (mut sum, mut mag) = (0.0, 0.0);
            for (c, t) in terms {
                let v = c * t.at(i, j);
                sum += v;
                mag += v.abs();
            }
            num = num.max(sum.abs());
            den = den.max(mag);
        }
    }
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}

pub fn constraint_residuals(state: &SupermultipletState) -> Result<ConstraintResiduals> {
    let m = state.params.metric;
    let s0 = state.s.partial(Axis::Q0, 1)?;
    let s1 = state.s.partial(Axis::Q1, 1)?;
    let prod = |f: &Field2D, d: &Field2D| f.zip_with(d, |a, b| a * b);
    let d0 = |f: &Field2D| f.partial(Axis::Q0, 1);
    let d1 = |f: &Field2D| f.partial(Axis::Q1, 1);

    let (ap, am, b0, b1) = (&state.a_plus, &state.a_minus, &state.b0, &state.b1);
    let tetabar0 = relative(&[(1.0, &d0(ap)?), (-1.0, &prod(ap, &s0)?)]);
    let tetabar1 = relative(&[(1.0, &d1(ap)?), (-1.0, &prod(ap, &s1)?)]);
    let tetabar01 = relative(&[
        (1.0, &d0(b1)?),
        (-1.0, &prod(b1, &s0)?),
        (-1.0, &d1(b0)?),
        (1.0, &prod(b0, &s1)?),
    ]);
    let teta0 = relative(&[(1.0, &d1(am)?), (1.0, &prod(am, &s1)?)]);
    let teta1 = relative(&[(1.0, &d0(am)?), (1.0, &prod(am, &s0)?)]);
    let tetalibre = relative(&[
        (m.eta00, &d0(b0)?),
        (m.eta00, &prod(b0, &s0)?),
        (m.eta11, &d1(b1)?),
        (m.eta11, &prod(b1, &s1)?),
    ]);
    let f = &state.f_plus;
    let master_plus = relative(&[
        (m.eta00, &f.partial(Axis::Q0, 2)?),
        (m.eta11, &f.partial(Axis::Q1, 2)?),
        (2.0 * m.eta00, &prod(&s0, &d0(f)?)?),
        (2.0 * m.eta11, &prod(&s1, &d1(f)?)?),
    ]);
    Ok(ConstraintResiduals { tetabar0, tetabar1, tetabar01, teta0, teta1, tetalibre, master_plus })
}

#[derive(Debug, Clone)]
pub struct Density {
    /// `A₊² + B₀² + B₁² + A₋²`.
    pub full: Field2D,
    /// The `e^{−2S}` part `B₀² + B₁² + A₋²`, the piece that can stay bounded.
    pub bounded: Field2D,
}

pub fn probability_density(state: &SupermultipletState) -> Result<Density> {
    let bounded = state
        .b0
        .zip_with(&state.b1, |a, b| a * a + b * b)?
        .zip_with(&state.a_minus, |acc, a| acc + a * a)?;
    let full = bounded.zip_with(&state.a_plus, |acc, a| acc + a * a)?;
    Ok(Density { full, bounded })
}
