//! Separable `H = ½p_x² + ½p_y² + V₁(x) + V₂(y)` with supercharges built as
//! 4×4 blocks of first-order grid operators:
//!
//! ```text
//! Q⁺ = √2 [0 0 0 0; 0 0 0 0; a⁺ 0 0 0; 0 b⁺ 0 0]
//! Q⁻ = √2 [0 0 a⁻ 0; 0 0 0 b⁻; 0 0 0 0; 0 0 0 0]
//! ```
//!
//! with `a∓ = (±d/dx + W)/√2`, `b∓` likewise in `y` with `Z`. Then
//! `½{Q⁺, Q⁻} = diag(a⁻a⁺, b⁻b⁺, a⁺a⁻, b⁺b⁻)`.

use super::{Axis, Field2D, Grid2D};
use crate::error::{Error, Result};
use crate::numcore::{differentiate, numerov_eigensolve, Kinetic, SampledFunction};
use crate::susy1d::superpotential_from_state;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::SQRT_2;

#[derive(Debug, Clone)]
pub struct SeparableReport {
    pub w: SampledFunction,
    pub z: SampledFunction,
    pub ground_x: f64,
    pub ground_y: f64,
    /// `V₁ − ½(W² − W′)`, averaged over the central third of the grid, and
    /// its largest deviation from the average there.
    pub c0: f64,
    pub c0_spread: f64,
    /// Same for `V₂` and `Z`. The total ground energy `c0 + c0_y` is the
    /// shift between `H` and the superhamiltonian.
    pub c0_y: f64,
    pub c0_y_spread: f64,
    /// Block potentials of `a⁻a⁺`, `b⁻b⁺`, `a⁺a⁻`, `b⁺b⁻`: `½(W² ± W′)`.
    pub blocks: [SampledFunction; 4],
    pub test_vectors: usize,
    /// `½{Q⁺,Q⁻}ψ` against the block action, relative to the block action.
    pub anticommutator_residual: f64,
    /// `{Q⁻,Q⁻}ψ` and `{Q⁺,Q⁺}ψ`, absolute.
    pub nilpotency_residual: f64,
    /// `[Q∓, H]ψ` relative to `Q∓Hψ`.
    pub commutator_residual: f64,
}

type Super = [Field2D; 4];

struct Operators {
    grid: Grid2D,
    w: Field2D,
    z: Field2D,
    blocks: [Field2D; 4],
}

fn along_q0(f: &SampledFunction, g: Grid2D) -> Field2D {
    let n1 = g.q1.len();
    let v = f.values().iter().flat_map(|&a| std::iter::repeat_n(a, n1)).collect();
    Field2D::new(g, v).expect("finite")
}

fn along_q1(f: &SampledFunction, g: Grid2D) -> Field2D {
    let n0 = g.q0.len();
    let v = (0..n0).flat_map(|_| f.values().iter().copied()).collect();
    Field2D::new(g, v).expect("finite")
}

impl Operators {
    /// `(s·d + W)/√2` along the axis of the block (`s = +1` lowers).
    fn first_order(&self, f: &Field2D, axis: Axis, s: f64) -> Result<Field2D> {
        let pot = if axis == Axis::Q0 { &self.w } else { &self.z };
        let d = f.partial(axis, 1)?;
        let wf = f.zip_with(pot, |a, b| a * b)?;
        d.zip_with(&wf, |a, b| (s * a + b) / SQRT_2)
    }

    fn q_plus(&self, psi: &Super) -> Result<Super> {
        let z = Field2D::zeros(self.grid);
        let c = self.first_order(&psi[0], Axis::Q0, -1.0)?.map(|v| SQRT_2 * v);
        let d = self.first_order(&psi[1], Axis::Q1, -1.0)?.map(|v| SQRT_2 * v);
        Ok([z.clone(), z, c, d])
    }

    fn q_minus(&self, psi: &Super) -> Result<Super> {
        let z = Field2D::zeros(self.grid);
        let a = self.first_order(&psi[2], Axis::Q0, 1.0)?.map(|v| SQRT_2 * v);
        let b = self.first_order(&psi[3], Axis::Q1, 1.0)?.map(|v| SQRT_2 * v);
        Ok([a, b, z.clone(), z])
    }

    /// `−½∂² + V_block` on each component.
    fn hamiltonian(&self, psi: &Super) -> Result<Super> {
        let axes = [Axis::Q0, Axis::Q1, Axis::Q0, Axis::Q1];
        let mut out = Vec::with_capacity(4);
        for k in 0..4 {
            let d2 = psi[k].partial(axes[k], 2)?;
            let vf = psi[k].zip_with(&self.blocks[k], |a, b| a * b)?;
            out.push(d2.zip_with(&vf, |a, b| -0.5 * a + b)?);
        }
        Ok(out.try_into().expect("four blocks"))
    }
}

fn combine(a: &Super, b: &Super, f: impl Fn(f64, f64) -> f64 + Copy) -> Result<Super> {
    let v = (0..4).map(|k| a[k].zip_with(&b[k], f)).collect::<Result<Vec<_>>>()?;
    Ok(v.try_into().expect("four blocks"))
}

fn max_abs(v: &Super, margin: usize) -> f64 {
    v.iter().fold(0.0, |m, f| m.max(f.interior_max_abs(margin)))
}

fn seed_superpotential(v: &SampledFunction, which: &str) -> Result<(SampledFunction, SampledFunction, f64)> {
    let spec = numerov_eigensolve(v, 1, Kinetic::Half)?;
    let ground = spec
        .levels
        .first()
        .ok_or_else(|| Error::InvalidInput(format!("{which} has no bound state on its grid")))?;
    let u = ground.psi.map(f64::abs)?;
    let m = u.max_abs();
    Ok((superpotential_from_state(&ground.psi)?, u.map(|v| v / m)?, ground.energy))
}

/// Mean and spread of `V − ½(W² − W′)` over the central third of the grid.
fn separation_constant(v: &SampledFunction, w: &SampledFunction, wp: &SampledFunction) -> (f64, f64) {
    let n = v.len();
    let vals: Vec<f64> = (0..n).map(|i| v.at(i) - 0.5 * (w.at(i).powi(2) - wp.at(i))).collect();
    let (lo, hi) = (n / 3, 2 * n / 3);
    let mean = vals[lo..hi].iter().sum::<f64>() / (hi - lo) as f64;
    let spread = vals[lo..hi].iter().fold(0.0_f64, |m, x| m.max((x - mean).abs()));
    (mean, spread)
}

/// Both ground states are computed with Dirichlet edges, so each grid must
/// be wide enough for its ground state to decay well before the edge:
/// `W = −u′/u` bends where the edge forces `u` to zero.
pub fn separable_2d_factorization(v1: &SampledFunction, v2: &SampledFunction) -> Result<SeparableReport> {
    separable_2d_factorization_with(v1, v2, 5, 42)
}

pub fn separable_2d_factorization_with(
    v1: &SampledFunction,
    v2: &SampledFunction,
    test_vectors: usize,
    seed: u64,
) -> Result<SeparableReport> {
    let (w, u1, ground_x) = seed_superpotential(v1, "V1")?;
    let (z, u2, ground_y) = seed_superpotential(v2, "V2")?;
    let wp = differentiate(&w, 1)?;
    let zp = differentiate(&z, 1)?;
    let (c0, c0_spread) = separation_constant(v1, &w, &wp);
    let (c0_y, c0_y_spread) = separation_constant(v2, &z, &zp);

    let half = |f: &SampledFunction, fp: &SampledFunction, s: f64| f.zip_with(fp, |a, b| 0.5 * (a * a + s * b));
    let blocks1 = [half(&w, &wp, 1.0)?, half(&z, &zp, 1.0)?, half(&w, &wp, -1.0)?, half(&z, &zp, -1.0)?];

    let grid = Grid2D::new(*v1.grid(), *v2.grid());
    let ops = Operators {
        grid,
        w: along_q0(&w, grid),
        z: along_q1(&z, grid),
        blocks: [
            along_q0(&blocks1[0], grid),
            along_q1(&blocks1[1], grid),
            along_q0(&blocks1[2], grid),
            along_q1(&blocks1[3], grid),
        ],
    };

    // test vectors carry the ground-state envelope, which keeps them away
    // from the edges where W bends towards the Dirichlet zero
    let envelope = along_q0(&u1, grid).zip_with(&along_q1(&u2, grid), |a, b| a * b)?;
    let (xc, yc) = (centre(v1), centre(v2));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut anti, mut nil, mut comm) = (0.0_f64, 0.0_f64, 0.0_f64);
    let margin = 4;
    for _ in 0..test_vectors {
        let psi: Super = std::array::from_fn(|_| {
            let cx = xc + rng.gen_range(-1.0..1.0);
            let cy = yc + rng.gen_range(-1.0..1.0);
            let wd: f64 = rng.gen_range(0.7..1.3);
            let kx: f64 = rng.gen_range(-1.5..1.5);
            let ky: f64 = rng.gen_range(-1.5..1.5);
            Field2D::from_fn(grid, |x, y| {
                (-((x - cx).powi(2) + (y - cy).powi(2)) / (wd * wd)).exp() * (1.0 + 0.3 * (kx * x + ky * y).sin())
            })
            .and_then(|f| f.zip_with(&envelope, |a, b| a * b))
            .expect("finite")
        });
        let h_psi = ops.hamiltonian(&psi)?;
        let qp = ops.q_plus(&psi)?;
        let qm = ops.q_minus(&psi)?;
        let qm_qp = ops.q_minus(&qp)?;
        let qp_qm = ops.q_plus(&qm)?;
        let half_anti = combine(&qm_qp, &qp_qm, |a, b| 0.5 * (a + b))?;
        let diff = combine(&half_anti, &h_psi, |a, b| a - b)?;
        anti = anti.max(max_abs(&diff, margin) / max_abs(&h_psi, margin));

        nil = nil.max(max_abs(&ops.q_minus(&qm)?, 0)).max(max_abs(&ops.q_plus(&qp)?, 0));

        for (q_h, h_q) in [
            (ops.q_minus(&h_psi)?, ops.hamiltonian(&qm)?),
            (ops.q_plus(&h_psi)?, ops.hamiltonian(&qp)?),
        ] {
            let d = combine(&q_h, &h_q, |a, b| a - b)?;
            comm = comm.max(max_abs(&d, 2 * margin) / max_abs(&q_h, 2 * margin));
        }
    }

    Ok(SeparableReport {
        w,
        z,
        ground_x,
        ground_y,
        c0,
        c0_spread,
        c0_y,
        c0_y_spread,
        blocks: blocks1,
        test_vectors,
        anticommutator_residual: anti,
        nilpotency_residual: nil,
        commutator_residual: comm,
    })
}

fn centre(v: &SampledFunction) -> f64 {
    let (i, _) = v
        .values()
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |(bi, bv), (i, &x)| if x < bv { (i, x) } else { (bi, bv) });
    v.grid().x(i)
}
