//! Grid eigensolvers.
//!
//! Both solvers discretize with second-order differences, locate eigenvalues
//! by Sturm-sequence bisection on the grid and on the grid with every other
//! node, and combine the two by Richardson extrapolation, which lifts the
//! eigenvalues to fourth order. Bisection never confuses members of a tight
//! double-well doublet the way shooting can.

use crate::error::{Error, Result};
use crate::numcore::diff;
use crate::numcore::grid::{count_sign_changes, Grid1D, Kinetic, SampledFunction};
use crate::numcore::quad;

#[derive(Debug, Clone, PartialEq)]
pub struct Level {
    pub energy: f64,
    pub psi: SampledFunction,
}

/// Lowest eigenpairs, energies increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub levels: Vec<Level>,
    pub requested: usize,
    /// Set when fewer than `requested` bound states exist on the grid.
    pub truncated: bool,
}

impl Spectrum {
    pub fn energies(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.energy).collect()
    }
}

/// Symmetric tridiagonal matrix: diagonal `d`, off-diagonal `e`.
struct SymTri {
    d: Vec<f64>,
    e: Vec<f64>,
}

impl SymTri {
    fn len(&self) -> usize {
        self.d.len()
    }

    /// Number of eigenvalues strictly below `x`.
    fn count_below(&self, x: f64) -> usize {
        let mut count = 0;
        let mut q = 1.0_f64;
        for i in 0..self.d.len() {
            let off = if i == 0 { 0.0 } else { self.e[i - 1] * self.e[i - 1] / q };
            q = self.d[i] - x - off;
            if q == 0.0 {
                q = -f64::EPSILON * (self.d[i].abs() + x.abs()).max(f64::MIN_POSITIVE);
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn gershgorin(&self) -> (f64, f64) {
        let n = self.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let r = if i > 0 { self.e[i - 1].abs() } else { 0.0 }
                + if i + 1 < n { self.e[i].abs() } else { 0.0 };
            lo = lo.min(self.d[i] - r);
            hi = hi.max(self.d[i] + r);
        }
        (lo, hi)
    }

    /// k-th smallest eigenvalue (0-based).
    fn eigenvalue(&self, k: usize) -> f64 {
        let (mut lo, mut hi) = self.gershgorin();
        for _ in 0..400 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// Eigenvector near `shift`, kept orthogonal to `against`.
    fn inverse_iteration(&self, shift: f64, against: &[Vec<f64>]) -> Vec<f64> {
        let n = self.len();
        let d: Vec<f64> = self.d.iter().map(|v| v - shift).collect();
        let mut y: Vec<f64> = (0..n).map(|i| 1.0 + 0.25 * ((i as f64) * 0.618_034).sin()).collect();
        for _ in 0..4 {
            orthogonalize(&mut y, against);
            y = tri_solve(&self.e, &d, &self.e, &y);
            orthogonalize(&mut y, against);
            normalize_l2(&mut y);
        }
        y
    }
}

fn orthogonalize(y: &mut [f64], against: &[Vec<f64>]) {
    for a in against {
        let aa: f64 = a.iter().map(|v| v * v).sum();
        if aa == 0.0 {
            continue;
        }
        let c: f64 = a.iter().zip(y.iter()).map(|(p, q)| p * q).sum::<f64>() / aa;
        for (yi, ai) in y.iter_mut().zip(a) {
            *yi -= c * ai;
        }
    }
}

fn normalize_l2(y: &mut [f64]) {
    let s: f64 = y.iter().map(|v| v * v).sum::<f64>().sqrt();
    if s > 0.0 {
        y.iter_mut().for_each(|v| *v /= s);
    }
}

/// Tridiagonal solve with partial pivoting. Exact-zero pivots are nudged so a
/// singular shift still yields the null direction.
fn tri_solve(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut dl = sub.to_vec();
    let mut d = diag.to_vec();
    let mut du = sup.to_vec();
    let mut du2 = vec![0.0; n.saturating_sub(2)];
    let mut swap = vec![false; n];
    let scale = d.iter().chain(dl.iter()).fold(0.0_f64, |m, v| m.max(v.abs())).max(1e-300);
    let tiny = f64::EPSILON * scale * 1e-3;
    for i in 0..n - 1 {
        if d[i].abs() >= dl[i].abs() {
            if d[i] == 0.0 {
                d[i] = tiny;
            }
            let fact = dl[i] / d[i];
            dl[i] = fact;
            d[i + 1] -= fact * du[i];
        } else {
            let fact = d[i] / dl[i];
            d[i] = dl[i];
            dl[i] = fact;
            let temp = du[i];
            du[i] = d[i + 1];
            d[i + 1] = temp - fact * d[i + 1];
            if i + 2 < n {
                du2[i] = du[i + 1];
                du[i + 1] *= -fact;
            }
            swap[i] = true;
        }
    }
    if d[n - 1] == 0.0 {
        d[n - 1] = tiny;
    }
    let mut b = rhs.to_vec();
    for i in 0..n - 1 {
        if swap[i] {
            let t = b[i];
            b[i] = b[i + 1];
            b[i + 1] = t - dl[i] * b[i];
        } else {
            b[i + 1] -= dl[i] * b[i];
        }
    }
    b[n - 1] /= d[n - 1];
    if n >= 2 {
        b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
    }
    for i in (0..n.saturating_sub(2)).rev() {
        b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
    }
    // guard against overflow in near-singular solves
    let m = b.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if m > 1e200 || !m.is_finite() {
        let s = if m.is_finite() { 1.0 / m } else { 0.0 };
        b.iter_mut().for_each(|v| *v = if v.is_finite() { *v * s } else { 0.0 });
    }
    b
}

/// Node count of the number of levels below `e_max` plus Richardson-refined
/// energies of the lowest `count`.
struct Levels {
    refined: Vec<f64>,
    fine: Vec<f64>,
    truncated: bool,
}

fn richardson_levels(fine: &SymTri, coarse: &SymTri, count: usize, e_max: f64) -> Levels {
    let bound = fine.count_below(e_max).min(coarse.count_below(e_max));
    let take = count.min(bound);
    let mut refined = Vec::with_capacity(take);
    let mut fine_vals = Vec::with_capacity(take);
    for k in 0..take {
        let ef = fine.eigenvalue(k);
        let ec = coarse.eigenvalue(k);
        refined.push((4.0 * ef - ec) / 3.0);
        fine_vals.push(ef);
    }
    Levels { refined, fine: fine_vals, truncated: take < count }
}

/// Nodes used for the Richardson pair: all of them when `n - 1` is even,
/// otherwise the last node is dropped so both grids span the same box.
fn richardson_span(n: usize) -> usize {
    if (n - 1).is_multiple_of(2) {
        n
    } else {
        n - 1
    }
}

fn schrodinger_matrix(v: &[f64], h: f64, kappa: f64) -> SymTri {
    let n = v.len();
    let c = kappa / (h * h);
    SymTri { d: v[1..n - 1].iter().map(|vi| 2.0 * c + vi).collect(), e: vec![-c; n - 3] }
}

fn every_other(v: &[f64]) -> Vec<f64> {
    v.iter().step_by(2).copied().collect()
}

fn flip_to_convention(y: &mut [f64]) {
    let m = y.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if let Some(first) = y.iter().find(|v| v.abs() > 1e-3 * m) {
        if *first < 0.0 {
            y.iter_mut().for_each(|v| *v = -*v);
        }
    }
}

fn embed_dirichlet(inner: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(inner.len() + 2);
    out.push(0.0);
    out.extend_from_slice(inner);
    out.push(0.0);
    out
}

/// Numerov tridiagonal rows at energy `e` followed by inverse iteration from
/// `start`. Returns `None` when the node count or overlap with `start`
/// disagrees, so the caller keeps the second-order vector.
fn numerov_refine(
    v: &[f64],
    h: f64,
    kappa: f64,
    e: f64,
    start: &[f64],
    against: &[Vec<f64>],
    nodes: usize,
) -> Option<Vec<f64>> {
    let n = v.len();
    let t: Vec<f64> = v.iter().map(|vi| h * h * (vi - e) / (12.0 * kappa)).collect();
    let m = n - 2;
    let sub: Vec<f64> = (1..m).map(|j| 1.0 - t[j]).collect(); // row j+1 ← col j
    let sup: Vec<f64> = (1..m).map(|j| 1.0 - t[j + 1]).collect();
    let diag: Vec<f64> = (1..=m).map(|i| -2.0 * (1.0 + 5.0 * t[i])).collect();
    let mut y = start.to_vec();
    for _ in 0..3 {
        y = tri_solve(&sub, &diag, &sup, &y);
        orthogonalize(&mut y, against);
        normalize_l2(&mut y);
    }
    if y.iter().any(|v| !v.is_finite()) {
        return None;
    }
    let overlap: f64 = y.iter().zip(start).map(|(a, b)| a * b).sum();
    if overlap < 0.0 {
        y.iter_mut().for_each(|v| *v = -*v);
    }
    if overlap.abs() < 0.99 || count_sign_changes(&y, 1e-6) != nodes {
        return None;
    }
    Some(y)
}

/// Lowest `count` Dirichlet eigenpairs of `-κψ'' + Vψ = Eψ`.
///
/// States count as bound when their energy lies below both edge values of
/// `V`; asking for more returns what exists with `truncated` set.
pub fn numerov_eigensolve(v: &SampledFunction, count: usize, kinetic: Kinetic) -> Result<Spectrum> {
    if count == 0 {
        return Err(Error::InvalidInput("count must be positive".into()));
    }
    let grid = *v.grid();
    let h = grid.h();
    let kappa = kinetic.kappa();
    let vals = v.values();
    let span = richardson_span(vals.len());
    let fine_span = schrodinger_matrix(&vals[..span], h, kappa);
    let coarse = schrodinger_matrix(&every_other(&vals[..span]), 2.0 * h, kappa);
    let e_max = vals[0].min(vals[vals.len() - 1]);
    let lv = richardson_levels(&fine_span, &coarse, count, e_max);

    let full = schrodinger_matrix(vals, h, kappa);
    let mut fd_vecs: Vec<Vec<f64>> = Vec::new();
    let mut refined_vecs: Vec<Vec<f64>> = Vec::new();
    let mut levels = Vec::new();
    for (k, (&e, &ef)) in lv.refined.iter().zip(&lv.fine).enumerate() {
        let y_fd = full.inverse_iteration(ef, &fd_vecs);
        let y = numerov_refine(vals, h, kappa, e, &y_fd, &refined_vecs, k)
            .unwrap_or_else(|| y_fd.clone());
        fd_vecs.push(y_fd);
        refined_vecs.push(y.clone());
        let mut full_vec = embed_dirichlet(&y);
        flip_to_convention(&mut full_vec);
        let psi = SampledFunction::new(grid, full_vec)?.normalized()?;
        levels.push(Level { energy: e, psi });
    }
    Ok(Spectrum { levels, requested: count, truncated: lv.truncated })
}

fn sl_matrix(p: &[f64], q: &[f64], w: &[f64], h: f64) -> SymTri {
    let n = p.len();
    let h2 = h * h;
    let half = |i: usize| 0.5 * (p[i] + p[i + 1]);
    let d = (1..n - 1).map(|i| ((half(i - 1) + half(i)) / h2 - q[i]) / w[i]).collect();
    let e = (1..n - 2).map(|i| -half(i) / h2 / (w[i] * w[i + 1]).sqrt()).collect();
    SymTri { d, e }
}

fn check_positive(f: &SampledFunction, what: &'static str) -> Result<()> {
    for (i, &v) in f.values().iter().enumerate() {
        if !(v > 0.0) {
            return Err(Error::NotPositive { what, x: f.grid().x(i), value: v });
        }
    }
    Ok(())
}

/// Lowest `count` eigenpairs of `(pΦ')' + qΦ + wEΦ = 0`, Dirichlet ends.
///
/// The symmetric pencil is reduced with `w^{-1/2}`; eigenfunctions come back
/// orthonormal in the weight `w`.
pub fn sl_eigensolve(
    p: &SampledFunction,
    q: &SampledFunction,
    w: &SampledFunction,
    count: usize,
) -> Result<Spectrum> {
    if count == 0 {
        return Err(Error::InvalidInput("count must be positive".into()));
    }
    let grid = *p.grid();
    if !grid.same_as(q.grid()) || !grid.same_as(w.grid()) {
        return Err(Error::GridMismatch);
    }
    check_positive(p, "p")?;
    check_positive(w, "w")?;
    let h = grid.h();
    let (pv, qv, wv) = (p.values(), q.values(), w.values());
    let span = richardson_span(pv.len());
    let fine = sl_matrix(&pv[..span], &qv[..span], &wv[..span], h);
    let coarse = sl_matrix(
        &every_other(&pv[..span]),
        &every_other(&qv[..span]),
        &every_other(&wv[..span]),
        2.0 * h,
    );
    let last = pv.len() - 1;
    let e_max = (-qv[0] / wv[0]).min(-qv[last] / wv[last]);
    let lv = richardson_levels(&fine, &coarse, count, e_max);

    let full = sl_matrix(pv, qv, wv, h);
    let mut vecs: Vec<Vec<f64>> = Vec::new();
    let mut levels = Vec::new();
    for (&e, &ef) in lv.refined.iter().zip(&lv.fine) {
        let y = full.inverse_iteration(ef, &vecs);
        vecs.push(y.clone());
        let inner: Vec<f64> = y.iter().zip(&wv[1..last]).map(|(yi, wi)| yi / wi.sqrt()).collect();
        let mut phi = embed_dirichlet(&inner);
        flip_to_convention(&mut phi);
        let norm: Vec<f64> = phi.iter().zip(wv).map(|(f, wi)| f * f * wi).collect();
        let s = 1.0 / quad::simpson(&norm, h).sqrt();
        phi.iter_mut().for_each(|v| *v *= s);
        levels.push(Level { energy: e, psi: SampledFunction::new(grid, phi)? });
    }
    Ok(Spectrum { levels, requested: count, truncated: lv.truncated })
}

/// `max |−κψ'' + Vψ − Eψ| / max|ψ|` over nodes excluding the two ends.
pub fn schrodinger_residual(v: &SampledFunction, psi: &SampledFunction, e: f64, kinetic: Kinetic) -> Result<f64> {
    if !v.grid().same_as(psi.grid()) {
        return Err(Error::GridMismatch);
    }
    let scale = psi.max_abs();
    if scale == 0.0 {
        return Err(Error::InvalidInput("psi vanishes identically".into()));
    }
    let kappa = kinetic.kappa();
    let d2 = diff::d2(psi.values(), psi.grid().h());
    let n = psi.len();
    let r = (1..n - 1)
        .map(|i| (-kappa * d2[i] + (v.at(i) - e) * psi.at(i)).abs())
        .fold(0.0, f64::max);
    Ok(r / scale)
}

/// Residual of `(pΦ')' + qΦ + wEΦ = 0` relative to `max|Φ|`, ends excluded.
pub fn sl_residual(
    p: &SampledFunction,
    q: &SampledFunction,
    w: &SampledFunction,
    phi: &SampledFunction,
    e: f64,
) -> Result<f64> {
    let g = phi.grid();
    if !g.same_as(p.grid()) || !g.same_as(q.grid()) || !g.same_as(w.grid()) {
        return Err(Error::GridMismatch);
    }
    let h = g.h();
    let dphi = diff::d1(phi.values(), h);
    let flux: Vec<f64> = dphi.iter().zip(p.values()).map(|(a, b)| a * b).collect();
    let dflux = diff::d1(&flux, h);
    let n = phi.len();
    let r = (1..n - 1)
        .map(|i| (dflux[i] + (q.at(i) + w.at(i) * e) * phi.at(i)).abs())
        .fold(0.0, f64::max);
    Ok(r / phi.max_abs())
}

/// Convenience: sample `V` on `grid` and solve.
pub fn solve_potential(
    grid: Grid1D,
    v: impl Fn(f64) -> f64,
    count: usize,
    kinetic: Kinetic,
) -> Result<Spectrum> {
    numerov_eigensolve(&SampledFunction::from_fn(grid, v)?, count, kinetic)
}
