//! Fourth-order finite differences on uniform grids.

use crate::error::{Error, Result};
use crate::numcore::grid::{SampledFunction, MIN_NODES};

const D1_EDGE0: [f64; 5] = [-25.0, 48.0, -36.0, 16.0, -3.0];
const D1_EDGE1: [f64; 5] = [-3.0, -10.0, 18.0, -6.0, 1.0];
const D2_EDGE0: [f64; 6] = [45.0, -154.0, 214.0, -156.0, 61.0, -10.0];
const D2_EDGE1: [f64; 6] = [10.0, -15.0, -4.0, 14.0, -6.0, 1.0];

/// First or second derivative, central in the interior and one-sided at the
/// two outermost nodes on each side.
pub fn differentiate(f: &SampledFunction, order: u8) -> Result<SampledFunction> {
    if f.len() < MIN_NODES {
        return Err(Error::GridTooSmall(f.len()));
    }
    let h = f.grid().h();
    let v = match order {
        1 => d1(f.values(), h),
        2 => d2(f.values(), h),
        _ => return Err(Error::InvalidInput(format!("derivative order {order} not supported"))),
    };
    SampledFunction::new(*f.grid(), v)
}

pub fn d1(f: &[f64], h: f64) -> Vec<f64> {
    let n = f.len();
    let c = 1.0 / (12.0 * h);
    let mut out = vec![0.0; n];
    for i in 2..n - 2 {
        out[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) * c;
    }
    let dot = |w: &[f64], idx: &dyn Fn(usize) -> usize| -> f64 {
        w.iter().enumerate().map(|(k, wk)| wk * f[idx(k)]).sum()
    };
    out[0] = dot(&D1_EDGE0, &|k| k) * c;
    out[1] = dot(&D1_EDGE1, &|k| k) * c;
    out[n - 1] = -dot(&D1_EDGE0, &|k| n - 1 - k) * c;
    out[n - 2] = -dot(&D1_EDGE1, &|k| n - 1 - k) * c;
    out
}

pub fn d2(f: &[f64], h: f64) -> Vec<f64> {
    let n = f.len();
    let c = 1.0 / (12.0 * h * h);
    let mut out = vec![0.0; n];
    for i in 2..n - 2 {
        out[i] = (-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] - f[i + 2]) * c;
    }
    let dot = |w: &[f64], idx: &dyn Fn(usize) -> usize| -> f64 {
        w.iter().enumerate().map(|(k, wk)| wk * f[idx(k)]).sum()
    };
    out[0] = dot(&D2_EDGE0, &|k| k) * c;
    out[1] = dot(&D2_EDGE1, &|k| k) * c;
    out[n - 1] = dot(&D2_EDGE0, &|k| n - 1 - k) * c;
    out[n - 2] = dot(&D2_EDGE1, &|k| n - 1 - k) * c;
    out
}
