//! Quadrature: cumulative Simpson on grids, adaptive Gauss-Kronrod for closures.

use crate::numcore::grid::SampledFunction;

/// `F(x) = ∫_{x_min}^x f`, with `F(x_min) = 0`.
///
/// Even nodes use composite Simpson, odd nodes close with a 3/8 panel so the
/// whole profile is fourth order.
pub fn integrate_cumulative(f: &SampledFunction) -> SampledFunction {
    let v = cumulative(f.values(), f.grid().h());
    SampledFunction::new(*f.grid(), v).expect("finite input gives finite integral")
}

pub fn cumulative(f: &[f64], h: f64) -> Vec<f64> {
    let n = f.len();
    let mut out = vec![0.0; n];
    if n < 2 {
        return out;
    }
    if n < 4 {
        for i in 1..n {
            out[i] = out[i - 1] + 0.5 * h * (f[i - 1] + f[i]);
        }
        return out;
    }
    out[1] = h / 24.0 * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]);
    for i in 2..n {
        if i % 2 == 0 {
            out[i] = out[i - 2] + h / 3.0 * (f[i - 2] + 4.0 * f[i - 1] + f[i]);
        } else {
            out[i] = out[i - 3]
                + 3.0 * h / 8.0 * (f[i - 3] + 3.0 * f[i - 2] + 3.0 * f[i - 1] + f[i]);
        }
    }
    out
}

pub fn simpson(f: &[f64], h: f64) -> f64 {
    *cumulative(f, h).last().unwrap_or(&0.0)
}

pub fn simpson_sq(f: &[f64], h: f64) -> f64 {
    let sq: Vec<f64> = f.iter().map(|v| v * v).collect();
    simpson(&sq, h)
}

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let r = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for j in 0..7 {
        let dx = r * XGK[j];
        let s = f(c - dx) + f(c + dx);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    (k * r, (k - g).abs() * r)
}

/// Adaptive G7/K15 on `[a, b]`. Bisects until the Kronrod-Gauss difference
/// of each panel is below its share of `max(abs_tol, rel_tol*|I|)`.
pub fn gauss_kronrod<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> f64 {
    let (whole, _) = gk15(&f, a, b);
    let tol = abs_tol.max(rel_tol * whole.abs());
    adapt(&f, a, b, tol, 0)
}

fn adapt<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    let (val, err) = gk15(f, a, b);
    if err <= tol || depth >= 40 {
        return val;
    }
    let m = 0.5 * (a + b);
    adapt(f, a, m, 0.5 * tol, depth + 1) + adapt(f, m, b, 0.5 * tol, depth + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numcore::grid::Grid1D;
    use std::f64::consts::PI;

    #[test]
    fn constant_gives_linear() {
        let g = Grid1D::new(0.0, 1.0, 50).unwrap();
        let f = SampledFunction::from_fn(g, |_| 1.0).unwrap();
        let big_f = integrate_cumulative(&f);
        assert_eq!(big_f.at(0), 0.0);
        for i in 0..g.len() {
            assert!((big_f.at(i) - g.x(i)).abs() < 1e-12);
        }
    }

    #[test]
    fn cosine_gives_sine() {
        let g = Grid1D::new(0.0, PI / 2.0, 201).unwrap();
        let f = SampledFunction::from_fn(g, f64::cos).unwrap();
        let big_f = integrate_cumulative(&f);
        for i in 0..g.len() {
            assert!((big_f.at(i) - g.x(i).sin()).abs() < 1e-8, "{i}");
        }
    }

    #[test]
    fn gaussian_mass() {
        let g = Grid1D::new(-12.0, 12.0, 3001).unwrap();
        let f = SampledFunction::from_fn(g, |x| (-x * x / 2.0).exp() / (2.0 * PI).sqrt()).unwrap();
        assert!((integrate_cumulative(&f).at(3000) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn kronrod_on_smooth_and_peaked() {
        let v = gauss_kronrod(|x| x.exp(), 0.0, 1.0, 1e-14, 1e-14);
        assert!((v - (1f64.exp() - 1.0)).abs() < 1e-13);
        let v = gauss_kronrod(|x| 1.0 / (1e-4 + x * x), -1.0, 1.0, 1e-12, 1e-12);
        let exact = 2.0 * (1.0 / 1e-2) * (1.0f64 / 1e-2).atan();
        assert!((v - exact).abs() / exact < 1e-10);
    }
}
