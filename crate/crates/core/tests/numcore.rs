use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use susyqm::numcore::*;

#[test]
fn sech_squared_well_unit_kinetic() {
    let g = Grid1D::default_box();
    let s = solve_potential(g, |x| -20.0 / x.cosh().powi(2), 4, Kinetic::Unit).unwrap();
    for (n, l) in s.levels.iter().enumerate() {
        let exact = -((4 - n) as f64).powi(2);
        assert!((l.energy - exact).abs() < 1e-4, "E{n} = {}", l.energy);
    }
}

#[test]
fn sinh_quartic_ground_state() {
    let g = Grid1D::default_box();
    let s = solve_potential(g, |x| 2.0 * x.sinh().powi(4), 1, Kinetic::Half).unwrap();
    assert!((s.levels[0].energy - 1.0).abs() < 1e-4);
    let v = SampledFunction::from_fn(g, |x| 2.0 * x.sinh().powi(4)).unwrap();
    let psi = SampledFunction::from_fn(g, |x| (-x.cosh().powi(2)).exp()).unwrap();
    assert!(schrodinger_residual(&v, &psi, 1.0, Kinetic::Half).unwrap() < 1e-6);
}

#[test]
fn residuals_and_nodes_of_returned_spectra() {
    let g = Grid1D::default_box();
    let cases: Vec<(Box<dyn Fn(f64) -> f64>, Kinetic)> = vec![
        (Box::new(|q: f64| 0.5 * q * q), Kinetic::Half),
        (Box::new(|x: f64| 50.0 * x.sinh().powi(4)), Kinetic::Half),
        (Box::new(|x: f64| 2.0 * (x.sinh().powi(4) - 5.0 * x.sinh().powi(2))), Kinetic::Half),
        (Box::new(|x: f64| -12.0 / x.cosh().powi(2)), Kinetic::Unit),
    ];
    for (f, kin) in cases {
        let v = SampledFunction::from_fn(g, &f).unwrap();
        let s = numerov_eigensolve(&v, 3, kin).unwrap();
        for (i, l) in s.levels.iter().enumerate() {
            let r = schrodinger_residual(&v, &l.psi, l.energy, kin).unwrap();
            assert!(r < 1e-4 * (1.0 + l.energy.abs()), "level {i}: residual {r}");
            assert_eq!(l.psi.sign_changes(1e-6), i);
            assert!((l.psi.norm_sq() - 1.0).abs() < 1e-8);
        }
        for w in s.levels.windows(2) {
            assert!(w[1].energy > w[0].energy);
        }
    }
}

#[test]
fn eigenvalues_stable_under_refinement_and_wider_box() {
    let base = Grid1D::new(-10.0, 10.0, 2001).unwrap();
    let fine = Grid1D::new(-10.0, 10.0, 4001).unwrap();
    let wide = Grid1D::new(-12.0, 12.0, 2401).unwrap();
    let v = |x: f64| 0.5 * x * x + 0.1 * x.powi(4);
    let a = solve_potential(base, v, 4, Kinetic::Half).unwrap().energies();
    let b = solve_potential(fine, v, 4, Kinetic::Half).unwrap().energies();
    let c = solve_potential(wide, v, 4, Kinetic::Half).unwrap().energies();
    for i in 0..4 {
        assert!((a[i] - b[i]).abs() < 2e-6, "{} vs {}", a[i], b[i]);
        assert!((a[i] - c[i]).abs() < 2e-6, "{} vs {}", a[i], c[i]);
    }
}

#[test]
fn sl_with_unit_coefficients_matches_schrodinger() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let g = Grid1D::new(-8.0, 8.0, 1601).unwrap();
    let one = SampledFunction::from_fn(g, |_| 1.0).unwrap();
    for _ in 0..5 {
        let a: f64 = rng.gen_range(0.3..2.0);
        let b: f64 = rng.gen_range(-1.0..1.0);
        let c: f64 = rng.gen_range(0.0..0.2);
        let v = SampledFunction::from_fn(g, |x| a * x * x + b * x + c * x.powi(4)).unwrap();
        let q = v.map(|x| -x).unwrap();
        let s1 = numerov_eigensolve(&v, 4, Kinetic::Unit).unwrap();
        let s2 = sl_eigensolve(&one, &q, &one, 4).unwrap();
        for (l1, l2) in s1.levels.iter().zip(&s2.levels) {
            assert!((l1.energy - l2.energy).abs() < 1e-5);
        }
    }
}

#[test]
fn sl_weighted_eigenfunctions_are_orthonormal() {
    let g = Grid1D::new(-6.0, 6.0, 1201).unwrap();
    let p = SampledFunction::from_fn(g, |x| 1.0 + 0.3 / x.cosh()).unwrap();
    let w = SampledFunction::from_fn(g, |x| 1.0 + 0.5 * (-x * x).exp()).unwrap();
    let q = SampledFunction::from_fn(g, |x| -x * x).unwrap();
    let s = sl_eigensolve(&p, &q, &w, 3).unwrap();
    for a in &s.levels {
        for b in &s.levels {
            let f = a.psi.zip_with(&b.psi, |u, v| u * v).unwrap().zip_with(&w, |u, v| u * v).unwrap();
            let expect = if a.energy == b.energy { 1.0 } else { 0.0 };
            assert!((f.integral() - expect).abs() < 1e-6);
        }
        assert!(sl_residual(&p, &q, &w, &a.psi, a.energy).unwrap() < 1e-3 * (1.0 + a.energy.abs()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn harmonic_spectrum_for_any_frequency(omega in 0.5f64..3.0) {
        let g = Grid1D::new(-10.0, 10.0, 2001).unwrap();
        let s = solve_potential(g, |q| 0.5 * omega * omega * q * q, 3, Kinetic::Half).unwrap();
        for (n, l) in s.levels.iter().enumerate() {
            prop_assert!((l.energy - omega * (n as f64 + 0.5)).abs() < 1e-5 * (1.0 + omega * omega));
        }
    }

    #[test]
    fn cumulative_integral_of_polynomial(a in -3.0f64..3.0, b in -3.0f64..3.0, n in 16usize..300) {
        let g = Grid1D::new(0.0, 2.0, n).unwrap();
        let f = SampledFunction::from_fn(g, |x| a * x * x + b).unwrap();
        let big_f = integrate_cumulative(&f);
        for i in 0..n {
            let x = g.x(i);
            prop_assert!((big_f.at(i) - (a * x.powi(3) / 3.0 + b * x)).abs() < 1e-10);
        }
    }

    #[test]
    fn derivative_of_cubic_is_exact(c in prop::array::uniform4(-2.0f64..2.0)) {
        let g = Grid1D::new(-1.0, 1.5, 40).unwrap();
        let f = SampledFunction::from_fn(g, |x| c[0] + c[1] * x + c[2] * x * x + c[3] * x.powi(3)).unwrap();
        let d = differentiate(&f, 1).unwrap();
        let dd = differentiate(&f, 2).unwrap();
        for i in 0..g.len() {
            let x = g.x(i);
            prop_assert!((d.at(i) - (c[1] + 2.0 * c[2] * x + 3.0 * c[3] * x * x)).abs() < 1e-9);
            prop_assert!((dd.at(i) - (2.0 * c[2] + 6.0 * c[3] * x)).abs() < 1e-7);
        }
    }
}
