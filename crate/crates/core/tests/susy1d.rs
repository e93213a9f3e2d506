use proptest::prelude::*;
use susyqm::numcore::*;
use susyqm::susy1d::*;

fn grid() -> Grid1D {
    Grid1D::default_box()
}

#[test]
fn superpotentials_of_known_states() {
    let g = Grid1D::new(-6.0, 6.0, 1201).unwrap();
    let (alpha, m) = (1.3, 3);
    let u = SampledFunction::from_fn(g, |x| (alpha * x).cosh().powi(-m)).unwrap();
    let w = superpotential_from_state(&u).unwrap();
    for i in 0..g.len() {
        let exact = alpha * m as f64 * (alpha * g.x(i)).tanh();
        assert!((w.at(i) - exact).abs() < 1e-6, "x = {}", g.x(i));
    }

    let g = Grid1D::new(-2.5, 2.5, 1001).unwrap();
    let u = SampledFunction::from_fn(g, |x| (-x.cosh().powi(2)).exp()).unwrap();
    let w = superpotential_from_state(&u).unwrap();
    for i in 0..g.len() {
        assert!((w.at(i) - (2.0 * g.x(i)).sinh()).abs() < 1e-6);
    }
}

#[test]
fn partner_pairs() {
    let g = Grid1D::new(-5.0, 5.0, 501).unwrap();
    let omega = 1.7;
    let w = SampledFunction::from_fn(g, |q| omega * q).unwrap();
    let p = partner_potentials(&w, Kinetic::Half).unwrap();
    for i in 0..g.len() {
        let q = g.x(i);
        assert!((p.v_plus.at(i) - 0.5 * (omega * omega * q * q - omega)).abs() < 1e-9);
        assert!((p.v_minus.at(i) - 0.5 * (omega * omega * q * q + omega)).abs() < 1e-9);
    }

    let zero = SampledFunction::zeros(g);
    let p = partner_potentials(&zero, Kinetic::Half).unwrap();
    assert_eq!(p.v_plus.max_abs(), 0.0);
    assert_eq!(p.v_minus.max_abs(), 0.0);

    let g = Grid1D::new(-5.0, 5.0, 2001).unwrap();
    let w = SampledFunction::from_fn(g, f64::tanh).unwrap();
    let p = partner_potentials(&w, Kinetic::Half).unwrap();
    for i in 0..g.len() {
        let s2 = g.x(i).cosh().powi(-2);
        assert!((p.v_plus.at(i) - 0.5 * (1.0 - 2.0 * s2)).abs() < 1e-8);
        assert!((p.v_minus.at(i) - 0.5).abs() < 1e-8);
    }
    let diff = p.v_minus.zip_with(&p.v_plus, |a, b| a - b).unwrap();
    let dw = differentiate(&w, 1).unwrap();
    assert!(diff.distance(&dw).unwrap() < 1e-12);
}

#[test]
fn riccati_for_pt_superpotential() {
    let g = Grid1D::new(-8.0, 8.0, 1601).unwrap();
    let (alpha, m) = (1.0, 3.0);
    let w = SampledFunction::from_fn(g, |x| alpha * m * (alpha * x).tanh()).unwrap();
    let v = SampledFunction::from_fn(g, |x| -alpha * alpha * m * (m + 1.0) / (alpha * x).cosh().powi(2)).unwrap();
    let r = riccati_residual(&w, &v, -alpha * alpha * m * m, Kinetic::Unit).unwrap();
    assert!(r < 1e-6, "{r}");
}

#[test]
fn large_lambda_recovers_seed() {
    let g = grid();
    let u = oscillator_ground(g, 1.0);
    let fam = isospectral_shift(&u, 1e6, 0.5, Kinetic::Half).unwrap();
    assert!(fam.v_hat.distance(&fam.v_plus).unwrap() < 1e-4);
    assert!(fam.u_hat.distance(&fam.u).unwrap() < 1e-4);
}

#[test]
fn deformed_state_solves_deformed_potential() {
    let g = grid();
    let u = oscillator_ground(g, 1.0);
    for lambda in [2.0, 10.0, -2.0, 0.3] {
        let fam = isospectral_shift(&u, lambda, 0.5, Kinetic::Half).unwrap();
        let r = schrodinger_residual(&fam.v_hat, &fam.u_hat, 0.5, Kinetic::Half).unwrap();
        assert!(r < 1e-5, "lambda {lambda}: {r}");
        assert!((fam.u_hat.norm_sq() - 1.0).abs() < 1e-6);
        assert_eq!(fam.u_hat.sign_changes(1e-8), 0);
    }
}

#[test]
fn family_spectra_match() {
    let g = grid();
    let u = oscillator_ground(g, 1.0);
    let v = SampledFunction::from_fn(g, |q| 0.5 * q * q).unwrap();
    for (lambda, tol) in [(2.0, 1e-3), (1e6, 1e-5), (-2.0, 1e-3)] {
        let fam = isospectral_shift(&u, lambda, 0.5, Kinetic::Half).unwrap();
        let rep = family_spectrum_check(&fam, &v, 4).unwrap();
        assert!(rep.max_gap() < tol, "lambda {lambda}: {:?}", rep.gaps);
    }
}

#[test]
fn deformation_shrinks_with_lambda() {
    let g = grid();
    let u = oscillator_ground(g, 1.0);
    let gaps: Vec<f64> = [4.0, 8.0, 16.0, 32.0]
        .iter()
        .map(|&l| {
            let f = isospectral_shift(&u, l, 0.5, Kinetic::Half).unwrap();
            f.v_hat.distance(&f.v_plus).unwrap()
        })
        .collect();
    for w in gaps.windows(2) {
        assert!(w[1] < w[0], "{gaps:?}");
    }
}

#[test]
fn numerical_ground_state_reproduces_potential() {
    let g = grid();
    let v = SampledFunction::from_fn(g, |x| 0.5 * x * x + 0.05 * x.powi(4) - 0.3 * x).unwrap();
    let s = numerov_eigensolve(&v, 1, Kinetic::Half).unwrap();
    let e0 = s.levels[0].energy;
    let u = &s.levels[0].psi;
    let w = superpotential_from_state(u).unwrap();
    let p = partner_potentials(&w, Kinetic::Half).unwrap();
    let cut = 1e-4 * u.max_abs();
    let mut worst: f64 = 0.0;
    for i in 0..g.len() {
        if u.at(i) > cut {
            worst = worst.max((p.v_plus.at(i) - (v.at(i) - e0)).abs());
        }
    }
    assert!(worst < 1e-6, "{worst}");
}

#[test]
fn family_from_potential_matches_analytic_seed() {
    let g = grid();
    let v = SampledFunction::from_fn(g, |q| 0.5 * q * q).unwrap();
    let a = isospectral_from_potential(&v, 2.0, Kinetic::Half).unwrap();
    let b = isospectral_shift(&oscillator_ground(g, 1.0), 2.0, 0.5, Kinetic::Half).unwrap();
    assert!((a.seed_energy - 0.5).abs() < 1e-8);
    assert!(a.v_hat.distance(&b.v_hat).unwrap() < 1e-6);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn deformed_state_normalized(lambda in prop_oneof![0.05f64..50.0, -50.0f64..-1.05]) {
        let g = Grid1D::new(-10.0, 10.0, 2001).unwrap();
        let fam = isospectral_shift(&oscillator_ground(g, 1.0), lambda, 0.5, Kinetic::Half).unwrap();
        prop_assert!((fam.u_hat.norm_sq() - 1.0).abs() < 1e-6);
        prop_assert_eq!(fam.u_hat.sign_changes(1e-8), 0);
    }

    #[test]
    fn partner_difference_is_slope(a in -2.0f64..2.0, b in -2.0f64..2.0) {
        let g = Grid1D::new(-3.0, 3.0, 301).unwrap();
        let w = SampledFunction::from_fn(g, |x| a * x + b * x.tanh()).unwrap();
        let p = partner_potentials(&w, Kinetic::Half).unwrap();
        let dw = differentiate(&w, 1).unwrap();
        let d = p.v_minus.zip_with(&p.v_plus, |x, y| x - y).unwrap();
        prop_assert!(d.distance(&dw).unwrap() < 1e-10);
    }
}
