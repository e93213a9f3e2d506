use proptest::prelude::*;
use susyqm::numcore::*;
use susyqm::susy2d::*;

#[test]
fn k0_against_reference_values() {
    let table = [
        (0.5, 0.9244190712276659),
        (1.0, 0.42102443824070834),
        (2.0, 0.11389387274953344),
        (5.0, 0.0036910983340425942),
    ];
    for (x, k) in table {
        assert!((bessel_k_imag(0.0, x).unwrap() - k).abs() < 1e-7);
    }
}

#[test]
fn k_imag_solves_bessel_equation() {
    // f'' + f'/x - (1 - nu^2/x^2) f = 0 for imaginary order i nu
    let g = Grid1D::new(0.5, 5.0, 451).unwrap();
    for nu in [0.5, 1.0, 2.0] {
        let f = SampledFunction::new(g, g.nodes().iter().map(|&x| bessel_k_imag(nu, x).unwrap()).collect()).unwrap();
        let d1 = differentiate(&f, 1).unwrap();
        let d2 = differentiate(&f, 2).unwrap();
        let scale = f.max_abs();
        for i in 2..g.len() - 2 {
            let x = g.x(i);
            let r = d2.at(i) + d1.at(i) / x - (1.0 - nu * nu / (x * x)) * f.at(i);
            assert!(r.abs() < 1e-5 * scale, "nu = {nu}, x = {x}: {r}");
        }
    }
}

#[test]
fn l_imag_solves_bessel_equation() {
    let g = Grid1D::new(0.5, 5.0, 451).unwrap();
    let nu = 2.0;
    let f = SampledFunction::new(g, g.nodes().iter().map(|&x| bessel_l_imag(nu, x).unwrap()).collect()).unwrap();
    let d1 = differentiate(&f, 1).unwrap();
    let d2 = differentiate(&f, 2).unwrap();
    let scale = f.max_abs();
    for i in 2..g.len() - 2 {
        let x = g.x(i);
        let r = d2.at(i) + d1.at(i) / x - (1.0 - nu * nu / (x * x)) * f.at(i);
        assert!(r.abs() < 1e-5 * scale, "x = {x}: {r}");
    }
}

#[test]
fn taub_modes_solve_separated_equations() {
    let model = TaubModel::new(1.0, 2.0, 2.0).unwrap();
    let modes = taub_modes(&model).unwrap();
    assert!(modes.residual1 < 1e-5, "{}", modes.residual1);
    assert!(modes.residual2 < 1e-5, "{}", modes.residual2);
    // K decays once the exponential wall dominates
    let f1 = &modes.f1;
    let n = f1.len();
    assert!(f1.at(n - 1).abs() < f1.at(n - 200).abs());
    let far = bessel_k_imag(1.0, (20.0f64 / 2.0).exp() / 6.0).unwrap();
    assert!(far.abs() < 1e-100);
    assert!(TaubModel::new(0.0, 1.0, 1.0).is_err());
}

#[test]
fn taub_deformation() {
    let model = TaubModel::new(1.0, 2.0, 2.0).unwrap();
    let modes = taub_modes(&model).unwrap();
    let iso = taub_iso(&model, &modes).unwrap();
    assert!(iso.residual1 < 1e-4, "{}", iso.residual1);
    assert!(iso.residual2 < 1e-4, "{}", iso.residual2);
    let vmax1 = iso.family1.v_plus.max_abs();
    let vmax2 = iso.family2.v_plus.max_abs();
    assert!(iso.v_plus_error1 < 1e-3 * vmax1 && iso.v_plus_error2 < 1e-3 * vmax2);
    assert!(iso.f_hat1().sign_changes(0.0) == 0);

    let mut far = model;
    far.lambda1 = 1e6;
    let iso = taub_iso(&far, &modes).unwrap();
    let d = iso.v_hat1().zip_with(&iso.family1.v_plus, |a, b| a - b).unwrap();
    assert!(d.max_abs() < 1e-3);
}

#[test]
fn taub_rejects_windows_with_nodes() {
    let mut model = TaubModel::new(1.0, 2.0, 2.0).unwrap();
    let modes = taub_modes(&model).unwrap();
    model.iso_window1 = (-8.0, 4.0);
    assert!(matches!(taub_iso(&model, &modes), Err(susyqm::Error::NodeInSeed { .. })));
    let mut model = TaubModel::new(1.0, -0.5, 2.0).unwrap();
    model.iso_window1 = (-1.5, 4.0);
    assert!(taub_iso(&model, &modes).is_err());
}

fn plane(g: Grid2D) -> Field2D {
    Field2D::from_fn(g, |a, b| a + b).unwrap()
}

#[test]
fn supermultiplet_on_a_null_plane() {
    let g = Grid2D::square(-3.0, 3.0, 121).unwrap();
    let st = solve_supermultiplet(&plane(g), |t| t, SupermultipletParams::default()).unwrap();
    for (name, r) in st.residuals.named() {
        assert!(r < 1e-6, "{name}: {r}");
    }
    let s = &st.s;
    for k in 0..g.len() {
        let sv = s.values()[k];
        assert!((st.a_plus.values()[k] / sv.exp() - 1.0).abs() < 1e-8);
        assert!((st.a_minus.values()[k] * sv.exp() - 1.0).abs() < 1e-8);
    }
}

#[test]
fn minus_seed_violates_mixed_constraint() {
    let g = Grid2D::square(-3.0, 3.0, 121).unwrap();
    let params = SupermultipletParams { direction: NullDirection::Minus, ..Default::default() };
    let st = solve_supermultiplet(&plane(g), |t| t, params).unwrap();
    assert!(st.residuals.tetabar01 > 0.1);
}

#[test]
fn constant_seed_has_no_fermionic_part() {
    let g = Grid2D::square(-2.0, 2.0, 161).unwrap();
    let s = Field2D::from_fn(g, |a, b| (a * b).sin() + 0.3 * a * a).unwrap();
    let st = solve_supermultiplet(&s, |_| 4.0, SupermultipletParams::default()).unwrap();
    assert_eq!(st.b0.max_abs(), 0.0);
    assert_eq!(st.b1.max_abs(), 0.0);
    assert_eq!(st.residuals.tetabar01, 0.0);
    assert_eq!(st.residuals.tetalibre, 0.0);
    assert_eq!(st.residuals.master_plus, 0.0);
    assert!(st.residuals.tetabar0 < 1e-5 && st.residuals.teta1 < 1e-5, "{:?}", st.residuals);
}

#[test]
fn perturbed_component_is_detected() {
    let g = Grid2D::square(-3.0, 3.0, 121).unwrap();
    let mut st = solve_supermultiplet(&plane(g), |t| t, SupermultipletParams::default()).unwrap();
    let q0 = Field2D::from_fn(g, |a, _| 1.0 + 0.01 * a).unwrap();
    st.a_plus = st.a_plus.zip_with(&q0, |a, b| a * b).unwrap();
    assert!(st.check().unwrap().tetabar0 > 1e-3);
}

#[test]
fn density_is_nonnegative_and_bounded_part_decays() {
    let g = Grid2D::square(-3.0, 3.0, 121).unwrap();
    let st = solve_supermultiplet(&plane(g), |t| t, SupermultipletParams::default()).unwrap();
    let rho = probability_density(&st).unwrap();
    assert!(rho.full.min() >= 0.0 && rho.bounded.min() >= 0.0);
    let n = 121;
    let peak = rho.bounded.max_abs();
    // along the edges where S grows the e^{-2S} part dies off
    for k in 0..n {
        assert!(rho.bounded.at(n - 1, k) <= rho.bounded.at(n - 2, k));
        assert!(rho.bounded.at(k, n - 1) <= rho.bounded.at(k, n - 2));
    }
    assert!(rho.bounded.at(n - 1, n - 1) < 1e-10 * peak);

    let zero_a = SupermultipletParams { a_plus: 0.0, ..Default::default() };
    let st = solve_supermultiplet(&plane(g), |t| t, zero_a).unwrap();
    let rho = probability_density(&st).unwrap();
    assert_eq!(rho.full, rho.bounded);
}

#[test]
fn oscillator_pair_factorizes() {
    let g = Grid1D::new(-6.0, 6.0, 481).unwrap();
    let v = SampledFunction::from_fn(g, |x| 0.5 * x * x).unwrap();
    let rep = separable_2d_factorization(&v, &v).unwrap();
    assert!((rep.ground_x - 0.5).abs() < 1e-4);
    assert!((rep.c0 - 0.5).abs() < 1e-4 && rep.c0_spread < 1e-4);
    assert!((rep.c0_y - 0.5).abs() < 1e-4);
    assert_eq!(rep.test_vectors, 5);
    assert!(rep.anticommutator_residual < 1e-5, "{}", rep.anticommutator_residual);
    assert!(rep.nilpotency_residual < 1e-10);
    assert!(rep.commutator_residual < 1e-5, "{}", rep.commutator_residual);

    // a-a+ has levels n+1, a+a- has levels n
    let fine = Grid1D::new(-6.0, 6.0, 1201).unwrap();
    let vf = SampledFunction::from_fn(fine, |x| 0.5 * x * x).unwrap();
    let rep = separable_2d_factorization_with(&vf, &vf, 0, 1).unwrap();
    let shifted = numerov_eigensolve(&rep.blocks[0], 3, Kinetic::Half).unwrap();
    let plain = numerov_eigensolve(&rep.blocks[2], 3, Kinetic::Half).unwrap();
    for n in 0..3 {
        assert!((shifted.levels[n].energy - (n as f64 + 1.0)).abs() < 1e-3);
        assert!((plain.levels[n].energy - n as f64).abs() < 1e-3);
    }
}

#[test]
fn anharmonic_pair_factorizes() {
    let gx = Grid1D::new(-5.0, 5.0, 501).unwrap();
    let gy = Grid1D::new(-8.0, 8.0, 801).unwrap();
    let v1 = SampledFunction::from_fn(gx, |x| 0.5 * x * x + 0.1 * x.powi(4)).unwrap();
    let v2 = SampledFunction::from_fn(gy, |y| -2.0 / y.cosh().powi(2)).unwrap();
    let rep = separable_2d_factorization(&v1, &v2).unwrap();
    assert!(rep.anticommutator_residual < 1e-5, "{}", rep.anticommutator_residual);
    assert!(rep.nilpotency_residual < 1e-10);
    assert!(rep.commutator_residual < 1e-5, "{}", rep.commutator_residual);
    assert!(rep.c0_spread < 1e-3);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn residuals_ignore_constant_shift_of_s(c in -2.0f64..2.0) {
        let g = Grid2D::square(-2.0, 2.0, 61).unwrap();
        let s = Field2D::from_fn(g, |a, b| 0.5 * (a + b) + 0.2 * (a - b).powi(2)).unwrap();
        let shifted = s.map(|v| v + c);
        let p = SupermultipletParams::default();
        let r0 = solve_supermultiplet(&s, |t| t.sin(), p).unwrap();
        let r1 = solve_supermultiplet(&shifted, |t| t.sin(), p).unwrap();
        for ((_, a), (_, b)) in r0.residuals.named().iter().zip(r1.residuals.named()) {
            prop_assert!((a - b).abs() < 1e-9 * (1.0 + a.abs()));
        }
        let ratio = r1.a_plus.values()[100] / r0.a_plus.values()[100];
        prop_assert!((ratio - c.exp()).abs() < 1e-10 * c.exp());
    }

    #[test]
    fn k_imag_is_even_in_order(nu in 0.0f64..3.0, x in 0.1f64..6.0) {
        let a = bessel_k_imag(nu, x).unwrap();
        let b = bessel_k_imag(-nu, x).unwrap();
        prop_assert!(a.is_finite());
        prop_assert!((a - b).abs() <= 1e-14 * a.abs().max(1e-300));
    }
}
