use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use susyqm::numcore::*;
use susyqm::pt_twoparam::*;

fn grid() -> Grid1D {
    Grid1D::default_box()
}

fn p3() -> PTParams {
    PTParams::new(1.0, 3).unwrap()
}

#[test]
fn ground_state_normalization() {
    let g = grid();
    let psi = ih_ground(1, 1.0, g).unwrap();
    assert!((psi.at(g.index_of(0.0)) - 0.5f64.sqrt()).abs() < 1e-12);
    assert!((psi.norm_sq() - 1.0).abs() < 1e-8);
    let psi = ih_ground(3, 2.0, g).unwrap();
    assert!((psi.norm_sq() - 1.0).abs() < 1e-8);
    assert!(ih_ground(0, 1.0, g).is_err());
}

#[test]
fn raising_walks_up_the_wells() {
    let g = grid();
    let alpha = 1.0;
    for l in 1..3u32 {
        let mut psi = ih_ground(l, alpha, g).unwrap();
        let mut parity = 1.0;
        for s in l..l + 2 {
            psi = ih_raise(&psi, s, alpha).unwrap();
            parity = -parity;
            let i = g.index_of(1.0);
            let j = g.index_of(-1.0);
            assert!((psi.at(j) - parity * psi.at(i)).abs() < 1e-8, "parity after raising to {}", s + 1);
            assert!((psi.norm_sq() - 1.0).abs() < 1e-8);
        }
        let v = pt_potential(l + 2, alpha, g);
        let e = -alpha * alpha * (l * l) as f64;
        let r = schrodinger_residual(&v, &psi, e, Kinetic::Unit).unwrap();
        assert!(r < 1e-4, "l = {l}: {r}");
    }
}

#[test]
fn origin_recovers_ih_operators() {
    let g = grid();
    let f = build_factorization(p3(), 0.0, 0.0, g).unwrap();
    assert!(f.valid);
    for i in 0..g.len() {
        assert!((f.eta.at(i) - 1.0).abs() < 1e-12);
        assert!((f.beta.at(i) - 4.0 * g.x(i).tanh()).abs() < 1e-10);
    }
}

#[test]
fn values_at_origin() {
    let g = grid();
    let i0 = g.index_of(0.0);
    for (g1, g2) in [(0.1, 0.5), (-0.4, 1.5), (0.7, -0.3)] {
        let f = build_factorization(p3(), g1, g2, g).unwrap();
        assert!((f.eta.at(i0) - (1.0 + g2).powf(-0.5)).abs() < 1e-14);
        assert!((f.beta.at(i0) - g1 * (1.0 + g2).powf(-0.5)).abs() < 1e-14);
    }
}

#[test]
fn riccati_and_coupled_equations() {
    let g = grid();
    for (g1, g2) in [(0.1, 0.5), (0.0, 2.0), (-0.8, 0.3)] {
        let f = build_factorization(p3(), g1, g2, g).unwrap();
        let ratio = f.beta.zip_with(&f.eta, |b, e| b / e).unwrap();
        let d = differentiate(&ratio, 1).unwrap();
        for i in 2..g.len() - 2 {
            let x = g.x(i);
            let rhs = -12.0 / x.cosh().powi(2) + 16.0;
            assert!((d.at(i) + ratio.at(i).powi(2) - rhs).abs() < 1e-6, "x = {x}");
        }
        let (r1, r2) = coupled_residuals(&f).unwrap();
        assert!(r1 < 1e-6 && r2 < 1e-6, "{r1} {r2}");
    }
}

#[test]
fn ratio_is_plain_tanh_only_without_gamma1() {
    let g = grid();
    let f = build_factorization(p3(), 0.0, 0.7, g).unwrap();
    for i in 0..g.len() {
        assert!((f.beta.at(i) / f.eta.at(i) - 4.0 * g.x(i).tanh()).abs() < 1e-8);
    }
    let f = build_factorization(p3(), 0.3, 0.7, g).unwrap();
    let i0 = g.index_of(0.0);
    assert!((f.beta.at(i0) / f.eta.at(i0) - 0.3).abs() < 1e-12);
}

fn test_functions(g: Grid1D, count: usize) -> Vec<SampledFunction> {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    (0..count)
        .map(|_| {
            let c: f64 = rng.gen_range(-2.0..2.0);
            let w: f64 = rng.gen_range(0.5..1.5);
            let k: f64 = rng.gen_range(0.0..2.0);
            SampledFunction::from_fn(g, |x| (-(x - c).powi(2) / (w * w)).exp() * (1.0 + 0.3 * (k * x).sin())).unwrap()
        })
        .collect()
}

#[test]
fn product_reproduces_hamiltonian() {
    let g = grid();
    let f0 = build_factorization(p3(), 0.0, 0.0, g).unwrap();
    let sech2 = vec![SampledFunction::from_fn(g, |x| x.cosh().powi(-2)).unwrap()];
    assert!(factorization_residual(&f0, &sech2).unwrap() < 1e-5);

    let f = build_factorization(p3(), 0.1, 0.5, g).unwrap();
    let tf = test_functions(g, 5);
    let r = factorization_residual(&f, &tf).unwrap();
    assert!(r < 1e-4, "{r}");

    let mut bad = f.clone();
    bad.eta = bad.eta.map(|e| 1.01 * e).unwrap();
    assert!(factorization_residual(&bad, &tf).unwrap() > 1e-2);
}

#[test]
fn sl_spectrum_isospectral() {
    let g = grid();
    let reference = pt_spectrum(4, 1.0);
    assert_eq!(reference, vec![-16.0, -9.0, -4.0, -1.0]);
    for (g1, g2) in [(0.0, 0.0), (0.1, 0.3), (0.1, 0.5)] {
        let pt = sl_isospectrality(p3(), g1, g2, g).unwrap();
        assert!(pt.valid);
        assert!(pt.max_deviation < 1e-3, "({g1},{g2}): {:?}", pt.energies);
    }
}

#[test]
fn sl_ground_state() {
    let g = grid();
    for (g1, g2) in [(0.1, 0.5), (0.0, 0.0), (-0.5, 1.0)] {
        let f = build_factorization(p3(), g1, g2, g).unwrap();
        let sl = build_sl_problem(&f).unwrap();
        let phi = sl_ground(&f).unwrap();
        let r = sl_residual(&sl.p, &sl.q, &sl.w, &phi, -16.0).unwrap();
        assert!(r < 1e-4, "({g1},{g2}): {r}");
        let wn = phi.zip_with(&sl.w, |a, b| a * a * b).unwrap().integral();
        assert!((wn - 1.0).abs() < 1e-8);
    }
}

#[test]
fn sl_ground_shape() {
    let g = grid();
    let f = build_factorization(p3(), 0.0, 0.0, g).unwrap();
    let phi = sl_ground(&f).unwrap();
    let i0 = g.index_of(0.0);
    for i in (0..g.len()).step_by(37) {
        let expect = phi.at(i0) * g.x(i).cosh().powi(-4);
        assert!((phi.at(i) - expect).abs() < 1e-12);
    }

    let b = gamma1_bound(3, 1.0);
    let f = build_factorization(p3(), 0.9 * b, 0.5, g).unwrap();
    let phi = sl_ground(&f).unwrap();
    assert!(phi.values().iter().all(|v| v.is_finite()));
    assert!(phi.values()[1..g.len() - 1].iter().all(|v| *v > 0.0));

    let i1 = g.index_of(1.0);
    let j1 = g.index_of(-1.0);
    assert!((phi.at(i1) - phi.at(j1)).abs() > 1e-3, "gamma1 != 0 breaks parity");
    let f = build_factorization(p3(), 0.0, 0.5, g).unwrap();
    let phi = sl_ground(&f).unwrap();
    assert!((phi.at(i1) - phi.at(j1)).abs() < 1e-12);
}

#[test]
fn partner_potential() {
    let g = grid();
    let p2 = PTParams::new(1.0, 2).unwrap();
    let zero = susy_partner(0.0, p2, g).unwrap();
    assert!(zero.v_tilde.distance(&pt_potential(3, 1.0, g)).unwrap() < 1e-12);

    let sp = susy_partner(0.5, p2, g).unwrap();
    let e = partner_spectrum(&sp, p2).unwrap();
    for (a, b) in e.iter().zip([-9.0, -4.0, -1.0]) {
        assert!((a - b).abs() < 1e-3, "{e:?}");
    }
    let r = schrodinger_residual(&sp.v_tilde, &sp.phi0, sp.ground_energy, Kinetic::Unit).unwrap();
    assert!(r < 1e-5, "{r}");

    // the SL operator at gamma2 = 0 is the partner problem with unit weight
    let f = build_factorization(p2, 0.5, 0.0, g).unwrap();
    let sl = build_sl_problem(&f).unwrap();
    let neg = sl.q.map(|q| -q).unwrap();
    assert!(neg.distance(&sp.v_tilde).unwrap() < 1e-10);
    assert!(sl.w.map(|w| w - 1.0).unwrap().max_abs() < 1e-14);
}

#[test]
fn partner_rejects_out_of_bound() {
    let p2 = PTParams::new(1.0, 2).unwrap();
    assert!(susy_partner(2.0 * gamma1_bound(2, 1.0), p2, grid()).is_err());
}

#[test]
fn sweep_of_parameter_plane() {
    let g = Grid1D::new(-12.0, 12.0, 2001).unwrap();
    let mut valid = 0;
    for (g1, g2) in parameter_sample(p3()) {
        let pt = sl_isospectrality(p3(), g1, g2, g).unwrap();
        if pt.valid {
            valid += 1;
            assert!(pt.max_deviation < 1e-3, "({g1},{g2}): {:?}", pt.energies);
        }
    }
    assert_eq!(valid, 25);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn deformation_is_continuous_at_origin(t in 1e-6f64..1e-3) {
        let g = Grid1D::new(-8.0, 8.0, 801).unwrap();
        let f = build_factorization(p3(), t, t, g).unwrap();
        let f0 = build_factorization(p3(), 0.0, 0.0, g).unwrap();
        prop_assert!(f.eta.distance(&f0.eta).unwrap() < 2.0 * t);
        prop_assert!(f.beta.distance(&f0.beta).unwrap() < 10.0 * t);
    }

    #[test]
    fn eta_positive_inside_bound_for_nonnegative_gamma2(frac in -0.95f64..0.95, g2 in 0.0f64..5.0) {
        let g = Grid1D::new(-8.0, 8.0, 801).unwrap();
        let b = gamma1_bound(3, 1.0);
        let f = build_factorization(p3(), frac * b, g2, g).unwrap();
        prop_assert!(f.valid);
        prop_assert!(f.eta.values().iter().all(|e| *e > 0.0));
    }

    #[test]
    fn validity_is_positivity_of_eta_argument(frac in -0.95f64..0.95, g2 in -3.0f64..0.0) {
        let g = Grid1D::new(-8.0, 8.0, 801).unwrap();
        let b = gamma1_bound(3, 1.0);
        let f = build_factorization(p3(), frac * b, g2, g).unwrap();
        let max_phi2 = (0..g.len())
            .map(|i| (g.x(i).cosh().powi(-4) / f.denom.at(i)).powi(2))
            .fold(0.0_f64, f64::max);
        prop_assert_eq!(f.valid, 1.0 + g2 * max_phi2 > 0.0);
    }
}
