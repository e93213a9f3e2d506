//! The acceptance suite: one function per criterion, each returning its
//! checks. Reference values live in [`REFERENCE_TABLE`] with citations so
//! the report describes itself.

use crate::error::Result;
use crate::numcore::{numerov_eigensolve, schrodinger_residual, Grid1D, Kinetic, SampledFunction};
use crate::pt_twoparam::{
    build_factorization, gamma1_bound, partner_spectrum, pt_potential, pt_spectrum, sl_isospectrality,
    susy_partner, PTParams, V0_RESOLUTION,
};
use crate::qes::{
    closed_form_n1, divergence_profile, doublet_gap, oracle_spectrum, qes_solve, razavy_recursion_eigen,
    unclassified_groundstate, Parity, QESProblem, QESSolution, RazavyRecursion,
};
use crate::report::{Check, Comparison, Provenance, VerificationReport};
use crate::susy1d::{family_spectrum_check, isospectral_shift, oscillator_ground};
use crate::susy2d::{
    probability_density, solve_supermultiplet, taub_iso, taub_modes, Field2D, Grid2D, SupermultipletParams,
    TaubModel,
};

#[derive(Debug, Clone, Copy)]
pub struct ReferenceValue {
    pub id: &'static str,
    pub value: f64,
    pub citation: &'static str,
}

const EVEN_N2: &str = "V0 sinh^4, symmetric solutions, N=2, k=0: eigenvalue list";
const ODD_N3: &str = "V0 sinh^4, antisymmetric solutions, N=3, k=0: eigenvalue list";
const EVEN_K4: &str = "V0(sinh^4 - k sinh^2), even, N=2, k=4: eigenvalue list";
const ODD_K5: &str = "V0(sinh^4 - k sinh^2), odd, N=2, k=5: eigenvalue list";

pub const REFERENCE_TABLE: &[ReferenceValue] = &[
    ReferenceValue { id: "even_n2_k0.v0", value: 50.0, citation: "V0 = 2(2N+1)^2 for even solutions" },
    ReferenceValue { id: "even_n2_k0.e0", value: 2.6301, citation: EVEN_N2 },
    ReferenceValue { id: "even_n2_k0.e1", value: 19.0121, citation: EVEN_N2 },
    ReferenceValue { id: "even_n2_k0.e2", value: 43.2490, citation: EVEN_N2 },
    ReferenceValue { id: "odd_n3_k0.v0", value: 128.0, citation: "V0 = 8(N+1)^2 for odd solutions" },
    ReferenceValue { id: "odd_n3_k0.e0", value: 12.8152, citation: ODD_N3 },
    ReferenceValue { id: "odd_n3_k0.e1", value: 40.4568, citation: ODD_N3 },
    ReferenceValue { id: "odd_n3_k0.e2", value: 75.7246, citation: ODD_N3 },
    ReferenceValue { id: "odd_n3_k0.e3", value: 117.003, citation: ODD_N3 },
    ReferenceValue { id: "even_n2_k4.e0", value: -3.74456, citation: EVEN_K4 },
    ReferenceValue { id: "even_n2_k4.e1", value: 1.00000, citation: EVEN_K4 },
    ReferenceValue { id: "even_n2_k4.e2", value: 7.74456, citation: EVEN_K4 },
    ReferenceValue { id: "odd_n2_k5.e0", value: -7.11693, citation: ODD_K5 },
    ReferenceValue { id: "odd_n2_k5.e1", value: 1.08119, citation: ODD_K5 },
    ReferenceValue { id: "odd_n2_k5.e2", value: 9.53574, citation: ODD_K5 },
    ReferenceValue { id: "unclassified.e0", value: 1.5, citation: "unclassified QES potential, alpha=2: E=(alpha^2-1)/2" },
    ReferenceValue { id: "odd_n2_k5.doublet", value: 0.0052, citation: "quasi-degenerate lowest doublet, odd N=2, k=5" },
];

pub fn reference(id: &str) -> ReferenceValue {
    *REFERENCE_TABLE
        .iter()
        .find(|r| r.id == id)
        .unwrap_or_else(|| panic!("no reference value {id}"))
}

pub const CRITERIA: &[(u32, &str)] = &[
    (1, "QES even N=2 k=0 energies"),
    (2, "QES odd N=3 k=0 energies"),
    (3, "QES even N=2 k=4 energies"),
    (4, "QES odd N=2 k=5 energies"),
    (5, "QES energies inside the grid spectrum at their parity slots"),
    (6, "closed-form N=1 energies"),
    (7, "Poschl-Teller m=4 grid spectrum"),
    (8, "two-parameter SL isospectrality"),
    (9, "gamma2=0 SUSY partner"),
    (10, "one-parameter isospectral family"),
    (11, "unclassified QES potential"),
    (12, "Razavy recursion cross-check"),
    (13, "divergence diagnostic E0(1+k)"),
    (14, "Taub modes and deformation"),
    (15, "Grassmann constraints and density"),
    (16, "quasi-degenerate doublet gap"),
];

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    /// Grid for every 1D grid-solver check.
    pub grid: Grid1D,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { grid: Grid1D::default_box() }
    }
}

fn failed(criterion: u32, what: &str, err: crate::Error) -> Check {
    Check::holds(
        format!("c{criterion:02}.error"),
        criterion,
        format!("{what} could not be computed: {err}"),
        false,
        Provenance::Derived,
        "",
    )
}

/// Checks of one criterion; errors surface as failing checks.
pub fn criterion(k: u32, cfg: &VerifyConfig) -> Vec<Check> {
    let what = CRITERIA.iter().find(|c| c.0 == k).map(|c| c.1).unwrap_or("unknown criterion");
    let r = match k {
        1 => qes_table(1, Parity::Even, 2, 0.0, "even_n2_k0", 5e-4),
        2 => qes_table(2, Parity::Odd, 3, 0.0, "odd_n3_k0", 5e-3),
        3 => c03(),
        4 => qes_table(4, Parity::Odd, 2, 5.0, "odd_n2_k5", 1e-4),
        5 => c05(cfg),
        6 => c06(),
        7 => c07(cfg),
        8 => c08(cfg),
        9 => c09(cfg),
        10 => c10(cfg),
        11 => c11(cfg),
        12 => c12(),
        13 => c13(),
        14 => c14(),
        15 => c15(),
        16 => c16(cfg),
        _ => return vec![failed(k, what, crate::Error::InvalidInput(format!("no criterion {k}")))],
    };
    r.unwrap_or_else(|e| vec![failed(k, what, e)])
}

pub fn run_verification(cfg: &VerifyConfig) -> VerificationReport {
    let mut rep = VerificationReport::default();
    for &(k, _) in CRITERIA {
        rep.extend(criterion(k, cfg));
    }
    rep.notes = notes();
    rep
}

fn notes() -> Vec<(String, String)> {
    [
        ("qes_v0", "V0 = alpha^2/2 at every k, i.e. 2(2N+1)^2/(1+k)^2 (even) and 8(N+1)^2/(1+k)^2 (odd); the grid solver places the k=4 and k=5 levels on V0=2"),
        ("qes_even_n2_middle", "recurrence, Razavy recursion and grid solver agree on E=19.12092119 for the middle even N=2, k=0 level"),
        ("pt_sl_constant", V0_RESOLUTION),
        ("taub_iso_denominator", "(lambda2 + I2)^2, same sign as the x1 axis"),
        ("taub_l_convention", "L_{2i omega} = pi Re I_{2i omega} / sinh(2 pi omega), imaginary unit dropped"),
        ("taub_windows", "deformation windows x1 in [-1.5, 4], x2 in [0.5, 4], where the modes are node-free"),
        ("grassmann_seed", "f+ = h(q0 + q1): with B = e^{-S} grad f the mixed constraint needs grad f parallel to grad S"),
        ("grassmann_metric", "eta = diag(-1, 1)"),
    ]
    .iter()
    .map(|(a, b)| (a.to_string(), b.to_string()))
    .collect()
}

fn solve(parity: Parity, n: u32, k: f64) -> Result<QESSolution> {
    qes_solve(QESProblem::new(parity, n, k)?)
}

fn qes_table(c: u32, parity: Parity, n: u32, k: f64, key: &str, tol: f64) -> Result<Vec<Check>> {
    let sol = solve(parity, n, k)?;
    let mut out = Vec::new();
    let v0_id = format!("{key}.v0");
    if let Some(r) = REFERENCE_TABLE.iter().find(|r| r.id == v0_id) {
        out.push(Check::close(format!("c{c:02}.v0"), c, format!("V0 for {key}"), r.value, sol.v0, 1e-12, Provenance::Reference, r.citation));
    }
    for (i, &e) in sol.energies.iter().enumerate() {
        let r = reference(&format!("{key}.e{i}"));
        out.push(Check::close(
            format!("c{c:02}.e{i}"),
            c,
            format!("{key} level {i}"),
            r.value,
            e,
            tol,
            Provenance::Reference,
            r.citation,
        ));
    }
    Ok(out)
}

fn c03() -> Result<Vec<Check>> {
    let mut out = qes_table(3, Parity::Even, 2, 4.0, "even_n2_k4", 1e-4)?;
    let sol = solve(Parity::Even, 2, 4.0)?;
    out.push(Check::close("c03.middle_exact", 3, "middle level equals 1", 1.0, sol.energies[1], 1e-5, Provenance::Reference, EVEN_K4));
    Ok(out)
}

const QES_CASES: [(Parity, u32, f64, &str); 4] = [
    (Parity::Even, 2, 0.0, "even_n2_k0"),
    (Parity::Odd, 3, 0.0, "odd_n3_k0"),
    (Parity::Even, 2, 4.0, "even_n2_k4"),
    (Parity::Odd, 2, 5.0, "odd_n2_k5"),
];

fn c05(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (p, n, k, key) in QES_CASES {
        let sol = solve(p, n, k)?;
        let spec = oracle_spectrum(&sol, cfg.grid)?;
        for (l, &e) in sol.energies.iter().enumerate() {
            let slot = sol.spectrum_index(l);
            let observed = spec.levels.get(slot).map(|lv| lv.energy).unwrap_or(f64::NAN);
            out.push(Check::close(
                format!("c05.{key}.slot{slot}"),
                5,
                format!("{key} level {l} at grid slot {slot}"),
                e,
                observed,
                1e-3,
                Provenance::Oracle,
                "grid eigensolver on V0(sinh^4 - k sinh^2)",
            ));
        }
    }
    Ok(out)
}

fn c06() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let cite = "closed form of the two N=1 even levels";
    for k in [0.0, 1.0, 4.0, 9.0] {
        let (em, ep) = closed_form_n1(k)?;
        let sol = solve(Parity::Even, 1, k)?;
        for (sign, cf, e) in [("minus", em, sol.energies[0]), ("plus", ep, sol.energies[1])] {
            out.push(Check::close(
                format!("c06.k{k}.{sign}"),
                6,
                format!("closed form E_{sign} at k={k}"),
                cf,
                e,
                1e-10,
                Provenance::Derived,
                cite,
            ));
        }
    }
    let (em, _) = closed_form_n1(1.5)?;
    out.push(Check::close("c06.zero_crossing", 6, "E_minus(k=3/2) = 0", 0.0, em, 1e-10, Provenance::Derived, cite));
    Ok(out)
}

fn c07(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let v = pt_potential(4, 1.0, cfg.grid);
    let spec = numerov_eigensolve(&v, 4, Kinetic::Unit)?;
    let expected = pt_spectrum(4, 1.0);
    Ok(expected
        .iter()
        .enumerate()
        .map(|(n, &e)| {
            let observed = spec.levels.get(n).map(|l| l.energy).unwrap_or(f64::NAN);
            Check::close(
                format!("c07.e{n}"),
                7,
                format!("-12 sech^2 level {n}"),
                e,
                observed,
                1e-4,
                Provenance::Derived,
                "E_n = -(m-n)^2 for -m(m+1) sech^2",
            )
        })
        .collect())
}

fn c08(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let params = PTParams::new(1.0, 3)?;
    let b = gamma1_bound(3, 1.0);
    let sample = [(0.0, 0.0), (0.3 * b, 0.5), (-0.3 * b, 1.0), (0.6 * b, 2.0), (-0.6 * b, -0.5)];
    let reference_levels = pt_spectrum(4, 1.0);
    let mut out = Vec::new();
    for (j, &(g1, g2)) in sample.iter().enumerate() {
        let pt = sl_isospectrality(params, g1, g2, cfg.grid)?;
        out.push(Check::holds(
            format!("c08.p{j}.admissible"),
            8,
            format!("(gamma1, gamma2) = ({g1:.4}, {g2}) admissible"),
            pt.valid,
            Provenance::Derived,
            "eta real and positive, 1 + gamma1 J nonzero",
        ));
        for (n, &e) in reference_levels.iter().enumerate() {
            let observed = pt.energies.get(n).copied().unwrap_or(f64::NAN);
            out.push(Check::close(
                format!("c08.p{j}.e{n}"),
                8,
                format!("SL level {n} at ({g1:.4}, {g2})"),
                e,
                observed,
                1e-3,
                Provenance::Derived,
                "Poschl-Teller spectrum -alpha^2 (m+1-n)^2",
            ));
        }
    }
    let f = build_factorization(params, 0.0, 0.0, cfg.grid)?;
    let eta_dev = f.eta.values().iter().fold(0.0_f64, |m, e| m.max((e - 1.0).abs()));
    let beta_dev = (0..cfg.grid.len()).fold(0.0_f64, |m, i| m.max((f.beta.at(i) - 4.0 * cfg.grid.x(i).tanh()).abs()));
    out.push(Check::below("c08.origin.eta", 8, "eta = 1 at the origin of the parameter plane", eta_dev, 1e-12, Provenance::Derived, "gamma1 = gamma2 = 0"));
    out.push(Check::below(
        "c08.origin.beta",
        8,
        "beta = alpha(m+1) tanh at the origin",
        beta_dev,
        1e-10,
        Provenance::Derived,
        "gamma1 = gamma2 = 0",
    ));
    Ok(out)
}

fn c09(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let params = PTParams::new(1.0, 3)?;
    let g1 = 0.5 * gamma1_bound(3, 1.0);
    let sp = susy_partner(g1, params, cfg.grid)?;
    let e = partner_spectrum(&sp, params)?;
    let mut out = Vec::new();
    for (n, &r) in pt_spectrum(4, 1.0).iter().enumerate() {
        out.push(Check::close(
            format!("c09.e{n}"),
            9,
            format!("partner level {n}"),
            r,
            e.get(n).copied().unwrap_or(f64::NAN),
            1e-3,
            Provenance::Derived,
            "Poschl-Teller spectrum of index m+1",
        ));
    }
    let r = schrodinger_residual(&sp.v_tilde, &sp.phi0, sp.ground_energy, Kinetic::Unit)?;
    out.push(Check::below("c09.phi0_residual", 9, "phi0 residual at E = -alpha^2 (m+1)^2", r, 1e-5, Provenance::Derived, "phi0 = sech^{m+1}/(1+gamma1 J)"));
    Ok(out)
}

fn c10(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let u = oscillator_ground(cfg.grid, 1.0);
    let mut out = Vec::new();
    let mut sup = Vec::new();
    for lambda in [2.0, 10.0, 1e6] {
        let fam = isospectral_shift(&u, lambda, 0.5, Kinetic::Half)?;
        let r = schrodinger_residual(&fam.v_hat, &fam.u_hat, 0.5, Kinetic::Half)?;
        out.push(Check::below(
            format!("c10.l{lambda:e}.residual"),
            10,
            format!("u_hat residual at E=1/2, lambda={lambda:e}"),
            r,
            1e-5,
            Provenance::Derived,
            "u_hat = sqrt(lambda(lambda+1)) u/(lambda+I)",
        ));
        let rep = family_spectrum_check(&fam, &fam.v_plus, 4)?;
        for (n, (a, b)) in rep.deformed.iter().zip(&rep.original).enumerate() {
            out.push(Check::close(
                format!("c10.l{lambda:e}.e{n}"),
                10,
                format!("V_hat level {n} against V_plus, lambda={lambda:e}"),
                *b,
                *a,
                1e-3,
                Provenance::Oracle,
                "grid eigensolver on V_plus",
            ));
        }
        if rep.deformed.len() < 4 {
            out.push(Check::holds(format!("c10.l{lambda:e}.count"), 10, "four bound levels", false, Provenance::Derived, ""));
        }
        sup.push(fam.v_hat.distance(&fam.v_plus)?);
    }
    let monotone = sup.windows(2).all(|w| w[1] < w[0]);
    out.push(Check::holds(
        "c10.monotone",
        10,
        format!("sup|V_hat - V_plus| decreases in lambda: {:.3e}, {:.3e}, {:.3e}", sup[0], sup[1], sup[2]),
        monotone,
        Provenance::Derived,
        "V_hat -> V_plus as lambda -> infinity",
    ));
    Ok(out)
}

fn c11(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let r = reference("unclassified.e0");
    let (v, psi, e) = unclassified_groundstate(2.0, cfg.grid)?;
    let res = schrodinger_residual(&v, &psi, e, Kinetic::Half)?;
    let spec = numerov_eigensolve(&v, 1, Kinetic::Half)?;
    Ok(vec![
        Check::below("c11.residual", 11, "analytic pair residual", res, 1e-6, Provenance::Derived, r.citation),
        Check::close("c11.analytic_energy", 11, "analytic energy", r.value, e, 1e-12, Provenance::Reference, r.citation),
        Check::close(
            "c11.grid_ground",
            11,
            "grid ground state",
            r.value,
            spec.levels.first().map(|l| l.energy).unwrap_or(f64::NAN),
            1e-4,
            Provenance::Reference,
            r.citation,
        ),
    ])
}

fn c12() -> Result<Vec<Check>> {
    let prob = QESProblem::new(Parity::Even, 2, 0.0)?;
    let sol = qes_solve(prob)?;
    let rec = RazavyRecursion::for_qes(prob)?;
    let (_, _, offset) = rec.qes_equivalent();
    let roots = razavy_recursion_eigen(&rec)?;
    Ok(sol
        .energies
        .iter()
        .enumerate()
        .map(|(i, &e)| {
            let observed = roots.get(i).map(|er| er / 2.0 - offset).unwrap_or(f64::NAN);
            Check::close(
                format!("c12.e{i}"),
                12,
                format!("Razavy root {i} (zeta={}, n={}, sigma={}, eta={})", rec.zeta, rec.n, rec.sigma, rec.eta),
                e,
                observed,
                1e-6,
                Provenance::Oracle,
                "three-term recursion P_{n+1}(E_R) = 0, E = E_R/2 - offset",
            )
        })
        .collect())
}

fn c13() -> Result<Vec<Check>> {
    let rows = divergence_profile(Parity::Even, 0, &[0.0, -0.5, -0.9, -0.99])?;
    Ok(rows
        .iter()
        .map(|r| {
            Check::close(
                format!("c13.k{}", r.k),
                13,
                format!("E0 (1+k) at k={}", r.k),
                1.0,
                r.e0_scaled,
                1e-12,
                Provenance::Derived,
                "E_{0,0} = 1/(1+k)",
            )
        })
        .collect())
}

fn c14() -> Result<Vec<Check>> {
    let model = TaubModel::new(1.0, 2.0, 2.0)?;
    let modes = taub_modes(&model)?;
    let iso = taub_iso(&model, &modes)?;
    let cite = "separated Wheeler-DeWitt equations of the Taub model";
    Ok(vec![
        Check::below("c14.f1", 14, "f1 ODE residual, omega=1", modes.residual1, 1e-5, Provenance::Derived, cite),
        Check::below("c14.f2", 14, "f2 ODE residual, omega=1", modes.residual2, 1e-5, Provenance::Derived, cite),
        Check::below("c14.f1_hat", 14, "deformed f1 residual, lambda1=2", iso.residual1, 1e-4, Provenance::Derived, cite),
    ])
}

fn c15() -> Result<Vec<Check>> {
    let g = Grid2D::square(-3.0, 3.0, 121)?;
    let s = Field2D::from_fn(g, |a, b| a + b)?;
    let st = solve_supermultiplet(&s, |t| t, SupermultipletParams::default())?;
    let cite = "component equations of Q+ Psi = 0 and Q- Psi = 0";
    let mut out: Vec<Check> = st
        .residuals
        .named()
        .iter()
        .map(|(name, r)| {
            Check::below(format!("c15.{name}"), 15, format!("{name} residual, S = q0 + q1"), *r, 1e-6, Provenance::Derived, cite)
        })
        .collect();
    let rho = probability_density(&st)?;
    out.push(Check::holds(
        "c15.nonnegative",
        15,
        "|Psi|^2 >= 0 everywhere",
        rho.full.min() >= 0.0,
        Provenance::Derived,
        "sum of squared components",
    ));
    let n = g.q0.len();
    let peak = rho.bounded.max_abs();
    let corner = rho.bounded.at(n - 1, n - 1) / peak;
    out.push(Check::below(
        "c15.bounded_decay",
        15,
        "e^{-2S} part at the large-S corner, relative to its peak",
        corner,
        1e-8,
        Provenance::Derived,
        "only the e^{-2S} contribution stays bounded",
    ));
    Ok(out)
}

fn c16(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let sol = solve(Parity::Odd, 2, 5.0)?;
    let gap = doublet_gap(sol.v0, 5.0, cfg.grid)?;
    let r = reference("odd_n2_k5.doublet");
    Ok(vec![Check::new(
        "c16.gap",
        16,
        format!("lowest doublet relative gap (reference {})", r.value),
        gap,
        Comparison::Inside { lo: 1e-3, hi: 1e-2 },
        Provenance::Reference,
        r.citation,
    )])
}

/// Grid spectrum helper for callers that want the raw levels.
pub fn grid_levels(v: &SampledFunction, count: usize, kinetic: Kinetic) -> Result<Vec<f64>> {
    Ok(numerov_eigensolve(v, count, kinetic)?.energies())
}
