use crate::output::Sink;
use crate::{Cli, CliError, CliResult, Command, DirectionArg, GlobalArgs, SeedKind};
use serde_json::{json, Value};
use std::path::Path;
use susyqm::io::{num, read_csv};
use susyqm::numcore::{schrodinger_residual, Grid1D, Kinetic};
use susyqm::pt_twoparam::{
    build_factorization, coupled_residuals, parameter_sample, pt_spectrum, sl_ground, sl_isospectrality,
    susy_partner, PTParams,
};
use susyqm::qes::{
    bethe_root_residual, finkel_eigenfunction, oracle_spectrum, qes_solve, razavy_recursion_eigen, QESProblem,
    RazavyRecursion,
};
use susyqm::report::{Check, Provenance};
use susyqm::susy1d::{
    family_spectrum_check, isospectral_from_potential, isospectral_shift, oscillator_ground, partner_potentials,
    IsospectralFamily,
};
use susyqm::susy2d::{
    probability_density, solve_supermultiplet, taub_iso, taub_modes, Field2D, Grid2D, NullDirection,
    SupermultipletParams, TaubModel,
};
use susyqm::verify::{run_verification, VerifyConfig, CRITERIA};

/// Per-level agreement required of grid spectra.
const SPECTRAL_TOL: f64 = 1e-3;

pub fn run(cli: &Cli) -> CliResult<bool> {
    let g = &cli.global;
    match &cli.command {
        Command::Partner { seed, lambda, energy, seed_kind, kinetic } => {
            partner(g, seed, *lambda, *energy, *seed_kind, (*kinetic).into())
        }
        Command::Isospectral { omega, lambda, levels } => isospectral(g, *omega, *lambda, *levels),
        Command::PtSl { m, alpha, gamma1, gamma2, sweep } => pt_sl(g, *m, *alpha, *gamma1, *gamma2, *sweep),
        Command::Qes { parity, n, k, verify } => qes(g, QESProblem::new((*parity).into(), *n, *k)?, *verify),
        Command::Razavy { zeta, n, sigma, eta } => razavy(g, RazavyRecursion::new(*zeta, *n, *sigma, *eta)?),
        Command::Taub { omega, lambda1, lambda2 } => taub(g, TaubModel::new(*omega, *lambda1, *lambda2)?),
        Command::Grassmann { superpotential, h, direction } => grassmann(g, superpotential, h, *direction),
        Command::Verify => verify(g),
    }
}

fn grid_json(g: Grid1D) -> Value {
    json!({ "x_min": num(g.x_min()), "x_max": num(g.x_max()), "n": g.len() })
}

fn floats(v: &[f64]) -> Value {
    Value::Array(v.iter().map(|&x| num(x)).collect())
}

fn kinetic_name(k: Kinetic) -> &'static str {
    match k {
        Kinetic::Half => "half",
        Kinetic::Unit => "unit",
    }
}

/// Files, residual checks and report fields shared by `partner` and
/// `isospectral`.
fn family_output(sink: &mut Sink, fam: &IsospectralFamily, tol: f64) -> CliResult<(Value, Vec<Check>)> {
    if let Some(w) = &fam.w {
        sink.csv("w.csv", w)?;
        let pair = partner_potentials(w, fam.kinetic)?;
        sink.csv("v_minus.csv", &pair.v_minus.map(|v| v + fam.seed_energy)?)?;
    }
    if let Some(w_hat) = &fam.w_hat {
        sink.csv("w_hat.csv", w_hat)?;
    }
    sink.csv("v_plus.csv", &fam.v_plus)?;
    sink.csv("v_hat.csv", &fam.v_hat)?;
    sink.csv("u_hat.csv", &fam.u_hat)?;

    let seed_res = schrodinger_residual(&fam.v_plus, &fam.u, fam.seed_energy, fam.kinetic)?;
    let hat_res = schrodinger_residual(&fam.v_hat, &fam.u_hat, fam.seed_energy, fam.kinetic)?;
    let norm = fam.u_hat.norm_sq();
    let sup = fam.v_hat.distance(&fam.v_plus)?;
    let checks = vec![
        Check::below("seed.residual", 0, "seed state solves V_plus at the seed energy", seed_res, tol, Provenance::Derived, "V_plus = kappa(W^2 - W') + E"),
        Check::below("u_hat.residual", 0, "u_hat solves V_hat at the seed energy", hat_res, tol, Provenance::Derived, "isospectral deformation"),
        Check::close("u_hat.norm", 0, "u_hat is normalized", 1.0, norm, 1e-6, Provenance::Derived, "g(lambda) = sqrt(lambda(lambda+1))"),
    ];
    let report = json!({
        "lambda": num(fam.lambda),
        "kinetic": kinetic_name(fam.kinetic),
        "seed_energy": num(fam.seed_energy),
        "g_lambda": num(fam.g_lambda),
        "sup_v_hat_minus_v_plus": num(sup),
        "grid": grid_json(*fam.v_plus.grid()),
    });
    Ok((report, checks))
}

fn partner(g: &GlobalArgs, seed: &Path, lambda: f64, energy: f64, kind: SeedKind, kinetic: Kinetic) -> CliResult<bool> {
    let tol = g.tol(1e-5)?;
    let f = read_csv(seed)?;
    let fam = match kind {
        SeedKind::State => isospectral_shift(&f, lambda, energy, kinetic)?,
        SeedKind::Potential => isospectral_from_potential(&f, lambda, kinetic)?,
    };
    let mut sink = Sink::new(&g.out)?;
    let (mut report, checks) = family_output(&mut sink, &fam, tol)?;
    report["seed_file"] = Value::from(seed.display().to_string());
    if !g.json {
        println!("lambda = {lambda}, seed energy = {:.10}", fam.seed_energy);
    }
    sink.finish("partner.json", report, &checks, g.json)
}

fn isospectral(g: &GlobalArgs, omega: f64, lambda: f64, levels: usize) -> CliResult<bool> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(CliError::Invalid(format!("omega must be positive, got {omega}")));
    }
    let tol = g.tol(1e-5)?;
    let grid = g.grid(Grid1D::default_box())?;
    let u = oscillator_ground(grid, omega);
    let fam = isospectral_shift(&u, lambda, 0.5 * omega, Kinetic::Half)?;
    let mut sink = Sink::new(&g.out)?;
    let (mut report, mut checks) = family_output(&mut sink, &fam, tol)?;
    let spec = family_spectrum_check(&fam, &fam.v_plus, levels)?;
    for (n, (a, b)) in spec.deformed.iter().zip(&spec.original).enumerate() {
        checks.push(Check::close(
            format!("level{n}"),
            0,
            format!("V_hat level {n} against V_plus"),
            *b,
            *a,
            SPECTRAL_TOL,
            Provenance::Oracle,
            "grid eigensolver",
        ));
    }
    if spec.deformed.len() < levels || spec.original.len() < levels {
        checks.push(Check::holds("levels", 0, format!("{levels} bound levels on the grid"), false, Provenance::Oracle, ""));
    }
    report["omega"] = num(omega);
    report["deformed_levels"] = floats(&spec.deformed);
    report["original_levels"] = floats(&spec.original);
    if !g.json {
        println!("V_hat levels: {:?}", spec.deformed);
    }
    sink.finish("isospectral.json", report, &checks, g.json)
}

fn pt_sl(g: &GlobalArgs, m: u32, alpha: f64, gamma1: f64, gamma2: f64, sweep: bool) -> CliResult<bool> {
    let tol = g.tol(1e-5)?;
    let params = PTParams::new(alpha, m)?;
    let grid = g.grid(Grid1D::default_box())?;
    let fact = build_factorization(params, gamma1, gamma2, grid)?;
    if !fact.valid {
        let (reason, x) = fact.failure.clone().unwrap_or_default();
        return Err(CliError::Invalid(format!("(gamma1, gamma2) = ({gamma1}, {gamma2}) is inadmissible: {reason} near x = {x}")));
    }
    let mut sink = Sink::new(&g.out)?;
    sink.csv("eta.csv", &fact.eta)?;
    sink.csv("beta.csv", &fact.beta)?;
    sink.csv("phi0.csv", &sl_ground(&fact)?)?;
    let mut checks = Vec::new();
    if gamma2 == 0.0 {
        let sp = susy_partner(gamma1, params, grid)?;
        sink.csv("v_tilde.csv", &sp.v_tilde)?;
        let r = schrodinger_residual(&sp.v_tilde, &sp.phi0, sp.ground_energy, Kinetic::Unit)?;
        checks.push(Check::below("phi0.residual", 0, "partner ground state residual", r, tol, Provenance::Derived, "phi0 = sech^{m+1}/(1 + gamma1 J)"));
    }
    let (r1, r2) = coupled_residuals(&fact)?;
    let reference = pt_spectrum(m + 1, alpha);
    let point = sl_isospectrality(params, gamma1, gamma2, grid)?;
    for (n, &e) in reference.iter().enumerate() {
        checks.push(Check::close(
            format!("level{n}"),
            0,
            format!("SL level {n}"),
            e,
            point.energies.get(n).copied().unwrap_or(f64::NAN),
            SPECTRAL_TOL,
            Provenance::Derived,
            "-alpha^2 (m+1-n)^2",
        ));
    }
    let mut report = json!({
        "m": m,
        "alpha": num(alpha),
        "gamma1": num(gamma1),
        "gamma2": num(gamma2),
        "gamma1_bound": num(fact.bound),
        "grid": grid_json(grid),
        "energies": floats(&point.energies),
        "reference": floats(&reference),
        "coupled_residuals": floats(&[r1, r2]),
    });
    if sweep {
        let mut rows = Vec::new();
        for (j, (g1, g2)) in parameter_sample(params).into_iter().enumerate() {
            let p = sl_isospectrality(params, g1, g2, grid)?;
            if p.valid {
                checks.push(Check::below(
                    format!("sweep{j}"),
                    0,
                    format!("sweep point ({g1:.6}, {g2}) max level deviation"),
                    p.max_deviation,
                    SPECTRAL_TOL,
                    Provenance::Derived,
                    "-alpha^2 (m+1-n)^2",
                ));
            }
            rows.push(json!({
                "gamma1": num(g1),
                "gamma2": num(g2),
                "valid": p.valid,
                "energies": floats(&p.energies),
                "max_deviation": num(p.max_deviation),
            }));
        }
        report["sweep"] = Value::Array(rows);
    }
    if !g.json {
        println!("SL levels: {:?}", point.energies);
    }
    sink.finish("pt_sl.json", report, &checks, g.json)
}

fn qes(g: &GlobalArgs, problem: QESProblem, verify: bool) -> CliResult<bool> {
    let tol = g.tol(1e-4)?;
    let sol = qes_solve(problem)?;
    let grid = g.grid(Grid1D::default_box())?;
    let mut sink = Sink::new(&g.out)?;
    let mut residuals = Vec::new();
    let mut checks = Vec::new();
    let spec = if verify { Some(oracle_spectrum(&sol, grid)?) } else { None };
    let v = problem.potential(grid);
    for (l, &e) in sol.energies.iter().enumerate() {
        let psi = sol.eigenfunction(l, grid)?;
        sink.csv(&format!("qes_psi{l}.csv"), &psi)?;
        let bethe = bethe_root_residual(&sol, l)?;
        residuals.push(bethe);
        if let Some(spec) = &spec {
            let slot = sol.spectrum_index(l);
            checks.push(Check::below(format!("bethe{l}"), 0, format!("root system residual, level {l}"), bethe, 1e-6, Provenance::Derived, "Bethe equations of the roots"));
            checks.push(Check::close(
                format!("slot{slot}"),
                0,
                format!("level {l} at grid slot {slot}"),
                e,
                spec.levels.get(slot).map(|lv| lv.energy).unwrap_or(f64::NAN),
                SPECTRAL_TOL,
                Provenance::Oracle,
                "grid eigensolver",
            ));
            let r = schrodinger_residual(&v, &psi, e, Kinetic::Half)? / (1.0 + e.abs());
            checks.push(Check::below(format!("psi{l}.residual"), 0, format!("eigenfunction residual, level {l}, relative to 1+|E|"), r, tol, Provenance::Derived, "closed-form eigenfunction"));
        }
    }
    let roots: Vec<Value> = sol
        .roots
        .iter()
        .map(|rs| Value::Array(rs.iter().map(|z| json!([num(z.re), num(z.im)])).collect()))
        .collect();
    let report = json!({
        "parity": problem.parity,
        "N": problem.n,
        "k": num(problem.k),
        "alpha": num(sol.alpha),
        "V0": num(sol.v0),
        "energies": floats(&sol.energies),
        "roots": roots,
        "residuals": floats(&residuals),
        "grid": grid_json(grid),
    });
    if !g.json {
        println!("alpha = {}, V0 = {}", sol.alpha, sol.v0);
        for (l, e) in sol.energies.iter().enumerate() {
            println!("E{l} = {e:.10}");
        }
    }
    sink.finish("qes.json", report, &checks, g.json)
}

fn razavy(g: &GlobalArgs, rec: RazavyRecursion) -> CliResult<bool> {
    let tol = g.tol(1e-4)?;
    let grid = g.grid(Grid1D::new(-6.0, 6.0, 2401)?)?;
    let roots = razavy_recursion_eigen(&rec)?;
    let (v0, k, offset) = rec.qes_equivalent();
    let v = rec.potential(grid);
    let mut sink = Sink::new(&g.out)?;
    let mut checks = Vec::new();
    for (i, &er) in roots.iter().enumerate() {
        let psi = finkel_eigenfunction(&rec, er, grid)?;
        sink.csv(&format!("razavy_psi{i}.csv"), &psi)?;
        let r = schrodinger_residual(&v, &psi, er / 2.0, Kinetic::Half)? / (1.0 + er.abs());
        checks.push(Check::below(format!("psi{i}.residual"), 0, format!("eigenfunction residual at E_R = {er:.8}, relative to 1+|E_R|"), r, tol, Provenance::Derived, "closed-form eigenfunction of the recursion"));
    }
    let energies: Vec<f64> = roots.iter().map(|e| e / 2.0).collect();
    let report = json!({
        "zeta": num(rec.zeta),
        "n": rec.n,
        "sigma": rec.sigma,
        "eta": rec.eta,
        "M": num(rec.m_param()),
        "roots_E_R": floats(&roots),
        "energies": floats(&energies),
        "qes_equivalent": { "V0": num(v0), "k": num(k), "offset": num(offset) },
        "qes_energies": floats(&energies.iter().map(|e| e - offset).collect::<Vec<_>>()),
        "grid": grid_json(grid),
    });
    if !g.json {
        for (i, e) in energies.iter().enumerate() {
            println!("E{i} = {e:.10}");
        }
    }
    sink.finish("razavy.json", report, &checks, g.json)
}

fn taub(g: &GlobalArgs, model: TaubModel) -> CliResult<bool> {
    let tol = g.tol(1e-5)?;
    let modes = taub_modes(&model)?;
    let iso = taub_iso(&model, &modes)?;
    let mut sink = Sink::new(&g.out)?;
    sink.csv("f1.csv", &modes.f1)?;
    sink.csv("f2.csv", &modes.f2)?;
    sink.csv("v_hat1.csv", iso.v_hat1())?;
    sink.csv("v_hat2.csv", iso.v_hat2())?;
    sink.csv("f_hat1.csv", iso.f_hat1())?;
    sink.csv("f_hat2.csv", iso.f_hat2())?;
    let cite = "separated Taub equations";
    let checks = vec![
        Check::below("f1.residual", 0, "f1 ODE residual", modes.residual1, tol, Provenance::Derived, cite),
        Check::below("f2.residual", 0, "f2 ODE residual", modes.residual2, tol, Provenance::Derived, cite),
        Check::below("f_hat1.residual", 0, "deformed f1 residual", iso.residual1, 10.0 * tol, Provenance::Derived, cite),
        Check::below("f_hat2.residual", 0, "deformed f2 residual", iso.residual2, 10.0 * tol, Provenance::Derived, cite),
    ];
    let report = json!({
        "omega": num(model.omega),
        "lambda1": num(model.lambda1),
        "lambda2": num(model.lambda2),
        "mode_grid1": grid_json(model.mode_grid1),
        "mode_grid2": grid_json(model.mode_grid2),
        "window1": floats(&[model.iso_window1.0, model.iso_window1.1]),
        "window2": floats(&[model.iso_window2.0, model.iso_window2.1]),
        "residuals": {
            "f1": num(modes.residual1),
            "f2": num(modes.residual2),
            "f_hat1": num(iso.residual1),
            "f_hat2": num(iso.residual2),
        },
        "v_plus_error": floats(&[iso.v_plus_error1, iso.v_plus_error2]),
    });
    sink.finish("taub.json", report, &checks, g.json)
}

/// Expression text with `#` comments and line breaks removed.
fn expression_text(raw: &str) -> String {
    raw.lines().map(|l| l.split('#').next().unwrap_or("")).collect::<Vec<_>>().join(" ")
}

fn grassmann(g: &GlobalArgs, path: &Path, h: &str, direction: DirectionArg) -> CliResult<bool> {
    let tol = g.tol(1e-6)?;
    let raw = std::fs::read_to_string(path).map_err(susyqm::Error::from)?;
    let text = expression_text(&raw);
    let parse_err = |what: &str, e: meval::Error| CliError::Invalid(format!("{what}: {e}"));
    let s_expr: meval::Expr = text.trim().parse().map_err(|e| parse_err("superpotential", e))?;
    let s_fn = s_expr.bind2("q0", "q1").map_err(|e| parse_err("superpotential", e))?;
    let h_expr: meval::Expr = h.parse().map_err(|e| parse_err("h", e))?;
    let h_fn = h_expr.bind("t").map_err(|e| parse_err("h", e))?;

    let grid1 = g.grid(Grid1D::new(-3.0, 3.0, 121)?)?;
    let grid = Grid2D::new(grid1, grid1);
    let s = Field2D::from_fn(grid, s_fn)?;
    let params = SupermultipletParams {
        direction: match direction {
            DirectionArg::Plus => NullDirection::Plus,
            DirectionArg::Minus => NullDirection::Minus,
        },
        ..Default::default()
    };
    let st = solve_supermultiplet(&s, h_fn, params)?;
    let rho = probability_density(&st)?;
    let mut sink = Sink::new(&g.out)?;
    sink.field("density.csv", &rho.full)?;
    sink.field("density_bounded.csv", &rho.bounded)?;
    let mut checks: Vec<Check> = st
        .residuals
        .named()
        .iter()
        .map(|(name, r)| Check::below(*name, 0, format!("{name} constraint residual"), *r, tol, Provenance::Derived, "component equations of Q+/- Psi = 0"))
        .collect();
    checks.push(Check::holds("density.nonnegative", 0, "|Psi|^2 >= 0", rho.full.min() >= 0.0, Provenance::Derived, "sum of squares"));
    let residuals: serde_json::Map<String, Value> =
        st.residuals.named().iter().map(|(k, v)| (k.to_string(), num(*v))).collect();
    let report = json!({
        "superpotential": text.trim(),
        "h": h,
        "direction": match direction { DirectionArg::Plus => "plus", DirectionArg::Minus => "minus" },
        "grid": grid_json(grid1),
        "residuals": residuals,
        "density_max": num(rho.full.max_abs()),
        "bounded_density_max": num(rho.bounded.max_abs()),
    });
    sink.finish("grassmann.json", report, &checks, g.json)
}

fn verify(g: &GlobalArgs) -> CliResult<bool> {
    let cfg = VerifyConfig { grid: g.grid(Grid1D::default_box())? };
    let rep = run_verification(&cfg);
    let sink = Sink::new(&g.out)?;
    let mut report = rep.to_json();
    let by = rep.by_criterion();
    report["criteria"] = Value::Array(
        CRITERIA
            .iter()
            .map(|&(k, title)| {
                let pass = by.iter().find(|(c, _)| *c == k).map(|(_, p)| *p).unwrap_or(false);
                json!({ "criterion": k, "title": title, "pass": pass })
            })
            .collect(),
    );
    report["grid"] = grid_json(cfg.grid);
    if !g.json {
        for &(k, title) in CRITERIA {
            let pass = by.iter().find(|(c, _)| *c == k).map(|(_, p)| *p).unwrap_or(false);
            println!("{} criterion {k:>2}: {title}", if pass { "PASS" } else { "FAIL" });
        }
    }
    let ok = sink.finish("verify.json", report, &rep.checks, g.json)?;
    Ok(ok && rep.overall())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_are_stripped() {
        assert_eq!(expression_text("q0 + q1 # plane\n# nothing\n").trim(), "q0 + q1");
    }

    #[test]
    fn numbers_are_floats() {
        let e: meval::Expr = "1/2 + q0^2".parse().unwrap();
        let f = e.bind2("q0", "q1").unwrap();
        assert_eq!(f(2.0, 0.0), 4.5);
    }
}
