use std::f64::consts::PI;

use gravbec::laser::{
    anisotropy_metric, angular_map, build_single_triad, build_six_triad, isotropic_coupling_u,
    near_zone_coefficients, polarizability_from_volume, triad_bracket, triad_bracket_direction,
};
use gravbec::losses::{
    analytic_interference_constant, condensate_depletion, ft_interference_oracle, DepletionMode, FourierScheme,
    LossInputs, QUOTED_INTERFERENCE_CONSTANT,
};
use gravbec::mean_field::{
    compare_tfg, ground_state, hartree_potential, tfg_central_density, tfg_profile, tfg_radius, Initialization,
    SolverOptions, Units,
};
use gravbec::physical::{validate_regime, Check, GRAVITY_FACTOR, SCATTERING_FACTOR};
use gravbec::quadrature::sphere_directions;
use gravbec::variational::{
    asymptotics, classify_region, energy_curves, locate_trapless_collapse, phase_diagram, radius_residual,
    solve_lambda, Confinement, PhaseDiagramSpec, Region, Scales,
};
use gravbec::{Error, MeanFieldCouplings, PhysicalParams};

use crate::config::{Command, RunConfig};
use crate::error::{CliError, ConfigError};
use crate::output::{Artifacts, Cell, Report, Table};

/// Trapless energy curves drawn by `phase-diagram`, as values of `s̃ũ`.
pub const CURVE_PRODUCTS: [f64; 6] = [-0.5, -0.25, -0.1, 0.0, 0.5, 1.0];

pub fn run(cfg: &RunConfig) -> Result<Artifacts, CliError> {
    match cfg.command {
        Command::LaserCheck => laser_check(cfg),
        Command::Variational => variational(cfg),
        Command::PhaseDiagram => phase(cfg),
        Command::GroundState => ground(cfg),
        Command::TfgCompare => tfg(cfg),
        Command::LossRate => loss(cfg),
        Command::RegimeCheck => regime(cfg),
    }
}

fn confinement(cfg: &RunConfig) -> Confinement {
    match cfg.word("confinement") {
        "trapless" => Confinement::Trapless,
        _ => Confinement::Trapped,
    }
}

fn laser_check(cfg: &RunConfig) -> Result<Artifacts, CliError> {
    let intensity = cfg.number("intensity");
    let q = cfg.number("wavenumber");
    let alpha = polarizability_from_volume(cfg.number("polarizability_volume"));
    let set = match cfg.count("triads") {
        1 => build_single_triad(intensity, q, alpha)?,
        6 => build_six_triad(intensity, q, alpha)?,
        n => {
            return Err(ConfigError::Invalid {
                key: "triads",
                reason: format!("must be 1 or 6, got {n}"),
            }
            .into())
        }
    };
    let samples = cfg.count("samples");
    let u = isotropic_coupling_u(intensity, q, alpha);
    let anisotropy = anisotropy_metric(&set, samples, cfg.seed)?;
    let dirs = sphere_directions(samples, cfg.seed);
    let mut coefficient = 0.0;
    for n in &dirs {
        coefficient -= near_zone_coefficients(&set, n)?.gravity_term;
    }
    coefficient /= dirs.len().max(1) as f64;

    let mc = cfg.count("mc_samples").max(1);
    let average = sphere_directions(mc, cfg.seed.wrapping_add(1))
        .iter()
        .map(triad_bracket_direction)
        .sum::<f64>()
        / mc as f64;

    let mut report = Report::default();
    report
        .text("triads", cfg.count("triads"))
        .text("beams", set.beams().len())
        .num("isotropic_coupling_u", u)
        .num("mean_inverse_r_coefficient", coefficient)
        .num("coefficient_over_u", coefficient / u)
        .num("anisotropy", anisotropy)
        .text("anisotropy_samples", samples)
        .num("bracket_pole", triad_bracket(0.0, 0.0))
        .num("bracket_diagonal", triad_bracket((1.0 / 3f64.sqrt()).acos(), PI / 4.0))
        .num("bracket_average", average)
        .num("bracket_average_exact", 44.0 / 15.0)
        .text("bracket_average_samples", mc);

    let mut map = Table::new("angular_map.csv", &["theta", "phi", "bracket_value"]);
    for (t, p, b) in angular_map(cfg.count("map_theta"), cfg.count("map_phi")) {
        map.push(vec![t.into(), p.into(), b.into()]);
    }
    Ok(Artifacts {
        report,
        tables: vec![map],
    })
}

fn variational(cfg: &RunConfig) -> Result<Artifacts, CliError> {
    let (u, s) = (cfg.number("u_tilde"), cfg.number("s_tilde"));
    let conf = confinement(cfg);
    let sol = solve_lambda(u, s, conf)?;
    let mut report = Report::default();
    report
        .text("confinement", cfg.word("confinement"))
        .num("u_tilde", u)
        .num("s_tilde", s)
        .num("product", u * s)
        .text("kind", sol.kind);
    match (sol.lambda, sol.energy_per_particle, sol.breakdown) {
        (Some(lambda), Some(e), Some(b)) => {
            report
                .num("lambda", lambda)
                .num("energy_per_particle", e)
                .num("kinetic", b.kinetic)
                .num("trap", b.trap)
                .num("gravity", b.gravity)
                .num("contact", b.contact)
                .num("release_energy_per_particle", b.release_energy(1.0))
                .num("virial_residual", b.virial_residual()?)
                .num("radius_residual", radius_residual(lambda, u, s, conf));
        }
        _ => {
            report.text("lambda", "none").text("note", "no finite-radius minimum");
        }
    }
    report.text("stationary_points", sol.stationary_points.len());
    if conf == Confinement::Trapped && s >= 0.0 {
        let region = classify_region(u, s)?;
        report.text("region", region);
        if region != Region::Crossover {
            // N = l₀ = 1, so a and a* follow from the dimensionless pair.
            let scales = Scales {
                atom_number: 1.0,
                oscillator_length: 1.0,
                scattering_length: s / SCATTERING_FACTOR,
                bohr_radius: if u > 0.0 { GRAVITY_FACTOR / u } else { f64::INFINITY },
            };
            let asym = asymptotics(region, u, s, &scales)?;
            report
                .num("asymptotic_lambda", asym.lambda)
                .num("asymptotic_release_energy", asym.release_energy)
                .num("asymptotic_peak_density", asym.peak_density);
        }
    }
    let mut table = Table::new("stationary_points.csv", &["lambda", "kind", "energy"]);
    for p in &sol.stationary_points {
        table.push(vec![p.lambda.into(), p.kind.to_string().into(), p.energy.into()]);
    }
    Ok(Artifacts {
        report,
        tables: vec![table],
    })
}

fn phase(cfg: &RunConfig) -> Result<Artifacts, CliError> {
    let spec = PhaseDiagramSpec {
        log_u: (cfg.number("log_u_min"), cfg.number("log_u_max")),
        log_s: (cfg.number("log_s_min"), cfg.number("log_s_max")),
        n_u: cfg.count("n_u"),
        n_s: cfg.count("n_s"),
    };
    let nodes = phase_diagram(&spec)?;
    let mut table = Table::new("phase_diagram.csv", &["u_tilde", "s_tilde", "lambda", "region"]);
    let mut counts = [0usize; 5];
    let regions = [
        Region::Ideal,
        Region::Gravity,
        Region::ThomasFermiOrdinary,
        Region::ThomasFermiGravity,
        Region::Crossover,
    ];
    for n in &nodes {
        let lambda = n.lambda.map_or(Cell::Text("none".into()), Cell::Num);
        table.push(vec![n.u_tilde.into(), n.s_tilde.into(), lambda, n.region.to_string().into()]);
        counts[regions.iter().position(|r| *r == n.region).unwrap_or(4)] += 1;
    }

    let points = cfg.count("curve_points");
    if points < 2 {
        return Err(ConfigError::Invalid {
            key: "curve_points",
            reason: format!("needs at least 2, got {points}"),
        }
        .into());
    }
    let (x0, x1) = (cfg.number("curve_x_min"), cfg.number("curve_x_max"));
    let xs: Vec<f64> = (0..points).map(|i| x0 + (x1 - x0) * i as f64 / (points - 1) as f64).collect();
    let u = cfg.number("curve_u_tilde");
    let mut tables = vec![table];
    for curve in energy_curves(u, &CURVE_PRODUCTS, &xs)? {
        let mut t = Table::new(format!("energy_curve_c{:+.3}.csv", curve.product), &["x", "f"])
            .note(format!("c = s_tilde*u_tilde = {:+.3}, u_tilde = {}", curve.product, u))
            .note("x = lambda*u_tilde, f = H/(N hbar omega0 u_tilde^2) without trap");
        for (x, f) in curve.points {
            t.push(vec![x.into(), f.into()]);
        }
        tables.push(t);
    }

    let mut report = Report::default();
    report.text("nodes", nodes.len());
    for (r, c) in regions.iter().zip(counts) {
        report.text(format!("region_{r}"), c);
    }
    report
        .num("trapless_collapse_product", locate_trapless_collapse(1e-10)?)
        .text("energy_curves", CURVE_PRODUCTS.len());
    Ok(Artifacts { report, tables })
}

fn ground(cfg: &RunConfig) -> Result<Artifacts, CliError> {
    let trapped = confinement(cfg) == Confinement::Trapped;
    let couplings = MeanFieldCouplings::new(cfg.number("g_s"), cfg.number("g_u"), trapped);
    let init = match (cfg.word("init"), cfg.maybe_number("init_width")) {
        ("gaussian", Some(w)) => Initialization::Gaussian(w),
        ("gaussian", None) => {
            return Err(ConfigError::Invalid {
                key: "init_width",
                reason: "required for init = gaussian".into(),
            }
            .into())
        }
        _ => Initialization::Variational,
    };
    let opts = SolverOptions {
        tol: cfg.number("tol"),
        virial_tol: cfg.number("virial_tol"),
        max_iterations: cfg.count("max_iterations"),
        grid_points: cfg.count("grid_points"),
        r_max: cfg.maybe_number("r_max"),
        radius_factor: cfg.number("radius_factor"),
        init,
        ..Default::default()
    };
    let g = ground_state(&couplings, &opts)?;
    let state = &g.state;
    let phi = hartree_potential(state, g.couplings.gravity);
    let mut profile = Table::new("profile.csv", &["r", "psi", "density", "hartree_potential"]);
    for (i, r) in state.grid.radii().into_iter().enumerate() {
        profile.push(vec![r.into(), state.psi[i].into(), (state.psi[i] * state.psi[i]).into(), phi[i].into()]);
    }

    let mut report = Report::default();
    match state.units {
        Units::Trap => report.text("units", "trap"),
        Units::Gravitational {
            length_scale,
            energy_scale,
        } => report
            .text("units", "gravitational")
            .num("length_scale", length_scale)
            .num("energy_scale", energy_scale),
    };
    let e = g.energy;
    report
        .num("g_s", g.couplings.contact)
        .num("g_u", g.couplings.gravity)
        .num("energy_per_particle", e.total())
        .num("kinetic", e.kinetic)
        .num("trap", e.trap)
        .num("gravity", e.gravity)
        .num("contact", e.contact)
        .num("chemical_potential", e.chemical_potential)
        .num("release_energy_per_particle", e.release_energy(1.0))
        .num("virial_residual", g.virial)
        .num("energy_change", g.energy_change)
        .text("iterations", g.iterations)
        .text("grid_points", state.grid.len())
        .num("r_max", state.grid.r_max())
        .num("rms_radius", state.mean_square_radius().sqrt())
        .num("central_density", state.central_density())
        .num("edge_ratio", state.edge_ratio());
    let pair = g.couplings.dimensionless();
    let conf = if trapped { Confinement::Trapped } else { Confinement::Trapless };
    let var = solve_lambda(pair.u_tilde, pair.s_tilde, conf)?;
    if let (Some(l), Some(ev)) = (var.lambda, var.energy_per_particle) {
        report
            .num("variational_lambda", l)
            .num("variational_energy", ev)
            .num("energy_below_variational", ev - e.total());
    }
    Ok(Artifacts {
        report,
        tables: vec![profile],
    })
}

fn tfg(cfg: &RunConfig) -> Result<Artifacts, CliError> {
    let a = cfg.number("scattering_length");
    let a_star = cfg.number("bohr_radius");
    let n1 = cfg.number("atom_number");
    let n2 = cfg.maybe_number("atom_number_alt").unwrap_or(2.0 * n1);
    let r0 = tfg_radius(a, a_star)?;
    let opts = SolverOptions {
        grid_points: cfg.count("grid_points"),
        radius_factor: cfg.number("radius_factor"),
        ..Default::default()
    };
    let mut report = Report::default();
    report.num("radius", r0).num("product_a_astar", a * a_star);
    let mut table = Table::new("tfg_profile.csv", &["run", "r", "density", "tf_density"])
        .note("SI units: r in m, densities in 1/m^3");
    let mut radii = Vec::new();
    let mut constants = Vec::new();
    for (run, n) in [(1, n1), (2, n2)] {
        // Lengths in units of a*: g_s = 4πNa/a*, g_u = 4π²N.
        let couplings = MeanFieldCouplings::new(4.0 * PI * n * a / a_star, 4.0 * PI * PI * n, false);
        let g = ground_state(
            &couplings,
            &SolverOptions {
                atom_number: n,
                ..opts
            },
        )?;
        let cmp = compare_tfg(&g)?;
        let length = match g.state.units {
            Units::Gravitational { length_scale, .. } => length_scale * a_star,
            Units::Trap => a_star,
        };
        let rho0 = g.state.central_density() / length.powi(3);
        let constant = rho0 * (a * a_star).powf(1.5) / n;
        let p = format!("run{run}_");
        report
            .num(format!("{p}atom_number"), n)
            .num(format!("{p}fitted_radius"), cmp.fitted_radius * length)
            .num(format!("{p}l2_error"), cmp.l2_error)
            .num(format!("{p}rms_ratio"), cmp.rms_ratio)
            .num(format!("{p}central_density"), rho0)
            .num(format!("{p}central_density_ratio"), rho0 / tfg_central_density(n, a, a_star)?)
            .num(format!("{p}virial_residual"), g.virial)
            .text(format!("{p}iterations"), g.iterations);
        radii.push(cmp.fitted_radius * length);
        constants.push(constant);

        let reference = tfg_profile(n, a / length, a_star / length, g.state.grid, g.state.units)?;
        let rho_ref = reference.density();
        for (i, r) in g.state.grid.radii().into_iter().enumerate() {
            let rho = g.state.psi[i] * g.state.psi[i];
            table.push(vec![
                Cell::Text(run.to_string()),
                (r * length).into(),
                (rho / length.powi(3)).into(),
                (rho_ref[i] / length.powi(3)).into(),
            ]);
        }
    }
    let constant = constants.iter().sum::<f64>() / constants.len() as f64;
    let (two_pi, two_pi2) = (2.0 * PI, 2.0 * PI * PI);
    report
        .num("radius_shift", (radii[1] / radii[0] - 1.0).abs())
        .num("central_density_constant", constant)
        .num("constant_over_2pi", constant / two_pi)
        .num("constant_over_2pi2", constant / two_pi2)
        .text(
            "supported_constant",
            if (constant / two_pi).ln().abs() < (constant / two_pi2).ln().abs() {
                "2pi"
            } else {
                "2pi^2"
            },
        );
    Ok(Artifacts {
        report,
        tables: vec![table],
    })
}

fn loss(cfg: &RunConfig) -> Result<Artifacts, CliError> {
    let region = match cfg.word("region") {
        "TF-G" => Region::ThomasFermiGravity,
        _ => Region::Gravity,
    };
    let inputs = LossInputs {
        region,
        u_tilde: cfg.number("u_tilde"),
        s_tilde: cfg.number("s_tilde"),
        omega: cfg.number("beat_frequency"),
        omega0: cfg.number("trap_frequency"),
        q_l0: cfg.number("q_l0"),
    };
    let mut report = Report::default();
    report
        .text("region", region)
        .num("u_tilde", inputs.u_tilde)
        .num("s_tilde", inputs.s_tilde)
        .num("beat_frequency", inputs.omega)
        .num("trap_frequency", inputs.omega0)
        .num("q_l0", inputs.q_l0)
        .num("interference_constant", QUOTED_INTERFERENCE_CONSTANT)
        .text("sign", "rates are magnitudes of dN0/dt in atoms per second");
    let mut table = Table::new("loss_rate.csv", &["mode", "rate", "rate_over_omega0"]);
    for mode in [DepletionMode::Formula, DepletionMode::Integrated] {
        let est = condensate_depletion(&inputs, mode)?;
        report
            .num(format!("rate_{mode}"), est.rate)
            .num(format!("rate_{mode}_over_omega0"), est.in_trap_frequency());
        table.push(vec![mode.to_string().into(), est.rate.into(), est.in_trap_frequency().into()]);
    }
    if let Some(k) = cfg.maybe_number("oracle_k") {
        report
            .text("fourier_convention", "exp(-i k.r) without 2pi factors")
            .num("oracle_k_over_q", k)
            .num("analytic_constant", analytic_interference_constant());
        for (name, scheme) in [("hankel", FourierScheme::Hankel), ("direct", FourierScheme::Direct)] {
            let r = ft_interference_oracle(1.0, 1.0, k, scheme)?;
            report
                .num(format!("oracle_{name}_constant"), r.constant)
                .num(format!("oracle_{name}_residual"), r.residual);
        }
    }
    Ok(Artifacts {
        report,
        tables: vec![table],
    })
}

fn regime(cfg: &RunConfig) -> Result<Artifacts, CliError> {
    let q = cfg.number("wavenumber");
    let alpha = polarizability_from_volume(cfg.number("polarizability_volume"));
    let u = isotropic_coupling_u(cfg.number("intensity"), q, alpha);
    let params = PhysicalParams::new(
        cfg.number("mass"),
        cfg.number("scattering_length"),
        u,
        cfg.number("trap_frequency"),
        cfg.number("atom_number"),
        q,
    )?;
    let n = params.atom_number;
    let mut report = Report::default();
    report.num("coupling_u", u).num("bohr_radius", params.bohr_radius()?);
    // Length unit of the Gaussian width: l₀ with a trap, ħ²/(muN) without.
    let (length, couplings, conf) = match params.oscillator_length() {
        Some(l0) => {
            report.num("oscillator_length", l0);
            (l0, params.mean_field_couplings()?, Confinement::Trapped)
        }
        None => {
            let (len, _) = params.gravitational_units()?;
            report.num("gravitational_length", len);
            let c = MeanFieldCouplings::new(4.0 * PI * n * params.scattering_length / len, 1.0, false);
            (len, c, Confinement::Trapless)
        }
    };
    let pair = couplings.dimensionless();
    let sol = solve_lambda(pair.u_tilde, pair.s_tilde, conf)?;
    let lambda = sol.lambda.ok_or_else(|| {
        Error::Domain(format!(
            "no finite-radius Gaussian minimum at u_tilde = {}, s_tilde = {}",
            pair.u_tilde, pair.s_tilde
        ))
    })?;
    let width = lambda * length;
    let rho_max = n / (PI.powf(1.5) * width.powi(3));
    let rms = (1.5f64).sqrt() * width;
    let rep = validate_regime(&params, rho_max, rms, cfg.number("de_broglie_wavelength"))?;
    report
        .num("u_tilde", pair.u_tilde)
        .num("s_tilde", pair.s_tilde)
        .num("lambda", lambda)
        .num("width", width)
        .num("rho_max", rho_max)
        .num("rms_radius", rms);
    let checks: [(&str, Check); 5] = [
        ("diluteness", rep.diluteness),
        ("mfa_gravity", rep.mfa_gravity),
        ("near_zone", rep.near_zone),
        ("bohr_over_de_broglie", rep.bohr_over_de_broglie),
        ("de_broglie_over_scattering", rep.de_broglie_over_scattering),
    ];
    let mut table = Table::new("regime.csv", &["check", "ratio", "threshold", "passed"]);
    for (name, c) in checks {
        report.num(format!("{name}_ratio"), c.ratio).text(format!("{name}_passed"), c.passed);
        table.push(vec![name.into(), c.ratio.into(), c.threshold.into(), c.passed.to_string().into()]);
    }
    report
        .text("hierarchy_ok", rep.hierarchy_ok)
        .num("max_misalignment", rep.alignment_budget.max_misalignment)
        .num("max_intensity_noise", rep.alignment_budget.max_intensity_noise)
        .text("all_passed", rep.all_passed());
    Ok(Artifacts {
        report,
        tables: vec![table],
    })
}
