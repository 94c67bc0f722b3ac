use std::f64::consts::PI;

use gravbec::mean_field::{
    compare_tfg, ground_state, ground_state_from, hartree_potential, total_energy, Initialization, RadialGrid,
    RadialState, SolverOptions, Units,
};
use gravbec::variational::{solve_lambda, Confinement};
use gravbec::{Error, MeanFieldCouplings};

fn trapped(gs: f64, gu: f64) -> MeanFieldCouplings {
    MeanFieldCouplings::new(gs, gu, true)
}

#[test]
fn oscillator_ground_state() {
    let opts = SolverOptions {
        r_max: Some(12.0),
        ..Default::default()
    };
    let g = ground_state(&trapped(0.0, 0.0), &opts).unwrap();
    assert!((g.energy.total() - 1.5).abs() < 1e-6);
    assert!(g.virial < 1e-6);
    assert!((g.state.mean_square_radius() - 1.5).abs() < 1e-6);
    assert!((g.energy.release_energy(1e3) - 750.0).abs() < 1e-3);
}

#[test]
fn energy_descends_and_norm_is_kept() {
    let opts = SolverOptions {
        init: Initialization::Gaussian(0.4),
        atom_number: 250.0,
        ..Default::default()
    };
    let g = ground_state(&trapped(20.0, 8.0), &opts).unwrap();
    assert!(g.energy_history.windows(2).all(|w| w[1] <= w[0] + 1e-12 * w[0].abs()));
    assert!((g.state.normalization() / 250.0 - 1.0).abs() < 1e-10);
    assert!(g.state.psi.iter().all(|p| *p >= 0.0));
    assert!(g.state.edge_ratio() < 1e-6);
    let b = g.energy;
    assert!(b.kinetic > 0.0 && b.trap >= 0.0 && b.gravity <= 0.0 && b.contact > 0.0);
    let again = total_energy(&g.state, &g.couplings).unwrap();
    assert!((again.total() - b.total()).abs() < 1e-12);
}

#[test]
fn solver_beats_gaussian_ansatz() {
    for (gs, gu) in [(0.0, 0.0), (5.0, 0.0), (0.0, 5.0), (30.0, 30.0), (200.0, 3.0)] {
        let c = trapped(gs, gu);
        let pair = c.dimensionless();
        let var = solve_lambda(pair.u_tilde, pair.s_tilde, Confinement::Trapped).unwrap();
        let g = ground_state(&c, &SolverOptions::default()).unwrap();
        let e_var = var.energy_per_particle.unwrap();
        assert!(g.energy.total() <= e_var + 1e-9, "{gs},{gu}: {} > {e_var}", g.energy.total());
    }
}

#[test]
fn energy_falls_with_gravity() {
    let energies: Vec<f64> = [0.0, 5.0, 10.0]
        .iter()
        .map(|&gu| ground_state(&trapped(10.0, gu), &SolverOptions::default()).unwrap().energy.total())
        .collect();
    assert!(energies.windows(2).all(|w| w[1] < w[0]), "{energies:?}");
}

#[test]
fn grid_refinement_is_converged() {
    for c in [trapped(50.0, 10.0), MeanFieldCouplings::new(0.0, 1.0, false)] {
        let coarse = ground_state(&c, &SolverOptions::default()).unwrap();
        let fine_grid = coarse.state.grid.refined();
        // Nearest-sample prolongation of the converged profile.
        let psi = fine_grid
            .radii()
            .iter()
            .map(|r| coarse.state.psi[((r / coarse.state.grid.spacing()) as usize).clamp(1, 4096) - 1])
            .collect();
        let initial = RadialState::normalized(fine_grid, psi, 1.0, coarse.state.units).unwrap();
        let fine = ground_state_from(&coarse.couplings, initial, &SolverOptions::default()).unwrap();
        let shift = (fine.energy.total() / coarse.energy.total() - 1.0).abs();
        assert!(shift < 1e-3, "{shift}");
    }
}

#[test]
fn boson_star_below_gaussian_bound() {
    let g = ground_state(&MeanFieldCouplings::new(0.0, 7.0, false), &SolverOptions::default()).unwrap();
    assert!(matches!(
        g.state.units,
        Units::Gravitational { length_scale, .. } if (length_scale - 1.0 / 7.0).abs() < 1e-15
    ));
    let bound = -1.0 / (6.0 * PI);
    let e = g.energy.total();
    let margin = (bound - e) / bound.abs();
    assert!(margin > 0.0 && margin < 0.15, "{margin}");
    assert!(((2.0 * g.energy.kinetic + g.energy.gravity) / g.energy.kinetic).abs() < 1e-4);
    // Known Schrödinger-Newton ground state energy.
    assert!((e + 0.05426).abs() < 1e-4);
}

#[test]
fn gravity_region_release_energy() {
    // ũ = 100 with negligible contact: the trap hardly matters and E_rel ≈ ¾ũ² per atom.
    let u_tilde: f64 = 100.0;
    let c = trapped(1e-8, 3.0 * (PI / 2.0).sqrt() * u_tilde);
    let g = ground_state(&c, &SolverOptions::default()).unwrap();
    let ratio = g.energy.release_energy(1.0) / (0.75 * u_tilde * u_tilde);
    assert!((ratio - 1.0).abs() < 0.2, "{ratio}");
}

#[test]
fn deep_tfg_profile() {
    let opts = SolverOptions {
        grid_points: 8191,
        radius_factor: 4.0,
        ..Default::default()
    };
    let mut radii = Vec::new();
    for g in [2000.0, 4000.0] {
        let gs = ground_state(&MeanFieldCouplings::new(g, g, false), &opts).unwrap();
        let cmp = compare_tfg(&gs).unwrap();
        assert!(cmp.l2_error < 0.05, "{cmp:?}");
        assert!((cmp.rms_ratio - 1.0).abs() < 0.02, "{cmp:?}");
        assert!((cmp.central_density_ratio - 1.0).abs() < 0.05, "{cmp:?}");
        assert!(gs.virial < 1e-4);
        radii.push(cmp.fitted_radius / g);
    }
    assert!((radii[1] / radii[0] - 1.0).abs() < 0.01, "{radii:?}");
    assert!((radii[1] / (PI.sqrt() / 2.0) - 1.0).abs() < 0.01);
}

#[test]
fn trapless_without_gravity_is_rejected() {
    let c = MeanFieldCouplings::new(1.0, 0.0, false);
    assert_eq!(ground_state(&c, &SolverOptions::default()).unwrap_err(), Error::NoCoupling);
}

#[test]
fn attractive_contact_collapses() {
    let err = ground_state(&trapped(-40.0, 0.0), &SolverOptions::default()).unwrap_err();
    assert!(matches!(err, Error::Collapse { .. }), "{err}");
}

#[test]
fn weak_attraction_is_metastable() {
    // s̃ = -0.3 sits inside the Gaussian metastable window.
    let gs = -4.0 * PI * (PI / 2.0).sqrt() * 0.3;
    let g = ground_state(&trapped(gs, 0.0), &SolverOptions::default()).unwrap();
    assert!(g.energy.contact < 0.0);
    assert!(g.energy.total() < 1.5);
}

#[test]
fn iteration_budget_is_reported() {
    let opts = SolverOptions {
        max_iterations: 2,
        ..Default::default()
    };
    let err = ground_state(&trapped(10.0, 10.0), &opts).unwrap_err();
    assert!(matches!(err, Error::NoConvergence { iterations: 2, .. }));
}

#[test]
fn hartree_far_field_is_monopole() {
    let grid = RadialGrid::new(20.0, 2048).unwrap();
    let s = RadialState::gaussian(grid, 1.0, 3.0, Units::Trap).unwrap();
    let phi = hartree_potential(&s, 0.7);
    for (i, r) in grid.radii().iter().enumerate().filter(|(_, r)| **r > 10.0) {
        assert!((phi[i] / (-0.7 * 3.0 / r) - 1.0).abs() < 1e-8);
    }
}
