use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn configs_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn run(args: &[&str], config: Option<&str>, tmp: &TempDir) -> (Output, PathBuf) {
    let out = tmp.path().join(format!("out-{}", args.join("-").replace('/', "_")));
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gravbec"));
    cmd.args(args).arg("--out").arg(&out);
    if let Some(text) = config {
        let path = tmp.path().join(format!("{}.conf", args[0]));
        fs::write(&path, text).unwrap();
        cmd.arg("--config").arg(path);
    }
    (cmd.output().unwrap(), out)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn value<'a>(report: &'a str, key: &str) -> &'a str {
    report
        .lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
        .unwrap_or_else(|| panic!("{key} missing from\n{report}"))
}

fn data_rows(csv: &str) -> Vec<&str> {
    csv.lines().filter(|l| !l.starts_with('#')).skip(1).collect()
}

#[test]
fn phase_diagram_on_3x3_grid_has_nine_rows() {
    let tmp = TempDir::new().unwrap();
    let (o, out) = run(&["phase-diagram"], Some("n_u = 3\nn_s = 3\n"), &tmp);
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = fs::read_to_string(out.join("phase_diagram.csv")).unwrap();
    assert_eq!(csv.lines().find(|l| !l.starts_with('#')), Some("u_tilde,s_tilde,lambda,region"));
    assert_eq!(data_rows(&csv).len(), 9);
    let curves: Vec<_> = fs::read_dir(&out)
        .unwrap()
        .filter_map(|e| e.ok())
        .filter(|e| e.file_name().to_string_lossy().starts_with("energy_curve_c"))
        .collect();
    assert_eq!(curves.len(), 6);
    let zero = fs::read_to_string(out.join("energy_curve_c+0.000.csv")).unwrap();
    assert!(zero.lines().any(|l| l == "x,f"));
}

#[test]
fn variational_unit_point() {
    let tmp = TempDir::new().unwrap();
    let (o, out) = run(&["variational", "--config"], None, &tmp);
    assert!(!o.status.success());
    let (o, _) = run(&["variational"], Some("u_tilde = 1\ns_tilde = 1\n"), &tmp);
    assert!(o.status.success(), "{}", stderr(&o));
    let r = stdout(&o);
    assert_eq!(value(&r, "lambda"), "1.000000000000e0");
    assert_eq!(value(&r, "kind"), "global-min");
    assert!(!out.exists());
}

#[test]
fn variational_collapse_is_reported_not_fatal() {
    let tmp = TempDir::new().unwrap();
    let (o, out) = run(&["variational"], Some("u_tilde = 1\ns_tilde = -1\nconfinement = trapless\n"), &tmp);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(value(&stdout(&o), "lambda"), "none");
    assert_eq!(data_rows(&fs::read_to_string(out.join("stationary_points.csv")).unwrap()).len(), 0);
}

#[test]
fn laser_check_six_triads_is_isotropic() {
    let tmp = TempDir::new().unwrap();
    let (o, out) = run(&["laser-check"], Some("intensity = 1e4\nwavenumber = 6.283185307e6\n"), &tmp);
    assert!(o.status.success(), "{}", stderr(&o));
    let r = stdout(&o);
    assert!(value(&r, "anisotropy").parse::<f64>().unwrap() < 1e-12);
    assert_eq!(value(&r, "beams"), "18");
    let map = fs::read_to_string(out.join("angular_map.csv")).unwrap();
    assert_eq!(data_rows(&map).len(), 91 * 180);
    assert_eq!(fs::read_to_string(out.join("report.txt")).unwrap(), r);

    let (o, _) = run(&["laser-check"], Some("intensity = 1e4\nwavenumber = 6.283185307e6\ntriads = 1\n"), &tmp);
    assert!(value(&stdout(&o), "anisotropy").parse::<f64>().unwrap() > 0.05);
}

#[test]
fn csv_header_and_precision() {
    let tmp = TempDir::new().unwrap();
    let (o, out) = run(&["ground-state", "--seed", "5"], Some("g_s = 10\ng_u = 2\ngrid_points = 512\n"), &tmp);
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = fs::read_to_string(out.join("profile.csv")).unwrap();
    let mut lines = csv.lines();
    let head = lines.next().unwrap();
    assert!(head.starts_with(&format!("# gravbec {} command=ground-state seed=5 config-sha256=", env!("CARGO_PKG_VERSION"))));
    let hash = head.rsplit('=').next().unwrap();
    assert_eq!(hash.len(), 64);
    assert!(value(&stdout(&o), "# gravbec 0.1.0 config-sha256").contains(hash));
    assert_eq!(lines.next(), Some("r,psi,density,hartree_potential"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 512);
    for cell in rows[0].split(',') {
        let mantissa = cell.trim_start_matches('-').split('e').next().unwrap();
        assert_eq!(mantissa.replace('.', "").len(), 13, "{cell}");
    }
}

#[test]
fn config_errors_exit_nonzero() {
    let tmp = TempDir::new().unwrap();
    let (o, _) = run(&["regime-check"], Some(""), &tmp);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    for key in ["scattering_length", "intensity", "wavenumber", "trap_frequency", "atom_number", "de_broglie_wavelength"] {
        assert!(err.contains(key), "{err}");
    }

    let (o, _) = run(&["loss-rate"], Some("u_tilde = 5\nu_tilde = 6\n"), &tmp);
    assert!(stderr(&o).contains("duplicate key `u_tilde`"), "{}", stderr(&o));
    let (o, _) = run(&["variational"], Some("u_tilde = 1\ns_tilde 1\n"), &tmp);
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
    let (o, _) = run(&["loss-rate"], Some("region = G\nu_tilde = 5\nbeat_frequency = 1 Hz\ntrap_frequency = 1\n"), &tmp);
    assert!(stderr(&o).contains("rad/s"), "{}", stderr(&o));
    let (o, _) = run(&["ground-state"], Some("g_s = 1\ng_u = 1\ninit = gaussian\n"), &tmp);
    assert!(stderr(&o).contains("init_width"), "{}", stderr(&o));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn model_errors_exit_nonzero() {
    let tmp = TempDir::new().unwrap();
    let (o, out) = run(&["ground-state"], Some("g_s = -40\ng_u = 0\n"), &tmp);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("collapse"), "{}", stderr(&o));
    assert!(!out.join("profile.csv").exists());

    let (o, _) = run(&["ground-state"], Some("g_s = 1\ng_u = 1\nmax_iterations = 3\n"), &tmp);
    assert_eq!(o.status.code(), Some(1));
    let (o, _) = run(&["tfg-compare"], Some("scattering_length = -1e-9\nbohr_radius = 1\natom_number = 10\n"), &tmp);
    assert_eq!(o.status.code(), Some(1));
    let (o, _) = run(&["loss-rate"], Some("region = TF-G\nu_tilde = 5\nbeat_frequency = 1\ntrap_frequency = 1\n"), &tmp);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
}

#[test]
fn shipped_configs_run() {
    let tmp = TempDir::new().unwrap();
    for entry in fs::read_dir(configs_dir()).unwrap() {
        let path = entry.unwrap().path();
        let command = path.file_stem().unwrap().to_string_lossy().into_owned();
        let text = fs::read_to_string(&path).unwrap();
        let (o, out) = run(&[&command], Some(&text), &tmp);
        assert!(o.status.success(), "{command}: {}", stderr(&o));
        assert!(out.join("report.txt").exists());
    }
}

#[test]
fn explain_echoes_units() {
    let tmp = TempDir::new().unwrap();
    let (o, _) = run(
        &["loss-rate", "--explain"],
        Some("u_tilde = 5\nbeat_frequency = 6.28e4 rad/s\ntrap_frequency = 628\n"),
        &tmp,
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let s = stdout(&o);
    assert!(s.contains("beat_frequency=6.28e4 # rad/s;"), "{s}");
    assert!(s.contains("region=G # word;"), "{s}");
}

#[test]
fn help_documents_keys() {
    let o = Command::new(env!("CARGO_BIN_EXE_gravbec")).args(["tfg-compare", "--help"]).output().unwrap();
    let s = stdout(&o);
    assert!(s.contains("scattering_length") && s.contains("atom_number_alt") && s.contains("--explain"), "{s}");
}

#[test]
fn seed_changes_directions_and_hash() {
    let tmp = TempDir::new().unwrap();
    let text = "intensity = 1e4\nwavenumber = 1e7\ntriads = 1\nsamples = 500\nmap_theta = 3\nmap_phi = 4\n";
    let (a, _) = run(&["laser-check", "--seed", "1"], Some(text), &tmp);
    let (b, _) = run(&["laser-check", "--seed", "2"], Some(text), &tmp);
    let (ra, rb) = (stdout(&a), stdout(&b));
    assert_ne!(value(&ra, "anisotropy"), value(&rb, "anisotropy"));
    assert_ne!(ra.lines().next(), rb.lines().next());
    assert_eq!(value(&ra, "bracket_pole"), value(&rb, "bracket_pole"));
}
