//! Flat `key = value [unit]` run configuration.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use gravbec::physical::{SODIUM_MASS, SODIUM_POLARIZABILITY_VOLUME};
use sha2::{Digest, Sha256};

use crate::ConfigError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Command {
    LaserCheck,
    Variational,
    PhaseDiagram,
    GroundState,
    TfgCompare,
    LossRate,
    RegimeCheck,
}

impl Command {
    pub const ALL: [Command; 7] = [
        Command::LaserCheck,
        Command::Variational,
        Command::PhaseDiagram,
        Command::GroundState,
        Command::TfgCompare,
        Command::LossRate,
        Command::RegimeCheck,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::LaserCheck => "laser-check",
            Command::Variational => "variational",
            Command::PhaseDiagram => "phase-diagram",
            Command::GroundState => "ground-state",
            Command::TfgCompare => "tfg-compare",
            Command::LossRate => "loss-rate",
            Command::RegimeCheck => "regime-check",
        }
    }

    pub fn keys(self) -> &'static [KeySpec] {
        match self {
            Command::LaserCheck => LASER_KEYS,
            Command::Variational => VARIATIONAL_KEYS,
            Command::PhaseDiagram => PHASE_KEYS,
            Command::GroundState => GROUND_KEYS,
            Command::TfgCompare => TFG_KEYS,
            Command::LossRate => LOSS_KEYS,
            Command::RegimeCheck => REGIME_KEYS,
        }
    }

    /// Key table rendered for `--help`.
    pub fn key_help(self) -> String {
        let mut out = String::from("Config keys:\n");
        for k in self.keys() {
            let default = match k.default {
                Some(Default::Number(v)) => format!(" [default: {}]", short(v)),
                Some(Default::Word(w)) => format!(" [default: {w}]"),
                None if k.required => " [required]".to_string(),
                None => String::new(),
            };
            out.push_str(&format!("  {:<22} {:<8} {}{}\n", k.name, k.unit_label(), k.doc, default));
        }
        out
    }
}

fn short(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e7 {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Kind {
    Number,
    /// Non-negative integer.
    Count,
    Word(&'static [&'static str]),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Default {
    Number(f64),
    Word(&'static str),
}

/// One documented configuration key.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KeySpec {
    pub name: &'static str,
    /// SI unit accepted as a suffix; `"1"` for dimensionless numbers.
    pub unit: &'static str,
    pub kind: Kind,
    pub required: bool,
    pub default: Option<Default>,
    pub doc: &'static str,
}

impl KeySpec {
    fn unit_label(&self) -> &'static str {
        match self.kind {
            Kind::Word(_) => "word",
            _ => self.unit,
        }
    }
}

const fn req(name: &'static str, unit: &'static str, doc: &'static str) -> KeySpec {
    KeySpec {
        name,
        unit,
        kind: Kind::Number,
        required: true,
        default: None,
        doc,
    }
}

const fn num(name: &'static str, unit: &'static str, value: f64, doc: &'static str) -> KeySpec {
    KeySpec {
        name,
        unit,
        kind: Kind::Number,
        required: false,
        default: Some(Default::Number(value)),
        doc,
    }
}

const fn count(name: &'static str, value: f64, doc: &'static str) -> KeySpec {
    KeySpec {
        name,
        unit: "1",
        kind: Kind::Count,
        required: false,
        default: Some(Default::Number(value)),
        doc,
    }
}

const fn req_count(name: &'static str, doc: &'static str) -> KeySpec {
    KeySpec {
        name,
        unit: "1",
        kind: Kind::Count,
        required: true,
        default: None,
        doc,
    }
}

const fn word(name: &'static str, choices: &'static [&'static str], value: &'static str, doc: &'static str) -> KeySpec {
    KeySpec {
        name,
        unit: "",
        kind: Kind::Word(choices),
        required: false,
        default: Some(Default::Word(value)),
        doc,
    }
}

const fn optional(name: &'static str, unit: &'static str, doc: &'static str) -> KeySpec {
    KeySpec {
        name,
        unit,
        kind: Kind::Number,
        required: false,
        default: None,
        doc,
    }
}

const CONFINEMENT: &[&str] = &["trapped", "trapless"];

static LASER_KEYS: &[KeySpec] = &[
    req("intensity", "W/m^2", "intensity per beam of a full-weight triad"),
    req("wavenumber", "1/m", "laser wavenumber q"),
    num("polarizability_volume", "m^3", SODIUM_POLARIZABILITY_VOLUME, "polarizability volume α/(4πε₀)"),
    count("triads", 6.0, "1 for a single triad, 6 for the isotropic arrangement"),
    count("samples", 10_000.0, "seeded directions for the anisotropy metric"),
    count("mc_samples", 100_000.0, "seeded directions for the bracket average"),
    count("map_theta", 91.0, "polar nodes of the angular map"),
    count("map_phi", 180.0, "azimuthal nodes of the angular map"),
];

static VARIATIONAL_KEYS: &[KeySpec] = &[
    req("u_tilde", "1", "gravity parameter ũ"),
    req("s_tilde", "1", "scattering parameter s̃"),
    word("confinement", CONFINEMENT, "trapped", "trapped or trapless"),
];

static PHASE_KEYS: &[KeySpec] = &[
    req_count("n_u", "ũ nodes"),
    req_count("n_s", "s̃ nodes"),
    num("log_u_min", "1", -2.0, "log10 of the smallest ũ"),
    num("log_u_max", "1", 4.0, "log10 of the largest ũ"),
    num("log_s_min", "1", -2.0, "log10 of the smallest s̃"),
    num("log_s_max", "1", 4.0, "log10 of the largest s̃"),
    num("curve_u_tilde", "1", 100.0, "ũ of the trapless energy curves"),
    num("curve_x_min", "1", 0.1, "smallest λũ on the energy curves"),
    num("curve_x_max", "1", 5.0, "largest λũ on the energy curves"),
    count("curve_points", 200.0, "points per energy curve"),
];

static GROUND_KEYS: &[KeySpec] = &[
    req("g_s", "1", "contact coupling 4πNa/l₀"),
    req("g_u", "1", "gravity coupling Nl₀/a₀ with a₀ = ħ²/(mu)"),
    word("confinement", CONFINEMENT, "trapped", "trapped or trapless"),
    word("init", &["variational", "gaussian"], "variational", "seed of the relaxation"),
    optional("init_width", "1", "Gaussian seed width, required for init = gaussian"),
    count("grid_points", 4096.0, "interior radial nodes"),
    optional("r_max", "1", "outer radius; default radius_factor times the variational width"),
    num("radius_factor", "1", 8.0, "outer radius in variational widths"),
    num("tol", "1", 1e-10, "relative energy change at convergence"),
    num("virial_tol", "1", 1e-6, "virial residual at convergence"),
    count("max_iterations", 100_000.0, "relaxation step budget"),
];

static TFG_KEYS: &[KeySpec] = &[
    req("scattering_length", "m", "s-wave scattering length a > 0"),
    req("bohr_radius", "m", "gravitational Bohr radius a*"),
    req("atom_number", "1", "atom number of the first run"),
    optional("atom_number_alt", "1", "atom number of the second run, default twice the first"),
    count("grid_points", 8191.0, "interior radial nodes"),
    num("radius_factor", "1", 4.0, "outer radius in variational widths"),
];

static LOSS_KEYS: &[KeySpec] = &[
    word("region", &["G", "TF-G"], "G", "asymptotic region of the condensate"),
    req("u_tilde", "1", "gravity parameter ũ"),
    num("s_tilde", "1", 0.0, "scattering parameter s̃, positive in TF-G"),
    req("beat_frequency", "rad/s", "beat frequency Ω of the interference terms"),
    req("trap_frequency", "rad/s", "trap frequency ω₀"),
    num("q_l0", "1", 1.0, "laser wavenumber times oscillator length"),
    optional("oracle_k", "1", "when set, check the Fourier constant at k/q = oracle_k"),
];

static REGIME_KEYS: &[KeySpec] = &[
    num("mass", "kg", SODIUM_MASS, "atomic mass"),
    req("scattering_length", "m", "s-wave scattering length"),
    req("intensity", "W/m^2", "intensity per beam of a full-weight triad"),
    req("wavenumber", "1/m", "laser wavenumber q"),
    num("polarizability_volume", "m^3", SODIUM_POLARIZABILITY_VOLUME, "polarizability volume α/(4πε₀)"),
    req("trap_frequency", "rad/s", "trap frequency ω₀, 0 for a trapless cloud"),
    req("atom_number", "1", "atom number N"),
    req("de_broglie_wavelength", "m", "thermal de Broglie wavelength"),
];

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Number(f64),
    Word(String),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Number(v) => write!(f, "{v:e}"),
            Value::Word(w) => f.write_str(w),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    /// Every documented key, defaults filled in; absent optional keys are missing.
    pub params: BTreeMap<&'static str, Value>,
    pub output_dir: PathBuf,
    pub seed: u64,
}

impl RunConfig {
    pub fn number(&self, key: &str) -> f64 {
        match self.params.get(key) {
            Some(Value::Number(v)) => *v,
            other => panic!("key {key} is not a configured number: {other:?}"),
        }
    }

    pub fn maybe_number(&self, key: &str) -> Option<f64> {
        match self.params.get(key) {
            Some(Value::Number(v)) => Some(*v),
            _ => None,
        }
    }

    pub fn count(&self, key: &str) -> usize {
        self.number(key) as usize
    }

    pub fn word(&self, key: &str) -> &str {
        match self.params.get(key) {
            Some(Value::Word(w)) => w,
            other => panic!("key {key} is not a configured word: {other:?}"),
        }
    }

    /// SHA-256 of the command, seed and resolved parameters.
    pub fn hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(format!("command={}\nseed={}\n", self.command, self.seed));
        for (k, v) in &self.params {
            h.update(format!("{k}={v}\n"));
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Resolved keys with units and documentation.
    pub fn explain(&self) -> String {
        let mut out = format!("command={}\nseed={}\n", self.command, self.seed);
        for k in self.command.keys() {
            let value = self.params.get(k.name).map_or("(unset)".to_string(), Value::to_string);
            out.push_str(&format!("{}={} # {}; {}\n", k.name, value, k.unit_label(), k.doc));
        }
        out
    }
}

/// Parses `text` against the key table of `command`.
pub fn parse_config(text: &str, command: Command, output_dir: PathBuf, seed: u64) -> Result<RunConfig, ConfigError> {
    let specs = command.keys();
    let mut given: BTreeMap<&'static str, (Value, usize)> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let malformed = |reason: &str| ConfigError::Malformed {
            line,
            text: raw.trim().to_string(),
            reason: reason.to_string(),
        };
        let (key, rest) = content.split_once('=').ok_or_else(|| malformed("expected `key = value`"))?;
        let key = key.trim();
        if key.is_empty() || key.contains(char::is_whitespace) {
            return Err(malformed("invalid key"));
        }
        let mut tokens = rest.split_whitespace();
        let value = tokens.next().ok_or_else(|| malformed("missing value"))?;
        let unit: Vec<&str> = tokens.collect();
        let spec = specs.iter().find(|s| s.name == key).ok_or_else(|| ConfigError::Unknown {
            key: key.to_string(),
            line,
            command: command.name(),
        })?;
        if let Some((_, first)) = given.get(spec.name) {
            return Err(ConfigError::Duplicate {
                key: key.to_string(),
                line,
                first: *first,
            });
        }
        let parsed = parse_value(spec, value, &unit.join(" "), line)?;
        given.insert(spec.name, (parsed, line));
    }

    let missing: Vec<&'static str> = specs
        .iter()
        .filter(|s| s.required && !given.contains_key(s.name))
        .map(|s| s.name)
        .collect();
    if !missing.is_empty() {
        return Err(ConfigError::Missing {
            command: command.name(),
            keys: missing,
        });
    }
    let mut params = BTreeMap::new();
    for s in specs {
        let value = match (given.remove(s.name), s.default) {
            (Some((v, _)), _) => v,
            (None, Some(Default::Number(v))) => Value::Number(v),
            (None, Some(Default::Word(w))) => Value::Word(w.to_string()),
            (None, None) => continue,
        };
        params.insert(s.name, value);
    }
    Ok(RunConfig {
        command,
        params,
        output_dir,
        seed,
    })
}

fn parse_value(spec: &KeySpec, value: &str, unit: &str, line: usize) -> Result<Value, ConfigError> {
    let bad = |reason: String| ConfigError::BadValue {
        key: spec.name.to_string(),
        line,
        reason,
    };
    if let Kind::Word(choices) = spec.kind {
        if !unit.is_empty() {
            return Err(bad(format!("unexpected trailing text `{unit}`")));
        }
        return choices
            .iter()
            .find(|c| **c == value)
            .map(|c| Value::Word(c.to_string()))
            .ok_or_else(|| bad(format!("`{value}` is not one of {}", choices.join(", "))));
    }
    if !unit.is_empty() && unit != spec.unit {
        return Err(ConfigError::UnitMismatch {
            key: spec.name.to_string(),
            line,
            expected: spec.unit,
            found: unit.to_string(),
        });
    }
    let v: f64 = value.parse().map_err(|_| bad(format!("`{value}` is not a number")))?;
    if !v.is_finite() {
        return Err(bad(format!("`{value}` is not finite")));
    }
    if spec.kind == Kind::Count && (v < 0.0 || v.fract() != 0.0 || v > u32::MAX as f64) {
        return Err(bad(format!("`{value}` is not a non-negative integer")));
    }
    Ok(Value::Number(v))
}
