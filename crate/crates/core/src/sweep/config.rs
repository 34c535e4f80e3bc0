//! Run configuration and its key-value text form.
//!
//! The text form is a flat TOML document; every rate is a multiple of `γ₀`
//! and every time a multiple of `1/γ₀`:
//!
//! ```toml
//! lambda = 0.05          # spectral width, > 0
//! omega = 0.0            # Rabi frequency, >= 0
//! delta_drive = 0.0      # drive detuning, >= 0
//! delta_cavity = 0.0     # qubit-reservoir detuning
//! theta = 1.5707963267948966
//! phi = 0.7853981633974483
//! t_max = 50.0
//! points = 2001          # time-grid points, >= 2
//! method = "analytic"    # or "volterra"
//!
//! [sweep]                # optional; switches to sweep mode
//! axis = "omega"         # omega | lambda | delta_drive | delta_cavity | time
//! from = 0.0
//! to = 10.0
//! points = 101
//! at_time = 50.0         # omit for a Δ_eff-only sweep; not allowed for axis = "time"
//!
//! [output]
//! path = "out.csv"       # omit for standard output
//! format = "csv"         # or "json"
//! ```
//!
//! Unknown keys are rejected.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use toml::{Table, Value};

use crate::amplitude::Backend;
use crate::error::{Error, Result};
use crate::grid::TimeGrid;
use crate::model::{ModelParams, ProbeState};

pub const DEFAULT_LAMBDA: f64 = 0.05;
pub const DEFAULT_THETA: f64 = FRAC_PI_2;
pub const DEFAULT_PHI: f64 = FRAC_PI_4;
pub const DEFAULT_T_MAX: f64 = 50.0;
pub const DEFAULT_POINTS: usize = 2001;

const TOP_KEYS: [&str; 11] =
    ["lambda", "omega", "delta_drive", "delta_cavity", "theta", "phi", "t_max", "points", "method", "sweep", "output"];
const SWEEP_KEYS: [&str; 5] = ["axis", "from", "to", "points", "at_time"];
const OUTPUT_KEYS: [&str; 2] = ["path", "format"];

/// Parameter varied by a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    Omega,
    Lambda,
    DeltaDrive,
    DeltaCavity,
    Time,
}

impl SweepAxis {
    pub fn as_str(&self) -> &'static str {
        match self {
            SweepAxis::Omega => "omega",
            SweepAxis::Lambda => "lambda",
            SweepAxis::DeltaDrive => "delta_drive",
            SweepAxis::DeltaCavity => "delta_cavity",
            SweepAxis::Time => "time",
        }
    }

    /// `params` with this axis set to `value`. Time leaves them unchanged.
    pub fn apply(&self, params: &ModelParams, value: f64) -> Result<ModelParams> {
        match self {
            SweepAxis::Omega => params.with_omega_rabi(value),
            SweepAxis::Lambda => params.with_lambda(value),
            SweepAxis::DeltaDrive => params.with_delta_drive(value),
            SweepAxis::DeltaCavity => params.with_delta_cavity(value),
            SweepAxis::Time => Ok(*params),
        }
    }
}

impl FromStr for SweepAxis {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "omega" => Ok(SweepAxis::Omega),
            "lambda" => Ok(SweepAxis::Lambda),
            "delta_drive" => Ok(SweepAxis::DeltaDrive),
            "delta_cavity" => Ok(SweepAxis::DeltaCavity),
            "time" => Ok(SweepAxis::Time),
            other => Err(format!("unknown axis `{other}` (expected omega, lambda, delta_drive, delta_cavity or time)")),
        }
    }
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub axis: SweepAxis,
    pub from: f64,
    pub to: f64,
    pub points: usize,
    /// Time at which the QFI is evaluated; `None` sweeps `Δ_eff` only.
    pub at_time: Option<f64>,
}

impl SweepSpec {
    /// Axis values, `from` and `to` inclusive.
    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.from];
        }
        let n = (self.points - 1) as f64;
        (0..self.points)
            .map(|i| if i + 1 == self.points { self.to } else { self.from + (self.to - self.from) * i as f64 / n })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl OutputFormat {
    pub fn as_str(&self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format `{other}` (expected csv or json)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct OutputSpec {
    /// `None` writes to standard output.
    pub path: Option<PathBuf>,
    pub format: OutputFormat,
}

/// A fully validated run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: ModelParams,
    pub probe: ProbeState,
    pub t_max: f64,
    pub points: usize,
    pub backend: Backend,
    /// Sweep mode when present, trace mode otherwise.
    pub sweep: Option<SweepSpec>,
    pub output: OutputSpec,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            params: ModelParams::undriven(DEFAULT_LAMBDA).expect("valid default"),
            probe: ProbeState::new(DEFAULT_THETA, DEFAULT_PHI).expect("valid default"),
            t_max: DEFAULT_T_MAX,
            points: DEFAULT_POINTS,
            backend: Backend::Analytic,
            sweep: None,
            output: OutputSpec::default(),
        }
    }
}

impl RunConfig {
    pub fn grid(&self) -> Result<TimeGrid> {
        TimeGrid::uniform(self.t_max, self.points)
    }

    pub fn is_sweep(&self) -> bool {
        self.sweep.is_some()
    }

    /// Validate a parsed key-value table.
    pub fn from_table(table: &Table) -> Result<Self> {
        check_keys(table, &TOP_KEYS, "")?;
        let defaults = RunConfig::default();

        let lambda = get_f64(table, "lambda", "")?.unwrap_or(DEFAULT_LAMBDA);
        let omega = get_f64(table, "omega", "")?.unwrap_or(0.0);
        let delta_drive = get_f64(table, "delta_drive", "")?.unwrap_or(0.0);
        let delta_cavity = get_f64(table, "delta_cavity", "")?.unwrap_or(0.0);
        let params = ModelParams::new(lambda, omega, delta_drive, delta_cavity).map_err(as_config)?;

        let theta = get_f64(table, "theta", "")?.unwrap_or(DEFAULT_THETA);
        let phi = get_f64(table, "phi", "")?.unwrap_or(DEFAULT_PHI);
        let probe = ProbeState::new(theta, phi).map_err(as_config)?;

        let t_max = get_f64(table, "t_max", "")?.unwrap_or(defaults.t_max);
        if !(t_max.is_finite() && t_max > 0.0) {
            return Err(Error::config("t_max", format!("t_max must be > 0 (got {t_max})")));
        }
        let points = get_usize(table, "points", "")?.unwrap_or(defaults.points);
        if points < 2 {
            return Err(Error::config("points", format!("points must be >= 2 (got {points})")));
        }
        let backend = match get_str(table, "method", "")? {
            None | Some("analytic") => Backend::Analytic,
            Some("volterra") => Backend::Volterra,
            Some(other) => {
                return Err(Error::config(
                    "method",
                    format!("unknown method `{other}` (expected analytic or volterra)"),
                ))
            }
        };

        let sweep = match table.get("sweep") {
            None => None,
            Some(Value::Table(t)) => Some(parse_sweep(t, &params)?),
            Some(_) => return Err(Error::config("sweep", "must be a table")),
        };
        let output = match table.get("output") {
            None => OutputSpec::default(),
            Some(Value::Table(t)) => parse_output(t)?,
            Some(_) => return Err(Error::config("output", "must be a table")),
        };

        Ok(Self { params, probe, t_max, points, backend, sweep, output })
    }

    pub fn to_table(&self) -> Table {
        let mut t = Table::new();
        t.insert("lambda".into(), Value::Float(self.params.lambda()));
        t.insert("omega".into(), Value::Float(self.params.omega_rabi()));
        t.insert("delta_drive".into(), Value::Float(self.params.delta_drive()));
        t.insert("delta_cavity".into(), Value::Float(self.params.delta_cavity()));
        t.insert("theta".into(), Value::Float(self.probe.theta()));
        t.insert("phi".into(), Value::Float(self.probe.phi()));
        t.insert("t_max".into(), Value::Float(self.t_max));
        t.insert("points".into(), Value::Integer(self.points as i64));
        t.insert("method".into(), Value::String(self.backend.as_str().into()));
        if let Some(s) = &self.sweep {
            let mut st = Table::new();
            st.insert("axis".into(), Value::String(s.axis.as_str().into()));
            st.insert("from".into(), Value::Float(s.from));
            st.insert("to".into(), Value::Float(s.to));
            st.insert("points".into(), Value::Integer(s.points as i64));
            if let Some(at) = s.at_time {
                st.insert("at_time".into(), Value::Float(at));
            }
            t.insert("sweep".into(), Value::Table(st));
        }
        let mut ot = Table::new();
        if let Some(p) = &self.output.path {
            ot.insert("path".into(), Value::String(p.to_string_lossy().into_owned()));
        }
        ot.insert("format".into(), Value::String(self.output.format.as_str().into()));
        t.insert("output".into(), Value::Table(ot));
        t
    }

    /// Key-value text that [`parse_config`] maps back to `self`.
    pub fn to_text(&self) -> String {
        toml::to_string(&self.to_table()).expect("plain table always serializes")
    }

    /// `(key, value)` pairs echoed into dataset metadata.
    pub fn metadata(&self) -> Vec<(String, String)> {
        let mut m = vec![
            ("lambda".to_string(), self.params.lambda().to_string()),
            ("omega".to_string(), self.params.omega_rabi().to_string()),
            ("delta_drive".to_string(), self.params.delta_drive().to_string()),
            ("delta_cavity".to_string(), self.params.delta_cavity().to_string()),
            ("theta".to_string(), self.probe.theta().to_string()),
            ("phi".to_string(), self.probe.phi().to_string()),
            ("t_max".to_string(), self.t_max.to_string()),
            ("points".to_string(), self.points.to_string()),
            ("method".to_string(), self.backend.as_str().to_string()),
        ];
        if let Some(s) = &self.sweep {
            m.push(("sweep.axis".into(), s.axis.as_str().into()));
            m.push(("sweep.from".into(), s.from.to_string()));
            m.push(("sweep.to".into(), s.to.to_string()));
            m.push(("sweep.points".into(), s.points.to_string()));
            if let Some(at) = s.at_time {
                m.push(("sweep.at_time".into(), at.to_string()));
            }
        }
        m
    }
}

/// Parse and validate a key-value config document.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let table: Table =
        text.parse().map_err(|e: toml::de::Error| Error::config("<document>", e.message().to_string()))?;
    RunConfig::from_table(&table)
}

fn parse_sweep(t: &Table, params: &ModelParams) -> Result<SweepSpec> {
    check_keys(t, &SWEEP_KEYS, "sweep.")?;
    let axis: SweepAxis = get_str(t, "axis", "sweep.")?
        .ok_or_else(|| Error::config("sweep.axis", "missing"))?
        .parse()
        .map_err(|m| Error::config("sweep.axis", m))?;
    let from = get_f64(t, "from", "sweep.")?.ok_or_else(|| Error::config("sweep.from", "missing"))?;
    let to = get_f64(t, "to", "sweep.")?.ok_or_else(|| Error::config("sweep.to", "missing"))?;
    for (key, v) in [("sweep.from", from), ("sweep.to", to)] {
        if !v.is_finite() {
            return Err(Error::config(key, format!("must be finite (got {v})")));
        }
    }
    let points = get_usize(t, "points", "sweep.")?.ok_or_else(|| Error::config("sweep.points", "missing"))?;
    if points == 0 {
        return Err(Error::config("sweep.points", "must be >= 1"));
    }
    if points == 1 && from != to {
        return Err(Error::config("sweep.points", "a single-point sweep needs from = to"));
    }
    let at_time = get_f64(t, "at_time", "sweep.")?;
    match (axis, at_time) {
        (SweepAxis::Time, Some(_)) => return Err(Error::config("sweep.at_time", "not allowed when sweeping time")),
        (SweepAxis::Time, None) if from.min(to) < 0.0 => return Err(Error::config("sweep.from", "times must be >= 0")),
        (_, Some(at)) if !(at.is_finite() && at >= 0.0) => {
            return Err(Error::config("sweep.at_time", format!("must be >= 0 (got {at})")))
        }
        _ => {}
    }
    // the parameter constraints are half-lines, so valid endpoints cover the range
    for (key, v) in [("sweep.from", from), ("sweep.to", to)] {
        axis.apply(params, v).map_err(|e| Error::config(key, e.to_string()))?;
    }
    Ok(SweepSpec { axis, from, to, points, at_time })
}

fn parse_output(t: &Table) -> Result<OutputSpec> {
    check_keys(t, &OUTPUT_KEYS, "output.")?;
    let path = get_str(t, "path", "output.")?.map(PathBuf::from);
    let format = match get_str(t, "format", "output.")? {
        None => OutputFormat::Csv,
        Some(s) => s.parse().map_err(|m| Error::config("output.format", m))?,
    };
    Ok(OutputSpec { path, format })
}

fn as_config(e: Error) -> Error {
    match e {
        Error::InvalidParameter { name, reason } => Error::config(name, reason),
        other => other,
    }
}

fn check_keys(t: &Table, allowed: &[&str], prefix: &str) -> Result<()> {
    match t.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(Error::config(format!("{prefix}{k}"), "unknown key")),
        None => Ok(()),
    }
}

fn get_f64(t: &Table, key: &str, prefix: &str) -> Result<Option<f64>> {
    match t.get(key) {
        None => Ok(None),
        Some(Value::Float(x)) => Ok(Some(*x)),
        Some(Value::Integer(i)) => Ok(Some(*i as f64)),
        Some(other) => {
            Err(Error::config(format!("{prefix}{key}"), format!("expected a number, found {}", other.type_str())))
        }
    }
}

fn get_usize(t: &Table, key: &str, prefix: &str) -> Result<Option<usize>> {
    match t.get(key) {
        None => Ok(None),
        Some(Value::Integer(i)) if *i >= 0 => Ok(Some(*i as usize)),
        Some(Value::Integer(i)) => Err(Error::config(format!("{prefix}{key}"), format!("must be >= 0 (got {i})"))),
        Some(other) => {
            Err(Error::config(format!("{prefix}{key}"), format!("expected an integer, found {}", other.type_str())))
        }
    }
}

fn get_str<'a>(t: &'a Table, key: &str, prefix: &str) -> Result<Option<&'a str>> {
    match t.get(key) {
        None => Ok(None),
        Some(Value::String(s)) => Ok(Some(s.as_str())),
        Some(other) => {
            Err(Error::config(format!("{prefix}{key}"), format!("expected a string, found {}", other.type_str())))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config_err(text: &str) -> (String, String) {
        match parse_config(text) {
            Err(Error::Config { key, message }) => (key, message),
            other => panic!("expected config error, got {other:?}"),
        }
    }

    #[test]
    fn empty_document_gives_defaults() {
        let cfg = parse_config("").unwrap();
        assert_eq!(cfg, RunConfig::default());
        assert_eq!(cfg.params.lambda(), 0.05);
        assert_eq!(cfg.params.omega_rabi(), 0.0);
        assert_eq!(cfg.probe.theta(), FRAC_PI_2);
        assert_eq!(cfg.probe.phi(), FRAC_PI_4);
        assert_eq!((cfg.t_max, cfg.points), (50.0, 2001));
        assert!(!cfg.is_sweep());
    }

    #[test]
    fn zero_lambda_rejected() {
        let (key, message) = config_err("lambda = 0");
        assert_eq!(key, "lambda");
        assert!(message.contains("lambda must be > 0"), "{message}");
    }

    #[test]
    fn unknown_keys_rejected() {
        assert_eq!(config_err("lamda = 1.0").0, "lamda");
        assert_eq!(config_err("[sweep]\naxis = \"omega\"\nfrom = 0\nto = 1\npoints = 2\nstep = 3").0, "sweep.step");
        assert_eq!(config_err("[output]\nfile = \"x\"").0, "output.file");
    }

    #[test]
    fn constraint_errors_name_the_key() {
        assert_eq!(config_err("omega = -1").0, "omega");
        assert_eq!(config_err("theta = 4").0, "theta");
        assert_eq!(config_err("points = 1").0, "points");
        assert_eq!(config_err("t_max = 0").0, "t_max");
        assert_eq!(config_err("method = \"euler\"").0, "method");
        assert_eq!(config_err("lambda = \"wide\"").0, "lambda");
        assert_eq!(config_err("[sweep]\naxis = \"eta\"\nfrom = 0\nto = 1\npoints = 2").0, "sweep.axis");
        assert_eq!(config_err("[sweep]\naxis = \"lambda\"\nfrom = 0\nto = 1\npoints = 2").0, "sweep.from");
        assert_eq!(
            config_err("[sweep]\naxis = \"time\"\nfrom = 0\nto = 1\npoints = 2\nat_time = 3").0,
            "sweep.at_time"
        );
        assert_eq!(config_err("[sweep]\naxis = \"omega\"\nfrom = 0\nto = 1\npoints = 1").0, "sweep.points");
        assert_eq!(config_err("[output]\nformat = \"xml\"").0, "output.format");
        assert_eq!(config_err("lambda = ").0, "<document>");
    }

    #[test]
    fn sweep_values_are_inclusive() {
        let s = SweepSpec { axis: SweepAxis::Omega, from: 0.0, to: 10.0, points: 101, at_time: Some(50.0) };
        let v = s.values();
        assert_eq!(v.len(), 101);
        assert_eq!(v[0], 0.0);
        assert_eq!(v[100], 10.0);
        assert!((v[37] - 3.7).abs() < 1e-12);
        let single = SweepSpec { points: 1, from: 2.0, to: 2.0, ..s };
        assert_eq!(single.values(), vec![2.0]);
    }

    #[test]
    fn full_document_round_trips() {
        let text = r#"
            lambda = 0.1
            omega = 1
            delta_drive = 1.0
            delta_cavity = -2.5
            theta = 1.0
            phi = 0.3
            t_max = 20.0
            points = 401
            method = "volterra"
            [sweep]
            axis = "delta_cavity"
            from = -4.0
            to = 4.0
            points = 81
            at_time = 50.0
            [output]
            path = "out/fig.csv"
            format = "json"
        "#;
        let cfg = parse_config(text).unwrap();
        assert_eq!(cfg.backend, Backend::Volterra);
        assert_eq!(cfg.sweep.unwrap().axis, SweepAxis::DeltaCavity);
        let again = parse_config(&cfg.to_text()).unwrap();
        assert_eq!(again, cfg);
        assert_eq!(again.to_text(), cfg.to_text());
    }
}
