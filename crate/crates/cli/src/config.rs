//! Run configuration: a JSON config file overlaid by command-line flags.

use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use nlip::domain::Domain;
use nlip::minimize::{FlowConfig, PhaseScanConfig};
use nlip::riesz::{Alpha, QuadratureConfig};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Energy,
    Potential,
    CriticalTable,
    Minimize,
    PhaseScan,
    Verify,
    Chain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Riesz,
    Critical,
    Domain,
    Minimize,
    #[default]
    All,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub command: Option<Command>,
    pub alpha: f64,
    pub mass: Option<f64>,
    pub disk_radius: Option<f64>,
    pub eccentricity: Option<f64>,
    /// Inline domain; `domain_file` is read into this field.
    pub domain: Option<Domain<f64>>,
    pub domain_file: Option<PathBuf>,
    /// Evaluation points for `potential`.
    pub points: Vec<[f64; 2]>,
    pub quad: QuadratureConfig,
    pub flow: FlowConfig,
    pub phase: PhaseScanConfig,
    pub out: Option<PathBuf>,
    pub seed: u64,
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub alpha_steps: usize,
    pub m_min: f64,
    pub m_max: f64,
    pub m_steps: usize,
    pub suite: Suite,
}

impl Default for RunConfig {
    fn default() -> Self {
        let quad = QuadratureConfig::default();
        Self {
            command: None,
            alpha: 1.0,
            mass: None,
            disk_radius: None,
            eccentricity: None,
            domain: None,
            domain_file: None,
            points: Vec::new(),
            seed: quad.mc_seed,
            quad,
            flow: FlowConfig::default(),
            phase: PhaseScanConfig::default(),
            out: None,
            alpha_min: 0.1,
            alpha_max: 1.9,
            alpha_steps: 19,
            m_min: 0.5,
            m_max: 6.0,
            m_steps: 12,
            suite: Suite::All,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "nlip",
    version,
    about = "Isoperimetric problem with Riesz repulsion in the plane"
)]
struct Flags {
    #[arg(value_enum)]
    command: Option<Command>,
    /// JSON file mirroring the run configuration; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    mass: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    disk_radius: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    eccentricity: Option<f64>,
    /// Inline JSON domain.
    #[arg(long)]
    domain: Option<String>,
    #[arg(long)]
    domain_file: Option<PathBuf>,
    /// Potential evaluation point `x,y`; repeatable.
    #[arg(long = "point", value_name = "X,Y", allow_negative_numbers = true)]
    points: Vec<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    panels: Option<usize>,
    #[arg(long)]
    mc_samples: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    alpha_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    alpha_max: Option<f64>,
    #[arg(long, visible_alias = "steps")]
    alpha_steps: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    m_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    m_max: Option<f64>,
    #[arg(long)]
    m_steps: Option<usize>,
    #[arg(long, value_enum)]
    suite: Option<Suite>,
    /// Flow iteration cap.
    #[arg(long)]
    max_steps: Option<usize>,
    /// Fourier mode cap for the flow.
    #[arg(long)]
    modes: Option<usize>,
}

/// Outcome of argument parsing: a run, or text clap wants printed (help, version).
#[derive(Debug)]
pub enum Parsed {
    Run(Box<RunConfig>),
    Info(String),
}

fn read_json(path: &Path) -> CliResult<Value> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}

fn parse_point(s: &str) -> CliResult<[f64; 2]> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let bad = || CliError::Usage(format!("--point expects `x,y`, got `{s}`"));
    match parts[..] {
        [x, y] => Ok([x.parse().map_err(|_| bad())?, y.parse().map_err(|_| bad())?]),
        _ => Err(bad()),
    }
}

fn set(obj: &mut Map<String, Value>, key: &str, v: Option<impl Serialize>) {
    if let Some(v) = v {
        obj.insert(
            key.to_owned(),
            serde_json::to_value(v).expect("flag value serializes"),
        );
    }
}

fn set_nested(obj: &mut Map<String, Value>, section: &str, key: &str, v: Option<impl Serialize>) {
    if let Some(v) = v {
        let entry = obj
            .entry(section.to_owned())
            .or_insert_with(|| Value::Object(Map::new()));
        if let Value::Object(m) = entry {
            m.insert(
                key.to_owned(),
                serde_json::to_value(v).expect("flag value serializes"),
            );
        }
    }
}

/// Parse `argv` (program name first) into a validated [`RunConfig`].
pub fn parse_config<I, S>(argv: I) -> CliResult<Parsed>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let flags = match Flags::try_parse_from(argv) {
        Ok(f) => f,
        Err(e) => {
            use clap::error::ErrorKind::*;
            return match e.kind() {
                DisplayHelp | DisplayVersion | DisplayHelpOnMissingArgumentOrSubcommand => {
                    Ok(Parsed::Info(e.render().to_string()))
                }
                _ => Err(CliError::Usage(
                    e.render().to_string().trim_end().to_owned(),
                )),
            };
        }
    };

    let mut obj = match &flags.config {
        Some(p) => match read_json(p)? {
            Value::Object(m) => m,
            _ => {
                return Err(CliError::Validation(format!(
                    "{}: config must be a JSON object",
                    p.display()
                )))
            }
        },
        None => Map::new(),
    };
    set(&mut obj, "command", flags.command);
    set(&mut obj, "alpha", flags.alpha);
    set(&mut obj, "mass", flags.mass);
    set(&mut obj, "disk_radius", flags.disk_radius);
    set(&mut obj, "eccentricity", flags.eccentricity);
    if let Some(s) = &flags.domain {
        let v: Value =
            serde_json::from_str(s).map_err(|e| CliError::Usage(format!("--domain: {e}")))?;
        obj.insert("domain".into(), v);
    }
    set(&mut obj, "domain_file", flags.domain_file.as_ref());
    if !flags.points.is_empty() {
        let pts = flags
            .points
            .iter()
            .map(|s| parse_point(s))
            .collect::<CliResult<Vec<_>>>()?;
        set(&mut obj, "points", Some(pts));
    }
    set(&mut obj, "out", flags.out.as_ref());
    set(&mut obj, "seed", flags.seed);
    set_nested(&mut obj, "quad", "boundary_panels", flags.panels);
    set_nested(&mut obj, "quad", "mc_samples", flags.mc_samples);
    set_nested(&mut obj, "quad", "tol", flags.tol);
    set(&mut obj, "alpha_min", flags.alpha_min);
    set(&mut obj, "alpha_max", flags.alpha_max);
    set(&mut obj, "alpha_steps", flags.alpha_steps);
    set(&mut obj, "m_min", flags.m_min);
    set(&mut obj, "m_max", flags.m_max);
    set(&mut obj, "m_steps", flags.m_steps);
    set(&mut obj, "suite", flags.suite);
    set_nested(&mut obj, "flow", "max_steps", flags.max_steps);
    set_nested(&mut obj, "flow", "modes", flags.modes);

    let mut cfg: RunConfig = serde_json::from_value(Value::Object(obj))
        .map_err(|e| CliError::Validation(format!("config: {e}")))?;
    if let Some(p) = cfg.domain_file.clone() {
        if cfg.domain.is_some() {
            return Err(CliError::Usage(
                "give either --domain or --domain-file, not both".into(),
            ));
        }
        let v = read_json(&p)?;
        let d = serde_json::from_value(v)
            .map_err(|e| CliError::Validation(format!("{}: {e}", p.display())))?;
        cfg.domain = Some(d);
    }
    cfg.validate()?;
    Ok(Parsed::Run(Box::new(cfg)))
}

fn positive(name: &str, v: Option<f64>) -> CliResult<()> {
    match v {
        Some(x) if !(x.is_finite() && x > 0.0) => Err(CliError::Validation(format!(
            "{name} = {x} must be positive"
        ))),
        _ => Ok(()),
    }
}

impl RunConfig {
    pub fn command(&self) -> Command {
        self.command.expect("validated config has a command")
    }

    pub fn alpha(&self) -> Alpha<f64> {
        Alpha::new(self.alpha).expect("validated alpha")
    }

    /// Range and consistency checks. Also routes the seed into the
    /// quadrature settings so the Monte Carlo oracle follows `--seed`.
    pub fn validate(&mut self) -> CliResult<()> {
        if self.command.is_none() {
            return Err(CliError::Usage(
                "missing command (energy, potential, critical-table, minimize, phase-scan, verify, chain)".into(),
            ));
        }
        Alpha::new(self.alpha)?;
        positive("mass", self.mass)?;
        positive("disk_radius", self.disk_radius)?;
        if let Some(e) = self.eccentricity {
            if !(0.0..1.0).contains(&e) {
                return Err(CliError::Validation(format!(
                    "eccentricity = {e} outside [0, 1)"
                )));
            }
        }
        if self.mass.is_some() && self.disk_radius.is_some() {
            return Err(CliError::Validation(
                "give either mass or disk_radius, not both".into(),
            ));
        }
        if self.points.iter().flatten().any(|x| !x.is_finite()) {
            return Err(CliError::Validation(
                "evaluation points must be finite".into(),
            ));
        }
        Alpha::new(self.alpha_min)?;
        Alpha::new(self.alpha_max)?;
        if self.alpha_min > self.alpha_max || self.alpha_steps == 0 {
            return Err(CliError::Validation(format!(
                "alpha grid [{}, {}] x {} is empty",
                self.alpha_min, self.alpha_max, self.alpha_steps
            )));
        }
        positive("m_min", Some(self.m_min))?;
        positive("m_max", Some(self.m_max))?;
        if self.m_min > self.m_max || self.m_steps == 0 {
            return Err(CliError::Validation(format!(
                "mass grid [{}, {}] x {} is empty",
                self.m_min, self.m_max, self.m_steps
            )));
        }
        self.quad.mc_seed = self.seed;
        self.quad.validate()?;
        self.flow.quad = self.quad.clone();
        Ok(())
    }
}

/// `n` points from `lo` to `hi`, endpoints exact, rounded to 12 decimals
/// so that e.g. 0.1..1.9 in 19 steps hits 1.0 exactly.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n)
        .map(|i| {
            if i == 0 {
                lo
            } else if i == n - 1 {
                hi
            } else {
                let w = i as f64 / (n - 1) as f64;
                let x = lo * (1.0 - w) + hi * w;
                let scale = 1e12;
                (x * scale).round() / scale
            }
        })
        .collect()
}
