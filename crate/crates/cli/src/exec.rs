//! Command dispatch.

use std::f64::consts::PI;
use std::io::Write;

use nlip::critical::{critical_table_csv, disk_energy_of_mass, eps_of_mass};
use nlip::domain::{Domain, EllipseDomain, StarDomain};
use nlip::minimize::{chain_ansatz_energy, gradient_flow, phase_csv, phase_scan};
use nlip::riesz::{potential_many, total_energy, Alpha, EnergyBreakdown};
use serde::Serialize;

use crate::config::{linspace, Command, RunConfig};
use crate::error::{CliError, CliResult};
use crate::output::{to_json, write_atomic};
use crate::verify::run_suite;

/// What a command produced. `failed` is set only by `verify`.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub text: String,
    pub failed: usize,
    pub total: usize,
}

impl Outcome {
    fn data(text: String) -> Self {
        Self {
            text,
            failed: 0,
            total: 0,
        }
    }
}

fn json<S: Serialize>(v: &S) -> CliResult<String> {
    to_json(v).map_err(|e| CliError::Validation(format!("serialization: {e}")))
}

/// The domain a command acts on: explicit domain, else an ellipse built from
/// radius (or mass) and eccentricity, defaulting to the unit disk.
pub fn resolve_domain(cfg: &RunConfig) -> CliResult<Domain<f64>> {
    if let Some(d) = &cfg.domain {
        if cfg.disk_radius.is_some() || cfg.eccentricity.is_some() {
            return Err(CliError::Validation(
                "explicit domain conflicts with disk_radius/eccentricity".into(),
            ));
        }
        return Ok(d.clone());
    }
    let r = match (cfg.disk_radius, cfg.mass) {
        (Some(r), _) => r,
        (None, Some(m)) => (m / PI).sqrt(),
        (None, None) => 1.0,
    };
    Ok(EllipseDomain::new(r, cfg.eccentricity.unwrap_or(0.0))?.into())
}

#[derive(Serialize)]
struct EnergyOut<'a> {
    command: &'static str,
    domain: &'a Domain<f64>,
    energy: EnergyBreakdown<f64>,
}

#[derive(Serialize)]
struct PotentialRow {
    x: f64,
    y: f64,
    value: f64,
    err: f64,
}

#[derive(Serialize)]
struct MinimizeOut {
    command: &'static str,
    alpha: f64,
    mass: f64,
    eps: f64,
    steps: usize,
    converged: bool,
    split_suspected: bool,
    /// λ·E_ε at the final shape, λ = √(m/π).
    final_energy: f64,
    disk_energy: f64,
    isoperimetric_deficit: f64,
    energy_history: Vec<f64>,
    el_residual_history: Vec<f64>,
    /// Final shape at the physical scale (area m).
    final_domain: StarDomain<f64>,
}

fn start_shape(cfg: &RunConfig) -> CliResult<StarDomain<f64>> {
    let modes = cfg.flow.modes;
    Ok(match &cfg.domain {
        Some(Domain::Star(s)) => s.clone(),
        Some(Domain::Ellipse(e)) => e.to_star(modes)?,
        Some(Domain::Disks(s)) if s.len() == 1 => {
            let d = s.disks()[0];
            StarDomain::disk(d.center, d.radius)?
        }
        Some(Domain::Disks(_)) => {
            return Err(CliError::Validation(
                "minimize needs a single connected starting shape".into(),
            ))
        }
        None => EllipseDomain::new(1.0, cfg.eccentricity.unwrap_or(0.05))?.to_star(modes)?,
    })
}

fn minimize(cfg: &RunConfig, alpha: Alpha<f64>) -> CliResult<String> {
    let start = start_shape(cfg)?;
    let m = cfg.mass.unwrap_or_else(|| start.area());
    let eps = eps_of_mass(m, alpha)?;
    let res = gradient_flow(&start, alpha, eps, &cfg.flow)?;
    let lam = (m / PI).sqrt();
    let last = res.energy_history.last().expect("flow records the start");
    let final_domain = res.final_domain.dilate(lam);
    let out = MinimizeOut {
        command: "minimize",
        alpha: alpha.get(),
        mass: m,
        eps,
        steps: res.steps,
        converged: res.converged,
        split_suspected: res.split_suspected,
        final_energy: lam * last.total,
        disk_energy: disk_energy_of_mass(m, alpha)?,
        isoperimetric_deficit: Domain::Star(final_domain.clone()).isoperimetric_deficit()?,
        energy_history: res.energy_history.iter().map(|e| e.total).collect(),
        el_residual_history: res.el_residual_history,
        final_domain,
    };
    json(&out)
}

fn alpha_grid(cfg: &RunConfig) -> CliResult<Vec<Alpha<f64>>> {
    linspace(cfg.alpha_min, cfg.alpha_max, cfg.alpha_steps)
        .into_iter()
        .map(|a| Alpha::new(a).map_err(CliError::from))
        .collect()
}

/// Run the configured command; output goes to `cfg.out` (atomically) or is
/// returned for the caller to print.
pub fn execute(cfg: &RunConfig) -> CliResult<Outcome> {
    let alpha = cfg.alpha();
    let outcome = match cfg.command() {
        Command::Energy => {
            let d = resolve_domain(cfg)?;
            let e = total_energy(&d, alpha, &cfg.quad)?;
            Outcome::data(json(&EnergyOut {
                command: "energy",
                domain: &d,
                energy: e,
            })?)
        }
        Command::Potential => {
            let d = resolve_domain(cfg)?;
            let pts = if cfg.points.is_empty() {
                vec![[0.0, 0.0]]
            } else {
                cfg.points.clone()
            };
            let vals = potential_many(&d, alpha, &pts, &cfg.quad)?;
            let rows: Vec<PotentialRow> = pts
                .iter()
                .zip(vals)
                .map(|(p, v)| PotentialRow {
                    x: p[0],
                    y: p[1],
                    value: v.value,
                    err: v.err,
                })
                .collect();
            Outcome::data(json(&rows)?)
        }
        Command::CriticalTable => Outcome::data(critical_table_csv(&alpha_grid(cfg)?)?),
        Command::Minimize => Outcome::data(minimize(cfg, alpha)?),
        Command::PhaseScan => {
            let masses = linspace(cfg.m_min, cfg.m_max, cfg.m_steps);
            let mut phase = cfg.phase.clone();
            if let Some(f) = phase.flow.as_mut() {
                f.quad = cfg.quad.clone();
            }
            Outcome::data(phase_csv(&phase_scan(&alpha_grid(cfg)?, &masses, &phase)))
        }
        Command::Chain => {
            let m = cfg
                .mass
                .ok_or_else(|| CliError::Validation("chain needs --mass".into()))?;
            Outcome::data(json(&chain_ansatz_energy(m, alpha)?)?)
        }
        Command::Verify => {
            let r = run_suite(cfg.suite, &cfg.quad, cfg.seed)?;
            Outcome {
                text: r.table(),
                failed: r.failed(),
                total: r.checks.len(),
            }
        }
    };
    if let Some(p) = &cfg.out {
        write_atomic(p, &outcome.text).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        })?;
    }
    Ok(outcome)
}

/// Full command-line entry point; returns the process exit code.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let result = crate::config::parse_config(argv).and_then(|p| match p {
        crate::config::Parsed::Info(s) => {
            print!("{s}");
            Ok(None)
        }
        crate::config::Parsed::Run(cfg) => execute(&cfg).map(|o| Some((o, cfg.out.is_some()))),
    });
    match result {
        Ok(None) => 0,
        Ok(Some((o, to_file))) => {
            // verify always prints its table
            if !to_file || o.total > 0 {
                let mut out = std::io::stdout().lock();
                let _ = out.write_all(o.text.as_bytes());
                let _ = out.flush();
            }
            if o.failed > 0 {
                let e = CliError::Verify {
                    failed: o.failed,
                    total: o.total,
                };
                eprintln!("{}", e.to_json());
                e.exit_code()
            } else {
                0
            }
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            e.exit_code()
        }
    }
}
