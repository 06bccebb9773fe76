//! Self-checks run by `nlip verify`: each row compares a computed error
//! measure against its tolerance.

use std::f64::consts::PI;

use nlip::critical::{
    disk_energy_of_mass, eps_of_mass, mass_c1, mass_c2, quartic_coeff, thresholds, two_disk_excess,
};
use nlip::domain::{diameter_direction, Domain, EllipseDomain, Slicer, StarDomain};
use nlip::minimize::{
    chain_ansatz_energy, cut_delta, cut_delta_by_energies, energy_eps, interpolation_ratio,
    shape_gradient,
};
use nlip::riesz::{
    ball_energy_closed, ball_potential_closed, ellipse_energy_closed, mc_nonlocal_oracle,
    nonlocal_energy, potential_at, Alpha, QuadratureConfig,
};
use nlip::roots::bisect;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::Suite;
use crate::error::CliResult;
use crate::output::num;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub value: f64,
    pub tol: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.value <= self.tol
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn failed(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed()).count()
    }

    pub fn table(&self) -> String {
        let mut out = format!(
            "{:<9} {:<40} {:>24} {:>24}  status\n",
            "suite", "check", "value", "tolerance"
        );
        for c in &self.checks {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            out += &format!(
                "{:<9} {:<40} {:>24} {:>24}  {status}\n",
                c.suite,
                c.name,
                num(c.value),
                num(c.tol)
            );
        }
        out += &format!(
            "summary: {} of {} checks passed\n",
            self.checks.len() - self.failed(),
            self.checks.len()
        );
        out
    }
}

struct Sink<'a> {
    suite: &'static str,
    checks: &'a mut Vec<Check>,
}

impl Sink<'_> {
    fn push(&mut self, name: impl Into<String>, value: f64, tol: f64) {
        // NaN must fail
        let value = if value.is_nan() { f64::INFINITY } else { value };
        self.checks.push(Check {
            suite: self.suite,
            name: name.into(),
            value,
            tol,
        });
    }

    fn holds(&mut self, name: impl Into<String>, ok: bool) {
        self.push(name, if ok { 0.0 } else { 1.0 }, 0.0);
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn al(a: f64) -> Alpha<f64> {
    Alpha::new(a).expect("alpha in window")
}

fn riesz(s: &mut Sink, cfg: &QuadratureConfig, seed: u64) -> CliResult<()> {
    for a in [0.5, 1.0, 1.5] {
        for r in [0.5, 1.0, 2.0] {
            let quad = nonlocal_energy(&StarDomain::disk([0.0, 0.0], r)?.into(), al(a), cfg)?.value;
            let exact = ball_energy_closed(r, al(a))?.nonlocal;
            s.push(format!("ball alpha={a} R={r}"), rel(quad, exact), 1e-6);
        }
    }
    let unit = nonlocal_energy(&StarDomain::disk([0.0, 0.0], 1.0)?.into(), al(1.0), cfg)?.value;
    s.push(
        "unit disk alpha=1 vs 16pi/3",
        rel(unit, 16.0 * PI / 3.0),
        1e-6,
    );
    for e in [0.3, 0.6] {
        let d: Domain<f64> = EllipseDomain::new(1.0, e)?.into();
        let quad = nonlocal_energy(&d, al(1.0), cfg)?.value;
        let exact = ellipse_energy_closed(1.0, e, al(1.0))?.nonlocal;
        s.push(format!("ellipse alpha=1 e={e}"), rel(quad, exact), 1e-5);
    }
    let disk: Domain<f64> = StarDomain::disk([0.0, 0.0], 1.0)?.into();
    for r in [0.0, 0.5, 0.9, 1.1, 2.0] {
        let v = potential_at(&disk, al(1.0), [r, 0.0], cfg)?.value;
        s.push(
            format!("ball potential r={r}"),
            rel(v, ball_potential_closed(r, al(1.0))?),
            1e-7,
        );
    }
    let v1 = potential_at(&disk, al(1.0), [1.0, 0.0], cfg)?.value;
    s.push("ball potential v(1) = 4", rel(v1, 4.0), 1e-4);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..3 {
        let star = StarDomain::random(&mut rng, [0.0, 0.0], 1.0, 6, 0.25)?;
        let d: Domain<f64> = star.into();
        let q = nonlocal_energy(&d, al(1.0), cfg)?.value;
        let mc = mc_nonlocal_oracle(
            &d,
            al(1.0),
            &QuadratureConfig {
                mc_seed: seed.wrapping_add(i),
                ..cfg.clone()
            },
        )?;
        s.push(
            format!("mc oracle star #{i} (sigmas)"),
            (q - mc.estimate).abs() / mc.stderr,
            4.0,
        );
    }
    Ok(())
}

fn critical(s: &mut Sink) -> CliResult<()> {
    s.push(
        "m_c1(1) = 3 sqrt2 pi/8",
        rel(mass_c1(al(1.0))?, 3.0 * 2f64.sqrt() * PI / 8.0),
        1e-10,
    );
    s.push(
        "m_c2(1) = 9 pi/8",
        rel(mass_c2(al(1.0))?, 9.0 * PI / 8.0),
        1e-10,
    );
    let (mut worst1, mut worst2, mut ordered) = (0.0f64, 0.0f64, true);
    for i in 1..=39 {
        let a = al(i as f64 / 20.0);
        let th = thresholds(a)?;
        ordered &= th.m_c1 < th.m_c2;
        let tie = |m: f64| {
            disk_energy_of_mass(m, a).unwrap_or(f64::NAN)
                - 2.0 * disk_energy_of_mass(m / 2.0, a).unwrap_or(f64::NAN)
        };
        worst1 = worst1.max(rel(bisect(tie, 1e-3, 1e3)?, th.m_c1));
        let q = |m: f64| quartic_coeff(m, a).unwrap_or(f64::NAN);
        worst2 = worst2.max(rel(bisect(q, 1e-3, 1e3)?, th.m_c2));
    }
    s.push("m_c1 vs two-disk tie root", worst1, 1e-9);
    s.push("m_c2 vs quartic root", worst2, 1e-9);
    s.holds("m_c1 < m_c2 on alpha grid", ordered);
    for a in [0.1, 0.5, 1.0, 1.5, 1.9] {
        let mut worst = f64::INFINITY;
        for i in 0..10_000 {
            worst = worst.min(two_disk_excess(0.5 * i as f64 / 9_999.0, 1.0, al(a))?.f);
        }
        s.push(
            format!("split excess F(t,1) >= 0 alpha={a}"),
            (-worst).max(0.0),
            1e-12,
        );
        s.holds(
            format!("F(1/2, 1.05) < 0 alpha={a}"),
            two_disk_excess(0.5, 1.05, al(a))?.f < 0.0,
        );
    }
    for a in [0.5, 1.0, 1.5] {
        let mc2 = mass_c2(al(a))?;
        let fd = |m: f64| -> CliResult<f64> {
            let r = (m / PI).sqrt();
            let e = 1e-2;
            let d = ellipse_energy_closed(r, e, al(a))?.total
                - ellipse_energy_closed(r, 0.0, al(a))?.total;
            Ok(d / e.powi(4))
        };
        let (lo, hi) = (fd(0.99 * mc2)?, fd(1.01 * mc2)?);
        s.holds(
            format!("e^4 coefficient flips at m_c2 alpha={a}"),
            lo > 0.0 && hi < 0.0,
        );
        let q = quartic_coeff(0.99 * mc2, al(a))?;
        s.push(
            format!("e^4 coefficient vs quartic alpha={a}"),
            rel(lo, q),
            1e-2,
        );
    }
    Ok(())
}

fn domain(s: &mut Sink, seed: u64) -> CliResult<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut iso, mut gb, mut dil) = (true, 0.0f64, 0.0f64);
    for _ in 0..10 {
        let modes = rng.random_range(1..10);
        let star = StarDomain::random(&mut rng, [0.0, 0.0], 1.0, modes, 0.3)?;
        iso &= star.perimeter() >= 2.0 * (PI * star.area()).sqrt() * (1.0 - 1e-13);
        let h = 2.0 * PI / star.grid().len() as f64;
        let mut turning = 0.0;
        for t in star.grid() {
            turning += star.curvature_at(t)? * star.speed(t) * h;
        }
        gb = gb.max(rel(turning, 2.0 * PI));
        let big = star.dilate(2.5);
        dil = dil
            .max(rel(big.area(), 6.25 * star.area()))
            .max(rel(big.perimeter(), 2.5 * star.perimeter()));
    }
    s.holds("isoperimetric inequality (10 stars)", iso);
    s.push("Gauss-Bonnet total curvature", gb, 1e-8);
    s.push("dilation scaling", dil, 1e-12);
    let e = EllipseDomain::new(1.0, 0.6)?;
    s.push(
        "ellipse star fit area",
        rel(e.to_star(64)?.area(), e.area()),
        1e-10,
    );
    Ok(())
}

fn minimize(s: &mut Sink, cfg: &QuadratureConfig, seed: u64) -> CliResult<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = al(1.0);
    let eps = eps_of_mass(2.0, a)?;
    for i in 0..3 {
        let star = StarDomain::random(&mut rng, [0.0, 0.0], 1.0, 6, 0.2)?;
        let (fd, an) = shape_derivative_pair(&star, a, eps, cfg, &mut rng)?;
        s.push(
            format!("shape derivative star #{i}"),
            (fd - an).abs() / fd.abs().max(1e-3),
            1e-4,
        );
    }
    let star = StarDomain::random(&mut rng, [0.0, 0.0], 1.0, 6, 0.25)?;
    let r1 = interpolation_ratio(&star.clone().into(), a, cfg)?;
    let r2 = interpolation_ratio(&star.dilate(3.0).into(), a, cfg)?;
    s.push("interpolation ratio dilation invariance", rel(r2, r1), 1e-8);
    let mut worst = 0.0f64;
    for m in [10.0, 100.0, 1000.0] {
        worst = worst.max(chain_ansatz_energy(m, a)?.energy.total / m);
    }
    s.push("chain energy per mass (m <= 1e3)", worst, 25.0);
    let d = StarDomain::new([0.0, 0.0], 1.5, vec![0.0, 0.0, 0.3], vec![0.0, 0.05])?;
    let sl = Slicer::new(&d, diameter_direction(&d))?;
    let sc = 0.5 * sl.width();
    let x = cut_delta(&sl, sc, a, cfg);
    let y = cut_delta_by_energies(&sl, &d, sc, a, cfg);
    s.push(
        "cut gain: cross term vs energies",
        (x - y).abs() / x.abs().max(1.0),
        1e-6,
    );
    Ok(())
}

/// Central difference of E_ε along a random area-neutral perturbation,
/// paired with the shape-gradient pairing ∮ g φ dℓ.
pub fn shape_derivative_pair<R: Rng>(
    dom: &StarDomain<f64>,
    alpha: Alpha<f64>,
    eps: f64,
    cfg: &QuadratureConfig,
    rng: &mut R,
) -> CliResult<(f64, f64)> {
    let n = dom.modes();
    let mut da: Vec<f64> = (0..=n)
        .map(|k| rng.random_range(-1.0..1.0) / (1 + k * k) as f64)
        .collect();
    let db: Vec<f64> = (1..=n)
        .map(|k| rng.random_range(-1.0..1.0) / (1 + k * k) as f64)
        .collect();
    da[0] = 0.0;
    let theta = dom.grid();
    let series = |da: &[f64], t: f64| {
        let c: f64 = da
            .iter()
            .enumerate()
            .map(|(k, c)| c * (k as f64 * t).cos())
            .sum();
        c + db
            .iter()
            .enumerate()
            .map(|(k, c)| c * ((k + 1) as f64 * t).sin())
            .sum::<f64>()
    };
    let w: f64 = theta.iter().map(|&t| 1.0 + dom.rho(t)).sum();
    let p: f64 = theta
        .iter()
        .map(|&t| (1.0 + dom.rho(t)) * series(&da, t))
        .sum();
    da[0] = -p / w;
    let moved = |tau: f64| {
        let a = dom
            .cos_coeffs()
            .iter()
            .zip(&da)
            .map(|(x, y)| x + tau * y)
            .collect();
        let b = dom
            .sin_coeffs()
            .iter()
            .zip(&db)
            .map(|(x, y)| x + tau * y)
            .collect();
        dom.with_coeffs(dom.r0(), a, b)
    };
    let tau = 1e-4;
    let fd = (energy_eps(&moved(tau)?, alpha, eps, cfg)?.total
        - energy_eps(&moved(-tau)?, alpha, eps, cfg)?.total)
        / (2.0 * tau);
    let g = shape_gradient(dom, alpha, eps, cfg)?;
    let dr: Vec<f64> = theta.iter().map(|&t| dom.r0() * series(&da, t)).collect();
    Ok((fd, g.directional(&dr)))
}

pub fn run_suite(suite: Suite, cfg: &QuadratureConfig, seed: u64) -> CliResult<Report> {
    let mut checks = Vec::new();
    let want = |s: Suite| suite == Suite::All || suite == s;
    if want(Suite::Riesz) {
        riesz(
            &mut Sink {
                suite: "riesz",
                checks: &mut checks,
            },
            cfg,
            seed,
        )?;
    }
    if want(Suite::Critical) {
        critical(&mut Sink {
            suite: "critical",
            checks: &mut checks,
        })?;
    }
    if want(Suite::Domain) {
        domain(
            &mut Sink {
                suite: "domain",
                checks: &mut checks,
            },
            seed,
        )?;
    }
    if want(Suite::Minimize) {
        minimize(
            &mut Sink {
                suite: "minimize",
                checks: &mut checks,
            },
            cfg,
            seed,
        )?;
    }
    Ok(Report { checks })
}
