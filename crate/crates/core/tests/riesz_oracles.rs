use approx::assert_relative_eq;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

use nlip::domain::{Disk, DiskSystem, Domain, EllipseDomain, StarDomain};
use nlip::riesz::*;

fn al(a: f64) -> Alpha<f64> {
    Alpha::new(a).unwrap()
}

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

#[test]
fn disk_quadrature_matches_closed_form() {
    for a in [0.5, 1.0, 1.5] {
        for r in [0.5, 1.0, 2.0] {
            let d: Domain<f64> = StarDomain::disk([0.0, 0.0], r).unwrap().into();
            let q = nonlocal_energy(&d, al(a), &cfg()).unwrap().value;
            let c = ball_energy_closed(r, al(a)).unwrap().nonlocal;
            assert_relative_eq!(q, c, max_relative = 1e-9);
        }
    }
}

#[test]
fn ellipse_quadrature_matches_closed_form() {
    for a in [0.5, 1.0, 1.5] {
        for e in [0.3, 0.6] {
            let ell = EllipseDomain::new(1.0, e).unwrap();
            let q = nonlocal_energy(&ell.into(), al(a), &cfg()).unwrap().value;
            let c = ellipse_energy_closed(1.0, e, al(a)).unwrap().nonlocal;
            assert_relative_eq!(q, c, max_relative = 1e-8);
        }
    }
}

#[test]
fn fitted_star_ellipse_matches_closed_form() {
    let ell = EllipseDomain::new(1.0, 0.5).unwrap();
    let star = ell.to_star(48).unwrap();
    let q = nonlocal_energy(&star.into(), al(1.0), &cfg())
        .unwrap()
        .value;
    let c = ellipse_energy_closed(1.0, 0.5, al(1.0)).unwrap().nonlocal;
    assert_relative_eq!(q, c, max_relative = 1e-8);
}

#[test]
fn potential_against_ball_formula() {
    let d: Domain<f64> = StarDomain::disk([0.0, 0.0], 1.0).unwrap().into();
    for a in [0.5, 1.0, 1.5] {
        for r in [0.0, 0.5, 0.9, 0.97, 1.0, 1.03, 1.1, 2.0] {
            let q = potential_at(&d, al(a), [r * 0.6, r * 0.8], &cfg())
                .unwrap()
                .value;
            let c = ball_potential_closed(r, al(a)).unwrap();
            let tol = if (r - 1.0f64).abs() < 0.05 {
                1e-4
            } else {
                1e-7
            };
            assert_relative_eq!(q, c, max_relative = tol);
        }
    }
}

#[test]
fn boundary_expansion_alpha_three_halves() {
    let a = al(1.5);
    let v0 = ball_potential_v0(a).unwrap();
    for r in [1e-2, -1e-2, 1e-3, -1e-3] {
        let dv = ball_potential_closed(1.0 + r, a).unwrap() - v0;
        let ratio = dv / boundary_expansion_leading(r, a).unwrap();
        assert!((ratio - 1.0).abs() < 0.1, "r = {r}: ratio {ratio}");
    }
}

#[test]
fn boundary_expansion_alpha_six_fifths() {
    // the remainder is only a factor |r|^{α−1} = |r|^{0.2} below the leading
    // term, so the ratio approaches 1 slowly: check the rate, then closeness
    // at a small offset
    let a = al(1.2);
    let v0 = ball_potential_v0(a).unwrap();
    let dev = |r: f64| {
        let dv = ball_potential_closed(1.0 + r, a).unwrap() - v0;
        (dv / boundary_expansion_leading(r, a).unwrap() - 1.0).abs()
    };
    for s in [1.0, -1.0] {
        let slope = (dev(s * 1e-3).ln() - dev(s * 1e-5).ln()) / (1e-3f64.ln() - 1e-5f64.ln());
        assert!((slope - 0.2).abs() < 0.02, "decay exponent {slope}");
        assert!(dev(s * 1e-6) < 0.1);
    }
}

#[test]
fn exact_dilation_law() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for a in [0.5, 1.3] {
        let s = StarDomain::random(&mut rng, [0.2, -0.1], 1.0, 6, 0.15).unwrap();
        let e1 = nonlocal_energy(&s.clone().into(), al(a), &cfg())
            .unwrap()
            .value;
        let lam = 1.7;
        let e2 = nonlocal_energy(&s.dilate(lam).into(), al(a), &cfg())
            .unwrap()
            .value;
        assert_relative_eq!(e2, lam.powf(4.0 - a) * e1, max_relative = 1e-9);
    }
}

#[test]
fn monte_carlo_agrees_on_random_shapes() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let c = QuadratureConfig {
        mc_samples: 400_000,
        ..cfg()
    };
    for i in 0..4 {
        let s = StarDomain::random(&mut rng, [0.0, 0.0], 1.0, 8, 0.2).unwrap();
        let d: Domain<f64> = s.into();
        let q = nonlocal_energy(&d, al(1.0), &c).unwrap().value;
        let mc = mc_nonlocal_oracle(
            &d,
            al(1.0),
            &QuadratureConfig {
                mc_seed: i,
                ..c.clone()
            },
        )
        .unwrap();
        assert!((q - mc.estimate).abs() < 3.5 * mc.stderr, "{q} vs {mc:?}");
    }
}

#[test]
fn monte_carlo_scaling() {
    let d: Domain<f64> = StarDomain::disk([0.0, 0.0], 1.0).unwrap().into();
    let c = QuadratureConfig {
        mc_samples: 400_000,
        ..cfg()
    };
    let a = mc_nonlocal_oracle(&d, al(1.0), &c).unwrap();
    let b = mc_nonlocal_oracle(&d.dilate(2.0), al(1.0), &c).unwrap();
    let ratio = b.estimate / a.estimate;
    let se = ratio * ((a.stderr / a.estimate).powi(2) + (b.stderr / b.estimate).powi(2)).sqrt();
    assert!((ratio - 8.0).abs() < 4.0 * se);
}

fn pair(sep: f64) -> DiskSystem<f64> {
    DiskSystem::new(vec![
        Disk {
            center: [0.0, 0.0],
            radius: 1.0,
        },
        Disk {
            center: [sep, 0.0],
            radius: 1.0,
        },
    ])
    .unwrap()
}

#[test]
fn disk_pair_energy() {
    let r = disk_system_energy(&pair(4.0), al(1.0), &cfg()).unwrap();
    assert!(r.lower < r.energy.total && r.energy.total < r.upper);
    let c = QuadratureConfig {
        mc_samples: 1_000_000,
        ..cfg()
    };
    let mc = mc_nonlocal_oracle(&pair(4.0).into(), al(1.0), &c).unwrap();
    assert!((mc.estimate - r.energy.nonlocal).abs() < 3.5 * mc.stderr);
    // far apart: interaction ≈ 2π²/d
    let far = disk_system_energy(&pair(100.0), al(1.0), &cfg()).unwrap();
    let cross = far.energy.nonlocal - 2.0 * 16.0 * PI / 3.0;
    assert_relative_eq!(cross, 2.0 * PI * PI / 100.0, max_relative = 1e-3);
    let total = total_energy(&pair(100.0).into(), al(1.0), &cfg()).unwrap();
    assert_relative_eq!(
        total.total,
        4.0 * PI + 32.0 * PI / 3.0 + cross,
        max_relative = 1e-12
    );
}

#[test]
fn f32_pipeline_runs() {
    let d: Domain<f32> = StarDomain::disk([0.0, 0.0], 1.0f32).unwrap().into();
    let c = QuadratureConfig { tol: 1e-3, ..cfg() };
    let q = nonlocal_energy(&d, Alpha::new(1.0f32).unwrap(), &c)
        .unwrap()
        .value;
    assert!((q - 16.0 * std::f32::consts::PI / 3.0).abs() / q < 1e-4);
}
