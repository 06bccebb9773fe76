//! Golden values frozen from 40-digit mpmath evaluations, plus transformation
//! identities checked as properties.

#![allow(clippy::excessive_precision)]

use approx::assert_relative_eq;
use nlip::specfun::{elliptic_e, gamma, hyp2f1};
use proptest::prelude::*;

const HYP2F1_GOLDEN: &[(f64, f64, f64, f64, f64)] = &[
    (0.5, 0.5, 2.0, 0.25, 1.0346316184453666788),
    (0.3, 0.7, 1.5, 0.45, 1.0804057522558723739),
    (0.3, 0.7, 1.5, -0.45, 0.94696343256099578145),
    (0.5, 0.5, 1.0, 0.7, 1.3212172067699615866),
    (0.5, 0.5, 1.0, 0.95, 1.8515049970729283522),
    (0.5, 0.5, 1.0, -3.0, 0.68644025030917508235),
    (0.5, 0.25, 1.0, 0.8, 1.1869565577868997531),
    (0.5, 0.75, 1.0, -0.5625, 0.84392787699484419399),
    (0.5, 0.9, 1.0, -20.0, 0.24211312287763600185),
    (-0.5, 0.5, 1.0, 0.81, 0.74592551102559711347),
    (-0.75, 0.25, 1.0, 0.99, 0.78971831268960604085),
    (0.25, 0.25, 2.0, 0.8264462809917356, 1.0351781751603771935),
    (0.75, 0.75, 2.0, 0.998001998001998, 2.0565294547084862837),
    (0.5, 0.5, 2.0, 0.9999, 1.2729535764534029244),
    (-0.5, 0.5, 1.0, 0.9999, 0.63679457697208611966),
    (0.6, 0.6, 2.0, 0.97, 1.3995705332227245602),
    (0.495, 0.505, 1.0, 0.9, 1.6411934254853474683),
    (1.2, 0.3, 0.8, 0.7, 1.8014598567719906266),
    (0.5, 1.5, 2.5, 0.93, 1.7525921712218169),
    (2.3, 1.1, 2.0, -0.8, 0.48014508659058523894),
];

#[test]
fn hyp2f1_matches_golden_table() {
    for &(a, b, c, z, want) in HYP2F1_GOLDEN {
        let got = hyp2f1(a, b, c, z).unwrap();
        assert_relative_eq!(got, want, max_relative = 1e-10);
    }
}

#[test]
fn hyp2f1_spot_value_direct_series() {
    // (0.5, 0.5; 2; 0.25): the plain series is the oracle here
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    for n in 0..200 {
        let n = n as f64;
        term *= (0.5 + n) * (0.5 + n) / ((2.0 + n) * (n + 1.0)) * 0.25;
        sum += term;
    }
    assert_relative_eq!(
        hyp2f1(0.5, 0.5, 2.0, 0.25).unwrap(),
        sum,
        max_relative = 1e-14
    );
    assert_relative_eq!(sum, 1.0346316184453666788, max_relative = 1e-14);
}

#[test]
fn elliptic_e_golden() {
    for &(p, want) in &[
        (0.1, 1.5307576368977632002),
        (0.5, 1.3506438810476755025),
        (0.64, 1.2763499431699064158),
        (0.9, 1.1047747327040733079),
        (0.99, 1.0159935450252239477),
    ] {
        assert_relative_eq!(elliptic_e(p).unwrap(), want, max_relative = 1e-13);
    }
}

#[test]
fn elliptic_e_is_hypergeometric() {
    // E(p) = (π/2) ₂F₁(−1/2, 1/2; 1; p)
    for i in 0..20 {
        let p = 0.049 * i as f64;
        let via_f = std::f64::consts::FRAC_PI_2 * hyp2f1(-0.5, 0.5, 1.0, p).unwrap();
        assert_relative_eq!(elliptic_e(p).unwrap(), via_f, max_relative = 1e-12);
    }
}

proptest! {
    #[test]
    fn gamma_recurrence(x in 0.1f64..5.0) {
        let lhs = gamma(x + 1.0).unwrap();
        let rhs = x * gamma(x).unwrap();
        prop_assert!(((lhs - rhs) / rhs).abs() <= 1e-12);
    }

    #[test]
    fn pfaff_consistency(
        a in -0.9f64..1.0,
        b in 0.05f64..1.0,
        c in 0.5f64..2.5,
        z in -4.0f64..0.95,
    ) {
        let lhs = hyp2f1(a, b, c, z).unwrap();
        let rhs = (1.0 - z).powf(-a) * hyp2f1(a, c - b, c, z / (z - 1.0)).unwrap();
        prop_assert!(((lhs - rhs) / lhs.abs().max(1e-300)).abs() <= 1e-9, "lhs {} rhs {}", lhs, rhs);
    }

    #[test]
    fn euler_transformation(
        alpha in 0.05f64..1.95,
        z in 0.0f64..0.97,
    ) {
        // call-site family of the unit-ball potential, inner branch
        let (a, b, c) = ((alpha - 2.0) / 2.0, alpha / 2.0, 1.0);
        let lhs = hyp2f1(a, b, c, z).unwrap();
        let rhs = (1.0 - z).powf(c - a - b) * hyp2f1(c - a, c - b, c, z).unwrap();
        prop_assert!(((lhs - rhs) / lhs).abs() <= 1e-9, "lhs {} rhs {}", lhs, rhs);
    }
}
