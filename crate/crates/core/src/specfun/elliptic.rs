//! Complete elliptic integral of the second kind.
//!
//! PARAMETER convention throughout: `elliptic_e(p) = ∫₀^{π/2} √(1 − p sin²t) dt`,
//! so an ellipse of eccentricity e has perimeter `4a·E(e²)`. Some libraries
//! take the modulus k = √p instead; callers porting formulas must square.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// E(p) for p ∈ [0, 1], by the arithmetic–geometric mean.
pub fn elliptic_e<T: Real>(p: T) -> Result<T> {
    if !p.is_finite() {
        return Err(Error::NonFinite("elliptic_e"));
    }
    if p < T::zero() || p > T::one() {
        return Err(Error::Domain {
            func: "elliptic_e",
            detail: format!("parameter p = {p} not in [0, 1]"),
        });
    }
    if p == T::one() {
        return Ok(T::one());
    }
    let two = T::lit(2.0);
    let mut a = T::one();
    let mut b = (T::one() - p).sqrt();
    let mut c = p.sqrt();
    // E = K·(1 − Σ 2^{n−1} c_n²), K = π / (2 a_∞)
    let mut weight = T::lit(0.5);
    let mut sum = weight * c * c;
    for _ in 0..64 {
        if c.abs() <= T::epsilon() * a {
            break;
        }
        let an = (a + b) / two;
        let bn = (a * b).sqrt();
        c = (a - b) / two;
        a = an;
        b = bn;
        weight = weight * two;
        sum = sum + weight * c * c;
    }
    Ok(T::FRAC_PI_2() / a * (T::one() - sum))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::FRAC_PI_2;

    fn simpson_oracle(p: f64) -> f64 {
        // composite Simpson on a smooth periodic-like integrand; 20k panels
        let n = 20_000;
        let h = FRAC_PI_2 / n as f64;
        let f = |t: f64| (1.0 - p * t.sin().powi(2)).sqrt();
        let mut s = f(0.0) + f(FRAC_PI_2);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            s += w * f(i as f64 * h);
        }
        s * h / 3.0
    }

    #[test]
    fn endpoints() {
        assert_relative_eq!(elliptic_e(0.0).unwrap(), FRAC_PI_2, max_relative = 1e-15);
        assert_eq!(elliptic_e(1.0).unwrap(), 1.0);
        // frozen from the adaptive-quadrature oracle (mpmath.ellipe(0.5))
        assert_relative_eq!(
            elliptic_e(0.5).unwrap(),
            1.350_643_881_047_675_5,
            max_relative = 1e-13
        );
    }

    #[test]
    fn matches_defining_integral() {
        for i in 0..=10 {
            let p = 0.1 * i as f64;
            let e = elliptic_e(p).unwrap();
            // Simpson degrades near p = 1 (integrand loses smoothness at t = π/2)
            let tol = if i == 10 { 1e-9 } else { 1e-10 };
            assert_relative_eq!(e, simpson_oracle(p), max_relative = tol);
        }
    }

    #[test]
    fn near_one_is_continuous() {
        let e: f64 = elliptic_e(1.0 - 1e-12).unwrap();
        assert!((e - 1.0).abs() < 1e-9);
    }

    #[test]
    fn domain_errors() {
        assert!(elliptic_e(-0.1).is_err());
        assert!(elliptic_e(1.1).is_err());
        assert!(elliptic_e(f64::NAN).is_err());
    }
}
