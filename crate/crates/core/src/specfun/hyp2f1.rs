//! Gauss hypergeometric function ₂F₁(a, b; c; z) for real arguments, z < 1.
//!
//! Evaluation map:
//!
//! * |z| ≤ 1/2: the defining power series.
//! * z < −1/2: Pfaff, `(1−z)^{−a} ₂F₁(a, c−b; c; z/(z−1))`, which lands in (1/3, 1).
//! * 1/2 < z < 1: the z → 1−z connection formula. When c−a−b is within
//!   `NEAR_INTEGER` of an integer the two halves of that formula cancel
//!   catastrophically, so an exact integer goes through the logarithmic
//!   (digamma) form and a near-integer falls back to the direct series,
//!   which still converges geometrically for z < 1.
//!
//! Terminating cases (a or b a non-positive integer) are summed directly.

use super::gamma::{digamma, gamma, rgamma};
use crate::error::{Error, Result};
use crate::scalar::Real;

const NEAR_INTEGER: f64 = 1e-2;
const MAX_TERMS: usize = 10_000_000;

fn nonpositive_integer<T: Real>(x: T) -> bool {
    x <= T::zero() && x == x.round()
}

/// ₂F₁(a, b; c; z).
pub fn hyp2f1<T: Real>(a: T, b: T, c: T, z: T) -> Result<T> {
    for v in [a, b, c, z] {
        if !v.is_finite() {
            return Err(Error::NonFinite("hyp2f1"));
        }
    }
    if nonpositive_integer(c) {
        return Err(Error::Domain {
            func: "hyp2f1",
            detail: format!("c = {c} is a non-positive integer"),
        });
    }
    if z >= T::one() {
        return Err(Error::Domain {
            func: "hyp2f1",
            detail: format!("z = {z} must be < 1"),
        });
    }
    if z == T::zero() || a == T::zero() || b == T::zero() {
        return Ok(T::one());
    }
    if nonpositive_integer(a) || nonpositive_integer(b) {
        return series(a, b, c, z);
    }
    let half = T::lit(0.5);
    if z.abs() <= half {
        return series(a, b, c, z);
    }
    if z < T::zero() {
        let w = z / (z - T::one());
        let pref = (T::one() - z).powf(-a);
        return Ok(pref * hyp2f1(a, c - b, c, w)?);
    }
    let m = c - a - b;
    let gap = (m - m.round()).abs();
    if gap > T::lit(NEAR_INTEGER) {
        connection(a, b, c, z)
    } else if gap == T::zero() {
        integer_connection(a, b, c, z)
    } else {
        series(a, b, c, z)
    }
}

/// Direct power series with a ratio-based tail bound.
fn series<T: Real>(a: T, b: T, c: T, z: T) -> Result<T> {
    let eps = T::epsilon() * T::lit(0.5);
    let mut term = T::one();
    let mut sum = T::one();
    let mut comp = T::zero();
    for n in 0..MAX_TERMS {
        let nf = T::from_usize_lossy(n);
        let next = term * (a + nf) * (b + nf) / ((c + nf) * (nf + T::one())) * z;
        if next == T::zero() {
            return Ok(sum - comp);
        }
        // Kahan
        let y = next - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        let ratio = (next / term).abs();
        term = next;
        if ratio < T::one() {
            let tail = term.abs() * ratio / (T::one() - ratio);
            if tail <= eps * sum.abs() && term.abs() <= eps * sum.abs() {
                return Ok(sum - comp);
            }
        }
    }
    Err(Error::NonConvergence {
        func: "hyp2f1",
        terms: MAX_TERMS,
        last_term: term.to_f64_lossy(),
        partial: sum.to_f64_lossy(),
    })
}

/// z → 1−z connection for non-integer c−a−b.
fn connection<T: Real>(a: T, b: T, c: T, z: T) -> Result<T> {
    let one = T::one();
    let w = one - z;
    let m = c - a - b;
    let g_c = gamma(c)?;
    let first = g_c * gamma(m)? * rgamma(c - a)? * rgamma(c - b)?;
    let second = g_c * gamma(-m)? * rgamma(a)? * rgamma(b)?;
    let mut out = T::zero();
    if first != T::zero() {
        out = out + first * series(a, b, one - m, w)?;
    }
    if second != T::zero() {
        out = out + second * w.powf(m) * series(c - a, c - b, one + m, w)?;
    }
    Ok(out)
}

/// Logarithmic connection formula for integer c−a−b (A&S 15.3.10–15.3.12).
fn integer_connection<T: Real>(a: T, b: T, c: T, z: T) -> Result<T> {
    let m = (c - a - b).round();
    if m < T::zero() {
        // Euler transform flips the sign of c−a−b.
        let pref = (T::one() - z).powf(c - a - b);
        return Ok(pref * integer_connection(c - a, c - b, c, z)?);
    }
    let mi = m.to_usize().expect("small integer");
    let one = T::one();
    let w = one - z;
    let ln_w = w.ln();
    let g_abm = gamma(a + b + m)?;

    // finite part: Γ(m)Γ(a+b+m)/(Γ(a+m)Γ(b+m)) Σ_{n<m} (a)_n (b)_n / (n! (1−m)_n) wⁿ
    let mut finite = T::zero();
    if mi > 0 {
        let pref = gamma(m)? * g_abm * rgamma(a + m)? * rgamma(b + m)?;
        let mut t = one;
        let mut s = T::zero();
        for n in 0..mi {
            s = s + t;
            let nf = T::from_usize_lossy(n);
            t = t * (a + nf) * (b + nf) / ((nf + one) * (one - m + nf)) * w;
        }
        finite = pref * s;
    }

    // logarithmic part
    let pref = g_abm * rgamma(a)? * rgamma(b)?;
    if pref == T::zero() {
        return Ok(finite);
    }
    let sign = if mi.is_multiple_of(2) { one } else { -one }; // (z−1)^m = (−w)^m
    let wm = w.powi(mi as i32);
    // coefficient (a+m)_n (b+m)_n / (n! (n+m)!)
    let mut coef = one;
    for k in 1..=mi {
        coef = coef / T::from_usize_lossy(k);
    }
    let mut psi_n1 = digamma(one)?;
    let mut psi_nm1 = digamma(m + one)?;
    let mut psi_a = digamma(a + m)?;
    let mut psi_b = digamma(b + m)?;
    let eps = T::epsilon() * T::lit(0.5);
    let mut sum = T::zero();
    for n in 0..MAX_TERMS {
        let nf = T::from_usize_lossy(n);
        let term = coef * (ln_w - psi_n1 - psi_nm1 + psi_a + psi_b);
        sum = sum + term;
        if n > 2 && term.abs() <= eps * sum.abs() && coef.abs() <= eps * sum.abs() {
            return Ok(finite - sign * wm * pref * sum);
        }
        coef = coef * (a + m + nf) * (b + m + nf) / ((nf + one) * (nf + m + one)) * w;
        psi_n1 = psi_n1 + (nf + one).recip();
        psi_nm1 = psi_nm1 + (nf + m + one).recip();
        psi_a = psi_a + (a + m + nf).recip();
        psi_b = psi_b + (b + m + nf).recip();
    }
    Err(Error::NonConvergence {
        func: "hyp2f1",
        terms: MAX_TERMS,
        last_term: coef.to_f64_lossy(),
        partial: sum.to_f64_lossy(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn trivial_identities() {
        assert_eq!(hyp2f1(0.3, 0.7, 1.5, 0.0).unwrap(), 1.0);
        let v = hyp2f1(1.0, 1.0, 2.0, 0.5).unwrap();
        assert_relative_eq!(v, 2.0 * 2f64.ln(), max_relative = 1e-14);
        // ₂F₁(1,1;2;z) = −ln(1−z)/z across every branch
        for &z in &[-5.0, -0.9, -0.3, 0.2, 0.6, 0.9, 0.999] {
            let exact = -(1.0f64 - z).ln() / z;
            assert_relative_eq!(
                hyp2f1(1.0, 1.0, 2.0, z).unwrap(),
                exact,
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn terminating_polynomial() {
        // ₂F₁(−2, b; c; z) = 1 − 2bz/c + b(b+1)z²/(c(c+1))
        let (b, c, z) = (0.7, 1.3, -3.0);
        let exact = 1.0 - 2.0 * b * z / c + b * (b + 1.0) * z * z / (c * (c + 1.0));
        assert_relative_eq!(hyp2f1(-2.0, b, c, z).unwrap(), exact, max_relative = 1e-14);
    }

    #[test]
    fn errors() {
        assert!(hyp2f1(0.5, 0.5, -1.0, 0.1).is_err());
        assert!(hyp2f1(0.5, 0.5, 1.0, 1.0).is_err());
        assert!(hyp2f1(0.5, f64::NAN, 1.0, 0.1).is_err());
    }
}
