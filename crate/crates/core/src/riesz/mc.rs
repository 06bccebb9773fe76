use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::riesz::{Alpha, QuadratureConfig};
use crate::scalar::Real;

/// Monte-Carlo estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate<T> {
    pub estimate: T,
    pub stderr: T,
}

const CHUNK: usize = 1 << 14;

/// Independent estimate of `∬_{Ω×Ω} |x−y|^{−α}`.
///
/// X is uniform in the bounding box B and the offset Z = Y − X has density
/// ∝ |z|^{−α} on the disk of radius D (the box diagonal, which exceeds every
/// pair distance in Ω). The importance weight is then the constant
/// |B|·2πD^{2−α}/(2−α), so the estimator is that constant times the hit
/// rate of {X ∈ Ω, Y ∈ Ω}: unbiased with bounded variance for every α < 2.
///
/// Samples are drawn in fixed-size chunks, chunk k from the ChaCha stream k
/// of `mc_seed`, so the result does not depend on thread count.
pub fn mc_nonlocal_oracle<T: Real>(
    dom: &Domain<T>,
    alpha: Alpha<T>,
    cfg: &QuadratureConfig,
) -> Result<McEstimate<T>> {
    if cfg.mc_samples < 10_000 {
        return Err(Error::Precondition(format!(
            "mc_samples = {} must be at least 1e4",
            cfg.mc_samples
        )));
    }
    let a = alpha.get().to_f64_lossy();
    let bb = dom.bounding_box();
    let [x0, y0, x1, y1] = bb.map(|v| v.to_f64_lossy());
    let (w, h) = (x1 - x0, y1 - y0);
    let diag = w.hypot(h);
    let weight = w * h * std::f64::consts::TAU * diag.powf(2.0 - a) / (2.0 - a);
    let inv = 1.0 / (2.0 - a);
    let n = cfg.mc_samples;
    let chunks = n.div_ceil(CHUNK);

    let hits: Vec<u64> = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.mc_seed);
            rng.set_stream(k as u64);
            let m = CHUNK.min(n - k * CHUNK);
            let mut count = 0u64;
            for _ in 0..m {
                let px = x0 + w * rng.random::<f64>();
                let py = y0 + h * rng.random::<f64>();
                let rho = diag * rng.random::<f64>().powf(inv);
                let (s, c) = (std::f64::consts::TAU * rng.random::<f64>()).sin_cos();
                let p = [T::lit(px), T::lit(py)];
                let q = [T::lit(px + rho * c), T::lit(py + rho * s)];
                if dom.contains(p) && dom.contains(q) {
                    count += 1;
                }
            }
            count
        })
        .collect();
    let total: u64 = hits.iter().sum();
    let p = total as f64 / n as f64;
    let est = weight * p;
    let se = weight * (p * (1.0 - p) / n as f64).sqrt();
    Ok(McEstimate {
        estimate: T::lit(est),
        stderr: T::lit(se),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::StarDomain;
    use std::f64::consts::PI;

    #[test]
    fn disk_and_determinism() {
        let d: Domain<f64> = StarDomain::disk([0.0, 0.0], 1.0).unwrap().into();
        let cfg = QuadratureConfig {
            mc_samples: 200_000,
            ..Default::default()
        };
        let al = Alpha::new(1.0).unwrap();
        let a = mc_nonlocal_oracle(&d, al, &cfg).unwrap();
        let b = mc_nonlocal_oracle(&d, al, &cfg).unwrap();
        assert_eq!(a, b);
        assert!((a.estimate - 16.0 * PI / 3.0).abs() < 4.0 * a.stderr);
        let few = QuadratureConfig {
            mc_samples: 10,
            ..Default::default()
        };
        assert!(mc_nonlocal_oracle(&d, al, &few).is_err());
    }
}
