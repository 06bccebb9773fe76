use crate::domain::{Domain, StarDomain};
use crate::error::Result;
use crate::riesz::{nonlocal_energy, potential_many, Alpha, EnergyBreakdown, QuadratureConfig};
use crate::scalar::{compensated_sum, Real};

/// Renormalized energy `E_ε = |∂Ω| + ε∬|x−y|^{−α}`. In the returned
/// breakdown `nonlocal` already carries the factor ε.
pub fn energy_eps<T: Real>(
    dom: &StarDomain<T>,
    alpha: Alpha<T>,
    eps: T,
    cfg: &QuadratureConfig,
) -> Result<EnergyBreakdown<T>> {
    let d = Domain::Star(dom.clone());
    let nl = nonlocal_energy(&d, alpha, cfg)?;
    Ok(EnergyBreakdown::new(
        dom.perimeter(),
        eps * nl.value,
        alpha,
        dom.area(),
        eps * nl.err,
    ))
}

/// `g = κ + 2εv − μ̂` sampled on the standard θ-grid of a star domain.
#[derive(Debug, Clone)]
pub struct ShapeGradient<T> {
    pub theta: Vec<T>,
    pub g: Vec<T>,
    pub kappa: Vec<T>,
    pub potential: Vec<T>,
    /// Arc-length mean of κ + 2εv.
    pub mu: T,
    /// r(θ) and |dX/dθ| on the grid.
    pub r: Vec<T>,
    pub speed: Vec<T>,
}

impl<T: Real> ShapeGradient<T> {
    fn h(&self) -> T {
        T::TAU() / T::from_usize_lossy(self.theta.len())
    }

    /// `∮ g φ dℓ` for the radial perturbation δr (sampled on the grid),
    /// using φ dℓ = δr·r dθ.
    pub fn directional(&self, dr: &[T]) -> T {
        let terms = self
            .g
            .iter()
            .zip(dr)
            .zip(&self.r)
            .map(|((&g, &d), &r)| g * d * r);
        compensated_sum(terms) * self.h()
    }

    /// `∮ g dℓ`, zero up to quadrature error.
    pub fn mean_free_check(&self) -> T {
        compensated_sum(self.g.iter().zip(&self.speed).map(|(&g, &s)| g * s)) * self.h()
    }

    /// sup |g| / (1 + |μ̂|).
    pub fn residual(&self) -> T {
        let m = self.g.iter().fold(T::zero(), |m, &g| m.max(g.abs()));
        m / (T::one() + self.mu.abs())
    }
}

/// Shape gradient of E_ε for area-preserving normal perturbations.
pub fn shape_gradient<T: Real>(
    dom: &StarDomain<T>,
    alpha: Alpha<T>,
    eps: T,
    cfg: &QuadratureConfig,
) -> Result<ShapeGradient<T>> {
    let theta = dom.grid();
    let two = T::lit(2.0);
    let points: Vec<_> = theta.iter().map(|&t| dom.point(t)).collect();
    let potential: Vec<T> = if eps == T::zero() {
        vec![T::zero(); theta.len()]
    } else {
        potential_many(&Domain::Star(dom.clone()), alpha, &points, cfg)?
            .into_iter()
            .map(|e| e.value)
            .collect()
    };
    let kappa = theta
        .iter()
        .map(|&t| dom.curvature_at(t))
        .collect::<Result<Vec<T>>>()?;
    let speed: Vec<T> = theta.iter().map(|&t| dom.speed(t)).collect();
    let r: Vec<T> = theta.iter().map(|&t| dom.radius(t)).collect();
    let raw: Vec<T> = kappa
        .iter()
        .zip(&potential)
        .map(|(&k, &v)| k + two * eps * v)
        .collect();
    let len = compensated_sum(speed.iter().copied());
    let mu = compensated_sum(raw.iter().zip(&speed).map(|(&f, &s)| f * s)) / len;
    let g = raw.iter().map(|&f| f - mu).collect();
    Ok(ShapeGradient {
        theta,
        g,
        kappa,
        potential,
        mu,
        r,
        speed,
    })
}

/// sup-norm Euler–Lagrange residual, normalized by 1 + |μ̂|.
pub fn el_residual<T: Real>(
    dom: &StarDomain<T>,
    alpha: Alpha<T>,
    eps: T,
    cfg: &QuadratureConfig,
) -> Result<T> {
    Ok(shape_gradient(dom, alpha, eps, cfg)?.residual())
}
