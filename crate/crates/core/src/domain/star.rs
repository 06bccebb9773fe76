use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{Boundary, Segment};
use crate::scalar::{dist, Point, Real};

/// Region bounded by the polar graph `r(θ) = r₀ (1 + ρ(θ))` about `center`,
/// with `ρ(θ) = a₀ + Σ_{k=1}^{N} a_k cos kθ + b_k sin kθ`.
///
/// `a` holds `a₀..a_N` (length N+1) and `b` holds `b₁..b_N` (length N).
/// Construction rejects coefficient sets with `1 + ρ ≤ 0` anywhere on the
/// check grid; there is no silent clamping.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(
    try_from = "StarDomainRaw<T>",
    bound(deserialize = "T: Real + Deserialize<'de>")
)]
pub struct StarDomain<T> {
    center: Point<T>,
    r0: T,
    a: Vec<T>,
    b: Vec<T>,
}

#[derive(Deserialize)]
struct StarDomainRaw<T> {
    center: Point<T>,
    r0: T,
    a: Vec<T>,
    b: Vec<T>,
}

impl<T: Real> TryFrom<StarDomainRaw<T>> for StarDomain<T> {
    type Error = Error;
    fn try_from(raw: StarDomainRaw<T>) -> Result<Self> {
        StarDomain::new(raw.center, raw.r0, raw.a, raw.b)
    }
}

/// Uniform θ-grid size used for every boundary functional of an N-mode domain.
pub fn grid_size(modes: usize) -> usize {
    (16 * modes).max(256)
}

impl<T: Real> StarDomain<T> {
    pub fn new(center: Point<T>, r0: T, a: Vec<T>, b: Vec<T>) -> Result<Self> {
        if a.len() < 2 || b.len() + 1 != a.len() {
            return Err(Error::InvalidDomain(format!(
                "need a = [a0..aN], b = [b1..bN] with N >= 1; got {} and {} coefficients",
                a.len(),
                b.len()
            )));
        }
        if !(center[0].is_finite() && center[1].is_finite()) {
            return Err(Error::InvalidDomain("non-finite center".into()));
        }
        if !(r0.is_finite() && r0 > T::zero()) {
            return Err(Error::InvalidDomain(format!(
                "base radius r0 = {r0} must be positive"
            )));
        }
        if a.iter().chain(&b).any(|c| !c.is_finite()) {
            return Err(Error::InvalidDomain(
                "non-finite Fourier coefficient".into(),
            ));
        }
        let dom = Self { center, r0, a, b };
        let m = grid_size(dom.modes());
        for j in 0..m {
            let th = dom.grid_theta(j, m);
            let one_plus = T::one() + dom.rho(th);
            if one_plus <= T::zero() {
                return Err(Error::InvalidDomain(format!(
                    "1 + rho = {one_plus} <= 0 at theta = {th}"
                )));
            }
        }
        Ok(dom)
    }

    /// Disk of radius `radius` (one zero mode so that N ≥ 1).
    pub fn disk(center: Point<T>, radius: T) -> Result<Self> {
        Self::new(center, radius, vec![T::zero(); 2], vec![T::zero()])
    }

    /// Fit an N-mode domain to a positive radial function by discrete Fourier
    /// projection on the standard grid. `r0` is the mean radius.
    pub fn from_radial_fn<F: Fn(T) -> T>(center: Point<T>, modes: usize, f: F) -> Result<Self> {
        let modes = modes.max(1);
        let m = grid_size(modes);
        let samples: Vec<T> = (0..m).map(|j| f(Self::theta_at(j, m))).collect();
        let r0 = samples.iter().copied().sum::<T>() / T::from_usize_lossy(m);
        let rho: Vec<T> = samples.iter().map(|&r| r / r0 - T::one()).collect();
        let (a, b) = project_modes(&rho, modes);
        Self::new(center, r0, a, b)
    }

    pub fn modes(&self) -> usize {
        self.b.len()
    }
    pub fn center(&self) -> Point<T> {
        self.center
    }
    pub fn r0(&self) -> T {
        self.r0
    }
    pub fn cos_coeffs(&self) -> &[T] {
        &self.a
    }
    pub fn sin_coeffs(&self) -> &[T] {
        &self.b
    }

    fn theta_at(j: usize, m: usize) -> T {
        T::TAU() * T::from_usize_lossy(j) / T::from_usize_lossy(m)
    }

    fn grid_theta(&self, j: usize, m: usize) -> T {
        Self::theta_at(j, m)
    }

    /// The standard θ-grid (uniform, `grid_size(N)` points).
    pub fn grid(&self) -> Vec<T> {
        let m = grid_size(self.modes());
        (0..m).map(|j| Self::theta_at(j, m)).collect()
    }

    /// ρ, ρ_θ, ρ_θθ at θ.
    pub fn rho_derivs(&self, theta: T) -> (T, T, T) {
        let (s1, c1) = theta.sin_cos();
        let (mut ck, mut sk) = (T::one(), T::zero());
        let mut r = self.a[0];
        let mut d1 = T::zero();
        let mut d2 = T::zero();
        for k in 1..=self.modes() {
            let c_next = ck * c1 - sk * s1;
            sk = sk * c1 + ck * s1;
            ck = c_next;
            let kf = T::from_usize_lossy(k);
            let (ak, bk) = (self.a[k], self.b[k - 1]);
            r = r + ak * ck + bk * sk;
            d1 = d1 + kf * (bk * ck - ak * sk);
            d2 = d2 - kf * kf * (ak * ck + bk * sk);
        }
        (r, d1, d2)
    }

    pub fn rho(&self, theta: T) -> T {
        self.rho_derivs(theta).0
    }

    /// r, r_θ, r_θθ at θ.
    pub fn radius_derivs(&self, theta: T) -> (T, T, T) {
        let (p, p1, p2) = self.rho_derivs(theta);
        (self.r0 * (T::one() + p), self.r0 * p1, self.r0 * p2)
    }

    pub fn radius(&self, theta: T) -> T {
        self.r0 * (T::one() + self.rho(theta))
    }

    pub fn point(&self, theta: T) -> Point<T> {
        let r = self.radius(theta);
        let (s, c) = theta.sin_cos();
        [self.center[0] + r * c, self.center[1] + r * s]
    }

    /// Boundary point and outward normal scaled by |dX/dθ|.
    pub fn point_and_normal(&self, theta: T) -> (Point<T>, Point<T>) {
        let (r, r1, _) = self.radius_derivs(theta);
        let (s, c) = theta.sin_cos();
        let x = [self.center[0] + r * c, self.center[1] + r * s];
        let nd = [r1 * s + r * c, r * s - r1 * c];
        (x, nd)
    }

    /// Arc-length density |dX/dθ| = √(r² + r_θ²).
    pub fn speed(&self, theta: T) -> T {
        let (r, r1, _) = self.radius_derivs(theta);
        r.hypot(r1)
    }

    /// Signed curvature κ = (r² + 2r_θ² − r r_θθ)/(r² + r_θ²)^{3/2}.
    pub fn curvature_at(&self, theta: T) -> Result<T> {
        let (r, r1, r2) = self.radius_derivs(theta);
        let q = r * r + r1 * r1;
        if r <= T::zero() || q <= T::zero() {
            return Err(Error::InvalidDomain(format!(
                "degenerate radius at theta = {theta}"
            )));
        }
        Ok((r * r + T::lit(2.0) * r1 * r1 - r * r2) / (q * q.sqrt()))
    }

    fn grid_sum<F: Fn(T) -> T>(&self, f: F) -> T {
        let m = grid_size(self.modes());
        let h = T::TAU() / T::from_usize_lossy(m);
        crate::scalar::compensated_sum((0..m).map(|j| f(Self::theta_at(j, m)))) * h
    }

    pub fn area(&self) -> T {
        self.grid_sum(|th| {
            let r = self.radius(th);
            r * r
        }) * T::lit(0.5)
    }

    pub fn perimeter(&self) -> T {
        self.grid_sum(|th| self.speed(th))
    }

    pub fn barycenter(&self) -> Point<T> {
        let third = T::one() / T::lit(3.0);
        let mx = self.grid_sum(|th| self.radius(th).powi(3) * th.cos()) * third;
        let my = self.grid_sum(|th| self.radius(th).powi(3) * th.sin()) * third;
        let a = self.area();
        [self.center[0] + mx / a, self.center[1] + my / a]
    }

    /// Max pairwise distance over the grid boundary samples.
    pub fn diameter(&self) -> T {
        let pts: Vec<Point<T>> = self.grid().into_iter().map(|t| self.point(t)).collect();
        diameter_of_points(&pts)
    }

    /// Uniform dilation about the origin.
    pub fn dilate(&self, lambda: T) -> Self {
        Self {
            center: [self.center[0] * lambda, self.center[1] * lambda],
            r0: self.r0 * lambda,
            a: self.a.clone(),
            b: self.b.clone(),
        }
    }

    pub fn translate(&self, by: Point<T>) -> Self {
        Self {
            center: [self.center[0] + by[0], self.center[1] + by[1]],
            ..self.clone()
        }
    }

    pub fn contains(&self, p: Point<T>) -> bool {
        let dx = p[0] - self.center[0];
        let dy = p[1] - self.center[1];
        let rr = dx.hypot(dy);
        rr < self.radius(dy.atan2(dx))
    }

    /// Axis-aligned bounding box `[xmin, ymin, xmax, ymax]` (grid samples,
    /// padded by a small margin).
    pub fn bounding_box(&self) -> [T; 4] {
        let pts: Vec<Point<T>> = self.grid().into_iter().map(|t| self.point(t)).collect();
        bbox_of_points(&pts, self.r0 * T::lit(1e-3))
    }

    pub fn boundary(&self, panels: usize) -> Boundary<'_, T> {
        Boundary::new(vec![Segment::new(
            move |t| self.point_and_normal(t),
            T::zero(),
            T::TAU(),
            panels,
        )])
    }

    /// Random smooth shape: mode k gets amplitude `amplitude`·U(−1, 1)/k².
    /// Redraws until the result is valid.
    pub fn random<R: rand::Rng>(
        rng: &mut R,
        center: Point<T>,
        r0: T,
        modes: usize,
        amplitude: f64,
    ) -> Result<Self> {
        let modes = modes.max(1);
        for _ in 0..1000 {
            let mut a = vec![T::zero(); modes + 1];
            let mut b = vec![T::zero(); modes];
            for k in 1..=modes {
                let s = amplitude / (k * k) as f64;
                a[k] = T::lit(s * rng.random_range(-1.0..1.0));
                b[k - 1] = T::lit(s * rng.random_range(-1.0..1.0));
            }
            if let Ok(d) = Self::new(center, r0, a, b) {
                return Ok(d);
            }
        }
        Err(Error::InvalidDomain(format!(
            "no valid shape drawn at amplitude {amplitude}"
        )))
    }

    /// Same shape with replaced coefficients (validated).
    pub fn with_coeffs(&self, r0: T, a: Vec<T>, b: Vec<T>) -> Result<Self> {
        Self::new(self.center, r0, a, b)
    }
}

/// Discrete Fourier projection of grid samples onto modes 0..=N.
pub fn project_modes<T: Real>(samples: &[T], modes: usize) -> (Vec<T>, Vec<T>) {
    let m = samples.len();
    let mf = T::from_usize_lossy(m);
    let two = T::lit(2.0);
    let mut a = vec![T::zero(); modes + 1];
    let mut b = vec![T::zero(); modes];
    a[0] = samples.iter().copied().sum::<T>() / mf;
    for k in 1..=modes {
        let mut sc = T::zero();
        let mut ss = T::zero();
        for (j, &v) in samples.iter().enumerate() {
            let th = T::TAU() * T::from_usize_lossy((j * k) % m) / mf;
            let (s, c) = th.sin_cos();
            sc = sc + v * c;
            ss = ss + v * s;
        }
        a[k] = two * sc / mf;
        b[k - 1] = two * ss / mf;
    }
    (a, b)
}

pub(crate) fn diameter_of_points<T: Real>(pts: &[Point<T>]) -> T {
    let mut best = T::zero();
    for (i, p) in pts.iter().enumerate() {
        for q in &pts[i + 1..] {
            best = best.max(dist(*p, *q));
        }
    }
    best
}

pub(crate) fn bbox_of_points<T: Real>(pts: &[Point<T>], pad: T) -> [T; 4] {
    let mut bb = [
        T::infinity(),
        T::infinity(),
        T::neg_infinity(),
        T::neg_infinity(),
    ];
    for p in pts {
        bb[0] = bb[0].min(p[0]);
        bb[1] = bb[1].min(p[1]);
        bb[2] = bb[2].max(p[0]);
        bb[3] = bb[3].max(p[1]);
    }
    [bb[0] - pad, bb[1] - pad, bb[2] + pad, bb[3] + pad]
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn cos_mode(k: usize, amp: f64) -> StarDomain<f64> {
        let mut a = vec![0.0; k.max(1) + 1];
        a[k] = amp;
        StarDomain::new([0.0, 0.0], 1.0, a, vec![0.0; k.max(1)]).unwrap()
    }

    #[test]
    fn unit_disk_functionals() {
        let d = StarDomain::disk([0.0, 0.0], 1.0).unwrap();
        assert_relative_eq!(d.area(), PI, max_relative = 1e-14);
        assert_relative_eq!(d.perimeter(), 2.0 * PI, max_relative = 1e-14);
        assert_relative_eq!(d.diameter(), 2.0, max_relative = 1e-12);
        for &th in &[0.0, 1.0, 4.0] {
            assert_relative_eq!(d.curvature_at(th).unwrap(), 1.0, max_relative = 1e-14);
        }
        let d3 = StarDomain::disk([0.0, 0.0], 3.0).unwrap();
        assert_relative_eq!(
            d3.curvature_at(0.3).unwrap(),
            1.0 / 3.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn first_mode_area_exact() {
        let d = cos_mode(1, 0.1);
        assert_relative_eq!(d.area(), PI * (1.0 + 0.01 / 2.0), max_relative = 1e-14);
    }

    #[test]
    fn curvature_matches_finite_differences() {
        let d = cos_mode(2, 0.05);
        // oracle: curvature of the sampled curve from central differences in θ
        let h = 1e-4;
        let p = |t: f64| d.point(t);
        let (pm, p0, pp) = (p(-h), p(0.0), p(h));
        let dx = [(pp[0] - pm[0]) / (2.0 * h), (pp[1] - pm[1]) / (2.0 * h)];
        let ddx = [
            (pp[0] - 2.0 * p0[0] + pm[0]) / (h * h),
            (pp[1] - 2.0 * p0[1] + pm[1]) / (h * h),
        ];
        let fd = (dx[0] * ddx[1] - dx[1] * ddx[0]) / (dx[0] * dx[0] + dx[1] * dx[1]).powf(1.5);
        assert_relative_eq!(d.curvature_at(0.0).unwrap(), fd, max_relative = 1e-6);
    }

    #[test]
    fn invalid_coefficients_rejected() {
        assert!(StarDomain::new([0.0, 0.0], 1.0, vec![0.0, -1.2], vec![0.0]).is_err());
        assert!(StarDomain::new([0.0, 0.0], 1.0, vec![0.0], vec![]).is_err());
        assert!(StarDomain::new([0.0, 0.0], -1.0, vec![0.0, 0.0], vec![0.0]).is_err());
        assert!(StarDomain::new([0.0, f64::NAN], 1.0, vec![0.0, 0.0], vec![0.0]).is_err());
    }

    #[test]
    fn translation_and_barycenter() {
        let d = StarDomain::disk([3.0, 4.0], 1.0).unwrap();
        let c = d.barycenter();
        assert_relative_eq!(c[0], 3.0, epsilon = 1e-13);
        assert_relative_eq!(c[1], 4.0, epsilon = 1e-13);
        assert!(cos_mode(1, 0.1).barycenter()[0] > 0.0);
    }

    #[test]
    fn json_shape() {
        let d = cos_mode(2, 0.1);
        let s = serde_json::to_string(&d).unwrap();
        assert!(
            s.contains("\"center\"")
                && s.contains("\"r0\"")
                && s.contains("\"a\"")
                && s.contains("\"b\"")
        );
        let back: StarDomain<f64> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
        let bad = r#"{"center":[0,0],"r0":1,"a":[0,-2],"b":[0]}"#;
        assert!(serde_json::from_str::<StarDomain<f64>>(bad).is_err());
    }

    #[test]
    fn radial_fit_reproduces_trig_polynomial() {
        let d = StarDomain::from_radial_fn([0.0, 0.0], 4, |t: f64| 2.0 + 0.3 * (3.0 * t).sin())
            .unwrap();
        assert_relative_eq!(d.r0(), 2.0, max_relative = 1e-14);
        assert_relative_eq!(d.sin_coeffs()[2], 0.15, max_relative = 1e-12);
        assert_relative_eq!(
            d.radius(0.7),
            2.0 + 0.3 * 2.1f64.sin(),
            max_relative = 1e-13
        );
    }
}
