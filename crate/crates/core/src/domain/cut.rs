//! Slicing a star domain by the lines `{x·u = const}`.

use serde::Serialize;

use crate::domain::StarDomain;
use crate::error::{Error, Result};
use crate::quadrature::{Boundary, Segment};
use crate::roots::{bisect, golden_min};
use crate::scalar::{dot, norm, wrap_angle, Point, Real};

/// Cross-section lengths A(s) and swept areas V(s) along a direction.
/// `s` is measured from the supporting line where x·u is smallest, so
/// `s ∈ [0, d]` with `d` the width of the domain in that direction.
#[derive(Debug, Clone, Serialize)]
pub struct CutProfile<T> {
    pub direction: Point<T>,
    /// Value of x·u on the line s = 0.
    pub offset: T,
    pub d: T,
    pub s_grid: Vec<T>,
    pub a: Vec<T>,
    pub v: Vec<T>,
}

/// Line-slicing geometry of one star domain in one direction.
pub struct Slicer<'a, T> {
    dom: &'a StarDomain<T>,
    u: Point<T>,
    perp: Point<T>,
    thetas: Vec<T>,
    proj: Vec<T>,
    p_min: T,
    p_max: T,
}

impl<'a, T: Real> Slicer<'a, T> {
    pub fn new(dom: &'a StarDomain<T>, direction: Point<T>) -> Result<Self> {
        let n = norm(direction);
        if !(n.is_finite() && n > T::zero()) {
            return Err(Error::Precondition(
                "cut direction must be a nonzero vector".into(),
            ));
        }
        let u = [direction[0] / n, direction[1] / n];
        let perp = [-u[1], u[0]];
        let m = 4 * crate::domain::star::grid_size(dom.modes());
        let h = T::TAU() / T::from_usize_lossy(m);
        let raw: Vec<T> = (0..m).map(|j| h * T::from_usize_lossy(j)).collect();
        let pr = |t: T| dot(dom.point(t), u);

        // refine the two extremal angles so that tangent lines are exact
        let refine = |sign: T| {
            let j = (0..m)
                .max_by(|&i, &k| {
                    (sign * pr(raw[i]))
                        .partial_cmp(&(sign * pr(raw[k])))
                        .unwrap()
                })
                .unwrap_or(0);
            let tol = T::epsilon().sqrt() * T::lit(1e-3);
            let (t, _) = golden_min(|t| -sign * pr(t), raw[j] - h, raw[j] + h, tol);
            wrap_angle(t)
        };
        let t_max = refine(T::one());
        let t_min = refine(-T::one());

        let mut thetas = raw;
        thetas.push(t_min);
        thetas.push(t_max);
        thetas.sort_by(|a, b| a.partial_cmp(b).unwrap());
        thetas.dedup();
        let proj: Vec<T> = thetas.iter().map(|&t| pr(t)).collect();
        Ok(Self {
            dom,
            u,
            perp,
            thetas,
            proj,
            p_min: pr(t_min),
            p_max: pr(t_max),
        })
    }

    pub fn direction(&self) -> Point<T> {
        self.u
    }

    /// Width of the domain in the slicing direction.
    pub fn width(&self) -> T {
        self.p_max - self.p_min
    }

    pub fn offset(&self) -> T {
        self.p_min
    }

    /// Boundary angles where x·u = p_min + s, sorted in [0, 2π).
    pub fn crossings(&self, s: T) -> Vec<T> {
        let p = self.p_min + s;
        let m = self.thetas.len();
        let mut out = Vec::new();
        for j in 0..m {
            let k = (j + 1) % m;
            let (ga, gb) = (self.proj[j] - p, self.proj[k] - p);
            if (ga < T::zero()) != (gb < T::zero()) {
                let ta = self.thetas[j];
                let tb = if k == 0 {
                    self.thetas[0] + T::TAU()
                } else {
                    self.thetas[k]
                };
                let f = |t: T| dot(self.dom.point(t), self.u) - p;
                // an endpoint may sit on the line to rounding; keep the closer one
                let t = bisect(f, ta, tb).unwrap_or(if ga.abs() <= gb.abs() { ta } else { tb });
                out.push(wrap_angle(t));
            }
        }
        out.sort_by(|a, b| a.partial_cmp(b).unwrap());
        out
    }

    /// Sorted chord intervals (in the `perp` coordinate) of Ω ∩ T(s).
    pub fn chords(&self, s: T) -> Vec<(T, T)> {
        let mut t: Vec<T> = self
            .crossings(s)
            .into_iter()
            .map(|th| dot(self.dom.point(th), self.perp))
            .collect();
        t.sort_by(|a, b| a.partial_cmp(b).unwrap());
        t.chunks_exact(2).map(|c| (c[0], c[1])).collect()
    }

    /// Cross-section length A(s).
    pub fn section(&self, s: T) -> T {
        if s <= T::zero() || s >= self.width() {
            return T::zero();
        }
        self.chords(s).into_iter().map(|(a, b)| b - a).sum()
    }

    /// Boundaries of Ω_s = Ω ∩ {x·u < p_min + s} and of Ω ∖ Ω_s.
    pub fn pieces(&self, s: T, panels: usize) -> (Boundary<'a, T>, Boundary<'a, T>) {
        let p = self.p_min + s;
        let dom = self.dom;
        let cross = self.crossings(s);
        let mut lower: Vec<Segment<'a, T>> = Vec::new();
        let mut upper: Vec<Segment<'a, T>> = Vec::new();
        let arc_panels = |dt: T| {
            let f = T::from_usize_lossy(panels) * dt / T::TAU();
            f.ceil().to_usize().unwrap_or(1).max(2)
        };
        if cross.is_empty() {
            let seg = Segment::new(
                move |t| dom.point_and_normal(t),
                T::zero(),
                T::TAU(),
                panels,
            );
            if s >= self.width() {
                lower.push(seg);
            } else {
                upper.push(seg);
            }
        }
        for (i, &ta) in cross.iter().enumerate() {
            let tb = if i + 1 < cross.len() {
                cross[i + 1]
            } else {
                cross[0] + T::TAU()
            };
            let mid = (ta + tb) * T::lit(0.5);
            let seg = Segment::new(
                move |t| dom.point_and_normal(t),
                ta,
                tb,
                arc_panels(tb - ta),
            )
            .with_corners();
            if dot(dom.point(mid), self.u) < p {
                lower.push(seg);
            } else {
                upper.push(seg);
            }
        }
        let total = dom.perimeter();
        let (u, w) = (self.u, self.perp);
        for (a, b) in self.chords(s) {
            let pa = [p * u[0] + a * w[0], p * u[1] + a * w[1]];
            let pb = [p * u[0] + b * w[0], p * u[1] + b * w[1]];
            let n = (T::from_usize_lossy(panels) * (b - a) / total)
                .ceil()
                .to_usize()
                .unwrap_or(1)
                .max(2);
            lower.push(Segment::line(pa, pb, u, n));
            upper.push(Segment::line(pa, pb, [-u[0], -u[1]], n));
        }
        (Boundary::new(lower), Boundary::new(upper))
    }
}

/// Unit vector along the farthest pair of boundary grid samples.
pub fn diameter_direction<T: Real>(dom: &StarDomain<T>) -> Point<T> {
    let pts: Vec<Point<T>> = dom.grid().into_iter().map(|t| dom.point(t)).collect();
    let mut best = (T::zero(), [T::one(), T::zero()]);
    for (i, p) in pts.iter().enumerate() {
        for q in &pts[i + 1..] {
            let v = [q[0] - p[0], q[1] - p[1]];
            let l = norm(v);
            if l > best.0 {
                best = (l, [v[0] / l, v[1] / l]);
            }
        }
    }
    best.1
}

/// Sample A and V on `n_s` cosine-spaced offsets covering [0, d].
///
/// V is accumulated with the trapezoid rule in the angle φ of
/// s = d(1 − cos φ)/2; this removes the square-root behaviour of A at the
/// two supporting lines.
pub fn cut_profile<T: Real>(
    dom: &StarDomain<T>,
    direction: Point<T>,
    n_s: usize,
) -> Result<CutProfile<T>> {
    if n_s < 3 {
        return Err(Error::Precondition(format!(
            "cut profile needs n_s >= 3, got {n_s}"
        )));
    }
    let sl = Slicer::new(dom, direction)?;
    let d = sl.width();
    let half = T::lit(0.5);
    let dphi = T::PI() / T::from_usize_lossy(n_s - 1);
    let phi: Vec<T> = (0..n_s).map(|i| dphi * T::from_usize_lossy(i)).collect();
    let s_grid: Vec<T> = phi
        .iter()
        .map(|&f| d * (T::one() - f.cos()) * half)
        .collect();
    let a: Vec<T> = s_grid.iter().map(|&s| sl.section(s)).collect();
    let g: Vec<T> = a
        .iter()
        .zip(&phi)
        .map(|(&ai, &f)| ai * d * half * f.sin())
        .collect();
    let mut v = Vec::with_capacity(n_s);
    let mut acc = T::zero();
    v.push(acc);
    for i in 1..n_s {
        acc = acc + (g[i - 1] + g[i]) * half * dphi;
        v.push(acc);
    }
    Ok(CutProfile {
        direction: sl.direction(),
        offset: sl.offset(),
        d,
        s_grid,
        a,
        v,
    })
}
