//! Panel quadrature on piecewise-smooth closed boundaries.
//!
//! A [`Boundary`] is a list of smooth [`Segment`]s. Each segment maps a
//! parameter interval to points on the curve together with the outward
//! normal scaled by the parametric speed, so `∮ f dℓ` and `∮ f n dℓ` are
//! plain sums over Gauss–Legendre nodes.
//!
//! Integrals against a kernel centred at a target point `x` use the
//! precomputed panel rules when `x` is well separated from a panel and
//! recursively bisect the panel otherwise. That handles both weakly
//! singular kernels (x on the curve) and near-singular ones (x close to it).

use crate::scalar::{dist, norm, Point, Real};

/// Gauss–Legendre order used on every panel.
pub const PANEL_ORDER: usize = 12;
/// A panel is "far" from x when |x − centre| > NEAR_FACTOR · panel length.
const NEAR_FACTOR: f64 = 1.5;
/// Maximum bisection depth of a near panel.
const MAX_DEPTH: usize = 26;
/// Geometric grading levels at segment ends flagged as corners.
const CORNER_LEVELS: usize = 14;

#[derive(Debug, Clone)]
pub struct GaussLegendre<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
}

impl<T: Real> GaussLegendre<T> {
    /// n-point rule on [−1, 1] (Newton iteration on P_n in f64).
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0f64; n];
        let mut weights = vec![0.0f64; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                let pn = if n == 1 { x } else { p1 };
                let pm = if n == 1 { 1.0 } else { p0 };
                dp = nf * (x * pn - pm) / (x * x - 1.0);
                let dx = pn / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n == 1 {
            nodes[0] = 0.0;
            weights[0] = 2.0;
        }
        Self {
            nodes: nodes.into_iter().map(T::lit).collect(),
            weights: weights.into_iter().map(T::lit).collect(),
        }
    }

    /// Integrate `f` over [a, b].
    pub fn integrate<F: FnMut(T) -> T>(&self, a: T, b: T, mut f: F) -> T {
        let half = (b - a) * T::lit(0.5);
        let mid = (a + b) * T::lit(0.5);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(mid + half * x))
            .sum::<T>()
            * half
    }
}

type PieceFn<'a, T> = dyn Fn(T) -> (Point<T>, Point<T>) + Send + Sync + 'a;

/// One smooth piece of a boundary.
pub struct Segment<'a, T> {
    eval: Box<PieceFn<'a, T>>,
    t0: T,
    t1: T,
    panels: usize,
    corners: bool,
}

impl<'a, T: Real> Segment<'a, T> {
    /// `eval(t)` returns `(point, outward normal × |dX/dt|)`.
    pub fn new<F>(eval: F, t0: T, t1: T, panels: usize) -> Self
    where
        F: Fn(T) -> (Point<T>, Point<T>) + Send + Sync + 'a,
    {
        Self {
            eval: Box::new(eval),
            t0,
            t1,
            panels: panels.max(1),
            corners: false,
        }
    }

    /// Grade panels geometrically toward both ends (segment meets a corner).
    pub fn with_corners(mut self) -> Self {
        self.corners = true;
        self
    }

    /// Straight segment from `p` to `q` with the given unit outward normal.
    pub fn line(p: Point<T>, q: Point<T>, normal: Point<T>, panels: usize) -> Self {
        let len = dist(p, q);
        let nd = [normal[0] * len, normal[1] * len];
        Segment::new(
            move |t: T| {
                let s = T::one() - t;
                ([s * p[0] + t * q[0], s * p[1] + t * q[1]], nd)
            },
            T::zero(),
            T::one(),
            panels,
        )
        .with_corners()
    }

    fn breakpoints(&self) -> Vec<T> {
        let n = self.panels;
        let h = (self.t1 - self.t0) / T::from_usize_lossy(n);
        let mut bp: Vec<T> = (0..=n)
            .map(|i| self.t0 + h * T::from_usize_lossy(i))
            .collect();
        bp[n] = self.t1;
        if self.corners {
            let two = T::lit(2.0);
            let mut head = Vec::with_capacity(CORNER_LEVELS);
            let mut w = h;
            for _ in 0..CORNER_LEVELS {
                w = w / two;
                head.push(self.t0 + w);
            }
            head.reverse();
            let tail: Vec<T> = head.iter().map(|&t| self.t1 - (t - self.t0)).collect();
            let mut out = vec![self.t0];
            out.extend(head);
            out.extend_from_slice(&bp[1..n]);
            out.extend(tail.into_iter().rev());
            out.push(self.t1);
            return out;
        }
        bp
    }
}

/// A quadrature node on the boundary.
#[derive(Debug, Clone, Copy)]
pub struct Node<T> {
    pub x: Point<T>,
    /// Outward unit normal times the quadrature weight (units of length).
    pub nw: Point<T>,
    /// Arc-length weight.
    pub w: T,
}

struct Panel<T> {
    seg: usize,
    ta: T,
    tb: T,
    centre: Point<T>,
    len: T,
    first: usize,
}

/// Discretised piecewise-smooth boundary.
pub struct Boundary<'a, T> {
    segments: Vec<Segment<'a, T>>,
    rule: GaussLegendre<T>,
    panels: Vec<Panel<T>>,
    nodes: Vec<Node<T>>,
    min_len: T,
}

impl<'a, T: Real> Boundary<'a, T> {
    pub fn new(segments: Vec<Segment<'a, T>>) -> Self {
        let rule = GaussLegendre::new(PANEL_ORDER);
        let mut panels = Vec::new();
        let mut nodes = Vec::new();
        for (si, seg) in segments.iter().enumerate() {
            let bp = seg.breakpoints();
            for pair in bp.windows(2) {
                let (ta, tb) = (pair[0], pair[1]);
                let first = nodes.len();
                let half = (tb - ta) * T::lit(0.5);
                let mid = (ta + tb) * T::lit(0.5);
                let mut len = T::zero();
                for (&u, &wq) in rule.nodes.iter().zip(&rule.weights) {
                    let (x, nd) = (seg.eval)(mid + half * u);
                    let w = wq * half;
                    let speed = norm(nd);
                    len = len + speed * w;
                    nodes.push(Node {
                        x,
                        nw: [nd[0] * w, nd[1] * w],
                        w: speed * w,
                    });
                }
                let centre = (seg.eval)(mid).0;
                panels.push(Panel {
                    seg: si,
                    ta,
                    tb,
                    centre,
                    len: len.abs(),
                    first,
                });
            }
        }
        Self {
            segments,
            rule,
            panels,
            nodes,
            min_len: T::zero(),
        }
    }

    /// Stop bisecting near-singular panels once they are shorter than `len`.
    pub fn with_min_panel_len(mut self, len: T) -> Self {
        self.min_len = len;
        self
    }

    pub fn nodes(&self) -> &[Node<T>] {
        &self.nodes
    }

    pub fn length(&self) -> T {
        self.nodes.iter().map(|n| n.w).sum()
    }

    /// `∮ f(y, n(y)) dℓ(y)` where `f` receives the unit outward normal
    /// already multiplied by the local weight; `f` must be linear in it.
    /// Panels close to `x` are bisected adaptively.
    pub fn integrate_near<F>(&self, x: Point<T>, f: &F) -> T
    where
        F: Fn(Point<T>, Point<T>) -> T,
    {
        let near = T::lit(NEAR_FACTOR);
        let mut acc = T::zero();
        for p in &self.panels {
            if dist(x, p.centre) > near * p.len {
                let nodes = &self.nodes[p.first..p.first + PANEL_ORDER];
                for n in nodes {
                    acc = acc + f(n.x, n.nw);
                }
            } else {
                acc = acc + self.refine(&self.segments[p.seg], p.ta, p.tb, x, f, 0);
            }
        }
        acc
    }

    fn refine<F>(&self, seg: &Segment<'a, T>, ta: T, tb: T, x: Point<T>, f: &F, depth: usize) -> T
    where
        F: Fn(Point<T>, Point<T>) -> T,
    {
        let mid = (ta + tb) * T::lit(0.5);
        let pa = (seg.eval)(ta).0;
        let pm = (seg.eval)(mid).0;
        let pb = (seg.eval)(tb).0;
        let len = dist(pa, pm) + dist(pm, pb);
        if depth >= MAX_DEPTH || len < self.min_len || dist(x, pm) > T::lit(NEAR_FACTOR) * len {
            let half = (tb - ta) * T::lit(0.5);
            let mut acc = T::zero();
            for (&u, &wq) in self.rule.nodes.iter().zip(&self.rule.weights) {
                let (y, nd) = (seg.eval)(mid + half * u);
                let w = wq * half;
                acc = acc + f(y, [nd[0] * w, nd[1] * w]);
            }
            return acc;
        }
        self.refine(seg, ta, mid, x, f, depth + 1) + self.refine(seg, mid, tb, x, f, depth + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn unit_circle<'a>(panels: usize) -> Boundary<'a, f64> {
        Boundary::new(vec![Segment::new(
            |t: f64| ([t.cos(), t.sin()], [t.cos(), t.sin()]),
            0.0,
            2.0 * PI,
            panels,
        )])
    }

    #[test]
    fn gauss_legendre_exact_for_polynomials() {
        let gl = GaussLegendre::<f64>::new(PANEL_ORDER);
        let s: f64 = gl.weights.iter().sum();
        assert_relative_eq!(s, 2.0, max_relative = 1e-14);
        // degree 2n−1 exactness
        let v = gl.integrate(0.0, 1.0, |x| x.powi(23));
        assert_relative_eq!(v, 1.0 / 24.0, max_relative = 1e-13);
        let one = GaussLegendre::<f64>::new(1);
        assert_relative_eq!(one.integrate(0.0, 2.0, |x| 3.0 * x), 6.0);
    }

    #[test]
    fn circle_length_and_flux() {
        let b = unit_circle(16);
        assert_relative_eq!(b.length(), 2.0 * PI, max_relative = 1e-14);
        // divergence theorem: ∮ x·n dℓ = 2·area
        let flux: f64 = b
            .nodes()
            .iter()
            .map(|n| n.x[0] * n.nw[0] + n.x[1] * n.nw[1])
            .sum();
        assert_relative_eq!(flux, 2.0 * PI, max_relative = 1e-14);
    }

    #[test]
    fn weakly_singular_on_curve() {
        // ∮ |x − y|^{1/2} dℓ(y) on the unit circle at x = (1, 0):
        // |x−y| = 2 sin(t/2) → ∫₀^{2π} (2 sin(t/2))^{1/2} dt = 4√2·∫₀^{π/2} sin^{1/2}u du
        let b = unit_circle(16);
        let x = [1.0, 0.0];
        let v = b.integrate_near(x, &|y: Point<f64>, nw: Point<f64>| {
            let w = norm(nw);
            dist(x, y).sqrt() * w
        });
        // ∫₀^{π/2} √sin u du = √(2π^3)/Γ(1/4)^2 · ... use the Beta form: B(3/4,1/2)/2
        let beta = crate::specfun::gamma(0.75).unwrap() * crate::specfun::gamma(0.5).unwrap()
            / crate::specfun::gamma(1.25).unwrap();
        let exact = 4.0 * 2f64.sqrt() * beta / 2.0;
        assert_relative_eq!(v, exact, max_relative = 1e-12);
    }

    #[test]
    fn corner_grading_line() {
        let s = Segment::line([0.0, 0.0], [2.0, 0.0], [0.0, -1.0], 4);
        let b = Boundary::new(vec![s]);
        assert_relative_eq!(b.length(), 2.0, max_relative = 1e-14);
        let v = b.integrate_near([0.0, 0.0], &|y: Point<f64>, nw| y[0].sqrt() * norm(nw));
        assert_relative_eq!(v, 2.0 / 3.0 * 2f64.powf(1.5), max_relative = 1e-12);
    }
}
