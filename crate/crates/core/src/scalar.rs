//! Scalar abstraction shared by every numerical routine in the crate.
//!
//! All geometry, quadrature and special-function code is written against
//! [`Real`], so the same algorithms run in `f32` (cheap sweeps) and `f64`
//! (everything with a stated accuracy target). Accuracy figures quoted in
//! the docs refer to `f64`.

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use std::fmt::{Debug, Display};
use std::iter::Sum;

pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Sum + Send + Sync + 'static
{
    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Real for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + ToPrimitive
        + Debug
        + Display
        + Sum
        + Send
        + Sync
        + 'static
{
}

/// Planar point / vector.
pub type Point<T> = [T; 2];

#[inline]
pub(crate) fn sub<T: Real>(a: Point<T>, b: Point<T>) -> Point<T> {
    [a[0] - b[0], a[1] - b[1]]
}

#[inline]
pub(crate) fn dot<T: Real>(a: Point<T>, b: Point<T>) -> T {
    a[0] * b[0] + a[1] * b[1]
}

#[inline]
pub(crate) fn norm<T: Real>(a: Point<T>) -> T {
    a[0].hypot(a[1])
}

#[inline]
pub(crate) fn dist<T: Real>(a: Point<T>, b: Point<T>) -> T {
    norm(sub(a, b))
}

/// Neumaier-compensated sum; keeps long quadrature sums reproducible and
/// accurate to a few ulps regardless of length.
pub(crate) fn compensated_sum<T: Real, I: IntoIterator<Item = T>>(it: I) -> T {
    let mut s = T::zero();
    let mut c = T::zero();
    for x in it {
        let t = s + x;
        if s.abs() >= x.abs() {
            c = c + ((s - t) + x);
        } else {
            c = c + ((x - t) + s);
        }
        s = t;
    }
    s + c
}

/// Reduce an angle to [0, 2π).
#[inline]
pub(crate) fn wrap_angle<T: Real>(t: T) -> T {
    let w = t - T::TAU() * (t / T::TAU()).floor();
    if w >= T::TAU() {
        T::zero()
    } else {
        w
    }
}
