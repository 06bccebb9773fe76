use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{Boundary, Segment};
use crate::scalar::{dist, Point, Real};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Disk<T> {
    pub center: Point<T>,
    pub radius: T,
}

impl<T: Real> Disk<T> {
    pub fn area(&self) -> T {
        T::PI() * self.radius * self.radius
    }
}

/// Finite family of disks with pairwise disjoint closures.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(
    try_from = "DiskSystemRaw<T>",
    bound(deserialize = "T: Real + Deserialize<'de>")
)]
pub struct DiskSystem<T> {
    disks: Vec<Disk<T>>,
}

#[derive(Deserialize)]
struct DiskSystemRaw<T> {
    disks: Vec<Disk<T>>,
}

impl<T: Real> TryFrom<DiskSystemRaw<T>> for DiskSystem<T> {
    type Error = Error;
    fn try_from(raw: DiskSystemRaw<T>) -> Result<Self> {
        DiskSystem::new(raw.disks)
    }
}

impl<T: Real> DiskSystem<T> {
    pub fn new(disks: Vec<Disk<T>>) -> Result<Self> {
        if disks.is_empty() {
            return Err(Error::InvalidDomain("empty disk system".into()));
        }
        for d in &disks {
            if !(d.radius.is_finite() && d.radius > T::zero())
                || !(d.center[0].is_finite() && d.center[1].is_finite())
            {
                return Err(Error::InvalidDomain(format!("bad disk {d:?}")));
            }
        }
        for i in 0..disks.len() {
            for j in i + 1..disks.len() {
                if dist(disks[i].center, disks[j].center) <= disks[i].radius + disks[j].radius {
                    return Err(Error::Overlap(i, j));
                }
            }
        }
        Ok(Self { disks })
    }

    pub fn single(center: Point<T>, radius: T) -> Result<Self> {
        Self::new(vec![Disk { center, radius }])
    }

    pub fn disks(&self) -> &[Disk<T>] {
        &self.disks
    }

    pub fn len(&self) -> usize {
        self.disks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.disks.is_empty()
    }

    pub fn area(&self) -> T {
        self.disks.iter().map(Disk::area).sum()
    }

    pub fn perimeter(&self) -> T {
        self.disks.iter().map(|d| T::TAU() * d.radius).sum()
    }

    pub fn diameter(&self) -> T {
        let mut best = T::zero();
        for (i, a) in self.disks.iter().enumerate() {
            best = best.max(a.radius + a.radius);
            for b in &self.disks[i + 1..] {
                best = best.max(dist(a.center, b.center) + a.radius + b.radius);
            }
        }
        best
    }

    pub fn dilate(&self, lambda: T) -> Self {
        Self {
            disks: self
                .disks
                .iter()
                .map(|d| Disk {
                    center: [d.center[0] * lambda, d.center[1] * lambda],
                    radius: d.radius * lambda,
                })
                .collect(),
        }
    }

    /// System with disk `i` removed (may be empty, so returned as a plain list).
    pub fn without(&self, i: usize) -> Result<Vec<Disk<T>>> {
        if i >= self.disks.len() {
            return Err(Error::Index {
                index: i,
                len: self.disks.len(),
            });
        }
        let mut v = self.disks.clone();
        v.remove(i);
        Ok(v)
    }

    pub fn contains(&self, p: Point<T>) -> bool {
        self.disks.iter().any(|d| dist(p, d.center) < d.radius)
    }

    pub fn bounding_box(&self) -> [T; 4] {
        let mut bb = [
            T::infinity(),
            T::infinity(),
            T::neg_infinity(),
            T::neg_infinity(),
        ];
        for d in &self.disks {
            bb[0] = bb[0].min(d.center[0] - d.radius);
            bb[1] = bb[1].min(d.center[1] - d.radius);
            bb[2] = bb[2].max(d.center[0] + d.radius);
            bb[3] = bb[3].max(d.center[1] + d.radius);
        }
        bb
    }

    pub fn boundary(&self, panels: usize) -> Boundary<'static, T> {
        Boundary::new(
            self.disks
                .iter()
                .map(|d| circle_segment(*d, panels))
                .collect(),
        )
    }
}

pub(crate) fn circle_segment<T: Real>(d: Disk<T>, panels: usize) -> Segment<'static, T> {
    let (c, r) = (d.center, d.radius);
    Segment::new(
        move |t: T| {
            let (s, co) = t.sin_cos();
            ([c[0] + r * co, c[1] + r * s], [r * co, r * s])
        },
        T::zero(),
        T::TAU(),
        panels,
    )
}
