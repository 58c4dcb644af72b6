//! Coordinate charts carrying a Riemannian metric.
//!
//! A [`ChartMetric`] is a box in ℝ⁴ with optional periodic directions, an
//! orientation sign and a closure returning the metric components `g_ij` at a
//! coordinate point. Every curvature computation in the crate takes one of
//! these as input.

use std::fmt;
use std::sync::Arc;

use nalgebra::Matrix4;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub type Point = [f64; 4];
pub type Mat4 = Matrix4<f64>;

pub type MetricFn = dyn Fn(&Point) -> Mat4 + Send + Sync;
pub type ScalarFn = dyn Fn(&Point) -> f64 + Send + Sync;

/// Which ordering of the coordinate coframe counts as positively oriented.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Orientation {
    Positive,
    Negative,
}

impl Orientation {
    pub fn sign(self) -> f64 {
        match self {
            Orientation::Positive => 1.0,
            Orientation::Negative => -1.0,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Orientation::Positive => Orientation::Negative,
            Orientation::Negative => Orientation::Positive,
        }
    }
}

/// Sets where the coordinate expression of the metric degenerates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SingularLocus {
    /// The hyperplane `x[axis] = value`.
    Hyperplane { axis: usize, value: f64 },
    /// The closed ball `|x| <= radius` about the coordinate origin.
    Ball { radius: f64 },
}

impl SingularLocus {
    fn distance(&self, x: &Point) -> f64 {
        match *self {
            SingularLocus::Hyperplane { axis, value } => (x[axis] - value).abs(),
            SingularLocus::Ball { radius } => norm(x) - radius,
        }
    }
}

#[derive(Clone)]
pub struct ChartMetric {
    bounds: [(f64, f64); 4],
    periodic: [bool; 4],
    orientation: Orientation,
    singular_loci: Vec<SingularLocus>,
    components: Arc<MetricFn>,
}

impl fmt::Debug for ChartMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ChartMetric")
            .field("bounds", &self.bounds)
            .field("periodic", &self.periodic)
            .field("orientation", &self.orientation)
            .field("singular_loci", &self.singular_loci)
            .finish_non_exhaustive()
    }
}

impl ChartMetric {
    pub fn new<F>(bounds: [(f64, f64); 4], components: F) -> Result<Self>
    where
        F: Fn(&Point) -> Mat4 + Send + Sync + 'static,
    {
        Self::from_arc(bounds, Arc::new(components))
    }

    pub fn from_arc(bounds: [(f64, f64); 4], components: Arc<MetricFn>) -> Result<Self> {
        for (axis, &(lo, hi)) in bounds.iter().enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::InvalidParameter(format!(
                    "axis {axis} has an empty or non-finite interval [{lo}, {hi}]"
                )));
            }
        }
        Ok(Self {
            bounds,
            periodic: [false; 4],
            orientation: Orientation::Positive,
            singular_loci: Vec::new(),
            components,
        })
    }

    pub fn with_periodic(mut self, periodic: [bool; 4]) -> Self {
        self.periodic = periodic;
        self
    }

    pub fn with_orientation(mut self, orientation: Orientation) -> Self {
        self.orientation = orientation;
        self
    }

    pub fn with_singular_locus(mut self, locus: SingularLocus) -> Self {
        self.singular_loci.push(locus);
        self
    }

    /// Same metric, opposite orientation.
    pub fn reversed(&self) -> Self {
        let mut out = self.clone();
        out.orientation = self.orientation.reversed();
        out
    }

    pub fn bounds(&self) -> &[(f64, f64); 4] {
        &self.bounds
    }

    pub fn periodic(&self) -> &[bool; 4] {
        &self.periodic
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn singular_loci(&self) -> &[SingularLocus] {
        &self.singular_loci
    }

    pub fn extent(&self, axis: usize) -> f64 {
        let (lo, hi) = self.bounds[axis];
        hi - lo
    }

    /// Default finite-difference step: 1e-3 of the smallest box extent.
    pub fn default_step(&self) -> f64 {
        1e-3 * (0..4).map(|a| self.extent(a)).fold(f64::INFINITY, f64::min)
    }

    /// Metric components at `x`, with periodic coordinates wrapped into the box.
    pub fn metric_at(&self, x: &Point) -> Mat4 {
        let mut y = *x;
        for axis in 0..4 {
            if self.periodic[axis] {
                let (lo, hi) = self.bounds[axis];
                y[axis] = lo + (y[axis] - lo).rem_euclid(hi - lo);
            }
        }
        (self.components)(&y)
    }

    pub fn volume_density(&self, x: &Point) -> f64 {
        self.metric_at(x).determinant().max(0.0).sqrt()
    }

    /// Distance from `x` to the nearest non-periodic box face or singular
    /// locus. Negative when `x` lies outside the usable region.
    pub fn clearance(&self, x: &Point) -> f64 {
        let mut d = f64::INFINITY;
        for axis in 0..4 {
            if !self.periodic[axis] {
                let (lo, hi) = self.bounds[axis];
                d = d.min(x[axis] - lo).min(hi - x[axis]);
            }
        }
        for locus in &self.singular_loci {
            d = d.min(locus.distance(x));
        }
        d
    }

    pub fn check_reach(&self, x: &Point, reach: f64) -> Result<()> {
        if self.clearance(x) > reach {
            Ok(())
        } else {
            Err(Error::PointTooClose { point: *x, reach })
        }
    }

    /// The conformally related metric `u² g` on the same chart.
    pub fn conformal(&self, u: Arc<ScalarFn>) -> Self {
        let inner = self.components.clone();
        let mut out = self.clone();
        out.components = Arc::new(move |x: &Point| {
            let f = u(x);
            inner(x) * (f * f)
        });
        out
    }

    /// Deterministic pseudo-random interior points. Non-periodic directions
    /// and singular loci are avoided by `margin` times the respective extent.
    pub fn sample_points(&self, n: usize, seed: u64, margin: f64) -> Vec<Point> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let min_extent = (0..4).map(|a| self.extent(a)).fold(f64::INFINITY, f64::min);
        let mut out = Vec::with_capacity(n);
        let mut attempts = 0usize;
        while out.len() < n && attempts < 1000 * n.max(1) {
            attempts += 1;
            let mut x = [0.0; 4];
            for (axis, xi) in x.iter_mut().enumerate() {
                let (lo, hi) = self.bounds[axis];
                let pad = if self.periodic[axis] { 0.0 } else { margin * (hi - lo) };
                *xi = rng.random_range((lo + pad)..(hi - pad));
            }
            let locus_ok = self
                .singular_loci
                .iter()
                .all(|l| l.distance(&x) > margin * min_extent);
            if locus_ok {
                out.push(x);
            }
        }
        out
    }
}

pub(crate) fn norm(x: &Point) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flat() -> ChartMetric {
        ChartMetric::new([(0.0, 1.0); 4], |_| Mat4::identity())
            .unwrap()
            .with_periodic([true; 4])
    }

    #[test]
    fn rejects_empty_interval() {
        let err = ChartMetric::new([(0.0, 1.0), (1.0, 1.0), (0.0, 1.0), (0.0, 1.0)], |_| {
            Mat4::identity()
        });
        assert!(matches!(err, Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn periodic_wrap_agrees() {
        let m = ChartMetric::new([(0.0, 2.0); 4], |x: &Point| {
            let mut g = Mat4::identity();
            g[(0, 0)] = 2.0 + (std::f64::consts::PI * x[0]).sin();
            g
        })
        .unwrap()
        .with_periodic([true, false, false, false]);
        let a = m.metric_at(&[0.3, 1.0, 1.0, 1.0]);
        let b = m.metric_at(&[2.3, 1.0, 1.0, 1.0]);
        assert!((a - b).abs().max() < 1e-12);
    }

    #[test]
    fn clearance_respects_loci() {
        let m = ChartMetric::new([(-1.0, 1.0); 4], |_| Mat4::identity())
            .unwrap()
            .with_singular_locus(SingularLocus::Ball { radius: 0.5 });
        assert!((m.clearance(&[0.6, 0.0, 0.0, 0.0]) - 0.1).abs() < 1e-12);
        assert!(m.check_reach(&[0.6, 0.0, 0.0, 0.0], 0.2).is_err());
        assert!(flat().check_reach(&[0.0; 4], 10.0).is_ok());
    }

    #[test]
    fn samples_are_deterministic_and_interior() {
        let m = ChartMetric::new([(0.0, 1.0); 4], |_| Mat4::identity()).unwrap();
        let a = m.sample_points(20, 7, 0.1);
        let b = m.sample_points(20, 7, 0.1);
        assert_eq!(a, b);
        assert!(a.iter().all(|x| m.clearance(x) >= 0.1 - 1e-15));
    }
}
