//! Tensor-product quadrature: Gauss–Legendre on intervals, trapezoid on
//! periodic directions, optionally composed with a change of variables.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::chart::Point;
use crate::error::{Error, Result};

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, 0.0);
            for k in 1..=n {
                let p2 = p1;
                p1 = p0;
                p0 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p2) / k as f64;
            }
            dp = nf * (z * p0 - p1) / (z * z - 1.0);
            let dz = p0 / dp;
            z -= dz;
            if dz.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RuleKind {
    Gauss,
    Trapezoid,
}

/// One-dimensional rule on `[lo, hi]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule1D {
    pub kind: RuleKind,
    pub lo: f64,
    pub hi: f64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule1D {
    pub fn gauss(lo: f64, hi: f64, n: usize) -> Result<Self> {
        check(lo, hi, n)?;
        let (z, w) = gauss_legendre(n);
        let (mid, half) = (0.5 * (lo + hi), 0.5 * (hi - lo));
        Ok(Self {
            kind: RuleKind::Gauss,
            lo,
            hi,
            nodes: z.iter().map(|t| mid + half * t).collect(),
            weights: w.iter().map(|v| half * v).collect(),
        })
    }

    /// Equispaced nodes `lo + i·h`; the weights sum to the period.
    pub fn trapezoid(lo: f64, hi: f64, n: usize) -> Result<Self> {
        check(lo, hi, n)?;
        let h = (hi - lo) / n as f64;
        Ok(Self {
            kind: RuleKind::Trapezoid,
            lo,
            hi,
            nodes: (0..n).map(|i| lo + i as f64 * h).collect(),
            weights: vec![h; n],
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn with_nodes(&self, n: usize) -> Result<Self> {
        match self.kind {
            RuleKind::Gauss => Self::gauss(self.lo, self.hi, n),
            RuleKind::Trapezoid => Self::trapezoid(self.lo, self.hi, n),
        }
    }
}

fn check(lo: f64, hi: f64, n: usize) -> Result<()> {
    if n == 0 || !(lo < hi) {
        return Err(Error::InvalidParameter(format!(
            "quadrature rule needs n > 0 and lo < hi (n = {n}, [{lo}, {hi}])"
        )));
    }
    Ok(())
}

/// Map from scheme coordinates to chart coordinates with its Jacobian factor.
pub type NodeMap = dyn Fn(&Point) -> (Point, f64) + Send + Sync;

#[derive(Clone)]
pub struct QuadratureScheme {
    pub axes: [Rule1D; 4],
    map: Option<Arc<NodeMap>>,
}

impl fmt::Debug for QuadratureScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QuadratureScheme")
            .field("axes", &self.axes)
            .field("mapped", &self.map.is_some())
            .finish()
    }
}

impl QuadratureScheme {
    pub fn product(axes: [Rule1D; 4]) -> Self {
        Self { axes, map: None }
    }

    pub fn mapped(axes: [Rule1D; 4], map: Arc<NodeMap>) -> Self {
        Self { axes, map: Some(map) }
    }

    pub fn total_nodes(&self) -> usize {
        self.axes.iter().map(Rule1D::len).product()
    }

    /// Same scheme with every axis' node count multiplied by `factor`.
    pub fn refined(&self, factor: usize) -> Result<Self> {
        let mut axes = self.axes.clone();
        for a in axes.iter_mut() {
            *a = a.with_nodes(a.len() * factor)?;
        }
        Ok(Self { axes, map: self.map.clone() })
    }

    /// Chart points and weights, in lexicographic order of the axis indices.
    pub fn nodes(&self) -> Vec<(Point, f64)> {
        let [a, b, c, d] = &self.axes;
        let mut out = Vec::with_capacity(self.total_nodes());
        for i in 0..a.len() {
            for j in 0..b.len() {
                for k in 0..c.len() {
                    for l in 0..d.len() {
                        let y = [a.nodes[i], b.nodes[j], c.nodes[k], d.nodes[l]];
                        let w = a.weights[i] * b.weights[j] * c.weights[k] * d.weights[l];
                        out.push(match &self.map {
                            Some(map) => {
                                let (x, jac) = map(&y);
                                (x, w * jac)
                            }
                            None => (y, w),
                        });
                    }
                }
            }
        }
        out
    }
}

/// Fixed-shape pairwise summation; the result depends only on the order of
/// `values`, never on how they were produced.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        n if n <= 8 => values.iter().sum(),
        n => {
            let (l, r) = values.split_at(n / 2);
            pairwise_sum(l) + pairwise_sum(r)
        }
    }
}
