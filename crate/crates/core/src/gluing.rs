//! Gluing ALE and neck metrics into a base chart with a bump function, and
//! the curvature bookkeeping of the transition annuli.

use std::sync::Arc;

use serde::Serialize;

use crate::bianchi::cartesian_chart;
use crate::chart::{norm, ChartMetric, Mat4, Orientation, Point, SingularLocus};
use crate::curvature::jet::jet;
use crate::error::{Error, Result};
use crate::functionals::{budget, sample_scheme, CurvatureBudget, NodeSample};
use crate::zoo::{annulus_scheme, bolt_profile, wormhole_profile};

/// Orientation in which the Cartesian ALE inserts have `W₊ = 0`. The
/// left-invariant forms used here have the opposite handedness to the
/// Euler-angle forms of the zoo charts.
pub const ALE_CARTESIAN_ORIENTATION: Orientation = Orientation::Positive;

fn smooth_step_kernel(y: f64) -> f64 {
    if y > 0.0 {
        (-1.0 / y).exp()
    } else {
        0.0
    }
}

/// Smooth bump: `0` on `(0, ½]`, `1` on `[1, ∞)`, strictly increasing and
/// point-symmetric about `¾` in between.
pub fn bump(x: f64) -> f64 {
    if x <= 0.5 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let a = smooth_step_kernel(2.0 * x - 1.0);
    let b = smooth_step_kernel(2.0 - 2.0 * x);
    a / (a + b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GlueKind {
    Eh,
    Burns,
    Wormhole,
}

impl GlueKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "eh" => Ok(GlueKind::Eh),
            "burns" => Ok(GlueKind::Burns),
            "wormhole" => Ok(GlueKind::Wormhole),
            other => Err(Error::InvalidParameter(format!("unknown glue kind `{other}`"))),
        }
    }

    /// Length scale paired with a gluing radius in the standard sequences.
    pub fn sequence_eps(self, rho: f64) -> f64 {
        match self {
            GlueKind::Eh | GlueKind::Burns => rho * rho,
            GlueKind::Wormhole => rho.powi(4),
        }
    }
}

/// A base metric with an insert glued in around the origin.
#[derive(Debug, Clone)]
pub struct GluedMetric {
    pub kind: GlueKind,
    pub base: ChartMetric,
    pub insert: ChartMetric,
    pub rho: f64,
    pub eps: f64,
    pub metric: ChartMetric,
    /// Second base, pulled back by `x ↦ εx/|x|²` (wormholes only).
    pub far_side: Option<ChartMetric>,
}

/// Unit S⁴ in conformal normal coordinates, `δ/(1 + |x|²/4)²`.
pub fn normal_sphere_base() -> ChartMetric {
    ChartMetric::new([(-2.0, 2.0); 4], |x: &Point| {
        let q: f64 = x.iter().map(|v| v * v).sum();
        Mat4::identity() / (1.0 + 0.25 * q).powi(2)
    })
    .expect("static bounds")
}

fn check_base(base: &ChartMetric, half_width: f64) -> Result<()> {
    let fits = base.bounds().iter().all(|&(lo, hi)| lo <= -half_width && hi >= half_width);
    if fits {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "base chart must contain the cube of half-width {half_width}"
        )))
    }
}

fn check_scales(rho: f64, eps: f64) -> Result<()> {
    if !(rho > 0.0 && eps > 0.0 && rho.is_finite()) {
        return Err(Error::InvalidParameter(format!("need ρ, ε > 0 (ρ = {rho}, ε = {eps})")));
    }
    Ok(())
}

fn blend(base: &ChartMetric, insert: &ChartMetric, rho: f64, x: &Point) -> Mat4 {
    let r = norm(x);
    if r >= rho {
        base.metric_at(x)
    } else if r <= 0.5 * rho {
        insert.metric_at(x)
    } else {
        let f = bump(r / rho);
        base.metric_at(x) * f + insert.metric_at(x) * (1.0 - f)
    }
}

fn glue_ale(kind: GlueKind, base: &ChartMetric, rho: f64, eps: f64, power: i32) -> Result<GluedMetric> {
    check_scales(rho, eps)?;
    if eps > 0.25 * rho {
        return Err(Error::InvalidParameter(format!(
            "length scale must satisfy ε ≤ ρ/4 (ρ = {rho}, ε = {eps})"
        )));
    }
    let half = 4.0 * rho;
    check_base(base, half)?;
    let insert = cartesian_chart(bolt_profile(eps, power), half, eps)?.with_orientation(ALE_CARTESIAN_ORIENTATION);
    let (b, i) = (base.clone(), insert.clone());
    let metric = ChartMetric::new([(-half, half); 4], move |x: &Point| blend(&b, &i, rho, x))?
        .with_orientation(ALE_CARTESIAN_ORIENTATION)
        .with_singular_locus(SingularLocus::Ball { radius: eps });
    Ok(GluedMetric {
        kind,
        base: base.clone(),
        insert,
        rho,
        eps,
        metric,
        far_side: None,
    })
}

/// Eguchi–Hanson with length scale `ε` glued into `base` on `ϱ ∈ [ρ/2, ρ]`.
pub fn glue_eguchi_hanson(base: &ChartMetric, rho: f64, eps: f64) -> Result<GluedMetric> {
    glue_ale(GlueKind::Eh, base, rho, eps, 4)
}

/// Burns metric glued in the same way.
pub fn glue_burns(base: &ChartMetric, rho: f64, eps: f64) -> Result<GluedMetric> {
    glue_ale(GlueKind::Burns, base, rho, eps, 2)
}

/// Components of `ι* m` for the inversion `ι(x) = εx/|x|²`.
fn inverted(m: &ChartMetric, eps: f64, x: &Point) -> Mat4 {
    let q: f64 = x.iter().map(|v| v * v).sum();
    let y = x.map(|v| eps * v / q);
    let xv = nalgebra::Vector4::from_row_slice(x);
    let jac = (Mat4::identity() / q - xv * xv.transpose() * (2.0 / (q * q))) * eps;
    jac.transpose() * m.metric_at(&y) * jac
}

/// Two bases joined by the neck `(1 + ε/|x|²)² δ`: `m1` outside `ϱ = ρ`,
/// the pull-back of `m2` by the neck inversion inside `ϱ = ε/ρ`.
pub fn glue_wormhole(m1: &ChartMetric, m2: &ChartMetric, rho: f64, eps: f64) -> Result<GluedMetric> {
    check_scales(rho, eps)?;
    if eps > 0.25 * rho * rho {
        return Err(Error::InvalidParameter(format!(
            "neck must satisfy ε ≤ ρ²/4 so the two transition annuli are disjoint (ρ = {rho}, ε = {eps})"
        )));
    }
    let half = 4.0 * rho;
    check_base(m1, half)?;
    check_base(m2, half)?;
    let inner = eps / (2.0 * rho);
    let neck = cartesian_chart(wormhole_profile(eps), half, inner)?;
    let (a, b, n) = (m1.clone(), m2.clone(), neck.clone());
    let metric = ChartMetric::new([(-half, half); 4], move |x: &Point| {
        let r = norm(x);
        let inner_rho = eps / rho;
        if r >= inner_rho {
            blend(&a, &n, rho, x)
        } else if r <= 0.5 * inner_rho {
            // mirror image of the outer transition
            inverted(&b, eps, x)
        } else {
            let f = bump(eps / (r * rho));
            inverted(&b, eps, x) * f + n.metric_at(x) * (1.0 - f)
        }
    })?
    .with_singular_locus(SingularLocus::Ball { radius: inner });
    Ok(GluedMetric {
        kind: GlueKind::Wormhole,
        base: m1.clone(),
        insert: neck,
        rho,
        eps,
        metric,
        far_side: Some(m2.clone()),
    })
}

/// Glue with the default base(s).
pub fn glue_default(kind: GlueKind, rho: f64, eps: f64) -> Result<GluedMetric> {
    let base = normal_sphere_base();
    match kind {
        GlueKind::Eh => glue_eguchi_hanson(&base, rho, eps),
        GlueKind::Burns => glue_burns(&base, rho, eps),
        GlueKind::Wormhole => glue_wormhole(&base, &base, rho, eps),
    }
}

/// Curvature bookkeeping on the transition annuli.
#[derive(Debug, Clone, Serialize)]
pub struct AnnulusReport {
    pub kind: GlueKind,
    pub rho: f64,
    pub eps: f64,
    pub budget: CurvatureBudget,
    pub sup_sectional: f64,
    pub nodes: usize,
}

impl GluedMetric {
    /// `(inner, outer)` radii of each transition annulus.
    pub fn annuli(&self) -> Vec<(f64, f64)> {
        let mut out = vec![(0.5 * self.rho, self.rho)];
        if self.kind == GlueKind::Wormhole {
            let r = self.eps / self.rho;
            out.push((0.5 * r, r));
        }
        out
    }

    /// Finite-difference step near `x`, tied to the size of the annulus.
    pub fn step_at(&self, x: &Point) -> f64 {
        let r = norm(x);
        let scale = if self.kind == GlueKind::Wormhole && r < 2.0 * self.eps / self.rho {
            self.eps / self.rho
        } else {
            self.rho
        };
        (5e-3 * scale).min(self.metric.clearance(x) / 5.0)
    }

    fn annulus_samples(&self, n_radial: usize) -> Result<Vec<NodeSample>> {
        let mut all = Vec::new();
        let step = |_: &ChartMetric, x: &Point| self.step_at(x);
        for (r0, r1) in self.annuli() {
            let scheme = annulus_scheme(r0, r1, n_radial, 6, 4)?;
            all.extend(sample_scheme(&self.metric, &scheme, step)?);
        }
        Ok(all)
    }

    pub fn annulus_report(&self) -> Result<AnnulusReport> {
        self.annulus_report_with(24)
    }

    pub fn annulus_report_with(&self, n_radial: usize) -> Result<AnnulusReport> {
        let samples = self.annulus_samples(n_radial)?;
        let sup = samples
            .iter()
            .map(|s| s.curvature.max_abs_sectional())
            .fold(0.0, f64::max);
        Ok(AnnulusReport {
            kind: self.kind,
            rho: self.rho,
            eps: self.eps,
            budget: CurvatureBudget::from_samples(&samples, true),
            sup_sectional: sup,
            nodes: samples.len(),
        })
    }

    /// `g_{0,ρ}`: the base blended with flat space (the `ε → 0` limit of the
    /// ALE gluings).
    pub fn limit_metric(&self) -> Result<ChartMetric> {
        let half = 4.0 * self.rho;
        let flat = ChartMetric::new([(-half, half); 4], |_: &Point| Mat4::identity())?;
        let (b, rho) = (self.base.clone(), self.rho);
        ChartMetric::new([(-half, half); 4], move |x: &Point| blend(&b, &flat, rho, x))
            .map(|m| m.with_orientation(Orientation::Positive))
    }
}

/// Largest difference of components, first and second derivatives of two
/// metrics over `points`.
pub fn c2_distance(a: &ChartMetric, b: &ChartMetric, points: &[Point], h: f64) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for x in points {
        let d = jet(|y: &Point| Ok(a.metric_at(y) - b.metric_at(y)), x, h)?;
        worst = worst.max(d.value.abs().max());
        for i in 0..4 {
            worst = worst.max(d.d1[i].abs().max());
            for j in 0..4 {
                worst = worst.max(d.d2[i][j].abs().max());
            }
        }
    }
    Ok(worst)
}

/// Points spread over the annulus `[ρ/2, ρ]`, used for C² comparisons.
pub fn annulus_probe_points(rho: f64, n: usize) -> Vec<Point> {
    let golden = 0.5 * (1.0 + 5f64.sqrt());
    (0..n)
        .map(|k| {
            let t = (k as f64 + 0.5) / n as f64;
            let r = rho * (0.5 + 0.5 * t);
            let theta = std::f64::consts::PI * ((k as f64 * golden).fract() * 0.8 + 0.1);
            let (phi, psi) = (k as f64 * 2.4, k as f64 * 1.3);
            crate::bianchi::euler_to_cartesian(&[r, theta, phi, psi]).0
        })
        .collect()
}

/// Members of the standard gluing sequence `ρ_j = 2^{-j}`.
pub fn gluing_sequence(kind: GlueKind, js: &[i32]) -> Result<Vec<AnnulusReport>> {
    js.iter()
        .map(|&j| {
            let rho = 2f64.powi(-j);
            glue_default(kind, rho, kind.sequence_eps(rho))?.annulus_report()
        })
        .collect()
}

/// Family used by the anorexic experiment for glued metrics, keyed by `ρ`.
pub fn glued_family(kind: GlueKind) -> Family {
    Arc::new(move |rho: f64| Ok(glue_default(kind, rho, kind.sequence_eps(rho))?.annulus_report()?.budget))
}

pub type Family = Arc<dyn Fn(f64) -> Result<CurvatureBudget> + Send + Sync>;

pub const FAMILY_NAMES: [&str; 6] = ["s2xt2", "s3xs1", "t4", "eh", "burns", "wormhole"];

/// Members of the named anorexic family: torus area for `s2xt2`, circle
/// radius for `s3xs1`, side length for `t4`, and the gluing radius `ρ` for
/// the glued families.
pub fn family(name: &str) -> Result<Family> {
    let f: Family = match name {
        "s2xt2" => Arc::new(|a: f64| budget(&crate::zoo::product_s2_t2(1.0, a)?)),
        "s3xs1" => Arc::new(|r: f64| budget(&crate::zoo::product_s3_s1(r)?)),
        "t4" => Arc::new(|l: f64| budget(&crate::zoo::flat_torus([l; 4])?)),
        other => glued_family(GlueKind::parse(other).map_err(|_| {
            Error::InvalidParameter(format!("unknown family `{other}`; known: {}", FAMILY_NAMES.join(", ")))
        })?),
    };
    Ok(f)
}
