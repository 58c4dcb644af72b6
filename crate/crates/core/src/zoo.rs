//! Explicit model metrics with their known invariants.
//!
//! Every entry carries a chart for pointwise work. Compact entries also carry
//! a list of [`Patch`]es: charts paired with quadrature schemes whose regions
//! partition the manifold up to measure zero, each chosen so that the metric
//! stays uniformly non-degenerate on it.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::bianchi::{euler_chart, euler_components, euler_to_cartesian, Profile};
use crate::chart::{ChartMetric, Mat4, Orientation, Point};
use crate::curvature::{effective_step, evaluate, CurvatureDecomposition};
use crate::error::{Error, Result};
use crate::quadrature::{QuadratureScheme, Rule1D};

/// Known facts about an entry.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct ExactRecord {
    pub chi: Option<i64>,
    pub tau: Option<i64>,
    pub s_exact: Option<f64>,
    pub einstein: bool,
    pub sfasd: bool,
    pub noncompact: bool,
}

/// A region of the manifold, the chart covering it and a rule on it.
#[derive(Debug, Clone)]
pub struct Patch {
    pub metric: ChartMetric,
    pub scheme: QuadratureScheme,
}

impl Patch {
    fn reversed(&self) -> Self {
        Self {
            metric: self.metric.reversed(),
            scheme: self.scheme.clone(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ZooEntry {
    pub name: String,
    pub metric: ChartMetric,
    pub patches: Vec<Patch>,
    pub exact: ExactRecord,
    /// Fraction of each non-periodic extent kept clear when sampling.
    pub sample_margin: f64,
}

pub const ENTRY_NAMES: [&str; 8] = ["s4", "t4", "cp2-fs", "eh", "burns", "wormhole", "s2xt2", "s3xs1"];

/// Entry with its default parameters, looked up by CLI name.
pub fn by_name(name: &str) -> Result<ZooEntry> {
    match name {
        "s4" => round_sphere(1.0),
        "t4" => flat_torus([1.0; 4]),
        "cp2-fs" => Ok(fubini_study()),
        "eh" => eguchi_hanson(1.0, 4.0),
        "burns" => burns(1.0, 4.0),
        "wormhole" => wormhole(1.0),
        "s2xt2" => product_s2_t2(1.0, 1.0),
        "s3xs1" => product_s3_s1(1.0),
        other => Err(Error::InvalidParameter(format!(
            "unknown zoo entry `{other}` (expected one of {})",
            ENTRY_NAMES.join(", ")
        ))),
    }
}

impl ZooEntry {
    pub fn is_compact(&self) -> bool {
        !self.exact.noncompact
    }

    pub fn scheme(&self) -> Option<&QuadratureScheme> {
        self.patches.first().map(|p| &p.scheme)
    }

    /// Same metric with the opposite orientation.
    pub fn reversed(&self) -> Self {
        let mut exact = self.exact;
        exact.tau = exact.tau.map(|t| -t);
        exact.sfasd = false;
        Self {
            name: format!("{}-reversed", self.name),
            metric: self.metric.reversed(),
            patches: self.patches.iter().map(Patch::reversed).collect(),
            exact,
            sample_margin: self.sample_margin,
        }
    }

    /// Node counts on every patch multiplied by `factor`.
    pub fn refined(&self, factor: usize) -> Result<Self> {
        let mut out = self.clone();
        for p in out.patches.iter_mut() {
            p.scheme = p.scheme.refined(factor)?;
        }
        Ok(out)
    }

    pub fn samples(&self, n: usize, seed: u64) -> Vec<Point> {
        self.metric.sample_points(n, seed, self.sample_margin)
    }

    pub fn decompose_at(&self, x: &Point) -> Result<CurvatureDecomposition> {
        evaluate(&self.metric, x, effective_step(&self.metric, x))
    }

    /// Checks the exact record at `n` sample points and returns the list of
    /// violated claims (empty when everything holds).
    pub fn verify_exact(&self, n: usize, seed: u64) -> Result<Vec<String>> {
        let mut failures = Vec::new();
        for x in self.samples(n, seed) {
            let d = self.decompose_at(&x)?;
            if let Some(s) = self.exact.s_exact {
                if (d.s - s).abs() > 1e-5 {
                    failures.push(format!("s = {} at {x:?}, expected {s}", d.s));
                }
            }
            if self.exact.einstein && d.norm_sq_ric_tf >= 1e-10 {
                failures.push(format!("|r̊|² = {:e} at {x:?}", d.norm_sq_ric_tf));
            }
            if self.exact.sfasd && d.s * d.s + d.norm_sq_w_plus >= 1e-10 {
                failures.push(format!("s² + |W₊|² = {:e} at {x:?}", d.s * d.s + d.norm_sq_w_plus));
            }
        }
        Ok(failures)
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must be positive, got {v}")))
    }
}

/// Ball `|x| ≤ radius` in polar form mapped to Cartesian nodes.
fn ball_scheme(radius: f64, n_radial: usize, n_polar: usize, n_angle: usize) -> Result<QuadratureScheme> {
    Ok(QuadratureScheme::mapped(
        [
            Rule1D::gauss(0.0, radius, n_radial)?,
            Rule1D::gauss(0.0, PI, n_polar)?,
            Rule1D::trapezoid(0.0, 2.0 * PI, n_angle)?,
            Rule1D::trapezoid(0.0, 4.0 * PI, n_angle)?,
        ],
        Arc::new(euler_to_cartesian),
    ))
}

/// Annulus `r0 ≤ |x| ≤ r1` mapped to Cartesian nodes.
pub fn annulus_scheme(r0: f64, r1: f64, n_radial: usize, n_polar: usize, n_angle: usize) -> Result<QuadratureScheme> {
    Ok(QuadratureScheme::mapped(
        [
            Rule1D::gauss(r0, r1, n_radial)?,
            Rule1D::gauss(0.0, PI, n_polar)?,
            Rule1D::trapezoid(0.0, 2.0 * PI, n_angle)?,
            Rule1D::trapezoid(0.0, 4.0 * PI, n_angle)?,
        ],
        Arc::new(euler_to_cartesian),
    ))
}

/// Stereographic chart `4r⁴/(r² + |x|²)² δ` of the round sphere of radius `r`.
pub fn stereographic_sphere(radius: f64) -> Result<ChartMetric> {
    positive("radius", radius)?;
    let r2 = radius * radius;
    ChartMetric::new([(-2.0 * radius, 2.0 * radius); 4], move |x: &Point| {
        let q: f64 = x.iter().map(|v| v * v).sum();
        Mat4::identity() * (4.0 * r2 * r2 / ((r2 + q) * (r2 + q)))
    })
}

/// Round S⁴, integrated over its two stereographic hemispheres.
pub fn round_sphere(radius: f64) -> Result<ZooEntry> {
    let chart = stereographic_sphere(radius)?;
    let scheme = ball_scheme(radius, 16, 8, 4)?;
    // the southern chart differs from the northern one by an inversion
    let patches = vec![
        Patch { metric: chart.clone(), scheme: scheme.clone() },
        Patch { metric: chart.reversed(), scheme },
    ];
    Ok(ZooEntry {
        name: "s4".into(),
        metric: chart,
        patches,
        exact: ExactRecord {
            chi: Some(2),
            tau: Some(0),
            s_exact: Some(12.0 / (radius * radius)),
            einstein: true,
            ..Default::default()
        },
        sample_margin: 0.1,
    })
}

pub fn flat_torus(periods: [f64; 4]) -> Result<ZooEntry> {
    for p in periods {
        positive("period", p)?;
    }
    let bounds = periods.map(|p| (0.0, p));
    let chart = ChartMetric::new(bounds, |_: &Point| Mat4::identity())?.with_periodic([true; 4]);
    let axes = [0, 1, 2, 3].map(|i| Rule1D::trapezoid(0.0, periods[i], 4));
    let [a, b, c, d] = axes;
    let scheme = QuadratureScheme::product([a?, b?, c?, d?]);
    Ok(ZooEntry {
        name: "t4".into(),
        metric: chart.clone(),
        patches: vec![Patch { metric: chart, scheme }],
        exact: ExactRecord {
            chi: Some(0),
            tau: Some(0),
            s_exact: Some(0.0),
            einstein: true,
            sfasd: true,
            noncompact: false,
        },
        sample_margin: 0.0,
    })
}

/// Fubini–Study metric in the affine chart, real coordinates
/// `(Re z₁, Im z₁, Re z₂, Im z₂)`, normalized so that `s = 24`.
pub fn fubini_study_components(x: &Point) -> Mat4 {
    let z = [Complex64::new(x[0], x[1]), Complex64::new(x[2], x[3])];
    let n = 1.0 + z[0].norm_sqr() + z[1].norm_sqr();
    // hermitian h_ab̄ = (δ_ab n − z̄_a z_b)/n²
    let h = |a: usize, b: usize| {
        let delta = if a == b { n } else { 0.0 };
        (Complex64::new(delta, 0.0) - z[a].conj() * z[b]) / (n * n)
    };
    let dir = |i: usize| -> [Complex64; 2] {
        let unit = if i % 2 == 0 { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 1.0) };
        if i < 2 {
            [unit, Complex64::new(0.0, 0.0)]
        } else {
            [Complex64::new(0.0, 0.0), unit]
        }
    };
    Mat4::from_fn(|i, j| {
        let (u, w) = (dir(i), dir(j));
        let mut acc = Complex64::new(0.0, 0.0);
        for a in 0..2 {
            for b in 0..2 {
                acc += h(a, b) * u[a] * w[b].conj();
            }
        }
        acc.re
    })
}

/// ℂP₂ with the Fubini–Study metric and its complex orientation. The three
/// affine charts each cover the polydisk where their pivot coordinate
/// dominates; these polydisks partition ℂP₂.
pub fn fubini_study() -> ZooEntry {
    let chart = ChartMetric::new([(-2.0, 2.0); 4], fubini_study_components)
        .expect("static bounds")
        .with_orientation(Orientation::Positive);
    let polydisk = QuadratureScheme::mapped(
        [
            Rule1D::gauss(0.0, 1.0, 12).expect("static rule"),
            Rule1D::trapezoid(0.0, 2.0 * PI, 4).expect("static rule"),
            Rule1D::gauss(0.0, 1.0, 12).expect("static rule"),
            Rule1D::trapezoid(0.0, 2.0 * PI, 4).expect("static rule"),
        ],
        Arc::new(|y: &Point| {
            let [r1, a1, r2, a2] = *y;
            ([r1 * a1.cos(), r1 * a1.sin(), r2 * a2.cos(), r2 * a2.sin()], r1 * r2)
        }),
    );
    let patch = Patch { metric: chart.clone(), scheme: polydisk };
    ZooEntry {
        name: "cp2-fs".into(),
        metric: chart,
        patches: vec![patch.clone(), patch.clone(), patch],
        exact: ExactRecord {
            chi: Some(3),
            tau: Some(1),
            s_exact: Some(24.0),
            einstein: true,
            ..Default::default()
        },
        sample_margin: 0.1,
    }
}

fn check_truncation(eps: f64, rho_max: f64) -> Result<()> {
    positive("epsilon", eps)?;
    if !(rho_max > 2.0 * eps) || !rho_max.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "truncation radius must exceed 2ε (ε = {eps}, ϱ_max = {rho_max})"
        )));
    }
    Ok(())
}

/// `(1/f, ϱ², ϱ² f)` with `f = 1 − (ε/ϱ)^power`.
pub fn bolt_profile(eps: f64, power: i32) -> Arc<Profile> {
    Arc::new(move |r: f64| {
        let f = 1.0 - (eps / r).powi(power);
        (1.0 / f, r * r, r * r * f)
    })
}

/// Orientation in which the Eguchi–Hanson and Burns metrics have `W₊ = 0`.
pub const ALE_ORIENTATION: Orientation = Orientation::Negative;

fn ale_entry(name: &str, eps: f64, rho_max: f64, power: i32, psi_period: f64, einstein: bool) -> Result<ZooEntry> {
    check_truncation(eps, rho_max)?;
    let metric = euler_chart(bolt_profile(eps, power), (1.5 * eps, rho_max), psi_period)?
        .with_orientation(ALE_ORIENTATION);
    Ok(ZooEntry {
        name: name.into(),
        metric,
        patches: Vec::new(),
        exact: ExactRecord {
            s_exact: Some(0.0),
            einstein,
            sfasd: true,
            noncompact: true,
            ..Default::default()
        },
        sample_margin: 0.05,
    })
}

/// Eguchi–Hanson on `[1.5ε, ϱ_max] × S³/ℤ₂`.
pub fn eguchi_hanson(eps: f64, rho_max: f64) -> Result<ZooEntry> {
    ale_entry("eh", eps, rho_max, 4, 2.0 * PI, true)
}

/// Burns metric on `[1.5ε, ϱ_max] × S³`.
pub fn burns(eps: f64, rho_max: f64) -> Result<ZooEntry> {
    ale_entry("burns", eps, rho_max, 2, 4.0 * PI, false)
}

pub fn wormhole_profile(eps: f64) -> Arc<Profile> {
    Arc::new(move |r: f64| {
        let u = 1.0 + eps / (r * r);
        let u2 = u * u;
        (u2, r * r * u2, r * r * u2)
    })
}

/// `(1 + ε/|x|²)² δ` on the annulus `√ε/2 ≤ ϱ ≤ 2√ε`.
pub fn wormhole(eps: f64) -> Result<ZooEntry> {
    positive("epsilon", eps)?;
    let neck = eps.sqrt();
    let metric = euler_chart(wormhole_profile(eps), (0.5 * neck, 2.0 * neck), 4.0 * PI)?;
    Ok(ZooEntry {
        name: "wormhole".into(),
        metric,
        patches: Vec::new(),
        exact: ExactRecord {
            s_exact: Some(0.0),
            sfasd: true,
            noncompact: true,
            ..Default::default()
        },
        sample_margin: 0.05,
    })
}

/// `S²(r) × T²` with a square flat torus of the given area, coordinates
/// `(θ, φ, u, v)`.
pub fn product_s2_t2(sphere_radius: f64, torus_area: f64) -> Result<ZooEntry> {
    positive("sphere radius", sphere_radius)?;
    positive("torus area", torus_area)?;
    let side = torus_area.sqrt();
    let r2 = sphere_radius * sphere_radius;
    let chart = ChartMetric::new([(0.0, PI), (0.0, 2.0 * PI), (0.0, side), (0.0, side)], move |x: &Point| {
        let mut g = Mat4::identity();
        g[(0, 0)] = r2;
        g[(1, 1)] = r2 * x[0].sin().powi(2);
        g
    })?
    .with_periodic([false, true, true, true]);
    let scheme = QuadratureScheme::product([
        Rule1D::gauss(0.0, PI, 8)?,
        Rule1D::trapezoid(0.0, 2.0 * PI, 4)?,
        Rule1D::trapezoid(0.0, side, 2)?,
        Rule1D::trapezoid(0.0, side, 2)?,
    ]);
    Ok(ZooEntry {
        name: "s2xt2".into(),
        metric: chart.clone(),
        patches: vec![Patch { metric: chart, scheme }],
        exact: ExactRecord {
            chi: Some(0),
            tau: Some(0),
            s_exact: Some(2.0 / r2),
            ..Default::default()
        },
        sample_margin: 0.05,
    })
}

/// Rotation by π about the polar axis times the elliptic involution.
pub fn s2xt2_involution(x: &Point) -> Point {
    [x[0], x[1] + PI, -x[2], -x[3]]
}

/// Unit S³ (Euler angles) times a circle of radius `ε`, coordinates
/// `(θ, φ, ψ, w)` with `w` arc length.
pub fn product_s3_s1(circle_radius: f64) -> Result<ZooEntry> {
    positive("circle radius", circle_radius)?;
    let period = 2.0 * PI * circle_radius;
    let chart = ChartMetric::new(
        [(0.0, PI), (0.0, 2.0 * PI), (0.0, 4.0 * PI), (0.0, period)],
        |x: &Point| {
            let s3 = euler_components(1.0, 1.0, 1.0, x[0]);
            let mut g = Mat4::identity();
            for i in 0..3 {
                for j in 0..3 {
                    g[(i, j)] = s3[(i + 1, j + 1)];
                }
            }
            g
        },
    )?
    .with_periodic([false, true, true, true]);
    let scheme = QuadratureScheme::product([
        Rule1D::gauss(0.0, PI, 8)?,
        Rule1D::trapezoid(0.0, 2.0 * PI, 4)?,
        Rule1D::trapezoid(0.0, 4.0 * PI, 4)?,
        Rule1D::trapezoid(0.0, period, 2)?,
    ]);
    Ok(ZooEntry {
        name: "s3xs1".into(),
        metric: chart.clone(),
        patches: vec![Patch { metric: chart, scheme }],
        exact: ExactRecord {
            chi: Some(0),
            tau: Some(0),
            s_exact: Some(6.0),
            ..Default::default()
        },
        sample_margin: 0.05,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_passes_its_record() {
        for name in ENTRY_NAMES {
            let e = by_name(name).unwrap();
            let failures = e.verify_exact(20, 11).unwrap();
            assert!(failures.is_empty(), "{name}: {failures:?}");
        }
    }

    #[test]
    fn sphere_examples() {
        let e = round_sphere(1.0).unwrap();
        assert!((e.decompose_at(&[0.0; 4]).unwrap().s - 12.0).abs() < 1e-6);
        let e2 = round_sphere(2.0).unwrap();
        assert!((e2.decompose_at(&[0.0; 4]).unwrap().s - 3.0).abs() < 1e-6);
        assert!(round_sphere(0.0).is_err());
    }

    #[test]
    fn fubini_study_is_kaehler_einstein_with_w_minus_zero() {
        let e = fubini_study();
        let d = e.decompose_at(&[0.0; 4]).unwrap();
        assert!(d.norm_sq_w_minus < 1e-7);
        assert!(d.norm_sq_ric_tf < 1e-7);
        assert!((d.norm_sq_w_plus - d.s * d.s / 24.0).abs() < 1e-6);
        let r = e.reversed().decompose_at(&[0.3, 0.1, -0.2, 0.4]).unwrap();
        assert!(r.norm_sq_w_plus < 1e-7 && r.norm_sq_w_minus > 1.0);
    }

    #[test]
    fn ale_metrics_are_half_flat() {
        let eh = eguchi_hanson(1.0, 4.0).unwrap();
        let b = burns(1.0, 4.0).unwrap();
        for x in eh.samples(10, 3) {
            let d = eh.decompose_at(&x).unwrap();
            assert!(d.ricci_norm() < 1e-6 && d.norm_sq_w_plus < 1e-6, "{x:?} {d:?}");
        }
        for x in b.samples(10, 3) {
            let d = b.decompose_at(&x).unwrap();
            assert!(d.s.abs() < 1e-6 && d.norm_sq_w_plus < 1e-6);
        }
        let at_two_eps = b.decompose_at(&[2.0, 1.0, 1.0, 1.0]).unwrap();
        assert!(at_two_eps.norm_sq_w_minus > 1e-3);
        assert!(eguchi_hanson(1.0, 2.0).is_err());
    }

    #[test]
    fn ale_components_approach_the_cone() {
        let cone = |r: f64, th: f64| euler_components(1.0, r * r, r * r, th);
        for entry in [eguchi_hanson(1.0, 8.0).unwrap(), burns(1.0, 8.0).unwrap()] {
            let dev = |r: f64| {
                let x = [r, 1.0, 0.5, 0.5];
                (entry.metric.metric_at(&x) - cone(r, 1.0)).abs().max() / (r * r)
            };
            assert!(dev(8.0) < dev(4.0), "{}", entry.name);
        }
    }

    #[test]
    fn wormhole_neck_symmetry() {
        let eps = 0.7;
        let e = wormhole(eps).unwrap();
        for r in [0.5, 0.6, 0.8, 1.1] {
            let rr = eps / r;
            let a = e.metric.metric_at(&[r, 1.0, 0.0, 0.0]);
            let b = e.metric.metric_at(&[rr, 1.0, 0.0, 0.0]);
            // dϱ' = −ε/ϱ² dϱ
            let jac = eps / (r * r);
            assert!((a[(0, 0)] - b[(0, 0)] * jac * jac).abs() < 1e-8 * a[(0, 0)]);
            for i in 1..4 {
                for j in 1..4 {
                    assert!((a[(i, j)] - b[(i, j)]).abs() < 1e-8 * a[(1, 1)]);
                }
            }
        }
    }

    #[test]
    fn s2xt2_involution_is_an_isometry() {
        let e = product_s2_t2(1.0, 0.3).unwrap();
        for x in e.samples(10, 5) {
            let a = e.metric.metric_at(&x);
            let b = e.metric.metric_at(&s2xt2_involution(&x));
            assert!((a - b).abs().max() < 1e-12);
        }
    }

    #[test]
    fn unknown_entry_rejected() {
        assert!(matches!(by_name("k3"), Err(Error::InvalidParameter(_))));
    }
}
