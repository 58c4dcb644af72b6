//! Cohomogeneity-one metrics `A dϱ² + P(σ₁² + σ₂²) + Q σ₃²` with SU(2)
//! symmetry, in Euler-angle and in Cartesian coordinates.
//!
//! The left-invariant forms are normalized so that `dϱ² + ϱ²(σ₁²+σ₂²+σ₃²)`
//! is the flat metric on ℝ⁴; equivalently `σᵢ` is half of the usual
//! Euler-angle Maurer–Cartan form.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::chart::{norm, ChartMetric, Mat4, Point, SingularLocus};
use crate::error::Result;

/// Radial profile `ϱ ↦ (A, P, Q)`.
pub type Profile = dyn Fn(f64) -> (f64, f64, f64) + Send + Sync;

/// Components in `(ϱ, θ, φ, ψ)`.
pub fn euler_components(a: f64, p: f64, q: f64, theta: f64) -> Mat4 {
    let (s, c) = theta.sin_cos();
    let mut g = Mat4::zeros();
    g[(0, 0)] = a;
    g[(1, 1)] = 0.25 * p;
    g[(2, 2)] = 0.25 * (p * s * s + q * c * c);
    g[(3, 3)] = 0.25 * q;
    g[(2, 3)] = 0.25 * q * c;
    g[(3, 2)] = 0.25 * q * c;
    g
}

/// Euler chart on `[r0, r1] × [0, π] × [0, 2π) × [0, ψ_period)`.
pub fn euler_chart(profile: Arc<Profile>, radial: (f64, f64), psi_period: f64) -> Result<ChartMetric> {
    ChartMetric::new(
        [radial, (0.0, PI), (0.0, 2.0 * PI), (0.0, psi_period)],
        move |x: &Point| {
            let (a, p, q) = profile(x[0]);
            euler_components(a, p, q, x[1])
        },
    )
    .map(|m| m.with_periodic([false, false, true, true]))
}

/// Left-invariant 1-forms `τᵢ = ϱ² σᵢ` as covectors on ℝ⁴ = ℍ.
pub fn tau(x: &Point) -> [[f64; 4]; 3] {
    let [x1, x2, x3, x4] = *x;
    [[-x2, x1, -x4, x3], [-x3, x4, x1, -x2], [-x4, -x3, x2, x1]]
}

/// Components in Cartesian coordinates on ℝ⁴ − {0}.
pub fn cartesian_components(a: f64, p: f64, q: f64, x: &Point) -> Mat4 {
    let r2: f64 = x.iter().map(|v| v * v).sum();
    let t = tau(x);
    let (ka, kp, kq) = (a / r2, p / (r2 * r2), q / (r2 * r2));
    Mat4::from_fn(|i, j| {
        ka * x[i] * x[j] + kp * (t[0][i] * t[0][j] + t[1][i] * t[1][j]) + kq * t[2][i] * t[2][j]
    })
}

/// Cartesian chart on the cube `[-half_width, half_width]⁴`, refusing the
/// ball `|x| ≤ inner` where the profile degenerates.
pub fn cartesian_chart(profile: Arc<Profile>, half_width: f64, inner: f64) -> Result<ChartMetric> {
    let m = ChartMetric::new([(-half_width, half_width); 4], move |x: &Point| {
        let (a, p, q) = profile(norm(x));
        cartesian_components(a, p, q, x)
    })?;
    Ok(m.with_singular_locus(SingularLocus::Ball { radius: inner }))
}

/// `(ϱ, θ, φ, ψ) ↦ x` together with the Euclidean volume factor `ϱ³ sin θ / 8`.
pub fn euler_to_cartesian(y: &Point) -> (Point, f64) {
    let [r, theta, phi, psi] = *y;
    let (sh, ch) = (0.5 * theta).sin_cos();
    let (a, b) = (0.5 * (psi + phi), 0.5 * (psi - phi));
    let x = [
        r * ch * a.cos(),
        r * ch * a.sin(),
        r * sh * b.cos(),
        r * sh * b.sin(),
    ];
    (x, r * r * r * theta.sin() / 8.0)
}
