use serde::Serialize;

use crate::chart::{ChartMetric, Mat4, Point, ScalarFn};
use crate::curvature::forms::{Coframe, Mat6, TwoFormBasis};
use crate::curvature::jet::jet;
use crate::curvature::tensor::{riemann_with_metric, RiemannTensor};
use crate::error::{Error, Result};

/// Pointwise curvature norms read off the curvature operator.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct CurvatureDecomposition {
    pub s: f64,
    #[serde(rename = "normSqRicTF")]
    pub norm_sq_ric_tf: f64,
    #[serde(rename = "normSqWplus")]
    pub norm_sq_w_plus: f64,
    #[serde(rename = "normSqWminus")]
    pub norm_sq_w_minus: f64,
    #[serde(rename = "normSqRiem")]
    pub norm_sq_riem: f64,
}

impl CurvatureDecomposition {
    /// `|ℛ|² − (s²/24 + |r̊|²/2 + |W₊|² + |W₋|²)`.
    pub fn identity_residual(&self) -> f64 {
        self.norm_sq_riem
            - (self.s * self.s / 24.0
                + 0.5 * self.norm_sq_ric_tf
                + self.norm_sq_w_plus
                + self.norm_sq_w_minus)
    }

    /// `|Ric|`, using `|Ric|² = |r̊|² + s²/4`.
    pub fn ricci_norm(&self) -> f64 {
        (self.norm_sq_ric_tf + 0.25 * self.s * self.s).sqrt()
    }

    pub fn weyl_norm_sq(&self) -> f64 {
        self.norm_sq_w_plus + self.norm_sq_w_minus
    }
}

/// `M_AB = ⟨ω_A, ℛ(ω_B)⟩` with `ℛ(ω)_ij = ½ R_ijkl ω^kl`.
pub fn curvature_operator(r: &RiemannTensor, basis: &TwoFormBasis) -> Result<Mat6> {
    basis.check_orthonormal()?;
    let raised: Vec<Mat4> = (0..6).map(|a| basis.raised(a)).collect();
    // contract the last pair once per basis element
    let images: Vec<Mat4> = raised
        .iter()
        .map(|w| {
            Mat4::from_fn(|i, j| {
                let mut acc = 0.0;
                for k in 0..4 {
                    for l in 0..4 {
                        acc += r.0[i][j][k][l] * w[(k, l)];
                    }
                }
                acc
            })
        })
        .collect();
    let mut m = Mat6::zeros();
    for a in 0..6 {
        for b in a..6 {
            let v = 0.25 * raised[a].component_mul(&images[b]).sum();
            m[(a, b)] = v;
            m[(b, a)] = v;
        }
    }
    Ok(m)
}

fn frobenius_sq<R: nalgebra::Dim, C: nalgebra::Dim, S: nalgebra::RawStorage<f64, R, C>>(
    m: &nalgebra::Matrix<f64, R, C, S>,
) -> f64 {
    m.iter().map(|v| v * v).sum()
}

pub fn decompose(m: &Mat6) -> CurvatureDecomposition {
    let a = m.fixed_view::<3, 3>(0, 0);
    let b = m.fixed_view::<3, 3>(0, 3);
    let c = m.fixed_view::<3, 3>(3, 3);
    let (tr_a, tr_c) = (a.trace(), c.trace());
    let trace_free = |block_norm: f64, tr: f64| (block_norm - tr * tr / 3.0).max(0.0);
    CurvatureDecomposition {
        s: 2.0 * (tr_a + tr_c),
        norm_sq_ric_tf: 4.0 * frobenius_sq(&b),
        norm_sq_w_plus: trace_free(frobenius_sq(&a), tr_a),
        norm_sq_w_minus: trace_free(frobenius_sq(&c), tr_c),
        norm_sq_riem: frobenius_sq(m),
    }
}

/// Full pointwise evaluation.
#[derive(Debug, Clone)]
pub struct PointCurvature {
    pub point: Point,
    pub decomposition: CurvatureDecomposition,
    pub operator: Mat6,
    pub volume_density: f64,
    /// Sectional curvatures of the six coordinate-frame planes `e_a ∧ e_b`.
    pub frame_sectional: [f64; 6],
}

impl PointCurvature {
    pub fn max_abs_sectional(&self) -> f64 {
        self.frame_sectional.iter().fold(0.0, |m, k| m.max(k.abs()))
    }
}

/// Finite-difference step used by the integrators: the chart default,
/// shrunk near boundaries and singular loci so the stencil stays inside.
pub fn effective_step(m: &ChartMetric, x: &Point) -> f64 {
    m.default_step().min(m.clearance(x) / 5.0)
}

pub fn evaluate_full(m: &ChartMetric, x: &Point, h: f64) -> Result<PointCurvature> {
    let geo = riemann_with_metric(m, x, h)?;
    let coframe = Coframe::new(&geo.metric, m.orientation(), x)?;
    let basis = TwoFormBasis::from_coframe(&coframe, geo.metric_inv);
    let operator = curvature_operator(&geo.riemann, &basis)?;
    let framed = geo.riemann.in_frame(&coframe.frame());
    let mut frame_sectional = [0.0; 6];
    let mut n = 0;
    for a in 0..4 {
        for b in (a + 1)..4 {
            frame_sectional[n] = framed.get(a, b, a, b);
            n += 1;
        }
    }
    Ok(PointCurvature {
        point: *x,
        decomposition: decompose(&operator),
        operator,
        volume_density: coframe.volume_density,
        frame_sectional,
    })
}

pub fn evaluate(m: &ChartMetric, x: &Point, h: f64) -> Result<CurvatureDecomposition> {
    Ok(evaluate_full(m, x, h)?.decomposition)
}

/// Scalar curvature of `u² g` from `s_g` and the positive Laplacian of `u`:
/// `s_{u²g} = 6u⁻³(Δu + s u / 6)`.
pub fn conformal_rescale_scalar(m: &ChartMetric, u: &ScalarFn, x: &Point, h: f64) -> Result<f64> {
    let geo = riemann_with_metric(m, x, h)?;
    let coframe = Coframe::new(&geo.metric, m.orientation(), x)?;
    let basis = TwoFormBasis::from_coframe(&coframe, geo.metric_inv);
    let s = decompose(&curvature_operator(&geo.riemann, &basis)?).s;
    let uj = jet(
        |y: &Point| {
            let v = u(y);
            if v > 0.0 && v.is_finite() {
                Ok(v)
            } else {
                Err(Error::NonPositiveConformalFactor { point: *y, value: v })
            }
        },
        x,
        h,
    )?;
    let gi = &geo.metric_inv;
    let gamma = &geo.christoffel;
    let mut laplacian = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            let mut hess = uj.d2[i][j];
            for k in 0..4 {
                hess -= gamma.get(k, i, j) * uj.d1[k];
            }
            laplacian -= gi[(i, j)] * hess;
        }
    }
    Ok(6.0 * (laplacian + s * uj.value / 6.0) / uj.value.powi(3))
}
