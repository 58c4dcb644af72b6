use crate::chart::{ChartMetric, Mat4, Point};
use crate::curvature::jet::{jet, Jet};
use crate::error::{Error, Result};

/// Below this determinant the metric is treated as degenerate.
pub const MIN_DET: f64 = 1e-10;

/// Levi-Civita connection coefficients, indexed `[k][i][j]` for `Γᵏ_ij`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Christoffel(pub [[[f64; 4]; 4]; 4]);

impl Christoffel {
    pub fn get(&self, k: usize, i: usize, j: usize) -> f64 {
        self.0[k][i][j]
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().flatten().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Fully covariant Riemann tensor `R_ijkl`, with `R_ijij` the sectional
/// curvature of the `(i, j)` plane for orthonormal coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiemannTensor(pub [[[[f64; 4]; 4]; 4]; 4]);

impl RiemannTensor {
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        self.0[i][j][k][l]
    }

    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .flatten()
            .flatten()
            .fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Largest `|R_ijkl + R_iklj + R_iljk|`.
    pub fn bianchi_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    for l in 0..4 {
                        let r = self.0[i][j][k][l] + self.0[i][k][l][j] + self.0[i][l][j][k];
                        worst = worst.max(r.abs());
                    }
                }
            }
        }
        worst
    }

    /// Components in a frame whose vectors are the columns of `frame`.
    pub fn in_frame(&self, frame: &Mat4) -> RiemannTensor {
        // contract one slot at a time
        let mut a = self.0;
        for slot in 0..4 {
            let mut b = [[[[0.0; 4]; 4]; 4]; 4];
            for i in 0..4 {
                for j in 0..4 {
                    for k in 0..4 {
                        for l in 0..4 {
                            let idx = [i, j, k, l];
                            let mut acc = 0.0;
                            for m in 0..4 {
                                let mut src = idx;
                                src[slot] = m;
                                acc += a[src[0]][src[1]][src[2]][src[3]] * frame[(m, idx[slot])];
                            }
                            b[i][j][k][l] = acc;
                        }
                    }
                }
            }
            a = b;
        }
        RiemannTensor(a)
    }
}

/// The metric's jet, refusing stencil nodes where it degenerates.
pub(crate) fn metric_jet(m: &ChartMetric, x: &Point, h: f64) -> Result<Jet<Mat4>> {
    jet(
        |y: &Point| {
            let g = m.metric_at(y);
            let det = g.determinant();
            if det < MIN_DET || !det.is_finite() {
                return Err(Error::NonPositiveDefinite { point: *y, det });
            }
            Ok(g)
        },
        x,
        h,
    )
}

pub(crate) fn invert(g: &Mat4, x: &Point) -> Result<Mat4> {
    let chol = g.cholesky().ok_or(Error::NonPositiveDefinite {
        point: *x,
        det: g.determinant(),
    })?;
    Ok(chol.inverse())
}

fn check_step(h: f64) -> Result<()> {
    if h > 0.0 && h.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("finite-difference step must be positive, got {h}")))
    }
}

pub(crate) fn christoffel_from_jet(jet: &Jet<Mat4>, g_inv: &Mat4) -> Christoffel {
    let dg = &jet.d1;
    let mut gamma = [[[0.0; 4]; 4]; 4];
    for k in 0..4 {
        for i in 0..4 {
            for j in i..4 {
                let mut acc = 0.0;
                for l in 0..4 {
                    acc += g_inv[(k, l)] * (dg[i][(j, l)] + dg[j][(i, l)] - dg[l][(i, j)]);
                }
                gamma[k][i][j] = 0.5 * acc;
                gamma[k][j][i] = 0.5 * acc;
            }
        }
    }
    Christoffel(gamma)
}

pub(crate) fn riemann_from_jet(jet: &Jet<Mat4>, gamma: &Christoffel) -> RiemannTensor {
    let g = &jet.value;
    let dd = &jet.d2;
    let gm = &gamma.0;
    // lowered products: G_jk,il = g_np Γⁿ_jk Γᵖ_il
    let mut low = [[[0.0; 4]; 4]; 4];
    for p in 0..4 {
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = 0.0;
                for n in 0..4 {
                    acc += g[(n, p)] * gm[n][i][j];
                }
                low[p][i][j] = acc;
            }
        }
    }
    let quad = |a: usize, b: usize, c: usize, d: usize| -> f64 {
        // g_np Γⁿ_ab Γᵖ_cd
        (0..4).map(|p| low[p][a][b] * gm[p][c][d]).sum()
    };
    let mut r = [[[[0.0; 4]; 4]; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                for l in 0..4 {
                    let second = 0.5
                        * (dd[j][k][(i, l)] + dd[i][l][(j, k)]
                            - dd[j][l][(i, k)]
                            - dd[i][k][(j, l)]);
                    r[i][j][k][l] = second + quad(j, k, i, l) - quad(j, l, i, k);
                }
            }
        }
    }
    RiemannTensor(r)
}

/// Levi-Civita connection at `x` from Richardson-extrapolated differences.
pub fn christoffel(m: &ChartMetric, x: &Point, h: f64) -> Result<Christoffel> {
    check_step(h)?;
    m.check_reach(x, 2.0 * h)?;
    let jet = metric_jet(m, x, h)?;
    let g_inv = invert(&jet.value, x)?;
    Ok(christoffel_from_jet(&jet, &g_inv))
}

/// Riemann tensor at `x`.
pub fn riemann(m: &ChartMetric, x: &Point, h: f64) -> Result<RiemannTensor> {
    Ok(riemann_with_metric(m, x, h)?.riemann)
}

/// Everything the pointwise pipeline needs at one point.
#[derive(Debug, Clone)]
pub struct LocalGeometry {
    pub point: Point,
    pub metric: Mat4,
    pub metric_inv: Mat4,
    pub christoffel: Christoffel,
    pub riemann: RiemannTensor,
}

pub fn riemann_with_metric(m: &ChartMetric, x: &Point, h: f64) -> Result<LocalGeometry> {
    check_step(h)?;
    m.check_reach(x, 4.0 * h)?;
    let jet = metric_jet(m, x, h)?;
    let metric_inv = invert(&jet.value, x)?;
    let christoffel = christoffel_from_jet(&jet, &metric_inv);
    let riemann = riemann_from_jet(&jet, &christoffel);
    Ok(LocalGeometry {
        point: *x,
        metric: jet.value,
        metric_inv,
        christoffel,
        riemann,
    })
}
