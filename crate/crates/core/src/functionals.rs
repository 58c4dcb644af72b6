//! Integrated curvature functionals over zoo entries.

use std::f64::consts::PI;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::chart::{ChartMetric, Point};
use crate::curvature::{effective_step, evaluate_full, CurvatureDecomposition, PointCurvature};
use crate::error::{Error, Result};
use crate::quadrature::{pairwise_sum, QuadratureScheme};
use crate::zoo::{Patch, ZooEntry};

const PI2: f64 = PI * PI;

/// Curvature at one quadrature node together with its measure `w·√det g`.
#[derive(Debug, Clone)]
pub struct NodeSample {
    pub measure: f64,
    pub curvature: PointCurvature,
}

/// Evaluate the curvature at every node of `scheme`, in node order. The
/// first failing node (in node order) is reported with its coordinates.
pub fn sample_scheme<S>(metric: &ChartMetric, scheme: &QuadratureScheme, step: S) -> Result<Vec<NodeSample>>
where
    S: Fn(&ChartMetric, &Point) -> f64 + Sync,
{
    let nodes = scheme.nodes();
    let results: Vec<Result<NodeSample>> = nodes
        .par_iter()
        .map(|(x, w)| {
            evaluate_full(metric, x, step(metric, x))
                .map(|c| NodeSample {
                    measure: w * c.volume_density,
                    curvature: c,
                })
                .map_err(|e| Error::AtNode {
                    point: *x,
                    source: Box::new(e),
                })
        })
        .collect();
    results.into_iter().collect()
}

pub fn sample_patches(patches: &[Patch]) -> Result<Vec<NodeSample>> {
    let mut out = Vec::new();
    for p in patches {
        out.extend(sample_scheme(&p.metric, &p.scheme, effective_step)?);
    }
    Ok(out)
}

/// `Σ w·density·√det g` with pairwise reduction.
pub fn integrate_samples<F>(samples: &[NodeSample], density: F) -> f64
where
    F: Fn(&CurvatureDecomposition) -> f64,
{
    let terms: Vec<f64> = samples
        .iter()
        .map(|s| s.measure * density(&s.curvature.decomposition))
        .collect();
    pairwise_sum(&terms)
}

pub fn integrate<F>(patches: &[Patch], density: F) -> Result<f64>
where
    F: Fn(&CurvatureDecomposition) -> f64,
{
    Ok(integrate_samples(&sample_patches(patches)?, density))
}

fn require_compact(entry: &ZooEntry) -> Result<()> {
    if entry.is_compact() {
        Ok(())
    } else {
        Err(Error::Noncompact(entry.name.clone()))
    }
}

pub fn euler_density(d: &CurvatureDecomposition) -> f64 {
    d.s * d.s / 24.0 + d.norm_sq_w_plus + d.norm_sq_w_minus - 0.5 * d.norm_sq_ric_tf
}

pub fn signature_density(d: &CurvatureDecomposition) -> f64 {
    d.norm_sq_w_plus - d.norm_sq_w_minus
}

/// Euler characteristic from the curvature integral.
pub fn gauss_bonnet(entry: &ZooEntry) -> Result<f64> {
    require_compact(entry)?;
    Ok(integrate(&entry.patches, euler_density)? / (8.0 * PI2))
}

/// Signature from the curvature integral.
pub fn signature(entry: &ZooEntry) -> Result<f64> {
    require_compact(entry)?;
    Ok(integrate(&entry.patches, signature_density)? / (12.0 * PI2))
}

/// Quadratic curvature integrals of one metric.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvatureBudget {
    pub int_s2: f64,
    #[serde(rename = "int_Wplus2")]
    pub int_w_plus2: f64,
    #[serde(rename = "int_Wminus2")]
    pub int_w_minus2: f64,
    #[serde(rename = "int_ricTF2")]
    pub int_ric_tf2: f64,
    #[serde(rename = "K")]
    pub k_functional: f64,
    pub volume: f64,
    /// Integrals cover only part of a noncompact or glued manifold.
    pub truncated: bool,
}

impl CurvatureBudget {
    pub fn from_samples(samples: &[NodeSample], truncated: bool) -> Self {
        Self {
            int_s2: integrate_samples(samples, |d| d.s * d.s),
            int_w_plus2: integrate_samples(samples, |d| d.norm_sq_w_plus),
            int_w_minus2: integrate_samples(samples, |d| d.norm_sq_w_minus),
            int_ric_tf2: integrate_samples(samples, |d| d.norm_sq_ric_tf),
            k_functional: integrate_samples(samples, |d| d.norm_sq_riem),
            volume: integrate_samples(samples, |_| 1.0),
            truncated,
        }
    }

    /// `𝒦` recomputed from the four quadratic integrals.
    pub fn k_from_parts(&self) -> f64 {
        self.int_s2 / 24.0 + 0.5 * self.int_ric_tf2 + self.int_w_plus2 + self.int_w_minus2
    }

    /// Relative defects of the three identities tying `𝒦` and the quadratic
    /// integrals to `χ` and `τ`.
    pub fn identity_residuals(&self, chi: f64, tau: f64) -> IdentityResiduals {
        let pos = self.int_s2 / 24.0 + 2.0 * self.int_w_plus2;
        let k_value = self.k_functional;
        let euler_form = 8.0 * PI2 * chi + self.int_ric_tf2;
        let top_combo = 2.0 * chi + 3.0 * tau;
        let curv_combo = (pos - 0.5 * self.int_ric_tf2) / (4.0 * PI2);
        let signature_form = -8.0 * PI2 * (chi + 3.0 * tau) + 2.0 * pos;
        let rel = |a: f64, b: f64, scale: f64| {
            let s = a.abs().max(b.abs()).max(scale);
            if s < 1e-12 {
                0.0
            } else {
                (a - b).abs() / s
            }
        };
        // scales: the largest individual term entering each identity
        let combo_scale = (self.int_s2 / 24.0 + 2.0 * self.int_w_plus2 + 0.5 * self.int_ric_tf2) / (4.0 * PI2);
        IdentityResiduals {
            k_euler: rel(k_value, euler_form, 8.0 * PI2 * chi.abs()),
            hitchin_combination: rel(top_combo, curv_combo, combo_scale),
            k_signature: rel(k_value, signature_form, 8.0 * PI2 * (chi + 3.0 * tau).abs() + 2.0 * pos),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdentityResiduals {
    pub k_euler: f64,
    pub hitchin_combination: f64,
    pub k_signature: f64,
}

impl IdentityResiduals {
    pub fn max(&self) -> f64 {
        self.k_euler.max(self.hitchin_combination).max(self.k_signature)
    }
}

pub fn budget(entry: &ZooEntry) -> Result<CurvatureBudget> {
    require_compact(entry)?;
    Ok(CurvatureBudget::from_samples(&sample_patches(&entry.patches)?, false))
}

pub const BUDGET_CSV_HEADER: &str = "param,int_s2,int_Wplus2,int_Wminus2,int_ricTF2,K,volume,truncated";

pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn budget_csv_row(param: f64, b: &CurvatureBudget) -> String {
    [
        fmt_f64(param),
        fmt_f64(b.int_s2),
        fmt_f64(b.int_w_plus2),
        fmt_f64(b.int_w_minus2),
        fmt_f64(b.int_ric_tf2),
        fmt_f64(b.k_functional),
        fmt_f64(b.volume),
        b.truncated.to_string(),
    ]
    .join(",")
}

/// Rows of an anorexic experiment; failed rows are kept with their error.
#[derive(Debug, Clone, Serialize)]
pub struct AnorexicRow {
    pub param: f64,
    pub budget: Option<CurvatureBudget>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnorexicTable {
    pub family: String,
    pub rows: Vec<AnorexicRow>,
}

impl AnorexicTable {
    pub fn budgets(&self) -> Vec<&CurvatureBudget> {
        self.rows.iter().filter_map(|r| r.budget.as_ref()).collect()
    }

    /// `∫s²` and `∫|W₊|²` are non-increasing and end below `ratio` times
    /// their initial value.
    pub fn decays(&self, ratio: f64) -> bool {
        let b = self.budgets();
        if b.len() < 2 || b.len() != self.rows.len() {
            return false;
        }
        let mono = |f: fn(&CurvatureBudget) -> f64| {
            b.windows(2).all(|w| f(w[1]) <= f(w[0])) && f(b[b.len() - 1]) < ratio * f(b[0])
        };
        mono(|x| x.int_s2) && (mono(|x| x.int_w_plus2) || b.iter().all(|x| x.int_w_plus2 < 1e-12))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(BUDGET_CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            match &r.budget {
                Some(b) => {
                    let _ = writeln!(out, "{}", budget_csv_row(r.param, b));
                }
                None => {
                    let _ = writeln!(out, "{},,,,,,,", fmt_f64(r.param));
                }
            }
        }
        out
    }
}

/// Check that the parameter list has at least three strictly monotone values.
pub fn check_params(params: &[f64]) -> Result<()> {
    if params.len() < 3 {
        return Err(Error::InvalidParameter(format!(
            "an anorexic experiment needs at least 3 parameter values, got {}",
            params.len()
        )));
    }
    let inc = params.windows(2).all(|w| w[1] > w[0]);
    let dec = params.windows(2).all(|w| w[1] < w[0]);
    if !(inc || dec) {
        return Err(Error::InvalidParameter("parameters must be strictly monotone".into()));
    }
    Ok(())
}

/// Budget of each member of a family; evaluation failures become flagged
/// rows rather than aborting the table.
pub fn anorexic_experiment<F>(family: &str, params: &[f64], member: F) -> Result<AnorexicTable>
where
    F: Fn(f64) -> Result<CurvatureBudget>,
{
    check_params(params)?;
    let rows = params
        .iter()
        .map(|&p| match member(p) {
            Ok(b) => AnorexicRow { param: p, budget: Some(b), error: None },
            Err(e) => AnorexicRow { param: p, budget: None, error: Some(e.to_string()) },
        })
        .collect();
    Ok(AnorexicTable { family: family.to_string(), rows })
}
