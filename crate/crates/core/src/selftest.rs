//! Quick invariant suites, one per engine, run by the CLI's `--selftest`.

use std::f64::consts::PI;
use std::sync::Arc;

use serde::Serialize;

use crate::chart::{Point, ScalarFn};
use crate::curvature::{conformal_rescale_scalar, effective_step, evaluate, projector};
use crate::error::Result;
use crate::functionals::{anorexic_experiment, budget, gauss_bonnet};
use crate::gluing::{family, glue_default, GlueKind};
use crate::schottky::{
    dimension_at, dimension_bound, generators, levels, symmetry_defect, SchottkyParams, DET_TOLERANCE,
};
use crate::topology::{invariants, optimal_verdict, parse_expr};
use crate::zoo::{by_name, ENTRY_NAMES};
use crate::{Mat4, Orientation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Curvature,
    Functionals,
    Gluing,
    Anorexic,
    Schottky,
    Topology,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub engine: Engine,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

struct Suite(Vec<Check>);

impl Suite {
    fn check(&mut self, name: &str, f: impl FnOnce() -> Result<(bool, String)>) {
        let (passed, detail) = match f() {
            Ok(v) => v,
            Err(e) => (false, format!("error: {e}")),
        };
        self.0.push(Check { name: name.to_string(), passed, detail });
    }
}

pub fn run(engine: Engine) -> Report {
    let mut s = Suite(Vec::new());
    match engine {
        Engine::Curvature => curvature(&mut s),
        Engine::Functionals => functionals(&mut s),
        Engine::Gluing => gluing(&mut s),
        Engine::Anorexic => anorexic(&mut s),
        Engine::Schottky => schottky(&mut s),
        Engine::Topology => topology(&mut s),
    }
    Report { engine, checks: s.0 }
}

fn curvature(s: &mut Suite) {
    for name in ENTRY_NAMES {
        s.check(&format!("{name}: pointwise identity and exact record"), || {
            let e = by_name(name)?;
            let mut worst: f64 = 0.0;
            for x in e.samples(10, 1) {
                let d = e.decompose_at(&x)?;
                worst = worst.max(d.identity_residual().abs() / d.norm_sq_riem.abs().max(1e-300));
            }
            let failures = e.verify_exact(10, 1)?;
            Ok((worst < 1e-10 && failures.is_empty(), format!("residual {worst:e}, {} violations", failures.len())))
        });
    }
    s.check("projectors are conformally invariant", || {
        let g = Mat4::from_fn(|i, j| if i == j { 1.5 + i as f64 } else { 0.1 * (i + j) as f64 });
        let mut worst: f64 = 0.0;
        for sd in [true, false] {
            let d = projector(&g, Orientation::Positive, sd) - projector(&(g * 7.3), Orientation::Positive, sd);
            worst = worst.max(d.abs().max());
        }
        Ok((worst < 1e-8, format!("{worst:e}")))
    });
    s.check("conformal scalar identity on s4", || {
        let e = by_name("s4")?;
        let u: Arc<ScalarFn> = Arc::new(|x: &Point| 1.0 + 0.3 * x[0]);
        let x = [0.3, -0.2, 0.1, 0.25];
        let h = effective_step(&e.metric, &x);
        let via = conformal_rescale_scalar(&e.metric, u.as_ref(), &x, h)?;
        let direct = evaluate(&e.metric.conformal(u), &x, h)?.s;
        let rel = (via - direct).abs() / direct.abs();
        Ok((rel < 1e-4, format!("{via} vs {direct}")))
    });
}

fn functionals(s: &mut Suite) {
    s.check("gauss-bonnet s4 = 2", || {
        let v = gauss_bonnet(&by_name("s4")?)?;
        Ok(((v - 2.0).abs() < 0.02, format!("{v}")))
    });
    s.check("gauss-bonnet t4 = 0", || {
        let v = gauss_bonnet(&by_name("t4")?)?;
        Ok((v.abs() < 1e-6, format!("{v}")))
    });
    s.check("budget identities on s4", || {
        let b = budget(&by_name("s4")?)?;
        let r = b.identity_residuals(2.0, 0.0).max();
        let k = (b.k_functional - b.k_from_parts()).abs() / b.k_functional;
        Ok((r < 0.02 && k < 1e-8, format!("identity {r:e}, parts {k:e}")))
    });
    s.check("noncompact entries are refused", || {
        Ok((budget(&by_name("eh")?).is_err(), String::new()))
    });
}

fn gluing(s: &mut Suite) {
    s.check("preconditions", || {
        let bad = glue_default(GlueKind::Eh, 0.25, 0.1).is_err() && glue_default(GlueKind::Wormhole, 0.25, 0.02).is_err();
        Ok((bad && glue_default(GlueKind::Eh, 0.25, 0.0625).is_ok(), String::new()))
    });
    s.check("pieces unchanged outside the annulus", || {
        let g = glue_default(GlueKind::Burns, 0.25, 0.0625)?;
        let (out, inn) = ([0.0, 0.3, 0.0, 0.0], [0.0, 0.0, 0.1, 0.0]);
        Ok((
            g.metric.metric_at(&out) == g.base.metric_at(&out) && g.metric.metric_at(&inn) == g.insert.metric_at(&inn),
            String::new(),
        ))
    });
    s.check("annulus budget shrinks with rho", || {
        let f = family("eh")?;
        let (a, b) = (f(0.25)?, f(0.125)?);
        Ok((b.int_s2 < a.int_s2 && b.int_w_plus2 < a.int_w_plus2, format!("{} -> {}", a.int_s2, b.int_s2)))
    });
}

fn anorexic(s: &mut Suite) {
    s.check("s2xt2 family tracks 16 pi A", || {
        let t = anorexic_experiment("s2xt2", &[1.0, 0.1, 0.01], |a| family("s2xt2")?(a))?;
        let mut worst: f64 = 0.0;
        for r in &t.rows {
            let b = r.budget.as_ref().map(|b| b.int_s2).unwrap_or(f64::NAN);
            let want = 16.0 * PI * r.param;
            worst = worst.max((b - want).abs() / want);
        }
        Ok((worst < 0.01, format!("relative error {worst:e}")))
    });
    s.check("short parameter lists are refused", || {
        Ok((anorexic_experiment("t4", &[1.0, 0.5], |a| family("t4")?(a)).is_err(), String::new()))
    });
}

fn schottky(s: &mut Suite) {
    s.check("generator determinants", || {
        let mut worst: f64 = 0.0;
        for i in 1..=20 {
            for g in generators(0.05 * i as f64)? {
                worst = worst.max((g.det() - 1.0).norm());
            }
        }
        Ok((worst < DET_TOLERANCE, format!("{worst:e}")))
    });
    for t in [0.3, 0.5, 0.7, 0.9] {
        s.check(&format!("nesting, count and symmetry at t = {t}"), || {
            let all = levels(&SchottkyParams::new(t, 5)?)?;
            let mut ok = true;
            for l in &all {
                let c = l.centers();
                ok &= l.disks.len() == 4 * 3usize.pow(l.k as u32) && l.is_disjoint();
                ok &= symmetry_defect(&c, |z| -z) < 1e-10 && symmetry_defect(&c, |z| z.conj()) < 1e-10;
                if t <= 0.5 {
                    ok &= l.max_radius() < t.powi(2 * l.k as i32);
                }
            }
            Ok((ok, String::new()))
        });
    }
    s.check("dimension below the covering bound at t = 0.3", || {
        let d = dimension_at(0.3, 6)?.d;
        Ok((d <= 1.05 * dimension_bound(0.3), format!("{d}")))
    });
}

fn topology(s: &mut Suite) {
    s.check("2chi + 3tau tables", || {
        let mut ok = true;
        for k in 1..=10 {
            ok &= invariants(&parse_expr(&format!("{k} ~CP2"))?).hitchin_number() == 4 - k;
            ok &= invariants(&parse_expr(&format!("CP2 # {k} ~CP2"))?).hitchin_number() == 9 - k;
        }
        Ok((ok, String::new()))
    });
    s.check("I_R values", || {
        let mut detail = Vec::new();
        let mut ok = true;
        for (e, want) in [("4 ~CP2", 48), ("CP2 # 9 ~CP2", 96), ("K3", 192), ("6 ~CP2", 80)] {
            let v = optimal_verdict(&parse_expr(e)?);
            let got = v.i_r_pi2.map(|r| r.to_integer());
            ok &= got == Some(want);
            detail.push(format!("{e}: {got:?}"));
        }
        Ok((ok, detail.join("; ")))
    });
    s.check("nonexistence grid j in [2, 6], k in [9j, 9j + 5]", || {
        let mut ok = true;
        for j in 2..=6 {
            for k in 9 * j..=9 * j + 5 {
                ok &= optimal_verdict(&parse_expr(&format!("{j} CP2 # {k} ~CP2"))?).optimal_nonexistent;
            }
        }
        Ok((ok, String::new()))
    });
}
