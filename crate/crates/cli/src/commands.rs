use std::fmt::Write;

use serde::Serialize;
use serde_json::json;

use fourfold::functionals::{anorexic_experiment, budget, fmt_f64, gauss_bonnet, signature};
use fourfold::gluing::{family, glue_default, GlueKind};
use fourfold::schottky::{
    crossing_bisect, dimension_at, dimension_bound, levels, render, scalar_sign_predict, SchottkyParams, SIGN_BAND,
};
use fourfold::selftest::{self, Engine};
use fourfold::topology::{general_type_bounds, invariants, optimal_verdict, parse_expr};
use fourfold::zoo::{by_name, ZooEntry};
use fourfold::Error;

use crate::output::emit;
use crate::{Command, Common, Format};

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub kind: String,
    pub message: String,
}

impl Failure {
    pub fn precondition(kind: &str, message: impl Into<String>) -> Self {
        Self { code: 2, kind: kind.into(), message: message.into() }
    }

    pub fn numerical(kind: &str, message: impl Into<String>) -> Self {
        Self { code: 3, kind: kind.into(), message: message.into() }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self::precondition("output", message)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_precondition() { 2 } else { 3 };
        Self { code, kind: e.kind().into(), message: e.to_string() }
    }
}

type Outcome = Result<(), Failure>;

pub fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Curvature { entry, points, seed, reversed, common } => {
            guard(&common, Engine::Curvature, || curvature(&common, &entry_of(entry, reversed, 1)?, points, seed))
        }
        Command::GaussBonnet { entry, reversed, refine, common } => guard(&common, Engine::Functionals, || {
            let e = entry_of(entry, reversed, refine)?;
            let v = finite(gauss_bonnet(&e)?)?;
            scalar(&common, &e, "chi", v, e.exact.chi)
        }),
        Command::Signature { entry, reversed, refine, common } => guard(&common, Engine::Functionals, || {
            let e = entry_of(entry, reversed, refine)?;
            let v = finite(signature(&e)?)?;
            scalar(&common, &e, "tau", v, e.exact.tau)
        }),
        Command::Budget { entry, reversed, refine, common } => {
            guard(&common, Engine::Functionals, || budget_cmd(&common, &entry_of(entry, reversed, refine)?))
        }
        Command::Glue { kind, rho, eps, common } => guard(&common, Engine::Gluing, || glue(&common, kind, rho, eps)),
        Command::Anorexic { family, params, common } => {
            guard(&common, Engine::Anorexic, || anorexic(&common, family, &params))
        }
        Command::Limitset { t, depth, svg, common } => guard(&common, Engine::Schottky, || limitset(&common, t, depth, svg)),
        Command::DimScan { t_grid, depth, common } => guard(&common, Engine::Schottky, || dim_scan(&common, &t_grid, depth)),
        Command::Crossing { lo, hi, depth, common } => guard(&common, Engine::Schottky, || crossing(&common, lo, hi, depth)),
        Command::Topology { expr, c1sq, ell, common } => {
            guard(&common, Engine::Topology, || topology(&common, expr, c1sq.zip(ell)))
        }
    }
}

/// Runs the selftest instead of `body` when requested.
fn guard(common: &Common, engine: Engine, body: impl FnOnce() -> Outcome) -> Outcome {
    if !common.selftest {
        return body();
    }
    let report = selftest::run(engine);
    let text = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    emit(common.output.as_deref(), &text)?;
    if report.passed() {
        Ok(())
    } else {
        let failed: Vec<&str> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        Err(Failure::numerical("selftest", format!("failed checks: {}", failed.join("; "))))
    }
}

fn format_of(common: &Common, default: Format, allowed: &[Format]) -> Result<Format, Failure> {
    let f = common.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(Failure::precondition("unsupported-format", format!("this command cannot emit {f:?}")))
    }
}

fn finite(v: f64) -> Result<f64, Failure> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Failure::numerical("non-finite-result", format!("integral evaluated to {v}")))
    }
}

fn entry_of(name: Option<String>, reversed: bool, refine: usize) -> Result<ZooEntry, Failure> {
    let name = name.ok_or_else(|| Failure::precondition("missing-argument", "an entry name is required"))?;
    let mut e = by_name(&name)?;
    if reversed {
        e = e.reversed();
    }
    if refine == 0 {
        return Err(Failure::precondition("invalid-parameter", "--refine must be at least 1"));
    }
    if refine > 1 {
        e = e.refined(refine)?;
    }
    Ok(e)
}

fn json_text<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("value serializes") + "\n"
}

fn curvature(common: &Common, e: &ZooEntry, points: usize, seed: u64) -> Outcome {
    let fmt = format_of(common, Format::Csv, &[Format::Csv, Format::Json])?;
    let mut rows = Vec::with_capacity(points);
    for x in e.samples(points, seed) {
        rows.push((x, e.decompose_at(&x)?));
    }
    let text = match fmt {
        Format::Json => {
            let v: Vec<_> = rows
                .iter()
                .map(|(x, d)| json!({ "point": x, "decomposition": d, "identity_residual": d.identity_residual() }))
                .collect();
            json_text(&json!({ "entry": e.name, "seed": seed, "rows": v }))
        }
        _ => {
            let mut out = String::from("x0,x1,x2,x3,s,normSqRicTF,normSqWplus,normSqWminus,normSqRiem,identity_residual\n");
            for (x, d) in &rows {
                let cols: Vec<String> = x
                    .iter()
                    .copied()
                    .chain([d.s, d.norm_sq_ric_tf, d.norm_sq_w_plus, d.norm_sq_w_minus, d.norm_sq_riem, d.identity_residual()])
                    .map(fmt_f64)
                    .collect();
                out.push_str(&cols.join(","));
                out.push('\n');
            }
            out
        }
    };
    emit(common.output.as_deref(), &text)
}

fn scalar(common: &Common, e: &ZooEntry, what: &str, v: f64, exact: Option<i64>) -> Outcome {
    let fmt = format_of(common, Format::Csv, &[Format::Csv, Format::Json])?;
    let text = match fmt {
        Format::Json => json_text(&json!({ "entry": e.name, what: v, "exact": exact })),
        _ => format!("entry,{what}\n{},{}\n", e.name, fmt_f64(v)),
    };
    emit(common.output.as_deref(), &text)
}

fn budget_cmd(common: &Common, e: &ZooEntry) -> Outcome {
    let fmt = format_of(common, Format::Csv, &[Format::Csv, Format::Json])?;
    let b = budget(e)?;
    let text = match fmt {
        Format::Json => {
            let residuals = match (e.exact.chi, e.exact.tau) {
                (Some(chi), Some(tau)) => Some(b.identity_residuals(chi as f64, tau as f64)),
                _ => None,
            };
            json_text(&json!({ "entry": e.name, "budget": b, "identity_residuals": residuals }))
        }
        _ => {
            let cols = [b.int_s2, b.int_w_plus2, b.int_w_minus2, b.int_ric_tf2, b.k_functional, b.volume].map(fmt_f64);
            format!(
                "entry,int_s2,int_Wplus2,int_Wminus2,int_ricTF2,K,volume,truncated\n{},{},{}\n",
                e.name,
                cols.join(","),
                b.truncated
            )
        }
    };
    emit(common.output.as_deref(), &text)
}

fn glue(common: &Common, kind: Option<String>, rho: f64, eps: Option<f64>) -> Outcome {
    let fmt = format_of(common, Format::Csv, &[Format::Csv, Format::Json])?;
    let kind = GlueKind::parse(kind.as_deref().unwrap_or_default())?;
    let eps = eps.unwrap_or_else(|| kind.sequence_eps(rho));
    let report = glue_default(kind, rho, eps)?.annulus_report()?;
    let text = match fmt {
        Format::Json => json_text(&report),
        _ => {
            let b = &report.budget;
            let cols = [rho, eps, b.int_s2, b.int_w_plus2, b.int_w_minus2, b.int_ric_tf2, b.k_functional, b.volume, report.sup_sectional]
                .map(fmt_f64);
            format!(
                "kind,rho,eps,int_s2,int_Wplus2,int_Wminus2,int_ricTF2,K,volume,sup_sectional,nodes\n{},{},{}\n",
                serde_json::to_value(kind).expect("kind serializes").as_str().unwrap_or_default(),
                cols.join(","),
                report.nodes
            )
        }
    };
    emit(common.output.as_deref(), &text)
}

fn anorexic(common: &Common, name: Option<String>, params: &[f64]) -> Outcome {
    let fmt = format_of(common, Format::Csv, &[Format::Csv, Format::Json])?;
    let name = name.unwrap_or_default();
    let member = family(&name)?;
    let table = anorexic_experiment(&name, params, |p| member(p))?;
    let text = match fmt {
        Format::Json => json_text(&table),
        _ => table.to_csv(),
    };
    emit(common.output.as_deref(), &text)
}

fn limitset(common: &Common, t: Option<f64>, depth: usize, svg: bool) -> Outcome {
    let default = if svg { Format::Svg } else { Format::Csv };
    let fmt = if svg { Format::Svg } else { format_of(common, default, &[Format::Csv, Format::Svg])? };
    let t = t.ok_or_else(|| Failure::precondition("missing-argument", "--t is required"))?;
    let all = levels(&SchottkyParams::new(t, depth)?)?;
    let deepest = all.last().expect("level 0 present");
    let text = match fmt {
        Format::Svg => render::svg(deepest, &deepest.centers()),
        _ => render::levels_csv(std::slice::from_ref(deepest)),
    };
    emit(common.output.as_deref(), &text)
}

fn dim_scan(common: &Common, grid: &[f64], depth: usize) -> Outcome {
    let fmt = format_of(common, Format::Csv, &[Format::Csv, Format::Json])?;
    if grid.is_empty() {
        return Err(Failure::precondition("invalid-parameter", "--t-grid needs at least one value"));
    }
    let mut rows = Vec::new();
    for &t in grid {
        let e = dimension_at(t, depth)?;
        let sign = scalar_sign_predict(e.d, SIGN_BAND)?;
        rows.push((e, dimension_bound(t), sign));
    }
    let text = match fmt {
        Format::Json => {
            let v: Vec<_> = rows
                .iter()
                .map(|(e, bound, sign)| json!({ "t": e.t, "depth": depth, "d": e.d, "bound": bound, "sign": sign, "sequence": e.sequence }))
                .collect();
            json_text(&v)
        }
        _ => {
            let mut out = String::from("t,depth,d,bound,sign,sequence\n");
            for (e, bound, sign) in &rows {
                let seq: Vec<String> = e.sequence.iter().copied().map(fmt_f64).collect();
                let sign = serde_json::to_value(sign).expect("sign serializes");
                writeln!(
                    out,
                    "{},{depth},{},{},{},{}",
                    fmt_f64(e.t),
                    fmt_f64(e.d),
                    fmt_f64(*bound),
                    sign.as_str().unwrap_or_default(),
                    seq.join(";")
                )
                .expect("string write");
            }
            out
        }
    };
    emit(common.output.as_deref(), &text)
}

fn crossing(common: &Common, lo: f64, hi: f64, depth: usize) -> Outcome {
    let fmt = format_of(common, Format::Json, &[Format::Csv, Format::Json])?;
    let c = crossing_bisect(lo, hi, depth)?;
    let text = match fmt {
        Format::Csv => {
            let mut out = String::from("step,t,d\n");
            for (i, p) in c.transcript.iter().enumerate() {
                writeln!(out, "{i},{},{}", fmt_f64(p.t), fmt_f64(p.d)).expect("string write");
            }
            out
        }
        _ => json_text(&c),
    };
    emit(common.output.as_deref(), &text)
}

fn topology(common: &Common, expr: Option<String>, general: Option<(i64, i64)>) -> Outcome {
    format_of(common, Format::Json, &[Format::Json])?;
    let src = expr.unwrap_or_default();
    let e = parse_expr(&src)?;
    let verdict = optimal_verdict(&e);
    let mut v = serde_json::to_value(&verdict).expect("verdict serializes");
    if let Some((c1sq, ell)) = general {
        let bounds = general_type_bounds(c1sq, ell, &invariants(&e))?;
        v["general_type"] = serde_json::to_value(bounds).expect("bounds serialize");
    }
    emit(common.output.as_deref(), &json_text(&v))
}
