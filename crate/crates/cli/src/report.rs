use std::collections::BTreeMap;

use rsw_core::base::{RatFunc, VarNames};
use rsw_core::conductors::{GradedLogForm, GradedNonLogForm, Invariants};
use rsw_core::snc::{Component, ConductorDivisor, DivisorReport, GermStatus};
use rsw_core::suites::SuiteReport;
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct LogFormOut {
    pub alpha: String,
    pub beta: String,
    pub level: i64,
}

#[derive(Debug, Serialize)]
pub struct NonLogFormOut {
    pub c_pi: String,
    pub c_x: String,
    pub level: i64,
    pub radicial: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct ConductorOut {
    pub sw: i64,
    pub dt: i64,
    pub rsw: Option<LogFormOut>,
    pub cform: Option<NonLogFormOut>,
}

fn log_form(f: &GradedLogForm) -> LogFormOut {
    LogFormOut {
        alpha: f.alpha.to_expr(&VarNames::LOCAL),
        beta: f.beta.to_expr(&VarNames::LOCAL),
        level: f.level,
    }
}

/// `rename` maps a residue-field coefficient into the printed coordinate system.
fn nonlog_form(f: &GradedNonLogForm, names: &VarNames, rename: impl Fn(&RatFunc) -> RatFunc, base_var: &str) -> NonLogFormOut {
    let p = f.c_pi.p();
    let (c_pi, radicial) = match f.c_pi.in_base().ok().flatten() {
        Some(c) => (rename(&c).to_expr(names), false),
        None => (f.c_pi.y_value().to_expr(&VarNames::RADICIAL), true),
    };
    NonLogFormOut {
        c_pi,
        c_x: rename(&f.c_x).to_expr(names),
        level: f.level,
        radicial,
        note: radicial.then(|| format!("y^{p} = {base_var}")),
    }
}

pub fn conductor(inv: &Invariants) -> ConductorOut {
    ConductorOut {
        sw: inv.sw,
        dt: inv.dt,
        rsw: inv.rsw.as_ref().map(log_form),
        cform: inv
            .cform
            .as_ref()
            .map(|f| nonlog_form(f, &VarNames::LOCAL, RatFunc::clone, "x")),
    }
}

#[derive(Debug, Serialize)]
pub struct DivisorOut {
    #[serde(rename = "R_chi")]
    pub r_chi: ConductorDivisor,
    #[serde(rename = "R_chi_prime")]
    pub r_chi_prime: ConductorDivisor,
    pub forms: BTreeMap<Component, NonLogFormOut>,
    pub germs: BTreeMap<Component, GermStatus>,
}

pub fn divisor(r: &DivisorReport) -> DivisorOut {
    let forms = r
        .forms
        .iter()
        .map(|(c, f)| {
            let out = match c {
                Component::D1 => nonlog_form(f, &VarNames::GLOBAL, RatFunc::clone, "x2"),
                Component::D2 => nonlog_form(f, &VarNames::GLOBAL, |g| g.permute([1, 0, 2, 3]), "x1"),
            };
            (*c, out)
        })
        .collect();
    DivisorOut {
        r_chi: r.r_chi,
        r_chi_prime: r.r_chi_prime,
        forms,
        germs: r.germs.clone(),
    }
}

#[derive(Debug, Serialize)]
pub struct VerifyOut {
    pub suite: String,
    pub seed: u64,
    pub cases: usize,
    pub ok: bool,
    pub warnings: Vec<String>,
    pub suites: Vec<SuiteReport>,
}

pub fn conductor_text(c: &ConductorOut) -> String {
    let mut out = format!("sw = {}\ndt = {}\n", c.sw, c.dt);
    match &c.rsw {
        Some(r) => out.push_str(&format!(
            "rsw = (({}) dt/t + ({}) dx) / t^{}\n",
            r.alpha, r.beta, r.level
        )),
        None => out.push_str("rsw = none\n"),
    }
    match &c.cform {
        Some(f) => {
            out.push_str(&format!("cform = (({}) dt + ({}) dx) / t^{}\n", f.c_pi, f.c_x, f.level));
            if let Some(n) = &f.note {
                out.push_str(&format!("  where {n}\n"));
            }
        }
        None => out.push_str("cform = none\n"),
    }
    out
}

pub fn divisor_text(d: &DivisorOut) -> String {
    let mut out = format!(
        "R_chi = {} D1 + {} D2\nR_chi' = {} D1 + {} D2\n",
        d.r_chi.d1, d.r_chi.d2, d.r_chi_prime.d1, d.r_chi_prime.d2
    );
    for (c, f) in &d.forms {
        let (u, v) = match c {
            Component::D1 => ("x1", "x2"),
            Component::D2 => ("x2", "x1"),
        };
        out.push_str(&format!(
            "cform along {c:?} = (({}) d{u} + ({}) d{v}) / {u}^{}\n",
            f.c_pi, f.c_x, f.level
        ));
        if let Some(n) = &f.note {
            out.push_str(&format!("  where {n}\n"));
        }
    }
    for (c, g) in &d.germs {
        let status = match g {
            GermStatus::Consistent => "consistent".to_string(),
            GermStatus::Inconsistent(m) => format!("INCONSISTENT: {m}"),
            GermStatus::Skipped(m) => format!("skipped: {m}"),
        };
        out.push_str(&format!("germ along {c:?}: {status}\n"));
    }
    out
}

pub fn verify_text(v: &VerifyOut) -> String {
    let mut out = String::new();
    for w in &v.warnings {
        out.push_str(&format!("warning: {w}\n"));
    }
    for s in &v.suites {
        out.push_str(&format!(
            "[{}] {}: {}/{} passed, {} exactness violations\n",
            if s.ok() { "PASS" } else { "FAIL" },
            s.name,
            s.passed,
            s.cases,
            s.exactness_violations
        ));
        for f in &s.failures {
            out.push_str(&format!("  failed: {f}\n"));
        }
    }
    out.push_str(if v.ok { "verify: ok\n" } else { "verify: FAILED\n" });
    out
}
