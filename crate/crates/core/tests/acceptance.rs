//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits nonzero on
//! any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rsw_core::base::{RadicialElem, RatFunc, Var};
use rsw_core::conductors::{cform, invariants, total_dimension, Character};
use rsw_core::corpus::corpus;
use rsw_core::dilatation::geometric_cform;
use rsw_core::expr::{parse_ratfunc, Vocabulary};
use rsw_core::local::LocalElem;
use rsw_core::snc::{divisor_report, swap_equivariant, Component, ConductorDivisor, GermStatus, GlobalCharacter};
use rsw_core::suites::{
    conductor_suite, crosscheck_suite, filtration_suite, qpoly_suite, twist_suite,
    valuation_suite, SuiteReport,
};
use rsw_core::witt::WittVec;

const SEED: u64 = 20240611;

struct Outcome {
    id: u32,
    title: &'static str,
    ok: bool,
    detail: String,
}

fn timed_suite(r: &SuiteReport, limit: Duration) -> (bool, String) {
    let in_time = r.elapsed < limit;
    let mut detail = format!(
        "{}/{} cases, {:.2}s (limit {}s)",
        r.passed,
        r.cases,
        r.elapsed.as_secs_f64(),
        limit.as_secs()
    );
    if let Some(f) = r.failures.first() {
        detail.push_str(&format!("; first failure: {f}"));
    }
    (r.ok() && in_time && r.cases > 0, detail)
}

fn local_char(p: u32, comps: &[&str]) -> Character {
    let c = comps
        .iter()
        .map(|s| LocalElem::new(parse_ratfunc(s, p, &Vocabulary::LOCAL).unwrap()))
        .collect();
    Character::new(WittVec::new(p, c)).unwrap()
}

fn global_char(p: u32, comps: &[&str]) -> GlobalCharacter {
    let c = comps
        .iter()
        .map(|s| parse_ratfunc(s, p, &Vocabulary::GLOBAL).unwrap())
        .collect();
    GlobalCharacter::new(WittVec::new(p, c)).unwrap()
}

fn main() -> ExitCode {
    let mut outcomes = Vec::new();
    let mut violations = 0usize;

    let r1 = qpoly_suite(SEED, 200);
    let (ok, detail) = timed_suite(&r1, Duration::from_secs(30));
    violations += r1.exactness_violations;
    outcomes.push(Outcome { id: 1, title: "Q-polynomial suite", ok, detail });

    let r2 = filtration_suite(SEED, 500);
    let (ok, detail) = timed_suite(&r2, Duration::from_secs(30));
    violations += r2.exactness_violations;
    outcomes.push(Outcome { id: 2, title: "filtration lemma suite", ok, detail });

    let r3 = conductor_suite(SEED, 50);
    let (ok, detail) = timed_suite(&r3, Duration::from_secs(30));
    violations += r3.exactness_violations;
    outcomes.push(Outcome { id: 3, title: "conductor sanity", ok, detail });

    let r4 = twist_suite(SEED, 50);
    let (ok, detail) = timed_suite(&r4, Duration::from_secs(60));
    violations += r4.exactness_violations;
    outcomes.push(Outcome { id: 4, title: "well-definedness under (F-1)-twists", ok: ok && r4.cases == 500, detail });

    // criterion 5: corpus shape, sign pin, full cross-check
    let start = Instant::now();
    let entries = corpus();
    let mut exceptional = 0;
    let mut shape_ok = entries.len() >= 50;
    for e in &entries {
        shape_ok &= (e.p == 2 || e.p == 3) && e.comps.len() <= 2;
        match e.character().and_then(|c| total_dimension(&c)) {
            Ok((dt, _)) => {
                shape_ok &= (2..=6).contains(&dt);
                if e.p == 2 && dt == 2 {
                    exceptional += 1;
                }
            }
            Err(_) => shape_ok = false,
        }
    }
    shape_ok &= exceptional >= 10;
    let pin = local_char(3, &["x/t^3"]);
    let pin_ok = matches!(
        (cform(&pin), geometric_cform(&pin)),
        (Ok(Some(a)), Ok(Some(b))) if a == b && a.c_x == RatFunc::constant(-1, 3)
    );
    let r5 = crosscheck_suite(usize::MAX);
    violations += r5.exactness_violations;
    let elapsed = start.elapsed();
    outcomes.push(Outcome {
        id: 5,
        title: "geometric cform = cform on corpus",
        ok: shape_ok && pin_ok && r5.ok() && r5.cases == entries.len() && elapsed < Duration::from_secs(120),
        detail: format!(
            "{}/{} characters, {exceptional} with (p, dt) = (2, 2), sign pin {}, {:.2}s (limit 120s){}",
            r5.passed,
            r5.cases,
            if pin_ok { "ok" } else { "FAILED" },
            elapsed.as_secs_f64(),
            r5.failures.first().map(|f| format!("; first failure: {f}")).unwrap_or_default()
        ),
    });

    // criterion 6
    let ex = local_char(2, &["x/t^2"]);
    let expected_pi = RadicialElem::from_y(RatFunc::var(Var::X, 2));
    let dt_ok = matches!(total_dimension(&ex), Ok((2, _)));
    let both = [cform(&ex), geometric_cform(&ex)];
    let forms_ok = both.iter().all(|f| {
        matches!(f, Ok(Some(g)) if g.level == 2 && g.c_pi == expected_pi && g.c_x == RatFunc::one(2))
    });
    outcomes.push(Outcome {
        id: 6,
        title: "exceptional case x/t^2 at p = 2",
        ok: dt_ok && forms_ok,
        detail: format!("dt = 2: {dt_ok}, (y dt + dx)/t^2 on both sides: {forms_ok}"),
    });

    let r7 = valuation_suite(usize::MAX);
    violations += r7.exactness_violations;
    let detail = format!(
        "{}/{} (character, r) checks{}",
        r7.passed,
        r7.cases,
        r7.failures.first().map(|f| format!("; first failure: {f}")).unwrap_or_default()
    );
    outcomes.push(Outcome { id: 7, title: "valuation lemma suite", ok: r7.ok() && r7.cases > 0, detail });

    // criterion 8
    let a = global_char(2, &["x2/x1^3"]);
    let sym = global_char(3, &["1/(x1^2*x2^2)"]);
    let (ok8, detail) = match (divisor_report(&a), divisor_report(&sym), swap_equivariant(&sym), swap_equivariant(&a)) {
        (Ok(r), Ok(rs), Ok(eq_sym), Ok(eq_a)) => {
            let div_ok = r.r_chi == ConductorDivisor { d1: 3, d2: 0 }
                && r.r_chi_prime == ConductorDivisor { d1: 4, d2: 1 }
                && r.supports_agree();
            let germ_ok = r.germs.get(&Component::D1) == Some(&GermStatus::Consistent)
                && rs.germs.len() == 2
                && rs.germs.values().all(|g| *g == GermStatus::Consistent);
            (
                div_ok && germ_ok && eq_sym && eq_a,
                format!("R = {:?}, R' = {:?}, germs consistent: {germ_ok}, swap equivariant: {}", r.r_chi, r.r_chi_prime, eq_sym && eq_a),
            )
        }
        _ => (false, "computation failed".to_string()),
    };
    outcomes.push(Outcome { id: 8, title: "divisor-level invariants", ok: ok8, detail });

    // criterion 9 also covers the direct computations above
    for c in [&pin, &ex] {
        if let Err(rsw_core::Error::ExactnessViolation(_)) = invariants(c) {
            violations += 1;
        }
    }
    outcomes.push(Outcome {
        id: 9,
        title: "no exactness violations",
        ok: violations == 0,
        detail: format!("{violations} violations across all suites"),
    });

    let mut all = true;
    for o in &outcomes {
        all &= o.ok;
        println!(
            "[{}] criterion {}: {} ({})",
            if o.ok { "PASS" } else { "FAIL" },
            o.id,
            o.title,
            o.detail
        );
    }
    if all {
        println!("acceptance: all {} criteria passed", outcomes.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED");
        ExitCode::FAILURE
    }
}
