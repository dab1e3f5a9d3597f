//! Acceptance criteria, one line per criterion. Runs without the libtest
//! harness so the summary is always printed.
//!
//! A criterion that fails only because a quoted reference digit contradicts
//! an independently confirmed value is reported as FAIL with the evidence
//! but treated as an expected failure (strict: an unexpected pass, or any
//! other failure, makes the run exit non-zero).

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hzeta::constants::{gkbj, gkbj_constant, kinkelin_logvarpi, varpi, zeta_neg_int};
use hzeta::format::{format_value, format_value_round};
use hzeta::hurwitz::{hurwitz_deriv, hurwitz_deriv_integer, zeta_deriv_neg};
use hzeta::mpcore::harmonic;
use hzeta::validate::{selftest, zeta_positive, SelftestLevel};
use hzeta::{Context, Result};
use rug::float::{Constant, Round};
use rug::{Float, Rational};

struct Outcome {
    passed: bool,
    detail: String,
    /// Evidence that the failure lies in the quoted reference, not the value.
    known_discrepancy: Option<String>,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome {
        passed,
        detail: detail.into(),
        known_discrepancy: None,
    })
}

/// Significant digits of a printed decimal such as `-0.091345371176`.
fn significant_digits(printed: &str) -> u32 {
    printed
        .trim_start_matches('-')
        .chars()
        .filter(|c| c.is_ascii_digit())
        .skip_while(|c| *c == '0')
        .count() as u32
}

fn digits_match(value: &Float, printed: &str) -> (bool, String, String) {
    let digits = significant_digits(printed);
    let rounded = format_value(value, digits);
    let truncated = format_value_round(value, digits, Round::Zero);
    (rounded == printed || truncated == printed, rounded, truncated)
}

fn c1() -> Result<Outcome> {
    let ctx = Context::new(20)?;
    let v = varpi(&ctx, 2)?;
    let printed = "-0.2475089541";
    let got = format_value(&v.value, significant_digits(printed));
    outcome(got == printed, format!("varpi(2) = {got}, printed {printed}"))
}

fn c2() -> Result<Outcome> {
    let ctx = Context::new(20)?;
    let v = kinkelin_logvarpi(&ctx)?;
    let printed = "0.33084228740";
    let got = format_value(&v.value, significant_digits(printed));
    outcome(got == printed, format!("log varpi = {got}, printed {printed}"))
}

fn c3() -> Result<Outcome> {
    let ctx = Context::new(20)?;
    let mut oks = Vec::new();
    let mut parts = Vec::new();
    for (k, printed) in [(3, "-0.091345371176"), (4, "0.013180972097")] {
        let v = varpi(&ctx, k)?;
        let (ok, rounded, truncated) = digits_match(&v.value, printed);
        oks.push(ok);
        parts.push(format!(
            "varpi({k}) rounds to {rounded}, truncates to {truncated}, printed {printed} [{}]",
            if ok { "ok" } else { "mismatch" }
        ));
    }
    let mut out = Outcome {
        passed: oks.iter().all(|&o| o),
        detail: parts.join("; "),
        known_discrepancy: None,
    };
    // varpi(3) = -3 L_2 = -3 zeta(3) / (4 pi^2), with zeta(3) by direct summation
    if !oks[0] && oks[1] {
        let bits = ctx.bits();
        let pi = Float::with_val(bits, Constant::Pi);
        let oracle = zeta_positive(&ctx, 3)? * -3i32 / (Float::with_val(bits, &pi * &pi) * 4u32);
        let v3 = varpi(&ctx, 3)?.value;
        let diff = Float::with_val(bits, &v3 - &oracle).abs();
        if diff < 1e-18 {
            let (_, r, t) = digits_match(&oracle, "-0.091345371176");
            out.known_discrepancy = Some(format!(
                "-3 zeta(3)/(4 pi^2) = {} also rounds to {r} and truncates to {t}",
                format_value(&oracle, 16)
            ));
        }
    }
    Ok(out)
}

fn c4() -> Result<Outcome> {
    let ctx = Context::new(30)?;
    assert_eq!(ctx.precision().working_digits(), 45);
    let bound = 1e-29;
    let mut worst = 0.0f64;
    for k in 0..=2 {
        let a = gkbj_constant(&ctx, k, 100, 20)?;
        let b = gkbj_constant(&ctx, k, 1000, 40)?;
        let d = Float::with_val(ctx.bits(), &a.value - &b.value).abs().to_f64();
        worst = worst.max(d);
    }
    outcome(worst <= bound, format!("max |L_k(100,20) - L_k(1000,40)| = {worst:.3e} (bound {bound:e})"))
}

fn c5() -> Result<Outcome> {
    let ctx = Context::new(20)?;
    let mut worst = 0.0f64;
    for k in 0..=4 {
        for w in [2i64, 5, 17, 50] {
            let a = hurwitz_deriv(&ctx, k, &ctx.real(w))?;
            let b = hurwitz_deriv_integer(&ctx, k, w)?;
            let rel = Float::with_val(ctx.bits(), &a.value - &b.value).abs() / b.value.clone().abs();
            worst = worst.max(rel.to_f64());
        }
    }
    outcome(worst <= 1e-10, format!("max relative disagreement {worst:.3e} (bound 1e-10)"))
}

fn c6() -> Result<Outcome> {
    let ctx = Context::new(30)?;
    let d = zeta_deriv_neg(&ctx, 2)?;
    let pi = Float::with_val(ctx.bits(), Constant::Pi);
    let z3 = zeta_positive(&ctx, 3)?;
    let r = d.value + z3 / (Float::with_val(ctx.bits(), &pi * &pi) * 4u32);
    let r = r.abs().to_f64();
    outcome(r <= 1e-25, format!("|zeta'(-2) + zeta(3)/(4 pi^2)| = {r:.3e} (bound 1e-25)"))
}

fn c7() -> Result<Outcome> {
    let ctx = Context::new(20)?;
    let bound = 1e-18;
    let mut worst = 0.0f64;
    for k in 0..=6 {
        let l = gkbj(&ctx, k)?;
        let hz = harmonic(k) * zeta_neg_int(&ctx, k);
        // both the closed form and the route through the shifted expansion
        for d in [zeta_deriv_neg(&ctx, k)?.value, hurwitz_deriv(&ctx, k, &ctx.real(1))?.value] {
            let s = Float::with_val(ctx.bits(), &l.value + &d) + &hz;
            worst = worst.max(s.abs().to_f64());
        }
    }
    outcome(worst <= bound, format!("max |L_k + zeta'(-k) + H_k zeta(-k)| = {worst:.3e} (bound {bound:e})"))
}

fn c8() -> Result<Outcome> {
    let ctx = Context::new(20)?;
    let start = Instant::now();
    let reports = selftest(&ctx, SelftestLevel::Full);
    let elapsed = start.elapsed();
    let failed: Vec<String> = reports.iter().filter(|r| !r.passed).map(|r| r.to_string()).collect();
    let mut required = vec![
        "bendersky_recursion",
        "alt_recursion",
        "alexeiewsky",
        "general_solution",
        "gint_moment",
        "gint_gamma_variant",
        "jeffery_difference",
        "log_coefficient",
        "stabilization",
    ];
    required.retain(|n| !reports.iter().any(|r| r.name == *n));
    let ok = failed.is_empty() && required.is_empty() && elapsed < Duration::from_secs(300);
    let mut detail = format!("{} checks, {} failed, {:.1} s", reports.len(), failed.len(), elapsed.as_secs_f64());
    if !required.is_empty() {
        detail.push_str(&format!("; missing {required:?}"));
    }
    for f in failed {
        detail.push_str(&format!("\n      {f}"));
    }
    outcome(ok, detail)
}

fn c9() -> Result<Outcome> {
    let ctx = Context::new(20)?;
    let half = Float::with_val(ctx.bits(), Rational::from((1, 2)));
    let v = hurwitz_deriv(&ctx, 1, &half)?;
    let d1 = zeta_deriv_neg(&ctx, 1)?;
    let expect = Float::with_val(ctx.bits(), -&d1.value) / 2u32 - ctx.real(2).ln() / 24u32;
    let r = (v.value - expect).abs().to_f64();
    outcome(r <= 1e-15, format!("|zeta'(-1,1/2) + zeta'(-1)/2 + log(2)/24| = {r:.3e} (bound 1e-15)"))
}

fn main() -> ExitCode {
    type Criterion = (u32, &'static str, Duration, fn() -> Result<Outcome>);
    let criteria: [Criterion; 9] = [
        (1, "varpi(2) printed digits", Duration::from_secs(5), c1),
        (2, "Kinkelin log varpi printed digits", Duration::from_secs(5), c2),
        (3, "varpi(3), varpi(4) printed digits", Duration::from_secs(10), c3),
        (4, "trial method 29 places", Duration::from_secs(60), c4),
        (5, "shifted vs exact-sum, 10 digits", Duration::from_secs(60), c5),
        (6, "functional equation at k=2", Duration::from_secs(10), c6),
        (7, "Adamchik / GKBJ consistency", Duration::MAX, c7),
        (8, "full identity suite", Duration::from_secs(300), c8),
        (9, "duplication at w=1/2", Duration::MAX, c9),
    ];
    let (mut passed_count, mut expected, mut unexpected) = (0, 0, 0);
    for (n, name, limit, run) in criteria {
        let start = Instant::now();
        let res = run();
        let elapsed = start.elapsed();
        let (passed, detail, known) = match res {
            Ok(o) => (o.passed && elapsed < limit, o.detail, o.known_discrepancy),
            Err(e) => (false, format!("error: {e}"), None),
        };
        let timing = if limit == Duration::MAX {
            format!("{:.2} s", elapsed.as_secs_f64())
        } else {
            format!("{:.2} s, limit {} s", elapsed.as_secs_f64(), limit.as_secs())
        };
        let status = match (passed, &known) {
            (true, _) => {
                passed_count += 1;
                "PASS".to_string()
            }
            (false, Some(why)) if elapsed < limit => {
                expected += 1;
                format!("FAIL (known discrepancy in the quoted value: {why})")
            }
            (false, _) => {
                unexpected += 1;
                "FAIL".to_string()
            }
        };
        println!("criterion {n} {status}: {name} -- {detail} ({timing})");
    }
    println!(
        "acceptance: {passed_count} of 9 criteria passed; {expected} known discrepancy, {unexpected} unexpected failures"
    );
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
