//! Independent cross-checks of the identities behind the library, the
//! quadrature and `ζ(s)` routines they need, and the self-test driver.

mod identities;
mod invariants;
mod quadrature;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use rug::Float;

use crate::context::Context;
use crate::error::{Error, Result};

pub use identities::{
    alexeiewsky_check, alt_recursion_check, bendersky_recursion_check, general_solution_check,
    gint_gamma_variant_check, gint_moment_check, jeffery_difference_check,
};
pub use invariants::{
    adamchik_check, bernoulli_recurrence_check, cross_method_check, duplication_check,
    forward_difference_check, functional_equation_check, log_coefficient_check,
    negative_order_check, parameter_robustness_check, power_sum_check, printed_constants_check,
    quadrature_examples_check, stabilization_check, truncation_honesty_check, varpi3_zeta_check,
    w_one_check, zeta_closed_form_check,
};
pub use quadrature::{quadrature, zeta_positive, Quadrature};

/// Outcome of one check. `passed` is exactly `residual <= tolerance`.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub name: String,
    pub k: Option<i64>,
    pub x_or_w: Option<Float>,
    pub residual: Float,
    pub tolerance: Float,
    pub passed: bool,
    pub elapsed: Duration,
    /// Set when the check could not be carried out.
    pub detail: Option<String>,
}

impl CheckReport {
    pub fn new(
        name: &str,
        k: Option<i64>,
        x_or_w: Option<Float>,
        residual: Float,
        tolerance: Float,
        start: Instant,
    ) -> Self {
        let passed = residual <= tolerance;
        Self {
            name: name.to_string(),
            k,
            x_or_w,
            residual,
            tolerance,
            passed,
            elapsed: start.elapsed(),
            detail: None,
        }
    }

    /// A failed report for a check that raised `err`.
    pub fn errored(ctx: &Context, name: &str, k: Option<i64>, err: &Error, start: Instant) -> Self {
        let mut r = Self::new(
            name,
            k,
            None,
            ctx.real(f64::INFINITY),
            ctx.precision().target_eps(),
            start,
        );
        r.detail = Some(err.to_string());
        r
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {}", self.name)?;
        if let Some(k) = self.k {
            write!(f, " k={k}")?;
        }
        if let Some(x) = &self.x_or_w {
            write!(f, " x={}", x.to_f64())?;
        }
        write!(
            f,
            " residual={:.3e} tol={:.3e} ({} ms)",
            self.residual.to_f64(),
            self.tolerance.to_f64(),
            self.elapsed.as_millis()
        )?;
        if let Some(d) = &self.detail {
            write!(f, " [{d}]")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelftestLevel {
    Quick,
    Full,
}

impl FromStr for SelftestLevel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(SelftestLevel::Quick),
            "full" => Ok(SelftestLevel::Full),
            other => Err(Error::InvalidArgument(format!(
                "unknown selftest level {other:?}"
            ))),
        }
    }
}

type Job<'a> = Box<dyn Fn() -> Vec<CheckReport> + Send + Sync + 'a>;

fn one<'a>(
    ctx: &'a Context,
    name: &'a str,
    k: Option<i64>,
    f: impl Fn() -> Result<CheckReport> + Send + Sync + 'a,
) -> Job<'a> {
    Box::new(move || {
        let start = Instant::now();
        vec![f().unwrap_or_else(|e| CheckReport::errored(ctx, name, k, &e, start))]
    })
}

fn many<'a>(
    ctx: &'a Context,
    name: &'a str,
    f: impl Fn() -> Result<Vec<CheckReport>> + Send + Sync + 'a,
) -> Job<'a> {
    Box::new(move || {
        let start = Instant::now();
        f().unwrap_or_else(|e| vec![CheckReport::errored(ctx, name, None, &e, start)])
    })
}

fn quick_jobs(ctx: &Context) -> Vec<Job<'_>> {
    let mut jobs: Vec<Job> = vec![
        Box::new(move || vec![bernoulli_recurrence_check(ctx)]),
        Box::new(move || vec![power_sum_check(ctx)]),
    ];
    for k in 0..=6u32 {
        jobs.push(one(ctx, "stabilization", Some(k as i64), move || stabilization_check(ctx, k)));
        jobs.push(one(ctx, "log_coefficient", Some(k as i64), move || log_coefficient_check(ctx, k)));
        jobs.push(one(ctx, "adamchik_consistency", Some(k as i64), move || adamchik_check(ctx, k)));
        jobs.push(one(ctx, "w_one_consistency", Some(k as i64), move || w_one_check(ctx, k)));
    }
    for m in 1..=3u32 {
        jobs.push(one(ctx, "functional_equation", Some(2 * m as i64), move || functional_equation_check(ctx, m)));
        jobs.push(one(ctx, "zeta_closed_form", Some(2 * m as i64), move || zeta_closed_form_check(ctx, m)));
    }
    for (k, x) in [(0u32, 100u32), (1, 100), (2, 50)] {
        jobs.push(one(ctx, "bendersky_recursion", Some(k as i64), move || {
            bendersky_recursion_check(ctx, k, &ctx.real(x))
        }));
    }
    for (k, x) in [(0u32, 1i64), (1, 2), (4, 7)] {
        jobs.push(one(ctx, "jeffery_difference", Some(k as i64), move || jeffery_difference_check(ctx, k, x)));
    }
    jobs.push(one(ctx, "duplication", Some(1), move || duplication_check(ctx)));
    jobs.push(many(ctx, "printed_constants", move || printed_constants_check(ctx)));
    jobs.push(many(ctx, "negative_order", move || negative_order_check(ctx)));
    jobs.push(many(ctx, "quadrature", move || quadrature_examples_check(ctx, false)));
    jobs.push(one(ctx, "alexeiewsky", None, move || alexeiewsky_check(ctx, &ctx.real(1))));
    jobs
}

fn full_jobs(ctx: &Context) -> Vec<Job<'_>> {
    let mut jobs = quick_jobs(ctx);
    jobs.push(many(ctx, "quadrature", move || {
        Ok(quadrature_examples_check(ctx, true)?.split_off(2))
    }));
    for k in 3..=4u32 {
        jobs.push(one(ctx, "bendersky_recursion", Some(k as i64), move || {
            bendersky_recursion_check(ctx, k, &ctx.real(60))
        }));
    }
    for (k, x) in [(0u32, 2.0), (0, 0.5), (1, 3.0), (1, 1.5), (2, 2.5)] {
        jobs.push(one(ctx, "alt_recursion", Some(k as i64), move || {
            alt_recursion_check(ctx, k, &ctx.real(x))
        }));
    }
    jobs.push(one(ctx, "alt_recursion", Some(0), move || alt_recursion_check(ctx, 0, &ctx.real(1))));
    for x in [2.0, 5.5, 0.5] {
        jobs.push(one(ctx, "alexeiewsky", None, move || alexeiewsky_check(ctx, &ctx.real(x))));
    }
    for k in 1..=3u32 {
        for x in [1.0, 2.0, 0.5, 3.7] {
            jobs.push(one(ctx, "general_solution", Some(k as i64), move || {
                general_solution_check(ctx, k, &ctx.real(x))
            }));
        }
    }
    for k in 1..=5u32 {
        jobs.push(one(ctx, "gint_moment", Some(k as i64), move || gint_moment_check(ctx, k)));
    }
    jobs.push(one(ctx, "gint_gamma_variant", Some(2), move || gint_gamma_variant_check(ctx)));
    for k in 0..=6u32 {
        jobs.push(many(ctx, "jeffery_difference", move || {
            (1..=12).map(|x| jeffery_difference_check(ctx, k, x)).collect()
        }));
        jobs.push(one(ctx, "parameter_robustness", Some(k as i64), move || parameter_robustness_check(ctx, k)));
    }
    for k in 0..=4u32 {
        jobs.push(many(ctx, "cross_method", move || {
            (2..=50).map(|w| cross_method_check(ctx, k, w)).collect()
        }));
        for w in [0.3, 1.7, 5.25] {
            jobs.push(one(ctx, "forward_difference", Some(k as i64), move || {
                forward_difference_check(ctx, k, &ctx.real(w))
            }));
        }
        for x in [50i64, 100] {
            jobs.push(many(ctx, "truncation_honesty", move || {
                [5, 10, 20]
                    .into_iter()
                    .map(|t| truncation_honesty_check(ctx, k, x, t))
                    .collect()
            }));
        }
    }
    jobs.push(one(ctx, "varpi3_zeta3", Some(3), move || varpi3_zeta_check(ctx)));
    jobs
}

/// Runs the checks of `level`. Failures are reported, never raised.
///
/// `Quick` covers the exact and cheap checks; `Full` adds every
/// quadrature-based identity over its grid and runs checks in parallel.
pub fn selftest(ctx: &Context, level: SelftestLevel) -> Vec<CheckReport> {
    match level {
        SelftestLevel::Quick => quick_jobs(ctx).iter().flat_map(|j| j()).collect(),
        SelftestLevel::Full => {
            let jobs = full_jobs(ctx);
            let parts: Vec<Vec<CheckReport>> = jobs.par_iter().map(|j| j()).collect();
            parts.into_iter().flatten().collect()
        }
    }
}

/// True when every report passed.
pub fn all_passed(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.passed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_pass_rule() {
        let c = Context::new(15).unwrap();
        let r = CheckReport::new("x", None, None, c.real(1e-20), c.real(1e-20), Instant::now());
        assert!(r.passed);
        let r = CheckReport::new("x", None, None, c.real(2e-20), c.real(1e-20), Instant::now());
        assert!(!r.passed);
        let r = CheckReport::new("x", None, None, c.real(f64::NAN), c.real(1e-20), Instant::now());
        assert!(!r.passed);
    }

    #[test]
    fn level_parsing() {
        assert_eq!("quick".parse::<SelftestLevel>().unwrap(), SelftestLevel::Quick);
        assert_eq!("full".parse::<SelftestLevel>().unwrap(), SelftestLevel::Full);
        assert!("medium".parse::<SelftestLevel>().is_err());
    }

    #[test]
    fn quick_passes_at_fifteen_digits() {
        let c = Context::new(15).unwrap();
        let reports = selftest(&c, SelftestLevel::Quick);
        for r in &reports {
            assert!(r.passed, "{r}");
        }
    }

    #[test]
    fn corrupted_bernoulli_fails_stabilization() {
        let c = Context::new(15)
            .unwrap()
            .with_corrupted_bernoulli(4, rug::Rational::from((-1, 29)));
        let reports = selftest(&c, SelftestLevel::Quick);
        assert!(reports.iter().any(|r| !r.passed && r.name == "stabilization"));
    }
}
