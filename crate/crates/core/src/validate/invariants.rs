//! Consistency checks between independent routes to the same quantity.

use std::time::Instant;

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use super::quadrature::{quadrature, zeta_positive};
use super::CheckReport;
use crate::asymptotic::{eval_lambda, log_coefficient_poly};
use crate::constants::{gkbj, gkbj_constant, kinkelin_logvarpi, varpi, zeta_neg_int};
use crate::context::Context;
use crate::error::Result;
use crate::gengamma::{exact_log_gengamma, log_gengamma};
use crate::hurwitz::{hurwitz_deriv, hurwitz_deriv_integer, zeta_deriv_neg};
use crate::mpcore::{binomial, factorial, harmonic, horner_exact, pow10, roundoff};

fn abs_diff(a: &Float, b: &Float) -> Float {
    Float::with_val(a.prec().max(b.prec()), a - b).abs()
}

fn exact_report(ctx: &Context, name: &str, k: Option<i64>, ok: bool, start: Instant) -> CheckReport {
    let residual = ctx.real(if ok { 0 } else { 1 });
    CheckReport::new(name, k, None, residual, ctx.precision().target_eps(), start)
}

/// `exact_log_gengamma(k, w) - Λ_k(w+1)` for `w ∈ {50, 100, 200}` must not
/// depend on `w`. Sensitive to any wrong coefficient in the expansion.
pub fn stabilization_check(ctx: &Context, k: u32) -> Result<CheckReport> {
    let start = Instant::now();
    let mut values = Vec::new();
    for w in [50i64, 100, 200] {
        let exact = exact_log_gengamma(ctx, k, w)?;
        let lambda = eval_lambda(ctx, k as i32, &ctx.real(w), 20)?;
        let c = Float::with_val(ctx.bits(), &exact.value - &lambda.value);
        let err = exact.err + lambda.err + roundoff(&c, ctx.bits());
        values.push((c, err));
    }
    let (mid, mid_err) = &values[1];
    let mut residual = ctx.real(0);
    let mut tolerance = ctx.real(0);
    for (c, e) in [&values[0], &values[2]] {
        residual = residual.max(&abs_diff(c, mid));
        tolerance = tolerance.max(&Float::with_val(ctx.bits(), e + mid_err));
    }
    Ok(CheckReport::new(
        "stabilization",
        Some(k as i64),
        None,
        residual,
        tolerance,
        start,
    ))
}

/// The polynomial multiplying `log x` in `Λ_k(x+1)` equals
/// `B_{k+1}(x+1)/(k+1)` at `x = 1..=20`, in exact arithmetic.
pub fn log_coefficient_check(ctx: &Context, k: u32) -> Result<CheckReport> {
    let start = Instant::now();
    let poly = log_coefficient_poly(ctx, k)?;
    let bpoly = ctx.bernoulli().poly_coefficients(k as usize + 1);
    let ok = (1..=20).all(|x| {
        let at = Rational::from(x);
        let shifted = Rational::from(x + 1);
        horner_exact(&poly, &at) == horner_exact(&bpoly, &shifted) / Rational::from(k + 1)
    });
    Ok(exact_report(ctx, "log_coefficient", Some(k as i64), ok, start))
}

/// `Σ_{j<=n} C(n+1, j) B_j = 0` for `1 <= n <= 40`, and `B_{2m+1} = 0`.
pub fn bernoulli_recurrence_check(ctx: &Context) -> CheckReport {
    let start = Instant::now();
    let b = ctx.bernoulli();
    let mut ok = (1..=40u32).all(|n| {
        let mut s = Rational::new();
        for j in 0..=n {
            s += b.get(j as usize) * binomial(n + 1, j);
        }
        s == 0
    });
    ok &= (1..=20usize).all(|m| b.get(2 * m + 1) == 0);
    exact_report(ctx, "bernoulli_recurrence", None, ok, start)
}

/// `φ_n(w+1) = Σ_{i<=w} i^n` for `n <= 12`, `w <= 50`.
pub fn power_sum_check(ctx: &Context) -> CheckReport {
    let start = Instant::now();
    let mut ok = true;
    for n in 1..=12u32 {
        let mut sum = Integer::new();
        for w in 1..=50u32 {
            sum += Integer::from(Integer::u_pow_u(w, n));
            ok &= ctx.bernoulli().phi_exact(n as usize, &Rational::from(w + 1)) == sum;
        }
    }
    exact_report(ctx, "power_sums", None, ok, start)
}

/// `L_k + ζ'(-k) + H_k ζ(-k) = 0`, with `ζ'(-k)` taken from the shifted
/// expansion at `w = 1`, which does not involve `L_k`.
pub fn adamchik_check(ctx: &Context, k: u32) -> Result<CheckReport> {
    let start = Instant::now();
    let l = gkbj(ctx, k)?;
    let d = hurwitz_deriv(ctx, k, &ctx.real(1))?;
    let hz = harmonic(k) * zeta_neg_int(ctx, k);
    let sum = Float::with_val(ctx.bits(), &l.value + &d.value) + hz;
    let tolerance = l.err + d.err + ctx.precision().target_eps();
    Ok(CheckReport::new(
        "adamchik_consistency",
        Some(k as i64),
        None,
        sum.abs(),
        tolerance,
        start,
    ))
}

/// `ζ'(-2m) = (-1)^m (2m)! ζ(2m+1) / (2 (2π)^{2m})`.
pub fn functional_equation_check(ctx: &Context, m: u32) -> Result<CheckReport> {
    let start = Instant::now();
    let bits = ctx.bits();
    let d = zeta_deriv_neg(ctx, 2 * m)?;
    let z = zeta_positive(ctx, 2 * m + 1)?;
    let two_pi = Float::with_val(bits, Constant::Pi) * 2u32;
    let denom = two_pi.pow(2 * m) * 2u32;
    let mut rhs = z * Float::with_val(bits, factorial(2 * m)) / denom;
    if m % 2 == 1 {
        rhs = -rhs;
    }
    let tolerance = d.err + ctx.precision().target_eps();
    Ok(CheckReport::new(
        "functional_equation",
        Some(2 * m as i64),
        None,
        abs_diff(&d.value, &rhs),
        tolerance,
        start,
    ))
}

/// The shifted route at `w = 1` reproduces `ζ'(-k)`.
pub fn w_one_check(ctx: &Context, k: u32) -> Result<CheckReport> {
    let start = Instant::now();
    let a = hurwitz_deriv(ctx, k, &ctx.real(1))?;
    let b = zeta_deriv_neg(ctx, k)?;
    let tolerance = a.err + b.err + ctx.precision().target_eps();
    Ok(CheckReport::new(
        "w_one_consistency",
        Some(k as i64),
        Some(ctx.real(1)),
        abs_diff(&a.value, &b.value),
        tolerance,
        start,
    ))
}

/// `ζ'(-k, w+1) - ζ'(-k, w) = w^k log w`.
pub fn forward_difference_check(ctx: &Context, k: u32, w: &Float) -> Result<CheckReport> {
    let start = Instant::now();
    let bits = ctx.bits();
    let w = Float::with_val(bits, w);
    let hi = hurwitz_deriv(ctx, k, &Float::with_val(bits, &w + 1u32))?;
    let lo = hurwitz_deriv(ctx, k, &w)?;
    let step = Float::with_val(bits, w.ln_ref()) * Float::with_val(bits, (&w).pow(k));
    let diff = Float::with_val(bits, &hi.value - &lo.value);
    let tolerance = hi.err + lo.err + ctx.precision().target_eps();
    Ok(CheckReport::new(
        "forward_difference",
        Some(k as i64),
        Some(w),
        abs_diff(&diff, &step),
        tolerance,
        start,
    ))
}

/// Exact-sum and asymptotic-shift routes agree at an integer `w`, to the
/// target number of significant digits.
pub fn cross_method_check(ctx: &Context, k: u32, w: i64) -> Result<CheckReport> {
    let start = Instant::now();
    let a = hurwitz_deriv_integer(ctx, k, w)?;
    let b = hurwitz_deriv(ctx, k, &ctx.real(w))?;
    let scale = Float::with_val(ctx.bits(), a.value.abs_ref()).max(&ctx.real(1));
    let tolerance = a.err + b.err + ctx.precision().target_eps() * scale;
    Ok(CheckReport::new(
        "cross_method",
        Some(k as i64),
        Some(ctx.real(w)),
        abs_diff(&a.value, &b.value),
        tolerance,
        start,
    ))
}

/// `ζ'(-1, 1/2) = -ζ'(-1)/2 - log(2)/24`.
pub fn duplication_check(ctx: &Context) -> Result<CheckReport> {
    let start = Instant::now();
    let bits = ctx.bits();
    let half = ctx.real(0.5);
    let v = hurwitz_deriv(ctx, 1, &half)?;
    let d1 = zeta_deriv_neg(ctx, 1)?;
    let expect = Float::with_val(bits, -&d1.value) / 2u32 - ctx.real(2).ln() / 24u32;
    let tolerance = v.err + d1.err + ctx.precision().target_eps();
    Ok(CheckReport::new(
        "duplication",
        Some(1),
        Some(half),
        abs_diff(&v.value, &expect),
        tolerance,
        start,
    ))
}

/// A computed constant against a printed decimal, which counts as matched
/// when it is within half a unit of its last printed place.
fn printed_report(ctx: &Context, name: &str, k: Option<i64>, value: &Float, printed: &str) -> CheckReport {
    let start = Instant::now();
    let places = printed.split_once('.').map_or(0, |(_, f)| f.len()) as i32;
    let p = Float::with_val(ctx.bits(), Float::parse(printed).expect("literal"));
    let tolerance = pow10(-places, ctx.bits()) / 2u32;
    CheckReport::new(name, k, None, abs_diff(value, &p), tolerance, start)
}

/// `ϖ(2)` and Kinkelin's `log ϖ` against their classical decimal values.
pub fn printed_constants_check(ctx: &Context) -> Result<Vec<CheckReport>> {
    let v2 = varpi(ctx, 2)?;
    let kk = kinkelin_logvarpi(ctx)?;
    Ok(vec![
        printed_report(ctx, "printed_varpi", Some(2), &v2.value, "-0.2475089541"),
        printed_report(ctx, "printed_kinkelin", None, &kk.value, "0.33084228740"),
    ])
}

/// `ϖ(3) = -3 L_2 = -3 ζ(3) / (4π²)`.
pub fn varpi3_zeta_check(ctx: &Context) -> Result<CheckReport> {
    let start = Instant::now();
    let bits = ctx.bits();
    let v3 = varpi(ctx, 3)?;
    let pi = Float::with_val(bits, Constant::Pi);
    let expect = zeta_positive(ctx, 3)? * -3i32 / (Float::with_val(bits, &pi * &pi) * 4u32);
    let tolerance = v3.err + ctx.precision().target_eps();
    Ok(CheckReport::new(
        "varpi3_zeta3",
        Some(3),
        None,
        abs_diff(&v3.value, &expect),
        tolerance,
        start,
    ))
}

/// `ζ(2m) = π^{2m} |B_{2m}| 2^{2m-1} / (2m)!`.
pub fn zeta_closed_form_check(ctx: &Context, m: u32) -> Result<CheckReport> {
    let start = Instant::now();
    let bits = ctx.bits();
    let z = zeta_positive(ctx, 2 * m)?;
    let b = Rational::from(ctx.bernoulli().get(2 * m as usize).abs_ref());
    let pi = Float::with_val(bits, Constant::Pi);
    let expect = pi.pow(2 * m) * b * Float::with_val(bits, Integer::from(Integer::u_pow_u(2, 2 * m - 1))) / Float::with_val(bits, factorial(2 * m));
    let tolerance = roundoff(&expect, bits) * 64u32;
    Ok(CheckReport::new(
        "zeta_closed_form",
        Some(2 * m as i64),
        None,
        abs_diff(&z, &expect),
        tolerance,
        start,
    ))
}

/// `|L_k + Λ_k(x+1) - log Γ_k(x+1)|` stays within the reported error for a
/// short, medium and long tail.
pub fn truncation_honesty_check(ctx: &Context, k: u32, x: i64, tail: usize) -> Result<CheckReport> {
    let start = Instant::now();
    let l = gkbj(ctx, k)?;
    let lambda = eval_lambda(ctx, k as i32, &ctx.real(x), tail)?;
    let exact = exact_log_gengamma(ctx, k, x)?;
    let approx = Float::with_val(ctx.bits(), &l.value + &lambda.value);
    let tolerance = l.err + lambda.err + exact.err;
    Ok(CheckReport::new(
        &format!("truncation_honesty_t{tail}"),
        Some(k as i64),
        Some(ctx.real(x)),
        abs_diff(&approx, &exact.value),
        tolerance,
        start,
    ))
}

/// Trial values at `w = 100` and `w = 200` agree within their errors.
pub fn parameter_robustness_check(ctx: &Context, k: u32) -> Result<CheckReport> {
    let start = Instant::now();
    let a = gkbj_constant(ctx, k, 100, 20)?;
    let b = gkbj_constant(ctx, k, 200, 20)?;
    Ok(CheckReport::new(
        "parameter_robustness",
        Some(k as i64),
        None,
        abs_diff(&a.value, &b.value),
        a.err + b.err,
        start,
    ))
}

/// The digamma- and trigamma-shaped expansions against harmonic sums:
/// `Λ_{-1}(1001) = H_1000 - γ` and `Λ_{-2}(1001) = Σ_{i<=1000} 1/i² - ζ(2)`.
pub fn negative_order_check(ctx: &Context) -> Result<Vec<CheckReport>> {
    let bits = ctx.bits();
    let x = ctx.real(1000);
    let mut h1 = Float::new(bits + 32);
    let mut h2 = Float::new(bits + 32);
    for i in (1..=1000u32).rev() {
        let r = Float::with_val(bits + 32, i).recip();
        h2 += Float::with_val(bits + 32, r.square_ref());
        h1 += r;
    }
    let gamma = Float::with_val(bits + 32, Constant::Euler);
    let pi = Float::with_val(bits + 32, Constant::Pi);
    let targets = [
        (-1, Float::with_val(bits, h1 - gamma)),
        (-2, Float::with_val(bits, h2 - pi.square() / 6u32)),
    ];
    let mut out = Vec::new();
    for (k, expect) in targets {
        let start = Instant::now();
        let v = eval_lambda(ctx, k, &x, 10)?;
        let tolerance = v.err.clone() + roundoff(&expect, bits) * 8u32;
        out.push(CheckReport::new(
            "negative_order",
            Some(k as i64),
            Some(x.clone()),
            abs_diff(&v.value, &expect),
            tolerance,
            start,
        ));
    }
    Ok(out)
}

/// `∫_0^1 1 = 1`, `∫_0^1 log t = -1` and `∫_0^1 log Γ(t+1) = log√(2π) - 1`.
pub fn quadrature_examples_check(ctx: &Context, with_gamma: bool) -> Result<Vec<CheckReport>> {
    let bits = ctx.bits();
    let (zero, one) = (ctx.real(0), ctx.real(1));
    let eps = ctx.precision().target_eps();
    let mut out = Vec::new();

    let start = Instant::now();
    let q = quadrature(ctx, |_| Ok(ctx.real(1)), &zero, &one)?;
    out.push(CheckReport::new("quadrature_unit", None, None, abs_diff(&q.value, &one), q.err + &eps, start));

    let start = Instant::now();
    let q = quadrature(ctx, |t| Ok(Float::with_val(bits, t.ln_ref())), &zero, &one)?;
    out.push(CheckReport::new("quadrature_log", None, None, abs_diff(&q.value, &-one.clone()), q.err + &eps, start));

    if with_gamma {
        let start = Instant::now();
        let q = quadrature(
            ctx,
            |t| Ok(log_gengamma(ctx, 0, &Float::with_val(bits, t + 1u32))?.value),
            &zero,
            &one,
        )?;
        let expect = Float::with_val(bits, Float::with_val(bits, Constant::Pi) * 2u32).ln() / 2u32 - 1u32;
        out.push(CheckReport::new("quadrature_log_gamma", None, None, abs_diff(&q.value, &expect), q.err + &eps, start));
    }
    Ok(out)
}
