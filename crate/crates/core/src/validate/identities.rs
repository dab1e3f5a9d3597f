//! Cross-checks of the integral and recursive identities linking the
//! expansions, the generalized gamma functions and the constants.

use std::sync::Mutex;
use std::time::Instant;

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Rational};

use super::quadrature::quadrature;
use super::CheckReport;
use crate::constants::gkbj;
use crate::context::Context;
use crate::error::{Error, Result};
use crate::gengamma::{exact_log_gengamma, log_gengamma};
use crate::hurwitz::{hurwitz_deriv, zeta_deriv_neg};
use crate::mpcore::{binomial, harmonic, roundoff};

/// Quadrature of an integrand that also reports its own error; the
/// returned error adds `(b - a) · max node error` to the quadrature error.
fn integrate<F>(ctx: &Context, f: F, a: &Float, b: &Float) -> Result<(Float, Float)>
where
    F: Fn(&Float) -> Result<(Float, Float)> + Sync,
{
    let worst = Mutex::new(Float::new(ctx.bits()));
    let q = quadrature(
        ctx,
        |t| {
            let (v, e) = f(t)?;
            let mut w = worst.lock().expect("error tracker poisoned");
            if e > *w {
                *w = e;
            }
            Ok(v)
        },
        a,
        b,
    )?;
    let width = Float::with_val(ctx.bits(), b - a);
    let node_err = worst.into_inner().expect("error tracker poisoned") * width;
    Ok((q.value, q.err + node_err))
}

/// `log Γ(t+1)` through the library's own order-zero function.
fn log_gamma1(ctx: &Context, t: &Float) -> Result<(Float, Float)> {
    let v = log_gengamma(ctx, 0, &Float::with_val(ctx.bits(), t + 1u32))?;
    Ok((v.value, v.err))
}

fn check_x(x: &Float, lo_open: f64, hi: f64, what: &str) -> Result<()> {
    if *x <= lo_open || *x > hi {
        return Err(Error::InvalidArgument(format!(
            "{what} needs {lo_open} < x <= {hi}, got {}",
            x.to_string_radix(10, Some(10))
        )));
    }
    Ok(())
}

/// `Λ_{k+1}(x+1) = (k+1)∫Λ_k + φ_{k+1}(x+1)/(k+1) + x H_k B_{k+1}`, with the
/// integration constant matched at twice the asymptotic threshold.
pub fn bendersky_recursion_check(ctx: &Context, k: u32, x: &Float) -> Result<CheckReport> {
    let start = Instant::now();
    let bits = ctx.bits();
    let tail = ctx.auto_lambda_terms();
    let upper = ctx.term_poly(k as i32 + 1, tail + 1)?;
    // integrating removes the 1/x tail term, so keep one spare
    let integral = ctx.term_poly(k as i32, tail + 2)?.integral();
    let hb = harmonic(k) * ctx.bernoulli().get(k as usize + 1);
    let k1 = k + 1;

    let sides = |at: &Float| -> Result<(Float, Float)> {
        if *at < 1 {
            return Err(Error::ArgumentTooSmall {
                k: k as i32,
                x: at.to_string_radix(10, Some(10)),
            });
        }
        let lhs = upper.evaluate(at, tail);
        let int = integral.evaluate(at, tail);
        let xp1 = Float::with_val(bits, at + 1u32);
        let phi = ctx.bernoulli().phi(k1 as usize, &xp1) / k1;
        let rhs = int.value * k1 + phi + Float::with_val(bits, at * &hb);
        let diff = lhs.value - &rhs;
        let err = lhs.err + int.err * k1 + roundoff(&rhs, bits) * 4u32;
        Ok((diff, err))
    };

    let x_ref = ctx.real(2 * ctx.asymptotic_threshold());
    let (d_ref, e_ref) = sides(&x_ref)?;
    let (d_x, e_x) = sides(&Float::with_val(bits, x))?;
    let residual = Float::with_val(bits, &d_x - &d_ref).abs();
    let tolerance = e_ref + e_x + ctx.precision().target_eps();
    Ok(CheckReport::new(
        "bendersky_recursion",
        Some(k as i64),
        Some(ctx.real(x)),
        residual,
        tolerance,
        start,
    ))
}

/// `(k+1)∫_0^x (ζ'(-k,t) - ζ(-k,t)/(k+1)) dt = ζ'(-k-1,x) - ζ'(-k-1)` with
/// `ζ(-k,t) = -B_{k+1}(t)/(k+1)`.
pub fn alt_recursion_check(ctx: &Context, k: u32, x: &Float) -> Result<CheckReport> {
    let start = Instant::now();
    check_x(x, 0.0, 10.0, "alt_recursion_check")?;
    let bits = ctx.bits();
    let k1 = k + 1;
    let bpoly = ctx.bernoulli().poly_coefficients(k1 as usize);
    let scale = Rational::from((1, k1 * k1));
    let (int, int_err) = integrate(
        ctx,
        |t| {
            let d = hurwitz_deriv(ctx, k, t)?;
            let b = crate::mpcore::horner(&bpoly, t) * &scale;
            Ok((d.value + b, d.err))
        },
        &ctx.real(0),
        x,
    )?;
    let lhs = int * k1;
    let at_x = hurwitz_deriv(ctx, k1, x)?;
    let base = zeta_deriv_neg(ctx, k1)?;
    let rhs = Float::with_val(bits, &at_x.value - &base.value);
    let residual = Float::with_val(bits, &lhs - &rhs).abs();
    let tolerance = int_err * k1 + at_x.err + base.err + ctx.precision().target_eps();
    Ok(CheckReport::new(
        "alt_recursion",
        Some(k as i64),
        Some(ctx.real(x)),
        residual,
        tolerance,
        start,
    ))
}

/// `log Γ_1(x+1) = ∫_0^x log Γ(t+1) dt + x(x+1)/2 - x log√(2π)`.
pub fn alexeiewsky_check(ctx: &Context, x: &Float) -> Result<CheckReport> {
    let start = Instant::now();
    check_x(x, 0.0, 10.0, "alexeiewsky_check")?;
    let bits = ctx.bits();
    let lhs = log_gengamma(ctx, 1, &Float::with_val(bits, x + 1u32))?;
    let (int, int_err) = integrate(ctx, |t| log_gamma1(ctx, t), &ctx.real(0), x)?;
    let two_pi = Float::with_val(bits, Constant::Pi) * 2u32;
    let log_sqrt = two_pi.ln() / 2u32;
    let xf = Float::with_val(bits, x);
    let poly = Float::with_val(bits, &xf * Float::with_val(bits, &xf + 1u32)) / 2u32;
    let rhs = int + poly - log_sqrt * &xf;
    let residual = Float::with_val(bits, &lhs.value - &rhs).abs();
    let tolerance = lhs.err + int_err + roundoff(&rhs, bits) * 4u32 + ctx.precision().target_eps();
    Ok(CheckReport::new(
        "alexeiewsky",
        None,
        Some(xf),
        residual,
        tolerance,
        start,
    ))
}

/// `log Γ_k(x+1) = k! I_k(x) + H_k φ_k(x+1) - ψ_k(x)` with the fractional
/// integral `I_k(x) = ∫_0^x (x-t)^{k-1} log Γ(t+1) dt / (k-1)!` and
/// `ψ_k(x) = Σ_{r<k} C(k,r) L_r x^{k-r}`.
pub fn general_solution_check(ctx: &Context, k: u32, x: &Float) -> Result<CheckReport> {
    let start = Instant::now();
    if !(1..=3).contains(&k) {
        return Err(Error::InvalidArgument(format!(
            "general_solution_check needs 1 <= k <= 3, got {k}"
        )));
    }
    check_x(x, 0.0, 5.0, "general_solution_check")?;
    let bits = ctx.bits();
    let xf = Float::with_val(bits, x);
    let lhs = log_gengamma(ctx, k, &Float::with_val(bits, &xf + 1u32))?;

    let (int, int_err) = integrate(
        ctx,
        |t| {
            let (g, e) = log_gamma1(ctx, t)?;
            let lever = Float::with_val(bits, &xf - t).pow(k - 1);
            Ok((g * &lever, e * lever))
        },
        &ctx.real(0),
        &xf,
    )?;
    // k! / (k-1)! = k
    let mut rhs = int * k;
    let mut err = int_err * k;
    rhs += ctx.bernoulli().phi(k as usize, &Float::with_val(bits, &xf + 1u32)) * harmonic(k);
    for r in 0..k {
        let l = gkbj(ctx, r)?;
        let w = Float::with_val(bits, binomial(k, r)) * Float::with_val(bits, (&xf).pow(k - r));
        rhs -= Float::with_val(bits, &l.value * &w);
        err += l.err * w;
    }
    let residual = Float::with_val(bits, &lhs.value - &rhs).abs();
    let tolerance = lhs.err + err + roundoff(&rhs, bits) * 8u32 + ctx.precision().target_eps();
    Ok(CheckReport::new(
        "general_solution",
        Some(k as i64),
        Some(xf),
        residual,
        tolerance,
        start,
    ))
}

/// `k∫_0^1 (1-t)^{k-1} log Γ(t+1) dt` against
/// `Σ_{r<k} C(k,r)(H_r B_{r+1}/(r+1) - ζ'(-r)) - H_k[1/2 + (1 + Σ_{r=2}^k C(k+1,r) B_r)/(k+1)]`.
pub fn gint_moment_check(ctx: &Context, k: u32) -> Result<CheckReport> {
    let start = Instant::now();
    if !(1..=5).contains(&k) {
        return Err(Error::InvalidArgument(format!(
            "gint_moment_check needs 1 <= k <= 5, got {k}"
        )));
    }
    let bits = ctx.bits();
    let one = ctx.real(1);
    let (int, int_err) = integrate(
        ctx,
        |t| {
            let (g, e) = log_gamma1(ctx, t)?;
            let lever = Float::with_val(bits, &one - t).pow(k - 1);
            Ok((g * &lever, e * lever))
        },
        &ctx.real(0),
        &one,
    )?;
    let lhs = int * k;

    let mut rhs = Float::new(bits);
    let mut err = Float::new(bits);
    for r in 0..k {
        let c = binomial(k, r);
        let exact = harmonic(r) * ctx.bernoulli().get(r as usize + 1) / Rational::from(r + 1);
        let d = zeta_deriv_neg(ctx, r)?;
        let term = Float::with_val(bits, exact - &d.value) * &c;
        rhs += term;
        err += d.err * &c;
    }
    let mut inner = Rational::from(1);
    for r in 2..=k {
        inner += ctx.bernoulli().get(r as usize) * binomial(k + 1, r);
    }
    let bracket = Rational::from((1, 2)) + inner / Rational::from(k + 1);
    rhs -= harmonic(k) * bracket;

    let residual = Float::with_val(bits, &lhs - &rhs).abs();
    let tolerance = int_err * k + err + roundoff(&rhs, bits) * 8u32 + ctx.precision().target_eps();
    Ok(CheckReport::new(
        "gint_moment",
        Some(k as i64),
        None,
        residual,
        tolerance,
        start,
    ))
}

/// `2∫_0^1 (1-t) log Γ(t) dt = -ζ'(0) - 2ζ'(-1) + 1/6`, integrating through
/// the logarithmic singularity at `t = 0`.
pub fn gint_gamma_variant_check(ctx: &Context) -> Result<CheckReport> {
    let start = Instant::now();
    let bits = ctx.bits();
    let one = ctx.real(1);
    let (int, int_err) = integrate(
        ctx,
        |t| {
            let g = log_gengamma(ctx, 0, t)?;
            let lever = Float::with_val(bits, &one - t);
            Ok((g.value * &lever, g.err * lever))
        },
        &ctx.real(0),
        &one,
    )?;
    let lhs = int * 2u32;
    let d0 = zeta_deriv_neg(ctx, 0)?;
    let d1 = zeta_deriv_neg(ctx, 1)?;
    let rhs = Float::with_val(bits, -&d0.value) - Float::with_val(bits, &d1.value * 2u32) + Rational::from((1, 6));
    let residual = Float::with_val(bits, &lhs - &rhs).abs();
    let tolerance = int_err * 2u32 + d0.err + d1.err * 2u32 + ctx.precision().target_eps();
    Ok(CheckReport::new(
        "gint_gamma_variant",
        Some(2),
        None,
        residual,
        tolerance,
        start,
    ))
}

/// `log Γ_k(x+2) - log Γ_k(x+1) = (x+1)^k log(x+1)` on exact sums.
pub fn jeffery_difference_check(ctx: &Context, k: u32, x: i64) -> Result<CheckReport> {
    let start = Instant::now();
    if x < 1 {
        return Err(Error::InvalidArgument(format!(
            "jeffery_difference_check needs x >= 1, got {x}"
        )));
    }
    let bits = ctx.bits();
    let hi = exact_log_gengamma(ctx, k, x + 1)?;
    let lo = exact_log_gengamma(ctx, k, x)?;
    let y = ctx.real(x + 1);
    let step = Float::with_val(bits, y.ln_ref()) * Float::with_val(bits, (&y).pow(k));
    let diff = Float::with_val(bits, &hi.value - &lo.value);
    let residual = Float::with_val(bits, &diff - &step).abs();
    let tolerance = hi.err + lo.err + roundoff(&step, bits) * 4u32;
    Ok(CheckReport::new(
        "jeffery_difference",
        Some(k as i64),
        Some(ctx.real(x)),
        residual,
        tolerance,
        start,
    ))
}
