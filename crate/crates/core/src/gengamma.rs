//! Bendersky's generalized log-gamma `log Γ_k(x)`, with
//! `log Γ_k(w+1) = Σ_{m<=w} m^k log m` at integers and
//! `Γ_k(x+1) = x^(x^k) Γ_k(x)` for real `x`.

use rug::ops::Pow;
use rug::Float;

use crate::asymptotic::eval_lambda;
use crate::constants::gkbj;
use crate::context::Context;
use crate::error::{Error, Result};
use crate::mpcore::roundoff;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenGammaMethod {
    ExactSum,
    AsymptoticShift,
    GeneralSolution,
}

impl GenGammaMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            GenGammaMethod::ExactSum => "exact-sum",
            GenGammaMethod::AsymptoticShift => "asymptotic-shift",
            GenGammaMethod::GeneralSolution => "general-solution",
        }
    }
}

/// `log Γ_k(x)` together with how it was obtained.
#[derive(Debug, Clone)]
pub struct GenGammaValue {
    pub k: u32,
    pub x: Float,
    pub value: Float,
    pub err: Float,
    pub method: GenGammaMethod,
}

/// `Σ_{m=1}^{w} m^k log m` at `bits` of precision, summed upwards.
pub(crate) fn power_log_sum(k: u32, w: u64, bits: u32) -> Float {
    let mut acc = Float::new(bits);
    for m in 2..=w {
        let mf = Float::with_val(bits, m);
        let mut term = Float::with_val(bits, mf.ln_ref());
        if k > 0 {
            term *= Float::with_val(bits, (&mf).pow(k));
        }
        acc += term;
    }
    acc
}

/// `log Γ_k(w+1)` as the finite sum over `m = 1..=w`.
pub fn exact_log_gengamma(ctx: &Context, k: u32, w: i64) -> Result<GenGammaValue> {
    if w < 0 {
        return Err(Error::InvalidArgument(format!(
            "exact sum needs w >= 0, got {w}"
        )));
    }
    let bits = ctx.bits();
    // one guard word while accumulating
    let sum = power_log_sum(k, w as u64, bits + 64);
    let value = Float::with_val(bits, &sum);
    let err = roundoff(&value, bits);
    Ok(GenGammaValue {
        k,
        x: ctx.real(w + 1),
        value,
        err,
        method: GenGammaMethod::ExactSum,
    })
}

/// `Σ_{j=0}^{n-1} (x+j)^k log(x+j)`, the terms removed by shifting `x+n`
/// back down to `x`.
pub(crate) fn shift_chain(k: u32, x: &Float, n: u64) -> Result<Float> {
    let bits = x.prec();
    let mut acc = Float::new(bits);
    for j in 0..n {
        let t = Float::with_val(bits, x + j);
        if t <= 0 {
            return Err(Error::InvalidArgument(format!(
                "shift chain reaches non-positive argument {}",
                t.to_string_radix(10, Some(10))
            )));
        }
        let mut term = Float::with_val(bits, t.ln_ref());
        if k > 0 {
            term *= Float::with_val(bits, (&t).pow(k));
        }
        acc += term;
    }
    Ok(acc)
}

/// `log Γ_k(x)` from `log Γ_k(x+n)` by removing `n` applications of the
/// functional equation.
pub fn shift_log_gengamma(
    ctx: &Context,
    k: u32,
    x: &Float,
    n: u64,
    value_at_shifted: &Float,
) -> Result<Float> {
    if *x <= 0 {
        return Err(Error::InvalidArgument(format!(
            "argument must be positive, got {}",
            x.to_string_radix(10, Some(10))
        )));
    }
    let xw = ctx.real(x);
    let chain = shift_chain(k, &xw, n)?;
    Ok(ctx.real(value_at_shifted) - chain)
}

/// Number of unit shifts taking `x` to at least the asymptotic threshold.
pub(crate) fn shift_count(ctx: &Context, x: &Float) -> u64 {
    let t = Float::with_val(x.prec(), ctx.asymptotic_threshold());
    if *x >= t {
        0
    } else {
        let gap = Float::with_val(x.prec(), &t - x).ceil();
        gap.to_f64() as u64
    }
}

/// `log Γ_k(x)` for real `x > 0`.
///
/// Integer arguments use the exact sum. Otherwise the argument is shifted
/// up to the asymptotic threshold, evaluated as `L_k + Λ_k`, and shifted back.
pub fn log_gengamma(ctx: &Context, k: u32, x: &Float) -> Result<GenGammaValue> {
    if !x.is_finite() || *x <= 0 {
        return Err(Error::InvalidArgument(format!(
            "log Γ_k needs x > 0, got {}",
            x.to_string_radix(10, Some(10))
        )));
    }
    let bits = ctx.bits();
    let xw = Float::with_val(bits, x);
    if xw.is_integer() {
        let w = xw.to_f64() as i64;
        let mut v = exact_log_gengamma(ctx, k, w - 1)?;
        v.x = xw;
        return Ok(v);
    }
    let n = shift_count(ctx, &xw);
    let shifted = Float::with_val(bits, &xw + n);
    // Λ_k(y) is the series in y - 1
    let lambda = eval_lambda(ctx, k as i32, &(shifted - 1u32), ctx.auto_lambda_terms())?;
    let l = gkbj(ctx, k)?;
    let chain = shift_chain(k, &xw, n)?;
    let at_shifted = Float::with_val(bits, &l.value + &lambda.value);
    let value = Float::with_val(bits, &at_shifted - &chain);
    let mag = Float::with_val(bits, at_shifted.abs_ref()).max(&Float::with_val(bits, chain.abs_ref()));
    let err = l.err + lambda.err + roundoff(&mag, bits) * (n as u32 + 2);
    Ok(GenGammaValue {
        k,
        x: xw,
        value,
        err,
        method: GenGammaMethod::AsymptoticShift,
    })
}
