//! `ζ'(-k, w)`, the `s`-derivative of the Hurwitz zeta function at a
//! non-positive integer, normalized so that `ζ'(-k, 1) = ζ'(-k)`.

use rug::{Float, Rational};

use crate::asymptotic::eval_lambda;
use crate::constants::gkbj;
use crate::context::Context;
use crate::error::{Error, Result};
use crate::gengamma::{exact_log_gengamma, shift_chain, shift_count};
use crate::mpcore::{harmonic, roundoff};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivMethod {
    ExactSum,
    AsymptoticShift,
}

impl DerivMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            DerivMethod::ExactSum => "exact-sum",
            DerivMethod::AsymptoticShift => "asymptotic-shift",
        }
    }
}

#[derive(Debug, Clone)]
pub struct DerivResult {
    pub k: u32,
    pub w: Float,
    pub value: Float,
    pub err: Float,
    pub method: DerivMethod,
}

/// `H_k B_{k+1} / (k+1)`.
fn harmonic_bernoulli(ctx: &Context, k: u32) -> Rational {
    harmonic(k) * ctx.bernoulli().get(k as usize + 1) / Rational::from(k + 1)
}

/// `ζ'(-k) = H_k B_{k+1}/(k+1) - L_k`.
pub fn zeta_deriv_neg(ctx: &Context, k: u32) -> Result<DerivResult> {
    let l = gkbj(ctx, k)?;
    let value = Float::with_val(ctx.bits(), harmonic_bernoulli(ctx, k) - &l.value);
    let err = l.err + roundoff(&value, ctx.bits());
    Ok(DerivResult {
        k,
        w: ctx.real(1),
        value,
        err,
        method: DerivMethod::ExactSum,
    })
}

/// `ζ'(-k, w) = ζ'(-k) + log Γ_k(w)` for integer `w >= 1`.
pub fn hurwitz_deriv_integer(ctx: &Context, k: u32, w: i64) -> Result<DerivResult> {
    if w < 1 {
        return Err(Error::InvalidArgument(format!(
            "integer argument must be >= 1, got {w}"
        )));
    }
    let base = zeta_deriv_neg(ctx, k)?;
    let g = exact_log_gengamma(ctx, k, w - 1)?;
    let value = Float::with_val(ctx.bits(), &base.value + &g.value);
    let err = base.err + g.err + roundoff(&value, ctx.bits());
    Ok(DerivResult {
        k,
        w: ctx.real(w),
        value,
        err,
        method: DerivMethod::ExactSum,
    })
}

/// `ζ'(-k, w)` for real `w > 0` from the asymptotic expansion at `w + n`,
/// shifted back down by whole steps.
pub fn hurwitz_deriv(ctx: &Context, k: u32, w: &Float) -> Result<DerivResult> {
    if !w.is_finite() || *w <= 0 {
        return Err(Error::InvalidArgument(format!(
            "w must be positive, got {}",
            w.to_string_radix(10, Some(10))
        )));
    }
    let bits = ctx.bits();
    let ww = Float::with_val(bits, w);
    let n = shift_count(ctx, &ww);
    let shifted = Float::with_val(bits, &ww + n);
    let lambda = eval_lambda(ctx, k as i32, &(shifted - 1u32), ctx.auto_lambda_terms())?;
    let at_shifted = Float::with_val(bits, &lambda.value + harmonic_bernoulli(ctx, k));
    let chain = shift_chain(k, &ww, n)?;
    let value = Float::with_val(bits, &at_shifted - &chain);
    let mag = Float::with_val(bits, at_shifted.abs_ref()).max(&Float::with_val(bits, chain.abs_ref()));
    let err = lambda.err + roundoff(&mag, bits) * (n as u32 + 2);
    Ok(DerivResult {
        k,
        w: ww,
        value,
        err,
        method: DerivMethod::AsymptoticShift,
    })
}
