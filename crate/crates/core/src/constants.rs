//! The constants `L_k` (generalized Glaisher-Kinkelin), Jeffery's summation
//! constants `ϖ(k)` and Kinkelin's `log ϖ`.
//!
//! `L_k` is found by the trial method: the exact sum `log Γ_k(w+1)` minus the
//! truncated expansion `Λ_k(w+1)` at a large integer `w`.

use rug::{Float, Rational};

use crate::asymptotic::eval_lambda_bits;
use crate::context::{ConstantStrategy, Context};
use crate::error::{Error, Result};
use crate::gengamma::power_log_sum;
use crate::mpcore::{harmonic, pow10, roundoff};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstantKind {
    L,
    Varpi,
    Kinkelin,
}

impl ConstantKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ConstantKind::L => "L",
            ConstantKind::Varpi => "varpi",
            ConstantKind::Kinkelin => "kinkelin",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ConstantRecord {
    pub kind: ConstantKind,
    pub k: i64,
    pub value: Float,
    pub err: Float,
    pub w_used: u64,
    pub tail_terms_used: usize,
}

const W_START: u64 = 100;
const W_MAX: u64 = 1_000_000;
const TAIL_MAX: usize = 200;

/// Extra bits so that the cancellation in `exact - Λ` (both of size about
/// `w^(k+1) log w`) does not eat into the working precision.
fn trial_bits(ctx: &Context, k: u32, w: u64) -> u32 {
    let wf = w.max(2) as f64;
    let size = (k as f64 + 2.0) * wf.log2() + wf.ln().log2().max(0.0);
    ctx.bits() + size.ceil() as u32 + 16
}

/// `L_k = log Γ_k(w+1) - Λ_k(w+1)` with `tail_terms` terms of the tail.
pub fn gkbj_constant(ctx: &Context, k: u32, w: u64, tail_terms: usize) -> Result<ConstantRecord> {
    let bits = trial_bits(ctx, k, w);
    let sum = power_log_sum(k, w, bits);
    let lambda = eval_lambda_bits(ctx, k as i32, &Float::with_val(bits, w), tail_terms, bits)?;
    let diff = Float::with_val(bits, &sum - &lambda.value);
    let value = Float::with_val(ctx.bits(), &diff);
    let mut err = Float::with_val(ctx.bits(), &lambda.err);
    err += roundoff(&sum, bits) * (w.min(u32::MAX as u64) as u32 + 1);
    err += roundoff(&value, ctx.bits());
    Ok(ConstantRecord {
        kind: ConstantKind::L,
        k: k as i64,
        value,
        err,
        w_used: w,
        tail_terms_used: lambda.tail_terms_used,
    })
}

/// `L_k` with `(w, tail terms)` chosen so that `err <= 10^-target_digits`.
/// Memoized per order and precision.
///
/// The search first aims halfway into the guard digits, so that routes
/// through `L_k` stay consistent with exact sums beyond the target; it
/// settles for the target bound if that fails.
pub fn gkbj_auto(ctx: &Context, k: u32) -> Result<ConstantRecord> {
    let auto = ctx.clone().with_strategy(ConstantStrategy::Auto);
    if let Some(r) = auto.cached_constant(ConstantKind::L, k as i64) {
        return Ok(r);
    }
    let p = ctx.precision();
    let tight = pow10(-((p.target_digits() + p.guard_digits() / 2) as i32), ctx.bits());
    let rec = match search(ctx, k, &tight)? {
        Some(r) => r,
        None => search(ctx, k, &p.target_eps())?.ok_or(Error::ParameterSearchFailed {
            k,
            target_digits: ctx.target_digits(),
        })?,
    };
    auto.store_constant(&rec);
    Ok(rec)
}

fn search(ctx: &Context, k: u32, bound: &Float) -> Result<Option<ConstantRecord>> {
    let mut w = W_START;
    while w <= W_MAX {
        let bits = trial_bits(ctx, k, w);
        let x = Float::with_val(bits, w);
        for count in [20, 40, 80, TAIL_MAX] {
            let poly = ctx.term_poly(k as i32, count + 1)?;
            let ev = poly.evaluate(&x, count);
            if ev.err.clone() * 4u32 <= *bound {
                // smallest tail length that already meets the bound
                let mut terms = count.min(ev.tail_terms_used.max(1));
                while terms > 1 && poly.evaluate(&x, terms - 1).err * 4u32 <= *bound {
                    terms -= 1;
                }
                let rec = gkbj_constant(ctx, k, w, terms)?;
                if rec.err <= *bound {
                    return Ok(Some(rec));
                }
            }
            if ev.tail_terms_used < count {
                // optimal truncation already reached; more terms cannot help
                break;
            }
        }
        w *= 2;
    }
    Ok(None)
}

/// `L_k` under the context's strategy.
pub fn gkbj(ctx: &Context, k: u32) -> Result<ConstantRecord> {
    match ctx.strategy() {
        ConstantStrategy::Auto => gkbj_auto(ctx, k),
        ConstantStrategy::Fixed { w, tail_terms } => {
            if let Some(r) = ctx.cached_constant(ConstantKind::L, k as i64) {
                return Ok(r);
            }
            let rec = gkbj_constant(ctx, k, w, tail_terms)?;
            ctx.store_constant(&rec);
            Ok(rec)
        }
    }
}

/// Jeffery's constant `ϖ(k) = H_k B_k - k L_{k-1}` for `k >= 2`, and
/// `ϖ(1) = -L_0 - 1/2`.
pub fn varpi(ctx: &Context, k: u32) -> Result<ConstantRecord> {
    if k == 0 {
        return Err(Error::InvalidArgument("varpi is defined for k >= 1".into()));
    }
    if let Some(r) = ctx.cached_constant(ConstantKind::Varpi, k as i64) {
        return Ok(r);
    }
    let l = gkbj(ctx, k - 1)?;
    let offset = if k == 1 {
        Rational::from((-1, 2))
    } else {
        harmonic(k) * ctx.bernoulli().get(k as usize)
    };
    let value = Float::with_val(ctx.bits(), &l.value * -(k as i32)) + &offset;
    let err = Float::with_val(ctx.bits(), &l.err * k) + roundoff(&value, ctx.bits());
    let rec = ConstantRecord {
        kind: ConstantKind::Varpi,
        k: k as i64,
        value,
        err,
        w_used: l.w_used,
        tail_terms_used: l.tail_terms_used,
    };
    ctx.store_constant(&rec);
    Ok(rec)
}

/// Kinkelin's constant `log ϖ = 2 L_1 - 1/6`.
pub fn kinkelin_logvarpi(ctx: &Context) -> Result<ConstantRecord> {
    let l1 = gkbj(ctx, 1)?;
    let value = Float::with_val(ctx.bits(), &l1.value * 2u32) - Rational::from((1, 6));
    let err = Float::with_val(ctx.bits(), &l1.err * 2u32) + roundoff(&value, ctx.bits());
    Ok(ConstantRecord {
        kind: ConstantKind::Kinkelin,
        k: 1,
        value,
        err,
        w_used: l1.w_used,
        tail_terms_used: l1.tail_terms_used,
    })
}

/// `ζ(-k) = -B_{k+1}/(k+1)`.
pub fn zeta_neg_int(ctx: &Context, k: u32) -> Rational {
    -ctx.bernoulli().get(k as usize + 1) / Rational::from(k + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(ctx: &Context, s: &str) -> Float {
        Float::with_val(ctx.bits(), Float::parse(s).unwrap())
    }

    fn diff(a: &Float, b: &Float) -> f64 {
        Float::with_val(a.prec(), a - b).abs().to_f64()
    }

    #[test]
    fn l0_is_log_sqrt_two_pi() {
        let c = Context::new(20).unwrap();
        let r = gkbj_constant(&c, 0, 100, 20).unwrap();
        let pi = Float::with_val(c.bits(), rug::float::Constant::Pi);
        let expect = Float::with_val(c.bits(), pi * 2u32).ln() / 2u32;
        assert!(diff(&r.value, &expect) < 1e-30);
        assert_eq!(r.w_used, 100);
    }

    #[test]
    fn trial_values_for_small_orders() {
        let c = Context::new(20).unwrap();
        // reference digits from an independent Hurwitz-zeta derivative evaluation
        let l1 = gkbj_constant(&c, 1, 100, 20).unwrap();
        assert!(diff(&l1.value, &parse(&c, "0.2487544770337842625472529935761139760974")) < 1e-30);
        let l2 = gkbj_constant(&c, 2, 100, 20).unwrap();
        assert!(diff(&l2.value, &parse(&c, "0.030448457058393270780251530471154776647")) < 1e-30);
    }

    #[test]
    fn auto_meets_requested_precision() {
        let c = Context::new(30).unwrap();
        let r = gkbj_auto(&c, 0).unwrap();
        assert!(r.err.to_f64() <= 1e-30);
        assert!(r.w_used >= 100);
        let pi = Float::with_val(c.bits() + 40, rug::float::Constant::Pi);
        let expect = Float::with_val(c.bits(), Float::with_val(c.bits() + 40, pi * 2u32).ln() / 2u32);
        assert!(diff(&r.value, &expect) < 1e-30);

        let c = Context::new(10).unwrap();
        let r = gkbj_auto(&c, 3).unwrap();
        assert!(diff(&r.value, &parse(&c, "-0.0206563541355520789")) < 1e-10);
    }

    #[test]
    fn fixed_strategy_is_used() {
        let c = Context::new(20)
            .unwrap()
            .with_strategy(ConstantStrategy::Fixed { w: 30, tail_terms: 5 });
        let r = gkbj(&c, 1).unwrap();
        assert_eq!(r.w_used, 30);
    }

    #[test]
    fn varpi_values() {
        let c = Context::new(20).unwrap();
        let v2 = varpi(&c, 2).unwrap();
        assert!(diff(&v2.value, &parse(&c, "-0.247508954067568525094505987152")) < 1e-19);
        let v1 = varpi(&c, 1).unwrap();
        assert!(diff(&v1.value, &parse(&c, "-1.41893853320467274178032973641")) < 1e-19);
        assert!(varpi(&c, 0).is_err());
    }

    #[test]
    fn kinkelin_identity() {
        let c = Context::new(20).unwrap();
        let k = kinkelin_logvarpi(&c).unwrap();
        let v2 = varpi(&c, 2).unwrap();
        let other = Float::with_val(c.bits(), Rational::from((1, 12)) - &v2.value);
        assert!(diff(&k.value, &other) < 1e-30);
    }
}
