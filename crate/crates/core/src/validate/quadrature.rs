//! Double-exponential (tanh-sinh) quadrature and `ζ(s)` at positive
//! integers, both at the working precision of a [`Context`].

use rayon::prelude::*;
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Rational};

use crate::context::Context;
use crate::error::{Error, Result};
use crate::mpcore::{factorial, pow10, roundoff};

const MIN_LEVEL: u32 = 3;
const MAX_LEVEL: u32 = 10;

/// Result of [`quadrature`]; `err` is the last level-to-level difference
/// plus rounding.
#[derive(Debug, Clone)]
pub struct Quadrature {
    pub value: Float,
    pub err: Float,
    pub levels: u32,
}

/// A tanh-sinh node: abscissa and weight for the interval `[a, b]`.
struct Node {
    x: Float,
    w: Float,
}

/// Nodes at `u` and `-u`. Abscissae are formed as offsets from the nearer
/// endpoint so they keep full relative precision there. `None` once the
/// offset no longer separates the node from the endpoint.
fn node_pair(u: &Float, a: &Float, b: &Float, width: &Float, pi: &Float) -> Option<(Node, Node)> {
    let bits = a.prec();
    let v = Float::with_val(bits, u.sinh_ref()) * pi / 2u32;
    let e = Float::with_val(bits, v * 2u32).exp();
    let d = Float::with_val(bits, width / Float::with_val(bits, &e + 1u32));
    let right = Float::with_val(bits, b - &d);
    let left = Float::with_val(bits, a + &d);
    if right == *b || left == *a {
        return None;
    }
    // (b-a)/2 · (π/2) cosh u · sech²v, with sech²v = 4e/(e+1)²
    let denom = Float::with_val(bits, &e + 1u32).square();
    let w = Float::with_val(bits, u.cosh_ref()) * width * pi * e / denom;
    Some((Node { x: left, w: w.clone() }, Node { x: right, w }))
}

/// `∫_a^b f(t) dt` by tanh-sinh quadrature.
///
/// Levels halve the step until two successive estimates differ by less than
/// `10^-(target + guard/2)`. Integrable endpoint singularities (logarithmic
/// and similar) are handled without splitting the interval since the
/// integrand is never evaluated at an endpoint.
pub fn quadrature<F>(ctx: &Context, f: F, a: &Float, b: &Float) -> Result<Quadrature>
where
    F: Fn(&Float) -> Result<Float> + Sync,
{
    let bits = ctx.bits();
    let a = Float::with_val(bits, a);
    let b = Float::with_val(bits, b);
    if !(a.is_finite() && b.is_finite()) || a >= b {
        return Err(Error::InvalidArgument(
            "quadrature needs finite a < b".into(),
        ));
    }
    let width = Float::with_val(bits, &b - &a);
    let pi = Float::with_val(bits, Constant::Pi);
    let p = ctx.precision();
    let stop_exp = p.target_digits() + p.guard_digits() / 2;
    let stop = pow10(-(stop_exp as i32), bits);
    let weight_floor = Float::with_val(bits, &width) >> (bits + 20);

    // cutoff for |u|, found on a coarse grid
    let mut u_max = Float::with_val(bits, 0);
    loop {
        let next = Float::with_val(bits, &u_max + 0.125);
        match node_pair(&next, &a, &b, &width, &pi) {
            Some((n, _)) if n.w >= weight_floor => u_max = next,
            _ => break,
        }
        if u_max > 8 {
            break;
        }
    }

    let eval_level = |h: &Float, step: usize, start: usize| -> Result<Float> {
        let mut us = Vec::new();
        let mut j = start;
        loop {
            let u = Float::with_val(bits, h * j as u32);
            if u > u_max {
                break;
            }
            us.push(u);
            j += step;
        }
        let parts: Vec<Result<Float>> = us
            .par_iter()
            .map(|u| {
                let Some((l, r)) = node_pair(u, &a, &b, &width, &pi) else {
                    return Ok(Float::new(bits));
                };
                let fl = f(&l.x)?;
                let fr = f(&r.x)?;
                Ok(Float::with_val(bits, &fl + &fr) * l.w)
            })
            .collect();
        let mut acc = Float::new(bits);
        for p in parts {
            acc += p?;
        }
        Ok(acc)
    };

    let mid = Float::with_val(bits, &a + &b) / 2u32;
    let mut raw = f(&mid)? * Float::with_val(bits, &width * &pi) / 4u32;
    let mut h = Float::with_val(bits, 1);
    raw += eval_level(&h, 1, 1)?;
    let mut prev = Float::with_val(bits, &raw * &h);
    let mut diff = Float::with_val(bits, f64::INFINITY);
    for level in 1..=MAX_LEVEL {
        h /= 2u32;
        raw += eval_level(&h, 2, 1)?;
        let cur = Float::with_val(bits, &raw * &h);
        diff = Float::with_val(bits, &cur - &prev).abs();
        if level >= MIN_LEVEL && diff <= stop {
            let err = diff + roundoff(&cur, bits) * 16u32;
            return Ok(Quadrature {
                value: cur,
                err,
                levels: level,
            });
        }
        prev = cur;
    }
    Err(Error::NonConvergent {
        levels: MAX_LEVEL,
        last_diff: diff.to_string_radix(10, Some(6)),
    })
}

/// `ζ(s)` for integer `s >= 2`: a direct sum to `N` plus the
/// Euler-Maclaurin tail at `N`.
pub fn zeta_positive(ctx: &Context, s: u32) -> Result<Float> {
    if s < 2 {
        return Err(Error::InvalidArgument(format!(
            "zeta_positive needs s >= 2, got {s}"
        )));
    }
    let p = ctx.precision();
    let bits = ctx.bits() + 32;
    let n_terms = (p.working_digits() as u64).max(10) * 2;
    let eps = pow10(-((p.target_digits() + p.guard_digits()) as i32), bits);

    let mut acc = Float::new(bits);
    for n in (1..n_terms).rev() {
        acc += Float::with_val(bits, n).pow(-(s as i32));
    }
    let nf = Float::with_val(bits, n_terms);
    let n_pow = Float::with_val(bits, (&nf).pow(-(s as i32)));
    acc += Float::with_val(bits, &n_pow * &nf) / (s - 1);
    acc += Float::with_val(bits, &n_pow / 2u32);

    let inv_n2 = Float::with_val(bits, &nf * &nf).recip();
    // x^-(s+2j-1) and the rising factorial s(s+1)...(s+2j-2)
    let mut power = Float::with_val(bits, &n_pow / &nf);
    let mut rising = Rational::from(s);
    for j in 1u32.. {
        let b = ctx.bernoulli().get(2 * j as usize);
        let coeff = Rational::from(&b * &rising) / factorial(2 * j);
        let term = Float::with_val(bits, &power * &coeff);
        acc += &term;
        if term.abs() < eps {
            break;
        }
        power *= &inv_n2;
        rising *= Rational::from((s + 2 * j - 1) * (s + 2 * j));
    }
    Ok(Float::with_val(ctx.bits(), &acc))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Context {
        Context::new(20).unwrap()
    }

    fn close(a: &Float, b: &Float, tol: f64) -> bool {
        Float::with_val(a.prec(), a - b).abs() <= tol
    }

    #[test]
    fn constant_integrand() {
        let c = ctx();
        let q = quadrature(&c, |_| Ok(c.real(1)), &c.real(0), &c.real(1)).unwrap();
        assert!(close(&q.value, &c.real(1), 1e-30));
    }

    #[test]
    fn log_endpoint_singularity() {
        let c = ctx();
        let q = quadrature(&c, |t| Ok(Float::with_val(c.bits(), t.ln_ref())), &c.real(0), &c.real(1)).unwrap();
        assert!(close(&q.value, &c.real(-1), 1e-27), "{}", q.value);
        assert!(q.err < 1e-27);
    }

    #[test]
    fn polynomial_on_shifted_interval() {
        let c = ctx();
        let q = quadrature(&c, |t| Ok(Float::with_val(c.bits(), t * t)), &c.real(2), &c.real(5)).unwrap();
        assert!(close(&q.value, &c.real(39), 1e-26));
    }

    #[test]
    fn rejects_empty_interval() {
        let c = ctx();
        assert!(quadrature(&c, |_| Ok(c.real(1)), &c.real(1), &c.real(1)).is_err());
    }

    #[test]
    fn propagates_integrand_errors() {
        let c = ctx();
        let r = quadrature(
            &c,
            |_| Err(Error::InvalidArgument("boom".into())),
            &c.real(0),
            &c.real(1),
        );
        assert!(r.is_err());
    }

    #[test]
    fn zeta_at_even_integers() {
        let c = ctx();
        let pi = Float::with_val(c.bits(), Constant::Pi);
        let z2 = Float::with_val(c.bits(), &pi * &pi) / 6u32;
        assert!(close(&zeta_positive(&c, 2).unwrap(), &z2, 1e-32));
        let z4 = Float::with_val(c.bits(), (&pi).pow(4u32)) / 90u32;
        assert!(close(&zeta_positive(&c, 4).unwrap(), &z4, 1e-32));
        assert!(zeta_positive(&c, 1).is_err());
    }

    #[test]
    fn zeta_three_reference() {
        let c = ctx();
        let r = Float::with_val(c.bits(), Float::parse("1.20205690315959428539973816151144999076498629").unwrap());
        assert!(close(&zeta_positive(&c, 3).unwrap(), &r, 1e-32));
    }
}
