//! Asymptotic expansions `Λ_k(x+1)` of `log Γ_k(x+1) - L_k`.
//!
//! An expansion is held symbolically as a [`TermPoly`]: exact rational
//! coefficients on `x^p` and `x^p log x` plus a divergent tail in inverse
//! powers of `x`. Keeping it exact lets the recursion between neighbouring
//! orders be checked by termwise integration with no rounding in the
//! coefficients.

use std::collections::BTreeMap;

use rug::ops::Pow;
use rug::{Float, Rational};

use crate::context::Context;
use crate::error::{Error, Result};
use crate::mpcore::{factorial, harmonic, roundoff, BernoulliCache};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MainTerm {
    pub coeff: Rational,
    pub power: u32,
    pub has_log: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailTerm {
    pub coeff: Rational,
    pub inv_power: u32,
}

/// `Σ c x^p (log x)^{0|1}  +  Σ c x^-q`.
///
/// Keys are unique, zero coefficients are dropped and the tail is ordered by
/// increasing inverse power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermPoly {
    k: i32,
    main_terms: Vec<MainTerm>,
    tail_terms: Vec<TailTerm>,
}

/// A truncated evaluation of a [`TermPoly`].
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub value: Float,
    pub err: Float,
    pub tail_terms_used: usize,
}

impl TermPoly {
    pub fn new(
        k: i32,
        main: impl IntoIterator<Item = MainTerm>,
        tail: impl IntoIterator<Item = TailTerm>,
    ) -> Self {
        let mut mains: BTreeMap<(u32, bool), Rational> = BTreeMap::new();
        for t in main {
            *mains.entry((t.power, t.has_log)).or_default() += t.coeff;
        }
        let mut tails: BTreeMap<u32, Rational> = BTreeMap::new();
        for t in tail {
            *tails.entry(t.inv_power).or_default() += t.coeff;
        }
        let main_terms = mains
            .into_iter()
            .rev()
            .filter(|(_, c)| *c != 0)
            .map(|((power, has_log), coeff)| MainTerm {
                coeff,
                power,
                has_log,
            })
            .collect();
        let tail_terms = tails
            .into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|(inv_power, coeff)| TailTerm { coeff, inv_power })
            .collect();
        Self {
            k,
            main_terms,
            tail_terms,
        }
    }

    pub fn k(&self) -> i32 {
        self.k
    }

    /// Ordered by decreasing power, log terms first.
    pub fn main_terms(&self) -> &[MainTerm] {
        &self.main_terms
    }

    pub fn tail_terms(&self) -> &[TailTerm] {
        &self.tail_terms
    }

    pub fn truncate_tail(&mut self, len: usize) {
        self.tail_terms.truncate(len);
    }

    pub fn scaled(&self, factor: &Rational) -> TermPoly {
        TermPoly::new(
            self.k,
            self.main_terms.iter().map(|t| MainTerm {
                coeff: Rational::from(&t.coeff * factor),
                ..t.clone()
            }),
            self.tail_terms.iter().map(|t| TailTerm {
                coeff: Rational::from(&t.coeff * factor),
                inv_power: t.inv_power,
            }),
        )
    }

    pub fn derivative(&self) -> TermPoly {
        let mut main = Vec::new();
        let mut tail = Vec::new();
        for t in &self.main_terms {
            let p = t.power;
            if p > 0 {
                main.push(MainTerm {
                    coeff: Rational::from(&t.coeff * p),
                    power: p - 1,
                    has_log: t.has_log,
                });
            }
            if t.has_log {
                // d/dx (x^p log x) picks up x^(p-1)
                if p > 0 {
                    main.push(MainTerm {
                        coeff: t.coeff.clone(),
                        power: p - 1,
                        has_log: false,
                    });
                } else {
                    tail.push(TailTerm {
                        coeff: t.coeff.clone(),
                        inv_power: 1,
                    });
                }
            }
        }
        for t in &self.tail_terms {
            tail.push(TailTerm {
                coeff: -Rational::from(&t.coeff * t.inv_power),
                inv_power: t.inv_power + 1,
            });
        }
        TermPoly::new(self.k - 1, main, tail)
    }

    /// Termwise antiderivative with zero constant of integration.
    pub fn integral(&self) -> TermPoly {
        let mut main = Vec::new();
        let mut tail = Vec::new();
        for t in &self.main_terms {
            let a1 = Rational::from(t.power + 1);
            main.push(MainTerm {
                coeff: Rational::from(&t.coeff / &a1),
                power: t.power + 1,
                has_log: t.has_log,
            });
            if t.has_log {
                main.push(MainTerm {
                    coeff: -Rational::from(&t.coeff / Rational::from(&a1 * &a1)),
                    power: t.power + 1,
                    has_log: false,
                });
            }
        }
        for t in &self.tail_terms {
            if t.inv_power == 1 {
                main.push(MainTerm {
                    coeff: t.coeff.clone(),
                    power: 0,
                    has_log: true,
                });
            } else {
                let q = t.inv_power - 1;
                tail.push(TailTerm {
                    coeff: -Rational::from(&t.coeff / q),
                    inv_power: q,
                });
            }
        }
        TermPoly::new(self.k + 1, main, tail)
    }

    /// Coefficients (ascending powers) of the polynomial multiplying `log x`.
    pub fn log_coefficients(&self) -> Vec<Rational> {
        let deg = self
            .main_terms
            .iter()
            .filter(|t| t.has_log)
            .map(|t| t.power as usize)
            .max();
        let Some(deg) = deg else {
            return Vec::new();
        };
        let mut out = vec![Rational::new(); deg + 1];
        for t in self.main_terms.iter().filter(|t| t.has_log) {
            out[t.power as usize] += &t.coeff;
        }
        out
    }

    /// Evaluates the main part plus at most `max_tail` tail terms at `x > 0`,
    /// in the precision of `x`.
    ///
    /// Stops early when the tail terms start growing (optimal truncation) or
    /// drop below rounding. `err` is twice the first omitted term plus an
    /// allowance for rounding.
    pub fn evaluate(&self, x: &Float, max_tail: usize) -> Evaluation {
        let bits = x.prec();
        let lx = Float::with_val(bits, x.ln_ref());
        let mut value = Float::new(bits);
        let mut scale = Float::new(bits);
        for t in &self.main_terms {
            let mut term = Float::with_val(bits, x.pow(t.power));
            if t.has_log {
                term *= &lx;
            }
            term *= &t.coeff;
            if term.clone().abs() > scale {
                scale = term.clone().abs();
            }
            value += &term;
        }

        let inv = Float::with_val(bits, x.recip_ref());
        let mut prev_abs: Option<Float> = None;
        let mut prev_term = Float::new(bits);
        let mut omitted = Float::new(bits);
        let mut used = 0;
        let mut ops = self.main_terms.len() + 4;
        for (i, t) in self.tail_terms.iter().enumerate() {
            let mut term = Float::with_val(bits, (&inv).pow(t.inv_power));
            term *= &t.coeff;
            let abs = Float::with_val(bits, term.abs_ref());
            if i >= max_tail {
                omitted = abs;
                break;
            }
            if let Some(p) = &prev_abs {
                if abs > *p {
                    // the previous term was the smallest; back it out
                    value -= &prev_term;
                    used -= 1;
                    omitted = p.clone();
                    break;
                }
            }
            let floor = roundoff(&value.clone().abs().max(&scale), bits);
            value += &term;
            used += 1;
            ops += 1;
            if abs <= floor {
                omitted = Float::new(bits);
                break;
            }
            if i + 1 == self.tail_terms.len() {
                // ran out of terms; the last one is the best guess
                omitted = abs.clone();
            }
            prev_abs = Some(abs);
            prev_term = term;
        }

        let mag = Float::with_val(bits, value.abs_ref()).max(&scale);
        let mut err = roundoff(&mag, bits) * (ops as u32);
        err += omitted * 2u32;
        Evaluation {
            value,
            err,
            tail_terms_used: used,
        }
    }
}

/// Symbolic expansion of `Λ_k(x+1)` with `tail_terms` nonzero tail terms.
///
/// `k >= 1` uses the general-order formula, `k = 0` is Stirling's series and
/// `k = -1, -2` are obtained from it by differentiation (digamma and
/// trigamma shaped tails).
pub fn build_lambda_terms(
    bernoulli: &BernoulliCache,
    k: i32,
    tail_terms: usize,
) -> Result<TermPoly> {
    if k < -2 {
        return Err(Error::InvalidArgument(format!(
            "expansion order must be >= -2, got {k}"
        )));
    }
    if tail_terms == 0 {
        return Err(Error::InvalidArgument("tail_terms must be positive".into()));
    }
    match k {
        -1 => {
            let mut p = build_lambda_terms(bernoulli, 0, tail_terms)?.derivative();
            p.truncate_tail(tail_terms);
            Ok(p)
        }
        -2 => {
            let mut p = build_lambda_terms(bernoulli, -1, tail_terms)?
                .derivative()
                .scaled(&Rational::from(-1));
            p.truncate_tail(tail_terms);
            Ok(p)
        }
        0 => Ok(TermPoly::new(
            0,
            [
                main(Rational::from(1), 1, true),
                main(Rational::from((1, 2)), 0, true),
                main(Rational::from(-1), 1, false),
            ],
            tail(bernoulli, 0, tail_terms),
        )),
        _ => {
            let n = k as u32;
            let n1 = Rational::from(n + 1);
            let mut terms = vec![
                main(Rational::from((1, n + 1)), n + 1, true),
                main(-Rational::from(n1.clone().recip().square()), n + 1, false),
                main(Rational::from((1, 2)), n, true),
            ];
            let n_fact = factorial(n);
            let h_n = harmonic(n);
            // r = n-1 is the x B_n (log x + H_n - 1) term; empty for n = 1
            for r in 1..n {
                let mut a = Rational::from(bernoulli.get(r as usize + 1) * &n_fact);
                a /= Rational::from(factorial(r + 1) * factorial(n - r));
                let chain = Rational::from(&h_n - harmonic(n - r));
                terms.push(MainTerm {
                    coeff: Rational::from(&a * &chain),
                    power: n - r,
                    has_log: false,
                });
                terms.push(main(a, n - r, true));
            }
            terms.push(main(
                Rational::from(bernoulli.get(n as usize + 1) / n1),
                0,
                true,
            ));
            Ok(TermPoly::new(k, terms, tail(bernoulli, n, tail_terms)))
        }
    }
}

fn main(coeff: Rational, power: u32, has_log: bool) -> MainTerm {
    MainTerm {
        coeff,
        power,
        has_log,
    }
}

/// `n! Σ_{s>=2} (-1)^s B_{n+s}/(n+s)! (s-2)! x^{1-s}`, first `count` nonzero terms.
fn tail(bernoulli: &BernoulliCache, n: u32, count: usize) -> Vec<TailTerm> {
    let n_fact = factorial(n);
    let mut out = Vec::with_capacity(count);
    let mut s = 2u32;
    while out.len() < count {
        let b = bernoulli.get((n + s) as usize);
        if b != 0 {
            let mut c = Rational::from(b * &n_fact);
            c *= factorial(s - 2);
            c /= factorial(n + s);
            if s % 2 == 1 {
                c = -c;
            }
            out.push(TailTerm {
                coeff: c,
                inv_power: s - 1,
            });
        }
        s += 1;
    }
    out
}

/// Numeric value of the truncated `Λ_k(x+1)`.
#[derive(Debug, Clone)]
pub struct LambdaValue {
    pub k: i32,
    pub x: Float,
    pub value: Float,
    pub err: Float,
    pub tail_terms_used: usize,
}

/// `Λ_k(x+1)` from its asymptotic series, using at most `tail_terms` tail
/// terms. Fails with [`Error::ArgumentTooSmall`] when the series cannot
/// reach three significant digits at this `x`; shift the argument first.
pub fn eval_lambda(ctx: &Context, k: i32, x: &Float, tail_terms: usize) -> Result<LambdaValue> {
    eval_lambda_bits(ctx, k, x, tail_terms, ctx.bits())
}

pub(crate) fn eval_lambda_bits(
    ctx: &Context,
    k: i32,
    x: &Float,
    tail_terms: usize,
    bits: u32,
) -> Result<LambdaValue> {
    if k < -2 {
        return Err(Error::InvalidArgument(format!(
            "expansion order must be >= -2, got {k}"
        )));
    }
    if tail_terms == 0 {
        return Err(Error::InvalidArgument("tail_terms must be positive".into()));
    }
    let too_small = || Error::ArgumentTooSmall {
        k,
        x: x.to_string_radix(10, Some(12)),
    };
    if !x.is_finite() || *x < 1 {
        return Err(too_small());
    }
    let poly = ctx.term_poly(k, tail_terms + 1)?;
    let xb = Float::with_val(bits, x);
    let ev = poly.evaluate(&xb, tail_terms);
    let limit = Float::with_val(bits, ev.value.abs_ref()) / 1000u32;
    if ev.err > limit {
        return Err(too_small());
    }
    Ok(LambdaValue {
        k,
        x: xb,
        value: ev.value,
        err: ev.err,
        tail_terms_used: ev.tail_terms_used,
    })
}

/// Exact termwise antiderivative.
pub fn integrate_lambda_terms(t: &TermPoly) -> TermPoly {
    t.integral()
}

/// Polynomial (ascending coefficients) multiplying `log x` in `Λ_k(x+1)`.
pub fn log_coefficient_poly(ctx: &Context, k: u32) -> Result<Vec<Rational>> {
    Ok(ctx.term_poly(k as i32, 1)?.log_coefficients())
}
