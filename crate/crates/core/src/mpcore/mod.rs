//! Working-precision settings and the exact rational combinatorics
//! (Bernoulli numbers and polynomials, power sums, harmonic numbers) that the
//! asymptotic series are assembled from.

mod bernoulli;
mod precision;

pub use bernoulli::{
    bernoulli, bernoulli_poly, binomial, factorial, harmonic, horner, horner_exact, phi,
    phi_exact, BernoulliCache, ExactRational,
};
pub use precision::{
    digits_to_bits, pow10, roundoff, PrecisionContext, DEFAULT_GUARD_DIGITS, MIN_GUARD_DIGITS,
};
