//! Arbitrary-precision derivatives of the Hurwitz zeta function at negative
//! integers, `ζ'(-k, w)`, computed through Bendersky's generalized gamma
//! functions `log Γ_k` and the generalized Glaisher-Kinkelin constants `L_k`.
//!
//! All real arithmetic is MPFR (via `rug`) at the working precision of a
//! [`Context`]; series coefficients are exact rationals until evaluation.

pub mod asymptotic;
pub mod constants;
mod context;
mod error;
pub mod format;
pub mod gengamma;
pub mod hurwitz;
pub mod mpcore;
pub mod validate;

pub use context::{ConstantStrategy, Context};
pub use error::{Error, Result};
