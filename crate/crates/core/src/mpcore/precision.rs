use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};

pub const DEFAULT_GUARD_DIGITS: u32 = 15;

/// Smallest guard allowed; keeps the working precision at least ten digits
/// above the reported one.
pub const MIN_GUARD_DIGITS: u32 = 10;

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Decimal precision requested by the caller plus the guard digits carried
/// internally.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    target_digits: u32,
    guard_digits: u32,
}

impl PrecisionContext {
    pub fn new(target_digits: u32) -> Result<Self> {
        Self::with_guard(target_digits, DEFAULT_GUARD_DIGITS)
    }

    pub fn with_guard(target_digits: u32, guard_digits: u32) -> Result<Self> {
        if target_digits == 0 {
            return Err(Error::InvalidArgument(
                "target digits must be positive".into(),
            ));
        }
        if guard_digits < MIN_GUARD_DIGITS {
            return Err(Error::InvalidArgument(format!(
                "guard digits must be at least {MIN_GUARD_DIGITS}, got {guard_digits}"
            )));
        }
        Ok(Self {
            target_digits,
            guard_digits,
        })
    }

    pub fn target_digits(&self) -> u32 {
        self.target_digits
    }

    pub fn guard_digits(&self) -> u32 {
        self.guard_digits
    }

    pub fn working_digits(&self) -> u32 {
        self.target_digits + self.guard_digits
    }

    /// Binary working precision.
    pub fn bits(&self) -> u32 {
        digits_to_bits(self.working_digits())
    }

    /// `10^-target_digits` at working precision.
    pub fn target_eps(&self) -> Float {
        pow10(-(self.target_digits as i32), self.bits())
    }

    pub fn zero(&self) -> Float {
        Float::new(self.bits())
    }
}

pub fn digits_to_bits(digits: u32) -> u32 {
    (digits as f64 * LOG2_10).ceil() as u32 + 4
}

pub fn pow10(exp: i32, bits: u32) -> Float {
    Float::with_val(bits, 10).pow(exp)
}

/// Unit roundoff `2^-bits` scaled by `magnitude`.
pub fn roundoff(magnitude: &Float, bits: u32) -> Float {
    let mut r = Float::with_val(bits, magnitude.abs_ref());
    r >>= bits;
    r
}
