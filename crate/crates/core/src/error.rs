use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The asymptotic series is not usable at this argument; shift it upwards first.
    #[error("argument too small for the asymptotic expansion of order {k} at x = {x}")]
    ArgumentTooSmall { k: i32, x: String },

    #[error("no (w, tail terms) pair reaches 1e-{target_digits} for the constant of order {k}")]
    ParameterSearchFailed { k: u32, target_digits: u32 },

    #[error("quadrature did not converge after {levels} levels (last difference {last_diff})")]
    NonConvergent { levels: u32, last_diff: String },
}
