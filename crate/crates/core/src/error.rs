use thiserror::Error;

use crate::formal::FracExp;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormalError {
    #[error("series has no lower truncation bound in variable slot {0}")]
    NotTruncated(usize),
    #[error("expansion of ((x+x0)^{alpha} - x^{alpha})^{n} via z = (x+x0)^{alpha} is an infinite divergent sum")]
    DivergentSubstitution { alpha: FracExp, n: i64 },
    #[error("base polynomial has no pure x0^k leading part")]
    MalformedBase,
    #[error("rescaling factor is not an N-th root of unity (N = {0})")]
    NotARoot(u32),
    #[error("exponent {0} is zero where a nonzero exponent is required")]
    ZeroExponent(FracExp),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VoaError {
    #[error("operation applies to the {expected} sector only")]
    SectorMismatch { expected: &'static str },
    #[error("vector is not homogeneous")]
    NotHomogeneous,
    #[error("fractional exponent {0} in an integral-exponent result")]
    FractionalLeak(FracExp),
    #[error("source representation is incompatible with this transform: {0}")]
    IncompatibleSource(&'static str),
    #[error(transparent)]
    Formal(#[from] FormalError),
}
