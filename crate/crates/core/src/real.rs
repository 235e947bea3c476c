use std::fmt;

use num_traits::float::FloatConst;
use num_traits::{Float, FromPrimitive};

/// Scalar type the solver is generic over. Implemented for `f32` and `f64`;
/// everything downstream only needs IEEE semantics plus a handful of
/// constants, so the bound set is kept as small as practical.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + fmt::Debug
    + fmt::Display
    + fmt::LowerExp
    + Send
    + Sync
    + 'static
{
    fn two() -> Self {
        Self::one() + Self::one()
    }

    fn half() -> Self {
        Self::one() / Self::two()
    }

    fn three() -> Self {
        Self::two() + Self::one()
    }

    /// Shorthand for embedding `f64` literals (tolerances, grid bounds) into
    /// the working precision. Panics only for non-finite inputs, which would
    /// be a bug at the call site.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }
}

impl<T> Real for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + fmt::Debug
        + fmt::Display
        + fmt::LowerExp
        + Send
        + Sync
        + 'static
{
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_match_literals() {
        assert_eq!(f64::two(), 2.0);
        assert_eq!(f64::half(), 0.5);
        assert_eq!(f64::three(), 3.0);
        assert_eq!(f32::two(), 2.0_f32);
        assert_eq!(f64::lit(1e-10), 1e-10);
        assert_eq!(f32::lit(0.25), 0.25_f32);
    }
}
