//! Scalar abstraction for the distribution model.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Floating point type the distribution matrices are stored in.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + NumAssign + Debug + Display + Default + Send + Sync + 'static
{
    /// Largest tolerated deviation of a column's 2-norm from one.
    const UNIT_TOLERANCE: f64;

    /// Lossy conversion from `f64`, used for parameters and literals.
    fn of(x: f64) -> Self;

    fn as_f64(self) -> f64;
}

impl Scalar for f64 {
    const UNIT_TOLERANCE: f64 = 1e-9;

    #[inline]
    fn of(x: f64) -> Self {
        x
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self
    }
}

impl Scalar for f32 {
    const UNIT_TOLERANCE: f64 = 1e-4;

    #[inline]
    fn of(x: f64) -> Self {
        x as f32
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conversions() {
        assert_eq!(f64::of(0.25), 0.25);
        assert_eq!(f32::of(0.25).as_f64(), 0.25);
        assert!(f32::UNIT_TOLERANCE > f64::UNIT_TOLERANCE);
    }
}
