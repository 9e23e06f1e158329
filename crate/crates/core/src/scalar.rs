//! Floating-point scalar abstraction for operator matrices.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Real scalar backing the complex entries of operator matrices: f32 or f64.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    fn of(v: f64) -> Self;

    fn as_f64(self) -> f64;
}

impl Scalar for f32 {
    #[inline]
    fn of(v: f64) -> Self {
        v as f32
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self as f64
    }
}

impl Scalar for f64 {
    #[inline]
    fn of(v: f64) -> Self {
        v
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self
    }
}

/// `e^{2πi·num/den}` with the turn count reduced modulo one in integers
/// before any float conversion.
pub fn unit_phase<T: Scalar>(num: i128, den: i128) -> Complex<T> {
    debug_assert!(den > 0);
    let reduced = num.rem_euclid(den);
    // Fold into (-1/2, 1/2] so the float angle stays small.
    let signed = if 2 * reduced > den {
        reduced - den
    } else {
        reduced
    };
    let angle = T::TAU() * T::of(signed as f64) / T::of(den as f64);
    Complex::new(angle.cos(), angle.sin())
}
