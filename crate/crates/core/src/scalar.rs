//! Scalar abstractions.
//!
//! The Lie-theoretic modules are generic over an exact field ([`ExactScalar`]),
//! instantiated with [`num_rational::BigRational`] by default and with
//! [`num_rational::Rational64`] where small fixed-width arithmetic suffices.
//! The spectral module is generic over [`SpectralFloat`] (`f32` / `f64`).

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Float, FromPrimitive, Num, Signed, ToPrimitive};

/// An exact ordered field element: no rounding ever happens.
pub trait ExactScalar:
    Clone + Debug + Display + Ord + Num + Signed + FromStr + Send + Sync + 'static
{
    fn from_i64(v: i64) -> Self;

    fn from_frac(numer: i64, denom: i64) -> Self;

    /// True iff the value lies in ℤ.
    fn is_integral(&self) -> bool;

    /// The value as an `i64` when it is an integer that fits.
    fn to_i64_exact(&self) -> Option<i64>;

    /// Lossy conversion, used only at the boundary to floating-point code.
    fn to_f64_lossy(&self) -> f64;

    /// `"p/q"`, or `"p"` when the denominator is one.
    fn to_ratio_string(&self) -> String {
        self.to_string()
    }
}

impl<I> ExactScalar for Ratio<I>
where
    I: Integer + Signed + Clone + Debug + Display + From<i64> + ToPrimitive + Send + Sync + 'static,
    Ratio<I>: FromStr,
{
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(I::from(v))
    }

    fn from_frac(numer: i64, denom: i64) -> Self {
        Ratio::new(I::from(numer), I::from(denom))
    }

    fn is_integral(&self) -> bool {
        self.is_integer()
    }

    fn to_i64_exact(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }

    fn to_f64_lossy(&self) -> f64 {
        let n = self.numer().to_f64().unwrap_or(f64::NAN);
        let d = self.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    }
}

/// Floating-point scalar for the spectral solver.
pub trait SpectralFloat: Float + FromPrimitive + Debug + Display + Send + Sync + rustfft::FftNum {
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal representable")
    }

    fn two_pi() -> Self {
        Self::lit(std::f64::consts::TAU)
    }
}

impl SpectralFloat for f32 {}
impl SpectralFloat for f64 {}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::{BigRational, Rational64};

    #[test]
    fn integrality_and_rendering() {
        let half = BigRational::from_frac(-1, 2);
        assert!(!half.is_integral());
        assert_eq!(half.to_ratio_string(), "-1/2");
        let four = Rational64::from_frac(8, 2);
        assert!(four.is_integral());
        assert_eq!(four.to_ratio_string(), "4");
        assert_eq!(Rational64::from_frac(1, 3).to_f64_lossy(), 1.0 / 3.0);
    }
}
