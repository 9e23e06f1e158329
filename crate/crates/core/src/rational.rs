//! Exact rational numbers for digit boundaries and lattice values.
//!
//! Digit functions are discontinuous, so every quantity that decides which
//! plateau a point falls on is kept exact. Float inputs are snapped onto the
//! grid `base^-64 · Z` before use.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exponent of the snapping grid used by [`ExactRational::snap_f64`].
pub const SNAP_EXPONENT: u32 = 64;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactRational(BigRational);

impl ExactRational {
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Self(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn integer(v: i64) -> Self {
        Self(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_big(numer: BigInt, denom: BigInt) -> Self {
        Self(BigRational::new(numer, denom))
    }

    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    /// `base^exp` for any integer exponent.
    pub fn power(base: u32, exp: i32) -> Self {
        let b = BigInt::from(base).pow(exp.unsigned_abs());
        if exp >= 0 {
            Self(BigRational::from_integer(b))
        } else {
            Self(BigRational::new(BigInt::one(), b))
        }
    }

    /// Nearest point of `base^-64 · Z` to `v` (ties away from zero).
    pub fn snap_f64(v: f64, base: u32) -> Option<Self> {
        let exact = BigRational::from_float(v)?;
        let scale = BigInt::from(base).pow(SNAP_EXPONENT);
        let scaled = exact * BigRational::from_integer(scale.clone());
        Some(Self(BigRational::new(scaled.round().to_integer(), scale)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Self(self.0.abs())
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// Representative of `self` modulo `modulus` in `[0, modulus)`.
    pub fn rem_euclid(&self, modulus: &Self) -> Self {
        assert!(modulus.0.is_positive(), "modulus must be positive");
        let quotient = (&self.0 / &modulus.0).floor();
        Self(&self.0 - quotient * &modulus.0)
    }

    /// True when the reduced denominator is a power of `base`, i.e. the
    /// base-`base` expansion has finitely many digits after the point.
    pub fn is_finite_in_base(&self, base: u32) -> bool {
        self.power_denominator(base).is_some()
    }

    /// The `m` with reduced denominator `base^m`, if there is one.
    pub fn power_denominator(&self, base: u32) -> Option<u32> {
        let mut d = self.denom().clone();
        let b = BigInt::from(base);
        let mut m = 0;
        while !d.is_one() {
            let (q, r) = d.div_rem(&b);
            if !r.is_zero() {
                return None;
            }
            d = q;
            m += 1;
        }
        Some(m)
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.0.to_integer().to_i64()
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError(String);

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cannot parse {:?} as a rational (expected `p` or `p/q`)", self.0)
    }
}

impl std::error::Error for ParseRationalError {}

impl FromStr for ExactRational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(s.to_string());
        let t = s.trim();
        match t.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| err())?;
                let d: BigInt = d.trim().parse().map_err(|_| err())?;
                if d.is_zero() {
                    return Err(err());
                }
                Ok(Self::from_big(n, d))
            }
            None => {
                let n: BigInt = t.parse().map_err(|_| err())?;
                Ok(Self(BigRational::from_integer(n)))
            }
        }
    }
}

impl From<i64> for ExactRational {
    fn from(v: i64) -> Self {
        Self::integer(v)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&ExactRational> for &ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &ExactRational) -> ExactRational {
                ExactRational((&self.0).$method(&rhs.0))
            }
        }
        impl $tr<ExactRational> for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                ExactRational(self.0.$method(rhs.0))
            }
        }
        impl $tr<&ExactRational> for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &ExactRational) -> ExactRational {
                ExactRational(self.0.$method(&rhs.0))
            }
        }
        impl $tr<ExactRational> for &ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                ExactRational((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-self.0)
    }
}

impl Neg for &ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-&self.0)
    }
}

impl std::iter::Sum for ExactRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| acc + x)
    }
}
