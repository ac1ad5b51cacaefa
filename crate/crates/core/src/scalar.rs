//! Scalar abstraction for group-algebra vectors and elimination.
//!
//! Exact work uses [`BigRational`]; `f64`/`f32` instantiations exist for quick
//! numeric exploration and display. Everything that decides a theorem-level
//! (in)equality runs on the exact instantiation.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, ToPrimitive, Zero};

pub trait Scalar: Clone + Debug + PartialOrd + Num + Neg<Output = Self> + Send + Sync {
    /// True when arithmetic on this type is exact (no rounding).
    const EXACT: bool;

    fn from_bigint(value: &BigInt) -> Self;

    fn from_ratio(numer: &BigInt, denom: &BigInt) -> Self;

    fn from_rational(value: &BigRational) -> Self {
        Self::from_ratio(value.numer(), value.denom())
    }

    /// Zero test used for pivoting. Exact types compare with zero; floats use a
    /// relative tolerance.
    fn is_negligible(&self) -> bool;

    fn to_f64(&self) -> f64;
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_bigint(value: &BigInt) -> Self {
        BigRational::from_integer(value.clone())
    }

    fn from_ratio(numer: &BigInt, denom: &BigInt) -> Self {
        BigRational::new(numer.clone(), denom.clone())
    }

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

macro_rules! float_scalar {
    ($t:ty, $eps:expr) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn from_bigint(value: &BigInt) -> Self {
                ToPrimitive::to_f64(value).unwrap_or(f64::NAN) as $t
            }

            fn from_ratio(numer: &BigInt, denom: &BigInt) -> Self {
                ToPrimitive::to_f64(&BigRational::new(numer.clone(), denom.clone()))
                    .unwrap_or(f64::NAN) as $t
            }

            fn is_negligible(&self) -> bool {
                self.abs() < $eps
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }
        }
    };
}

float_scalar!(f64, 1e-9);
float_scalar!(f32, 1e-4);
