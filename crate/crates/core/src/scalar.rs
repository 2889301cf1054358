//! Scalar abstraction for the chain numerics: exact rationals for identities
//! that must hold on the nose, floats for large stationary solves.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive};

pub trait Scalar: Clone + Debug + PartialEq + PartialOrd + Num + Signed {
    fn from_ratio(num: u64, den: u64) -> Self;
    fn as_f64(&self) -> f64;
}

impl Scalar for f64 {
    fn from_ratio(num: u64, den: u64) -> Self {
        num as f64 / den as f64
    }
    fn as_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for f32 {
    fn from_ratio(num: u64, den: u64) -> Self {
        num as f32 / den as f32
    }
    fn as_f64(&self) -> f64 {
        *self as f64
    }
}

impl Scalar for BigRational {
    fn from_ratio(num: u64, den: u64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
    fn as_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratios_agree_across_scalars() {
        let exact = BigRational::from_ratio(3, 8);
        assert_eq!(exact.as_f64(), 0.375);
        assert_eq!(f64::from_ratio(3, 8), 0.375);
        assert_eq!(f32::from_ratio(3, 8).as_f64(), 0.375);
        assert_eq!(BigRational::from_ratio(2, 4), BigRational::from_ratio(1, 2));
    }
}
