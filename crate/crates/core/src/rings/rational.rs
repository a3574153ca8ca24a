use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{parse, EuclideanDomain, Field, RingError};

/// The rationals ℚ. `BigRational` keeps numerator and denominator coprime
/// with a positive denominator.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl EuclideanDomain for Rationals {
    type Elem = BigRational;
    type Norm = u8;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn norm(&self, a: &BigRational) -> u8 {
        u8::from(!a.is_zero())
    }

    fn div_rem(&self, a: &BigRational, b: &BigRational) -> Result<(BigRational, BigRational), RingError> {
        if b.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        Ok((a / b, BigRational::zero()))
    }

    fn is_unit(&self, a: &BigRational) -> bool {
        !a.is_zero()
    }

    fn unit_inverse(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }

    fn unit_normalize(&self, a: &BigRational) -> (BigRational, BigRational) {
        if a.is_zero() {
            (BigRational::one(), BigRational::zero())
        } else {
            (a.clone(), BigRational::one())
        }
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn name(&self) -> String {
        "q".into()
    }

    fn parse_elem(&self, text: &str) -> Result<BigRational, RingError> {
        parse::rational(text).map_err(|reason| RingError::Parse {
            text: text.into(),
            ring: self.name(),
            reason,
        })
    }

    fn format_elem(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
}

impl Field for Rationals {
    fn label(&self) -> String {
        "Q".into()
    }
}
