use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{parse, EuclideanDomain, RingError};

/// The integers ℤ with arbitrary precision. Remainders lie in `[0, |b|)`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Integers;

impl EuclideanDomain for Integers {
    type Elem = BigInt;
    type Norm = BigUint;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }

    fn one(&self) -> BigInt {
        BigInt::one()
    }

    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }

    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }

    fn norm(&self, a: &BigInt) -> BigUint {
        a.magnitude().clone()
    }

    fn div_rem(&self, a: &BigInt, b: &BigInt) -> Result<(BigInt, BigInt), RingError> {
        if b.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        let (mut q, mut r) = Integer::div_rem(a, b);
        if r.is_negative() {
            if b.is_positive() {
                q -= 1;
                r += b;
            } else {
                q += 1;
                r -= b;
            }
        }
        Ok((q, r))
    }

    fn is_unit(&self, a: &BigInt) -> bool {
        a.magnitude().is_one()
    }

    fn unit_inverse(&self, a: &BigInt) -> Option<BigInt> {
        self.is_unit(a).then(|| a.clone())
    }

    fn unit_normalize(&self, a: &BigInt) -> (BigInt, BigInt) {
        match a.sign() {
            Sign::Minus => (-BigInt::one(), -a),
            _ => (BigInt::one(), a.clone()),
        }
    }

    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }

    fn name(&self) -> String {
        "z".into()
    }

    fn parse_elem(&self, text: &str) -> Result<BigInt, RingError> {
        parse::integer(text).map_err(|reason| RingError::Parse {
            text: text.into(),
            ring: self.name(),
            reason,
        })
    }

    fn format_elem(&self, a: &BigInt) -> String {
        a.to_string()
    }

    fn from_i64(&self, v: i64) -> BigInt {
        BigInt::from(v)
    }
}
