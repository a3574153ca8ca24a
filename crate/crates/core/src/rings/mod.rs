//! Exact Euclidean domains.
//!
//! Rings are values (`Integers`, `Rationals`, `PrimeField`, `PolyRing<F>`) that
//! know how to operate on their element type. Keeping the ring separate from
//! the element lets ℤ_p carry its modulus once and lets the same matrix code run
//! over every domain.

mod integer;
mod parse;
mod poly;
mod prime_field;
mod rational;

use std::fmt::Debug;

use thiserror::Error;

pub use integer::Integers;
pub use poly::{Poly, PolyRing};
pub use prime_field::{Fp, PrimeField};
pub use rational::Rationals;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("modulus {0} is not a prime in [2, 65536]")]
    NotPrime(u64),
    #[error("cannot parse {text:?} as an element of {ring}: {reason}")]
    Parse {
        text: String,
        ring: String,
        reason: String,
    },
}

/// A Euclidean domain with exact arithmetic.
///
/// `div_rem(a, b)` returns `(q, r)` with `a = q·b + r` and either `r = 0` or
/// `norm(r) < norm(b)`. `unit_normalize(a)` returns `(u, c)` with `a = u·c`,
/// `u` a unit and `c` the canonical associate of `a`.
pub trait EuclideanDomain: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Debug + Send + Sync;
    type Norm: Ord + Clone + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Euclidean norm. Only meaningful for nonzero arguments.
    fn norm(&self, a: &Self::Elem) -> Self::Norm;
    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> Result<(Self::Elem, Self::Elem), RingError>;
    fn is_unit(&self, a: &Self::Elem) -> bool;
    /// Multiplicative inverse of a unit, `None` for non-units.
    fn unit_inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn unit_normalize(&self, a: &Self::Elem) -> (Self::Elem, Self::Elem);

    /// Short ring name in the CLI syntax (`z`, `q`, `z5`, `qx`, `z5x`).
    fn name(&self) -> String;
    fn parse_elem(&self, text: &str) -> Result<Self::Elem, RingError>;
    fn format_elem(&self, a: &Self::Elem) -> String;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn divides(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        if self.is_zero(a) {
            return self.is_zero(b);
        }
        match self.div_rem(b, a) {
            Ok((_, r)) => self.is_zero(&r),
            Err(_) => false,
        }
    }

    fn is_canonical(&self, a: &Self::Elem) -> bool {
        self.unit_normalize(a).1 == *a
    }

    fn from_i64(&self, v: i64) -> Self::Elem {
        let mut acc = self.zero();
        let one = self.one();
        // Double-and-add keeps this O(log |v|) for rings without native integers.
        let mut base = if v < 0 { self.neg(&one) } else { one };
        let mut n = v.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            n >>= 1;
        }
        acc
    }
}

/// A Euclidean domain in which every nonzero element is a unit.
pub trait Field: EuclideanDomain {
    /// Label used in barcode JSON: `Q`, `Z2`, `Z5`, ...
    fn label(&self) -> String;

    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        self.unit_inverse(a)
    }
}
