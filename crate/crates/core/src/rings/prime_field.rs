use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{parse, EuclideanDomain, Field, RingError};

/// Residue in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fp(pub u64);

/// The prime field ℤ_p for a prime `p ≤ 2^16`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

pub const MAX_MODULUS: u64 = 1 << 16;

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, RingError> {
        if p > MAX_MODULUS || !is_prime(p) {
            return Err(RingError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, v: i64) -> Fp {
        Fp(v.rem_euclid(self.p as i64) as u64)
    }

    fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        base %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        acc
    }
}

impl EuclideanDomain for PrimeField {
    type Elem = Fp;
    type Norm = u8;

    fn zero(&self) -> Fp {
        Fp(0)
    }

    fn one(&self) -> Fp {
        Fp(1 % self.p)
    }

    fn add(&self, a: &Fp, b: &Fp) -> Fp {
        Fp((a.0 + b.0) % self.p)
    }

    fn neg(&self, a: &Fp) -> Fp {
        Fp((self.p - a.0) % self.p)
    }

    fn mul(&self, a: &Fp, b: &Fp) -> Fp {
        Fp(a.0 * b.0 % self.p)
    }

    fn norm(&self, a: &Fp) -> u8 {
        u8::from(a.0 != 0)
    }

    fn div_rem(&self, a: &Fp, b: &Fp) -> Result<(Fp, Fp), RingError> {
        let inv = self.unit_inverse(b).ok_or(RingError::DivisionByZero)?;
        Ok((self.mul(a, &inv), Fp(0)))
    }

    fn is_unit(&self, a: &Fp) -> bool {
        a.0 != 0
    }

    fn unit_inverse(&self, a: &Fp) -> Option<Fp> {
        // Fermat: a^(p-2) = a^-1
        (a.0 != 0).then(|| Fp(self.pow(a.0, self.p - 2)))
    }

    fn unit_normalize(&self, a: &Fp) -> (Fp, Fp) {
        if a.0 == 0 {
            (self.one(), Fp(0))
        } else {
            (*a, self.one())
        }
    }

    fn is_zero(&self, a: &Fp) -> bool {
        a.0 == 0
    }

    fn name(&self) -> String {
        format!("z{}", self.p)
    }

    fn parse_elem(&self, text: &str) -> Result<Fp, RingError> {
        let v: BigInt = parse::integer(text).map_err(|reason| RingError::Parse {
            text: text.into(),
            ring: self.name(),
            reason,
        })?;
        let r = ((v % self.p) + self.p) % self.p;
        Ok(Fp(r.to_u64().expect("residue fits in u64")))
    }

    fn format_elem(&self, a: &Fp) -> String {
        a.0.to_string()
    }

    fn from_i64(&self, v: i64) -> Fp {
        self.elem(v)
    }
}

impl Field for PrimeField {
    fn label(&self) -> String {
        format!("Z{}", self.p)
    }
}
