use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{EuclideanDomain, Field, Ring};
use crate::{Error, Result};

/// The prime field `F_p` for a prime `p < 2^64`. Elements are reduced
/// representatives in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::InvalidInput(format!("{p} is not a prime")));
        }
        Ok(PrimeField { p })
    }

    /// Accepts an arbitrary-precision modulus and rejects anything that does
    /// not fit a machine word.
    pub fn from_bigint(p: &BigInt) -> Result<Self> {
        let p = p.to_u64().ok_or_else(|| {
            Error::InvalidInput(format!(
                "prime field modulus {p} exceeds the supported 64-bit range"
            ))
        })?;
        Self::new(p)
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn mul_mod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.p - (b - a)
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.mul_mod(*a, *b)
    }
    fn from_int(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p))
            .to_u64()
            .expect("reduced residue fits in u64")
    }
    fn name(&self) -> String {
        format!("F_{}", self.p)
    }
}

impl Field for PrimeField {
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero in F_{}", self.p);
        // Fermat: a^(p-2)
        self.pow(a, self.p - 2)
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
}

impl EuclideanDomain for PrimeField {
    type Size = ();
    fn size(&self, _a: &u64) {}
    fn div_rem(&self, a: &u64, b: &u64) -> (u64, u64) {
        (self.div(a, b), 0)
    }
    fn normalizing_unit(&self, a: &u64) -> (u64, u64) {
        (self.inv(a), *a)
    }
    fn is_unit(&self, a: &u64) -> bool {
        *a != 0
    }
}

fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut acc: u128 = 1 % m128;
    let mut base = (b % m) as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m128;
        }
        base = base * base % m128;
        e >>= 1;
    }
    acc as u64
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
