use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{EuclideanDomain, Ring};

/// The ring ℤ with arbitrary-precision elements.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn from_int(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
    fn is_one(&self, a: &BigInt) -> bool {
        a.is_one()
    }
    fn name(&self) -> String {
        "Z".to_string()
    }
}

impl EuclideanDomain for Integers {
    type Size = BigUint;

    fn size(&self, a: &BigInt) -> BigUint {
        a.magnitude().clone()
    }

    /// Division with the remainder of least absolute value.
    fn div_rem(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        let (mut q, mut r) = a.div_mod_floor(b);
        if (&r * 2u8).abs() > b.abs() {
            r -= b;
            q += 1;
        }
        (q, r)
    }

    fn normalizing_unit(&self, a: &BigInt) -> (BigInt, BigInt) {
        if a.sign() == Sign::Minus {
            (-BigInt::one(), -BigInt::one())
        } else {
            (BigInt::one(), BigInt::one())
        }
    }

    fn is_unit(&self, a: &BigInt) -> bool {
        a.magnitude().is_one()
    }

    fn gcd(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a.gcd(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_remainder() {
        let z = Integers;
        for a in -20i64..=20 {
            for b in [-7i64, -3, -2, 2, 3, 7] {
                let (q, r) = z.div_rem(&a.into(), &b.into());
                assert_eq!(q * b + &r, BigInt::from(a));
                assert!(r.abs() * 2 <= BigInt::from(b).abs());
            }
        }
    }
}
