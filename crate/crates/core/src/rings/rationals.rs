use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{EuclideanDomain, Field, Ring};

/// The field ℚ.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn from_int(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn name(&self) -> String {
        "Q".to_string()
    }
}

impl Field for Rationals {
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero in Q");
        a.recip()
    }
    fn characteristic(&self) -> u64 {
        0
    }
}

impl EuclideanDomain for Rationals {
    type Size = ();
    fn size(&self, _a: &BigRational) {}
    fn div_rem(&self, a: &BigRational, b: &BigRational) -> (BigRational, BigRational) {
        (a / b, BigRational::zero())
    }
    fn normalizing_unit(&self, a: &BigRational) -> (BigRational, BigRational) {
        (a.recip(), a.clone())
    }
    fn is_unit(&self, a: &BigRational) -> bool {
        !a.is_zero()
    }
}
