//! Exact coefficient rings.
//!
//! Rings are described by small descriptor values (`Integers`, `Rationals`,
//! `PrimeField { p }`, `PolyRing<F>`, `LaurentRing<R>`); elements are plain
//! data and all arithmetic goes through the descriptor. A prime field only
//! knows its modulus at runtime, so the descriptor is what carries it.

mod cyclotomic;
mod integers;
mod laurent;
mod poly;
mod prime_field;
mod rationals;

use std::fmt::{Debug, Display};

use num_bigint::BigInt;

pub use cyclotomic::{cyclotomic, divisors, euler_phi};
pub use integers::Integers;
pub use laurent::{laurent_normalize, LaurentNormalForm, LaurentPoly, LaurentRing, ScalarNormalize};
pub use poly::{poly_gcd, Poly, PolyRing};
pub use prime_field::{is_prime_u64, PrimeField};
pub use rationals::Rationals;

/// A commutative ring with identity.
#[allow(clippy::wrong_self_convention)]
pub trait Ring: Clone + PartialEq + Debug {
    type Elem: Clone + PartialEq + Debug + Display;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Image of an integer under the canonical map ℤ → R.
    fn from_int(&self, n: &BigInt) -> Self::Elem;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_int(&BigInt::from(n))
    }

    /// Whether `a` is an element of this particular ring. Only rings whose
    /// elements carry their own parameters (polynomials over `F_p`) can
    /// answer `false`.
    fn contains(&self, _a: &Self::Elem) -> bool {
        true
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Human-readable ring name used in error messages.
    fn name(&self) -> String;
}

/// A Euclidean domain: division with remainder and a canonical associate
/// for every nonzero element.
pub trait EuclideanDomain: Ring {
    type Size: Ord;

    /// Euclidean size of a nonzero element.
    fn size(&self, a: &Self::Elem) -> Self::Size;

    /// `(q, r)` with `a = q*b + r` and `r = 0` or `size(r) < size(b)`.
    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem);

    /// A unit `u` (with its inverse) such that `u*a` is the canonical
    /// associate of `a`: positive over ℤ, monic over `k[t]`.
    fn normalizing_unit(&self, a: &Self::Elem) -> (Self::Elem, Self::Elem);

    fn is_unit(&self, a: &Self::Elem) -> bool;

    fn divides(&self, d: &Self::Elem, a: &Self::Elem) -> bool {
        if self.is_zero(d) {
            return self.is_zero(a);
        }
        self.is_zero(&self.div_rem(a, d).1)
    }

    fn normalize(&self, a: &Self::Elem) -> Self::Elem {
        if self.is_zero(a) {
            return a.clone();
        }
        self.mul(&self.normalizing_unit(a).0, a)
    }

    fn gcd(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !self.is_zero(&y) {
            let r = self.div_rem(&x, &y).1;
            x = y;
            y = r;
        }
        self.normalize(&x)
    }
}

/// A field. `inv` panics on zero; callers check first.
pub trait Field: Ring {
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }

    /// Characteristic, 0 for ℚ.
    fn characteristic(&self) -> u64;
}

/// Runtime choice of residue field: `Q` or `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kappa {
    Rational,
    Prime(u64),
}

impl Kappa {
    /// Parses `Q` or `Fp:<p>` (also accepts `F<p>`, `p` alone and `0` for ℚ).
    pub fn parse(text: &str) -> crate::Result<Kappa> {
        let t = text.trim();
        if t.eq_ignore_ascii_case("q") || t == "0" {
            return Ok(Kappa::Rational);
        }
        let digits = t
            .strip_prefix("Fp:")
            .or_else(|| t.strip_prefix("fp:"))
            .or_else(|| t.strip_prefix("F"))
            .unwrap_or(t);
        let p: u64 = digits.parse().map_err(|_| {
            crate::Error::InvalidInput(format!(
                "residue field `{text}` is not `Q` or `Fp:<p>` with p a prime below 2^64"
            ))
        })?;
        PrimeField::new(p)?;
        Ok(Kappa::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Kappa::Rational => 0,
            Kappa::Prime(p) => *p,
        }
    }
}

impl Display for Kappa {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Kappa::Rational => write!(f, "Q"),
            Kappa::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}
