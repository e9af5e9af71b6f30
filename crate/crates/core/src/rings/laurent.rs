use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{Field, Integers, Poly, PrimeField, Rationals, Ring};

/// An element `t^val * body(t)` of `R[t, t^-1]`. The body has a nonzero
/// constant term unless the element is zero, and zero always has `val = 0`,
/// so equal elements have equal representations.
#[derive(Clone, PartialEq)]
pub struct LaurentPoly<R: Ring> {
    val: i64,
    body: Poly<R>,
}

impl<R: Ring> LaurentPoly<R> {
    pub fn new(val: i64, body: Poly<R>) -> Self {
        if body.is_zero() {
            return LaurentPoly { val: 0, body };
        }
        let k = body.low_order();
        LaurentPoly {
            val: val + k as i64,
            body: body.unshift(k),
        }
    }

    pub fn from_coeffs(ring: R, val: i64, coeffs: Vec<R::Elem>) -> Self {
        Self::new(val, Poly::new(ring, coeffs))
    }

    pub fn from_i64s(ring: R, val: i64, coeffs: &[i64]) -> Self {
        Self::new(val, Poly::from_i64s(ring, coeffs))
    }

    pub fn from_poly(p: Poly<R>) -> Self {
        Self::new(0, p)
    }

    pub fn zero(ring: R) -> Self {
        LaurentPoly { val: 0, body: Poly::zero(ring) }
    }

    pub fn one(ring: R) -> Self {
        Self::from_poly(Poly::one(ring))
    }

    pub fn constant(ring: R, c: R::Elem) -> Self {
        Self::from_poly(Poly::constant(ring, c))
    }

    /// `c * t^k` for any integer `k`.
    pub fn monomial(ring: R, c: R::Elem, k: i64) -> Self {
        Self::new(k, Poly::constant(ring, c))
    }

    pub fn ring(&self) -> &R {
        self.body.ring()
    }

    /// Lowest exponent of `t` (0 for zero).
    pub fn valuation(&self) -> i64 {
        self.val
    }

    pub fn body(&self) -> &Poly<R> {
        &self.body
    }

    /// Highest exponent present, `None` for zero.
    pub fn top_exponent(&self) -> Option<i64> {
        self.body.degree().map(|d| self.val + d as i64)
    }

    /// Width of the support, i.e. the degree of the body.
    pub fn span(&self) -> Option<usize> {
        self.body.degree()
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    /// Coefficient of `t^k`.
    pub fn coeff(&self, k: i64) -> R::Elem {
        if k < self.val {
            return self.ring().zero();
        }
        self.body.coeff((k - self.val) as usize)
    }

    /// Iterates `(exponent, coefficient)` over nonzero terms.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &R::Elem)> + '_ {
        let r = self.ring();
        self.body
            .coeffs()
            .iter()
            .enumerate()
            .filter(move |(_, c)| !r.is_zero(c))
            .map(move |(i, c)| (self.val + i as i64, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let v = self.val.min(other.val);
        let a = self.body.shift((self.val - v) as usize);
        let b = other.body.shift((other.val - v) as usize);
        Self::new(v, a.add(&b))
    }

    pub fn neg(&self) -> Self {
        LaurentPoly { val: self.val, body: self.body.neg() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.val + other.val, self.body.mul(&other.body))
    }

    pub fn scale(&self, s: &R::Elem) -> Self {
        Self::new(self.val, self.body.scale(s))
    }

    /// Multiplication by the unit `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly { val: self.val + k, body: self.body.clone() }
    }

    /// `t^k * self` as an ordinary polynomial; requires `k + val >= 0`.
    pub fn to_poly_shifted(&self, k: i64) -> Poly<R> {
        if self.is_zero() {
            return self.body.clone();
        }
        let e = self.val + k;
        assert!(e >= 0, "shift {k} does not clear t^{}", self.val);
        self.body.shift(e as usize)
    }

    /// Nonzero scalar multiple of a power of `t`. Over a field these are
    /// exactly the units.
    pub fn is_monomial(&self) -> bool {
        self.body.degree() == Some(0)
    }

    pub fn map<S: Ring>(&self, target: S, f: impl Fn(&R::Elem) -> S::Elem) -> LaurentPoly<S> {
        LaurentPoly::new(self.val, self.body.map(target, f))
    }

    /// The image under the ring automorphism `t -> t^-1`.
    pub fn bar(&self) -> Self {
        match self.top_exponent() {
            None => self.clone(),
            Some(top) => Self::new(-top, self.body.reversed()),
        }
    }
}

impl LaurentPoly<Integers> {
    pub fn reduce<S: Ring>(&self, target: &S) -> LaurentPoly<S> {
        self.map(target.clone(), |c| target.from_int(c))
    }

    /// Canonical associate under the units `±t^i` of `Z[t, t^-1]`: a
    /// polynomial with nonzero constant term and positive leading
    /// coefficient. The content is kept because it is not a unit.
    pub fn canonical_associate(&self) -> Poly<Integers> {
        let nf = laurent_normalize(self);
        nf.primitive.scale(&nf.scale.abs())
    }
}

impl<F: Field> LaurentPoly<F> {
    /// Monic associate with nonzero constant term; zero stays zero.
    pub fn canonical_associate(&self) -> Poly<F> {
        self.body.monic()
    }
}

impl<R: Ring> fmt::Display for LaurentPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.val == 0 {
            write!(f, "{}", self.body)
        } else if self.is_monomial() && self.ring().is_one(self.body.lead().unwrap()) {
            write!(f, "t^{}", self.val)
        } else {
            write!(f, "t^{}*({})", self.val, self.body)
        }
    }
}

impl<R: Ring> fmt::Debug for LaurentPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent[{}]({})", self.ring().name(), self)
    }
}

/// `R[t, t^-1]` as a ring descriptor.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentRing<R: Ring> {
    base: R,
}

impl<R: Ring> LaurentRing<R> {
    pub fn new(base: R) -> Self {
        LaurentRing { base }
    }
    pub fn base(&self) -> &R {
        &self.base
    }
    /// The deck variable `t`.
    pub fn t(&self) -> LaurentPoly<R> {
        LaurentPoly::monomial(self.base.clone(), self.base.one(), 1)
    }
}

impl<R: Ring> Ring for LaurentRing<R> {
    type Elem = LaurentPoly<R>;

    fn zero(&self) -> LaurentPoly<R> {
        LaurentPoly::zero(self.base.clone())
    }
    fn one(&self) -> LaurentPoly<R> {
        LaurentPoly::one(self.base.clone())
    }
    fn is_zero(&self, a: &LaurentPoly<R>) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &LaurentPoly<R>, b: &LaurentPoly<R>) -> LaurentPoly<R> {
        a.add(b)
    }
    fn sub(&self, a: &LaurentPoly<R>, b: &LaurentPoly<R>) -> LaurentPoly<R> {
        a.sub(b)
    }
    fn neg(&self, a: &LaurentPoly<R>) -> LaurentPoly<R> {
        a.neg()
    }
    fn mul(&self, a: &LaurentPoly<R>, b: &LaurentPoly<R>) -> LaurentPoly<R> {
        a.mul(b)
    }
    fn from_int(&self, n: &BigInt) -> LaurentPoly<R> {
        LaurentPoly::constant(self.base.clone(), self.base.from_int(n))
    }
    fn contains(&self, a: &LaurentPoly<R>) -> bool {
        *a.ring() == self.base
    }
    fn name(&self) -> String {
        format!("{}[t,t^-1]", self.base.name())
    }
}

/// Coefficient rings that know how to split a polynomial into a scalar
/// and a normalized remainder.
pub trait ScalarNormalize: Ring {
    /// The scalar `s` with `p = s * primitive`: `±content` over ℤ (sign of
    /// the leading coefficient), the leading coefficient over a field.
    fn normalizing_scalar(&self, p: &Poly<Self>) -> Self::Elem;
    fn divide_by_scalar(&self, p: &Poly<Self>, s: &Self::Elem) -> Poly<Self>;
}

impl ScalarNormalize for Integers {
    fn normalizing_scalar(&self, p: &Poly<Self>) -> BigInt {
        let c = p.content();
        if p.lead().is_some_and(|l| l.is_negative()) {
            -c
        } else {
            c
        }
    }
    fn divide_by_scalar(&self, p: &Poly<Self>, s: &BigInt) -> Poly<Self> {
        let c = p
            .coeffs()
            .iter()
            .map(|a| {
                let (q, r) = a.div_rem(s);
                debug_assert!(r.is_zero());
                q
            })
            .collect();
        Poly::new(Integers, c)
    }
}

macro_rules! field_scalar_normalize {
    ($t:ty) => {
        impl ScalarNormalize for $t {
            fn normalizing_scalar(&self, p: &Poly<Self>) -> <$t as Ring>::Elem {
                p.lead().cloned().unwrap_or_else(|| self.one())
            }
            fn divide_by_scalar(&self, p: &Poly<Self>, s: &<$t as Ring>::Elem) -> Poly<Self> {
                p.scale(&self.inv(s))
            }
        }
    };
}
field_scalar_normalize!(Rationals);
field_scalar_normalize!(PrimeField);

/// `f = scale * t^shift * primitive`, where `primitive` has nonzero
/// constant term, positive leading coefficient and content 1 over ℤ, and
/// is monic over a field.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentNormalForm<R: Ring> {
    pub scale: R::Elem,
    pub shift: i64,
    pub primitive: Poly<R>,
}

impl<R: Ring> LaurentNormalForm<R> {
    /// `scale * t^shift`; a genuine unit unless the content is nontrivial.
    pub fn unit(&self) -> LaurentPoly<R> {
        let r = self.primitive.ring().clone();
        LaurentPoly::monomial(r, self.scale.clone(), self.shift)
    }
}

pub fn laurent_normalize<R: ScalarNormalize>(f: &LaurentPoly<R>) -> LaurentNormalForm<R> {
    let ring = f.ring().clone();
    if f.is_zero() {
        return LaurentNormalForm {
            scale: ring.one(),
            shift: 0,
            primitive: Poly::zero(ring),
        };
    }
    let s = ring.normalizing_scalar(&f.body);
    LaurentNormalForm {
        primitive: ring.divide_by_scalar(&f.body, &s),
        scale: s,
        shift: f.val,
    }
}
