use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{EuclideanDomain, Field, Integers, Rationals, Ring};
use crate::{Error, Result};

/// Dense univariate polynomial in `t`, lowest coefficient first. The
/// coefficient vector never ends in a zero, so the zero polynomial is the
/// empty vector.
#[derive(Clone, PartialEq)]
pub struct Poly<R: Ring> {
    ring: R,
    coeffs: Vec<R::Elem>,
}

impl<R: Ring> Poly<R> {
    pub fn new(ring: R, mut coeffs: Vec<R::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| ring.is_zero(c)) {
            coeffs.pop();
        }
        Poly { ring, coeffs }
    }

    pub fn from_i64s(ring: R, coeffs: &[i64]) -> Self {
        let c = coeffs.iter().map(|&c| ring.from_i64(c)).collect();
        Self::new(ring, c)
    }

    pub fn zero(ring: R) -> Self {
        Poly { ring, coeffs: Vec::new() }
    }

    pub fn one(ring: R) -> Self {
        let one = ring.one();
        Self::new(ring, vec![one])
    }

    pub fn constant(ring: R, c: R::Elem) -> Self {
        Self::new(ring, vec![c])
    }

    /// `c * t^k`
    pub fn monomial(ring: R, c: R::Elem, k: usize) -> Self {
        let mut v = vec![ring.zero(); k];
        v.push(c);
        Self::new(ring, v)
    }

    /// The variable `t`.
    pub fn t(ring: R) -> Self {
        let one = ring.one();
        Self::monomial(ring, one, 1)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R::Elem> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&R::Elem> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> R::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.ring.zero())
    }

    /// Number of trailing zero coefficients, i.e. the largest `k` with
    /// `t^k | self` (0 for the zero polynomial).
    pub fn low_order(&self) -> usize {
        self.coeffs.iter().take_while(|c| self.ring.is_zero(c)).count()
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_some_and(|c| self.ring.is_one(c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => self.ring.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::new(self.ring.clone(), c)
    }

    pub fn neg(&self) -> Self {
        let c = self.coeffs.iter().map(|a| self.ring.neg(a)).collect();
        Poly { ring: self.ring.clone(), coeffs: c }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.ring.clone());
        }
        let r = &self.ring;
        let mut c = vec![r.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if r.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] = r.add(&c[i + j], &r.mul(a, b));
            }
        }
        Self::new(r.clone(), c)
    }

    pub fn scale(&self, s: &R::Elem) -> Self {
        let c = self.coeffs.iter().map(|a| self.ring.mul(a, s)).collect();
        Self::new(self.ring.clone(), c)
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![self.ring.zero(); k];
        c.extend(self.coeffs.iter().cloned());
        Poly { ring: self.ring.clone(), coeffs: c }
    }

    /// Exact division by `t^k`; the caller guarantees `k <= low_order()`.
    pub fn unshift(&self, k: usize) -> Self {
        debug_assert!(self.is_zero() || k <= self.low_order());
        Poly {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().skip(k).cloned().collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.ring.clone());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Horner evaluation at a ring element.
    pub fn eval(&self, x: &R::Elem) -> R::Elem {
        let r = &self.ring;
        self.coeffs
            .iter()
            .rev()
            .fold(r.zero(), |acc, c| r.add(&r.mul(&acc, x), c))
    }

    /// Coefficient-wise image under a ring map.
    pub fn map<S: Ring>(&self, target: S, f: impl Fn(&R::Elem) -> S::Elem) -> Poly<S> {
        let c = self.coeffs.iter().map(f).collect();
        Poly::new(target, c)
    }

    /// `t^deg * self(1/t)`.
    pub fn reversed(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(self.ring.clone(), c)
    }
}

impl<F: Field> Poly<F> {
    /// Long division. Panics on division by zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let f = &self.ring;
        let dd = d.degree().expect("polynomial division by zero");
        let inv_lead = f.inv(d.lead().unwrap());
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(f.clone()), self.clone());
        }
        let mut quot = vec![f.zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = f.mul(&rem[k + dd], &inv_lead);
            if f.is_zero(&c) {
                continue;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] = f.sub(&rem[k + i], &f.mul(&c, dc));
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(f.clone(), quot), Self::new(f.clone(), rem))
    }

    /// Quotient when `d` divides `self`, `None` otherwise.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Monic associate; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.lead() {
            None => self.clone(),
            Some(l) => self.scale(&self.ring.inv(l)),
        }
    }

    fn gcd_unchecked(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl Poly<Integers> {
    /// Positive gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// `self / content`, with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.lead().unwrap().is_negative() {
            c = -c;
        }
        let v = self.coeffs.iter().map(|a| a / &c).collect();
        Self::new(Integers, v)
    }

    pub fn to_rational(&self) -> Poly<Rationals> {
        self.map(Rationals, |c| num_rational::BigRational::from_integer(c.clone()))
    }

    /// Image in `R[t]` under ℤ → R.
    pub fn reduce<S: Ring>(&self, target: &S) -> Poly<S> {
        self.map(target.clone(), |c| target.from_int(c))
    }

    /// gcd in ℤ[t]: gcd of contents times the primitive gcd over ℚ, with
    /// positive leading coefficient.
    pub fn gcd_z(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.abs_lead();
        }
        if other.is_zero() {
            return self.abs_lead();
        }
        let cont = self.content().gcd(&other.content());
        let g = self.to_rational().gcd_unchecked(&other.to_rational());
        let g_int = rational_to_primitive(&g);
        g_int.scale(&cont)
    }

    fn abs_lead(&self) -> Self {
        match self.lead() {
            Some(l) if l.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }

    /// Exact quotient in ℤ[t], `None` if `d` does not divide `self`.
    pub fn exact_div_z(&self, d: &Self) -> Option<Self> {
        let dd = d.degree()?;
        let lead = d.lead().unwrap();
        let mut rem = self.coeffs.clone();
        if self.is_zero() {
            return Some(self.clone());
        }
        if rem.len() <= dd {
            return None;
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let (c, r) = rem[k + dd].div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            if c.is_zero() {
                continue;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.iter().all(|c| c.is_zero()).then(|| Self::new(Integers, quot))
    }
}

/// Clears denominators and content of a rational polynomial, giving the
/// primitive integer polynomial with positive leading coefficient.
pub(crate) fn rational_to_primitive(p: &Poly<Rationals>) -> Poly<Integers> {
    let den = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints = p
        .coeffs()
        .iter()
        .map(|c| (c * &den).to_integer())
        .collect();
    Poly::new(Integers, ints).primitive_part()
}

/// Monic gcd of two polynomials over the same field.
pub fn poly_gcd<F: Field>(a: &Poly<F>, b: &Poly<F>) -> Result<Poly<F>> {
    if a.ring != b.ring {
        return Err(Error::MixedRings {
            left: a.ring.name(),
            right: b.ring.name(),
        });
    }
    Ok(a.gcd_unchecked(b))
}

impl<R: Ring> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if self.ring.is_zero(c) {
                continue;
            }
            let s = c.to_string();
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            let body = if body.contains('/') && i > 0 {
                format!("({body})")
            } else {
                body
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = body == "1";
            match i {
                0 => write!(f, "{body}")?,
                1 if unit => write!(f, "t")?,
                1 => write!(f, "{body}*t")?,
                _ if unit => write!(f, "t^{i}")?,
                _ => write!(f, "{body}*t^{i}")?,
            }
        }
        Ok(())
    }
}

impl<R: Ring> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.ring.name(), self)
    }
}

/// `R[t]` as a ring descriptor.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyRing<R: Ring> {
    base: R,
}

impl<R: Ring> PolyRing<R> {
    pub fn new(base: R) -> Self {
        PolyRing { base }
    }
    pub fn base(&self) -> &R {
        &self.base
    }
}

impl<R: Ring> Ring for PolyRing<R> {
    type Elem = Poly<R>;

    fn zero(&self) -> Poly<R> {
        Poly::zero(self.base.clone())
    }
    fn one(&self) -> Poly<R> {
        Poly::one(self.base.clone())
    }
    fn is_zero(&self, a: &Poly<R>) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Poly<R>, b: &Poly<R>) -> Poly<R> {
        a.add(b)
    }
    fn sub(&self, a: &Poly<R>, b: &Poly<R>) -> Poly<R> {
        a.sub(b)
    }
    fn neg(&self, a: &Poly<R>) -> Poly<R> {
        a.neg()
    }
    fn mul(&self, a: &Poly<R>, b: &Poly<R>) -> Poly<R> {
        a.mul(b)
    }
    fn from_int(&self, n: &BigInt) -> Poly<R> {
        Poly::constant(self.base.clone(), self.base.from_int(n))
    }
    fn contains(&self, a: &Poly<R>) -> bool {
        a.ring == self.base
    }
    fn name(&self) -> String {
        format!("{}[t]", self.base.name())
    }
}

impl<F: Field> EuclideanDomain for PolyRing<F> {
    type Size = usize;

    fn size(&self, a: &Poly<F>) -> usize {
        a.degree().unwrap_or(0)
    }
    fn div_rem(&self, a: &Poly<F>, b: &Poly<F>) -> (Poly<F>, Poly<F>) {
        a.div_rem(b)
    }
    fn normalizing_unit(&self, a: &Poly<F>) -> (Poly<F>, Poly<F>) {
        let l = a.lead().expect("normalizing the zero polynomial");
        (
            Poly::constant(self.base.clone(), self.base.inv(l)),
            Poly::constant(self.base.clone(), l.clone()),
        )
    }
    fn is_unit(&self, a: &Poly<F>) -> bool {
        a.degree() == Some(0)
    }
    fn gcd(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        a.gcd_unchecked(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::PrimeField;
    use proptest::prelude::*;

    fn q(c: &[i64]) -> Poly<Rationals> {
        Poly::from_i64s(Rationals, c)
    }

    #[test]
    fn gcd_examples() {
        // gcd(t^2 - 1, t - 1) = t - 1
        assert_eq!(poly_gcd(&q(&[-1, 0, 1]), &q(&[-1, 1])).unwrap(), q(&[-1, 1]));
        // gcd(f, 0) = monic f
        assert_eq!(poly_gcd(&q(&[4, 2]), &q(&[])).unwrap(), q(&[2, 1]));
        // t^3 + 1 = (t + 1)(t^2 - t + 1)
        let cubic = q(&[1, 0, 0, 1]);
        let quad = q(&[1, -1, 1]);
        assert_eq!(cubic.exact_div(&q(&[1, 1])).unwrap(), quad);
        assert_eq!(poly_gcd(&quad, &cubic).unwrap(), quad);
    }

    #[test]
    fn gcd_rejects_mixed_fields() {
        let a = Poly::from_i64s(PrimeField::new(3).unwrap(), &[1, 1]);
        let b = Poly::from_i64s(PrimeField::new(5).unwrap(), &[1, 1]);
        assert!(matches!(poly_gcd(&a, &b), Err(Error::MixedRings { .. })));
    }

    #[test]
    fn integer_gcd_keeps_content() {
        let a = Poly::from_i64s(Integers, &[-6, 6]);
        let b = Poly::from_i64s(Integers, &[-4, 0, 4]);
        assert_eq!(a.gcd_z(&b), Poly::from_i64s(Integers, &[-2, 2]));
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(q(&[1, -1, 1]).to_string(), "t^2 - t + 1");
        let half = Poly::new(
            Rationals,
            vec![num_rational::BigRational::new((-1).into(), 2.into()), Rationals.one()],
        );
        assert_eq!(half.to_string(), "t - 1/2");
    }

    proptest! {
        #[test]
        fn gcd_divides_both(a in prop::collection::vec(-6i64..=6, 0..6),
                            b in prop::collection::vec(-6i64..=6, 0..6),
                            c in prop::collection::vec(-3i64..=3, 1..3)) {
            let (a, b, c) = (q(&a), q(&b), q(&c));
            let (a, b) = (a.mul(&c), b.mul(&c));
            let g = poly_gcd(&a, &b).unwrap();
            if g.is_zero() {
                prop_assert!(a.is_zero() && b.is_zero());
            } else {
                prop_assert!(a.div_rem(&g).1.is_zero());
                prop_assert!(b.div_rem(&g).1.is_zero());
                if !c.is_zero() {
                    prop_assert!(g.div_rem(&c).1.is_zero());
                }
            }
        }
    }
}
