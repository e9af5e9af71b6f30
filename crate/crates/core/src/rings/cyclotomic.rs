use super::{Integers, Poly};
use crate::{Error, Result};

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn euler_phi(n: u64) -> u64 {
    let mut m = n;
    let mut phi = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if m > 1 {
        phi -= phi / m;
    }
    phi
}

fn mobius(n: u64) -> i8 {
    let mut m = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// The `n`-th cyclotomic polynomial over ℤ, from the Möbius product
/// `Φ_n = ∏_{d | n} (t^d - 1)^{μ(n/d)}`: the numerator factors are
/// multiplied out and the denominator factors divided off exactly.
pub fn cyclotomic(n: u64) -> Result<Poly<Integers>> {
    if n == 0 {
        return Err(Error::InvalidInput("cyclotomic index must be positive".into()));
    }
    let binomial = |d: u64| {
        let mut c = vec![0i64; d as usize + 1];
        c[0] = -1;
        c[d as usize] = 1;
        Poly::from_i64s(Integers, &c)
    };
    let mut num = Poly::one(Integers);
    let mut den = Vec::new();
    for d in divisors(n) {
        match mobius(n / d) {
            1 => num = num.mul(&binomial(d)),
            -1 => den.push(binomial(d)),
            _ => {}
        }
    }
    for d in den {
        num = num
            .exact_div_z(&d)
            .ok_or_else(|| Error::Internal(format!("t^d - 1 does not divide Φ_{n} numerator")))?;
    }
    Ok(num)
}
