//! Integer factorization: trial division, Miller–Rabin and Pollard's rho.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

const TRIAL_BOUND: u64 = 50_000;

/// Miller–Rabin with fixed bases. Deterministic below 3.3e24, which
/// covers every integer that reaches it from a product of trial-division
/// survivors in practice; above that it is a strong probable-prime test.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return crate::rings::is_prime_u64(small);
    }
    if n.is_even() {
        return false;
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    const BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
    'witness: for a in BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard's rho; returns a nontrivial factor of an odd
/// composite `n`. Polynomial constants `c = 1, 2, ...` are tried in
/// order, so results are reproducible.
fn rho(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    for c in 1u32.. {
        let c = BigUint::from(c);
        let mut y = BigUint::from(2u32);
        let m = 128u32;
        let mut g = one.clone();
        let mut r = 1u64;
        let mut q = one.clone();
        let mut x = y.clone();
        let mut ys = y.clone();
        let f = |v: &BigUint| (v * v + &c) % n;
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..(m as u64).min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += m as u64;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g != one {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
    }
    unreachable!("rho exhausted its constants")
}

/// Distinct prime factors in increasing order. `0` and `1` have none.
pub fn prime_factors(n: &BigUint) -> Vec<BigUint> {
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut m = n.clone();
    let mut p = 2u64;
    while p <= TRIAL_BOUND {
        let bp = BigUint::from(p);
        if &bp * &bp > m {
            break;
        }
        if (&m % &bp).is_zero() {
            out.push(bp.clone());
            while (&m % &bp).is_zero() {
                m /= &bp;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let mut stack = vec![m];
    while let Some(k) = stack.pop() {
        if k.is_one() {
            continue;
        }
        if is_probable_prime(&k) {
            out.push(k);
            continue;
        }
        let d = rho(&k);
        stack.push(&k / &d);
        stack.push(d);
    }
    out.sort();
    out.dedup();
    out
}

/// Smallest odd prime dividing `n`, or `None` when `n` is a power of two.
pub fn odd_prime_factor(n: &BigUint) -> Option<BigUint> {
    if n.is_zero() {
        return None;
    }
    prime_factors(n).into_iter().find(|p| p.is_odd())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_smallest_odd(mut n: u64) -> Option<u64> {
        while n.is_multiple_of(2) && n > 0 {
            n /= 2;
        }
        (3..=n).step_by(2).find(|d| n.is_multiple_of(*d))
    }

    #[test]
    fn examples() {
        assert_eq!(odd_prime_factor(&1u32.into()), None);
        assert_eq!(odd_prime_factor(&12u32.into()), Some(3u32.into()));
        assert_eq!(odd_prime_factor(&1024u32.into()), None);
        assert_eq!(
            odd_prime_factor(&853513u32.into()).and_then(|p| p.to_u64()),
            brute_smallest_odd(853513)
        );
    }

    #[test]
    fn agrees_with_brute_force() {
        for n in 1..3000u64 {
            assert_eq!(
                odd_prime_factor(&n.into()).and_then(|p| p.to_u64()),
                brute_smallest_odd(n),
                "n = {n}"
            );
        }
    }

    #[test]
    fn splits_semiprime_beyond_trial_bound() {
        let p = BigUint::from(1_000_000_007u64);
        let q = BigUint::from(998_244_353u64);
        let r = BigUint::from(2_147_483_647u64);
        let n = &p * &q * &r * 4u32;
        assert_eq!(prime_factors(&n), vec![BigUint::from(2u32), q, p, r]);
    }
}
