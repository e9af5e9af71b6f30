use cck_core::class_numbers::{hp_minus, hp_minus_bernoulli, hp_minus_maillet, DEFAULT_PRIME_BOUND};
use cck_core::factor::odd_prime_factor;
use cck_core::rings::is_prime_u64;
use num_bigint::BigInt;
use num_traits::One;

#[test]
fn both_methods_agree_up_to_97() {
    for p in (3..=97).filter(|&p| is_prime_u64(p)) {
        let a = hp_minus_bernoulli(p).unwrap();
        let b = hp_minus_maillet(p).unwrap();
        assert_eq!(a, b, "p = {p}");
        if p < 23 {
            assert!(a.is_one(), "p = {p}");
        } else {
            assert!(a > BigInt::one(), "p = {p}");
        }
    }
}

#[test]
fn p_191_has_an_odd_prime_factor() {
    let h = hp_minus(191, DEFAULT_PRIME_BOUND).unwrap();
    assert!(odd_prime_factor(h.magnitude()).is_some(), "h = {h}");
}

#[test]
fn default_bound_is_reachable() {
    assert!(hp_minus(211, DEFAULT_PRIME_BOUND).is_ok());
}
