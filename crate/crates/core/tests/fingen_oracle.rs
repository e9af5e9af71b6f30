//! Finite generation of principal modules checked against the lattice
//! oracle in `common/lattice_oracle.rs`.

#[path = "common/lattice_oracle.rs"]
mod lattice_oracle;

use cck_core::laurent_modules::{
    finitely_generated_over_z, property1_check, relevant_primes, ModulePresentation, PrimeIdeal,
};
use cck_core::rings::{is_prime_u64, Integers, LaurentPoly};
use lattice_oracle::{oracle_finitely_generated, trim};
use proptest::prelude::*;

fn module(f: &[i64]) -> ModulePresentation {
    ModulePresentation::principal(LaurentPoly::from_i64s(Integers, 0, f))
}

#[test]
fn oracle_sanity() {
    assert!(oracle_finitely_generated(&[1, -3, 1]));
    assert!(oracle_finitely_generated(&[-1, 1]));
    assert!(oracle_finitely_generated(&[1]));
    assert!(!oracle_finitely_generated(&[-1, 2]));
    assert!(!oracle_finitely_generated(&[-2, 1]));
    assert!(!oracle_finitely_generated(&[3]));
    assert!(!oracle_finitely_generated(&[2, 2]));
    assert!(!oracle_finitely_generated(&[0]));
}

#[test]
fn fixture_verdicts() {
    let cases: [(&[i64], bool); 6] = [
        (&[-1, 1], true),
        (&[1, -3, 1], true),
        (&[1, -1, 1], true),
        (&[-1, 2], false),
        (&[-2, 1], false),
        (&[3, -1, 3], false),
    ];
    for (f, expected) in cases {
        let v = finitely_generated_over_z(&module(f)).unwrap();
        assert_eq!(v.finitely_generated, expected, "{f:?}");
        assert_eq!(oracle_finitely_generated(f), expected, "{f:?}");
        assert_eq!(v.witness.is_none(), expected);
    }
}

fn extra_primes(skip: &[u64], count: usize) -> Vec<u64> {
    (2u64..)
        .filter(|&p| is_prime_u64(p) && !skip.contains(&p))
        .take(count)
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn principal_modules_match_oracle(f in prop::collection::vec(-5i64..=5, 1..=5)) {
        let m = module(&f);
        let verdict = finitely_generated_over_z(&m).unwrap();
        prop_assert_eq!(verdict.finitely_generated, oracle_finitely_generated(&f));

        // Classical form: the trimmed f is ±(monic) with constant term ±1.
        let t = trim(&f);
        let classical = !t.is_empty() && t[0].abs() == 1 && t[t.len() - 1].abs() == 1;
        prop_assert_eq!(verdict.finitely_generated, classical);

        if verdict.finitely_generated {
            let rel = relevant_primes(&m).unwrap();
            for p in extra_primes(&rel, 10) {
                prop_assert!(property1_check(&m, PrimeIdeal::Prime(p)).unwrap().holds());
            }
        }
    }
}
