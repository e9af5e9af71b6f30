use crate::matrix::{mul, Matrix};
use crate::rings::{Poly, Ring};
use crate::{Error, Result};

/// `det(tI - A)` by Berkowitz's division-free algorithm, so it works over ℤ
/// and over fields of any characteristic alike.
pub fn char_poly<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> Result<Poly<R>> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let n = a.rows();
    if n == 0 {
        return Ok(Poly::one(ring.clone()));
    }
    // Coefficients, highest degree first.
    let mut vect = vec![ring.one(), ring.neg(&a[(0, 0)])];
    for r in 1..n {
        let row = Matrix::from_fn(1, r, |_, c| a[(r, c)].clone());
        let lead = a.block(0, r, 0, r);
        let mut col = Matrix::from_fn(r, 1, |i, _| a[(i, r)].clone());
        let mut q = Vec::with_capacity(r + 2);
        q.push(ring.one());
        q.push(ring.neg(&a[(r, r)]));
        for _ in 0..r {
            let s = mul(ring, &row, &col)[(0, 0)].clone();
            q.push(ring.neg(&s));
            col = mul(ring, &lead, &col);
        }
        let next = (0..r + 2)
            .map(|i| {
                (0..=i.min(r)).fold(ring.zero(), |acc, j| {
                    ring.add(&acc, &ring.mul(&q[i - j], &vect[j]))
                })
            })
            .collect::<Vec<_>>();
        vect = next;
    }
    vect.reverse();
    Ok(Poly::new(ring.clone(), vect))
}

/// Determinant via the characteristic polynomial: `det A = (-1)^n χ_A(0)`.
pub fn det<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> Result<R::Elem> {
    let chi = char_poly(ring, a)?;
    let c0 = chi.coeff(0);
    Ok(if a.rows() % 2 == 1 { ring.neg(&c0) } else { c0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{from_i64_rows, identity};
    use crate::rings::{Integers, PrimeField};
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn zpoly(c: &[i64]) -> Poly<Integers> {
        Poly::from_i64s(Integers, c)
    }

    #[test]
    fn two_by_two_examples() {
        let z = Integers;
        assert_eq!(char_poly(&z, &from_i64_rows(&z, &[&[0, -1], &[1, 1]])).unwrap(), zpoly(&[1, -1, 1]));
        assert_eq!(char_poly(&z, &from_i64_rows(&z, &[&[0, -1], &[1, 0]])).unwrap(), zpoly(&[1, 0, 1]));
    }

    #[test]
    fn identity_gives_power_of_t_minus_one() {
        let z = Integers;
        for n in 0..6u32 {
            assert_eq!(char_poly(&z, &identity(&z, n as usize)).unwrap(), zpoly(&[-1, 1]).pow(n));
        }
    }

    #[test]
    fn works_in_small_characteristic() {
        let f = PrimeField::new(2).unwrap();
        let a = from_i64_rows(&f, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        let chi = char_poly(&f, &a).unwrap();
        assert_eq!(chi.degree(), Some(3));
        // (t+1)^3 - 1 over F_2 = t^3 + t^2 + t
        assert_eq!(chi, Poly::from_i64s(f, &[0, 1, 1, 1]));
    }

    #[test]
    fn non_square_is_rejected() {
        let z = Integers;
        let a = from_i64_rows(&z, &[&[1, 2, 3]]);
        assert!(matches!(char_poly(&z, &a), Err(Error::NotSquare { .. })));
    }

    proptest! {
        #[test]
        fn conjugation_invariance(entries in prop::collection::vec(-5i64..=5, 16),
                                  ops in prop::collection::vec((0usize..4, 0usize..4, -3i64..=3), 1..6)) {
            let z = Integers;
            let a = Matrix::from_fn(4, 4, |r, c| BigInt::from(entries[r * 4 + c]));
            // P = product of elementary matrices, P^-1 built in reverse.
            let mut p = identity(&z, 4);
            let mut p_inv = identity(&z, 4);
            for (i, j, c) in ops {
                if i == j { continue; }
                let mut e = identity(&z, 4);
                e[(i, j)] = BigInt::from(c);
                let mut e_inv = identity(&z, 4);
                e_inv[(i, j)] = BigInt::from(-c);
                p = mul(&z, &p, &e);
                p_inv = mul(&z, &e_inv, &p_inv);
            }
            let b = mul(&z, &mul(&z, &p, &a), &p_inv);
            prop_assert_eq!(char_poly(&z, &b).unwrap(), char_poly(&z, &a).unwrap());
        }
    }
}
