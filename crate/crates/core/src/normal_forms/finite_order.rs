use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::char_poly;
use crate::matrix::{add, identity, is_identity, is_zero, mul, pow, scale, Matrix};
use crate::rings::{cyclotomic, euler_phi, Integers, Poly};
use crate::{Error, Result};

/// Cyclotomic indices that can occur in dimension `n`: every `m` with
/// `φ(m) <= n`. Since `φ(m) >= sqrt(m/2)`, searching `m <= 2n^2` suffices.
fn cyclotomic_candidates(n: usize) -> Vec<u64> {
    let bound = (2 * n * n).max(2) as u64;
    (1..=bound).filter(|&m| euler_phi(m) <= n as u64).collect()
}

/// `p(A)` by Horner's rule.
pub(crate) fn eval_at_matrix(p: &Poly<Integers>, a: &Matrix<BigInt>) -> Matrix<BigInt> {
    let z = Integers;
    let n = a.rows();
    p.coeffs().iter().rev().fold(crate::matrix::zeros(&z, n, n), |acc, c| {
        add(&z, &mul(&z, &acc, a), &scale(&z, &identity(&z, n), c))
    })
}

/// Exact multiplicative order of an integer matrix with `det = ±1`, or
/// `None` when the order is infinite.
///
/// The characteristic polynomial must split into cyclotomic factors and the
/// product of the distinct factors must annihilate `A` (semisimplicity);
/// the candidate order is the lcm of their indices, then confirmed by
/// powering: `A^m = I` and `A^(m/q) != I` for every prime `q | m`.
pub fn finite_order(a: &Matrix<BigInt>) -> Result<Option<u64>> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let z = Integers;
    let n = a.rows();
    let chi = char_poly(&z, a)?;
    let det = if n % 2 == 1 { -chi.coeff(0) } else { chi.coeff(0) };
    if !det.abs().is_one() {
        return Err(Error::NotInvertible(format!("integer matrix has determinant {det}")));
    }
    let mut rest = chi;
    let mut indices = Vec::new();
    for m in cyclotomic_candidates(n) {
        let phi = cyclotomic(m)?;
        let mut hit = false;
        while let Some(q) = rest.exact_div_z(&phi) {
            rest = q;
            hit = true;
        }
        if hit {
            indices.push(m);
        }
        if rest.degree() == Some(0) {
            break;
        }
    }
    if rest != Poly::one(Integers) {
        return Ok(None);
    }
    let radical = indices
        .iter()
        .try_fold(Poly::one(Integers), |acc, &m| cyclotomic(m).map(|c| acc.mul(&c)))?;
    if !is_zero(&z, &eval_at_matrix(&radical, a)) {
        // Unipotent part present: eigenvalues are roots of unity but A is not
        // semisimple, so no power is the identity.
        return Ok(None);
    }
    let order = indices.iter().fold(1u64, |l, &m| l.lcm(&m));
    if !is_identity(&z, &pow(&z, a, order)) {
        return Err(Error::Internal(format!(
            "cyclotomic analysis predicted order {order} but A^{order} != I"
        )));
    }
    for q in prime_factors(order) {
        if is_identity(&z, &pow(&z, a, order / q)) {
            return Err(Error::Internal(format!(
                "order {order} is not minimal: A^{} = I",
                order / q
            )));
        }
    }
    Ok(Some(order))
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
