//! Gaussian elimination over a field.

use crate::matrix::{identity, Matrix};
use crate::rings::Field;

/// Reduced row echelon form and its pivot columns.
pub fn rref<F: Field>(field: &F, a: &Matrix<F::Elem>) -> (Matrix<F::Elem>, Vec<usize>) {
    let mut m = a.clone();
    let (rows, cols) = m.shape();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !field.is_zero(&m[(i, c)])) else {
            continue;
        };
        m.swap_rows(r, p);
        let inv = field.inv(&m[(r, c)]);
        for k in c..cols {
            m[(r, k)] = field.mul(&m[(r, k)], &inv);
        }
        for i in 0..rows {
            if i == r || field.is_zero(&m[(i, c)]) {
                continue;
            }
            let f = m[(i, c)].clone();
            for k in c..cols {
                if field.is_zero(&m[(r, k)]) {
                    continue;
                }
                let x = field.mul(&f, &m[(r, k)]);
                m[(i, k)] = field.sub(&m[(i, k)], &x);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

/// Rank by forward elimination only.
pub fn rank<F: Field>(field: &F, a: &Matrix<F::Elem>) -> usize {
    let mut m = a.clone();
    let (rows, cols) = m.shape();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !field.is_zero(&m[(i, c)])) else {
            continue;
        };
        m.swap_rows(r, p);
        let inv = field.inv(&m[(r, c)]);
        for i in r + 1..rows {
            if field.is_zero(&m[(i, c)]) {
                continue;
            }
            let f = field.mul(&m[(i, c)], &inv);
            for k in c..cols {
                if field.is_zero(&m[(r, k)]) {
                    continue;
                }
                let x = field.mul(&f, &m[(r, k)]);
                m[(i, k)] = field.sub(&m[(i, k)], &x);
            }
        }
        r += 1;
    }
    r
}

/// Basis of the right null space, as the columns of the result.
pub fn kernel<F: Field>(field: &F, a: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let (r, pivots) = rref(field, a);
    let n = a.cols();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    Matrix::from_fn(n, free.len(), |row, k| {
        let fc = free[k];
        if row == fc {
            field.one()
        } else if let Some(pi) = pivots.iter().position(|&p| p == row) {
            field.neg(&r[(pi, fc)])
        } else {
            field.zero()
        }
    })
}

/// Solves `a x = b` column by column; `None` if some column is outside the
/// column space.
pub fn solve<F: Field>(
    field: &F,
    a: &Matrix<F::Elem>,
    b: &Matrix<F::Elem>,
) -> Option<Matrix<F::Elem>> {
    let aug = a.hcat(b);
    let (r, pivots) = rref(field, &aug);
    if pivots.iter().any(|&p| p >= a.cols()) {
        return None;
    }
    Some(Matrix::from_fn(a.cols(), b.cols(), |row, k| {
        match pivots.iter().position(|&p| p == row) {
            Some(pi) => r[(pi, a.cols() + k)].clone(),
            None => field.zero(),
        }
    }))
}

pub fn inverse<F: Field>(field: &F, a: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    if !a.is_square() {
        return None;
    }
    let x = solve(field, a, &identity(field, a.rows()))?;
    (rank(field, a) == a.rows()).then_some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{from_i64_rows, is_zero, mul};
    use crate::rings::{PrimeField, Rationals};

    #[test]
    fn kernel_and_rank() {
        let q = Rationals;
        let a = from_i64_rows(&q, &[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&q, &a), 2);
        let k = kernel(&q, &a);
        assert_eq!(k.cols(), 1);
        assert!(is_zero(&q, &mul(&q, &a, &k)));
    }

    #[test]
    fn inverse_over_fp() {
        let f = PrimeField::new(7).unwrap();
        let a = from_i64_rows(&f, &[&[1, 2], &[3, 4]]);
        let inv = inverse(&f, &a).unwrap();
        assert_eq!(mul(&f, &a, &inv), identity(&f, 2));
        let sing = from_i64_rows(&f, &[&[1, 2], &[2, 4]]);
        assert!(inverse(&f, &sing).is_none());
    }
}
