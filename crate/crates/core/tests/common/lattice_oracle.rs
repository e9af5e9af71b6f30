//! Brute-force lattice oracle for finite generation of principal modules
//! `Z[t,t^-1]/(f)`. It never looks at residue fields.
//!
//! Two window models are used, for `N = 1..12`:
//! * the subgroup of `Q[t]/(f) = Q^d` generated by `t^j` for `|j| <= N`
//!   (covolume after scaling to integers), which grows without bound when an
//!   eigenvalue of `t` or `t^-1` is not integral;
//! * the abelian group `Z^{2N+1} / (shifts of f inside the window)`, whose
//!   free rank and torsion order grow when `f` is zero or has content.
//!
//! The module is declared finitely generated when all three quantities are
//! constant over the last three windows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Integer elimination to diagonal form; returns the rank and the product
/// of the nonzero diagonal entries (the index of the row lattice in its
/// saturation, or its covolume when it has full rank).
fn diagonalize(mut m: Vec<Vec<BigInt>>) -> (usize, BigInt) {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut prod = BigInt::one();
    let mut rank = 0;
    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for (i, row) in m.iter().enumerate().skip(t) {
                for (j, x) in row.iter().enumerate().skip(t) {
                    if !x.is_zero()
                        && best.is_none_or(|(bi, bj)| x.abs() < m[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return (rank, prod);
            };
            m.swap(t, bi);
            for row in m.iter_mut() {
                row.swap(t, bj);
            }
            let p = m[t][t].clone();
            let mut done = true;
            let (head, tail) = m.split_at_mut(t + 1);
            let pivot_row = &head[t];
            for row in tail.iter_mut() {
                let q = row[t].div_floor(&p);
                if !q.is_zero() {
                    for (x, y) in row[t..].iter_mut().zip(&pivot_row[t..]) {
                        *x -= &q * y;
                    }
                }
                done &= row[t].is_zero();
            }
            for j in t + 1..cols {
                let q = m[t][j].div_floor(&p);
                if !q.is_zero() {
                    for row in m.iter_mut().skip(t) {
                        let d = &q * &row[t];
                        row[j] -= d;
                    }
                }
                done &= m[t][j].is_zero();
            }
            if done {
                break;
            }
        }
        prod *= m[t][t].abs();
        rank += 1;
    }
    (rank, prod)
}

/// `Z^{2N+1} / span{t^i f : the support of t^i f lies in [-N, N]}`:
/// returns (free rank, torsion order).
fn window_quotient(f: &[i64], n: i64) -> (usize, BigInt) {
    let width = (2 * n + 1) as usize;
    let span = f.len();
    let mut rels = Vec::new();
    if f.iter().any(|&c| c != 0) {
        let mut i = 0;
        while i + span <= width {
            let mut row = vec![BigInt::zero(); width];
            for (k, &c) in f.iter().enumerate() {
                row[i + k] = BigInt::from(c);
            }
            rels.push(row);
            i += 1;
        }
    }
    if rels.is_empty() {
        return (width, BigInt::one());
    }
    let (rank, tors) = diagonalize(rels);
    (width - rank, tors)
}

/// Coordinates of `t^j` in `Q[t]/(f)` for `-n <= j <= n`, basis `1..t^{d-1}`.
fn localization_vectors(f: &[BigRational], n: i64) -> Vec<Vec<BigRational>> {
    let d = f.len() - 1;
    let lead = &f[d];
    let c0 = &f[0];
    let times_t = |v: &[BigRational]| -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); d];
        let top = v[d - 1].clone();
        for i in (1..d).rev() {
            out[i] = v[i - 1].clone();
        }
        for (i, o) in out.iter_mut().enumerate() {
            *o -= &top * &f[i] / lead;
        }
        out
    };
    let times_tinv = |v: &[BigRational]| -> Vec<BigRational> {
        // t^-1 = -(c_1 + c_2 t + ... + c_d t^{d-1}) / c_0
        let mut out = vec![BigRational::zero(); d];
        out[..d - 1].clone_from_slice(&v[1..]);
        for (i, o) in out.iter_mut().enumerate() {
            *o -= &v[0] * &f[i + 1] / c0;
        }
        out
    };
    let mut e0 = vec![BigRational::zero(); d];
    e0[0] = BigRational::one();
    let mut out = vec![e0.clone()];
    let (mut up, mut down) = (e0.clone(), e0);
    for _ in 0..n {
        up = times_t(&up);
        down = times_tinv(&down);
        out.push(up.clone());
        out.push(down.clone());
    }
    out
}

/// Covolume of the lattice spanned by `t^j`, `|j| <= n`, for each `n`, all
/// scaled by one common denominator so the values are comparable.
fn localization_covolumes(f: &[i64], max_n: i64) -> Vec<BigInt> {
    let fq: Vec<BigRational> = f.iter().map(|&c| BigRational::from_integer(c.into())).collect();
    let all = localization_vectors(&fq, max_n);
    let den = all
        .iter()
        .flatten()
        .fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    (1..=max_n)
        .map(|n| {
            let rows: Vec<Vec<BigInt>> = all[..(2 * n + 1) as usize]
                .iter()
                .map(|v| v.iter().map(|x| (x * &den).to_integer()).collect())
                .collect();
            diagonalize(rows).1
        })
        .collect()
}

pub fn trim(f: &[i64]) -> Vec<i64> {
    let lo = f.iter().position(|&c| c != 0);
    let hi = f.iter().rposition(|&c| c != 0);
    match (lo, hi) {
        (Some(lo), Some(hi)) => f[lo..=hi].to_vec(),
        _ => Vec::new(),
    }
}

pub fn oracle_finitely_generated(f: &[i64]) -> bool {
    let f = trim(f);
    const N: i64 = 12;
    let windows: Vec<_> = (N - 2..=N).map(|n| window_quotient(&f, n)).collect();
    if windows.windows(2).any(|w| w[0] != w[1]) {
        return false;
    }
    if f.len() <= 1 {
        return true;
    }
    let cov = localization_covolumes(&f, N);
    cov[cov.len() - 3..].windows(2).all(|w| w[0] == w[1])
}
