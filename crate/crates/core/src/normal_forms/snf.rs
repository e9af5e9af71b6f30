use crate::matrix::{identity, Matrix};
use crate::rings::EuclideanDomain;
use crate::{Error, Result};

/// `u * a * v = d` with `d` diagonal, `d[0] | d[1] | ... | d[rank-1]` and
/// zeros after. The inverses of `u` and `v` are tracked alongside so callers
/// can change bases in either direction without inverting anything.
#[derive(Clone, Debug, PartialEq)]
pub struct SnfResult<T> {
    pub u: Matrix<T>,
    pub u_inv: Matrix<T>,
    pub d: Matrix<T>,
    pub v: Matrix<T>,
    pub v_inv: Matrix<T>,
    pub rank: usize,
}

impl<T: Clone> SnfResult<T> {
    /// The nonzero invariant factors, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<T> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }
}

struct Work<'a, R: EuclideanDomain> {
    ring: &'a R,
    a: Matrix<R::Elem>,
    u: Matrix<R::Elem>,
    u_inv: Matrix<R::Elem>,
    v: Matrix<R::Elem>,
    v_inv: Matrix<R::Elem>,
}

impl<R: EuclideanDomain> Work<'_, R> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// row_dst += c * row_src
    fn add_row(&mut self, dst: usize, src: usize, c: &R::Elem) {
        let r = self.ring;
        for m in [&mut self.a, &mut self.u] {
            for k in 0..m.cols() {
                let x = r.mul(c, &m[(src, k)]);
                if !r.is_zero(&x) {
                    m[(dst, k)] = r.add(&m[(dst, k)], &x);
                }
            }
        }
        // u_inv <- u_inv * (I - c E_{dst,src}): col_src -= c * col_dst
        for k in 0..self.u_inv.rows() {
            let x = r.mul(c, &self.u_inv[(k, dst)]);
            if !r.is_zero(&x) {
                self.u_inv[(k, src)] = r.sub(&self.u_inv[(k, src)], &x);
            }
        }
    }

    /// col_dst += c * col_src
    fn add_col(&mut self, dst: usize, src: usize, c: &R::Elem) {
        let r = self.ring;
        for m in [&mut self.a, &mut self.v] {
            for k in 0..m.rows() {
                let x = r.mul(c, &m[(k, src)]);
                if !r.is_zero(&x) {
                    m[(k, dst)] = r.add(&m[(k, dst)], &x);
                }
            }
        }
        // v_inv <- (I - c E_{src,dst}) * v_inv: row_src -= c * row_dst
        for k in 0..self.v_inv.cols() {
            let x = r.mul(c, &self.v_inv[(dst, k)]);
            if !r.is_zero(&x) {
                self.v_inv[(src, k)] = r.sub(&self.v_inv[(src, k)], &x);
            }
        }
    }

    /// row_i *= unit (with its inverse supplied)
    fn scale_row(&mut self, i: usize, unit: &R::Elem, unit_inv: &R::Elem) {
        let r = self.ring;
        for m in [&mut self.a, &mut self.u] {
            for k in 0..m.cols() {
                m[(i, k)] = r.mul(unit, &m[(i, k)]);
            }
        }
        for k in 0..self.u_inv.rows() {
            self.u_inv[(k, i)] = r.mul(&self.u_inv[(k, i)], unit_inv);
        }
    }

    /// Nonzero entry of least Euclidean size in the trailing block, ties to
    /// the lowest (row, column).
    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), R::Size)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if self.ring.is_zero(x) {
                    continue;
                }
                let s = self.ring.size(x);
                if best.as_ref().is_none_or(|(_, bs)| s < *bs) {
                    best = Some(((i, j), s));
                }
            }
        }
        best.map(|(pos, _)| pos)
    }
}

/// Smith normal form over a Euclidean domain with deterministic pivoting.
///
/// Off-pivot entries in the pivot row and column are reduced modulo the
/// pivot at every step; whenever a remainder survives, the pivot search
/// restarts, so the pivot's size strictly decreases until it divides its
/// row, its column and the whole trailing block.
pub fn smith_normal_form<R: EuclideanDomain>(
    ring: &R,
    a: &Matrix<R::Elem>,
) -> Result<SnfResult<R::Elem>> {
    if let Some(x) = a.entries().find(|x| !ring.contains(x)) {
        return Err(Error::MixedRings {
            left: ring.name(),
            right: format!("entry {x}"),
        });
    }
    let (m, n) = a.shape();
    let mut w = Work {
        ring,
        a: a.clone(),
        u: identity(ring, m),
        u_inv: identity(ring, m),
        v: identity(ring, n),
        v_inv: identity(ring, n),
    };
    let mut rank = 0;
    for t in 0..m.min(n) {
        while let Some((pi, pj)) = w.find_pivot(t) {
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            let mut clean = true;
            for i in t + 1..m {
                if ring.is_zero(&w.a[(i, t)]) {
                    continue;
                }
                let (q, r) = ring.div_rem(&w.a[(i, t)], &w.a[(t, t)]);
                w.add_row(i, t, &ring.neg(&q));
                clean &= ring.is_zero(&r);
            }
            for j in t + 1..n {
                if ring.is_zero(&w.a[(t, j)]) {
                    continue;
                }
                let (q, r) = ring.div_rem(&w.a[(t, j)], &w.a[(t, t)]);
                w.add_col(j, t, &ring.neg(&q));
                clean &= ring.is_zero(&r);
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !ring.divides(&w.a[(t, t)], &w.a[(i, j)]));
            match offender {
                Some((i, _)) => {
                    let one = ring.one();
                    w.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if ring.is_zero(&w.a[(t, t)]) {
            break;
        }
        let (unit, unit_inv) = ring.normalizing_unit(&w.a[(t, t)]);
        w.scale_row(t, &unit, &unit_inv);
        rank = t + 1;
    }
    Ok(SnfResult {
        u: w.u,
        u_inv: w.u_inv,
        d: w.a,
        v: w.v,
        v_inv: w.v_inv,
        rank,
    })
}
