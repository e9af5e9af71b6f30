//! Twisted chain complexes over `Z[t, t^-1]` and the homology of the
//! associated infinite and finite cyclic covers with field coefficients.
//!
//! Conventions: `boundaries[j - 1]` is `∂_j : C_j -> C_(j-1)`, a matrix with
//! `ranks[j - 1]` rows and `ranks[j]` columns acting on column vectors.

use num_bigint::BigInt;

use crate::matrix::{self, identity, Matrix};
use crate::normal_forms::linalg::{inverse, rank, rref, solve};
use crate::normal_forms::{laurent_cokernel, smith_normal_form, LaurentCokernel};
use crate::rings::{Field, Integers, LaurentPoly, LaurentRing, PolyRing, Rationals};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct TwistedChainComplex {
    ranks: Vec<usize>,
    boundaries: Vec<Matrix<LaurentPoly<Integers>>>,
}

impl TwistedChainComplex {
    /// Validates shapes and `∂_(j-1) ∂_j = 0`.
    pub fn new(ranks: Vec<usize>, boundaries: Vec<Matrix<LaurentPoly<Integers>>>) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::InvalidComplex("no chain groups".into()));
        }
        if boundaries.len() + 1 != ranks.len() {
            return Err(Error::InvalidComplex(format!(
                "{} chain groups need {} boundary maps, got {}",
                ranks.len(),
                ranks.len() - 1,
                boundaries.len()
            )));
        }
        for (i, d) in boundaries.iter().enumerate() {
            let j = i + 1;
            if d.shape() != (ranks[j - 1], ranks[j]) {
                return Err(Error::ShapeMismatch(format!(
                    "boundary of degree {j} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    ranks[j - 1],
                    ranks[j]
                )));
            }
        }
        let ring = LaurentRing::new(Integers);
        for j in 2..ranks.len() {
            let dd = matrix::mul(&ring, &boundaries[j - 2], &boundaries[j - 1]);
            if !matrix::is_zero(&ring, &dd) {
                return Err(Error::InvalidComplex(format!(
                    "boundary of degree {} composed with degree {j} is nonzero",
                    j - 1
                )));
            }
        }
        Ok(TwistedChainComplex { ranks, boundaries })
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn boundaries(&self) -> &[Matrix<LaurentPoly<Integers>>] {
        &self.boundaries
    }

    pub fn top_degree(&self) -> usize {
        self.ranks.len() - 1
    }

    /// `∂_j` (with `∂_0` and `∂_(top+1)` the zero maps).
    pub fn boundary(&self, j: usize) -> Matrix<LaurentPoly<Integers>> {
        let zero = LaurentPoly::zero(Integers);
        if j == 0 {
            Matrix::filled(0, self.ranks[0], zero)
        } else if j > self.top_degree() {
            Matrix::filled(self.ranks[self.top_degree()], 0, zero)
        } else {
            self.boundaries[j - 1].clone()
        }
    }

    fn boundary_over<F: Field>(&self, field: &F, j: usize) -> Matrix<LaurentPoly<F>> {
        self.boundary(j).map(|x| x.reduce(field))
    }
}

/// Algebraic mapping torus of a chain endomorphism `f` of a free
/// `Z`-complex `F`: the cone of `t - f` on `F ⊗ Z[t, t^-1]`, so that `t`
/// acts on the homology of the infinite cyclic cover as `f_*`.
///
/// `C_j = F_j ⊕ F_(j-1)` and `∂_j = [[∂_j, t - f_(j-1)], [0, -∂_(j-1)]]`.
pub fn mapping_torus_complex(
    ranks: &[usize],
    boundaries_f: &[Matrix<BigInt>],
    f: &[Matrix<BigInt>],
) -> Result<TwistedChainComplex> {
    if ranks.is_empty() {
        return Err(Error::InvalidComplex("no chain groups".into()));
    }
    if boundaries_f.len() + 1 != ranks.len() || f.len() != ranks.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} chain groups need {} boundaries and {} maps, got {} and {}",
            ranks.len(),
            ranks.len() - 1,
            ranks.len(),
            boundaries_f.len(),
            f.len()
        )));
    }
    for (j, fj) in f.iter().enumerate() {
        if fj.shape() != (ranks[j], ranks[j]) {
            return Err(Error::ShapeMismatch(format!(
                "map in degree {j} is {}x{}, expected {}x{}",
                fj.rows(),
                fj.cols(),
                ranks[j],
                ranks[j]
            )));
        }
    }
    for (i, d) in boundaries_f.iter().enumerate() {
        let j = i + 1;
        if d.shape() != (ranks[j - 1], ranks[j]) {
            return Err(Error::ShapeMismatch(format!(
                "boundary of degree {j} is {}x{}, expected {}x{}",
                d.rows(),
                d.cols(),
                ranks[j - 1],
                ranks[j]
            )));
        }
        let z = Integers;
        if matrix::mul(&z, &f[j - 1], d) != matrix::mul(&z, d, &f[j]) {
            return Err(Error::Precondition(format!(
                "the map does not commute with the boundary of degree {j}"
            )));
        }
    }
    for j in 2..ranks.len() {
        let dd = matrix::mul(&Integers, &boundaries_f[j - 2], &boundaries_f[j - 1]);
        if !matrix::is_zero(&Integers, &dd) {
            return Err(Error::InvalidComplex(format!(
                "boundary of degree {} composed with degree {j} is nonzero",
                j - 1
            )));
        }
    }

    let n = ranks.len() - 1;
    let rank_f = |j: isize| -> usize {
        if j < 0 || j as usize > n {
            0
        } else {
            ranks[j as usize]
        }
    };
    let cone_ranks: Vec<usize> = (0..=n + 1).map(|j| rank_f(j as isize) + rank_f(j as isize - 1)).collect();
    let lz = |c: &BigInt| LaurentPoly::constant(Integers, c.clone());
    let tf = |j: usize, r: usize, c: usize| -> LaurentPoly<Integers> {
        // (t - f_j)[r, c]
        let mut x = LaurentPoly::constant(Integers, -f[j][(r, c)].clone());
        if r == c {
            x = x.add(&LaurentPoly::monomial(Integers, BigInt::from(1), 1));
        }
        x
    };
    let mut boundaries = Vec::with_capacity(n + 1);
    for j in 1..=n + 1 {
        let (a, b) = (rank_f(j as isize), rank_f(j as isize - 1));
        let (c, d) = (rank_f(j as isize - 1), rank_f(j as isize - 2));
        // rows: F_(j-1) ⊕ F_(j-2); columns: F_j ⊕ F_(j-1)
        let m = Matrix::from_fn(c + d, a + b, |r, col| {
            match (r < c, col < a) {
                (true, true) => lz(&boundaries_f[j - 1][(r, col)]),
                (true, false) => tf(j - 1, r, col - a),
                (false, true) => LaurentPoly::zero(Integers),
                (false, false) => lz(&-boundaries_f[j - 2][(r - c, col - a)].clone()),
            }
        });
        boundaries.push(m);
    }
    TwistedChainComplex::new(cone_ranks, boundaries)
}

/// `H_j(X_∞; κ)` for every degree, as cokernels over `κ[t, t^-1]`.
///
/// The kernel of `∂_j` is read off a Smith form of `∂_j S` over `κ[t]`,
/// where `S = diag(t^s_c)` clears negative powers column by column; the
/// image of `∂_(j+1)` is then expressed in that kernel basis.
pub fn infinite_cover_homology_field<F: Field>(
    x: &TwistedChainComplex,
    field: &F,
) -> Result<Vec<LaurentCokernel<F>>> {
    (0..=x.top_degree())
        .map(|j| infinite_cover_homology_degree(x, field, j))
        .collect()
}

fn infinite_cover_homology_degree<F: Field>(
    x: &TwistedChainComplex,
    field: &F,
    j: usize,
) -> Result<LaurentCokernel<F>> {
    let ring = LaurentRing::new(field.clone());
    let d_out = x.boundary_over(field, j);
    let d_in = x.boundary_over(field, j + 1);
    let shifts: Vec<i64> = (0..d_out.cols())
        .map(|c| {
            d_out
                .column(c)
                .iter()
                .filter(|e| !e.is_zero())
                .map(|e| e.valuation())
                .min()
                .map_or(0, |v| -v)
        })
        .collect();
    let cleared = Matrix::from_fn(d_out.rows(), d_out.cols(), |r, c| {
        d_out[(r, c)].to_poly_shifted(shifts[c])
    });
    let snf = smith_normal_form(&PolyRing::new(field.clone()), &cleared)?;
    let r = snf.rank;
    // V^-1 S^-1 ∂_(j+1): S^-1 scales row c by t^-s_c.
    let v_inv = snf.v_inv.map(|p| LaurentPoly::from_poly(p.clone()));
    let s_inv_d = Matrix::from_fn(d_in.rows(), d_in.cols(), |row, c| d_in[(row, c)].shift(-shifts[row]));
    let coords = matrix::mul(&ring, &v_inv, &s_inv_d);
    if (0..r).any(|row| coords.row(row).iter().any(|e| !e.is_zero())) {
        return Err(Error::Internal(format!(
            "image of the boundary of degree {} is not inside the kernel in degree {j}",
            j + 1
        )));
    }
    let presentation = coords.block(r, coords.rows(), 0, coords.cols());
    laurent_cokernel(field, &presentation)
}

/// Representation of `H_j(X_q; κ)`: its dimension and the matrix of the
/// deck transformation `t` in some basis.
#[derive(Clone, Debug, PartialEq)]
pub struct CoverHomology<T> {
    pub dim: usize,
    pub t_action: Matrix<T>,
}

/// Homology of a complex of finite-dimensional vector spaces together with
/// the map induced by a chain endomorphism.
///
/// `d_out` is `∂_j`, `d_in` is `∂_(j+1)` and `f` acts on `C_j`. A basis of
/// `H_j` is chosen among kernel vectors not in the span of the boundaries
/// (pivot columns of `[B | Z]`); `f` is written in it by solving against
/// `[B | H]`.
pub fn homology_with_chain_map<F: Field>(
    field: &F,
    d_out: &Matrix<F::Elem>,
    d_in: &Matrix<F::Elem>,
    f: &Matrix<F::Elem>,
) -> Result<CoverHomology<F::Elem>> {
    let n = f.rows();
    let z = crate::normal_forms::linalg::kernel(field, d_out);
    let (_, b_pivots) = rref(field, d_in);
    let b = d_in.select_cols(&b_pivots);
    let (_, pivots) = rref(field, &b.hcat(&z));
    let reps: Vec<usize> = pivots
        .iter()
        .filter(|&&p| p >= b.cols())
        .map(|&p| p - b.cols())
        .collect();
    let h = z.select_cols(&reps);
    let dim = h.cols();
    let fh = matrix::mul(field, f, &h);
    let basis = b.hcat(&h);
    let coeffs = solve(field, &basis, &fh).ok_or_else(|| {
        Error::Precondition("map does not send cycles to cycles".into())
    })?;
    debug_assert_eq!(basis.rows(), n);
    let t_action = coeffs.block(b.cols(), b.cols() + dim, 0, dim);
    Ok(CoverHomology { dim, t_action })
}

/// Image of a Laurent matrix under `κ[t, t^-1] -> κ[t]/(t^q - 1) ⊂ κ^(q×q)`:
/// entry `(r, c)` becomes a `q×q` block, index `cell * q + power`.
fn expand_cyclic<F: Field>(field: &F, a: &Matrix<LaurentPoly<F>>, q: usize) -> Matrix<F::Elem> {
    let mut out = matrix::zeros(field, a.rows() * q, a.cols() * q);
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            for (e, coeff) in a[(r, c)].terms() {
                let s = e.rem_euclid(q as i64) as usize;
                // t^s sends basis element i to (i + s) mod q
                for i in 0..q {
                    let (row, col) = (r * q + (i + s) % q, c * q + i);
                    out[(row, col)] = field.add(&out[(row, col)], coeff);
                }
            }
        }
    }
    out
}

fn deck_transformation<F: Field>(field: &F, cells: usize, q: usize) -> Matrix<F::Elem> {
    Matrix::from_fn(cells * q, cells * q, |r, c| {
        if r / q == c / q && r % q == (c % q + 1) % q {
            field.one()
        } else {
            field.zero()
        }
    })
}

/// `H_j(X_q; κ)` for the `q`-fold cyclic cover by direct linear algebra.
pub fn cover_homology_field<F: Field>(
    x: &TwistedChainComplex,
    field: &F,
    q: usize,
) -> Result<Vec<CoverHomology<F::Elem>>> {
    if q < 1 {
        return Err(Error::InvalidInput("cover degree q must be at least 1".into()));
    }
    let mats: Vec<_> = (0..=x.top_degree() + 1)
        .map(|j| expand_cyclic(field, &x.boundary_over(field, j), q))
        .collect();
    (0..=x.top_degree())
        .map(|j| {
            let t = deck_transformation(field, x.ranks[j], q);
            homology_with_chain_map(field, &mats[j], &mats[j + 1], &t)
        })
        .collect()
}

/// Dimensions only; ranks without a choice of basis.
pub fn cover_dimensions<F: Field>(x: &TwistedChainComplex, field: &F, q: usize) -> Result<Vec<usize>> {
    if q < 1 {
        return Err(Error::InvalidInput("cover degree q must be at least 1".into()));
    }
    let ranks: Vec<usize> = (0..=x.top_degree() + 1)
        .map(|j| rank(field, &expand_cyclic(field, &x.boundary_over(field, j), q)))
        .collect();
    Ok((0..=x.top_degree())
        .map(|j| x.ranks[j] * q - ranks[j] - ranks[j + 1])
        .collect())
}

fn torsion_actions<F: Field>(x: &TwistedChainComplex, field: &F) -> Result<Vec<Matrix<F::Elem>>> {
    infinite_cover_homology_field(x, field)?
        .into_iter()
        .enumerate()
        .map(|(degree, h)| {
            if h.free_rank > 0 {
                Err(Error::FreePart { degree, free_rank: h.free_rank })
            } else {
                Ok(h.t_action(field))
            }
        })
        .collect()
}

/// `dim H_j(X_q) = dim coker(t^q - 1 | H_j(X_∞)) + dim ker(t^q - 1 | H_(j-1)(X_∞))`.
pub fn wang_dimensions<F: Field>(x: &TwistedChainComplex, field: &F, q: usize) -> Result<Vec<usize>> {
    if q < 1 {
        return Err(Error::InvalidInput("cover degree q must be at least 1".into()));
    }
    let actions = torsion_actions(x, field)?;
    let nullity: Vec<usize> = actions
        .iter()
        .map(|t| {
            let m = matrix::sub(field, &matrix::pow(field, t, q as u64), &identity(field, t.rows()));
            t.rows() - rank(field, &m)
        })
        .collect();
    // coker and ker of a square map have the same dimension
    Ok((0..actions.len())
        .map(|j| nullity[j] + if j > 0 { nullity[j - 1] } else { 0 })
        .collect())
}

/// Lifted self-equivalence data: `hbar[j]` acts on `H_j(X_∞; Q)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SelfCoverWitness {
    pub k: u64,
    pub sign: i8,
    pub hbar: Vec<Matrix<num_rational::BigRational>>,
}

/// Checks `hbar_j T_j = T_j^(sign k) hbar_j` in every degree, with `T_j`
/// the action of `t` on `H_j(X_∞; Q)` in the companion basis.
pub fn verify_self_cover_relation(x: &TwistedChainComplex, w: &SelfCoverWitness) -> Result<Vec<bool>> {
    if w.k < 2 {
        return Err(Error::InvalidInput("k must be greater than 1".into()));
    }
    if w.sign != 1 && w.sign != -1 {
        return Err(Error::InvalidInput("sign must be +1 or -1".into()));
    }
    let q = Rationals;
    let actions = torsion_actions(x, &q)?;
    if w.hbar.len() != actions.len() {
        return Err(Error::ShapeMismatch(format!(
            "witness has {} matrices for {} degrees",
            w.hbar.len(),
            actions.len()
        )));
    }
    let mut out = Vec::with_capacity(actions.len());
    for (j, (t, h)) in actions.iter().zip(&w.hbar).enumerate() {
        if h.shape() != t.shape() {
            return Err(Error::ShapeMismatch(format!(
                "hbar in degree {j} is {}x{} but H_{j} has dimension {}",
                h.rows(),
                h.cols(),
                t.rows()
            )));
        }
        if inverse(&q, h).is_none() {
            return Err(Error::NotInvertible(format!("hbar in degree {j}")));
        }
        let base = if w.sign > 0 {
            t.clone()
        } else {
            inverse(&q, t).ok_or_else(|| {
                Error::Internal(format!("t-action in degree {j} is singular on a torsion module"))
            })?
        };
        let tk = matrix::pow(&q, &base, w.k);
        out.push(matrix::mul(&q, h, t) == matrix::mul(&q, &tk, h));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionBoundRow {
    pub q: usize,
    pub dims: Vec<usize>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionBoundReport {
    pub holds: bool,
    pub rows: Vec<DimensionBoundRow>,
}

/// `dim H_j(X_q; κ) <= ranks_j` for every listed `q` and every degree.
pub fn dimension_bound_check<F: Field>(
    x: &TwistedChainComplex,
    field: &F,
    iterates: &[usize],
) -> Result<DimensionBoundReport> {
    let mut rows = Vec::with_capacity(iterates.len());
    for &q in iterates {
        let dims = cover_dimensions(x, field, q)?;
        let holds = dims.iter().zip(&x.ranks).all(|(d, r)| d <= r);
        rows.push(DimensionBoundRow { q, dims, holds });
    }
    Ok(DimensionBoundReport {
        holds: rows.iter().all(|r| r.holds),
        rows,
    })
}
