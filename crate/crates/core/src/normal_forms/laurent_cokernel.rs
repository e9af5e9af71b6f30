use super::{smith_normal_form, SnfResult};
use crate::matrix::{direct_sum, Matrix};
use crate::rings::{Field, LaurentPoly, Poly, PolyRing};
use crate::Result;

/// `coker(A) ≅ ⊕ κ[t,t^-1]/(f_i) ⊕ κ[t,t^-1]^free_rank` over a field κ.
/// Every `f_i` is monic of positive degree with nonzero constant term.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentCokernel<F: Field> {
    pub factors: Vec<Poly<F>>,
    pub free_rank: usize,
}

impl<F: Field> LaurentCokernel<F> {
    /// κ-dimension, `None` when there is a free summand.
    pub fn dimension(&self) -> Option<usize> {
        (self.free_rank == 0).then(|| self.factors.iter().map(|f| f.degree().unwrap()).sum())
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.factors.is_empty()
    }

    /// Product of the invariant factors: the characteristic polynomial of
    /// the `t`-action when the cokernel is torsion.
    pub fn order(&self, field: &F) -> Poly<F> {
        self.factors
            .iter()
            .fold(Poly::one(field.clone()), |acc, f| acc.mul(f))
    }

    /// Matrix of `t` on the torsion part in the basis
    /// `{1, t, ..., t^(deg f_i - 1)}` of each summand, summands in order.
    pub fn t_action(&self, field: &F) -> Matrix<F::Elem> {
        let blocks: Vec<_> = self.factors.iter().map(|f| companion(field, f)).collect();
        direct_sum(field, &blocks)
    }
}

/// Companion matrix of a monic polynomial acting on column vectors:
/// `e_i -> e_(i+1)`, `e_(d-1) -> -Σ c_i e_i`.
pub fn companion<F: Field>(field: &F, f: &Poly<F>) -> Matrix<F::Elem> {
    let d = f.degree().expect("companion of zero polynomial");
    Matrix::from_fn(d, d, |r, c| {
        if c + 1 == d {
            field.neg(&f.coeff(r))
        } else if r == c + 1 {
            field.one()
        } else {
            field.zero()
        }
    })
}

/// Row-wise clearing of negative powers: row `i` is multiplied by
/// `t^(-min valuation in row i)`. Rows that are entirely zero are left
/// alone.
pub fn clear_rows<F: Field>(field: &F, a: &Matrix<LaurentPoly<F>>) -> (Matrix<Poly<F>>, Vec<i64>) {
    let shifts: Vec<i64> = (0..a.rows())
        .map(|r| {
            a.row(r)
                .iter()
                .filter(|x| !x.is_zero())
                .map(|x| x.valuation())
                .min()
                .map_or(0, |v| -v)
        })
        .collect();
    let cleared = Matrix::from_fn(a.rows(), a.cols(), |r, c| {
        let x = &a[(r, c)];
        if x.is_zero() {
            Poly::zero(field.clone())
        } else {
            x.to_poly_shifted(shifts[r])
        }
    });
    (cleared, shifts)
}

/// Strips the `t`-power (a unit) from an invariant factor; `None` if what is
/// left is a unit.
fn strip_unit<F: Field>(f: &Poly<F>) -> Option<Poly<F>> {
    let g = f.unshift(f.low_order()).monic();
    (g.degree() != Some(0)).then_some(g)
}

/// The cokernel together with the polynomial SNF it was read from.
pub fn laurent_cokernel_with_snf<F: Field>(
    field: &F,
    a: &Matrix<LaurentPoly<F>>,
) -> Result<(LaurentCokernel<F>, SnfResult<Poly<F>>)> {
    let (cleared, _) = clear_rows(field, a);
    let ring = PolyRing::new(field.clone());
    let snf = smith_normal_form(&ring, &cleared)?;
    let factors = snf
        .invariant_factors()
        .iter()
        .filter_map(|f| strip_unit(f))
        .collect();
    let cok = LaurentCokernel {
        factors,
        free_rank: a.rows() - snf.rank,
    };
    Ok((cok, snf))
}

/// Cokernel of a matrix over `κ[t, t^-1]` (generators are rows, relations
/// are columns).
pub fn laurent_cokernel<F: Field>(
    field: &F,
    a: &Matrix<LaurentPoly<F>>,
) -> Result<LaurentCokernel<F>> {
    laurent_cokernel_with_snf(field, a).map(|(c, _)| c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal_forms::linalg::rank;
    use crate::rings::{PrimeField, Rationals};

    fn lq(val: i64, c: &[i64]) -> LaurentPoly<Rationals> {
        LaurentPoly::from_i64s(Rationals, val, c)
    }

    #[test]
    fn principal_and_empty() {
        let a = Matrix::from_rows(vec![vec![lq(0, &[-1, 1])]], 1).unwrap();
        let c = laurent_cokernel(&Rationals, &a).unwrap();
        assert_eq!(c.factors, vec![Poly::from_i64s(Rationals, &[-1, 1])]);
        assert_eq!(c.free_rank, 0);

        let empty: Matrix<LaurentPoly<Rationals>> = Matrix::from_fn(1, 0, |_, _| unreachable!());
        let c = laurent_cokernel(&Rationals, &empty).unwrap();
        assert!(c.factors.is_empty());
        assert_eq!(c.free_rank, 1);
        assert_eq!(c.dimension(), None);
    }

    #[test]
    fn unit_t_is_discarded_over_f2() {
        let f2 = PrimeField::new(2).unwrap();
        let l = |c: &[i64]| LaurentPoly::from_i64s(f2, 0, c);
        let a = Matrix::from_rows(vec![vec![l(&[0, 1]), l(&[])], vec![l(&[]), l(&[1, 1])]], 2).unwrap();
        let c = laurent_cokernel(&f2, &a).unwrap();
        assert_eq!(c.factors, vec![Poly::from_i64s(f2, &[1, 1])]);
        assert_eq!(c.free_rank, 0);
        assert_eq!(c.dimension(), Some(1));
    }

    #[test]
    fn negative_powers_are_cleared() {
        // [t^-1 - 1, t^-2] on one generator: gcd(1 - t, 1) = 1, zero module.
        let a = Matrix::from_rows(vec![vec![lq(-1, &[1, 0]).sub(&lq(0, &[1])), lq(-2, &[1])]], 2).unwrap();
        let c = laurent_cokernel(&Rationals, &a).unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn dimension_matches_rank_over_fraction_field() {
        // diag(t-1, (t-1)(t+2)) plus a mixing column.
        let a = Matrix::from_rows(
            vec![
                vec![lq(0, &[-1, 1]), lq(0, &[]), lq(0, &[-1, 1])],
                vec![lq(0, &[]), lq(0, &[-2, 1, 1]), lq(0, &[-2, 1, 1])],
            ],
            3,
        )
        .unwrap();
        let c = laurent_cokernel(&Rationals, &a).unwrap();
        assert_eq!(c.dimension(), Some(3));
        // rank over Q(t) by evaluating at a generic point
        let at = a.map(|x| x.body().eval(&num_rational::BigRational::from_integer(7.into())));
        assert_eq!(rank(&Rationals, &at), 2 - c.free_rank);
    }

    #[test]
    fn companion_matches_convention() {
        let f = Poly::from_i64s(Rationals, &[1, -1, 1]);
        let t = companion(&Rationals, &f);
        assert_eq!(t, crate::matrix::from_i64_rows(&Rationals, &[&[0, -1], &[1, 1]]));
    }
}
