//! Periodicity of integer matrices conjugate to a power of themselves, and
//! orders of automorphisms of finitely generated abelian groups.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::{self, identity, is_identity, Matrix};
use crate::normal_forms::{det, finite_order, linalg, smith_normal_form};
use crate::rings::{Integers, Rationals};
use crate::{Error, Result};

fn check_square(a: &Matrix<BigInt>, what: &str) -> Result<()> {
    if a.is_square() {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{what} is {}x{}, not square", a.rows(), a.cols())))
    }
}

fn check_unimodular(a: &Matrix<BigInt>, what: &str) -> Result<()> {
    let d = det(&Integers, a)?;
    if d.abs().is_one() {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{what} has determinant {d}, not ±1")))
    }
}

/// Inverse of a unimodular integer matrix.
pub fn unimodular_inverse(a: &Matrix<BigInt>) -> Result<Matrix<BigInt>> {
    let q = Rationals;
    let aq = a.map(|x| num_rational::BigRational::from_integer(x.clone()));
    let inv = linalg::inverse(&q, &aq).ok_or_else(|| Error::NotInvertible("singular matrix".into()))?;
    if inv.entries().any(|x| !x.is_integer()) {
        return Err(Error::NotInvertible("inverse is not integral".into()));
    }
    Ok(inv.map(|x| x.to_integer()))
}

/// Given `B A^k B^-1 = A^sign`, the least `m > 0` with `A^m = I` and
/// `gcd(m, k) = 1`.
///
/// Every `m` with `A^m = I` is a multiple of the order of `A`, and the
/// relation makes `A^k` conjugate to `A^(±1)`, so the order is prime to `k`
/// and is itself the answer.
pub fn solve_prop_matrix(a: &Matrix<BigInt>, b: &Matrix<BigInt>, k: u64, sign: i8) -> Result<u64> {
    if k < 2 {
        return Err(Error::Precondition(format!("k = {k} must be greater than 1")));
    }
    if sign != 1 && sign != -1 {
        return Err(Error::Precondition(format!("sign = {sign} must be +1 or -1")));
    }
    check_square(a, "A")?;
    check_square(b, "B")?;
    if a.shape() != b.shape() {
        return Err(Error::Precondition("A and B have different sizes".into()));
    }
    check_unimodular(a, "A")?;
    check_unimodular(b, "B")?;
    let z = Integers;
    let a_sign = if sign > 0 { a.clone() } else { unimodular_inverse(a)? };
    let lhs = matrix::mul(&z, b, &matrix::pow(&z, a, k));
    let rhs = matrix::mul(&z, &a_sign, b);
    if lhs != rhs {
        return Err(Error::Precondition(format!(
            "B A^{k} B^-1 = A^({sign}) does not hold"
        )));
    }
    let m = finite_order(a)?.ok_or_else(|| {
        Error::Internal("A has infinite order although A^k is conjugate to A^(±1)".into())
    })?;
    if m.gcd(&k) != 1 {
        return Err(Error::Internal(format!("order {m} of A is not prime to k = {k}")));
    }
    if !is_identity(&z, &matrix::pow(&z, a, m)) {
        return Err(Error::Internal(format!("A^{m} != I")));
    }
    Ok(m)
}

/// Automorphism of `Z^r ⊕ Z/d_1 ⊕ ... ⊕ Z/d_s` that preserves the torsion
/// subgroup, as the block matrix `[[free, 0], [mixing, torsion]]` acting on
/// column vectors. Row `i` of the torsion rows is taken modulo `d_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct FgAbelianAutomorphism {
    free: Matrix<BigInt>,
    torsion_orders: Vec<BigInt>,
    torsion: Matrix<BigInt>,
    mixing: Matrix<BigInt>,
}

impl FgAbelianAutomorphism {
    pub fn new(
        free: Matrix<BigInt>,
        torsion_orders: Vec<BigInt>,
        torsion: Matrix<BigInt>,
        mixing: Matrix<BigInt>,
    ) -> Result<Self> {
        check_square(&free, "free block")?;
        let (r, s) = (free.rows(), torsion_orders.len());
        if torsion.shape() != (s, s) {
            return Err(Error::ShapeMismatch(format!(
                "torsion block is {}x{}, expected {s}x{s}",
                torsion.rows(),
                torsion.cols()
            )));
        }
        if mixing.shape() != (s, r) {
            return Err(Error::ShapeMismatch(format!(
                "mixing block is {}x{}, expected {s}x{r}",
                mixing.rows(),
                mixing.cols()
            )));
        }
        if let Some(d) = torsion_orders.iter().find(|d| !d.is_positive()) {
            return Err(Error::InvalidInput(format!("torsion order {d} is not positive")));
        }
        if torsion_orders.windows(2).any(|w| !w[1].is_multiple_of(&w[0])) {
            return Err(Error::InvalidInput("torsion orders must form a divisibility chain".into()));
        }
        check_unimodular(&free, "free block")?;
        for i in 0..s {
            for j in 0..s {
                if !(&torsion[(i, j)] * &torsion_orders[j]).is_multiple_of(&torsion_orders[i]) {
                    return Err(Error::InvalidInput(format!(
                        "torsion entry ({i}, {j}) does not define a map Z/{} -> Z/{}",
                        torsion_orders[j], torsion_orders[i]
                    )));
                }
            }
        }
        let reduce_rows = |m: &Matrix<BigInt>| {
            Matrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)].mod_floor(&torsion_orders[i]))
        };
        let torsion = reduce_rows(&torsion);
        let mixing = reduce_rows(&mixing);
        // bijective on the finite torsion group iff T together with the
        // relations diag(d) spans Z^s
        let rel = torsion.hcat(&Matrix::from_fn(s, s, |i, j| {
            if i == j {
                torsion_orders[i].clone()
            } else {
                BigInt::zero()
            }
        }));
        let snf = smith_normal_form(&Integers, &rel)?;
        if snf.rank < s || snf.invariant_factors().iter().any(|d| !d.is_one()) {
            return Err(Error::NotInvertible("torsion block is not an automorphism".into()));
        }
        Ok(FgAbelianAutomorphism { free, torsion_orders, torsion, mixing })
    }

    /// Automorphism of a free abelian group.
    pub fn free_only(free: Matrix<BigInt>) -> Result<Self> {
        let r = free.cols();
        Self::new(free, Vec::new(), Matrix::filled(0, 0, BigInt::zero()), Matrix::filled(0, r, BigInt::zero()))
    }

    pub fn free_block(&self) -> &Matrix<BigInt> {
        &self.free
    }

    pub fn torsion_orders(&self) -> &[BigInt] {
        &self.torsion_orders
    }

    pub fn torsion_block(&self) -> &Matrix<BigInt> {
        &self.torsion
    }

    pub fn mixing_block(&self) -> &Matrix<BigInt> {
        &self.mixing
    }

    fn full_matrix(&self) -> Matrix<BigInt> {
        let (r, s) = (self.free.rows(), self.torsion_orders.len());
        Matrix::from_fn(r + s, r + s, |i, j| match (i < r, j < r) {
            (true, true) => self.free[(i, j)].clone(),
            (true, false) => BigInt::zero(),
            (false, true) => self.mixing[(i - r, j)].clone(),
            (false, false) => self.torsion[(i - r, j - r)].clone(),
        })
    }

    fn reduce(&self, m: Matrix<BigInt>) -> Matrix<BigInt> {
        let r = self.free.rows();
        Matrix::from_fn(m.rows(), m.cols(), |i, j| {
            if i < r {
                m[(i, j)].clone()
            } else {
                m[(i, j)].mod_floor(&self.torsion_orders[i - r])
            }
        })
    }

    fn mul(&self, a: &Matrix<BigInt>, b: &Matrix<BigInt>) -> Matrix<BigInt> {
        self.reduce(matrix::mul(&Integers, a, b))
    }

    /// `phi^n` as a reduced block matrix.
    pub fn pow(&self, mut n: u64) -> Matrix<BigInt> {
        let size = self.free.rows() + self.torsion_orders.len();
        let mut acc = self.reduce(identity(&Integers, size));
        let mut base = self.full_matrix();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn is_identity_power(&self, n: u64) -> bool {
        let size = self.free.rows() + self.torsion_orders.len();
        self.pow(n) == self.reduce(identity(&Integers, size))
    }

    /// Order of the torsion block, by iterated multiplication.
    fn torsion_order(&self) -> Result<u64> {
        let s = self.torsion_orders.len();
        let reduce = |m: Matrix<BigInt>| {
            Matrix::from_fn(s, s, |i, j| m[(i, j)].mod_floor(&self.torsion_orders[i]))
        };
        let id = reduce(identity(&Integers, s));
        let mut cur = self.torsion.clone();
        const LIMIT: u64 = 1_000_000;
        for n in 1..=LIMIT {
            if cur == id {
                return Ok(n);
            }
            cur = reduce(matrix::mul(&Integers, &cur, &self.torsion));
        }
        Err(Error::InvalidInput(format!("torsion block order exceeds {LIMIT}")))
    }
}

fn divisors_u64(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).take_while(|d| d * d <= n).filter(|d| n.is_multiple_of(*d)).flat_map(|d| [d, n / d]).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Least `l > 0` with `phi^l = id`, given that `phi^m_free` is the
/// identity on the free quotient.
///
/// With `L0 = lcm(order on the free quotient, order on the torsion)`,
/// `phi^L0 = 1 + N` where `N` maps into the torsion and kills it, so
/// `(1 + N)^j = 1 + jN` and `l = L0 j` for the least divisor `j` of the
/// torsion exponent with `jN = 0`.
pub fn full_order(phi: &FgAbelianAutomorphism, m_free: u64) -> Result<u64> {
    if m_free == 0 {
        return Err(Error::Precondition("m_free must be positive".into()));
    }
    let z = Integers;
    if !is_identity(&z, &matrix::pow(&z, &phi.free, m_free)) {
        return Err(Error::Precondition(format!("free block to the power {m_free} is not the identity")));
    }
    let free_order = divisors_u64(m_free)
        .into_iter()
        .find(|&d| is_identity(&z, &matrix::pow(&z, &phi.free, d)))
        .expect("m_free itself works");
    let l0 = free_order.lcm(&phi.torsion_order()?);
    let exponent = phi
        .torsion_orders
        .last()
        .map_or(Ok(1), |d| {
            u64::try_from(d).map_err(|_| Error::InvalidInput(format!("torsion order {d} is too large")))
        })?;
    for j in divisors_u64(exponent) {
        let l = l0
            .checked_mul(j)
            .ok_or_else(|| Error::InvalidInput("order overflows 64 bits".into()))?;
        if phi.is_identity_power(l) {
            return Ok(l);
        }
    }
    Err(Error::Internal(format!(
        "no divisor of the exponent {exponent} times {l0} gives the identity"
    )))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodReport {
    /// Works on every `H_j / torsion`; prime to `k`.
    pub m: u64,
    /// Works on every `H_j`.
    pub l: u64,
    pub per_degree: Vec<(u64, u64)>,
}

fn in_degree(j: usize, e: Error) -> Error {
    match e {
        Error::Internal(s) => Error::Internal(format!("degree {j}: {s}")),
        Error::Precondition(s) => Error::Precondition(format!("degree {j}: {s}")),
        other => Error::Precondition(format!("degree {j}: {other}")),
    }
}

/// Per-degree `m` and `l` combined by lcm, then verified by powering.
pub fn period_from_witnesses(
    monodromy: &[FgAbelianAutomorphism],
    k: u64,
    conj_witness: &[(Matrix<BigInt>, i8)],
) -> Result<PeriodReport> {
    if monodromy.len() != conj_witness.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} degrees of monodromy but {} conjugation witnesses",
            monodromy.len(),
            conj_witness.len()
        )));
    }
    let mut per_degree = Vec::with_capacity(monodromy.len());
    for (j, (phi, (b, sign))) in monodromy.iter().zip(conj_witness).enumerate() {
        let m = solve_prop_matrix(&phi.free, b, k, *sign).map_err(|e| in_degree(j, e))?;
        let l = full_order(phi, m).map_err(|e| in_degree(j, e))?;
        per_degree.push((m, l));
    }
    let m = per_degree.iter().fold(1u64, |acc, (m, _)| acc.lcm(m));
    let l = per_degree.iter().fold(1u64, |acc, (_, l)| acc.lcm(l));
    let z = Integers;
    for (j, phi) in monodromy.iter().enumerate() {
        if !is_identity(&z, &matrix::pow(&z, &phi.free, m)) || !phi.is_identity_power(l) {
            return Err(Error::Internal(format!("degree {j}: combined period fails")));
        }
    }
    if m.gcd(&k) != 1 {
        return Err(Error::Internal(format!("combined m = {m} is not prime to k = {k}")));
    }
    Ok(PeriodReport { m, l, per_degree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::from_i64_rows;

    fn zm(rows: &[&[i64]]) -> Matrix<BigInt> {
        from_i64_rows(&Integers, rows)
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn prop_matrix_examples() {
        let rot = zm(&[&[0, -1], &[1, 0]]);
        let id = zm(&[&[1, 0], &[0, 1]]);
        assert_eq!(solve_prop_matrix(&rot, &id, 3, -1).unwrap(), 4);
        assert_eq!(solve_prop_matrix(&id, &id, 2, 1).unwrap(), 1);
        let unip = zm(&[&[1, 1], &[0, 1]]);
        assert!(matches!(solve_prop_matrix(&unip, &id, 2, 1), Err(Error::Precondition(_))));
        assert!(matches!(solve_prop_matrix(&unip, &id, 2, -1), Err(Error::Precondition(_))));
        let twice = zm(&[&[2, 0], &[0, 1]]);
        assert!(matches!(solve_prop_matrix(&twice, &id, 2, 1), Err(Error::Precondition(_))));
    }

    #[test]
    fn trefoil_relation() {
        let a = zm(&[&[1, -1], &[1, 0]]);
        let b = zm(&[&[1, 0], &[1, -1]]);
        assert_eq!(solve_prop_matrix(&a, &b, 5, 1).unwrap(), 6);
    }

    #[test]
    fn full_order_examples() {
        let rot = FgAbelianAutomorphism::free_only(zm(&[&[0, -1], &[1, 0]])).unwrap();
        assert_eq!(full_order(&rot, 4).unwrap(), 4);
        assert_eq!(full_order(&rot, 8).unwrap(), 4);
        assert!(matches!(full_order(&rot, 2), Err(Error::Precondition(_))));

        let id = FgAbelianAutomorphism::new(zm(&[&[1]]), ints(&[2]), zm(&[&[1]]), zm(&[&[0]])).unwrap();
        assert_eq!(full_order(&id, 1).unwrap(), 1);

        let times3 = FgAbelianAutomorphism::new(zm(&[&[1]]), ints(&[4]), zm(&[&[3]]), zm(&[&[0]])).unwrap();
        assert_eq!(full_order(&times3, 1).unwrap(), 2);
    }

    #[test]
    fn mixing_needs_the_extension_factor() {
        // x -> x + y on Z ⊕ Z/4: identity on both pieces, order 4
        let phi = FgAbelianAutomorphism::new(zm(&[&[1]]), ints(&[4]), zm(&[&[1]]), zm(&[&[1]])).unwrap();
        assert_eq!(full_order(&phi, 1).unwrap(), 4);
        for n in 1..4 {
            assert!(!phi.is_identity_power(n));
        }
    }

    #[test]
    fn rejects_bad_automorphisms() {
        assert!(FgAbelianAutomorphism::new(zm(&[&[1]]), ints(&[4]), zm(&[&[2]]), zm(&[&[0]])).is_err());
        assert!(FgAbelianAutomorphism::new(zm(&[&[2]]), ints(&[]), zm(&[]), Matrix::filled(0, 1, BigInt::zero())).is_err());
        // Z/2 -> Z/4 by 1 is not a homomorphism
        let t = zm(&[&[1, 0], &[1, 1]]);
        assert!(FgAbelianAutomorphism::new(Matrix::filled(0, 0, BigInt::zero()), ints(&[2, 4]), t, Matrix::filled(2, 0, BigInt::zero())).is_err());
        assert!(FgAbelianAutomorphism::new(zm(&[&[1]]), ints(&[4, 2]), zm(&[&[1, 0], &[0, 1]]), zm(&[&[0], &[0]])).is_err());
    }

    #[test]
    fn driver_examples() {
        let h0 = FgAbelianAutomorphism::free_only(zm(&[&[1]])).unwrap();
        let h1 = FgAbelianAutomorphism::free_only(zm(&[&[1, -1], &[1, 0]])).unwrap();
        let w = vec![(zm(&[&[1]]), 1), (zm(&[&[1, 0], &[1, -1]]), 1)];
        let r = period_from_witnesses(&[h0.clone(), h1], 5, &w).unwrap();
        assert_eq!((r.m, r.l), (6, 6));

        let rot = FgAbelianAutomorphism::free_only(zm(&[&[0, -1], &[1, 0]])).unwrap();
        let w = vec![(zm(&[&[1]]), 1), (zm(&[&[1, 0], &[0, 1]]), -1)];
        let r = period_from_witnesses(&[h0.clone(), rot], 3, &w).unwrap();
        assert_eq!((r.m, r.l), (4, 4));

        let id2 = FgAbelianAutomorphism::free_only(zm(&[&[1, 0], &[0, 1]])).unwrap();
        let w = vec![(zm(&[&[1]]), 1), (zm(&[&[1, 0], &[0, 1]]), 1)];
        let r = period_from_witnesses(&[h0, id2], 7, &w).unwrap();
        assert_eq!((r.m, r.l), (1, 1));
    }

    #[test]
    fn driver_names_failing_degree() {
        let h0 = FgAbelianAutomorphism::free_only(zm(&[&[1]])).unwrap();
        let unip = FgAbelianAutomorphism::free_only(zm(&[&[1, 1], &[0, 1]])).unwrap();
        let w = vec![(zm(&[&[1]]), 1), (zm(&[&[1, 0], &[0, 1]]), 1)];
        match period_from_witnesses(&[h0, unip], 2, &w) {
            Err(Error::Precondition(s)) => assert!(s.starts_with("degree 1")),
            other => panic!("unexpected {other:?}"),
        }
    }
}
