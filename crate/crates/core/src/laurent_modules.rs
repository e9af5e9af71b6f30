//! Finitely generated `Z[t, t^-1]`-modules given by presentations, and the
//! decision whether such a module is finitely generated as an abelian group.
//!
//! The decision checks, at the residue fields `Q` and `F_p`, that the base
//! change is finite-dimensional and that the eigenvalues of `t` and `t^-1`
//! on it are integral over `Z` (resp. `F_p`). Only finitely many primes can
//! fail; they are found from the maximal minors and from a Smith form over
//! `Q[t]`, and every other prime is known to behave like the generic one.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::factor::prime_factors;
use crate::matrix::Matrix;
use crate::normal_forms::{det, laurent_cokernel, laurent_cokernel_with_snf, LaurentCokernel};
use crate::rings::{Integers, LaurentPoly, LaurentRing, Poly, PrimeField, Rationals, Ring};
use crate::{Error, Result};

/// A prime ideal of `Z`: the zero ideal or `(p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PrimeIdeal {
    Zero,
    Prime(u64),
}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeIdeal::Zero => write!(f, "0"),
            PrimeIdeal::Prime(p) => write!(f, "{p}"),
        }
    }
}

/// `Z[t,t^-1]^g / (columns of relations)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModulePresentation {
    generators: usize,
    relations: Matrix<LaurentPoly<Integers>>,
}

impl ModulePresentation {
    pub fn new(generators: usize, relations: Matrix<LaurentPoly<Integers>>) -> Result<Self> {
        if relations.rows() != generators {
            return Err(Error::ShapeMismatch(format!(
                "relation matrix has {} rows but the module has {generators} generators",
                relations.rows()
            )));
        }
        Ok(ModulePresentation { generators, relations })
    }

    /// One generator, one relation `f`.
    pub fn principal(f: LaurentPoly<Integers>) -> Self {
        ModulePresentation {
            generators: 1,
            relations: Matrix::from_fn(1, 1, |_, _| f.clone()),
        }
    }

    /// Free module of rank `g` (no relations).
    pub fn free(g: usize) -> Self {
        ModulePresentation {
            generators: g,
            relations: Matrix::from_fn(g, 0, |_, _| unreachable!()),
        }
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &Matrix<LaurentPoly<Integers>> {
        &self.relations
    }

    fn reduced<S: Ring>(&self, target: &S) -> Matrix<LaurentPoly<S>> {
        self.relations.map(|x| x.reduce(target))
    }
}

/// Residue cokernel `κ(P) ⊗ M` over `κ(P)[t, t^-1]`.
#[derive(Clone, Debug, PartialEq)]
pub enum ResidueCokernel {
    Rational(LaurentCokernel<Rationals>),
    Prime(PrimeField, LaurentCokernel<PrimeField>),
}

impl ResidueCokernel {
    pub fn free_rank(&self) -> usize {
        match self {
            ResidueCokernel::Rational(c) => c.free_rank,
            ResidueCokernel::Prime(_, c) => c.free_rank,
        }
    }

    pub fn dimension(&self) -> Option<usize> {
        match self {
            ResidueCokernel::Rational(c) => c.dimension(),
            ResidueCokernel::Prime(_, c) => c.dimension(),
        }
    }

    /// Invariant factors rendered as text, for reports.
    pub fn factor_strings(&self) -> Vec<String> {
        match self {
            ResidueCokernel::Rational(c) => c.factors.iter().map(|f| f.to_string()).collect(),
            ResidueCokernel::Prime(_, c) => c.factors.iter().map(|f| f.to_string()).collect(),
        }
    }
}

pub fn base_change_residue(m: &ModulePresentation, prime: PrimeIdeal) -> Result<ResidueCokernel> {
    match prime {
        PrimeIdeal::Zero => Ok(ResidueCokernel::Rational(laurent_cokernel(
            &Rationals,
            &m.reduced(&Rationals),
        )?)),
        PrimeIdeal::Prime(p) => {
            let fp = PrimeField::new(p)?;
            Ok(ResidueCokernel::Prime(fp, laurent_cokernel(&fp, &m.reduced(&fp))?))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FailureKind {
    InfiniteDimension,
    NonIntegralT,
    NonIntegralTInverse,
}

impl FailureKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            FailureKind::InfiniteDimension => "infinite_dimension",
            FailureKind::NonIntegralT => "non_integral_eigenvalue_t",
            FailureKind::NonIntegralTInverse => "non_integral_eigenvalue_t_inverse",
        }
    }
}

/// Outcome of the pointwise eigenvalue check at one residue field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Property1 {
    pub finite_dim: bool,
    pub t_integral: bool,
    pub tinv_integral: bool,
    pub dim: Option<usize>,
    /// First invariant factor responsible for a failure (`"0"` for a free
    /// summand).
    pub offending_factor: Option<String>,
}

impl Property1 {
    pub fn holds(&self) -> bool {
        self.finite_dim && self.t_integral && self.tinv_integral
    }

    pub fn failure(&self) -> Option<FailureKind> {
        if !self.finite_dim {
            Some(FailureKind::InfiniteDimension)
        } else if !self.t_integral {
            Some(FailureKind::NonIntegralT)
        } else if !self.tinv_integral {
            Some(FailureKind::NonIntegralTInverse)
        } else {
            None
        }
    }
}

fn has_integer_coeffs(f: &Poly<Rationals>) -> bool {
    f.coeffs().iter().all(|c| c.is_integer())
}

/// A monic rational polynomial with nonzero constant term has integral
/// roots iff it lies in `Z[t]`; the roots of the reciprocal polynomial are
/// the inverses, so `t^-1` is integral iff `rev(f)/f(0)` lies in `Z[t]`.
fn inverse_is_integral(f: &Poly<Rationals>) -> bool {
    let rev = f.reversed();
    has_integer_coeffs(&rev.monic())
}

pub fn property1_check(m: &ModulePresentation, prime: PrimeIdeal) -> Result<Property1> {
    let residue = base_change_residue(m, prime)?;
    Ok(property1_from_residue(&residue))
}

fn property1_from_residue(residue: &ResidueCokernel) -> Property1 {
    let finite_dim = residue.free_rank() == 0;
    if !finite_dim {
        return Property1 {
            finite_dim,
            t_integral: false,
            tinv_integral: false,
            dim: None,
            offending_factor: Some("0".into()),
        };
    }
    match residue {
        // Every element algebraic over F_p is integral over F_p.
        ResidueCokernel::Prime(_, c) => Property1 {
            finite_dim,
            t_integral: true,
            tinv_integral: true,
            dim: c.dimension(),
            offending_factor: None,
        },
        ResidueCokernel::Rational(c) => {
            let bad_t = c.factors.iter().find(|f| !has_integer_coeffs(f));
            let bad_tinv = c.factors.iter().find(|f| !inverse_is_integral(f));
            Property1 {
                finite_dim,
                t_integral: bad_t.is_none(),
                tinv_integral: bad_tinv.is_none(),
                dim: c.dimension(),
                offending_factor: bad_t.or(bad_tinv).map(|f| f.to_string()),
            }
        }
    }
}

fn column_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n - (k - cur.len()) {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// gcd in `Z[t]` of the canonical associates of all maximal minors.
fn maximal_minor_gcd(m: &ModulePresentation) -> Result<Poly<Integers>> {
    let g = m.generators;
    if g == 0 {
        return Ok(Poly::one(Integers));
    }
    let ring = LaurentRing::new(Integers);
    let mut acc = Poly::zero(Integers);
    for cols in column_subsets(m.relations.cols(), g) {
        let minor = det(&ring, &m.relations.select_cols(&cols))?;
        acc = acc.gcd_z(&minor.canonical_associate());
        if acc == Poly::one(Integers) {
            break;
        }
    }
    Ok(acc)
}

/// Order ideal: gcd of the `g x g` minors of the relation matrix, as a
/// canonical associate in `Z[t]` (zero when the module has positive rank
/// over `Q[t, t^-1]`).
pub fn order_ideal(m: &ModulePresentation) -> Result<LaurentPoly<Integers>> {
    let rational = base_change_residue(m, PrimeIdeal::Zero)?;
    if rational.free_rank() > 0 {
        return Ok(LaurentPoly::zero(Integers));
    }
    Ok(LaurentPoly::from_poly(maximal_minor_gcd(m)?))
}

fn add_prime_factors(set: &mut BTreeSet<BigUint>, n: &BigInt) {
    if n.is_zero() {
        return;
    }
    set.extend(prime_factors(n.magnitude()));
}

fn add_rational_primes(set: &mut BTreeSet<BigUint>, x: &BigRational) {
    if !x.denom().is_one() {
        add_prime_factors(set, x.denom());
    }
}

/// Primes outside of which the residue cokernel behaves like the rational
/// one (finite-dimensional of the same dimension).
///
/// Collected from (a) the content of the maximal-minor gcd, (b) the leading
/// and trailing coefficients of the order ideal and (c) a Smith form
/// `U A V = D` over `Q[t]`: denominators of `U`, `V`, their inverses and
/// `D`, and the trailing coefficients of the invariant factors. Outside
/// (c) the whole factorization reduces mod `p` with `U`, `V` still
/// invertible and every invariant factor keeping its degree and a nonzero
/// constant term.
pub fn relevant_primes(m: &ModulePresentation) -> Result<Vec<u64>> {
    let relations = m.reduced(&Rationals);
    let (cok, snf) = laurent_cokernel_with_snf(&Rationals, &relations)?;
    if cok.free_rank > 0 {
        return Err(Error::FreePart { degree: 0, free_rank: cok.free_rank });
    }
    let mut set = BTreeSet::new();
    let gcd = maximal_minor_gcd(m)?;
    add_prime_factors(&mut set, &gcd.content());
    if let Some(lead) = gcd.lead() {
        add_prime_factors(&mut set, lead);
        add_prime_factors(&mut set, &gcd.coeff(gcd.low_order()));
    }
    for mat in [&snf.u, &snf.u_inv, &snf.v, &snf.v_inv, &snf.d] {
        for entry in mat.entries() {
            for c in entry.coeffs() {
                add_rational_primes(&mut set, c);
            }
        }
    }
    for f in &cok.factors {
        let c0 = f.coeff(0);
        add_prime_factors(&mut set, c0.numer());
        add_prime_factors(&mut set, c0.denom());
    }
    set.into_iter()
        .map(|p| {
            p.to_u64().ok_or_else(|| {
                Error::InvalidInput(format!("relevant prime {p} exceeds the 64-bit prime field range"))
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinGenWitness {
    pub prime: PrimeIdeal,
    pub kind: FailureKind,
    pub factor: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinGenVerdict {
    pub finitely_generated: bool,
    pub witness: Option<FinGenWitness>,
    /// Rank as an abelian group; present exactly when the verdict is yes.
    pub underlying_rank: Option<usize>,
    pub relevant_primes: Vec<u64>,
    /// Residue dimension at every prime examined, `None` when infinite.
    pub residue_dims: Vec<(PrimeIdeal, Option<usize>)>,
}

fn witness_from(prime: PrimeIdeal, p1: &Property1) -> Option<FinGenWitness> {
    p1.failure().map(|kind| FinGenWitness {
        prime,
        kind,
        factor: p1.offending_factor.clone().unwrap_or_default(),
    })
}

/// Decides whether `M` is finitely generated over `Z`.
pub fn finitely_generated_over_z(m: &ModulePresentation) -> Result<FinGenVerdict> {
    let at_zero = property1_check(m, PrimeIdeal::Zero)?;
    let mut dims = vec![(PrimeIdeal::Zero, at_zero.dim)];
    if let Some(w) = witness_from(PrimeIdeal::Zero, &at_zero) {
        return Ok(FinGenVerdict {
            finitely_generated: false,
            witness: Some(w),
            underlying_rank: None,
            relevant_primes: Vec::new(),
            residue_dims: dims,
        });
    }
    let primes = relevant_primes(m)?;
    for &p in &primes {
        let prime = PrimeIdeal::Prime(p);
        let check = property1_check(m, prime)?;
        dims.push((prime, check.dim));
        if let Some(w) = witness_from(prime, &check) {
            return Ok(FinGenVerdict {
                finitely_generated: false,
                witness: Some(w),
                underlying_rank: None,
                relevant_primes: primes,
                residue_dims: dims,
            });
        }
    }
    // A finitely generated abelian group has Z-rank dim_Q(M ⊗ Q).
    let underlying_rank = at_zero.dim;
    Ok(FinGenVerdict {
        finitely_generated: true,
        witness: None,
        underlying_rank,
        relevant_primes: primes,
        residue_dims: dims,
    })
}

/// Residue dimension over `F_p` as a plain number, used by callers that
/// probe primes outside the relevant set.
pub fn residue_dimension(m: &ModulePresentation, prime: PrimeIdeal) -> Result<Option<usize>> {
    Ok(base_change_residue(m, prime)?.dimension())
}
