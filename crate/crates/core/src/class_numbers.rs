//! The relative class number `h_p^-` of the `p`-th cyclotomic field, the
//! `h_p^+` fixture table and the odd-factor gate built on both.
//!
//! `h_p^-` is computed twice:
//! * as `2p ∏ (-B_{1,χ}/2)` over the odd characters mod `p`, with the
//!   product taken exactly in `Z[x]/Φ_(p-1)` via a primitive root;
//! * from the Maillet determinant `det[R(i j^-1)]`, `1 <= i, j <= (p-1)/2`,
//!   where `R` is the least positive residue, divided by `p^((p-3)/2)`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::factor::odd_prime_factor;
use crate::rings::{cyclotomic, is_prime_u64};
use crate::{Error, Result};

pub const DEFAULT_PRIME_BOUND: u64 = 211;

/// Exponent of `p` removed from the Maillet determinant. Calibrated against
/// the character product at `p = 23, 29, 31` (see the tests); the sign of
/// the determinant is discarded.
fn maillet_p_exponent(p: u64) -> u32 {
    ((p - 3) / 2) as u32
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn primitive_root(p: u64) -> u64 {
    let n = p - 1;
    let mut qs = Vec::new();
    let mut m = n;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            qs.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        qs.push(m);
    }
    (2..p)
        .find(|&g| qs.iter().all(|&q| pow_mod(g, n / q, p) != 1))
        .expect("every prime has a primitive root")
}

/// Multiplication in `Z[x]/(phi)` for monic `phi` of degree `d`; elements
/// are coefficient vectors of length `d`.
fn mul_mod(a: &[BigInt], b: &[BigInt], phi: &[BigInt]) -> Vec<BigInt> {
    let d = phi.len() - 1;
    let mut prod = vec![BigInt::zero(); 2 * d];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            prod[i + j] += x * y;
        }
    }
    for k in (d..prod.len()).rev() {
        let c = std::mem::take(&mut prod[k]);
        if c.is_zero() {
            continue;
        }
        for (i, f) in phi[..d].iter().enumerate() {
            prod[k - d + i] -= &c * f;
        }
    }
    prod.truncate(d);
    prod
}

fn check_prime(p: u64, bound: u64) -> Result<()> {
    if p < 3 || !is_prime_u64(p) {
        return Err(Error::InvalidInput(format!("{p} is not an odd prime")));
    }
    if p > bound {
        return Err(Error::InvalidInput(format!(
            "p = {p} exceeds the configured prime bound {bound}"
        )));
    }
    Ok(())
}

/// `h_p^-` from the odd-character product.
pub fn hp_minus_bernoulli(p: u64) -> Result<BigInt> {
    check_prime(p, u64::MAX)?;
    let n = p - 1;
    let g = primitive_root(p);
    let phi: Vec<BigInt> = cyclotomic(n)?.coeffs().to_vec();
    let d = phi.len() - 1;
    // residues[j] = g^j mod p
    let mut residues = Vec::with_capacity(n as usize);
    let mut r = 1u64;
    for _ in 0..n {
        residues.push(r);
        r = r * g % p;
    }
    // x^e mod Φ_n for 0 <= e < n
    let mut x = vec![BigInt::zero(); d];
    if d > 1 {
        x[1] = BigInt::one();
    } else {
        // Φ_n = x + phi[0] when n <= 2
        x[0] = -phi[0].clone();
    }
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![BigInt::zero(); d];
    cur[0] = BigInt::one();
    for _ in 0..n {
        let next = mul_mod(&cur, &x, &phi);
        powers.push(cur);
        cur = next;
    }
    let mut prod = powers[0].clone();
    for k in (1..n).step_by(2) {
        // Σ_j (g^j mod p) x^(kj mod n)
        let mut value = vec![BigInt::zero(); d];
        for (j, &res) in residues.iter().enumerate() {
            let e = (k * j as u64 % n) as usize;
            for (acc, u) in value.iter_mut().zip(&powers[e]) {
                if !u.is_zero() {
                    *acc += u * res;
                }
            }
        }
        prod = mul_mod(&prod, &value, &phi);
    }
    if prod[1..].iter().any(|c| !c.is_zero()) {
        return Err(Error::Internal(format!(
            "odd-character product for p = {p} is not rational"
        )));
    }
    let half = (n / 2) as u32;
    let two_p = BigInt::from(2 * p);
    let mut numer = &two_p * &prod[0];
    if half % 2 == 1 {
        numer = -numer;
    }
    let denom = two_p.pow(half);
    let (h, rem) = numer.div_rem(&denom);
    if !rem.is_zero() || !h.is_positive() {
        return Err(Error::Internal(format!(
            "odd-character product for p = {p} gives {numer}/{denom}, not a positive integer"
        )));
    }
    Ok(h)
}

/// Fraction-free Gaussian elimination.
fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * prev
}

/// The Maillet determinant `det[R(i j^-1 mod p)]`.
pub fn maillet_determinant(p: u64) -> Result<BigInt> {
    check_prime(p, u64::MAX)?;
    let half = ((p - 1) / 2) as usize;
    let m = (1..=half as u64)
        .map(|i| {
            (1..=half as u64)
                .map(|j| BigInt::from(i * pow_mod(j, p - 2, p) % p))
                .collect()
        })
        .collect();
    Ok(bareiss_det(m))
}

/// `h_p^-` from the Maillet determinant.
pub fn hp_minus_maillet(p: u64) -> Result<BigInt> {
    let det = maillet_determinant(p)?;
    let norm = BigInt::from(p).pow(maillet_p_exponent(p));
    let (h, rem) = det.abs().div_rem(&norm);
    if !rem.is_zero() || h.is_zero() {
        return Err(Error::Internal(format!(
            "Maillet determinant {det} for p = {p} is not a nonzero multiple of {norm}"
        )));
    }
    Ok(h)
}

/// `h_p^-` by both methods; disagreement is an internal failure.
pub fn hp_minus(p: u64, bound: u64) -> Result<BigInt> {
    check_prime(p, bound)?;
    let a = hp_minus_bernoulli(p)?;
    let b = hp_minus_maillet(p)?;
    if a != b {
        return Err(Error::Internal(format!(
            "class number methods disagree at p = {p}: character product {a}, Maillet {b}"
        )));
    }
    Ok(a)
}

/// One row of the `h_p^+` table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HplusRecord {
    pub p: u64,
    /// Prime factors with multiplicity; empty when `h_p^+ = 1`.
    pub factors: Vec<BigUint>,
    pub source: String,
    pub heuristic: bool,
}

impl HplusRecord {
    pub fn value(&self) -> BigUint {
        self.factors.iter().product()
    }

    pub fn odd_prime_factor(&self) -> Option<BigUint> {
        self.factors.iter().filter(|f| f.is_odd()).min().cloned()
    }
}

fn parse_err(line: u64, msg: impl fmt::Display) -> Error {
    Error::Parse(format!("line {line}: {msg}"))
}

fn parse_hplus(reader: impl std::io::Read) -> Result<BTreeMap<u64, HplusRecord>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(reader);
    let mut out = BTreeMap::new();
    let mut seen_header = false;
    for row in rdr.records() {
        let row = row.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_err(line, e)
        })?;
        let line = row.position().map_or(0, |p| p.line());
        if row.iter().all(|f| f.is_empty()) {
            continue;
        }
        if !seen_header {
            seen_header = true;
            let header: Vec<&str> = row.iter().collect();
            if header != ["p", "hplus_factors", "source", "heuristic"] {
                return Err(parse_err(
                    line,
                    "expected header p,hplus_factors,source,heuristic",
                ));
            }
            continue;
        }
        if row.len() != 4 {
            return Err(parse_err(line, format!("expected 4 fields, found {}", row.len())));
        }
        let p: u64 = row[0]
            .parse()
            .map_err(|_| parse_err(line, format!("bad prime {:?}", &row[0])))?;
        if !is_prime_u64(p) || p < 3 {
            return Err(parse_err(line, format!("{p} is not an odd prime")));
        }
        let factors = row[1]
            .split(';')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<BigUint>()
                    .ok()
                    .filter(crate::factor::is_probable_prime)
                    .ok_or_else(|| parse_err(line, format!("bad prime factor {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let heuristic = match row[3].to_ascii_lowercase().as_str() {
            "true" | "yes" | "1" => true,
            "false" | "no" | "0" => false,
            other => return Err(parse_err(line, format!("bad heuristic flag {other:?}"))),
        };
        let rec = HplusRecord { p, factors, source: row[2].to_string(), heuristic };
        if out.insert(p, rec).is_some() {
            return Err(parse_err(line, format!("duplicate entry for p = {p}")));
        }
    }
    Ok(out)
}

/// Reads the `h_p^+` fixture (`p,hplus_factors,source,heuristic`; factors
/// separated by `;`). An empty file gives an empty table.
pub fn load_hplus_table(path: impl AsRef<Path>) -> Result<BTreeMap<u64, HplusRecord>> {
    let path = path.as_ref();
    let file = std::fs::File::open(path)
        .map_err(|e| Error::InvalidInput(format!("cannot open {}: {e}", path.display())))?;
    parse_hplus(file)
}

pub fn parse_hplus_table(text: &str) -> Result<BTreeMap<u64, HplusRecord>> {
    parse_hplus(text.as_bytes())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GateVerdict {
    True,
    False,
    Unknown,
}

impl GateVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            GateVerdict::True => "true",
            GateVerdict::False => "false",
            GateVerdict::Unknown => "unknown",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassGateReport {
    pub p: u64,
    pub h_minus: BigInt,
    pub h_minus_odd_factor: Option<BigUint>,
    pub h_plus_entry: Option<HplusRecord>,
    pub h_plus_odd_factor: Option<BigUint>,
    pub gate: GateVerdict,
}

/// Both `h_p^-` and `h_p^+` have an odd prime factor. A missing odd factor
/// of `h_p^-` decides `false` on its own; otherwise a prime missing from
/// the table gives `unknown`.
pub fn class_number_gate(
    p: u64,
    table: &BTreeMap<u64, HplusRecord>,
    bound: u64,
) -> Result<ClassGateReport> {
    let h_minus = hp_minus(p, bound)?;
    let h_minus_odd_factor = odd_prime_factor(h_minus.magnitude());
    let h_plus_entry = table.get(&p).cloned();
    let h_plus_odd_factor = h_plus_entry.as_ref().and_then(|r| r.odd_prime_factor());
    let gate = match (&h_minus_odd_factor, &h_plus_entry, &h_plus_odd_factor) {
        (None, _, _) => GateVerdict::False,
        (Some(_), None, _) => GateVerdict::Unknown,
        (Some(_), Some(_), None) => GateVerdict::False,
        (Some(_), Some(_), Some(_)) => GateVerdict::True,
    };
    Ok(ClassGateReport { p, h_minus, h_minus_odd_factor, h_plus_entry, h_plus_odd_factor, gate })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn odd_primes(limit: u64) -> impl Iterator<Item = u64> {
        (3..=limit).filter(|&p| is_prime_u64(p))
    }

    #[test]
    fn small_primes_have_trivial_relative_class_number() {
        for p in odd_primes(19) {
            assert_eq!(hp_minus(p, DEFAULT_PRIME_BOUND).unwrap(), BigInt::one(), "p = {p}");
        }
    }

    #[test]
    fn known_values() {
        assert_eq!(hp_minus(23, DEFAULT_PRIME_BOUND).unwrap(), BigInt::from(3));
        assert_eq!(hp_minus(29, DEFAULT_PRIME_BOUND).unwrap(), BigInt::from(8));
        assert_eq!(hp_minus(31, DEFAULT_PRIME_BOUND).unwrap(), BigInt::from(9));
        assert_eq!(hp_minus(37, DEFAULT_PRIME_BOUND).unwrap(), BigInt::from(37));
    }

    #[test]
    fn maillet_calibration() {
        // The frozen normalization: |det| = p^((p-3)/2) h_p^-.
        for p in [23u64, 29, 31] {
            let det = maillet_determinant(p).unwrap();
            let h = hp_minus_bernoulli(p).unwrap();
            assert_eq!(det.abs(), BigInt::from(p).pow(maillet_p_exponent(p)) * h);
        }
    }

    #[test]
    fn rejects_bad_primes() {
        assert!(hp_minus(2, 211).is_err());
        assert!(hp_minus(21, 211).is_err());
        assert!(hp_minus(223, 211).is_err());
    }

    #[test]
    fn table_parsing() {
        assert!(parse_hplus_table("").unwrap().is_empty());
        let t = parse_hplus_table(
            "p,hplus_factors,source,heuristic\n191,11,table,true\n163,2;2,table,true\n7,,proved,false\n",
        )
        .unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t[&191].odd_prime_factor(), Some(BigUint::from(11u32)));
        assert_eq!(t[&163].value(), BigUint::from(4u32));
        assert_eq!(t[&163].odd_prime_factor(), None);
        assert!(t[&7].factors.is_empty());

        let err = parse_hplus_table("p,hplus_factors,source,heuristic\n191,11,x,true\n193,abc,x,true\n")
            .unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
        let err = parse_hplus_table("p,hplus_factors,source,heuristic\n191,11,x\n").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    #[test]
    fn gate_verdicts() {
        let t = parse_hplus_table("p,hplus_factors,source,heuristic\n3,,x,false\n").unwrap();
        assert_eq!(class_number_gate(3, &t, 211).unwrap().gate, GateVerdict::False);
        assert_eq!(class_number_gate(5, &t, 211).unwrap().gate, GateVerdict::False);
        let r = class_number_gate(23, &t, 211).unwrap();
        assert_eq!(r.gate, GateVerdict::Unknown);
        assert_eq!(r.h_minus_odd_factor, Some(BigUint::from(3u32)));
    }
}
