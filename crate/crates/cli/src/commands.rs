//! One function per subcommand, each turning a [`Request`] into the
//! `result` object of a report plus any warnings.

use cck_core::class_numbers::{self, class_number_gate, hp_minus, GateVerdict};
use cck_core::covers::{
    cover_homology_field, dimension_bound_check, infinite_cover_homology_field, verify_self_cover_relation,
    wang_dimensions, SelfCoverWitness, TwistedChainComplex,
};
use cck_core::laurent_modules::{finitely_generated_over_z, order_ideal};
use cck_core::periodicity::{period_from_witnesses, solve_prop_matrix};
use cck_core::rings::{Field, Kappa, PrimeField, Rationals};
use cck_core::{Error, Result};
use serde_json::{json, Value};

use crate::request::Request;
use crate::wire;

pub struct Outcome {
    pub result: Value,
    pub warnings: Vec<String>,
}

impl Outcome {
    fn plain(result: Value) -> Self {
        Outcome { result, warnings: Vec::new() }
    }
}

/// Upper limit on `p` for `hp-minus` and `gate`, from `CCK_PRIME_BOUND`
/// when set.
pub fn prime_bound() -> Result<u64> {
    match std::env::var("CCK_PRIME_BOUND") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("CCK_PRIME_BOUND: `{s}` is not an integer"))),
        Err(_) => Ok(class_numbers::DEFAULT_PRIME_BOUND),
    }
}

pub fn execute(req: &Request) -> Result<Outcome> {
    match req.subcommand.as_str() {
        "fingen" => fingen(req),
        "order-ideal" => order_ideal_cmd(req),
        "mapping-torus" => mapping_torus(req),
        "cover-homology" => cover_homology(req),
        "wang" => wang(req),
        "verify-selfcover" => verify_selfcover(req),
        "dimension-bound" => dimension_bound(req),
        "prop-matrix" => prop_matrix(req),
        "periodicity" => periodicity(req),
        "hp-minus" => hp_minus_cmd(req),
        "gate" => gate(req),
        other => Err(Error::InvalidInput(format!("unknown subcommand `{other}`"))),
    }
}

fn kappa(req: &Request) -> Result<Kappa> {
    match req.text("kappa") {
        Some(k) => Kappa::parse(&k),
        None => Ok(Kappa::Rational),
    }
}

fn complex(req: &Request) -> Result<TwistedChainComplex> {
    wire::complex(&req.json("complex")?, "complex")
}

fn sign(req: &Request) -> Result<i8> {
    match req.text("sign") {
        None => Ok(1),
        Some(s) => match s.trim() {
            "1" | "+1" | "+" => Ok(1),
            "-1" | "-" => Ok(-1),
            _ => Err(Error::Parse(format!("--sign: expected 1 or -1, got `{s}`"))),
        },
    }
}

fn fingen(req: &Request) -> Result<Outcome> {
    let m = wire::module(&req.json("module")?, "module")?;
    let v = finitely_generated_over_z(&m)?;
    let witness = v.witness.as_ref().map(|w| {
        json!({"prime": w.prime.to_string(), "kind": w.kind.as_str(), "factor": w.factor})
    });
    let result = json!({
        "answer": if v.finitely_generated { "yes" } else { "no" },
        "witness": witness,
        "underlying_rank": v.underlying_rank.map(|r| r.to_string()),
        "relevant_primes": v.relevant_primes.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "residue_dims": v.residue_dims.iter().map(|(p, d)| json!({
            "prime": p.to_string(),
            "dim": d.map(|d| d.to_string()),
        })).collect::<Vec<_>>(),
    });
    Ok(Outcome::plain(result))
}

fn order_ideal_cmd(req: &Request) -> Result<Outcome> {
    let m = wire::module(&req.json("module")?, "module")?;
    let delta = order_ideal(&m)?;
    Ok(Outcome::plain(json!({
        "order_ideal": wire::laurent_json(&delta),
        "text": delta.to_string(),
    })))
}

fn homology_json<F: Field>(x: &TwistedChainComplex, field: &F) -> Result<Value> {
    let h = infinite_cover_homology_field(x, field)?;
    Ok(Value::Array(
        h.iter()
            .enumerate()
            .map(|(j, c)| {
                json!({
                    "degree": j.to_string(),
                    "factors": c.factors.iter().map(wire::poly_json).collect::<Vec<_>>(),
                    "free_rank": c.free_rank.to_string(),
                    "dimension": c.dimension().map(|d| d.to_string()),
                })
            })
            .collect(),
    ))
}

fn infinite_homology(x: &TwistedChainComplex, k: Kappa) -> Result<Value> {
    match k {
        Kappa::Rational => homology_json(x, &Rationals),
        Kappa::Prime(p) => homology_json(x, &PrimeField::new(p)?),
    }
}

fn mapping_torus(req: &Request) -> Result<Outcome> {
    let input = req.json("complex")?;
    let (ranks, bf, f) = wire::mapping_torus_input(&input, "complex")?;
    let x = cck_core::covers::mapping_torus_complex(&ranks, &bf, &f)?;
    let k = kappa(req)?;
    Ok(Outcome::plain(json!({
        "complex": wire::complex_json(&x),
        "kappa": k.to_string(),
        "homology": infinite_homology(&x, k)?,
    })))
}

fn finite_cover_json<F: Field>(x: &TwistedChainComplex, field: &F, q: usize) -> Result<Value> {
    let h = cover_homology_field(x, field, q)?;
    Ok(Value::Array(
        h.iter()
            .enumerate()
            .map(|(j, c)| {
                json!({
                    "degree": j.to_string(),
                    "dim": c.dim.to_string(),
                    "t_action": wire::string_matrix_json(&c.t_action),
                })
            })
            .collect(),
    ))
}

fn cover_homology(req: &Request) -> Result<Outcome> {
    let x = complex(req)?;
    let k = kappa(req)?;
    if req.text("q").is_none() {
        return Ok(Outcome::plain(json!({
            "kappa": k.to_string(),
            "q": "infinite",
            "homology": infinite_homology(&x, k)?,
        })));
    }
    let q: usize = req.parsed("q")?;
    let degrees = match k {
        Kappa::Rational => finite_cover_json(&x, &Rationals, q)?,
        Kappa::Prime(p) => finite_cover_json(&x, &PrimeField::new(p)?, q)?,
    };
    Ok(Outcome::plain(json!({"kappa": k.to_string(), "q": q.to_string(), "degrees": degrees})))
}

fn wang(req: &Request) -> Result<Outcome> {
    let x = complex(req)?;
    let k = kappa(req)?;
    let q: usize = req.parsed("q")?;
    let dims = match k {
        Kappa::Rational => wang_dimensions(&x, &Rationals, q)?,
        Kappa::Prime(p) => wang_dimensions(&x, &PrimeField::new(p)?, q)?,
    };
    Ok(Outcome::plain(json!({
        "kappa": k.to_string(),
        "q": q.to_string(),
        "dims": dims.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
    })))
}

fn verify_selfcover(req: &Request) -> Result<Outcome> {
    let x = complex(req)?;
    let k: u64 = req.parsed("k")?;
    let s = sign(req)?;
    let hbar_v = req.json("hbar")?;
    let hbar = hbar_v
        .as_array()
        .ok_or_else(|| Error::Parse("hbar: expected an array of matrices".into()))?
        .iter()
        .enumerate()
        .map(|(i, m)| wire::rational_matrix(m, &format!("hbar[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let per_degree = verify_self_cover_relation(&x, &SelfCoverWitness { k, sign: s, hbar })?;
    Ok(Outcome::plain(json!({
        "k": k.to_string(),
        "sign": s.to_string(),
        "holds": per_degree.iter().all(|&b| b),
        "per_degree": per_degree,
    })))
}

fn iterates(req: &Request) -> Result<Vec<usize>> {
    let text = req.required_text("q")?;
    let qs = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("--q: `{s}` is not a cover degree")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(qs)
}

fn dimension_bound(req: &Request) -> Result<Outcome> {
    let x = complex(req)?;
    let k = kappa(req)?;
    let qs = iterates(req)?;
    let report = match k {
        Kappa::Rational => dimension_bound_check(&x, &Rationals, &qs)?,
        Kappa::Prime(p) => dimension_bound_check(&x, &PrimeField::new(p)?, &qs)?,
    };
    let mut warnings = Vec::new();
    if !report.holds {
        warnings.push("dimension bound violated; see rows with holds = false".to_string());
    }
    Ok(Outcome {
        result: json!({
            "kappa": k.to_string(),
            "ranks": x.ranks().iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            "holds": report.holds,
            "rows": report.rows.iter().map(|r| json!({
                "q": r.q.to_string(),
                "dims": r.dims.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
                "holds": r.holds,
            })).collect::<Vec<_>>(),
        }),
        warnings,
    })
}

fn prop_matrix(req: &Request) -> Result<Outcome> {
    let f = req.json("f")?;
    let a = wire::int_matrix(f.get("a").ok_or_else(|| Error::Parse("f: missing field `a`".into()))?, "f.a")?;
    let b = wire::int_matrix(f.get("b").ok_or_else(|| Error::Parse("f: missing field `b`".into()))?, "f.b")?;
    let k: u64 = req.parsed("k")?;
    let s = sign(req)?;
    let m = solve_prop_matrix(&a, &b, k, s)?;
    Ok(Outcome::plain(json!({"m": m.to_string(), "k": k.to_string(), "sign": s.to_string()})))
}

fn periodicity(req: &Request) -> Result<Outcome> {
    let f = req.json("f")?;
    let mono = f
        .get("monodromy")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("f: missing array `monodromy`".into()))?
        .iter()
        .enumerate()
        .map(|(i, a)| wire::automorphism(a, &format!("f.monodromy[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let witness = f
        .get("witness")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("f: missing array `witness`".into()))?
        .iter()
        .enumerate()
        .map(|(i, w)| {
            let path = format!("f.witness[{i}]");
            let b = wire::int_matrix(
                w.get("b").ok_or_else(|| Error::Parse(format!("{path}: missing field `b`")))?,
                &format!("{path}.b"),
            )?;
            let s = match w.get("sign") {
                None => 1,
                Some(s) => match wire::small_int(s, &format!("{path}.sign"))? {
                    1 => 1,
                    -1 => -1,
                    other => return Err(Error::Parse(format!("{path}.sign: expected 1 or -1, got {other}"))),
                },
            };
            Ok((b, s))
        })
        .collect::<Result<Vec<_>>>()?;
    let k: u64 = req.parsed("k")?;
    let report = period_from_witnesses(&mono, k, &witness)?;
    Ok(Outcome::plain(json!({
        "k": k.to_string(),
        "m": report.m.to_string(),
        "l": report.l.to_string(),
        "per_degree": report.per_degree.iter().enumerate().map(|(j, (m, l))| json!({
            "degree": j.to_string(),
            "m": m.to_string(),
            "l": l.to_string(),
        })).collect::<Vec<_>>(),
    })))
}

fn hp_minus_cmd(req: &Request) -> Result<Outcome> {
    let p: u64 = req.parsed("p")?;
    let bound = prime_bound()?;
    let h = hp_minus(p, bound)?;
    let odd = cck_core::factor::odd_prime_factor(h.magnitude());
    Ok(Outcome::plain(json!({
        "p": p.to_string(),
        "h_minus": h.to_string(),
        "h_minus_odd_factor": odd.map(|f| f.to_string()),
        "prime_bound": bound.to_string(),
    })))
}

fn gate(req: &Request) -> Result<Outcome> {
    let p: u64 = req.parsed("p")?;
    let bound = prime_bound()?;
    let mut warnings = Vec::new();
    let table = match req.path("fixture") {
        Some(path) => class_numbers::load_hplus_table(&path)?,
        None => {
            warnings.push("no --fixture given; every h+ entry is unknown".to_string());
            Default::default()
        }
    };
    let r = class_number_gate(p, &table, bound)?;
    if let Some(e) = &r.h_plus_entry {
        if e.heuristic {
            warnings.push(format!("h+ for p = {p} is conditional on a heuristic ({})", e.source));
        }
    }
    let gate = match r.gate {
        GateVerdict::True => Value::Bool(true),
        GateVerdict::False => Value::Bool(false),
        GateVerdict::Unknown => Value::String("unknown".into()),
    };
    let h_plus = r.h_plus_entry.as_ref().map(|e| {
        json!({
            "value": e.value().to_string(),
            "factors": e.factors.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
            "source": e.source,
            "heuristic": e.heuristic,
        })
    });
    Ok(Outcome {
        result: json!({
            "p": p.to_string(),
            "h_minus": r.h_minus.to_string(),
            "h_minus_odd_factor": r.h_minus_odd_factor.map(|f| f.to_string()),
            "h_plus": h_plus,
            "h_plus_odd_factor": r.h_plus_odd_factor.map(|f| f.to_string()),
            "gate": gate,
        }),
        warnings,
    })
}
