//! JSON parsing and serialization for the CLI.
//!
//! Rationals travel as "a/b" strings (or plain integers) so the exact path
//! never round-trips through floats; float literals are rejected wherever a
//! rational is required.

use crate::coapprox::{DefectReport, NecessaryReport};
use crate::faces::{FaceDescriptor, Subspace};
use crate::orthogonality::{Certificate, Interval, Verdict};
use crate::scalar::Rat;
use crate::spaces::SpaceSpec;
use crate::{Error, Result};
use nalgebra::DMatrix;
use num_traits::One;
use serde_json::{json, Value};
use std::str::FromStr;

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

pub fn parse_rat(v: &Value) -> Result<Rat> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rat::from_integer(i.into()))
            } else {
                Err(bad(format!("float literal {n} not allowed on the exact path; use \"a/b\"")))
            }
        }
        Value::String(s) => {
            Rat::from_str(s).map_err(|_| bad(format!("cannot parse rational {s:?}")))
        }
        other => Err(bad(format!("expected rational, got {other}"))),
    }
}

pub fn rat_json(r: &Rat) -> Value {
    if r.denom().is_one() {
        Value::String(r.numer().to_string())
    } else {
        Value::String(format!("{}/{}", r.numer(), r.denom()))
    }
}

pub fn parse_rat_vec(v: &Value) -> Result<Vec<Rat>> {
    v.as_array()
        .ok_or_else(|| bad("expected an array of rationals"))?
        .iter()
        .map(parse_rat)
        .collect()
}

pub fn rat_vec_json(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat_json).collect())
}

pub fn parse_f64(v: &Value) -> Result<f64> {
    match v {
        Value::Number(n) => n.as_f64().ok_or_else(|| bad("bad number")),
        Value::String(s) => {
            let r = Rat::from_str(s).map_err(|_| bad(format!("cannot parse number {s:?}")))?;
            Ok(crate::scalar::rat_to_f64(&r))
        }
        other => Err(bad(format!("expected number, got {other}"))),
    }
}

pub fn parse_f64_vec(v: &Value) -> Result<Vec<f64>> {
    v.as_array()
        .ok_or_else(|| bad("expected an array of numbers"))?
        .iter()
        .map(parse_f64)
        .collect()
}

pub fn parse_space_spec(v: &Value) -> Result<SpaceSpec> {
    let obj = v.as_object().ok_or_else(|| bad("space must be an object"))?;
    let ty = obj
        .get("type")
        .and_then(Value::as_str)
        .ok_or_else(|| bad("space.type missing"))?;
    let dim = || -> Result<usize> {
        obj.get("dim")
            .and_then(Value::as_u64)
            .map(|d| d as usize)
            .ok_or_else(|| bad("space.dim missing"))
    };
    match ty {
        "linf" => Ok(SpaceSpec::linf(dim()?)),
        "l1" => Ok(SpaceSpec::l1(dim()?)),
        "lp" => {
            let p = obj.get("p").map(parse_f64).transpose()?.ok_or_else(|| bad("space.p missing"))?;
            Ok(SpaceSpec::lp(dim()?, p))
        }
        "polyhedral" => {
            let verts = obj
                .get("vertices")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("space.vertices missing"))?
                .iter()
                .map(parse_rat_vec)
                .collect::<Result<Vec<_>>>()?;
            Ok(SpaceSpec::polyhedral(verts))
        }
        "sup_product" => {
            let base = parse_space_spec(
                obj.get("base").ok_or_else(|| bad("space.base missing"))?,
            )?;
            let copies = obj
                .get("copies")
                .and_then(Value::as_u64)
                .ok_or_else(|| bad("space.copies missing"))? as usize;
            Ok(SpaceSpec::sup_product(base, copies))
        }
        other => Err(bad(format!("unknown space type {other:?}"))),
    }
}

pub fn space_spec_json(spec: &SpaceSpec) -> Value {
    match spec {
        SpaceSpec::LInf { n } => json!({"type": "linf", "dim": n}),
        SpaceSpec::L1 { n } => json!({"type": "l1", "dim": n}),
        SpaceSpec::Lp { n, p } => json!({"type": "lp", "dim": n, "p": p}),
        SpaceSpec::Polyhedral { vertices } => json!({
            "type": "polyhedral",
            "vertices": vertices.iter().map(|v| rat_vec_json(v)).collect::<Vec<_>>(),
        }),
        SpaceSpec::SupProduct { base, copies } => json!({
            "type": "sup_product",
            "base": space_spec_json(base),
            "copies": copies,
        }),
    }
}

pub fn parse_subspace(v: &Value) -> Result<Subspace> {
    let basis = v
        .get("basis")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("subspace.basis missing"))?
        .iter()
        .map(parse_rat_vec)
        .collect::<Result<Vec<_>>>()?;
    Subspace::new(basis)
}

pub fn subspace_json(y: &Subspace) -> Value {
    json!({"basis": y.basis().iter().map(|c| rat_vec_json(c)).collect::<Vec<_>>()})
}

pub fn parse_matrix(v: &Value) -> Result<DMatrix<f64>> {
    let rows = v
        .as_array()
        .ok_or_else(|| bad("matrix must be an array of rows"))?
        .iter()
        .map(parse_f64_vec)
        .collect::<Result<Vec<_>>>()?;
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    if nrows == 0 || ncols == 0 || rows.iter().any(|r| r.len() != ncols) {
        return Err(bad("matrix rows must be nonempty and equally long"));
    }
    Ok(DMatrix::from_fn(nrows, ncols, |r, c| rows[r][c]))
}

pub fn matrix_json(m: &DMatrix<f64>) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|r| Value::Array((0..m.ncols()).map(|c| json!(m[(r, c)])).collect()))
            .collect(),
    )
}

fn interval_json_with<S>(iv: &Interval<S>, num: &dyn Fn(&S) -> Value) -> Value {
    json!({"lo": num(&iv.lo), "hi": num(&iv.hi)})
}

fn certificate_json_with<S>(c: &Certificate<S>, num: &dyn Fn(&S) -> Value) -> Value {
    match c {
        Certificate::SupportingFunctional { functional, value } => json!({
            "kind": "supporting_functional",
            "functional": functional.iter().map(num).collect::<Vec<_>>(),
            "value": num(value),
        }),
        Certificate::Direction(z) => {
            json!({"kind": "direction", "vector": z.iter().map(num).collect::<Vec<_>>()})
        }
        Certificate::ViolatingLambda { lambda, norm_value } => {
            json!({"kind": "violating_lambda", "lambda": lambda, "norm_value": norm_value})
        }
        Certificate::Witness(w) => {
            json!({"kind": "witness", "vector": w.iter().map(num).collect::<Vec<_>>()})
        }
        Certificate::ViolatingFacet { facet_index, functional, interval } => json!({
            "kind": "violating_facet",
            "facet_index": facet_index,
            "functional": functional.iter().map(num).collect::<Vec<_>>(),
            "interval": interval_json_with(interval, num),
        }),
        Certificate::FacetPair { first, second } => {
            json!({"kind": "facet_pair", "first": first, "second": second})
        }
        Certificate::Functionals(fs) => json!({
            "kind": "functionals",
            "functionals": fs
                .iter()
                .map(|f| f.iter().map(num).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        }),
        Certificate::None => Value::Null,
    }
}

/// Coarse method label for reports.
fn coarse_method(detail: &str) -> &'static str {
    if detail.contains("oracle") {
        "oracle"
    } else if matches!(detail, "lp-closed-form" | "omega-interval" | "bs-singleton") {
        "formula"
    } else {
        "exact-lp"
    }
}

fn verdict_json_with<S>(v: &Verdict<S>, num: &dyn Fn(&S) -> Value) -> Value {
    json!({
        "decision": v.decision,
        "certificate": certificate_json_with(&v.certificate, num),
        "method": coarse_method(v.method),
        "detail": v.method,
    })
}

pub fn verdict_json_rat(v: &Verdict<Rat>) -> Value {
    verdict_json_with(v, &rat_json)
}

pub fn verdict_json_f64(v: &Verdict<f64>) -> Value {
    verdict_json_with(v, &|x: &f64| json!(x))
}

pub fn interval_json_rat(iv: &Interval<Rat>) -> Value {
    interval_json_with(iv, &rat_json)
}

pub fn interval_json_f64(iv: &Interval<f64>) -> Value {
    interval_json_with(iv, &|x: &f64| json!(x))
}

pub fn defect_json(r: &DefectReport) -> Value {
    json!({
        "delta": rat_json(&r.delta),
        "minimizing_direction": rat_vec_json(&r.minimizing_direction),
        "per_facet_distances": r.per_facet_distances.iter().map(rat_json).collect::<Vec<_>>(),
    })
}

pub fn necessary_json(r: &NecessaryReport) -> Value {
    json!({
        "maximal_faces_met": r.maximal_faces_met,
        "traces_distinct": r.traces_distinct,
        "shared_functionals": r.shared_functionals,
        "failed": r.failed,
    })
}

pub fn faces_json(faces: &[FaceDescriptor]) -> Value {
    Value::Array(
        faces
            .iter()
            .map(|f| {
                json!({
                    "functional": rat_vec_json(&f.supporting_functional),
                    "vertex_indices": f.vertex_indices,
                    "dimension": f.dimension,
                })
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};

    #[test]
    fn rational_round_trip() {
        for r in [rat(0), rat(-7), ratio(3, 4), ratio(-22, 7)] {
            assert_eq!(parse_rat(&rat_json(&r)).unwrap(), r);
        }
        assert_eq!(parse_rat(&json!(5)).unwrap(), rat(5));
        assert!(parse_rat(&json!(0.5)).is_err());
        assert!(parse_rat(&json!("x/y")).is_err());
    }

    #[test]
    fn space_round_trip() {
        let specs = [
            SpaceSpec::linf(3),
            SpaceSpec::l1(2),
            SpaceSpec::lp(3, 3.0),
            SpaceSpec::polyhedral(vec![vec![rat(1), rat(0)], vec![rat(-1), rat(0)], vec![rat(0), rat(1)], vec![rat(0), rat(-1)]]),
            SpaceSpec::sup_product(SpaceSpec::linf(2), 2),
        ];
        for s in specs {
            assert_eq!(parse_space_spec(&space_spec_json(&s)).unwrap(), s);
        }
    }

    #[test]
    fn subspace_and_matrix_parsing() {
        let y = parse_subspace(&json!({"basis": [["3","0","2"],["0","3","2"]]})).unwrap();
        assert_eq!(y.dim(), 2);
        assert_eq!(subspace_json(&y), json!({"basis": [["3","0","2"],["0","3","2"]]}));
        let m = parse_matrix(&json!([[2.0, 0.0], [0.0, 1.0]])).unwrap();
        assert_eq!(m[(0, 0)], 2.0);
        assert!(parse_matrix(&json!([[1.0], [2.0, 3.0]])).is_err());
    }
}
