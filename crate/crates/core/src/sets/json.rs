//! The set-description format read by every verification command.
//!
//! ```json
//! {"kind": "vpolytope", "dim": 2, "vertices": [[0, 0], ["1/2", 1], [0, 1]]}
//! {"kind": "grid", "dim": 1, "cell": "1/2", "origin": ["1/4"], "cells": [[0], [1]]}
//! {"kind": "lattice", "dim": 2, "points": [[0, 0], [1, 2]]}
//! ```
//!
//! Scalars are JSON numbers or strings holding an integer, decimal or `p/q`.
//! Polytopes accept an optional `"mode": "exact" | "float"` (default exact).
//! A grid without `origin` uses the aligned lattice where cell `i` spans
//! `[i h, (i + 1) h]`.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::scalar::{self, Q};
use crate::sets::{Cell, GridSet, LatticeSet, Mode, VPolytope, Vector};

#[derive(Debug, Clone, PartialEq)]
pub enum SetDescription {
    VPolytope(VPolytope),
    Grid(GridSet),
    Lattice(LatticeSet),
}

impl SetDescription {
    pub fn kind(&self) -> &'static str {
        match self {
            SetDescription::VPolytope(_) => "vpolytope",
            SetDescription::Grid(_) => "grid",
            SetDescription::Lattice(_) => "lattice",
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            SetDescription::VPolytope(p) => p.dim(),
            SetDescription::Grid(g) => g.dim(),
            SetDescription::Lattice(l) => l.dim(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_value(&value)
    }

    pub fn from_value(value: &Value) -> Result<Self> {
        let obj = value.as_object().ok_or_else(|| parse_err("top level must be an object"))?;
        let kind = obj.get("kind").and_then(Value::as_str).ok_or_else(|| parse_err("missing string field \"kind\""))?;
        let dim = obj
            .get("dim")
            .and_then(Value::as_u64)
            .filter(|d| *d > 0)
            .ok_or_else(|| parse_err("\"dim\" must be a positive integer"))? as usize;
        match kind {
            "vpolytope" => {
                let mode = match obj.get("mode").map(|m| m.as_str()) {
                    None | Some(Some("exact")) => Mode::Exact,
                    Some(Some("float")) => Mode::Float,
                    _ => return Err(parse_err("\"mode\" must be \"exact\" or \"float\"")),
                };
                let rows = array(obj, "vertices")?;
                let vertices = rows
                    .iter()
                    .map(|row| scalar_row(row, dim).map(Vector))
                    .collect::<Result<Vec<_>>>()?;
                if vertices.is_empty() {
                    return Err(parse_err("\"vertices\" must be nonempty"));
                }
                Ok(SetDescription::VPolytope(VPolytope::with_mode(mode, vertices)?))
            }
            "grid" => {
                let cell = parse_scalar(obj.get("cell").ok_or_else(|| parse_err("missing \"cell\""))?)?;
                let cells = array(obj, "cells")?.iter().map(|c| int_row(c, dim)).collect::<Result<Vec<Cell>>>()?;
                let grid = match obj.get("origin") {
                    None => GridSet::aligned(dim, cell, cells)?,
                    Some(o) => GridSet::new(dim, cell, Vector(scalar_row(o, dim)?), cells)?,
                };
                Ok(SetDescription::Grid(grid))
            }
            "lattice" => {
                let points = array(obj, "points")?.iter().map(|c| int_row(c, dim)).collect::<Result<Vec<_>>>()?;
                Ok(SetDescription::Lattice(LatticeSet::new(dim, points)?))
            }
            other => Err(parse_err(format!("unknown kind {other:?}"))),
        }
    }

    pub fn to_value(&self) -> Value {
        let rationals = |v: &[Q]| Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect());
        let ints = |v: &[i64]| json!(v);
        match self {
            SetDescription::VPolytope(p) => json!({
                "kind": "vpolytope",
                "dim": p.dim(),
                "mode": match p.mode() { Mode::Exact => "exact", Mode::Float => "float" },
                "vertices": p.vertices().iter().map(|v| rationals(v)).collect::<Vec<_>>(),
            }),
            SetDescription::Grid(g) => json!({
                "kind": "grid",
                "dim": g.dim(),
                "cell": g.cell().to_string(),
                "origin": rationals(g.origin()),
                "cells": g.cells().iter().map(|c| ints(c)).collect::<Vec<_>>(),
            }),
            SetDescription::Lattice(l) => json!({
                "kind": "lattice",
                "dim": l.dim(),
                "points": l.points().iter().map(|c| ints(c)).collect::<Vec<_>>(),
            }),
        }
    }
}

impl From<VPolytope> for SetDescription {
    fn from(p: VPolytope) -> Self {
        SetDescription::VPolytope(p)
    }
}

impl From<GridSet> for SetDescription {
    fn from(g: GridSet) -> Self {
        SetDescription::Grid(g)
    }
}

impl From<LatticeSet> for SetDescription {
    fn from(l: LatticeSet) -> Self {
        SetDescription::Lattice(l)
    }
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn array<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Vec<Value>> {
    obj.get(key).and_then(Value::as_array).ok_or_else(|| parse_err(format!("missing array field {key:?}")))
}

fn parse_scalar(v: &Value) -> Result<Q> {
    match v {
        Value::Number(n) => scalar::parse_rational(&n.to_string()),
        Value::String(s) => scalar::parse_rational(s),
        other => Err(parse_err(format!("expected a number or rational string, got {other}"))),
    }
    .map_err(|e| match e {
        Error::Parse(_) => e,
        other => parse_err(other.to_string()),
    })
}

fn scalar_row(v: &Value, dim: usize) -> Result<Vec<Q>> {
    let row = v.as_array().ok_or_else(|| parse_err("coordinates must be an array"))?;
    if row.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: row.len() });
    }
    row.iter().map(parse_scalar).collect()
}

fn int_row(v: &Value, dim: usize) -> Result<Vec<i64>> {
    let row = v.as_array().ok_or_else(|| parse_err("indices must be an array"))?;
    if row.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: row.len() });
    }
    row.iter().map(|x| x.as_i64().ok_or_else(|| parse_err(format!("expected an integer, got {x}")))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, ratio};

    #[test]
    fn polytope_with_mixed_scalars() {
        let d = SetDescription::parse(r#"{"kind":"vpolytope","dim":2,"vertices":[[0,0],["1/2",1],[0.25,"2"]]}"#).unwrap();
        let SetDescription::VPolytope(p) = &d else { panic!() };
        assert_eq!(p.vertices().len(), 3);
        assert!(p.vertices().contains(&Vector(vec![ratio(1, 4), q(2)])));
        assert_eq!(SetDescription::from_value(&d.to_value()).unwrap(), d);
    }

    #[test]
    fn grid_and_lattice_round_trip() {
        let g = SetDescription::parse(r#"{"kind":"grid","dim":1,"cell":"1/2","cells":[[0],[3]]}"#).unwrap();
        let SetDescription::Grid(grid) = &g else { panic!() };
        assert_eq!(grid.measure(), q(1));
        assert_eq!(grid.origin(), &Vector(vec![ratio(1, 4)]));
        assert_eq!(SetDescription::from_value(&g.to_value()).unwrap(), g);
        let l = SetDescription::parse(r#"{"kind":"lattice","dim":2,"points":[[0,0],[1,2],[1,2]]}"#).unwrap();
        assert_eq!(l.dim(), 2);
        let SetDescription::Lattice(lat) = &l else { panic!() };
        assert_eq!(lat.len(), 2);
        assert_eq!(SetDescription::from_value(&l.to_value()).unwrap(), l);
    }

    #[test]
    fn malformed_inputs_are_parse_errors() {
        for text in [
            "not json",
            "[]",
            r#"{"kind":"vpolytope","dim":2,"vertices":[]}"#,
            r#"{"kind":"vpolytope","dim":0,"vertices":[[]]}"#,
            r#"{"kind":"vpolytope","dim":2,"vertices":[["a",0]]}"#,
            r#"{"kind":"blob","dim":1}"#,
            r#"{"kind":"grid","dim":1,"cells":[[0]]}"#,
            r#"{"kind":"lattice","dim":1,"points":[[0.5]]}"#,
        ] {
            assert!(SetDescription::parse(text).is_err(), "{text}");
        }
        assert!(matches!(
            SetDescription::parse(r#"{"kind":"lattice","dim":2,"points":[[1]]}"#),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
