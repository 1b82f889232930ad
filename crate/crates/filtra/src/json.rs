//! JSON interchange. Scalars are strings (`"n"`, `"n/d"` or a residue),
//! dimensions and indices are plain integers, and every map keyed by a degree
//! uses the decimal string of that degree. Objects are written with sorted
//! keys, so `encode(decode(encode(v)))` reproduces `encode(v)` byte for byte.

use std::collections::BTreeMap;

use filtra_core::chain::{ChainComplex, ChainMap};
use filtra_core::exactlin::{Field, Matrix};
use filtra_core::filtalg::{FilteredAlgebra, GradedAlgebra};
use filtra_core::graded::GradedObject;
use filtra_core::sequence::{Sequence, SequenceMap};
use filtra_core::specseq::SpectralSequencePage;
use serde_json::{json, Map, Value};

#[derive(Debug, thiserror::Error)]
pub enum DecodeError {
    #[error("malformed JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("{0}")]
    Schema(String),
    #[error(transparent)]
    Invariant(#[from] filtra_core::Error),
}

type Result<T> = std::result::Result<T, DecodeError>;

fn schema<T>(msg: impl Into<String>) -> Result<T> {
    Err(DecodeError::Schema(msg.into()))
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| DecodeError::Schema(format!("missing key {key:?}")))
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| DecodeError::Schema(format!("{what} must be an object")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| DecodeError::Schema(format!("{what} must be an array")))
}

fn integer(v: &Value, what: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| DecodeError::Schema(format!("{what} must be an integer")))
}

fn degree(key: &str) -> Result<i64> {
    key.parse().or_else(|_| schema(format!("degree key {key:?} is not an integer")))
}

pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

pub fn parse(text: &str) -> Result<Value> {
    Ok(serde_json::from_str(text)?)
}

pub fn field_to_json(f: Field) -> Value {
    match f {
        Field::Rational => json!({"kind": "rational"}),
        Field::Prime(p) => json!({"kind": "prime", "p": p}),
    }
}

pub fn field_from_json(v: &Value) -> Result<Field> {
    match get(v, "kind")?.as_str() {
        Some("rational") => Ok(Field::Rational),
        Some("prime") => {
            let p = integer(get(v, "p")?, "p")?;
            let p = u32::try_from(p).or_else(|_| schema(format!("modulus {p} out of range")))?;
            Ok(Field::prime(p)?)
        }
        _ => schema("field kind must be \"rational\" or \"prime\""),
    }
}

/// Rows of scalar strings.
pub fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|r| m.row(r).iter().map(|s| Value::String(s.to_string())).collect()).collect())
}

/// A `rows × cols` matrix; the shape comes from context so empty matrices
/// need no annotation.
pub fn matrix_from_json(v: &Value, field: Field, rows: usize, cols: usize) -> Result<Matrix> {
    let given = array(v, "matrix")?;
    if given.len() != rows {
        return schema(format!("matrix has {} rows, expected {rows}", given.len()));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for row in given {
        let row = array(row, "matrix row")?;
        if row.len() != cols {
            return schema(format!("matrix row has {} entries, expected {cols}", row.len()));
        }
        for e in row {
            let s = e.as_str().ok_or_else(|| DecodeError::Schema("scalars must be strings".into()))?;
            data.push(field.parse_scalar(s)?);
        }
    }
    Ok(Matrix::from_data(field, rows, cols, data)?)
}

pub fn complex_to_json(c: &ChainComplex) -> Value {
    let degrees: Map<String, Value> = c.dims().iter().map(|(k, n)| (k.to_string(), json!(n))).collect();
    let diff: Map<String, Value> = c.differentials().iter().map(|(k, m)| (k.to_string(), matrix_to_json(m))).collect();
    json!({"field": field_to_json(c.field()), "degrees": degrees, "differentials": diff})
}

pub fn complex_from_json(v: &Value) -> Result<ChainComplex> {
    let field = field_from_json(get(v, "field")?)?;
    let mut dims = BTreeMap::new();
    for (k, n) in object(get(v, "degrees")?, "degrees")? {
        let n = usize::try_from(integer(n, "dimension")?).or_else(|_| schema("dimensions must be nonnegative"))?;
        dims.insert(degree(k)?, n);
    }
    let mut diff = BTreeMap::new();
    if let Some(ds) = v.get("differentials") {
        for (k, m) in object(ds, "differentials")? {
            let k = degree(k)?;
            let (rows, cols) = (*dims.get(&(k - 1)).unwrap_or(&0), *dims.get(&k).unwrap_or(&0));
            diff.insert(k, matrix_from_json(m, field, rows, cols)?);
        }
    }
    Ok(ChainComplex::new(field, dims, diff)?)
}

/// Nonzero components keyed by degree.
pub fn components_to_json(f: &ChainMap) -> Value {
    Value::Object(f.components().iter().map(|(k, m)| (k.to_string(), matrix_to_json(m))).collect())
}

pub fn chain_map_from_json(v: &Value, source: &ChainComplex, target: &ChainComplex) -> Result<ChainMap> {
    let mut comp = BTreeMap::new();
    for (k, m) in object(v, "chain map")? {
        let k = degree(k)?;
        comp.insert(k, matrix_from_json(m, source.field(), target.dim(k), source.dim(k))?);
    }
    Ok(ChainMap::new(source.clone(), target.clone(), comp)?)
}

pub fn sequence_to_json(x: &Sequence) -> Value {
    let (n, m) = x.window();
    json!({
        "window": [n, m],
        "levels": x.levels().iter().map(complex_to_json).collect::<Vec<_>>(),
        "steps": x.steps().iter().map(components_to_json).collect::<Vec<_>>(),
    })
}

pub fn sequence_from_json(v: &Value) -> Result<Sequence> {
    let window = array(get(v, "window")?, "window")?;
    if window.len() != 2 {
        return schema("window must be [N, M]");
    }
    let (n, m) = (integer(&window[0], "window")?, integer(&window[1], "window")?);
    let levels = array(get(v, "levels")?, "levels")?.iter().map(complex_from_json).collect::<Result<Vec<_>>>()?;
    let steps = array(get(v, "steps")?, "steps")?;
    if steps.len() + 1 != levels.len() {
        return schema(format!("{} levels need {} steps, found {}", levels.len(), levels.len().saturating_sub(1), steps.len()));
    }
    let steps = steps
        .iter()
        .zip(levels.windows(2))
        .map(|(s, w)| chain_map_from_json(s, &w[0], &w[1]))
        .collect::<Result<Vec<_>>>()?;
    Ok(Sequence::new((n, m), levels, steps)?)
}

/// Source and target on the common window, one component per index.
pub fn sequence_map_to_json(f: &SequenceMap) -> Value {
    json!({
        "source": sequence_to_json(f.source()),
        "target": sequence_to_json(f.target()),
        "components": f.components().iter().map(components_to_json).collect::<Vec<_>>(),
    })
}

pub fn sequence_map_from_json(v: &Value) -> Result<SequenceMap> {
    let source = sequence_from_json(get(v, "source")?)?;
    let target = sequence_from_json(get(v, "target")?)?;
    let comps = array(get(v, "components")?, "components")?;
    let lo = source.window().0.min(target.window().0);
    let comps = comps
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let n = lo + i as i64;
            chain_map_from_json(c, source.level(n), target.level(n))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SequenceMap::new(&source, &target, comps)?)
}

pub fn graded_to_json(g: &GradedObject) -> Value {
    let comps: Map<String, Value> = g.components().iter().map(|(n, c)| (n.to_string(), complex_to_json(c))).collect();
    json!({"field": field_to_json(g.field()), "components": comps})
}

pub fn graded_from_json(v: &Value) -> Result<GradedObject> {
    let field = field_from_json(get(v, "field")?)?;
    let mut comps = BTreeMap::new();
    for (n, c) in object(get(v, "components")?, "components")? {
        comps.insert(degree(n)?, complex_from_json(c)?);
    }
    Ok(GradedObject::new(field, comps)?)
}

pub fn page_to_json(page: &SpectralSequencePage) -> Value {
    let cells: Vec<Value> = page
        .nonzero_cells()
        .into_iter()
        .map(|(p, q, dim, rank)| json!({"p": p, "q": q, "dim": dim, "d_rank": rank}))
        .collect();
    json!({"r": page.r(), "cells": cells})
}

fn pair_key(p: i64, q: i64) -> String {
    format!("{p},{q}")
}

fn parse_pair(key: &str) -> Result<(i64, i64)> {
    let bad = || DecodeError::Schema(format!("product key {key:?} must read \"p,q\""));
    let (p, q) = key.split_once(',').ok_or_else(bad)?;
    Ok((p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?))
}

fn products_to_json(mult: &BTreeMap<(i64, i64), ChainMap>) -> Value {
    Value::Object(mult.iter().map(|(&(p, q), m)| (pair_key(p, q), components_to_json(m))).collect())
}

pub fn algebra_to_json(a: &FilteredAlgebra) -> Value {
    json!({
        "carrier": sequence_to_json(a.carrier()),
        "mult": products_to_json(a.products()),
        "unit": components_to_json(a.unit()),
    })
}

pub fn algebra_from_json(v: &Value) -> Result<FilteredAlgebra> {
    let carrier = sequence_from_json(get(v, "carrier")?)?;
    let field = carrier.field();
    let mut mult = BTreeMap::new();
    for (key, m) in object(get(v, "mult")?, "mult")? {
        let (p, q) = parse_pair(key)?;
        let source = filtra_core::chain::tensor(carrier.level(p), carrier.level(q))?;
        mult.insert((p, q), chain_map_from_json(m, &source, carrier.level(p + q))?);
    }
    let unit = chain_map_from_json(get(v, "unit")?, &ChainComplex::unit(field), carrier.level(0))?;
    Ok(FilteredAlgebra::new(carrier, mult, unit)?)
}

pub fn graded_algebra_to_json(a: &GradedAlgebra) -> Value {
    json!({
        "carrier": graded_to_json(a.carrier()),
        "mult": products_to_json(a.products()),
        "unit": components_to_json(a.unit()),
    })
}

/// Any value a file may hold, told apart by its keys.
#[derive(Clone, Debug)]
pub enum Document {
    Complex(ChainComplex),
    Sequence(Sequence),
    SequenceMap(SequenceMap),
    Graded(GradedObject),
    Algebra(FilteredAlgebra),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Complex(_) => "chain complex",
            Document::Sequence(_) => "sequence",
            Document::SequenceMap(_) => "sequence map",
            Document::Graded(_) => "graded object",
            Document::Algebra(_) => "filtered algebra",
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Document::Complex(c) => complex_to_json(c),
            Document::Sequence(x) => sequence_to_json(x),
            Document::SequenceMap(f) => sequence_map_to_json(f),
            Document::Graded(g) => graded_to_json(g),
            Document::Algebra(a) => algebra_to_json(a),
        }
    }
}

pub fn document_from_json(v: &Value) -> Result<Document> {
    let has = |k: &str| v.get(k).is_some();
    if has("carrier") {
        Ok(Document::Algebra(algebra_from_json(v)?))
    } else if has("source") {
        Ok(Document::SequenceMap(sequence_map_from_json(v)?))
    } else if has("window") {
        Ok(Document::Sequence(sequence_from_json(v)?))
    } else if has("degrees") {
        Ok(Document::Complex(complex_from_json(v)?))
    } else if has("components") {
        Ok(Document::Graded(graded_from_json(v)?))
    } else {
        schema("unrecognized document: expected a complex, sequence, sequence map, graded object or algebra")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use filtra_core::filtalg::diff_ops_example;
    use filtra_core::generate::{one_plus_t, t_adic};
    use filtra_core::sequence::gr;

    fn round_trip(v: Value) {
        let text = to_text(&v);
        let back = document_from_json(&parse(&text).unwrap()).unwrap();
        assert_eq!(to_text(&back.to_json()), text);
    }

    #[test]
    fn scalars_are_strings() {
        let m = Matrix::from_i64(Field::Rational, 1, 2, &[1, -3]).scale(&Field::Rational.parse_scalar("1/2").unwrap());
        assert_eq!(matrix_to_json(&m), json!([["1/2", "-3/2"]]));
    }

    #[test]
    fn values_round_trip() {
        let x = t_adic(3, Field::Rational).unwrap();
        round_trip(sequence_to_json(&x));
        round_trip(complex_to_json(x.top()));
        round_trip(graded_to_json(&gr(&x)));
        round_trip(sequence_map_to_json(&one_plus_t(3, Field::Prime(7)).unwrap()));
        round_trip(algebra_to_json(&diff_ops_example(3).unwrap()));
    }

    #[test]
    fn rejects_bad_differentials() {
        let v = json!({
            "field": {"kind": "rational"},
            "degrees": {"0": 1, "1": 1, "2": 1},
            "differentials": {"1": [["1"]], "2": [["1"]]}
        });
        assert!(matches!(complex_from_json(&v), Err(DecodeError::Invariant(filtra_core::Error::DifferentialSquare { .. }))));
    }

    #[test]
    fn rejects_bad_fields() {
        assert!(field_from_json(&json!({"kind": "prime", "p": 6})).is_err());
        assert!(field_from_json(&json!({"kind": "real"})).is_err());
    }
}
