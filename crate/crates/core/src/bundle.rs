//! JSON bundle format for algebras, operators, functionals and maps.
//!
//! Serialization is canonical: keys sorted, entries in lexicographic tuple
//! order, rationals in lowest terms, residues reduced. Parsing a canonical
//! file and writing it back reproduces it byte for byte.

use std::collections::BTreeMap;
use std::collections::HashSet;

use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::algebra::{
    increasing_part, skew_symmetrize, HomAlgebra, LinearFunctional, OperatorKind, StructureTensor,
    WeightedOperator, MAX_ARITY, MAX_DIM,
};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::Matrix;
use crate::report::AxiomReport;

#[derive(Clone, Debug)]
pub struct BundleAlgebra {
    pub name: String,
    pub algebra: HomAlgebra,
    /// Stored as increasing tuples only and skew-completed on load.
    pub skew_complete: bool,
}

#[derive(Clone, Debug)]
pub struct AlgebraBundle {
    pub field: FieldSpec,
    pub algebras: Vec<BundleAlgebra>,
    pub operators: Vec<(String, WeightedOperator)>,
    pub functionals: Vec<(String, LinearFunctional)>,
    pub maps: Vec<(String, Matrix)>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawField {
    Name(String),
    Prime {
        #[serde(rename = "Fp")]
        fp: u64,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    args: Vec<usize>,
    value: BTreeMap<String, Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    name: String,
    dim: usize,
    arity: usize,
    twist: Option<Vec<Vec<Value>>>,
    #[serde(default)]
    bracket: Vec<RawEntry>,
    #[serde(default)]
    skew_complete: bool,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawKind {
    Name(String),
    AlphaK {
        #[serde(rename = "alpha-k")]
        k: u32,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOperator {
    name: String,
    matrix: Vec<Vec<Value>>,
    weight: Option<Value>,
    kind: RawKind,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFunctional {
    name: String,
    covector: Vec<Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMap {
    name: String,
    matrix: Vec<Vec<Value>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBundle {
    field: Option<RawField>,
    #[serde(default)]
    algebras: Vec<RawAlgebra>,
    #[serde(default)]
    operators: Vec<RawOperator>,
    #[serde(default)]
    functionals: Vec<RawFunctional>,
    #[serde(default)]
    maps: Vec<RawMap>,
}

fn semantic(context: &str, e: impl std::fmt::Display) -> Error {
    Error::Semantic(format!("{context}: {e}"))
}

fn parse_scalar(field: FieldSpec, v: &Value, context: &str) -> Result<Scalar> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        other => return Err(semantic(context, format!("expected a coefficient, found {other}"))),
    };
    Scalar::parse(field, &text).map_err(|e| semantic(context, e))
}

fn parse_matrix(field: FieldSpec, rows: &[Vec<Value>], context: &str) -> Result<Matrix> {
    let n = rows.len();
    if n == 0 || n > MAX_DIM {
        return Err(semantic(context, format!("matrix size {n} outside 1..={MAX_DIM}")));
    }
    let mut parsed = Vec::with_capacity(n);
    for row in rows {
        if row.len() != n {
            return Err(semantic(context, "matrix must be square"));
        }
        parsed.push(
            row.iter()
                .map(|v| parse_scalar(field, v, context))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Matrix::from_rows(field, parsed).map_err(|e| semantic(context, e))
}

fn parse_field(raw: Option<RawField>) -> Result<FieldSpec> {
    match raw {
        None => Ok(FieldSpec::Rationals),
        Some(RawField::Name(s)) if s == "Q" => Ok(FieldSpec::Rationals),
        Some(RawField::Name(s)) => Err(semantic("field", format!("unknown field {s:?}"))),
        Some(RawField::Prime { fp }) => FieldSpec::prime(fp).map_err(|e| semantic("field", e)),
    }
}

fn parse_kind(raw: RawKind, context: &str) -> Result<OperatorKind> {
    match raw {
        RawKind::Name(s) if s == "rota-baxter" => Ok(OperatorKind::RotaBaxter),
        RawKind::Name(s) if s == "derivation" => Ok(OperatorKind::Derivation),
        RawKind::Name(s) => Err(semantic(context, format!("unknown operator kind {s:?}"))),
        RawKind::AlphaK { k } => Ok(OperatorKind::AlphaKDerivation(k)),
    }
}

fn parse_algebra(field: FieldSpec, raw: RawAlgebra) -> Result<BundleAlgebra> {
    let ctx = format!("algebra {:?}", raw.name);
    if raw.dim == 0 || raw.dim > MAX_DIM || !(2..=MAX_ARITY).contains(&raw.arity) {
        return Err(semantic(&ctx, format!("unsupported shape dim {} arity {}", raw.dim, raw.arity)));
    }
    let mut tensor = StructureTensor::zero(field, raw.dim, raw.arity).map_err(|e| semantic(&ctx, e))?;
    let mut seen = HashSet::new();
    for entry in raw.bracket {
        if entry.args.len() != raw.arity || entry.args.iter().any(|&i| i == 0 || i > raw.dim) {
            return Err(semantic(&ctx, format!("bad argument tuple {:?}", entry.args)));
        }
        if !seen.insert(entry.args.clone()) {
            return Err(semantic(&ctx, format!("duplicate argument tuple {:?}", entry.args)));
        }
        let mut value = field.zero_vec(raw.dim);
        for (k, c) in &entry.value {
            let idx: usize = k
                .parse()
                .ok()
                .filter(|&i| i >= 1 && i <= raw.dim)
                .ok_or_else(|| semantic(&ctx, format!("bad basis index {k:?}")))?;
            value[idx - 1] = parse_scalar(field, c, &ctx)?;
        }
        let zero_based: Vec<usize> = entry.args.iter().map(|i| i - 1).collect();
        tensor.set(&zero_based, value).map_err(|e| semantic(&ctx, e))?;
    }
    if raw.skew_complete {
        tensor = skew_symmetrize(&tensor).map_err(|e| semantic(&ctx, e))?;
    }
    let twist = match &raw.twist {
        Some(rows) => parse_matrix(field, rows, &ctx)?,
        None => Matrix::identity(field, raw.dim),
    };
    let algebra = HomAlgebra::new(tensor, twist)
        .map_err(|e| semantic(&ctx, e))?
        .named(raw.name.clone());
    Ok(BundleAlgebra {
        name: raw.name,
        algebra,
        skew_complete: raw.skew_complete,
    })
}

fn ensure_unique<'a>(kind: &str, names: impl Iterator<Item = &'a String>) -> Result<()> {
    let mut seen = HashSet::new();
    for n in names {
        if !seen.insert(n) {
            return Err(Error::Semantic(format!("duplicate {kind} name {n:?}")));
        }
    }
    Ok(())
}

pub fn parse_bundle(text: &str) -> Result<AlgebraBundle> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let raw: RawBundle = serde_json::from_value(value).map_err(|e| semantic("schema", e))?;
    let field = parse_field(raw.field)?;
    let algebras = raw
        .algebras
        .into_iter()
        .map(|a| parse_algebra(field, a))
        .collect::<Result<Vec<_>>>()?;
    let mut operators = Vec::new();
    for o in raw.operators {
        let ctx = format!("operator {:?}", o.name);
        let matrix = parse_matrix(field, &o.matrix, &ctx)?;
        let weight = match &o.weight {
            Some(w) => parse_scalar(field, w, &ctx)?,
            None => field.zero(),
        };
        let kind = parse_kind(o.kind, &ctx)?;
        let op = WeightedOperator::new(matrix, weight, kind).map_err(|e| semantic(&ctx, e))?;
        operators.push((o.name, op));
    }
    let mut functionals = Vec::new();
    for f in raw.functionals {
        let ctx = format!("functional {:?}", f.name);
        if f.covector.is_empty() || f.covector.len() > MAX_DIM {
            return Err(semantic(&ctx, "covector length outside the supported range"));
        }
        let cov = f
            .covector
            .iter()
            .map(|v| parse_scalar(field, v, &ctx))
            .collect::<Result<Vec<_>>>()?;
        functionals.push((f.name, LinearFunctional::new(field, cov).map_err(|e| semantic(&ctx, e))?));
    }
    let mut maps = Vec::new();
    for m in raw.maps {
        let ctx = format!("map {:?}", m.name);
        maps.push((m.name.clone(), parse_matrix(field, &m.matrix, &ctx)?));
    }
    ensure_unique("algebra", algebras.iter().map(|a| &a.name))?;
    ensure_unique("operator", operators.iter().map(|(n, _)| n))?;
    ensure_unique("functional", functionals.iter().map(|(n, _)| n))?;
    ensure_unique("map", maps.iter().map(|(n, _)| n))?;
    Ok(AlgebraBundle {
        field,
        algebras,
        operators,
        functionals,
        maps,
    })
}

pub fn scalar_json(s: &Scalar) -> Value {
    match s.residue() {
        Some(r) => json!(r),
        None => json!(s.to_string()),
    }
}

pub fn vector_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_json).collect())
}

/// Sparse `{"k": coeff}` form with 1-based keys.
pub fn sparse_json(v: &[Scalar]) -> Value {
    let mut m = Map::new();
    for (k, c) in v.iter().enumerate() {
        if !c.is_zero() {
            m.insert((k + 1).to_string(), scalar_json(c));
        }
    }
    Value::Object(m)
}

pub fn matrix_json(m: &Matrix) -> Value {
    Value::Array(m.row_vecs().iter().map(|r| vector_json(r)).collect())
}

fn field_json(f: FieldSpec) -> Value {
    match f {
        FieldSpec::Rationals => json!("Q"),
        FieldSpec::PrimeField(p) => json!({ "Fp": p }),
    }
}

fn kind_json(k: &OperatorKind) -> Value {
    match k {
        OperatorKind::AlphaKDerivation(k) => json!({ "alpha-k": k }),
        other => json!(other.to_string()),
    }
}

pub fn algebra_json(name: &str, a: &HomAlgebra, skew_complete: bool) -> Value {
    let stored = if skew_complete {
        increasing_part(a.tensor())
    } else {
        a.tensor().clone()
    };
    let bracket: Vec<Value> = stored
        .nonzero_entries()
        .into_iter()
        .map(|(t, v)| {
            json!({
                "args": t.iter().map(|i| i + 1).collect::<Vec<_>>(),
                "value": sparse_json(&v),
            })
        })
        .collect();
    json!({
        "name": name,
        "dim": a.dim(),
        "arity": a.arity(),
        "twist": matrix_json(a.twist()),
        "bracket": bracket,
        "skew_complete": skew_complete,
    })
}

pub fn operator_json(name: &str, op: &WeightedOperator) -> Value {
    json!({
        "name": name,
        "matrix": matrix_json(&op.matrix),
        "weight": scalar_json(&op.weight),
        "kind": kind_json(&op.kind),
    })
}

pub fn functional_json(name: &str, f: &LinearFunctional) -> Value {
    json!({ "name": name, "covector": vector_json(f.covector()) })
}

/// Pretty JSON with a trailing newline; keys come out sorted.
pub fn canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

impl AlgebraBundle {
    pub fn empty(field: FieldSpec) -> Self {
        AlgebraBundle {
            field,
            algebras: Vec::new(),
            operators: Vec::new(),
            functionals: Vec::new(),
            maps: Vec::new(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "field": field_json(self.field),
            "algebras": self.algebras.iter()
                .map(|a| algebra_json(&a.name, &a.algebra, a.skew_complete)).collect::<Vec<_>>(),
            "operators": self.operators.iter()
                .map(|(n, o)| operator_json(n, o)).collect::<Vec<_>>(),
            "functionals": self.functionals.iter()
                .map(|(n, f)| functional_json(n, f)).collect::<Vec<_>>(),
            "maps": self.maps.iter()
                .map(|(n, m)| json!({ "name": n, "matrix": matrix_json(m) })).collect::<Vec<_>>(),
        })
    }

    pub fn to_canonical_string(&self) -> String {
        canonical_string(&self.to_json())
    }

    fn lookup<'a, T>(items: &'a [(String, T)], kind: &str, name: &str) -> Result<&'a T> {
        items
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v)
            .ok_or_else(|| Error::Semantic(format!("no {kind} named {name:?}")))
    }

    pub fn algebra(&self, name: &str) -> Result<&HomAlgebra> {
        self.algebras
            .iter()
            .find(|a| a.name == name)
            .map(|a| &a.algebra)
            .ok_or_else(|| Error::Semantic(format!("no algebra named {name:?}")))
    }

    pub fn operator(&self, name: &str) -> Result<&WeightedOperator> {
        Self::lookup(&self.operators, "operator", name)
    }

    pub fn functional(&self, name: &str) -> Result<&LinearFunctional> {
        Self::lookup(&self.functionals, "functional", name)
    }

    pub fn map(&self, name: &str) -> Result<&Matrix> {
        Self::lookup(&self.maps, "map", name)
    }

    /// Adds an algebra, choosing the compact skew form when it applies.
    pub fn push_algebra(&mut self, name: impl Into<String>, algebra: HomAlgebra) {
        let name = name.into();
        let skew = crate::algebra::is_skew_symmetric(algebra.tensor()).pass && !algebra.tensor().is_zero();
        self.algebras.push(BundleAlgebra {
            algebra: algebra.named(name.clone()),
            name,
            skew_complete: skew,
        });
    }
}

pub fn report_json(r: &AxiomReport) -> Value {
    let violations: Vec<Value> = r
        .violations
        .iter()
        .map(|v| {
            let mut m = Map::new();
            m.insert("tuple".into(), json!(v.tuple));
            m.insert("lhs".into(), vector_json(&v.lhs));
            m.insert("rhs".into(), vector_json(&v.rhs));
            if let Some(p) = &v.part {
                m.insert("part".into(), json!(p));
            }
            Value::Object(m)
        })
        .collect();
    json!({
        "axiom": r.axiom,
        "identity": r.identity,
        "pass": r.pass,
        "checked": r.checked,
        "failures": r.failures,
        "violations": violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const H3: &str = r#"{"field": "Q", "algebras": [{"name": "H3", "dim": 3, "arity": 2,
        "bracket": [{"args": [1, 2], "value": {"3": "1"}}], "skew_complete": true}]}"#;

    #[test]
    fn empty_document_is_empty_bundle() {
        let b = parse_bundle("{}").unwrap();
        assert_eq!(b.field, FieldSpec::Rationals);
        assert!(b.algebras.is_empty() && b.operators.is_empty());
    }

    #[test]
    fn heisenberg_is_skew_completed() {
        let b = parse_bundle(H3).unwrap();
        let t = b.algebra("H3").unwrap().tensor();
        let q = FieldSpec::Rationals;
        assert_eq!(t.get(&[0, 1]), q.basis_vec(3, 2).as_slice());
        assert_eq!(t.get(&[1, 0]), crate::field::vector::neg(&q.basis_vec(3, 2)).as_slice());
    }

    #[test]
    fn canonical_round_trip() {
        let text = parse_bundle(H3).unwrap().to_canonical_string();
        assert_eq!(parse_bundle(&text).unwrap().to_canonical_string(), text);
    }

    #[test]
    fn zero_denominator_is_semantic() {
        let doc = r#"{"functionals": [{"name": "f", "covector": ["1/0", "1"]}]}"#;
        assert!(matches!(parse_bundle(doc), Err(Error::Semantic(_))));
    }

    #[test]
    fn syntax_error_has_position() {
        match parse_bundle("{\n  \"field\": \"Q\",\n  oops\n}") {
            Err(Error::Syntax { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn fractions_are_canonicalized_and_moduli_checked() {
        let doc = r#"{"functionals": [{"name": "f", "covector": ["2/4", "-6/3"]}]}"#;
        let s = parse_bundle(doc).unwrap().to_canonical_string();
        assert!(s.contains("\"1/2\"") && s.contains("\"-2\""));
        assert!(matches!(parse_bundle(r#"{"field": {"Fp": 4}}"#), Err(Error::Semantic(_))));
    }
}
