//! JSON formats for algebras and modules.
//!
//! Algebra: `{"p": 3, "basis": [{"name": "E11", "parity": 0}, ...],
//! "brackets": {"i,j": {"name": coeff}}, "zdegrees": [...]}` with 0-based
//! basis indices in the keys. Omitted brackets are zero. Module:
//! `{"dims": [d0, d1], "action": {"name": row-major matrix}}`; omitted
//! actions are zero.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::liesuper::{BasisElement, LieSuperAlgebra, OddPoint, Parity};
use crate::superlinalg::{MatrixFp, PrimeField};
use crate::supermodule::{GradedModule, SuperModule};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    #[serde(default)]
    schema_version: Option<u32>,
    p: u64,
    basis: Vec<BasisEntry>,
    #[serde(default)]
    brackets: BTreeMap<String, BTreeMap<String, i64>>,
    #[serde(default)]
    zdegrees: Option<Vec<i64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BasisEntry {
    name: String,
    parity: ParityRepr,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ParityRepr {
    Bit(u8),
    Word(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModuleFile {
    #[serde(default)]
    schema_version: Option<u32>,
    dims: [usize; 2],
    #[serde(default)]
    action: BTreeMap<String, Vec<Vec<i64>>>,
}

fn check_version(v: Option<u32>) -> Result<()> {
    match v {
        Some(v) if v != SCHEMA_VERSION => Err(Error::input(format!(
            "unsupported schema_version {v} (expected {SCHEMA_VERSION})"
        ))),
        _ => Ok(()),
    }
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::input(format!("invalid {what} file: {e}")))
}

fn parse_pair(key: &str, n: usize) -> Result<(usize, usize)> {
    let bad = || Error::input(format!("bracket key {key:?} is not of the form \"i,j\""));
    let (a, b) = key.split_once(',').ok_or_else(bad)?;
    let i: usize = a.trim().parse().map_err(|_| bad())?;
    let j: usize = b.trim().parse().map_err(|_| bad())?;
    if i >= n || j >= n {
        return Err(Error::input(format!(
            "bracket key {key:?} out of range for a basis of size {n}"
        )));
    }
    Ok((i, j))
}

pub fn algebra_from_json(text: &str) -> Result<LieSuperAlgebra> {
    let file: AlgebraFile = parse_json(text, "algebra")?;
    check_version(file.schema_version)?;
    let field = PrimeField::new(file.p)?;
    let mut seen = HashSet::new();
    let mut basis = Vec::with_capacity(file.basis.len());
    for b in file.basis {
        let parity = match b.parity {
            ParityRepr::Bit(bit) => Parity::from_bit(bit)?,
            ParityRepr::Word(w) => match w.as_str() {
                "even" => Parity::Even,
                "odd" => Parity::Odd,
                _ => return Err(Error::input(format!("unknown parity {w:?}"))),
            },
        };
        if !seen.insert(b.name.clone()) {
            return Err(Error::input(format!("duplicate basis name {:?}", b.name)));
        }
        basis.push(BasisElement::new(b.name, parity));
    }
    let n = basis.len();
    let index: BTreeMap<&str, usize> =
        basis.iter().enumerate().map(|(i, b)| (b.name.as_str(), i)).collect();
    let mut brackets = Vec::with_capacity(file.brackets.len());
    for (key, value) in &file.brackets {
        let pair = parse_pair(key, n)?;
        let mut v = Vec::with_capacity(value.len());
        for (name, &c) in value {
            let k = *index
                .get(name.as_str())
                .ok_or_else(|| Error::input(format!("bracket {key:?} names unknown {name:?}")))?;
            v.push((k, field.reduce(c)));
        }
        brackets.push((pair, v));
    }
    LieSuperAlgebra::new(field, basis, brackets, file.zdegrees)
}

/// Canonical form: basis as given, brackets for `i <= j` in index order,
/// coefficients as residues in basis order.
pub fn algebra_to_json(g: &LieSuperAlgebra) -> Value {
    let basis: Vec<Value> = g
        .basis()
        .iter()
        .map(|b| json!({"name": b.name, "parity": b.parity.bit()}))
        .collect();
    let mut brackets = Map::new();
    for (&(i, j), v) in g.structure_constants() {
        let mut coeffs = Map::new();
        for &(k, c) in v {
            coeffs.insert(g.basis()[k].name.clone(), json!(c));
        }
        brackets.insert(format!("{i},{j}"), Value::Object(coeffs));
    }
    let mut out = Map::new();
    out.insert("schema_version".into(), json!(SCHEMA_VERSION));
    out.insert("p".into(), json!(g.p()));
    out.insert("basis".into(), Value::Array(basis));
    out.insert("brackets".into(), Value::Object(brackets));
    if let Some(z) = g.zdegrees() {
        out.insert("zdegrees".into(), json!(z));
    }
    Value::Object(out)
}

pub fn module_from_json(g: &Arc<LieSuperAlgebra>, text: &str) -> Result<SuperModule> {
    let file: ModuleFile = parse_json(text, "module")?;
    check_version(file.schema_version)?;
    let field = g.field();
    let d = file.dims[0] + file.dims[1];
    let mut action = vec![MatrixFp::zeros(field, d, d); g.dim()];
    for (name, rows) in &file.action {
        let a = g
            .index_of(name)
            .ok_or_else(|| Error::input(format!("action given for unknown basis element {name:?}")))?;
        if rows.len() != d || rows.iter().any(|r| r.len() != d) {
            return Err(Error::dims(format!("action of {name} must be a {d}x{d} matrix")));
        }
        action[a] = MatrixFp::from_rows(field, rows)?;
    }
    SuperModule::new(g.clone(), (file.dims[0], file.dims[1]), action)
}

fn matrix_json(m: &MatrixFp) -> Value {
    json!(m.to_dense_rows())
}

/// Canonical form with an action entry for every basis element, in basis order.
pub fn module_to_json(m: &SuperModule) -> Value {
    let (d0, d1) = m.dims();
    let mut action = Map::new();
    for (b, rho) in m.algebra().basis().iter().zip(m.actions()) {
        action.insert(b.name.clone(), matrix_json(rho));
    }
    json!({"schema_version": SCHEMA_VERSION, "dims": [d0, d1], "action": action})
}

pub fn graded_module_to_json(m: &GradedModule) -> Value {
    let mut v = module_to_json(&m.module);
    v.as_object_mut()
        .expect("object")
        .insert("degrees".into(), json!(m.degrees));
    v
}

/// A list of vectors `[[...], ...]`, each of length `dim`.
pub fn vectors_from_json(text: &str, field: PrimeField, dim: usize) -> Result<Vec<Vec<u32>>> {
    let raw: Vec<Vec<i64>> = parse_json(text, "vector list")?;
    raw.into_iter()
        .map(|v| {
            if v.len() != dim {
                return Err(Error::dims(format!(
                    "vector has {} entries, expected {dim}",
                    v.len()
                )));
            }
            Ok(v.into_iter().map(|a| field.reduce(a)).collect())
        })
        .collect()
}

pub fn point_json(x: &OddPoint) -> Value {
    json!(x.coords())
}

pub fn points_json(xs: &[OddPoint]) -> Value {
    Value::Array(xs.iter().map(point_json).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liesuper::{clifford_assoc_graded, make_gl, validate_algebra};
    use crate::supermodule::natural_module;

    #[test]
    fn algebra_round_trip() {
        for g in [make_gl(2, 1, 5).unwrap(), clifford_assoc_graded(&make_gl(1, 1, 3).unwrap())] {
            let text = serde_json::to_string_pretty(&algebra_to_json(&g)).unwrap();
            let back = algebra_from_json(&text).unwrap();
            assert_eq!(back, g);
            let again = serde_json::to_string_pretty(&algebra_to_json(&back)).unwrap();
            assert_eq!(text, again);
        }
    }

    #[test]
    fn reversed_brackets_and_words() {
        let text = r#"{"p": 3, "basis": [{"name": "z", "parity": "even"},
            {"name": "a", "parity": "odd"}, {"name": "b", "parity": 1}],
            "brackets": {"1,1": {"z": 1}, "2, 1": {"z": -1}, "2,2": {"z": 1}}}"#;
        let g = algebra_from_json(text).unwrap();
        assert!(validate_algebra(&g).is_valid());
        assert_eq!(g.basis_bracket(1, 2), &vec![(0, 2)]);
    }

    #[test]
    fn rejects_bad_algebras() {
        for text in [
            r#"{"p": 4, "basis": []}"#,
            r#"{"p": 3, "basis": [{"name": "a", "parity": 2}]}"#,
            r#"{"p": 3, "basis": [{"name": "a", "parity": 0}, {"name": "a", "parity": 0}]}"#,
            r#"{"p": 3, "basis": [{"name": "a", "parity": 0}], "brackets": {"0,1": {}}}"#,
            r#"{"p": 3, "basis": [{"name": "a", "parity": 0}], "brackets": {"0,0": {"q": 1}}}"#,
            r#"{"p": 3, "basis": [], "extra": 1}"#,
            r#"{"p": 3, "basis": [], "schema_version": 7}"#,
        ] {
            assert!(matches!(algebra_from_json(text), Err(Error::Input(_) | Error::InvalidPrime(_))), "{text}");
        }
    }

    #[test]
    fn module_round_trip() {
        let g = Arc::new(make_gl(1, 1, 3).unwrap());
        let nat = natural_module(&g).unwrap();
        let text = module_to_json(&nat).to_string();
        assert_eq!(module_from_json(&g, &text).unwrap(), nat);
        let sparse = r#"{"dims": [1, 0]}"#;
        assert_eq!(module_from_json(&g, sparse).unwrap(), SuperModule::trivial(g.clone()));
        assert!(module_from_json(&g, r#"{"dims": [1, 0], "action": {"E11": [[1, 0]]}}"#).is_err());
    }
}
