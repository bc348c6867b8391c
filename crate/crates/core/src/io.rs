//! JSON file formats.
//!
//! Algebra tables are nested label arrays of depth equal to the arity, with a
//! bare label for constants. Output is canonical: declared order everywhere,
//! two-space indentation, arrays of scalars kept on one line.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::algebra::{for_each_tuple, FiniteAlgebra, Homomorphism, Operation};
use crate::compat::{CompatibleFamily, ERelation};
use crate::congruence::ConLattice;
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::poset::Poset;
use crate::variety::{SIInventory, Verdict};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Serializes with scalar arrays on a single line.
pub fn to_canonical_string(v: &Value) -> String {
    let mut out = String::new();
    write_value(v, 0, &mut out);
    out.push('\n');
    out
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Array(items) if items.iter().all(is_scalar) => {
            out.push('[');
            for (i, x) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_value(x, indent, out);
            }
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(x, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(x, indent + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

fn is_scalar(v: &Value) -> bool {
    !v.is_array() && !v.is_object()
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))?;
    serde_json::from_str(&text).map_err(|e| parse_err(format!("{}: {e}", path.display())))
}

pub fn write_json(path: &Path, v: &Value) -> Result<()> {
    fs::write(path, to_canonical_string(v))?;
    Ok(())
}

// ---- algebras ----

pub fn algebra_to_json(alg: &FiniteAlgebra) -> Value {
    let n = alg.len();
    let ops: Vec<Value> = alg
        .operations
        .iter()
        .map(|op| {
            json!({
                "name": op.name,
                "arity": op.arity,
                "table": nested_table(alg, op, n),
            })
        })
        .collect();
    let mut m = Map::new();
    m.insert("name".into(), json!(alg.name));
    m.insert("elements".into(), json!(alg.elements));
    m.insert("operations".into(), Value::Array(ops));
    Value::Object(m)
}

fn nested_table(alg: &FiniteAlgebra, op: &Operation, n: usize) -> Value {
    fn build(alg: &FiniteAlgebra, op: &Operation, n: usize, prefix: &mut Vec<usize>) -> Value {
        if prefix.len() == op.arity {
            return json!(alg.label(op.apply(n, prefix)));
        }
        let mut row = Vec::with_capacity(n);
        for x in 0..n {
            prefix.push(x);
            row.push(build(alg, op, n, prefix));
            prefix.pop();
        }
        Value::Array(row)
    }
    build(alg, op, n, &mut Vec::new())
}

pub fn algebra_from_json(v: &Value) -> Result<FiniteAlgebra> {
    let obj = v.as_object().ok_or_else(|| parse_err("algebra must be a JSON object"))?;
    let name = obj
        .get("name")
        .and_then(Value::as_str)
        .unwrap_or("A")
        .to_string();
    let elements = string_list(obj.get("elements"), "elements")?;
    let n = elements.len();
    let index: BTreeMap<&str, usize> = elements.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    let ops = obj
        .get("operations")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("`operations` must be an array"))?;
    let mut operations = Vec::with_capacity(ops.len());
    let mut problems = Vec::new();
    for (oi, o) in ops.iter().enumerate() {
        let op_name = o
            .get("name")
            .and_then(Value::as_str)
            .ok_or_else(|| parse_err(format!("operation {oi} has no name")))?
            .to_string();
        let arity = o
            .get("arity")
            .and_then(Value::as_u64)
            .ok_or_else(|| parse_err(format!("operation `{op_name}` has no integer arity")))?
            as usize;
        let raw = o
            .get("table")
            .ok_or_else(|| parse_err(format!("operation `{op_name}` has no table")))?;
        let mut table = Vec::with_capacity(n.saturating_pow(arity as u32));
        let mut shape_ok = true;
        for_each_tuple(n, arity, |args| {
            if !shape_ok {
                return;
            }
            let mut cell = raw;
            for &a in args {
                match cell.as_array().and_then(|row| (row.len() == n).then(|| &row[a])) {
                    Some(c) => cell = c,
                    None => {
                        shape_ok = false;
                        return;
                    }
                }
            }
            match cell.as_str().and_then(|l| index.get(l)) {
                Some(&i) => table.push(i),
                None => {
                    problems.push(format!(
                        "operation `{op_name}` at {args:?}: {cell} is not an element label"
                    ));
                    table.push(0);
                }
            }
        });
        if !shape_ok {
            problems.push(format!(
                "operation `{op_name}` table is not a nested array of depth {arity} and width {n}"
            ));
        }
        operations.push(Operation {
            name: op_name,
            arity,
            table,
        });
    }
    if !problems.is_empty() {
        return Err(Error::Validation(problems));
    }
    FiniteAlgebra::new(name, elements, operations)
}

fn string_list(v: Option<&Value>, field: &str) -> Result<Vec<String>> {
    let arr = v
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err(format!("`{field}` must be an array of strings")))?;
    arr.iter()
        .map(|x| {
            x.as_str()
                .map(str::to_string)
                .ok_or_else(|| parse_err(format!("`{field}` entry {x} is not a string")))
        })
        .collect()
}

pub fn read_algebra(path: &Path) -> Result<FiniteAlgebra> {
    algebra_from_json(&read_json(path)?)
}

pub fn write_algebra(path: &Path, alg: &FiniteAlgebra) -> Result<()> {
    write_json(path, &algebra_to_json(alg))
}

// ---- posets ----

#[derive(Serialize, Deserialize)]
struct PosetFile {
    elements: Vec<String>,
    #[serde(default)]
    leq: Vec<(String, String)>,
}

pub fn poset_to_json(p: &Poset) -> Value {
    serde_json::to_value(PosetFile {
        elements: p.labels().to_vec(),
        leq: p.cover_labels(),
    })
    .expect("plain data")
}

pub fn poset_from_json(v: &Value) -> Result<Poset> {
    let f: PosetFile = serde_json::from_value(v.clone())?;
    Poset::from_relation(f.elements, &f.leq)
}

/// A poset file, or a lattice given as an algebra file with `meet` and `join`,
/// in which case its meet-irreducible poset is returned.
pub fn poset_or_lattice_from_json(v: &Value) -> Result<Poset> {
    if v.get("operations").is_some() {
        let alg = algebra_from_json(v)?;
        let lat = FiniteLattice::from_algebra(&alg)?;
        if let Some((a, b, c)) = lat.distributivity_failure() {
            return Err(Error::precondition(format!(
                "lattice `{}` is not distributive at ({}, {}, {})",
                alg.name,
                lat.labels()[a],
                lat.labels()[b],
                lat.labels()[c]
            )));
        }
        Ok(lat.meet_irreducible_poset())
    } else {
        poset_from_json(v)
    }
}

pub fn read_poset(path: &Path) -> Result<Poset> {
    poset_or_lattice_from_json(&read_json(path)?)
}

// ---- relations and families ----

#[derive(Serialize, Deserialize)]
struct RelationFile {
    base: Vec<String>,
    pairs: Vec<(String, String)>,
}

pub fn relation_to_json(e: &ERelation) -> Value {
    serde_json::to_value(RelationFile {
        base: e.base().to_vec(),
        pairs: e.label_pairs(),
    })
    .expect("plain data")
}

pub fn relation_from_json(v: &Value) -> Result<ERelation> {
    let f: RelationFile = serde_json::from_value(v.clone())?;
    ERelation::from_labels(f.base, &f.pairs)
}

pub fn read_relation(path: &Path) -> Result<ERelation> {
    relation_from_json(&read_json(path)?)
}

#[derive(Serialize, Deserialize)]
struct FamilyFile {
    domain: Vec<String>,
    functions: Vec<Vec<String>>,
}

pub fn family_to_json(f: &CompatibleFamily) -> Value {
    serde_json::to_value(FamilyFile {
        domain: f.domain.clone(),
        functions: f
            .functions
            .iter()
            .map(|vals| vals.iter().map(|&v| f.base[v].clone()).collect())
            .collect(),
    })
    .expect("plain data")
}

/// Reads a family whose values are labels of `base`.
pub fn family_from_json(v: &Value, base: &[String]) -> Result<CompatibleFamily> {
    let f: FamilyFile = serde_json::from_value(v.clone())?;
    let functions = f
        .functions
        .iter()
        .enumerate()
        .map(|(i, vals)| {
            if vals.len() != f.domain.len() {
                return Err(Error::Validation(vec![format!(
                    "function {} has {} values for a domain of {}",
                    i + 1,
                    vals.len(),
                    f.domain.len()
                )]));
            }
            vals.iter()
                .map(|l| {
                    base.iter()
                        .position(|b| b == l)
                        .ok_or_else(|| Error::UnknownLabel(l.clone()))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok(CompatibleFamily {
        base: base.to_vec(),
        domain: f.domain,
        functions,
    })
}

// ---- diagrams ----

pub fn diagram_to_json(d: &Diagram) -> Value {
    let mut algebras = Map::new();
    for (p, a) in d.algebras.iter().enumerate() {
        algebras.insert(d.poset.label(p).to_string(), algebra_to_json(a));
    }
    let maps: Vec<Value> = d
        .cover_maps()
        .into_iter()
        .map(|((p, q), h)| {
            json!({
                "from": d.poset.label(p),
                "to": d.poset.label(q),
                "map": h.labels(&d.algebras[q]),
            })
        })
        .collect();
    json!({
        "poset": poset_to_json(&d.poset),
        "algebras": Value::Object(algebras),
        "maps": maps,
    })
}

/// Reads a diagram; algebra references that are strings are file paths
/// relative to `base_dir`.
pub fn diagram_from_json(v: &Value, base_dir: &Path) -> Result<Diagram> {
    let poset = poset_from_json(v.get("poset").ok_or_else(|| parse_err("diagram has no `poset`"))?)?;
    let entries = v
        .get("algebras")
        .and_then(Value::as_object)
        .ok_or_else(|| parse_err("diagram `algebras` must be an object keyed by index label"))?;
    let mut algebras = Vec::with_capacity(poset.len());
    for label in poset.labels() {
        let entry = entries
            .get(label)
            .ok_or_else(|| parse_err(format!("no algebra for index `{label}`")))?;
        let alg = match entry {
            Value::String(rel) => read_algebra(&resolve(base_dir, rel))?,
            inline => algebra_from_json(inline)?,
        };
        algebras.push(alg);
    }
    if let Some(extra) = entries.keys().find(|k| poset.index_of(k).is_err()) {
        return Err(Error::UnknownLabel(extra.clone()));
    }
    let mut given = Vec::new();
    for m in v.get("maps").and_then(Value::as_array).map(Vec::as_slice).unwrap_or(&[]) {
        let field = |k: &str| {
            m.get(k)
                .and_then(Value::as_str)
                .ok_or_else(|| parse_err(format!("map entry lacks string `{k}`")))
        };
        let p = poset.index_of(field("from")?)?;
        let q = poset.index_of(field("to")?)?;
        let labels = string_list(m.get("map"), "map")?;
        let target = &algebras[q];
        let map = labels
            .iter()
            .map(|l| target.index_of(l))
            .collect::<Result<Vec<_>>>()?;
        given.push(((p, q), Homomorphism::new(map)));
    }
    Diagram::new(poset, algebras, given)
}

fn resolve(base_dir: &Path, rel: &str) -> PathBuf {
    let p = Path::new(rel);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base_dir.join(p)
    }
}

pub fn read_diagram(path: &Path) -> Result<Diagram> {
    let dir = path.parent().unwrap_or(Path::new("."));
    diagram_from_json(&read_json(path)?, dir)
}

// ---- reports ----

pub fn con_to_json(alg: &FiniteAlgebra, con: &ConLattice) -> Value {
    let congruences: Vec<String> = con
        .congruences
        .iter()
        .map(|c| c.display_with(&alg.elements))
        .collect();
    json!({
        "algebra": alg.name,
        "size": con.len(),
        "congruences": congruences,
        "covers": con.cover_labels(alg),
        "shape": con.lattice.shape_tag(),
    })
}

fn inventory_to_json(inv: &SIInventory) -> Value {
    let names = |v: &[FiniteAlgebra]| -> Vec<Value> {
        v.iter()
            .map(|a| json!({"name": a.name, "size": a.len()}))
            .collect()
    };
    json!({
        "generator": inv.generator.name,
        "simples": names(&inv.simples),
        "v_algebras": names(&inv.v_algebras),
        "others": names(&inv.others),
    })
}

pub fn si_to_json(inv: &SIInventory) -> Value {
    let mut v = inventory_to_json(inv);
    v["is_v_variety"] = json!(inv.is_v_variety());
    v
}

pub fn verdict_to_json(v: &Verdict) -> Value {
    let witness = match &v.witness {
        None => Value::Null,
        Some(w) => json!({
            "C": algebra_to_json(&w.c),
            "B": algebra_to_json(&w.b),
            "h0": w.h0.labels(&w.b),
            "h1": w.h1.labels(&w.b),
            "E": relation_to_json(&w.e),
        }),
    };
    json!({
        "maximal": v.maximal,
        "inventory": inventory_to_json(&v.inventory),
        "witness": witness,
        "reason": v.reason,
    })
}
