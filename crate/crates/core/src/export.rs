//! DOT and JSON renderings of a constructed relation.

use serde_json::{json, Value};

use crate::bitmatrix::BitMatrix;
use crate::class_table::ClassTable;
use crate::error::{Error, Result};
use crate::subtyping::SubtypeRelation;
use crate::types::{format_type, parse_type};

/// Covering pairs `(sub, sup)` of the strict part of the preorder: the
/// transitive reduction, with mutually related terms never linked.
pub fn hasse_edges(rel: &SubtypeRelation) -> Vec<(usize, usize)> {
    let n = rel.len();
    let strict: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            rel.supertypes_of(i)
                .filter(|&j| j != i && !rel.holds(j, i))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for i in 0..n {
        for &j in &strict[i] {
            let covered = strict[i].iter().any(|&k| k != j && rel.holds(k, j) && !rel.holds(j, k));
            if !covered {
                out.push((i, j));
            }
        }
    }
    out
}

pub fn to_dot(table: &ClassTable, rel: &SubtypeRelation) -> String {
    let mut out = String::from("digraph subtyping {\n  rankdir=BT;\n  node [shape=box];\n");
    for (i, t) in rel.universe().iter().enumerate() {
        let label = format_type(table, t).replace('\\', "\\\\").replace('"', "\\\"");
        out.push_str(&format!("  n{i} [label=\"{label}\"];\n"));
    }
    for (i, j) in hasse_edges(rel) {
        out.push_str(&format!("  n{i} -> n{j};\n"));
    }
    out.push_str("}\n");
    out
}

pub fn to_json_value(table: &ClassTable, rel: &SubtypeRelation) -> Value {
    let universe: Vec<String> = rel.universe().iter().map(|t| format_type(table, t)).collect();
    let edges: Vec<[usize; 2]> = (0..rel.len())
        .flat_map(|i| rel.supertypes_of(i).map(move |j| [i, j]))
        .collect();
    json!({
        "depth": rel.depth(),
        "iterations": rel.iterations(),
        "universe": universe,
        "edges": edges,
    })
}

/// `{depth, iterations, universe, edges}` with edges as index pairs into the
/// universe list. Every related pair is listed, reflexive ones included.
pub fn to_json(table: &ClassTable, rel: &SubtypeRelation) -> String {
    to_json_value(table, rel).to_string()
}

/// Re-imports a document written by [`to_json`].
pub fn from_json(table: &ClassTable, text: &str) -> Result<SubtypeRelation> {
    let doc: Value = serde_json::from_str(text).map_err(|e| Error::Import(e.to_string()))?;
    let field = |k: &str| doc.get(k).ok_or_else(|| Error::Import(format!("missing `{k}`")));
    let depth = field("depth")?
        .as_u64()
        .ok_or_else(|| Error::Import("`depth` is not a number".into()))? as usize;
    let iterations = doc.get("iterations").and_then(Value::as_u64).unwrap_or(0) as usize;
    let universe = field("universe")?
        .as_array()
        .ok_or_else(|| Error::Import("`universe` is not an array".into()))?
        .iter()
        .map(|v| {
            let s = v
                .as_str()
                .ok_or_else(|| Error::Import("universe entry is not a string".into()))?;
            parse_type(table, s)
        })
        .collect::<Result<Vec<_>>>()?;
    let n = universe.len();
    let mut edges = BitMatrix::new(n);
    for e in field("edges")?
        .as_array()
        .ok_or_else(|| Error::Import("`edges` is not an array".into()))?
    {
        let pair = e.as_array().filter(|p| p.len() == 2);
        let idx = |k: usize| {
            pair.and_then(|p| p[k].as_u64())
                .map(|v| v as usize)
                .filter(|&v| v < n)
                .ok_or_else(|| Error::Import(format!("bad edge {e}")))
        };
        edges.set(idx(0)?, idx(1)?);
    }
    Ok(SubtypeRelation::from_edges(universe, edges, depth, iterations))
}
