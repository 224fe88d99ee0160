//! Exports the depth-1 relation of the reduced table as a Graphviz Hasse
//! diagram and as JSON, then re-imports the JSON.
//!
//! cargo run --example export -- [out-dir]
//! dot -Tsvg out/reduced.dot > reduced.svg

use std::path::PathBuf;

use nomsub::export::{from_json, hasse_edges, to_dot, to_json};
use nomsub::{build_relation, ClassTable};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "target/export".into()));
    std::fs::create_dir_all(&dir)?;
    let table = ClassTable::parse(include_str!("../tables/reduced.cls"))?;
    let rel = build_relation(&table, 1)?;

    let dot = to_dot(&table, &rel);
    let json = to_json(&table, &rel);
    std::fs::write(dir.join("reduced.dot"), &dot)?;
    std::fs::write(dir.join("reduced.json"), &json)?;
    println!(
        "{} terms, {} related pairs, {} covering edges -> {}",
        rel.len(),
        rel.edge_count(),
        hasse_edges(&rel).len(),
        dir.display()
    );

    let back = from_json(&table, &json)?;
    println!("re-imported relation equal: {}", back == rel);
    Ok(())
}
