//! Builds the subtyping relation of the sample table at a few depths and
//! prints its size, the number of construction steps, and a few queries.
//!
//! cargo run --release --example build_relation -- [max-depth]

use nomsub::{format_type, parse_type, BuildOptions, ClassTable, Kernel};

fn main() -> nomsub::Result<()> {
    let max_depth: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(1);
    let table = ClassTable::parse(include_str!("../tables/sample.cls"))?;
    let kernel = Kernel::new(table, BuildOptions::default());

    for depth in 0..=max_depth {
        let start = std::time::Instant::now();
        let rel = kernel.relation(depth)?;
        println!(
            "depth {depth}: {} types, {} edges, {} steps ({:.2?})",
            rel.len(),
            rel.edge_count(),
            rel.iterations(),
            start.elapsed()
        );
    }

    let rel = kernel.relation(1)?;
    let table = kernel.table();
    for (a, b) in [
        ("LinkedList<String>", "List<?>"),
        ("List<?>", "List<String>"),
        ("Weekday", "Enum<Weekday>"),
        ("List<!>", "List<? extends Number>"),
    ] {
        let sub = parse_type(table, a)?;
        let sup = parse_type(table, b)?;
        println!(
            "{} <: {} = {}",
            format_type(table, &sub),
            format_type(table, &sup),
            rel.is_subtype(&sub, &sup)?
        );
    }
    Ok(())
}
