//! Exhaustive check of `E(t) ≤ c ⟺ t <: FT(c)` on both shipped tables,
//! then on a relation with one deliberately wrong edge.
//!
//! cargo run --release --example galois

use nomsub::{check_galois, format_type, parse_type, BuildOptions, ClassTable, Kernel};

fn main() -> nomsub::Result<()> {
    for (name, src, depth) in [
        ("sample", include_str!("../tables/sample.cls"), 1),
        ("reduced", include_str!("../tables/reduced.cls"), 2),
    ] {
        let kernel = Kernel::new(ClassTable::parse(src)?, BuildOptions::default());
        let start = std::time::Instant::now();
        let rel = kernel.relation(depth)?;
        let report = check_galois(kernel.table(), &rel, None)?;
        println!(
            "{name} at depth {depth}: {} violations / {} pairs, holds = {} ({:.2?})",
            report.violations.len(),
            report.checked_pairs,
            report.holds(),
            start.elapsed()
        );
    }

    // A bogus `String <: List<?>` breaks the right-to-left direction.
    let table = ClassTable::parse(include_str!("../tables/sample.cls"))?;
    let p = |s| parse_type(&table, s);
    let broken = nomsub::build_relation(&table, 1)?.with_extra_edge(&p("String")?, &p("List<?>")?)?;
    let report = check_galois(&table, &broken, None)?;
    println!("with String <: List<?> added: {} violations", report.violations.len());
    for v in &report.violations {
        println!("  {} vs {}: {}", format_type(&table, &v.ty), v.class, v.direction);
    }
    Ok(())
}
