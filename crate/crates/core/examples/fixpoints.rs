//! F-subtypes and F-supertypes of the unary generic classes, with the
//! maxima/minima diagnostics and the free/co-free comparison.
//!
//! cargo run --release --example fixpoints -- [depth]

use nomsub::fixpoint::exact_fixed_points;
use nomsub::{f_subtypes, f_supertypes, maximal_f_subtypes, minimal_f_supertypes, BuildOptions, ClassTable, Kernel};

fn main() -> nomsub::Result<()> {
    let depth = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let kernel = Kernel::new(
        ClassTable::parse(include_str!("../tables/sample.cls"))?,
        BuildOptions::default(),
    );
    let show = |ts: &[nomsub::TypeTerm]| ts.iter().map(|t| kernel.format(t)).collect::<Vec<_>>().join(", ");

    for f in ["List", "LinkedList", "Enum"] {
        let subs = f_subtypes(&kernel, depth, f)?;
        let sups = f_supertypes(&kernel, depth, f)?;
        println!("{f}: {} F-subtypes, {} F-supertypes", subs.len(), sups.len());
        println!("  F-subtypes:   {}", show(&subs));
        println!("  F-supertypes: {}", show(&sups));
        println!("  fixed points: {}", show(&exact_fixed_points(&kernel, depth, f)?));
        for report in [maximal_f_subtypes(&kernel, depth, f)?, minimal_f_supertypes(&kernel, depth, f)?] {
            for finding in &report.findings {
                println!("  - {finding}");
            }
        }
    }
    Ok(())
}
