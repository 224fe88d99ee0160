//! The closure operator `FT ∘ E`: where each type goes, which types are
//! closed, and whether unit, counit and idempotence hold.
//!
//! cargo run --example closures

use nomsub::adjunction::{check_closure_laws, closed_types, closure_class, closure_type};
use nomsub::{build_relation, format_type, ClassTable};

fn main() -> nomsub::Result<()> {
    let table = ClassTable::parse(include_str!("../tables/sample.cls"))?;
    let rel = build_relation(&table, 1)?;
    let f = |t: &nomsub::TypeTerm| format_type(&table, t);

    for t in rel.universe().iter().filter(|t| t.is_ground()).take(12) {
        let (closed, unit) = closure_type(&table, &rel, t)?;
        println!("{:<28} -> {:<14} unit {}", f(t), f(&closed), if unit { "ok" } else { "FAILS" });
    }
    println!("...");
    for c in table.class_names() {
        let (back, same) = closure_class(&table, c)?;
        println!("E(FT({c})) = {back}{}", if same { "" } else { "  (counit fails)" });
    }
    let closed: Vec<String> = closed_types(&table, &rel).iter().map(f).collect();
    println!("closed types: {}", closed.join(", "));
    println!("law violations: {}", check_closure_laws(&table, &rel)?.len());
    Ok(())
}
