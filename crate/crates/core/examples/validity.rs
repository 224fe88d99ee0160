//! Admittable versus valid instantiations under both readings, on the
//! sample table and on a pair of mutually F-bounded classes where the
//! readings disagree.
//!
//! cargo run --example validity

use nomsub::{build_relation, check_validity, format_type, ClassTable, ValidityMode};

fn main() -> nomsub::Result<()> {
    let mutual = "class Object\n\
                  class A<X extends B<X>> extends Object\n\
                  class B<Y extends A<Y>> extends A<Y>\n\
                  class Z extends B<Z>";
    for (name, src) in [("sample", include_str!("../tables/sample.cls")), ("mutual", mutual)] {
        let table = ClassTable::parse(src)?;
        let rel = build_relation(&table, 1)?;
        for mode in [ValidityMode::Inductive, ValidityMode::Coinductive] {
            let v = check_validity(&table, &rel, mode);
            println!("{name}, {mode}: {} valid, {} invalid", v.valid.len(), v.invalid.len());
            let bounded: Vec<String> = v
                .invalid
                .iter()
                .filter(|t| table.get(t.class_name().unwrap()).is_some_and(|d| d.is_f_bounded()))
                .map(|t| format_type(&table, t))
                .take(6)
                .collect();
            println!("  invalid F-bounded: {}", bounded.join(", "));
        }
    }
    Ok(())
}
