//! Parses a class table (the sample one unless a path is given), prints it
//! back in canonical form and shows what the validator rejects.
//!
//! cargo run --example parse_table -- [table.cls]

use nomsub::{ClassTable, Error};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let source = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => include_str!("../tables/sample.cls").to_string(),
    };
    let table = ClassTable::parse(&source)?;
    println!("root {}, fingerprint {}", table.root(), table.fingerprint());
    for d in table.decls() {
        let tags = [
            d.is_generic().then_some("generic"),
            d.is_f_bounded().then_some("F-bounded"),
        ];
        let tags: Vec<&str> = tags.into_iter().flatten().collect();
        println!("  {d}{}", if tags.is_empty() { String::new() } else { format!("   // {}", tags.join(", ")) });
    }

    for bad in [
        "class Object\nclass A extends B",
        "class Object\nclass A extends A",
        "class Object\nclass Object",
        "class Object\nclass Box<T, T> extends Object",
        "class Object\nclass Other",
        "class Object\nclass List<T> extends Object\nclass X extends List",
        "class Object\nclass A extends Object {",
    ] {
        match ClassTable::parse(bad) {
            Err(Error::Parse(e)) => println!("syntax   {:?}: {e}", bad.replace('\n', "; ")),
            Err(e) => println!("rejected {:?}: {e}", bad.replace('\n', "; ")),
            Ok(_) => println!("accepted {bad:?}"),
        }
    }
    Ok(())
}
