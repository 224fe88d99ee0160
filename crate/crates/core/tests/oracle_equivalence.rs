mod common;

use common::gen::random_table_source;
use common::oracle::{disagreements, Oracle};
use nomsub::{build_relation, BuildOptions, ClassTable, Kernel};

#[test]
fn oracle_spot_checks() {
    let t = common::sample();
    let rel = build_relation(&t, 1).unwrap();
    let o = Oracle::new(&t, rel.universe());
    let p = |s| nomsub::parse_type(&t, s).unwrap();
    assert!(o.subtype(&p("LinkedList<String>"), &p("List<String>")));
    assert!(o.subtype(&p("LinkedList<String>"), &p("List<?>")));
    assert!(!o.subtype(&p("List<?>"), &p("List<String>")));
    assert!(o.subtype(&p("Weekday"), &p("Enum<Weekday>")));
    assert!(o.subtype(&p("Enum<Weekday>"), &p("Enum<?>")));
    assert!(o.subtype(&p("LinkedList<?>"), &p("List<?>")));
    assert!(!o.subtype(&p("String"), &p("Enum<String>")));
}

#[test]
fn sample_depth_one_agrees_with_oracle() {
    let t = common::sample();
    let rel = build_relation(&t, 1).unwrap();
    let bad = disagreements(&t, &rel);
    assert!(bad.is_empty(), "{} disagreements: {:#?}", bad.len(), &bad[..bad.len().min(20)]);
}

#[test]
fn reduced_depth_two_agrees_with_oracle() {
    let t = common::reduced();
    let rel = build_relation(&t, 2).unwrap();
    let bad = disagreements(&t, &rel);
    assert!(bad.is_empty(), "{} disagreements: {:#?}", bad.len(), &bad[..bad.len().min(20)]);
}

#[test]
fn random_tables_agree_with_oracle() {
    for seed in 0..20 {
        let src = random_table_source(seed, 6, true);
        let t = ClassTable::parse(&src).unwrap_or_else(|e| panic!("seed {seed}: {e}\n{src}"));
        let kernel = Kernel::new(t.clone(), BuildOptions::default());
        let rel = kernel.relation(1).unwrap();
        let bad = disagreements(&t, &rel);
        assert!(bad.is_empty(), "seed {seed}\n{src}\n{:#?}", &bad[..bad.len().min(20)]);
    }
}
