#![allow(dead_code)]

pub mod gen;
pub mod oracle;

use nomsub::ClassTable;

pub const SAMPLE: &str = include_str!("../../tables/sample.cls");
pub const REDUCED: &str = include_str!("../../tables/reduced.cls");

pub fn sample() -> ClassTable {
    ClassTable::parse(SAMPLE).unwrap()
}

pub fn reduced() -> ClassTable {
    ClassTable::parse(REDUCED).unwrap()
}
