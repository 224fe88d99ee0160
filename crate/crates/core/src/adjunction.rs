//! The erasure adjunction between subtyping and subclassing.
//!
//! Erasure `E` sends a type to its class and the free type `FT` sends a
//! class to `C<?, ..., ?>`. They are adjoint when
//!
//! ```text
//! E(t) ≤ c  ⟺  t <: FT(c)
//! ```
//!
//! for every type `t` and class `c`. This module checks that condition over
//! the whole `(universe × classes)` grid of a built relation, together with
//! monotonicity of both maps and the laws of the closure operator `FT ∘ E`.
//! `Null` has no erasure and is left out of the grid.

use std::fmt;

use serde_json::{json, Value};

use crate::class_table::ClassTable;
use crate::error::{Error, Result};
use crate::subtyping::SubtypeRelation;
use crate::types::{erase, format_type, free_type, TypeTerm};
use crate::validity::ValidityAssignment;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `E(t) ≤ c` holds but `t <: FT(c)` does not.
    LeftToRight,
    /// `t <: FT(c)` holds but `E(t) ≤ c` does not.
    RightToLeft,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::LeftToRight => "left-to-right",
            Direction::RightToLeft => "right-to-left",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisViolation {
    pub ty: TypeTerm,
    pub class: String,
    pub direction: Direction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonotonicityWitness {
    /// `sub <: sup` but `E(sub) ≤ E(sup)` fails.
    Erasure { sub: TypeTerm, sup: TypeTerm },
    /// `sub ≤ sup` but `FT(sub) <: FT(sup)` fails.
    FreeType { sub: String, sup: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotonicityReport {
    pub erasure_ok: bool,
    pub free_type_ok: bool,
    pub witnesses: Vec<MonotonicityWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosureViolation {
    /// `t <: FT(E(t))` fails.
    Unit(TypeTerm),
    /// `E(FT(c)) = c` fails.
    Counit(String),
    /// `FT(E(FT(E(t)))) = FT(E(t))` fails.
    Idempotence(TypeTerm),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjunctionReport {
    pub checked_pairs: usize,
    /// Violations whose type is parameterized or a plain class.
    pub violations: Vec<GaloisViolation>,
    /// Violations whose type is a co-free atom, kept apart.
    pub cofree_violations: Vec<GaloisViolation>,
    /// `Null` is never part of the grid.
    pub bottom_skipped: bool,
    /// True when the grid ranges over valid types only.
    pub valid_only: bool,
    pub monotonicity: MonotonicityReport,
    /// Closure-law failures of parameterized types and classes.
    pub closure_violations: Vec<ClosureViolation>,
    /// Classes whose free type is not the greatest non-co-free type
    /// erasing below them.
    pub greatest_failures: Vec<String>,
    /// Closure-law failures of co-free atoms, kept apart.
    pub cofree_closure_violations: Vec<ClosureViolation>,
    /// Classes where the free type stops being greatest once co-free
    /// atoms are taken into account.
    pub cofree_greatest_failures: Vec<String>,
}

impl AdjunctionReport {
    /// True when nothing outside the co-free group failed.
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
            && self.monotonicity.witnesses.is_empty()
            && self.closure_violations.is_empty()
            && self.greatest_failures.is_empty()
    }

    pub fn to_json(&self, table: &ClassTable) -> Value {
        let f = |t: &TypeTerm| format_type(table, t);
        let grid = |vs: &[GaloisViolation]| -> Vec<Value> {
            vs.iter()
                .map(|v| json!({"type": f(&v.ty), "class": v.class, "direction": v.direction.to_string()}))
                .collect()
        };
        let witnesses: Vec<Value> = self
            .monotonicity
            .witnesses
            .iter()
            .map(|w| match w {
                MonotonicityWitness::Erasure { sub, sup } => {
                    json!({"map": "erasure", "sub": f(sub), "sup": f(sup)})
                }
                MonotonicityWitness::FreeType { sub, sup } => {
                    json!({"map": "free_type", "sub": sub, "sup": sup})
                }
            })
            .collect();
        let closure: Vec<Value> = self
            .closure_violations
            .iter()
            .map(|c| match c {
                ClosureViolation::Unit(t) => json!({"law": "unit", "subject": f(t)}),
                ClosureViolation::Counit(c) => json!({"law": "counit", "subject": c}),
                ClosureViolation::Idempotence(t) => json!({"law": "idempotence", "subject": f(t)}),
            })
            .collect();
        json!({
            "checked_pairs": self.checked_pairs,
            "violations": grid(&self.violations),
            "cofree_violations": grid(&self.cofree_violations),
            "bottom_skipped": self.bottom_skipped,
            "quantify": if self.valid_only { "valid" } else { "admittable" },
            "monotonicity": {
                "erasure_ok": self.monotonicity.erasure_ok,
                "free_type_ok": self.monotonicity.free_type_ok,
                "witnesses": witnesses,
            },
            "closure_violations": closure,
            "greatest_free_type_failures": self.greatest_failures,
            "cofree_closure_violations": self.cofree_closure_violations.iter().map(|c| match c {
                ClosureViolation::Unit(t) => json!({"law": "unit", "subject": f(t)}),
                ClosureViolation::Counit(c) => json!({"law": "counit", "subject": c}),
                ClosureViolation::Idempotence(t) => json!({"law": "idempotence", "subject": f(t)}),
            }).collect::<Vec<_>>(),
            "cofree_greatest_free_type_failures": self.cofree_greatest_failures,
            "holds": self.holds(),
        })
    }
}

fn free_in(table: &ClassTable, rel: &SubtypeRelation, c: &str) -> Result<usize> {
    let ft = free_type(table, c)?;
    rel.index_of(&ft)
        .ok_or_else(|| Error::FreeTypeOutsideUniverse(ft.to_string()))
}

/// Exhaustive check of the adjunction and its laws. With `domain`, only
/// ground terms it marks valid take part in the grid.
pub fn check_galois(
    table: &ClassTable,
    rel: &SubtypeRelation,
    domain: Option<&ValidityAssignment>,
) -> Result<AdjunctionReport> {
    let classes: Vec<&str> = table.class_names().collect();
    let free: Vec<usize> = classes
        .iter()
        .map(|c| free_in(table, rel, c))
        .collect::<Result<_>>()?;

    let mut checked_pairs = 0;
    let mut violations = Vec::new();
    let mut cofree_violations = Vec::new();
    for (i, t) in rel.universe().iter().enumerate() {
        let Ok(e) = erase(t) else { continue };
        if domain.is_some_and(|d| !d.admits(t)) {
            continue;
        }
        for (c, &ft) in classes.iter().zip(&free) {
            checked_pairs += 1;
            let left = table.subclass_of(e, c)?;
            let right = rel.holds(i, ft);
            if left == right {
                continue;
            }
            let v = GaloisViolation {
                ty: t.clone(),
                class: c.to_string(),
                direction: if left {
                    Direction::LeftToRight
                } else {
                    Direction::RightToLeft
                },
            };
            if matches!(t, TypeTerm::Cofree(_)) {
                cofree_violations.push(v);
            } else {
                violations.push(v);
            }
        }
    }

    let mut greatest_failures = Vec::new();
    let mut cofree_greatest_failures = Vec::new();
    for c in &classes {
        let ft = Some(free_type(table, c)?);
        if greatest_among(table, rel, c, false)? != ft {
            greatest_failures.push(c.to_string());
        } else if greatest_among(table, rel, c, true)? != ft {
            cofree_greatest_failures.push(c.to_string());
        }
    }
    let (cofree_closure_violations, closure_violations): (Vec<_>, Vec<_>) = check_closure_laws(table, rel)?
        .into_iter()
        .partition(|v| matches!(v, ClosureViolation::Unit(TypeTerm::Cofree(_)) | ClosureViolation::Idempotence(TypeTerm::Cofree(_))));

    Ok(AdjunctionReport {
        checked_pairs,
        violations,
        cofree_violations,
        bottom_skipped: true,
        valid_only: domain.is_some(),
        monotonicity: check_monotonicity(table, rel)?,
        closure_violations,
        greatest_failures,
        cofree_closure_violations,
        cofree_greatest_failures,
    })
}

/// `(FT(E(t)), t <: FT(E(t)))`.
pub fn closure_type(
    table: &ClassTable,
    rel: &SubtypeRelation,
    t: &TypeTerm,
) -> Result<(TypeTerm, bool)> {
    let closed = free_type(table, erase(t)?)?;
    if !rel.contains(&closed) {
        return Err(Error::FreeTypeOutsideUniverse(closed.to_string()));
    }
    let unit = rel.is_subtype(t, &closed)?;
    Ok((closed, unit))
}

/// `(E(FT(c)), E(FT(c)) = c)`.
pub fn closure_class(table: &ClassTable, c: &str) -> Result<(String, bool)> {
    let ft = free_type(table, c)?;
    let back = erase(&ft)?.to_string();
    let same = back == c;
    Ok((back, same))
}

/// Universe terms fixed by `FT ∘ E`.
pub fn closed_types(table: &ClassTable, rel: &SubtypeRelation) -> Vec<TypeTerm> {
    rel.universe()
        .iter()
        .filter(|t| {
            erase(t)
                .and_then(|e| free_type(table, e))
                .is_ok_and(|ft| ft == **t)
        })
        .cloned()
        .collect()
}

pub fn check_closure_laws(
    table: &ClassTable,
    rel: &SubtypeRelation,
) -> Result<Vec<ClosureViolation>> {
    let mut out = Vec::new();
    for t in rel.universe() {
        if *t == TypeTerm::Bottom {
            continue;
        }
        let (closed, unit) = closure_type(table, rel, t)?;
        if !unit {
            out.push(ClosureViolation::Unit(t.clone()));
        }
        let (twice, _) = closure_type(table, rel, &closed)?;
        if twice != closed {
            out.push(ClosureViolation::Idempotence(t.clone()));
        }
    }
    for c in table.class_names() {
        if !closure_class(table, c)?.1 {
            out.push(ClosureViolation::Counit(c.to_string()));
        }
    }
    Ok(out)
}

pub fn check_monotonicity(table: &ClassTable, rel: &SubtypeRelation) -> Result<MonotonicityReport> {
    let mut witnesses = Vec::new();
    let u = rel.universe();
    for (i, sub) in u.iter().enumerate() {
        let Ok(e1) = erase(sub) else { continue };
        for j in rel.supertypes_of(i) {
            let Ok(e2) = erase(&u[j]) else { continue };
            if !table.subclass_of(e1, e2)? {
                witnesses.push(MonotonicityWitness::Erasure {
                    sub: sub.clone(),
                    sup: u[j].clone(),
                });
            }
        }
    }
    let erasure_ok = witnesses.is_empty();
    let before = witnesses.len();

    for c in table.class_names() {
        let fc = free_in(table, rel, c)?;
        for d in table.ancestors(c)? {
            let fd = free_in(table, rel, d)?;
            if !rel.holds(fc, fd) {
                witnesses.push(MonotonicityWitness::FreeType {
                    sub: c.to_string(),
                    sup: d.to_string(),
                });
            }
        }
    }
    let free_type_ok = witnesses.len() == before;
    Ok(MonotonicityReport {
        erasure_ok,
        free_type_ok,
        witnesses,
    })
}

/// The greatest universe term whose erasure is a subclass of `c`, if the
/// set of such terms has a greatest element.
pub fn greatest_erasing_below(
    table: &ClassTable,
    rel: &SubtypeRelation,
    c: &str,
) -> Result<Option<TypeTerm>> {
    greatest_among(table, rel, c, true)
}

fn greatest_among(
    table: &ClassTable,
    rel: &SubtypeRelation,
    c: &str,
    with_cofree: bool,
) -> Result<Option<TypeTerm>> {
    let mut below = Vec::new();
    for (i, t) in rel.universe().iter().enumerate() {
        if !with_cofree && matches!(t, TypeTerm::Cofree(_)) {
            continue;
        }
        if let Ok(e) = erase(t) {
            if table.subclass_of(e, c)? {
                below.push(i);
            }
        }
    }
    Ok(below
        .iter()
        .find(|&&g| below.iter().all(|&x| rel.holds(x, g)))
        .map(|&g| rel.universe()[g].clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subtyping::build_relation;
    use crate::types::parse_type;

    fn sample() -> ClassTable {
        ClassTable::parse(include_str!("../tables/sample.cls")).unwrap()
    }

    #[test]
    fn sample_grid_has_no_violations() {
        let t = sample();
        let rel = build_relation(&t, 1).unwrap();
        let r = check_galois(&t, &rel, None).unwrap();
        assert_eq!(r.checked_pairs, (rel.len() - 1) * t.decls().len());
        assert!(r.violations.is_empty(), "{:?}", r.violations);
        assert!(r.cofree_violations.is_empty());
        assert!(r.holds());
    }

    #[test]
    fn single_class_table() {
        let t = ClassTable::parse("class Object").unwrap();
        let rel = build_relation(&t, 0).unwrap();
        let r = check_galois(&t, &rel, None).unwrap();
        assert_eq!(r.checked_pairs, 1);
        assert!(r.holds());
    }

    #[test]
    fn linked_list_instance() {
        let t = sample();
        let rel = build_relation(&t, 1).unwrap();
        let ll = parse_type(&t, "LinkedList<String>").unwrap();
        assert!(t.subclass_of(erase(&ll).unwrap(), "List").unwrap());
        assert!(rel.is_subtype(&ll, &free_type(&t, "List").unwrap()).unwrap());
    }

    #[test]
    fn needs_free_types_in_universe() {
        let t = sample();
        let rel = build_relation(&t, 0).unwrap();
        assert!(matches!(check_galois(&t, &rel, None), Err(Error::FreeTypeOutsideUniverse(_))));
    }

    #[test]
    fn closure_operator() {
        let t = sample();
        let rel = build_relation(&t, 1).unwrap();
        let p = |s| parse_type(&t, s).unwrap();
        assert_eq!(closure_type(&t, &rel, &p("List<String>")).unwrap(), (p("List<?>"), true));
        assert_eq!(closure_type(&t, &rel, &p("List<?>")).unwrap(), (p("List<?>"), true));
        assert_eq!(closure_type(&t, &rel, &p("Enum<Weekday>")).unwrap(), (p("Enum<?>"), true));
        assert_eq!(closure_type(&t, &rel, &TypeTerm::Bottom), Err(Error::BottomHasNoErasure));
        for c in ["List", "String", "LinkedList"] {
            assert_eq!(closure_class(&t, c).unwrap(), (c.to_string(), true));
        }
        assert!(check_closure_laws(&t, &rel).unwrap().is_empty());
    }

    #[test]
    fn closed_types_are_free_types_and_atoms() {
        let t = sample();
        let rel = build_relation(&t, 1).unwrap();
        let closed = closed_types(&t, &rel);
        let p = |s| parse_type(&t, s).unwrap();
        assert!(closed.contains(&p("List<?>")));
        assert!(closed.contains(&p("Enum<?>")));
        assert!(closed.contains(&p("String")));
        assert!(!closed.contains(&p("List<String>")));
        assert!(!closed.contains(&p("List<!>")));
        let mut expected: Vec<TypeTerm> =
            t.class_names().map(|c| free_type(&t, c).unwrap()).collect();
        expected.sort_by_key(|x| crate::types::format_type(&t, x));
        assert_eq!(closed, expected);
    }

    #[test]
    fn monotone_maps() {
        let t = sample();
        let rel = build_relation(&t, 1).unwrap();
        let m = check_monotonicity(&t, &rel).unwrap();
        assert!(m.erasure_ok && m.free_type_ok && m.witnesses.is_empty());
    }

    #[test]
    fn broken_relation_is_caught() {
        let t = sample();
        let rel = build_relation(&t, 1)
            .unwrap()
            .with_extra_edge(&parse_type(&t, "String").unwrap(), &parse_type(&t, "List<?>").unwrap())
            .unwrap();
        let r = check_galois(&t, &rel, None).unwrap();
        assert!(r
            .violations
            .iter()
            .any(|v| v.class == "List" && v.direction == Direction::RightToLeft));
        assert!(!r.monotonicity.erasure_ok);
        assert!(!r.holds());
    }
}
