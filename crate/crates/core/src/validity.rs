//! Admittable versus valid instantiations.
//!
//! Every term in a universe is admittable: it has the right arity. A ground
//! `C<[L1..U1], ...>` is valid when each argument respects its declared
//! bounds, with parameters in the bounds replaced by upper endpoints for
//! upper-bound checks and by lower endpoints for lower-bound checks, and
//! when the terms it depends on are themselves valid.
//!
//! A term depends on the parameterized types among its argument endpoints
//! and on each substituted F-bound instance other than itself. The
//! self-instance is excluded: for `Enum<Weekday>` the bound instance is
//! `Enum<Weekday>`, and requiring it would make every F-bounded type
//! depend on itself. Longer dependency cycles remain, and they are where
//! the two modes differ: the inductive reading (least fixpoint) rejects
//! them, the coinductive one (greatest fixpoint) accepts them.
//!
//! Dependencies deeper than one level past the relation's depth are not
//! explored. They count as invalid inductively and valid coinductively.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde_json::{json, Map, Value};

use crate::class_table::ClassTable;
use crate::subtyping::SubtypeRelation;
use crate::types::{format_type, substitute, TypeTerm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ValidityMode {
    Inductive,
    Coinductive,
}

impl fmt::Display for ValidityMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ValidityMode::Inductive => "inductive",
            ValidityMode::Coinductive => "coinductive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidityAssignment {
    pub mode: ValidityMode,
    pub depth: usize,
    pub table_fingerprint: String,
    /// Valid ground terms of the universe, in universe order.
    pub valid: Vec<TypeTerm>,
    pub invalid: Vec<TypeTerm>,
    valid_set: HashSet<TypeTerm>,
}

impl ValidityAssignment {
    /// `None` for terms that are not ground terms of the universe.
    pub fn is_valid(&self, t: &TypeTerm) -> Option<bool> {
        if self.valid_set.contains(t) {
            Some(true)
        } else if self.invalid.contains(t) {
            Some(false)
        } else {
            None
        }
    }

    /// Valid and invalid listings keyed by class name, in universe order.
    pub fn to_json(&self, table: &ClassTable) -> Value {
        let mut classes = Map::new();
        for c in table.class_names() {
            let pick = |ts: &[TypeTerm]| -> Vec<String> {
                ts.iter()
                    .filter(|t| t.class_name() == Some(c))
                    .map(|t| format_type(table, t))
                    .collect()
            };
            classes.insert(c.to_string(), json!({"valid": pick(&self.valid), "invalid": pick(&self.invalid)}));
        }
        json!({
            "mode": self.mode.to_string(),
            "depth": self.depth,
            "table_fingerprint": self.table_fingerprint,
            "valid_count": self.valid.len(),
            "invalid_count": self.invalid.len(),
            "classes": classes,
        })
    }

    pub(crate) fn admits(&self, t: &TypeTerm) -> bool {
        !t.is_ground() || self.valid_set.contains(t)
    }
}

struct Node {
    local_ok: bool,
    deps: Vec<usize>,
    frontier: bool,
}

/// Checks each parameter bound of `t` against the relation and collects
/// the terms its validity depends on.
fn inspect(table: &ClassTable, rel: &SubtypeRelation, t: &TypeTerm) -> (bool, Vec<TypeTerm>) {
    let TypeTerm::Ground { class, args } = t else {
        return (true, Vec::new());
    };
    let Some(decl) = table.get(class) else {
        return (false, Vec::new());
    };
    let mut deps: Vec<TypeTerm> = Vec::new();
    for a in args {
        for e in [&a.lo, &a.hi] {
            if !e.args().is_empty() && !deps.contains(e) {
                deps.push(e.clone());
            }
        }
    }

    let is_param = |n: &str| decl.param_index(n).is_some();
    let mut ok = true;
    for (i, p) in decl.params.iter().enumerate() {
        let Some(arg) = args.get(i) else {
            return (false, deps);
        };
        if let Some(b) = &p.upper_bound {
            let inst = substitute(b, &|n| Some(Some(args.get(decl.param_index(n)?)?.hi.clone())));
            match inst {
                Some(bound) => {
                    ok &= rel.entails(table, &arg.hi, &bound);
                    if b.mentions(&is_param) && !bound.args().is_empty() && bound != *t && !deps.contains(&bound) {
                        deps.push(bound);
                    }
                }
                None => ok = false,
            }
        }
        if let Some(b) = &p.lower_bound {
            let inst = substitute(b, &|n| Some(Some(args.get(decl.param_index(n)?)?.lo.clone())));
            match inst {
                Some(bound) => {
                    ok &= rel.entails(table, &bound, &arg.lo);
                    if b.mentions(&is_param) && !bound.args().is_empty() && bound != *t && !deps.contains(&bound) {
                        deps.push(bound);
                    }
                }
                None => ok = false,
            }
        }
    }
    (ok, deps)
}

pub fn check_validity(
    table: &ClassTable,
    rel: &SubtypeRelation,
    mode: ValidityMode,
) -> ValidityAssignment {
    let limit = rel.depth() + 1;
    let mut ids: HashMap<TypeTerm, usize> = HashMap::new();
    let mut terms: Vec<TypeTerm> = Vec::new();
    let mut nodes: Vec<Node> = Vec::new();
    let mut queue: Vec<usize> = Vec::new();

    let mut intern = |t: &TypeTerm, terms: &mut Vec<TypeTerm>, queue: &mut Vec<usize>| -> usize {
        if let Some(&i) = ids.get(t) {
            return i;
        }
        let i = terms.len();
        ids.insert(t.clone(), i);
        terms.push(t.clone());
        queue.push(i);
        i
    };

    let roots: Vec<usize> = rel
        .universe()
        .iter()
        .filter(|t| t.is_ground())
        .map(|t| intern(t, &mut terms, &mut queue))
        .collect();

    let mut cursor = 0;
    while cursor < queue.len() {
        let i = queue[cursor];
        cursor += 1;
        let t = terms[i].clone();
        let node = if t.depth() > limit {
            Node {
                local_ok: true,
                deps: Vec::new(),
                frontier: true,
            }
        } else {
            let (local_ok, deps) = inspect(table, rel, &t);
            let deps = deps
                .iter()
                .map(|d| intern(d, &mut terms, &mut queue))
                .collect();
            Node {
                local_ok,
                deps,
                frontier: false,
            }
        };
        if nodes.len() <= i {
            nodes.resize_with(i + 1, || Node {
                local_ok: false,
                deps: Vec::new(),
                frontier: false,
            });
        }
        nodes[i] = node;
    }

    let mut valid: Vec<bool> = match mode {
        ValidityMode::Inductive => nodes.iter().map(|_| false).collect(),
        ValidityMode::Coinductive => nodes.iter().map(|n| n.local_ok).collect(),
    };
    loop {
        let mut changed = false;
        for (i, n) in nodes.iter().enumerate() {
            let now = if n.frontier {
                mode == ValidityMode::Coinductive
            } else {
                n.local_ok && n.deps.iter().all(|&d| valid[d])
            };
            // Inductive iteration only grows the set, coinductive only
            // shrinks it.
            let next = match mode {
                ValidityMode::Inductive => valid[i] || now,
                ValidityMode::Coinductive => valid[i] && now,
            };
            if next != valid[i] {
                valid[i] = next;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    let mut valid_terms = Vec::new();
    let mut invalid_terms = Vec::new();
    for &i in &roots {
        if valid[i] {
            valid_terms.push(terms[i].clone());
        } else {
            invalid_terms.push(terms[i].clone());
        }
    }
    ValidityAssignment {
        mode,
        depth: rel.depth(),
        table_fingerprint: table.fingerprint(),
        valid_set: valid_terms.iter().cloned().collect(),
        valid: valid_terms,
        invalid: invalid_terms,
    }
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
    fn enum_instantiations() {
        let t = sample();
        let rel = build_relation(&t, 1).unwrap();
        for mode in [ValidityMode::Inductive, ValidityMode::Coinductive] {
            let v = check_validity(&t, &rel, mode);
            let q = |s| v.is_valid(&parse_type(&t, s).unwrap());
            assert_eq!(q("Enum<Weekday>"), Some(true), "{mode}");
            assert_eq!(q("Enum<Object>"), Some(false), "{mode}");
            assert_eq!(q("Enum<String>"), Some(false), "{mode}");
            assert_eq!(q("Enum<? extends Weekday>"), Some(true), "{mode}");
            assert_eq!(q("List<String>"), Some(true), "{mode}");
            assert_eq!(q("Weekday"), Some(true), "{mode}");
            assert_eq!(q("Enum<!>"), None);
            assert_eq!(v.valid.len() + v.invalid.len(), rel.universe().iter().filter(|x| x.is_ground()).count());
        }
    }

    #[test]
    fn mutual_f_bounds_separate_the_modes() {
        // A<Z> needs B<Z> valid and B<Z> needs A<Z> valid.
        let t = ClassTable::parse(
            "class Object\n\
             class A<X extends B<X>> extends Object\n\
             class B<Y extends A<Y>> extends A<Y>\n\
             class Z extends B<Z>",
        )
        .unwrap();
        let rel = build_relation(&t, 1).unwrap();
        let ind = check_validity(&t, &rel, ValidityMode::Inductive);
        let coind = check_validity(&t, &rel, ValidityMode::Coinductive);
        let az = parse_type(&t, "A<Z>").unwrap();
        let bz = parse_type(&t, "B<Z>").unwrap();
        assert_eq!(ind.is_valid(&az), Some(false));
        assert_eq!(ind.is_valid(&bz), Some(false));
        assert_eq!(coind.is_valid(&az), Some(true));
        assert_eq!(coind.is_valid(&bz), Some(true));
        assert!(ind.valid.iter().all(|x| coind.is_valid(x) == Some(true)));
    }

    #[test]
    fn lower_bounds_are_checked_against_lower_endpoints() {
        let t = ClassTable::parse(
            "class Object\nclass Number extends Object\nclass Integer extends Number\n\
             class Sink<T super Integer> extends Object",
        )
        .unwrap();
        let rel = build_relation(&t, 1).unwrap();
        let v = check_validity(&t, &rel, ValidityMode::Inductive);
        let q = |s| v.is_valid(&parse_type(&t, s).unwrap());
        assert_eq!(q("Sink<Number>"), Some(true));
        assert_eq!(q("Sink<? super Integer>"), Some(true));
        assert_eq!(q("Sink<?>"), Some(false));
        assert_eq!(q("Sink<Null>"), Some(false));
    }
}
