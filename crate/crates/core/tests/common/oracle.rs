//! Naive recursive subtype decision, written against the construction
//! rules rather than the construction code. It shares only the term and
//! table data types with the library.

use std::cell::{Cell, RefCell};
use std::collections::{HashMap, HashSet};

use nomsub::{format_type, ClassTable, Interval, SubtypeRelation, TypeTerm, TypeUse};

pub struct Oracle<'a> {
    table: &'a ClassTable,
    /// Instantiations available to co-free atoms.
    universe: &'a [TypeTerm],
    members: HashSet<&'a TypeTerm>,
    cofree_axioms: bool,
    memo: RefCell<HashMap<(TypeTerm, TypeTerm), bool>>,
    /// Goals currently being decided; meeting one again answers false, which
    /// yields the least fixpoint (only finite derivations count).
    active: RefCell<HashSet<(TypeTerm, TypeTerm)>>,
    cycle_hits: Cell<usize>,
}

impl<'a> Oracle<'a> {
    pub fn new(table: &'a ClassTable, universe: &'a [TypeTerm]) -> Self {
        Oracle {
            table,
            universe,
            members: universe.iter().collect(),
            cofree_axioms: true,
            memo: RefCell::new(HashMap::new()),
            active: RefCell::new(HashSet::new()),
            cycle_hits: Cell::new(0),
        }
    }

    pub fn without_cofree_axioms(mut self) -> Self {
        self.cofree_axioms = false;
        self
    }

    fn subclass(&self, sub: &str, sup: &str) -> bool {
        let mut cur = sub.to_string();
        loop {
            if cur == sup {
                return true;
            }
            match &self.table.get(&cur).unwrap().superclass {
                Some(s) => cur = s.name.clone(),
                None => return false,
            }
        }
    }

    fn is_root(&self, t: &TypeTerm) -> bool {
        matches!(t, TypeTerm::Ground { class, args } if args.is_empty() && class == self.table.root())
    }

    /// Direct superclass instantiation, or `None` at the root or when a
    /// parameter nested in a compound argument has a non-point interval.
    fn parent(&self, t: &TypeTerm) -> Option<TypeTerm> {
        let TypeTerm::Ground { class, args } = t else { return None };
        let decl = self.table.get(class).unwrap();
        let sup = decl.superclass.as_ref()?;
        let env: HashMap<&str, &Interval> = decl
            .params
            .iter()
            .map(|p| p.name.as_str())
            .zip(args.iter())
            .collect();
        let mut out = Vec::new();
        for a in &sup.args {
            if a.args.is_empty() {
                if let Some(iv) = env.get(a.name.as_str()) {
                    out.push((*iv).clone());
                    continue;
                }
            }
            out.push(Interval::point(instantiate(a, &env)?));
        }
        Some(TypeTerm::ground(sup.name.clone(), out))
    }

    pub fn subtype(&self, s: &TypeTerm, t: &TypeTerm) -> bool {
        let key = (s.clone(), t.clone());
        if let Some(&v) = self.memo.borrow().get(&key) {
            return v;
        }
        if !self.active.borrow_mut().insert(key.clone()) {
            self.cycle_hits.set(self.cycle_hits.get() + 1);
            return false;
        }
        let hits = self.cycle_hits.get();
        let v = self.decide(s, t);
        self.active.borrow_mut().remove(&key);
        // A false answer that leaned on an open goal is provisional.
        if v || self.cycle_hits.get() == hits {
            self.memo.borrow_mut().insert(key, v);
        }
        v
    }

    fn decide(&self, s: &TypeTerm, t: &TypeTerm) -> bool {
        if s == t || *s == TypeTerm::Bottom || self.is_root(t) {
            return true;
        }
        match (s, t) {
            (_, TypeTerm::Bottom) => false,
            (TypeTerm::Ground { .. }, TypeTerm::Cofree(_)) => false,
            (TypeTerm::Cofree(d), TypeTerm::Cofree(c)) => self.cofree_axioms && self.subclass(d, c),
            (TypeTerm::Cofree(d), TypeTerm::Ground { class: c, .. }) => {
                if !self.cofree_axioms || !self.subclass(d, c) {
                    return false;
                }
                // Through the co-free atom of a generic target class, which
                // lies below every instantiation of it in the universe.
                if self.table.get(c).unwrap().params.len() > 0 && self.members.contains(t) {
                    return true;
                }
                self.universe.iter().any(|u| {
                    matches!(u, TypeTerm::Ground { class, .. } if class == d) && self.subtype(u, t)
                })
            }
            (TypeTerm::Ground { class: d, args: a }, TypeTerm::Ground { class: c, args: b }) => {
                if d == c {
                    a.iter()
                        .zip(b)
                        .all(|(x, y)| self.subtype(&y.lo, &x.lo) && self.subtype(&x.hi, &y.hi))
                } else if self.subclass(d, c) {
                    match self.parent(s) {
                        Some(p) => self.subtype(&p, t),
                        None => false,
                    }
                } else {
                    false
                }
            }
            (TypeTerm::Bottom, _) => unreachable!(),
        }
    }
}

fn instantiate(u: &TypeUse, env: &HashMap<&str, &Interval>) -> Option<TypeTerm> {
    if let Some(iv) = env.get(u.name.as_str()) {
        return (iv.lo == iv.hi).then(|| iv.lo.clone());
    }
    let args = u
        .args
        .iter()
        .map(|a| instantiate(a, env).map(Interval::point))
        .collect::<Option<Vec<_>>>()?;
    Some(TypeTerm::ground(u.name.clone(), args))
}

/// Every universe pair on which the relation and the oracle differ.
pub fn disagreements(table: &ClassTable, rel: &SubtypeRelation) -> Vec<String> {
    let oracle = Oracle::new(table, rel.universe());
    let mut out = Vec::new();
    for (i, s) in rel.universe().iter().enumerate() {
        for (j, t) in rel.universe().iter().enumerate() {
            let want = oracle.subtype(s, t);
            if want != rel.holds(i, j) {
                out.push(format!(
                    "{} <: {}: oracle {want}",
                    format_type(table, s),
                    format_type(table, t)
                ));
            }
        }
    }
    out
}
