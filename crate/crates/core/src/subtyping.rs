//! Iterative construction of the depth-bounded subtyping relation.
//!
//! Starting from the reflexive relation over a finite universe, each
//! construction step applies, in order:
//!
//! * (a) containment: `C<as> <: C<bs>` when every `as[i]` is contained in
//!   `bs[i]`;
//! * (b) inheritance: `t <: s` for every super-instantiation `s` of `t`;
//! * (c) axioms: co-free atoms below their instantiations and below the
//!   co-free atoms of superclasses, `Null` below everything and everything
//!   below the root;
//! * (d) transitive closure.
//!
//! Steps only add edges, so iterating them reaches a fixpoint.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::bitmatrix::BitMatrix;
use crate::class_table::ClassTable;
use crate::error::{Error, Result};
use crate::types::{format_type, inheritance_chain, sort_canonically, Interval, TypeTerm};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rules {
    /// Apply the co-free axioms of rule (c).
    pub cofree_axioms: bool,
}

impl Default for Rules {
    fn default() -> Self {
        Rules { cofree_axioms: true }
    }
}

/// A subtyping preorder over a finite universe of terms.
#[derive(Clone, Debug)]
pub struct SubtypeRelation {
    depth: usize,
    universe: Vec<TypeTerm>,
    index: HashMap<TypeTerm, usize>,
    by_class: HashMap<String, Vec<usize>>,
    edges: BitMatrix,
    iterations: usize,
    rules: Rules,
}

impl PartialEq for SubtypeRelation {
    fn eq(&self, other: &Self) -> bool {
        self.depth == other.depth && self.universe == other.universe && self.edges == other.edges
    }
}

impl SubtypeRelation {
    /// The identity relation over `universe`, stored in canonical order.
    pub fn reflexive(
        table: &ClassTable,
        mut universe: Vec<TypeTerm>,
        depth: usize,
        rules: Rules,
    ) -> Self {
        sort_canonically(table, &mut universe);
        let n = universe.len();
        Self::from_parts(universe, BitMatrix::identity(n), depth, rules)
    }

    fn from_parts(universe: Vec<TypeTerm>, edges: BitMatrix, depth: usize, rules: Rules) -> Self {
        let index = universe
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        let mut by_class: HashMap<String, Vec<usize>> = HashMap::new();
        for (i, t) in universe.iter().enumerate() {
            if let TypeTerm::Ground { class, .. } = t {
                by_class.entry(class.clone()).or_default().push(i);
            }
        }
        SubtypeRelation {
            depth,
            universe,
            index,
            by_class,
            edges,
            iterations: 0,
            rules,
        }
    }

    /// Reflexive start, then construction steps until nothing changes.
    pub fn build_over(
        table: &ClassTable,
        universe: Vec<TypeTerm>,
        depth: usize,
        rules: Rules,
    ) -> Self {
        let mut rel = Self::reflexive(table, universe, depth, rules);
        let plan = Plan::new(table, &rel);
        let limit = rel.len() * rel.len() + 1;
        loop {
            rel.iterations += 1;
            if !plan.step(table, &mut rel) || rel.iterations >= limit {
                break;
            }
        }
        rel
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn universe(&self) -> &[TypeTerm] {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.universe.len()
    }

    pub fn is_empty(&self) -> bool {
        self.universe.is_empty()
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }

    pub fn rules(&self) -> Rules {
        self.rules
    }

    pub fn index_of(&self, t: &TypeTerm) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn contains(&self, t: &TypeTerm) -> bool {
        self.index.contains_key(t)
    }

    /// Edge lookup by universe index.
    #[inline]
    pub fn holds(&self, sub: usize, sup: usize) -> bool {
        self.edges.get(sub, sup)
    }

    pub fn edge_count(&self) -> usize {
        self.edges.count_ones()
    }

    /// Indices of all supertypes of `sub`, including itself.
    pub fn supertypes_of(&self, sub: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.row_ones(sub)
    }

    /// Ground instantiations of `class` in the universe.
    pub fn instances(&self, class: &str) -> &[usize] {
        self.by_class.get(class).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn is_subtype(&self, sub: &TypeTerm, sup: &TypeTerm) -> Result<bool> {
        let i = self.require(sub)?;
        let j = self.require(sup)?;
        Ok(self.holds(i, j))
    }

    /// `[l1..u1] ⊆ [l2..u2]` iff `l2 <: l1` and `u1 <: u2`.
    pub fn interval_contains(&self, inner: &Interval, outer: &Interval) -> Result<bool> {
        let endpoint = |t: &TypeTerm| {
            self.index_of(t)
                .ok_or_else(|| Error::EndpointOutsideUniverse(t.to_string()))
        };
        let (l1, u1) = (endpoint(&inner.lo)?, endpoint(&inner.hi)?);
        let (l2, u2) = (endpoint(&outer.lo)?, endpoint(&outer.hi)?);
        Ok(self.holds(l2, l1) && self.holds(u1, u2))
    }

    /// Distinct pairs related in both directions.
    pub fn mutual_pairs(&self) -> Vec<(TypeTerm, TypeTerm)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in self.supertypes_of(i).filter(|&j| j > i) {
                if self.holds(j, i) {
                    out.push((self.universe[i].clone(), self.universe[j].clone()));
                }
            }
        }
        out
    }

    /// Adds `sub <: sup` and re-closes transitively. Intended for
    /// diagnostics and tests that need a deliberately broken relation.
    pub fn with_extra_edge(mut self, sub: &TypeTerm, sup: &TypeTerm) -> Result<Self> {
        let i = self.require(sub)?;
        let j = self.require(sup)?;
        self.edges.set(i, j);
        self.edges.transitive_closure();
        Ok(self)
    }

    pub(crate) fn from_edges(
        universe: Vec<TypeTerm>,
        edges: BitMatrix,
        depth: usize,
        iterations: usize,
    ) -> Self {
        let mut rel = Self::from_parts(universe, edges, depth, Rules::default());
        rel.iterations = iterations;
        rel
    }

    fn require(&self, t: &TypeTerm) -> Result<usize> {
        self.index_of(t)
            .ok_or_else(|| Error::TermOutsideUniverse(t.to_string()))
    }

    /// Decides `sub <: sup` when either side may lie outside the universe.
    ///
    /// Inside the universe this is an edge lookup. Outside it, the answer is
    /// derived structurally from the inheritance chain of `sub` and
    /// containment into terms of the universe. The fallback is sound with
    /// respect to the construction rules but not complete for terms far
    /// outside the universe.
    /// Goals already under evaluation answer `false`, so expansive
    /// inheritance cannot make the derivation loop.
    pub fn entails(&self, table: &ClassTable, sub: &TypeTerm, sup: &TypeTerm) -> bool {
        self.entails_in(table, sub, sup, &mut Search::default())
    }

    fn entails_in(
        &self,
        table: &ClassTable,
        sub: &TypeTerm,
        sup: &TypeTerm,
        search: &mut Search,
    ) -> bool {
        if sub == sup {
            return true;
        }
        let si = self.index_of(sub);
        if let (Some(i), Some(j)) = (si, self.index_of(sup)) {
            return self.holds(i, j);
        }
        let goal = (sub.clone(), sup.clone());
        if let Some(&known) = search.memo.get(&goal) {
            return known;
        }
        if search.expansions >= Search::BUDGET
            || search.active.len() >= Search::MAX_NESTING
            || search.active.contains(&goal)
        {
            search.cutoffs += 1;
            return false;
        }
        search.expansions += 1;
        let cutoffs = search.cutoffs;
        search.active.push(goal.clone());
        let answer = self.entails_step(table, sub, sup, si, search);
        search.active.pop();
        // A `false` reached through a cutoff may depend on the goals that
        // were in progress, so only clean answers are remembered.
        if answer || search.cutoffs == cutoffs {
            search.memo.insert(goal, answer);
        }
        answer
    }

    fn entails_step(
        &self,
        table: &ClassTable,
        sub: &TypeTerm,
        sup: &TypeTerm,
        si: Option<usize>,
        search: &mut Search,
    ) -> bool {
        match (sub, sup) {
            (TypeTerm::Bottom, _) => true,
            (_, TypeTerm::Ground { class, args }) if args.is_empty() && class == table.root() => {
                true
            }
            (_, TypeTerm::Bottom) | (TypeTerm::Ground { .. }, TypeTerm::Cofree(_)) => false,
            (TypeTerm::Cofree(d), TypeTerm::Cofree(c)) => {
                self.rules.cofree_axioms && table.subclass_of(d, c).unwrap_or(false)
            }
            (TypeTerm::Cofree(d), TypeTerm::Ground { .. }) => {
                self.rules.cofree_axioms
                    && self
                        .instances(d)
                        .iter()
                        .any(|&u| self.entails_in(table, &self.universe[u], sup, search))
            }
            (TypeTerm::Ground { .. }, TypeTerm::Ground { class, args }) => {
                let chain = inheritance_chain(table, sub);
                if let Some(step) = chain.iter().find(|s| s.class_name() == Some(class)) {
                    if self.args_within(table, step.args(), args, search) {
                        return true;
                    }
                }
                if let Some(i) = si {
                    return self.instances(class).iter().any(|&u| {
                        self.holds(i, u) && self.args_within(table, self.universe[u].args(), args, search)
                    });
                }
                chain.iter().skip(1).any(|step| {
                    if self.contains(step) {
                        return self.entails_in(table, step, sup, search);
                    }
                    let step_class = step.class_name().unwrap_or_default();
                    self.instances(step_class).iter().any(|&u| {
                        self.args_within(table, step.args(), self.universe[u].args(), search)
                            && self.entails_in(table, &self.universe[u], sup, search)
                    })
                })
            }
        }
    }

    fn args_within(
        &self,
        table: &ClassTable,
        inner: &[Interval],
        outer: &[Interval],
        search: &mut Search,
    ) -> bool {
        inner.len() == outer.len()
            && inner.iter().zip(outer).all(|(a, b)| {
                self.entails_in(table, &b.lo, &a.lo, search)
                    && self.entails_in(table, &a.hi, &b.hi, search)
            })
    }
}

/// State of one out-of-universe derivation.
#[derive(Default)]
struct Search {
    active: Vec<(TypeTerm, TypeTerm)>,
    memo: HashMap<(TypeTerm, TypeTerm), bool>,
    expansions: usize,
    cutoffs: usize,
}

impl Search {
    const MAX_NESTING: usize = 24;
    /// Goal expansions per query. Exhausting it answers `false`, which only
    /// ever drops edges.
    const BUDGET: usize = 2048;
}

/// Universe-dependent data reused by every construction step.
struct Plan {
    /// `(class, [(lo, hi)])` per ground term; `None` endpoints fall back to
    /// [`SubtypeRelation::entails`].
    grounds: Vec<(usize, Vec<(Option<usize>, Option<usize>)>)>,
    /// Super-instantiation chain targets per ground term.
    inherits: Vec<(usize, Vec<Target>)>,
    /// `(cofree index, [cofree indices of superclasses], [instances])`.
    cofree: Vec<(usize, Vec<usize>, Vec<usize>)>,
    bottom: Option<usize>,
    root: Option<usize>,
    classes: Vec<Vec<usize>>,
}

enum Target {
    Inside(usize),
    Outside(TypeTerm),
}

impl Plan {
    fn new(table: &ClassTable, rel: &SubtypeRelation) -> Self {
        let mut grounds = Vec::new();
        let mut inherits = Vec::new();
        let mut cofree = Vec::new();
        for (i, t) in rel.universe.iter().enumerate() {
            match t {
                TypeTerm::Ground { args, .. } => {
                    let ends = args
                        .iter()
                        .map(|a| (rel.index_of(&a.lo), rel.index_of(&a.hi)))
                        .collect();
                    grounds.push((i, ends));
                    let targets = inheritance_chain(table, t)
                        .into_iter()
                        .skip(1)
                        .map(|s| match rel.index_of(&s) {
                            Some(j) => Target::Inside(j),
                            None => Target::Outside(s),
                        })
                        .collect();
                    inherits.push((i, targets));
                }
                TypeTerm::Cofree(d) => {
                    let supers = table
                        .ancestors(d)
                        .map(|a| {
                            a.filter_map(|c| rel.index_of(&TypeTerm::cofree(c)))
                                .collect()
                        })
                        .unwrap_or_default();
                    cofree.push((i, supers, rel.instances(d).to_vec()));
                }
                TypeTerm::Bottom => {}
            }
        }
        let mut classes: Vec<Vec<usize>> = rel
            .by_class
            .values()
            .filter(|v| v.len() > 1)
            .cloned()
            .collect();
        classes.sort();
        Plan {
            grounds,
            inherits,
            cofree,
            bottom: rel.index_of(&TypeTerm::Bottom),
            root: rel.index_of(&TypeTerm::class(table.root())),
            classes,
        }
    }

    fn endpoint(
        rel: &SubtypeRelation,
        table: &ClassTable,
        (i, a): (Option<usize>, &TypeTerm),
        (j, b): (Option<usize>, &TypeTerm),
    ) -> bool {
        match (i, j) {
            (Some(i), Some(j)) => rel.holds(i, j),
            _ => rel.entails(table, a, b),
        }
    }

    /// One pass of rules (a) to (d). Returns true if any edge was added.
    fn step(&self, table: &ClassTable, rel: &mut SubtypeRelation) -> bool {
        let mut changed = false;
        let ground_pos: HashMap<usize, usize> = self
            .grounds
            .iter()
            .enumerate()
            .map(|(k, (i, _))| (*i, k))
            .collect();

        // (a) containment
        for members in &self.classes {
            for &p in members {
                let pe = &self.grounds[ground_pos[&p]].1;
                let pt = rel.universe[p].args().to_vec();
                for &q in members {
                    if p == q || rel.holds(p, q) {
                        continue;
                    }
                    let qe = &self.grounds[ground_pos[&q]].1;
                    let qt = rel.universe[q].args();
                    let ok = pe.iter().zip(qe).zip(pt.iter().zip(qt)).all(
                        |((&(pl, ph), &(ql, qh)), (pa, qa))| {
                            Self::endpoint(rel, table, (ql, &qa.lo), (pl, &pa.lo))
                                && Self::endpoint(rel, table, (ph, &pa.hi), (qh, &qa.hi))
                        },
                    );
                    if ok {
                        changed |= rel.edges.set(p, q);
                    }
                }
            }
        }

        // (b) inheritance. Instance endpoints always lie in the universe,
        // so each out-of-universe endpoint of a target is compared against
        // universe terms only; those answers are cached for the pass.
        let mut outside: HashMap<(TypeTerm, usize, bool), bool> = HashMap::new();
        for (i, targets) in &self.inherits {
            for target in targets {
                match target {
                    Target::Inside(j) => changed |= rel.edges.set(*i, *j),
                    Target::Outside(s) => {
                        let class = s.class_name().unwrap_or_default();
                        let mut below = |x: &TypeTerm, e: usize, x_is_sub: bool| -> bool {
                            if let Some(k) = rel.index_of(x) {
                                return if x_is_sub { rel.holds(k, e) } else { rel.holds(e, k) };
                            }
                            *outside.entry((x.clone(), e, x_is_sub)).or_insert_with(|| {
                                let other = &rel.universe[e];
                                if x_is_sub {
                                    rel.entails(table, x, other)
                                } else {
                                    rel.entails(table, other, x)
                                }
                            })
                        };
                        let hits: Vec<usize> = rel
                            .instances(class)
                            .iter()
                            .copied()
                            .filter(|&u| {
                                let ends = &self.grounds[ground_pos[&u]].1;
                                s.args().len() == ends.len()
                                    && s.args().iter().zip(ends).all(|(a, &(lo, hi))| match (lo, hi) {
                                        (Some(lo), Some(hi)) => below(&a.lo, lo, false) && below(&a.hi, hi, true),
                                        _ => false,
                                    })
                            })
                            .collect();
                        for u in hits {
                            changed |= rel.edges.set(*i, u);
                        }
                    }
                }
            }
        }

        // (c) axioms
        if rel.rules.cofree_axioms {
            for (c, supers, instances) in &self.cofree {
                for &s in supers.iter().chain(instances) {
                    changed |= rel.edges.set(*c, s);
                }
            }
        }
        let n = rel.len();
        if let Some(b) = self.bottom {
            for j in 0..n {
                changed |= rel.edges.set(b, j);
            }
        }
        if let Some(r) = self.root {
            for i in 0..n {
                changed |= rel.edges.set(i, r);
            }
        }

        // (d) closure
        changed |= rel.edges.transitive_closure();
        changed
    }
}

/// Applies one construction step to `rel`, using its rule set.
pub fn construction_step(table: &ClassTable, rel: &SubtypeRelation) -> SubtypeRelation {
    let mut next = rel.clone();
    let plan = Plan::new(table, &next);
    plan.step(table, &mut next);
    next.iterations += 1;
    next
}

/// Builds the relation at `depth` with default rules and the default cap.
pub fn build_relation(table: &ClassTable, depth: usize) -> Result<SubtypeRelation> {
    let kernel = Kernel::new(table.clone(), BuildOptions::default());
    Ok(kernel.relation(depth)?.as_ref().clone())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    /// Maximum universe size at any depth.
    pub cap: usize,
    pub rules: Rules,
}

pub const DEFAULT_UNIVERSE_CAP: usize = 50_000;

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            cap: DEFAULT_UNIVERSE_CAP,
            rules: Rules::default(),
        }
    }
}

/// A class table together with lazily built, cached relations for every
/// depth requested so far. Building depth `d` builds all depths below it,
/// since each universe is enumerated from the previous relation.
#[derive(Debug)]
pub struct Kernel {
    table: ClassTable,
    options: BuildOptions,
    cache: Mutex<Vec<Arc<SubtypeRelation>>>,
}

impl Kernel {
    pub fn new(table: ClassTable, options: BuildOptions) -> Self {
        Kernel {
            table,
            options,
            cache: Mutex::new(Vec::new()),
        }
    }

    pub fn table(&self) -> &ClassTable {
        &self.table
    }

    pub fn options(&self) -> BuildOptions {
        self.options
    }

    pub fn relation(&self, depth: usize) -> Result<Arc<SubtypeRelation>> {
        let mut cache = self.cache.lock().unwrap_or_else(|e| e.into_inner());
        while cache.len() <= depth {
            let d = cache.len();
            let universe = next_universe(&self.table, cache.last().map(Arc::as_ref), d, self.options.cap)?;
            let rel = SubtypeRelation::build_over(&self.table, universe, d, self.options.rules);
            cache.push(Arc::new(rel));
        }
        Ok(Arc::clone(&cache[depth]))
    }

    pub fn format(&self, t: &TypeTerm) -> String {
        format_type(&self.table, t)
    }
}

fn next_universe(
    table: &ClassTable,
    prev: Option<&SubtypeRelation>,
    depth: usize,
    cap: usize,
) -> Result<Vec<TypeTerm>> {
    let mut terms = vec![TypeTerm::Bottom];
    for d in table.decls() {
        if d.is_generic() {
            terms.push(TypeTerm::cofree(&d.name));
        } else {
            terms.push(TypeTerm::class(&d.name));
        }
    }
    let exceeded = || Error::UniverseCapExceeded { cap, depth };
    if terms.len() > cap {
        return Err(exceeded());
    }
    let Some(prev) = prev else {
        return Ok(terms);
    };

    let mut intervals = Vec::new();
    for lo in 0..prev.len() {
        for hi in prev.supertypes_of(lo) {
            intervals.push(Interval::new(prev.universe[lo].clone(), prev.universe[hi].clone()));
        }
    }

    let mut total = terms.len();
    for d in table.decls().iter().filter(|d| d.is_generic()) {
        let count = u32::try_from(d.arity())
            .ok()
            .and_then(|a| intervals.len().checked_pow(a))
            .ok_or_else(exceeded)?;
        total = total.checked_add(count).ok_or_else(exceeded)?;
        if total > cap {
            return Err(exceeded());
        }
    }

    for d in table.decls().iter().filter(|d| d.is_generic()) {
        let mut choice = vec![0usize; d.arity()];
        loop {
            let args = choice.iter().map(|&k| intervals[k].clone()).collect();
            terms.push(TypeTerm::ground(&d.name, args));
            // odometer over the interval list
            let mut pos = choice.len();
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                choice[pos] += 1;
                if choice[pos] < intervals.len() {
                    break;
                }
                choice[pos] = 0;
            }
            if choice.iter().all(|&k| k == 0) {
                break;
            }
        }
    }
    Ok(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::parse_type;

    fn sample() -> ClassTable {
        ClassTable::parse(include_str!("../tables/sample.cls")).unwrap()
    }

    fn p(t: &ClassTable, s: &str) -> TypeTerm {
        parse_type(t, s).unwrap()
    }

    #[test]
    fn depth_zero_without_generics() {
        let t = ClassTable::parse("class Object\nclass String extends Object").unwrap();
        let rel = build_relation(&t, 0).unwrap();
        let names: Vec<String> = rel.universe().iter().map(|x| format_type(&t, x)).collect();
        assert_eq!(names, ["Null", "Object", "String"]);
        assert!(rel.is_subtype(&p(&t, "String"), &p(&t, "Object")).unwrap());
        assert!(!rel.is_subtype(&p(&t, "Object"), &p(&t, "String")).unwrap());
    }

    #[test]
    fn depth_one_universe_members() {
        let t = sample();
        let rel = build_relation(&t, 1).unwrap();
        assert!(rel.contains(&p(&t, "List<String>")));
        assert!(rel.contains(&p(&t, "List<?>")));
        assert!(rel.contains(&p(&t, "List<!>")));
        assert!(!rel.contains(&p(&t, "List<[Object..String]>")));
        assert!(rel.universe().iter().all(|x| x.depth() <= 1));
    }

    #[test]
    fn sample_depth_one_edges() {
        let t = sample();
        let rel = build_relation(&t, 1).unwrap();
        let sub = |a: &str, b: &str| rel.is_subtype(&p(&t, a), &p(&t, b)).unwrap();
        assert!(sub("LinkedList<String>", "List<?>"));
        assert!(sub("List<String>", "List<?>"));
        assert!(!sub("List<?>", "List<String>"));
        assert!(sub("Enum<Weekday>", "Enum<?>"));
        assert!(sub("Weekday", "Enum<Weekday>"));
        assert!(sub("List<!>", "List<? extends Number>"));
        assert!(sub("LinkedList<!>", "List<!>"));
        assert!(sub("List<? extends Integer>", "List<? extends Number>"));
        assert!(!sub("String", "Enum<String>"));
    }

    #[test]
    fn interval_containment() {
        let t = sample();
        let rel = build_relation(&t, 1).unwrap();
        let iv = |lo: &str, hi: &str| Interval::new(p(&t, lo), p(&t, hi));
        assert!(rel.interval_contains(&iv("String", "String"), &iv("Null", "Object")).unwrap());
        assert!(rel.interval_contains(&iv("Integer", "Integer"), &iv("Integer", "Integer")).unwrap());
        assert!(rel.interval_contains(&iv("Null", "Integer"), &iv("Null", "Number")).unwrap());
        assert!(!rel.interval_contains(&iv("Null", "Number"), &iv("Null", "Integer")).unwrap());
        let deep = iv("List<List<String>>", "Object");
        assert!(matches!(
            rel.interval_contains(&deep, &iv("Null", "Object")),
            Err(Error::EndpointOutsideUniverse(_))
        ));
    }

    #[test]
    fn single_step_from_reflexive() {
        let t = sample();
        let full = build_relation(&t, 1).unwrap();
        let start = SubtypeRelation::reflexive(&t, full.universe().to_vec(), 1, Rules::default());
        let once = construction_step(&t, &start);
        let sub = |r: &SubtypeRelation, a: &str, b: &str| r.is_subtype(&p(&t, a), &p(&t, b)).unwrap();
        assert!(!sub(&start, "LinkedList<String>", "List<String>"));
        assert!(sub(&once, "LinkedList<String>", "List<String>"));
        assert!(sub(&once, "List<!>", "List<? extends Number>"));
        assert_eq!(construction_step(&t, &full), full);
    }

    #[test]
    fn outside_terms_are_rejected() {
        let t = sample();
        let rel = build_relation(&t, 1).unwrap();
        let deep = p(&t, "List<List<String>>");
        assert!(matches!(
            rel.is_subtype(&deep, &p(&t, "Object")),
            Err(Error::TermOutsideUniverse(_))
        ));
        assert!(rel.entails(&t, &deep, &p(&t, "List<?>")));
        assert!(rel.entails(&t, &p(&t, "LinkedList<LinkedList<String>>"), &p(&t, "List<?>")));
        assert!(!rel.entails(&t, &deep, &p(&t, "List<String>")));
    }

    #[test]
    fn cap_is_enforced() {
        let t = sample();
        let kernel = Kernel::new(
            t,
            BuildOptions {
                cap: 20,
                ..BuildOptions::default()
            },
        );
        assert!(kernel.relation(0).is_ok());
        assert_eq!(
            kernel.relation(1).unwrap_err(),
            Error::UniverseCapExceeded { cap: 20, depth: 1 }
        );
    }

    #[test]
    fn mutual_pairs_detection() {
        let t = sample();
        let rel = build_relation(&t, 1).unwrap();
        assert!(rel.mutual_pairs().is_empty());
        let broken = rel
            .with_extra_edge(&p(&t, "Number"), &p(&t, "Integer"))
            .unwrap();
        assert_eq!(broken.mutual_pairs(), vec![(p(&t, "Integer"), p(&t, "Number"))]);

        let single = SubtypeRelation::build_over(&t, vec![TypeTerm::Bottom], 0, Rules::default());
        assert!(single.mutual_pairs().is_empty());
    }
}
