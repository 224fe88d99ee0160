//! F-subtypes (coalgebras) and F-supertypes (algebras) of unary generic
//! classes, and how the free and co-free types sit among them.
//!
//! For a universe of depth `d`, membership of `Ty` is decided in the
//! relation of depth `d + 1`, which is the first one containing `F<Ty>`.
//! The maxima and minima are diagnostics: they report what the model
//! contains and never fail.

use serde_json::{json, Value};

use crate::class_table::ClassTable;
use crate::error::{Error, Result};
use crate::subtyping::{Kernel, SubtypeRelation};
use crate::types::{cofree_type, format_type, free_type, Interval, TypeTerm};

fn unary(table: &ClassTable, f: &str) -> Result<()> {
    if table.decl(f)?.arity() != 1 {
        return Err(Error::NotUnaryGeneric(f.to_string()));
    }
    Ok(())
}

fn applied(f: &str, t: &TypeTerm) -> TypeTerm {
    TypeTerm::ground(f, vec![Interval::point(t.clone())])
}

fn select(
    kernel: &Kernel,
    depth: usize,
    f: &str,
    keep: impl Fn(&SubtypeRelation, &TypeTerm, &TypeTerm) -> Result<bool>,
) -> Result<Vec<TypeTerm>> {
    unary(kernel.table(), f)?;
    let rel = kernel.relation(depth)?;
    let next = kernel.relation(depth + 1)?;
    let mut out = Vec::new();
    for t in rel.universe() {
        if keep(&next, t, &applied(f, t))? {
            out.push(t.clone());
        }
    }
    Ok(out)
}

/// All `Ty` of the depth-`depth` universe with `Ty <: F<Ty>`.
pub fn f_subtypes(kernel: &Kernel, depth: usize, f: &str) -> Result<Vec<TypeTerm>> {
    select(kernel, depth, f, |rel, t, ft| rel.is_subtype(t, ft))
}

/// All `Ty` of the depth-`depth` universe with `F<Ty> <: Ty`.
pub fn f_supertypes(kernel: &Kernel, depth: usize, f: &str) -> Result<Vec<TypeTerm>> {
    select(kernel, depth, f, |rel, t, ft| rel.is_subtype(ft, t))
}

/// Terms in both sets, i.e. fixed points up to mutual subtyping.
pub fn exact_fixed_points(kernel: &Kernel, depth: usize, f: &str) -> Result<Vec<TypeTerm>> {
    let subs = f_subtypes(kernel, depth, f)?;
    let sups = f_supertypes(kernel, depth, f)?;
    Ok(subs.into_iter().filter(|t| sups.contains(t)).collect())
}

/// Where a distinguished type (free or co-free) sits in a set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub candidate: TypeTerm,
    pub is_member: bool,
    /// Member and above (for maxima) or below (for minima) every member.
    pub is_extreme: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremaReport {
    pub class: String,
    pub depth: usize,
    pub set_size: usize,
    pub extremes: Vec<TypeTerm>,
    pub comparison: Option<Comparison>,
    pub findings: Vec<String>,
}

impl ExtremaReport {
    pub fn to_json(&self, table: &ClassTable) -> Value {
        let f = |t: &TypeTerm| format_type(table, t);
        let comparison = self.comparison.as_ref().map(|c| {
            json!({"candidate": f(&c.candidate), "is_member": c.is_member, "is_extreme": c.is_extreme})
        });
        json!({
            "class": self.class,
            "depth": self.depth,
            "set_size": self.set_size,
            "extremes": self.extremes.iter().map(f).collect::<Vec<_>>(),
            "comparison": comparison,
            "findings": self.findings,
        })
    }
}

fn extremes(rel: &SubtypeRelation, set: &[TypeTerm], greatest: bool) -> Result<Vec<TypeTerm>> {
    let idx: Vec<usize> = set
        .iter()
        .map(|t| rel.index_of(t).ok_or_else(|| Error::TermOutsideUniverse(t.to_string())))
        .collect::<Result<_>>()?;
    let above = |a: usize, b: usize| if greatest { rel.holds(a, b) } else { rel.holds(b, a) };
    Ok(idx
        .iter()
        .filter(|&&m| !idx.iter().any(|&x| x != m && above(m, x) && !above(x, m)))
        .map(|&m| rel.universe()[m].clone())
        .collect())
}

fn compare(
    rel: &SubtypeRelation,
    set: &[TypeTerm],
    candidate: TypeTerm,
    greatest: bool,
) -> Comparison {
    let is_member = set.contains(&candidate);
    let is_extreme = is_member
        && set.iter().all(|t| {
            let (a, b) = if greatest { (t, &candidate) } else { (&candidate, t) };
            rel.is_subtype(a, b).unwrap_or(false)
        });
    Comparison {
        candidate,
        is_member,
        is_extreme,
    }
}

pub fn maximal_f_subtypes(kernel: &Kernel, depth: usize, f: &str) -> Result<ExtremaReport> {
    let table = kernel.table();
    let set = f_subtypes(kernel, depth, f)?;
    let rel = kernel.relation(depth)?;
    let maxima = extremes(&rel, &set, true)?;
    let ft = free_type(table, f)?;
    let comparison = rel.contains(&ft).then(|| compare(&rel, &set, ft.clone(), true));
    let mut findings = Vec::new();
    let name = format_type(table, &ft);
    match &comparison {
        None => findings.push(format!("free type {name} is outside the depth-{depth} universe")),
        Some(c) if c.is_extreme => findings.push(format!("free type {name} is the greatest {f}-subtype")),
        Some(c) if c.is_member => {
            findings.push(format!("free type {name} is among the {f}-subtypes but not the greatest"))
        }
        Some(_) => findings.push(format!("free type {name} is not among the {f}-subtypes")),
    }
    if maxima.len() == 1 && comparison.as_ref().is_none_or(|c| !c.is_extreme) {
        findings.push(format!(
            "the greatest {f}-subtype is {}",
            format_type(table, &maxima[0])
        ));
    }
    Ok(ExtremaReport {
        class: f.to_string(),
        depth,
        set_size: set.len(),
        extremes: maxima,
        comparison,
        findings,
    })
}

pub fn minimal_f_supertypes(kernel: &Kernel, depth: usize, f: &str) -> Result<ExtremaReport> {
    let table = kernel.table();
    let set = f_supertypes(kernel, depth, f)?;
    let rel = kernel.relation(depth)?;
    let minima = extremes(&rel, &set, false)?;
    let cf = cofree_type(table, f)?;
    let comparison = rel.contains(&cf).then(|| compare(&rel, &set, cf.clone(), false));
    let mut findings = Vec::new();
    let name = format_type(table, &cf);
    match &comparison {
        None => findings.push(format!("co-free type {name} is outside the universe")),
        Some(c) if c.is_extreme => findings.push(format!("co-free type {name} is the least {f}-supertype")),
        Some(c) if c.is_member => {
            findings.push(format!("co-free type {name} is among the {f}-supertypes but not the least"))
        }
        Some(_) => findings.push(format!("co-free type {name} is not among the {f}-supertypes")),
    }
    if minima.len() == 1 && comparison.as_ref().is_none_or(|c| !c.is_extreme) {
        findings.push(format!(
            "the least {f}-supertype is {}",
            format_type(table, &minima[0])
        ));
    }
    Ok(ExtremaReport {
        class: f.to_string(),
        depth,
        set_size: set.len(),
        extremes: minima,
        comparison,
        findings,
    })
}
