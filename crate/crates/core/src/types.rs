//! Ground type terms over a class table.
//!
//! Every type argument is an interval `[lo..hi]`. Surface wildcards
//! desugar into intervals: `?` is `[Null..root]`, `? extends T` is
//! `[Null..T]`, `? super T` is `[T..root]` and a concrete `T` is `[T..T]`.

use std::fmt::{self, Write as _};

use crate::class_table::{ClassTable, TypeUse, BOTTOM_NAME};
use crate::error::{Error, Result};
use crate::lexer::{Cursor, Tok};
use crate::subtyping::{BuildOptions, Kernel};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeTerm {
    /// The null type, below every type.
    Bottom,
    /// `C<!>`, the co-free type of a generic class.
    Cofree(String),
    /// A class applied to one interval per declared parameter.
    Ground { class: String, args: Vec<Interval> },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub lo: TypeTerm,
    pub hi: TypeTerm,
}

impl Interval {
    pub fn new(lo: TypeTerm, hi: TypeTerm) -> Self {
        Interval { lo, hi }
    }

    pub fn point(t: TypeTerm) -> Self {
        Interval {
            lo: t.clone(),
            hi: t,
        }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }
}

impl TypeTerm {
    pub fn class(name: impl Into<String>) -> Self {
        TypeTerm::Ground {
            class: name.into(),
            args: Vec::new(),
        }
    }

    pub fn ground(name: impl Into<String>, args: Vec<Interval>) -> Self {
        TypeTerm::Ground {
            class: name.into(),
            args,
        }
    }

    pub fn cofree(name: impl Into<String>) -> Self {
        TypeTerm::Cofree(name.into())
    }

    pub fn is_ground(&self) -> bool {
        matches!(self, TypeTerm::Ground { .. })
    }

    /// Class name of a ground or co-free term.
    pub fn class_name(&self) -> Option<&str> {
        match self {
            TypeTerm::Bottom => None,
            TypeTerm::Cofree(c) | TypeTerm::Ground { class: c, .. } => Some(c),
        }
    }

    pub fn args(&self) -> &[Interval] {
        match self {
            TypeTerm::Ground { args, .. } => args,
            _ => &[],
        }
    }

    /// Nesting depth: atoms are 0, a parameterized term is one more than
    /// its deepest endpoint.
    pub fn depth(&self) -> usize {
        match self {
            TypeTerm::Ground { args, .. } if !args.is_empty() => {
                1 + args
                    .iter()
                    .map(|a| a.lo.depth().max(a.hi.depth()))
                    .max()
                    .unwrap_or(0)
            }
            _ => 0,
        }
    }

    /// True if a co-free atom occurs anywhere in the term.
    pub fn mentions_cofree(&self) -> bool {
        match self {
            TypeTerm::Cofree(_) => true,
            TypeTerm::Bottom => false,
            TypeTerm::Ground { args, .. } => args
                .iter()
                .any(|a| a.lo.mentions_cofree() || a.hi.mentions_cofree()),
        }
    }
}

/// Table-free rendering with explicit intervals; see [`format_type`] for
/// the wildcard-aware canonical form.
impl fmt::Display for TypeTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeTerm::Bottom => f.write_str(BOTTOM_NAME),
            TypeTerm::Cofree(c) => write!(f, "{c}<!>"),
            TypeTerm::Ground { class, args } => {
                f.write_str(class)?;
                if !args.is_empty() {
                    f.write_char('<')?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            f.write_str(", ")?;
                        }
                        if a.is_point() {
                            write!(f, "{}", a.lo)?;
                        } else {
                            write!(f, "[{}..{}]", a.lo, a.hi)?;
                        }
                    }
                    f.write_char('>')?;
                }
                Ok(())
            }
        }
    }
}

pub fn erase(t: &TypeTerm) -> Result<&str> {
    t.class_name().ok_or(Error::BottomHasNoErasure)
}

/// The most general wildcard instantiation `C<?, ..., ?>`.
pub fn free_type(table: &ClassTable, class: &str) -> Result<TypeTerm> {
    let decl = table.decl(class)?;
    let wildcard = Interval::new(TypeTerm::Bottom, TypeTerm::class(table.root()));
    Ok(TypeTerm::ground(class, vec![wildcard; decl.arity()]))
}

pub fn cofree_type(table: &ClassTable, class: &str) -> Result<TypeTerm> {
    let decl = table.decl(class)?;
    if !decl.is_generic() {
        return Err(Error::NotGeneric(class.to_string()));
    }
    Ok(TypeTerm::cofree(class))
}

/// The instantiation of `t`'s superclass obtained by substituting `t`'s
/// arguments into the declared `extends` clause.
///
/// A parameter used directly as a superclass argument passes its whole
/// interval through. A parameter nested inside a compound argument needs a
/// point interval; otherwise there is no single instantiation and `None` is
/// returned.
pub fn super_instantiation(table: &ClassTable, t: &TypeTerm) -> Option<TypeTerm> {
    let TypeTerm::Ground { class, args } = t else {
        return None;
    };
    let decl = table.get(class)?;
    let sup = decl.superclass.as_ref()?;
    let mut new_args = Vec::with_capacity(sup.args.len());
    for a in &sup.args {
        match decl.param_index(&a.name) {
            Some(i) if a.args.is_empty() => new_args.push(args.get(i)?.clone()),
            _ => {
                let term = substitute(a, &|name| {
                    let iv = args.get(decl.param_index(name)?)?;
                    Some(iv.is_point().then(|| iv.lo.clone()))
                })?;
                new_args.push(Interval::point(term));
            }
        }
    }
    Some(TypeTerm::ground(sup.name.clone(), new_args))
}

/// `t` followed by its successive super-instantiations, as far as they are
/// defined.
pub fn inheritance_chain(table: &ClassTable, t: &TypeTerm) -> Vec<TypeTerm> {
    let mut chain = vec![t.clone()];
    while let Some(next) = super_instantiation(table, chain.last().unwrap()) {
        chain.push(next);
    }
    chain
}

/// Instantiates a declared type expression. `lookup` resolves parameter
/// names: `None` means "not a parameter", `Some(None)` means the parameter
/// has no usable value, which fails the whole substitution.
pub(crate) fn substitute(
    use_: &TypeUse,
    lookup: &dyn Fn(&str) -> Option<Option<TypeTerm>>,
) -> Option<TypeTerm> {
    if let Some(bound) = lookup(&use_.name) {
        return bound;
    }
    let args = use_
        .args
        .iter()
        .map(|a| substitute(a, lookup).map(Interval::point))
        .collect::<Option<Vec<_>>>()?;
    Some(TypeTerm::ground(use_.name.clone(), args))
}

/// Canonical surface form. Point intervals print as the type, intervals
/// touching the extremes print as wildcards, and anything else as `[L..U]`.
pub fn format_type(table: &ClassTable, t: &TypeTerm) -> String {
    let mut out = String::new();
    write_type(&mut out, table.root(), t);
    out
}

fn write_type(out: &mut String, root: &str, t: &TypeTerm) {
    match t {
        TypeTerm::Bottom => out.push_str(BOTTOM_NAME),
        TypeTerm::Cofree(c) => {
            out.push_str(c);
            out.push_str("<!>");
        }
        TypeTerm::Ground { class, args } => {
            out.push_str(class);
            if args.is_empty() {
                return;
            }
            out.push('<');
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                let top = matches!(&a.hi, TypeTerm::Ground { class, args } if class == root && args.is_empty());
                let bottom = a.lo == TypeTerm::Bottom;
                if a.is_point() {
                    write_type(out, root, &a.lo);
                } else if bottom && top {
                    out.push('?');
                } else if bottom {
                    out.push_str("? extends ");
                    write_type(out, root, &a.hi);
                } else if top {
                    out.push_str("? super ");
                    write_type(out, root, &a.lo);
                } else {
                    out.push('[');
                    write_type(out, root, &a.lo);
                    out.push_str("..");
                    write_type(out, root, &a.hi);
                    out.push(']');
                }
            }
            out.push('>');
        }
    }
}

/// Parses surface type syntax against `table`.
pub fn parse_type(table: &ClassTable, text: &str) -> Result<TypeTerm> {
    let mut cur = Cursor::new(text)?;
    let t = parse_term(table, &mut cur)?;
    if !cur.at_end() {
        return Err(cur.error("end of input").into());
    }
    Ok(t)
}

fn parse_term(table: &ClassTable, cur: &mut Cursor) -> Result<TypeTerm> {
    let name = cur.ident()?;
    if name == BOTTOM_NAME {
        return Ok(TypeTerm::Bottom);
    }
    let decl = table.decl(&name)?;
    if cur.peek() == Some(&Tok::Lt) && cur.peek_at(1) == Some(&Tok::Bang) {
        cur.next();
        cur.next();
        cur.expect(&Tok::Gt)?;
        return cofree_type(table, &name);
    }
    let mut args = Vec::new();
    if cur.eat(&Tok::Lt) {
        loop {
            args.push(parse_arg(table, cur)?);
            if cur.eat(&Tok::Comma) {
                continue;
            }
            cur.expect(&Tok::Gt)?;
            break;
        }
    }
    if args.len() != decl.arity() {
        return Err(Error::ArityMismatch {
            name,
            expected: decl.arity(),
            found: args.len(),
        });
    }
    Ok(TypeTerm::ground(name, args))
}

fn parse_arg(table: &ClassTable, cur: &mut Cursor) -> Result<Interval> {
    let top = || TypeTerm::class(table.root());
    if cur.eat(&Tok::Question) {
        if cur.eat_keyword("extends") {
            return Ok(Interval::new(TypeTerm::Bottom, parse_term(table, cur)?));
        }
        if cur.eat_keyword("super") {
            return Ok(Interval::new(parse_term(table, cur)?, top()));
        }
        return Ok(Interval::new(TypeTerm::Bottom, top()));
    }
    if cur.eat(&Tok::LBracket) {
        let lo = parse_term(table, cur)?;
        cur.expect(&Tok::DotDot)?;
        let hi = parse_term(table, cur)?;
        cur.expect(&Tok::RBracket)?;
        return Ok(Interval::new(lo, hi));
    }
    match cur.peek() {
        Some(Tok::Ident(_)) => Ok(Interval::point(parse_term(table, cur)?)),
        _ => Err(Error::Parse(cur.error("type argument"))),
    }
}

/// All admittable terms of nesting depth at most `depth`, in canonical
/// order. Uses the default construction rules.
pub fn enumerate_universe(table: &ClassTable, depth: usize, cap: usize) -> Result<Vec<TypeTerm>> {
    let kernel = Kernel::new(
        table.clone(),
        BuildOptions {
            cap,
            ..BuildOptions::default()
        },
    );
    Ok(kernel.relation(depth)?.universe().to_vec())
}

/// Canonical sort key: the printed form.
pub(crate) fn sort_canonically(table: &ClassTable, terms: &mut Vec<TypeTerm>) {
    let mut keyed: Vec<(String, TypeTerm)> = terms
        .drain(..)
        .map(|t| (format_type(table, &t), t))
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);
    terms.extend(keyed.into_iter().map(|(_, t)| t));
}
