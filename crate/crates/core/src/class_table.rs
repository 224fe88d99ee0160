//! Generic class declarations and the subclassing preorder they induce.
//!
//! A table is parsed from a small declaration language:
//!
//! ```text
//! class Object
//! class List<T> extends Object
//! class Enum<T extends Enum<T>> extends Object
//! ```
//!
//! Every table names its root class explicitly. Bounds are recorded as
//! written and only interpreted by the validity checker.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, ParseError, Result, ValidationError};
use crate::lexer::{Cursor, Tok};

/// Name reserved for the bottom type in type-term syntax.
pub const BOTTOM_NAME: &str = "Null";

/// A class name applied to argument expressions, as written in a declaration.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TypeUse {
    pub name: String,
    pub args: Vec<TypeUse>,
}

impl TypeUse {
    pub fn simple(name: impl Into<String>) -> Self {
        TypeUse {
            name: name.into(),
            args: Vec::new(),
        }
    }

    pub fn applied(name: impl Into<String>, args: Vec<TypeUse>) -> Self {
        TypeUse {
            name: name.into(),
            args,
        }
    }

    /// True if any identifier in this expression satisfies `pred`.
    pub fn mentions(&self, pred: &dyn Fn(&str) -> bool) -> bool {
        pred(&self.name) || self.args.iter().any(|a| a.mentions(pred))
    }
}

impl fmt::Display for TypeUse {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        if !self.args.is_empty() {
            f.write_str("<")?;
            for (i, a) in self.args.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{a}")?;
            }
            f.write_str(">")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeParam {
    pub name: String,
    /// `None` means the root class.
    pub upper_bound: Option<TypeUse>,
    /// `None` means the bottom type.
    pub lower_bound: Option<TypeUse>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassDecl {
    pub name: String,
    pub params: Vec<TypeParam>,
    pub superclass: Option<TypeUse>,
}

impl ClassDecl {
    pub fn arity(&self) -> usize {
        self.params.len()
    }

    pub fn is_generic(&self) -> bool {
        !self.params.is_empty()
    }

    pub fn param_index(&self, name: &str) -> Option<usize> {
        self.params.iter().position(|p| p.name == name)
    }

    /// True if some parameter bound mentions a parameter of this class.
    pub fn is_f_bounded(&self) -> bool {
        let is_param = |n: &str| self.param_index(n).is_some();
        self.params.iter().any(|p| {
            p.upper_bound.iter().chain(p.lower_bound.iter()).any(|b| b.mentions(&is_param))
        })
    }
}

impl fmt::Display for ClassDecl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "class {}", self.name)?;
        if !self.params.is_empty() {
            f.write_str("<")?;
            for (i, p) in self.params.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                f.write_str(&p.name)?;
                if let Some(b) = &p.upper_bound {
                    write!(f, " extends {b}")?;
                }
                if let Some(b) = &p.lower_bound {
                    write!(f, " super {b}")?;
                }
            }
            f.write_str(">")?;
        }
        if let Some(s) = &self.superclass {
            write!(f, " extends {s}")?;
        }
        Ok(())
    }
}

/// A validated, immutable class table.
///
/// Declarations keep their source order; that order is the canonical class
/// order used by every analysis that iterates over classes.
#[derive(Clone, Debug)]
pub struct ClassTable {
    decls: Vec<ClassDecl>,
    index: HashMap<String, usize>,
    root: usize,
    /// `ancestors[i]` lists `i` and then every superclass up to the root.
    ancestors: Vec<Vec<usize>>,
}

impl PartialEq for ClassTable {
    fn eq(&self, other: &Self) -> bool {
        self.decls == other.decls && self.root == other.root
    }
}

impl Eq for ClassTable {}

impl ClassTable {
    pub fn parse(source: &str) -> Result<Self> {
        parse_class_table(source)
    }

    pub fn from_decls(decls: Vec<ClassDecl>) -> Result<Self> {
        Ok(validate(decls)?)
    }

    pub fn decls(&self) -> &[ClassDecl] {
        &self.decls
    }

    pub fn class_names(&self) -> impl Iterator<Item = &str> {
        self.decls.iter().map(|d| d.name.as_str())
    }

    pub fn root(&self) -> &str {
        &self.decls[self.root].name
    }

    pub fn get(&self, name: &str) -> Option<&ClassDecl> {
        self.index.get(name).map(|&i| &self.decls[i])
    }

    pub fn decl(&self, name: &str) -> Result<&ClassDecl> {
        self.get(name).ok_or_else(|| Error::UnknownClass(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    /// Reflexive-transitive closure of the extends edges.
    pub fn subclass_of(&self, sub: &str, sup: &str) -> Result<bool> {
        let s = self.id(sub)?;
        let t = self.id(sup)?;
        Ok(self.ancestors[s].contains(&t))
    }

    /// `name` followed by its superclasses, ending at the root.
    pub fn ancestors(&self, name: &str) -> Result<impl Iterator<Item = &str>> {
        let i = self.id(name)?;
        Ok(self.ancestors[i].iter().map(|&j| self.decls[j].name.as_str()))
    }

    /// Stable 64-bit fingerprint of the canonical printed form.
    pub fn fingerprint(&self) -> String {
        let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
        for b in self.to_string().bytes() {
            hash ^= u64::from(b);
            hash = hash.wrapping_mul(0x0100_0000_01b3);
        }
        format!("{hash:016x}")
    }

    fn id(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownClass(name.to_string()))
    }
}

/// Canonical pretty-printer; `parse_class_table` inverts it.
impl fmt::Display for ClassTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.decls {
            writeln!(f, "{d}")?;
        }
        Ok(())
    }
}

pub fn parse_class_table(source: &str) -> Result<ClassTable> {
    let decls = parse_decls(source)?;
    Ok(validate(decls)?)
}

fn parse_decls(source: &str) -> Result<Vec<ClassDecl>, ParseError> {
    let mut cur = Cursor::new(source)?;
    let mut decls = Vec::new();
    loop {
        cur.expect_keyword("class")?;
        decls.push(parse_decl(&mut cur)?);
        if cur.at_end() {
            break;
        }
    }
    Ok(decls)
}

fn parse_decl(cur: &mut Cursor) -> Result<ClassDecl, ParseError> {
    let name = cur.ident()?;
    let mut params = Vec::new();
    if cur.eat(&Tok::Lt) {
        loop {
            params.push(parse_param(cur)?);
            if cur.eat(&Tok::Comma) {
                continue;
            }
            cur.expect(&Tok::Gt)?;
            break;
        }
    }
    let superclass = if cur.eat_keyword("extends") {
        Some(parse_type_use(cur)?)
    } else {
        None
    };
    if !cur.at_end() && !matches!(cur.peek(), Some(Tok::Ident(s)) if s == "class") {
        return Err(cur.error("`class`, `extends` or end of input"));
    }
    Ok(ClassDecl {
        name,
        params,
        superclass,
    })
}

fn parse_param(cur: &mut Cursor) -> Result<TypeParam, ParseError> {
    let name = cur.ident()?;
    let upper_bound = if cur.eat_keyword("extends") {
        Some(parse_type_use(cur)?)
    } else {
        None
    };
    let lower_bound = if cur.eat_keyword("super") {
        Some(parse_type_use(cur)?)
    } else {
        None
    };
    Ok(TypeParam {
        name,
        upper_bound,
        lower_bound,
    })
}

fn parse_type_use(cur: &mut Cursor) -> Result<TypeUse, ParseError> {
    let name = cur.ident()?;
    let mut args = Vec::new();
    if cur.eat(&Tok::Lt) {
        loop {
            args.push(parse_type_use(cur)?);
            if cur.eat(&Tok::Comma) {
                continue;
            }
            cur.expect(&Tok::Gt)?;
            break;
        }
    }
    Ok(TypeUse { name, args })
}

fn validate(decls: Vec<ClassDecl>) -> Result<ClassTable, ValidationError> {
    let mut index = HashMap::new();
    for (i, d) in decls.iter().enumerate() {
        if d.name == BOTTOM_NAME {
            return Err(ValidationError::ReservedName(d.name.clone()));
        }
        if index.insert(d.name.clone(), i).is_some() {
            return Err(ValidationError::DuplicateClass(d.name.clone()));
        }
    }

    for d in &decls {
        for (i, p) in d.params.iter().enumerate() {
            if d.params[..i].iter().any(|q| q.name == p.name) {
                return Err(ValidationError::DuplicateParam {
                    class: d.name.clone(),
                    param: p.name.clone(),
                });
            }
        }
        if let Some(sup) = &d.superclass {
            if d.param_index(&sup.name).is_some() {
                return Err(ValidationError::SuperclassIsParam {
                    class: d.name.clone(),
                    param: sup.name.clone(),
                });
            }
            check_use(&decls, &index, d, sup)?;
        }
        for p in &d.params {
            for b in p.upper_bound.iter().chain(p.lower_bound.iter()) {
                check_use(&decls, &index, d, b)?;
            }
        }
    }

    let parent: Vec<Option<usize>> = decls
        .iter()
        .map(|d| d.superclass.as_ref().map(|s| index[&s.name]))
        .collect();

    let mut ancestors = Vec::with_capacity(decls.len());
    for start in 0..decls.len() {
        let mut chain = vec![start];
        let mut cur = start;
        while let Some(p) = parent[cur] {
            if let Some(pos) = chain.iter().position(|&c| c == p) {
                let mut cycle: Vec<String> =
                    chain[pos..].iter().map(|&c| decls[c].name.clone()).collect();
                cycle.push(decls[p].name.clone());
                return Err(ValidationError::ExtendsCycle(cycle));
            }
            chain.push(p);
            cur = p;
        }
        ancestors.push(chain);
    }

    let roots: Vec<usize> = (0..decls.len()).filter(|&i| parent[i].is_none()).collect();
    let root = match roots.as_slice() {
        [] => return Err(ValidationError::NoRoot),
        [r] => *r,
        many => {
            return Err(ValidationError::MultipleRoots(
                many.iter().map(|&r| decls[r].name.clone()).collect(),
            ))
        }
    };

    Ok(ClassTable {
        decls,
        index,
        root,
        ancestors,
    })
}

fn check_use(
    decls: &[ClassDecl],
    index: &HashMap<String, usize>,
    owner: &ClassDecl,
    use_: &TypeUse,
) -> Result<(), ValidationError> {
    let expected = if owner.param_index(&use_.name).is_some() {
        0
    } else if let Some(&i) = index.get(&use_.name) {
        decls[i].arity()
    } else {
        return Err(ValidationError::UnknownName {
            class: owner.name.clone(),
            name: use_.name.clone(),
        });
    };
    if use_.args.len() != expected {
        return Err(ValidationError::ArityMismatch {
            name: use_.name.clone(),
            expected,
            found: use_.args.len(),
        });
    }
    for a in &use_.args {
        check_use(decls, index, owner, a)?;
    }
    Ok(())
}
