use std::fmt;

use thiserror::Error;

/// A syntax error with its 1-based source position.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{column}: expected {expected}, found {found}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: String,
    pub found: String,
}

/// Structural problems in a syntactically well-formed class table.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("class `{0}` is declared more than once")]
    DuplicateClass(String),
    #[error("class `{class}` declares parameter `{param}` more than once")]
    DuplicateParam { class: String, param: String },
    #[error("`{name}` is not a declared class or a parameter of `{class}`")]
    UnknownName { class: String, name: String },
    #[error("`{name}` expects {expected} type argument(s), found {found}")]
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("class `{class}` extends its own type parameter `{param}`")]
    SuperclassIsParam { class: String, param: String },
    #[error("extends cycle: {}", .0.join(" -> "))]
    ExtendsCycle(Vec<String>),
    #[error("no root class: every class has a superclass")]
    NoRoot,
    #[error("more than one root class: {}", .0.join(", "))]
    MultipleRoots(Vec<String>),
    #[error("`{0}` is reserved for the bottom type")]
    ReservedName(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("invalid class table: {0}")]
    Validation(#[from] ValidationError),
    #[error("unknown class `{0}`")]
    UnknownClass(String),
    #[error("`{name}` expects {expected} type argument(s), found {found}")]
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("the bottom type has no erasure")]
    BottomHasNoErasure,
    #[error("class `{0}` is not generic")]
    NotGeneric(String),
    #[error("class `{0}` is not a unary generic class")]
    NotUnaryGeneric(String),
    #[error("universe exceeds the cap of {cap} terms at depth {depth}")]
    UniverseCapExceeded { cap: usize, depth: usize },
    #[error("`{0}` is outside the universe of the relation")]
    TermOutsideUniverse(String),
    #[error("interval endpoint `{0}` is outside the universe of the relation")]
    EndpointOutsideUniverse(String),
    #[error("free type `{0}` is outside the universe; build at a greater depth")]
    FreeTypeOutsideUniverse(String),
    #[error("malformed relation document: {0}")]
    Import(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Renders a found-token description for parse errors.
pub(crate) struct Found<'a>(pub Option<&'a str>);

impl fmt::Display for Found<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Some(text) => write!(f, "`{text}`"),
            None => f.write_str("end of input"),
        }
    }
}
