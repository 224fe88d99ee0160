//! A kernel for nominal generic subtyping.
//!
//! Given a table of generic class declarations, `nomsub` constructs the
//! subtyping relation between parameterized types iteratively from the
//! subclassing relation alone, over a depth-bounded universe of ground
//! terms with interval type arguments. On top of the constructed relation
//! it checks the erasure/free-type adjunction and its closure laws, computes
//! F-subtypes and F-supertypes of generic classes, and separates admittable
//! from valid instantiations of F-bounded classes.

mod bitmatrix;
mod lexer;

pub mod adjunction;
pub mod class_table;
pub mod cli;
pub mod error;
pub mod export;
pub mod fixpoint;
pub mod subtyping;
pub mod types;
pub mod validity;

pub use class_table::{parse_class_table, ClassDecl, ClassTable, TypeParam, TypeUse};
pub use error::{Error, ParseError, Result, ValidationError};
pub use subtyping::{
    build_relation, construction_step, BuildOptions, Kernel, Rules, SubtypeRelation,
};
pub use types::{
    cofree_type, enumerate_universe, erase, format_type, free_type, parse_type,
    super_instantiation, Interval, TypeTerm,
};
pub use validity::{check_validity, ValidityAssignment, ValidityMode};
pub use adjunction::{check_galois, AdjunctionReport};
pub use fixpoint::{f_subtypes, f_supertypes, maximal_f_subtypes, minimal_f_supertypes};
