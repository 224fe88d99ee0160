//! Command-line frontend.
//!
//! Every subcommand loads the class table given by `--table`, builds the
//! relations it needs through a [`Kernel`] and prints text, JSON or DOT.
//! Exit codes: 0 on success (a `false` answer is a success), 1 when a
//! verification finds violations, 2 on usage, parse and build errors.

use std::io::Write;
use std::path::PathBuf;

use clap::builder::TypedValueParser;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::adjunction::{check_galois, check_closure_laws, ClosureViolation, closure_class, closure_type, closed_types};
use crate::class_table::ClassTable;
use crate::error::Error;
use crate::export;
use crate::fixpoint::{exact_fixed_points, f_subtypes, f_supertypes, maximal_f_subtypes, minimal_f_supertypes};
use crate::subtyping::{BuildOptions, Kernel, Rules};
use crate::types::{format_type, parse_type, TypeTerm};
use crate::validity::{check_validity, ValidityAssignment, ValidityMode};

/// Largest depth accepted without `--allow-deep`.
pub const DEPTH_GUARD: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Ind,
    Coind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Quantify {
    Admittable,
    Valid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExportFormat {
    Dot,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "nomsub", version, about = "Nominal generic subtyping from subclassing")]
pub struct Cli {
    /// Class table file.
    #[arg(long, global = true, value_name = "FILE")]
    pub table: Option<PathBuf>,
    /// Universe depth.
    #[arg(long, global = true, default_value_t = 1)]
    pub depth: usize,
    /// Maximum number of universe terms.
    #[arg(long, global = true, default_value_t = crate::subtyping::DEFAULT_UNIVERSE_CAP,
          value_parser = clap::value_parser!(u64).range(1..).map(|v| v as usize))]
    pub cap: usize,
    /// Validity reading.
    #[arg(long, global = true, value_enum, default_value_t = Mode::Ind)]
    pub mode: Mode,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Apply the co-free axioms (default).
    #[arg(long, global = true, overrides_with = "no_cofree")]
    pub include_cofree: bool,
    /// Leave the co-free axioms out of the construction.
    #[arg(long, global = true, overrides_with = "include_cofree")]
    pub no_cofree: bool,
    /// Domain of the adjunction grid.
    #[arg(long, global = true, value_enum, default_value_t = Quantify::Admittable)]
    pub quantify: Quantify,
    /// Permit depths above the cost guard.
    #[arg(long, global = true)]
    pub allow_deep: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate the class table.
    Check,
    /// List the universe.
    Universe,
    /// Decide T1 <: T2.
    Subtype { sub: String, sup: String },
    /// Build the relation and export it.
    Build {
        #[arg(long, value_enum)]
        export: Option<ExportFormat>,
    },
    /// Check the erasure adjunction over every (type, class) pair.
    Galois,
    /// Closure operator FT∘E and its laws.
    Closures,
    /// Types Ty with Ty <: C<Ty>.
    Fsub { class: String },
    /// Types Ty with C<Ty> <: Ty.
    Fsup { class: String },
    /// Maximal F-subtypes of C.
    Maxima { class: String },
    /// Minimal F-supertypes of C.
    Minima { class: String },
    /// Valid versus invalid instantiations.
    Validity,
    /// Every analysis in one JSON document.
    Report,
}

/// Runs with the process's standard streams.
pub fn run(argv: &[String]) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// `argv[0]` is the program name, as in `std::env::args`.
pub fn run_with(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = std::result::Result<i32, Failure>;

fn load(cli: &Cli) -> std::result::Result<Kernel, Failure> {
    let path = cli
        .table
        .as_ref()
        .ok_or_else(|| Failure("no class table given (use --table FILE)".into()))?;
    let source = std::fs::read_to_string(path)
        .map_err(|e| Failure(format!("cannot read {}: {e}", path.display())))?;
    let table = ClassTable::parse(&source).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    let options = BuildOptions {
        cap: cli.cap,
        rules: Rules {
            cofree_axioms: !cli.no_cofree,
        },
    };
    Ok(Kernel::new(table, options))
}

fn validity_mode(m: Mode) -> ValidityMode {
    match m {
        Mode::Ind => ValidityMode::Inductive,
        Mode::Coind => ValidityMode::Coinductive,
    }
}

fn emit_json(out: &mut dyn Write, v: &Value) -> std::io::Result<()> {
    let text = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    writeln!(out, "{text}")
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    if cli.depth > DEPTH_GUARD && !cli.allow_deep {
        return Err(Failure(format!(
            "depth {} exceeds the guard of {DEPTH_GUARD}; pass --allow-deep to proceed",
            cli.depth
        )));
    }
    let dot_ok = matches!(cli.command, Command::Build { .. });
    if cli.format == Format::Dot && !dot_ok {
        return Err(Failure("--format dot is only available for `build`".into()));
    }
    let kernel = load(cli)?;
    let table = kernel.table();
    let fmt = |t: &TypeTerm| format_type(table, t);
    let depth = cli.depth;

    match &cli.command {
        Command::Check => {
            let generic: Vec<&str> = table
                .decls()
                .iter()
                .filter(|d| d.is_generic())
                .map(|d| d.name.as_str())
                .collect();
            match cli.format {
                Format::Json => emit_json(
                    out,
                    &json!({
                        "ok": true,
                        "classes": table.class_names().collect::<Vec<_>>(),
                        "generic": generic,
                        "root": table.root(),
                        "fingerprint": table.fingerprint(),
                    }),
                )?,
                _ => {
                    writeln!(
                        out,
                        "ok: {} classes ({} generic), root {}, fingerprint {}",
                        table.decls().len(),
                        generic.len(),
                        table.root(),
                        table.fingerprint()
                    )?;
                    write!(out, "{table}")?;
                }
            }
            Ok(0)
        }
        Command::Universe => {
            let rel = kernel.relation(depth)?;
            let terms: Vec<String> = rel.universe().iter().map(fmt).collect();
            match cli.format {
                Format::Json => emit_json(out, &json!({"depth": depth, "size": terms.len(), "terms": terms}))?,
                _ => {
                    writeln!(out, "{} terms at depth {depth}", terms.len())?;
                    for t in &terms {
                        writeln!(out, "{t}")?;
                    }
                }
            }
            Ok(0)
        }
        Command::Subtype { sub, sup } => {
            let a = parse_type(table, sub)?;
            let b = parse_type(table, sup)?;
            let need = a.depth().max(b.depth());
            let used = depth.max(need).min(if cli.allow_deep { usize::MAX } else { DEPTH_GUARD });
            if used != depth {
                writeln!(err, "note: answering in the depth-{used} universe")?;
            }
            let rel = kernel.relation(used)?;
            for t in [&a, &b] {
                warn_unordered(table, &rel, t, err)?;
            }
            let (answer, inside) = match rel.is_subtype(&a, &b) {
                Ok(v) => (v, true),
                Err(Error::TermOutsideUniverse(_)) => (rel.entails(table, &a, &b), false),
                Err(e) => return Err(e.into()),
            };
            if !inside {
                writeln!(err, "warning: a term lies outside the depth-{} universe; answer derived structurally", rel.depth())?;
            }
            match cli.format {
                Format::Json => emit_json(
                    out,
                    &json!({"sub": fmt(&a), "sup": fmt(&b), "depth": rel.depth(), "holds": answer}),
                )?,
                _ => writeln!(out, "{answer}")?,
            }
            Ok(0)
        }
        Command::Build { export: e } => {
            let rel = kernel.relation(depth)?;
            let target = match (e, cli.format) {
                (Some(ExportFormat::Dot), _) | (None, Format::Dot) => Format::Dot,
                (Some(ExportFormat::Json), _) | (None, Format::Json) => Format::Json,
                (None, Format::Text) => Format::Text,
            };
            match target {
                Format::Dot => write!(out, "{}", export::to_dot(table, &rel))?,
                Format::Json => writeln!(out, "{}", export::to_json(table, &rel))?,
                Format::Text => writeln!(
                    out,
                    "depth {}: {} terms, {} related pairs, {} iterations",
                    rel.depth(),
                    rel.len(),
                    rel.edge_count(),
                    rel.iterations()
                )?,
            }
            Ok(0)
        }
        Command::Galois => {
            let rel = kernel.relation(depth)?;
            let domain = domain(cli, &kernel, depth)?;
            let report = check_galois(table, &rel, domain.as_ref())?;
            match cli.format {
                Format::Json => emit_json(out, &report.to_json(table))?,
                _ => {
                    writeln!(out, "{} violations / {} pairs", report.violations.len(), report.checked_pairs)?;
                    for v in &report.violations {
                        writeln!(out, "  {} / {}: {}", fmt(&v.ty), v.class, v.direction)?;
                    }
                    if !report.cofree_violations.is_empty() {
                        writeln!(out, "{} co-free violations (isolated)", report.cofree_violations.len())?;
                        for v in &report.cofree_violations {
                            writeln!(out, "  {} / {}: {}", fmt(&v.ty), v.class, v.direction)?;
                        }
                    }
                    writeln!(out, "note: Null has no erasure and is not part of the grid")?;
                    let m = &report.monotonicity;
                    writeln!(
                        out,
                        "monotonicity: erasure {}, free type {}",
                        ok(m.erasure_ok),
                        ok(m.free_type_ok)
                    )?;
                    writeln!(out, "closure law violations: {}", report.closure_violations.len())?;
                    writeln!(out, "free type not greatest for: {}", listing(&report.greatest_failures))?;
                    if !report.cofree_closure_violations.is_empty() || !report.cofree_greatest_failures.is_empty() {
                        writeln!(
                            out,
                            "co-free: {} closure law violations, free type not greatest for: {}",
                            report.cofree_closure_violations.len(),
                            listing(&report.cofree_greatest_failures)
                        )?;
                    }
                }
            }
            Ok(if report.holds() { 0 } else { 1 })
        }
        Command::Closures => {
            let rel = kernel.relation(depth)?;
            let laws = check_closure_laws(table, &rel)?;
            let closed = closed_types(table, &rel);
            let mut types = Vec::new();
            for t in rel.universe().iter().filter(|t| **t != TypeTerm::Bottom) {
                let (c, unit) = closure_type(table, &rel, t)?;
                types.push((fmt(t), fmt(&c), unit));
            }
            let mut classes = Vec::new();
            for c in table.class_names() {
                let (back, same) = closure_class(table, c)?;
                classes.push((c.to_string(), back, same));
            }
            match cli.format {
                Format::Json => {
                    let mut by_class = Map::new();
                    for (c, back, same) in &classes {
                        by_class.insert(c.clone(), json!({"erasure_of_free_type": back, "identity": same}));
                    }
                    emit_json(
                        out,
                        &json!({
                            "depth": depth,
                            "types": types.iter().map(|(t, c, u)| json!({"type": t, "closure": c, "unit": u})).collect::<Vec<_>>(),
                            "classes": by_class,
                            "closed": closed.iter().map(fmt).collect::<Vec<_>>(),
                            "law_violations": laws.len(),
                        }),
                    )?
                }
                _ => {
                    writeln!(out, "{} types, {} classes, {} closed types", types.len(), classes.len(), closed.len())?;
                    for (t, c, u) in &types {
                        writeln!(out, "{t} -> {c}{}", if *u { "" } else { "  (unit fails)" })?;
                    }
                    for (c, back, same) in &classes {
                        writeln!(out, "{c} -> {back}{}", if *same { "" } else { "  (counit fails)" })?;
                    }
                    writeln!(out, "law violations: {}", laws.len())?;
                }
            }
            // As in `galois`, failures of co-free atoms are reported but not fatal.
            let fatal = laws.iter().any(|v| {
                !matches!(v, ClosureViolation::Unit(TypeTerm::Cofree(_)) | ClosureViolation::Idempotence(TypeTerm::Cofree(_)))
            });
            Ok(if fatal { 1 } else { 0 })
        }
        Command::Fsub { class } | Command::Fsup { class } => {
            let sub = matches!(cli.command, Command::Fsub { .. });
            let set = if sub {
                f_subtypes(&kernel, depth, class)?
            } else {
                f_supertypes(&kernel, depth, class)?
            };
            let fixed = exact_fixed_points(&kernel, depth, class)?;
            let label = if sub { "F-subtypes" } else { "F-supertypes" };
            match cli.format {
                Format::Json => emit_json(
                    out,
                    &json!({
                        "class": class,
                        "depth": depth,
                        "kind": if sub { "f_subtypes" } else { "f_supertypes" },
                        "size": set.len(),
                        "members": set.iter().map(fmt).collect::<Vec<_>>(),
                        "exact_fixed_points": fixed.iter().map(fmt).collect::<Vec<_>>(),
                    }),
                )?,
                _ => {
                    writeln!(out, "{} {label} of {class} at depth {depth}", set.len())?;
                    for t in &set {
                        writeln!(out, "{}", fmt(t))?;
                    }
                    writeln!(out, "exact fixed points: {}", listing(&fixed.iter().map(fmt).collect::<Vec<_>>()))?;
                }
            }
            Ok(0)
        }
        Command::Maxima { class } | Command::Minima { class } => {
            let report = if matches!(cli.command, Command::Maxima { .. }) {
                maximal_f_subtypes(&kernel, depth, class)?
            } else {
                minimal_f_supertypes(&kernel, depth, class)?
            };
            match cli.format {
                Format::Json => emit_json(out, &report.to_json(table))?,
                _ => {
                    writeln!(out, "{} extremes among {} members", report.extremes.len(), report.set_size)?;
                    for t in &report.extremes {
                        writeln!(out, "{}", fmt(t))?;
                    }
                    for f in &report.findings {
                        writeln!(out, "finding: {f}")?;
                    }
                }
            }
            Ok(0)
        }
        Command::Validity => {
            let rel = kernel.relation(depth)?;
            let v = check_validity(table, &rel, validity_mode(cli.mode));
            match cli.format {
                Format::Json => emit_json(out, &v.to_json(table))?,
                _ => {
                    writeln!(out, "{}: {} valid / {} invalid", v.mode, v.valid.len(), v.invalid.len())?;
                    for t in &v.invalid {
                        writeln!(out, "invalid {}", fmt(t))?;
                    }
                    for t in &v.valid {
                        writeln!(out, "valid {}", fmt(t))?;
                    }
                }
            }
            Ok(0)
        }
        Command::Report => {
            let (doc, holds) = report(cli, &kernel)?;
            emit_json(out, &doc)?;
            Ok(if holds { 0 } else { 1 })
        }
    }
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAILED"
    }
}

fn listing(items: &[String]) -> String {
    if items.is_empty() {
        "none".into()
    } else {
        items.join(", ")
    }
}

fn domain(cli: &Cli, kernel: &Kernel, depth: usize) -> std::result::Result<Option<ValidityAssignment>, Failure> {
    Ok(match cli.quantify {
        Quantify::Admittable => None,
        Quantify::Valid => Some(check_validity(
            kernel.table(),
            &*kernel.relation(depth)?,
            validity_mode(cli.mode),
        )),
    })
}

/// Warns about `[L..U]` arguments with `L <: U` false; such intervals are
/// empty and never part of a universe.
fn warn_unordered(
    table: &ClassTable,
    rel: &crate::subtyping::SubtypeRelation,
    t: &TypeTerm,
    err: &mut dyn Write,
) -> std::io::Result<()> {
    for a in t.args() {
        if !rel.entails(table, &a.lo, &a.hi) {
            writeln!(
                err,
                "warning: interval [{}..{}] in {} is empty",
                format_type(table, &a.lo),
                format_type(table, &a.hi),
                format_type(table, t)
            )?;
        }
        warn_unordered(table, rel, &a.lo, err)?;
        if a.hi != a.lo {
            warn_unordered(table, rel, &a.hi, err)?;
        }
    }
    Ok(())
}

fn report(cli: &Cli, kernel: &Kernel) -> std::result::Result<(Value, bool), Failure> {
    let table = kernel.table();
    let depth = cli.depth;
    let rel = kernel.relation(depth)?;
    let dom = domain(cli, kernel, depth)?;
    let galois = check_galois(table, &rel, dom.as_ref())?;
    let ind = check_validity(table, &rel, ValidityMode::Inductive);
    let coind = check_validity(table, &rel, ValidityMode::Coinductive);

    let mut fixpoints = Map::new();
    for d in table.decls().iter().filter(|d| d.arity() == 1) {
        let c = d.name.as_str();
        let f = |ts: Vec<TypeTerm>| ts.iter().map(|t| format_type(table, t)).collect::<Vec<_>>();
        fixpoints.insert(
            c.to_string(),
            json!({
                "f_subtypes": f(f_subtypes(kernel, depth, c)?),
                "f_supertypes": f(f_supertypes(kernel, depth, c)?),
                "exact_fixed_points": f(exact_fixed_points(kernel, depth, c)?),
                "maxima": maximal_f_subtypes(kernel, depth, c)?.to_json(table),
                "minima": minimal_f_supertypes(kernel, depth, c)?.to_json(table),
            }),
        );
    }

    let holds = galois.holds() && rel.mutual_pairs().is_empty();
    let doc = json!({
        "table": {
            "fingerprint": table.fingerprint(),
            "root": table.root(),
            "classes": table.class_names().collect::<Vec<_>>(),
        },
        "settings": {
            "depth": depth,
            "cap": cli.cap,
            "cofree_axioms": !cli.no_cofree,
            "quantify": match cli.quantify { Quantify::Admittable => "admittable", Quantify::Valid => "valid" },
            "mode": validity_mode(cli.mode).to_string(),
        },
        "relation": {
            "universe_size": rel.len(),
            "related_pairs": rel.edge_count(),
            "iterations": rel.iterations(),
            "mutual_pairs": rel.mutual_pairs().len(),
        },
        "galois": galois.to_json(table),
        "validity": {
            "inductive": ind.to_json(table),
            "coinductive": coind.to_json(table),
        },
        "fixpoints": fixpoints,
        "holds": holds,
    });
    Ok((doc, holds))
}
