//! Command-line front end over the s-expression term language.

mod document;
mod dot;
mod sexpr;
mod syntax;
mod verify;

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::kernel::{typecheck, Term};
use crate::matrix::{evaluate, matrix_to_json, Model, ModelKind, ModelScalar};
use crate::rewrite::{compare, normalize_traced};
use crate::Error;

pub use document::{Environment, MorphismDecl, TermDocument, PRELUDE};
pub use dot::{export_dot, stage_count};
pub use sexpr::{read_all, read_one, ParseError, Pos, Sexp};
pub use syntax::{parse_object, parse_term, print_object, print_scalar, print_term};
pub use verify::{rel_nobase, run_suite, SUITES};

#[derive(Debug, Parser)]
#[command(name = "catqm", version, about = "Typecheck, evaluate, rewrite and verify dagger compact closed terms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the judgment of the entry term.
    Check { file: PathBuf },
    /// Print the entry term's matrix as JSON.
    Eval {
        file: PathBuf,
        #[arg(long, default_value = "fdhilb-exact")]
        model: ModelKind,
    },
    /// Compare the entry terms of two documents.
    Eq {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value = "fdhilb-exact")]
        model: ModelKind,
    },
    /// Print the normal form of the entry term.
    Normalize {
        file: PathBuf,
        /// List the rules fired, one per line, on stderr.
        #[arg(long)]
        trace: bool,
    },
    /// Run a verification suite and print one JSON report per case.
    Verify {
        /// teleportation, lgt, cnot, swap, constructions, rel-nobase or all
        suite: String,
        #[arg(long, default_value = "fdhilb-exact")]
        model: ModelKind,
        /// Report `ms` as 0 for byte-stable output.
        #[arg(long)]
        no_timing: bool,
    },
    /// Render the entry term as a Graphviz digraph.
    ExportDot { file: PathBuf },
    /// Print a document in canonical form.
    Fmt { file: PathBuf },
}

fn read_doc(path: &Path) -> Result<TermDocument, Error> {
    let mut text = String::new();
    if path == Path::new("-") {
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|source| Error::Io { path: path.display().to_string(), source })?;
    } else {
        text =
            std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.display().to_string(), source })?;
    }
    Ok(TermDocument::parse(&text)?)
}

fn jobs() -> Option<usize> {
    std::env::var("CATQM_JOBS").ok().and_then(|v| v.parse().ok())
}

fn eval_json<S: ModelScalar>(doc: &TermDocument, env: &Environment, model: &Model<S>) -> Result<String, Error> {
    let m = evaluate(doc.entry()?, &env.sig, model)?;
    Ok(matrix_to_json(&m).to_string())
}

fn eq_json<S: ModelScalar>(
    a: &TermDocument,
    b: &TermDocument,
    env: &Environment,
    model: &Model<S>,
) -> Result<(bool, String), Error> {
    let c = compare(a.entry()?, b.entry()?, &env.sig, model)?;
    let mut v = json!({ "equal": c.equal(), "judgment": c.judgment.to_string(), "model": S::KIND.as_str() });
    if let Some((i, j)) = c.witness {
        v["witness"] = json!([i, j]);
        v["lhs_entry"] = S::to_json(c.lhs.get(i, j));
        v["rhs_entry"] = S::to_json(c.rhs.get(i, j));
    }
    Ok((c.equal(), v.to_string()))
}

/// The entry term's matrix in `model`, as JSON text.
pub fn evaluate_document(doc: &TermDocument, model: ModelKind) -> Result<String, Error> {
    let env = doc.setting()?;
    match model {
        ModelKind::FdHilbExact => eval_json(doc, &env, &env.exact),
        ModelKind::Rel => eval_json(doc, &env, &env.rel),
        ModelKind::FdHilbFloat => eval_json(doc, &env, &env.float()),
    }
}

/// Compare the entry terms of two documents over their joint declarations.
/// Returns whether they are equal and the JSON report.
pub fn compare_documents(a: &TermDocument, b: &TermDocument, model: ModelKind) -> Result<(bool, String), Error> {
    let mut env = a.setting()?;
    env.extend(b)?;
    match model {
        ModelKind::FdHilbExact => eq_json(a, b, &env, &env.exact),
        ModelKind::Rel => eq_json(a, b, &env, &env.rel),
        ModelKind::FdHilbFloat => eq_json(a, b, &env, &env.float()),
    }
}

/// Normal form of the entry term and the rules fired to reach it.
pub fn normalize_document(doc: &TermDocument) -> Result<(Term, Vec<&'static str>), Error> {
    let env = doc.setting()?;
    let t = doc.entry()?;
    typecheck(t, &env.sig)?;
    Ok(normalize_traced(t, &env.sig))
}

/// Graphviz rendering of the entry term.
pub fn document_dot(doc: &TermDocument) -> Result<String, Error> {
    let env = doc.setting()?;
    Ok(export_dot(doc.entry()?, &env.sig)?)
}

fn write_line(out: &mut dyn Write, line: &str) -> Result<(), Error> {
    writeln!(out, "{line}").map_err(|source| Error::Io { path: "<stdout>".into(), source })
}

/// Execute one command, writing its output to `out`.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Error> {
    match cli.command {
        Command::Check { file } => {
            let doc = read_doc(&file)?;
            write_line(out, &doc.check()?.to_string())
        }
        Command::Eval { file, model } => write_line(out, &evaluate_document(&read_doc(&file)?, model)?),
        Command::Eq { a, b, model } => {
            let (equal, text) = compare_documents(&read_doc(&a)?, &read_doc(&b)?, model)?;
            write_line(out, &text)?;
            if equal {
                Ok(())
            } else {
                Err(Error::Unequal(1))
            }
        }
        Command::Normalize { file, trace } => {
            let (nf, fired) = normalize_document(&read_doc(&file)?)?;
            if trace {
                for rule in fired {
                    writeln!(err, "{rule}").map_err(|source| Error::Io { path: "<stderr>".into(), source })?;
                }
            }
            write_line(out, &print_term(&nf))
        }
        Command::Verify { suite, model, no_timing } => {
            let reports = run_suite(&suite, model, jobs(), !no_timing)?;
            for r in &reports {
                write_line(out, &r.to_json().to_string())?;
            }
            match reports.iter().filter(|r| !r.equal).count() {
                0 => Ok(()),
                n => Err(Error::Unequal(n)),
            }
        }
        Command::ExportDot { file } => {
            let dot = document_dot(&read_doc(&file)?)?;
            out.write_all(dot.as_bytes()).map_err(|source| Error::Io { path: "<stdout>".into(), source })
        }
        Command::Fmt { file } => {
            let doc = read_doc(&file)?;
            out.write_all(doc.print().as_bytes()).map_err(|source| Error::Io { path: "<stdout>".into(), source })
        }
    }
}
