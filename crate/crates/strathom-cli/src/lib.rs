//! Command-line interface: category library browsing, metric-group and
//! modular-data verification, modular-extension enumeration, center
//! computation and surface evaluation, with stable machine-readable output.
//!
//! Exit codes: 0 success, 1 validation failure, 2 input error, 3 resource
//! bound exceeded. Identical inputs produce byte-identical output.

pub mod selftest;

use std::fmt::Write as _;

use strathom::centerfun::{center_over_e, fusion_cat};
use strathom::metricgrp::{library, library_names, MetricEmbedding};
use strathom::mext;
use strathom::moddata::{parse_modular_data, verify_modular_axioms};
use strathom::stratsurf::{check_anomaly_free, evaluate, parse_surface, reduce_fully};

/// Outcome of one CLI invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub stdout: String,
}

impl CommandResult {
    fn ok(stdout: String) -> Self {
        CommandResult {
            exit_code: 0,
            stdout,
        }
    }

    fn fail(code: i32, message: String) -> Self {
        CommandResult {
            exit_code: code,
            stdout: message,
        }
    }
}

const USAGE: &str = "usage: strathom <command>

commands:
  library list                    list the built-in metric groups
  library show NAME               print a built-in metric group
  verify-md FILE                  check a modular-data file
  mext --base NAME [--inner NAME] enumerate modular extensions
  center --cat NAME --base NAME   center of a pointed category over a base
  validate FILE                   validate a surface file
  anomaly-check FILE              check the anomaly-free conditions
  reduce FILE [--trace]           reduce a surface to isolated points
  evaluate FILE                   evaluate a surface to (base, u)
  selftest                        run the acceptance checks

environment:
  STRATHOM_MAX_ORDER              search bound for enumeration (default 64)
";

/// Dispatch a command line (without the program name).
pub fn run(args: &[String]) -> CommandResult {
    let strs: Vec<&str> = args.iter().map(|s| s.as_str()).collect();
    match strs.as_slice() {
        ["library", "list"] => {
            let mut out = String::new();
            for name in library_names() {
                writeln!(out, "{name}").unwrap();
            }
            CommandResult::ok(out)
        }
        ["library", "show", name] => match library(name) {
            Some(mg) => CommandResult::ok(mg.to_string()),
            None => CommandResult::fail(2, format!("unknown metric group {name:?}\n")),
        },
        ["verify-md", file] => with_file(file, |text| match parse_modular_data(text) {
            Ok(md) => {
                let report = verify_modular_axioms(&md);
                let code = if report.passed() { 0 } else { 1 };
                CommandResult {
                    exit_code: code,
                    stdout: report.to_string(),
                }
            }
            Err(e) => CommandResult::fail(2, format!("{e}\n")),
        }),
        ["mext", rest @ ..] => run_mext(rest),
        ["center", rest @ ..] => run_center(rest),
        ["validate", file] => with_file(file, |text| match parse_surface(text) {
            Ok(s) => match s.validate() {
                Ok(summary) => CommandResult::ok(format!("{summary}\n")),
                Err(e) => CommandResult::fail(1, format!("{e}\n")),
            },
            Err(e) => CommandResult::fail(2, format!("{e}\n")),
        }),
        ["anomaly-check", file] => with_file(file, |text| match parse_surface(text) {
            Ok(s) => match check_anomaly_free(&s) {
                Ok(report) => CommandResult {
                    exit_code: if report.passed() { 0 } else { 1 },
                    stdout: report.to_string(),
                },
                Err(e) => CommandResult::fail(2, format!("{e}\n")),
            },
            Err(e) => CommandResult::fail(2, format!("{e}\n")),
        }),
        ["reduce", file] => run_reduce(file, false),
        ["reduce", file, "--trace"] | ["reduce", "--trace", file] => run_reduce(file, true),
        ["evaluate", file] => with_file(file, |text| match parse_surface(text) {
            Ok(s) => match evaluate(&s) {
                Ok(result) => CommandResult::ok(result.to_string()),
                Err(e) => CommandResult::fail(1, format!("{e}\n")),
            },
            Err(e) => CommandResult::fail(2, format!("{e}\n")),
        }),
        ["selftest"] => {
            let outcomes = selftest::run_criteria();
            let mut out = String::new();
            let mut all = true;
            for o in &outcomes {
                all &= o.passed;
                writeln!(
                    out,
                    "{} {} - {}",
                    if o.passed { "PASS" } else { "FAIL" },
                    o.name,
                    o.detail
                )
                .unwrap();
            }
            CommandResult {
                exit_code: if all { 0 } else { 1 },
                stdout: out,
            }
        }
        _ => CommandResult::fail(2, USAGE.to_string()),
    }
}

fn with_file(path: &str, f: impl FnOnce(&str) -> CommandResult) -> CommandResult {
    match std::fs::read_to_string(path) {
        Ok(text) => f(&text),
        Err(e) => CommandResult::fail(2, format!("cannot read {path:?}: {e}\n")),
    }
}

fn flag_value<'a>(args: &'a [&'a str], flag: &str) -> Option<&'a str> {
    args.iter()
        .position(|a| *a == flag)
        .and_then(|i| args.get(i + 1).copied())
}

fn run_mext(args: &[&str]) -> CommandResult {
    let Some(base_name) = flag_value(args, "--base") else {
        return CommandResult::fail(2, USAGE.to_string());
    };
    let Some(base) = library(base_name) else {
        return CommandResult::fail(2, format!("unknown metric group {base_name:?}\n"));
    };
    let inner_name = flag_value(args, "--inner").unwrap_or(base_name);
    let Some(inner) = library(inner_name) else {
        return CommandResult::fail(2, format!("unknown metric group {inner_name:?}\n"));
    };
    // The base must sit inside the inner category; take the first
    // embedding in canonical order (the identity when inner = base).
    let Some(iota_base) = base.metric_embeddings_into(&inner).into_iter().next() else {
        return CommandResult::fail(
            2,
            format!("{base_name} does not embed into {inner_name}\n"),
        );
    };
    match mext::enumerate(&base, &inner, &iota_base) {
        Ok(classes) => {
            let mut out = String::new();
            writeln!(out, "base {base_name}").unwrap();
            writeln!(out, "inner {inner_name}").unwrap();
            writeln!(out, "classes {}", classes.representatives.len()).unwrap();
            for (i, rep) in classes.representatives.iter().enumerate() {
                writeln!(out, "class {i}").unwrap();
                write!(out, "{}", rep.extension).unwrap();
                let gens = rep.inner.group().generators();
                let images: Vec<String> = gens
                    .iter()
                    .map(|g| format!("{}->{}", g, rep.iota.apply(g)))
                    .collect();
                writeln!(out, "embedding {}", images.join(" ")).unwrap();
            }
            writeln!(out, "table").unwrap();
            for row in &classes.cayley {
                let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
                writeln!(out, "{}", cells.join(" ")).unwrap();
            }
            CommandResult::ok(out)
        }
        Err(mext::MextError::SearchOverflow(n, bound)) => CommandResult::fail(
            3,
            format!("search space overflow: order {n} exceeds the bound {bound}\n"),
        ),
        Err(e) => CommandResult::fail(1, format!("{e}\n")),
    }
}

fn run_center(args: &[&str]) -> CommandResult {
    let (Some(cat_name), Some(base_name)) =
        (flag_value(args, "--cat"), flag_value(args, "--base"))
    else {
        return CommandResult::fail(2, USAGE.to_string());
    };
    let Some(base) = library(base_name) else {
        return CommandResult::fail(2, format!("unknown metric group {base_name:?}\n"));
    };
    let Some(cat) = fusion_cat(cat_name, &base) else {
        return CommandResult::fail(
            2,
            format!("no pointed category {cat_name:?} over {base_name:?}\n"),
        );
    };
    match center_over_e(&cat) {
        Ok(center) => {
            let mut out = String::new();
            write!(out, "{}", center.module.carrier()).unwrap();
            let embed: &MetricEmbedding = center.module.embed();
            let gens = base.group().generators();
            let images: Vec<String> = gens
                .iter()
                .map(|g| format!("{}->{}", g, embed.apply(g)))
                .collect();
            writeln!(out, "embedding {}", images.join(" ")).unwrap();
            CommandResult::ok(out)
        }
        Err(e) => CommandResult::fail(1, format!("{e}\n")),
    }
}

fn run_reduce(file: &str, trace: bool) -> CommandResult {
    with_file(file, |text| match parse_surface(text) {
        Ok(s) => match reduce_fully(&s) {
            Ok((reduced, records)) => {
                let mut out = String::new();
                if trace {
                    for record in &records {
                        writeln!(out, "{record}").unwrap();
                    }
                }
                write!(out, "{reduced}").unwrap();
                CommandResult::ok(out)
            }
            Err(e) => CommandResult::fail(1, format!("{e}\n")),
        },
        Err(e) => CommandResult::fail(2, format!("{e}\n")),
    })
}

/// Helper for string-slice call sites (tests, selftest).
pub fn run_args(args: &[&str]) -> CommandResult {
    let owned: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    run(&owned)
}
