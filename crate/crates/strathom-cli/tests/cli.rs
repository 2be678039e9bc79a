//! Command-level behaviour: dispatch, exit codes, round-trips and the
//! stable output formats.

use strathom::metricgrp::{library, library_names, parse_metric_group};
use strathom::moddata::{format_modular_data, ising};
use strathom::stratsurf::{LabelExpr, StratifiedSurface};
use strathom_cli::run_args;

#[test]
fn unknown_commands_print_usage_with_exit_2() {
    for args in [vec![], vec!["frobnicate"], vec!["library"], vec!["mext"]] {
        let result = run_args(&args);
        assert_eq!(result.exit_code, 2, "{args:?}");
        assert!(result.stdout.contains("usage"), "{args:?}");
    }
}

#[test]
fn library_show_round_trips_for_every_builtin() {
    let listed = run_args(&["library", "list"]);
    assert_eq!(listed.exit_code, 0);
    for name in library_names() {
        assert!(listed.stdout.lines().any(|l| l == name));
        let shown = run_args(&["library", "show", name]);
        assert_eq!(shown.exit_code, 0);
        let back = parse_metric_group(&shown.stdout).unwrap();
        assert_eq!(back, library(name).unwrap(), "{name}");
    }
    assert_eq!(run_args(&["library", "show", "nope"]).exit_code, 2);
}

#[test]
fn verify_md_accepts_good_data_and_flags_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("ising.md");
    std::fs::write(&good, format_modular_data(&ising(1).unwrap())).unwrap();
    let result = run_args(&["verify-md", good.to_str().unwrap()]);
    assert_eq!(result.exit_code, 0, "{}", result.stdout);
    assert!(result.stdout.contains("all identities hold"));

    // Corrupt one S entry: Verlinde reconstruction must fail.
    let mut md = ising(1).unwrap();
    md.s[1][2] = md.s[1][2].neg();
    let bad = dir.path().join("bad.md");
    std::fs::write(&bad, format_modular_data(&md)).unwrap();
    let result = run_args(&["verify-md", bad.to_str().unwrap()]);
    assert_eq!(result.exit_code, 1);
    assert!(result.stdout.contains("FAIL"));

    // Unreadable and unparsable files are input errors.
    assert_eq!(run_args(&["verify-md", "/no/such/file"]).exit_code, 2);
    let junk = dir.path().join("junk.md");
    std::fs::write(&junk, "not modular data").unwrap();
    assert_eq!(run_args(&["verify-md", junk.to_str().unwrap()]).exit_code, 2);
}

#[test]
fn mext_command_output_and_bounds() {
    let result = run_args(&["mext", "--base", "rep-z2"]);
    assert_eq!(result.exit_code, 0);
    assert!(result.stdout.contains("classes 2"), "{}", result.stdout);
    assert!(result.stdout.contains("table"));
    // The Z/2 table.
    assert!(result.stdout.ends_with("0 1\n1 0\n"), "{}", result.stdout);

    let trivial = run_args(&["mext", "--base", "trivial"]);
    assert_eq!(trivial.exit_code, 0);
    assert!(trivial.stdout.contains("classes 1"));

    assert_eq!(run_args(&["mext", "--base", "nope"]).exit_code, 2);

    // Resource bound: with the order bound squeezed below the target the
    // command reports the overflow on exit code 3.
    std::env::set_var("STRATHOM_MAX_ORDER", "2");
    let squeezed = run_args(&["mext", "--base", "rep-z2"]);
    std::env::remove_var("STRATHOM_MAX_ORDER");
    assert_eq!(squeezed.exit_code, 3, "{}", squeezed.stdout);
}

#[test]
fn center_command() {
    let result = run_args(&["center", "--cat", "vec-z4", "--base", "rep-z2"]);
    assert_eq!(result.exit_code, 0);
    assert!(result.stdout.contains("factors 2 4"), "{}", result.stdout);
    assert!(result.stdout.contains("embedding (1)->"));
    assert_eq!(
        run_args(&["center", "--cat", "vec-z4", "--base", "svec"]).exit_code,
        2,
        "svec does not centrally embed into untwisted Vec_Z4"
    );
}

#[test]
fn surface_commands_flow() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("torus.surf");
    let torus =
        StratifiedSurface::unstratified("trivial", 1, LabelExpr::atom("toric-code"));
    std::fs::write(&path, torus.to_string()).unwrap();
    let p = path.to_str().unwrap();

    let validated = run_args(&["validate", p]);
    assert_eq!(validated.exit_code, 0);
    assert!(validated.stdout.contains("genus=1"));

    let anomaly = run_args(&["anomaly-check", p]);
    assert_eq!(anomaly.exit_code, 0, "{}", anomaly.stdout);

    let reduced = run_args(&["reduce", p, "--trace"]);
    assert_eq!(reduced.exit_code, 0);
    assert!(reduced.stdout.contains("cut-handle"), "{}", reduced.stdout);
    assert!(reduced.stdout.contains("darts 0"));

    let evaluated = run_args(&["evaluate", p]);
    assert_eq!(evaluated.exit_code, 0);
    assert!(evaluated.stdout.contains("gsd 4"), "{}", evaluated.stdout);

    // A degenerate face is a validation failure at evaluation time.
    let bad_path = dir.path().join("bad.surf");
    let bad = StratifiedSurface::unstratified("trivial", 0, LabelExpr::atom("rep-z2"));
    std::fs::write(&bad_path, bad.to_string()).unwrap();
    let result = run_args(&["evaluate", bad_path.to_str().unwrap()]);
    assert_eq!(result.exit_code, 1);
    let anomaly = run_args(&["anomaly-check", bad_path.to_str().unwrap()]);
    assert_eq!(anomaly.exit_code, 1);
    assert!(anomaly.stdout.contains("FAIL"));

    assert_eq!(run_args(&["evaluate", "/no/such.surf"]).exit_code, 2);
}

#[test]
fn surface_file_round_trip_through_cli_formats() {
    let island = StratifiedSurface::loop_island(
        "trivial",
        LabelExpr::atom("toric-code"),
        LabelExpr::atom("trivial"),
        LabelExpr::atom("vec-z2"),
    );
    let text = island.to_string();
    let back = strathom::stratsurf::parse_surface(&text).unwrap();
    assert_eq!(back.to_string(), text);
}
