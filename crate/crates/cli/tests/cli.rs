use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spatemp"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_spatemp"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn exit_codes_follow_the_verdict() {
    let flags: [&[&str]; 4] = [&[], &["--witness"], &["--format", "json"], &["--trace", "--seed", "9"]];
    for extra in flags {
        for (file, code) in [
            ("examples/example1.tbox", 1),
            ("examples/example1-tpp.tbox", 0),
            ("examples/chain.tbox", 1),
            ("examples/constructs.tbox", 0),
            ("examples/disjunction.tbox", 0),
            ("examples/cyct-orientation.tbox", 0),
            ("examples/cyct-reversal.tbox", 1),
        ] {
            let mut args = vec!["check", file];
            args.extend_from_slice(extra);
            assert_eq!(run(&args).status.code(), Some(code), "{args:?}");
        }
    }
}

#[test]
fn errors_exit_two_on_stderr() {
    let missing = run(&["check", "examples/missing.tbox"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("missing.tbox"));

    let bad_flag = run(&["check", "examples/example1.tbox", "--format", "xml"]);
    assert_eq!(bad_flag.status.code(), Some(2));

    let witness_elsewhere = run(&["validate", "examples/example1.tbox", "--witness"]);
    assert_eq!(witness_elsewhere.status.code(), Some(2));

    let parse = run_stdin(&["check", "-"], "domain rcc8.\nC := some(g1).EC .");
    assert_eq!(parse.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&parse.stderr).contains("-:2:6"));
    assert!(parse.stdout.is_empty());

    let invalid = run_stdin(&["check", "-"], "domain rcc8. C := exists o . D .");
    assert_eq!(invalid.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&invalid.stderr).contains("undefined target D"));
}

#[test]
fn validate_reports_diagnostics() {
    let ok = run(&["validate", "examples/constructs.tbox"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).starts_with("ok: 3 axioms"));

    let bad = run_stdin(&["validate", "-"], "domain rcc8. C := a and exists o . a . a := top .");
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn text_report_names_the_culprit() {
    let out = stdout(&run(&["check", "examples/example1.tbox"]));
    assert_eq!(
        out,
        "UNSAT\nconflict (spatial): spatial conflict C1/C3 on (g1,g3)\nbranches: 1\n"
    );
}

#[test]
fn json_report_carries_the_witness_only_on_request() {
    let plain: serde_json::Value =
        serde_json::from_str(&stdout(&run(&["check", "examples/example1-tpp.tbox", "--format", "json"]))).unwrap();
    assert_eq!(plain["sat"], true);
    assert!(plain.get("witness").is_none());

    let full: serde_json::Value = serde_json::from_str(&stdout(&run(&[
        "check",
        "examples/example1-tpp.tbox",
        "--format",
        "json",
        "--witness",
    ])))
    .unwrap();
    let w: spatemp::reasoner::Witness = serde_json::from_value(full["witness"].clone()).unwrap();
    assert_eq!(w.endpoints.len(), 3);
}

#[test]
fn fixed_seed_output_is_byte_identical() {
    for file in ["examples/constructs.tbox", "examples/disjunction.tbox", "examples/chain.tbox"] {
        for seed in ["0", "17"] {
            let args = ["check", file, "--witness", "--trace", "--seed", seed];
            let first = run(&args);
            let second = run(&args);
            assert_eq!(first.stdout, second.stdout, "{file} seed {seed}");
        }
    }
}

#[test]
fn trace_lines_precede_the_verdict() {
    let out = stdout(&run(&["check", "examples/disjunction.tbox", "--trace"]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "trace: disjuncts [0, 0]");
    assert!(lines[1].contains("propositional conflict A/B on p"));
    assert!(out.contains("\nSAT\n"));
}

#[test]
fn derive_tables_flags_two_errata() {
    let out = run(&["derive-tables"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let flagged: Vec<&str> = text.lines().filter(|l| l.contains("ERRATUM")).collect();
    assert_eq!(flagged.len(), 2);
    assert!(flagged[0].starts_with("oi") && flagged[0].ends_with("ERRATUM ree"));
    assert!(flagged[1].starts_with("eq") && flagged[1].ends_with("ERRATUM reb"));
}
