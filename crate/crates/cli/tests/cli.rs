use dmod_cli::{run_command, Outcome, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE, TERM_ORDER};
use serde_json::Value;

fn run(args: &[&str]) -> Outcome {
    run_command(std::iter::once("dmod").chain(args.iter().copied()))
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.code, EXIT_OK, "{args:?}: {}", out.stderr);
    out.stdout
}

#[test]
fn documented_examples() {
    assert_eq!(stdout(&["normalize", "-n", "1", "dz*z"]), "z*dz + 1\n");
    assert_eq!(
        stdout(&["solve", "-n", "1", "--degree", "5", "z*dz - 3"]),
        "z^3\n"
    );
    assert_eq!(stdout(&["sl2", "casimir", "--phi"]), "0\n");
    assert_eq!(stdout(&["sl2", "casimir"]), "4*F*E + H^2 + 2*H\n");
    assert_eq!(stdout(&["-n", "2", "normalize", "d1*x1"]), "x1*d1 + 1\n");
    assert_eq!(stdout(&["normalize", "[z*dz, z]"]), "z\n");
    assert_eq!(stdout(&["normalize", "(z*dz - 5/2)"]), "z*dz - 5/2\n");
    assert_eq!(stdout(&["normalize", "dz^2*z"]), "z*dz^2 + 2*dz\n");
    assert_eq!(stdout(&["--laurent", "normalize", "[dz, zinv]"]), "-z^-2\n");
    assert_eq!(stdout(&["commutator", "dz", "z^2"]), "2*z\n");
    assert_eq!(stdout(&["order", "z^3*dz^2 + dz"]), "2\n");
    assert_eq!(stdout(&["symbol", "--p", "2", "z*dz^2 + dz"]), "z*xi^2\n");
    assert_eq!(stdout(&["sl2", "phi", "E"]), "-dz\n");
    assert_eq!(stdout(&["sl2", "pbw-mul", "H", "E"]), "H*E\n");
    assert_eq!(stdout(&["sl2", "pbw-mul", "E", "H"]), "H*E - 2*E\n");
}

#[test]
fn ladder_and_sections_text() {
    let out = stdout(&["mlambda", "--lambda", "1/2", "--halfwidth", "2"]);
    assert!(
        out.ends_with("every generator reaches the whole window: yes\n"),
        "{out}"
    );
    let basis = stdout(&["p1-global", "basis", "--max-order", "1"]);
    assert!(basis.contains("dimension 4"), "{basis}");
    let global = stdout(&["p1-global", "is-global", "--max-order", "2", "z^2*dz"]);
    assert!(global.contains("-dzeta"), "{global}");
}

#[test]
fn exit_codes() {
    let cases: &[(&[&str], i32)] = &[
        (&["normalize", "z"], EXIT_OK),
        (&["--help"], EXIT_OK),
        (&["normalize", "x1^-1"], EXIT_USAGE),
        (&["-n", "2", "normalize", "d3"], EXIT_USAGE),
        (&["normalize", "(z"], EXIT_USAGE),
        (&["-n", "0", "normalize", "1"], EXIT_USAGE),
        (&["nonsense"], EXIT_USAGE),
        (
            &["mlambda", "--lambda", "z", "--halfwidth", "2"],
            EXIT_USAGE,
        ),
        (&["symbol", "--p", "1", "dz^2"], EXIT_DOMAIN),
        (
            &["mlambda", "--lambda", "1", "--halfwidth", "0"],
            EXIT_DOMAIN,
        ),
        (&["sl2", "ad", "G"], EXIT_USAGE),
    ];
    for (args, code) in cases {
        let out = run(args);
        assert_eq!(out.code, *code, "{args:?}: {}{}", out.stdout, out.stderr);
        if *code != EXIT_OK {
            assert!(out.stdout.is_empty() && !out.stderr.is_empty(), "{args:?}");
        }
    }
}

#[test]
fn parse_errors_carry_positions() {
    let out = run(&["normalize", "z + * dz"]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(
        out.stderr.contains("1:5") || out.stderr.contains("column 5"),
        "{}",
        out.stderr
    );
    let out = run(&["normalize", "x1^-1"]);
    assert!(
        out.stderr
            .contains("negative exponent requires laurent mode"),
        "{}",
        out.stderr
    );
}

#[test]
fn warnings_go_to_stderr() {
    let out = run(&["mlambda", "--lambda", "5", "--halfwidth", "2"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stderr.starts_with("warning:"), "{}", out.stderr);
}

fn schema() -> jsonschema::JSONSchema {
    let text = include_str!("../schema/output.schema.json");
    let value: Value = serde_json::from_str(text).unwrap();
    jsonschema::JSONSchema::compile(&value).unwrap()
}

#[test]
fn structured_output_matches_schema() {
    let schema = schema();
    let commands: &[&[&str]] = &[
        &["normalize", "dz*z"],
        &["-n", "2", "commutator", "d1", "x1*x2"],
        &["order", "z*dz^3"],
        &["order", "0"],
        &["symbol", "--p", "1", "z*dz"],
        &["char-ideal", "dz", "z*dz - 1"],
        &["-n", "2", "solve", "--degree", "2", "d1;d2", "0;d1"],
        &["member", "--degree", "3", "z*dz^2 - dz", "z*dz - 1"],
        &["member", "--degree", "1", "z", "dz"],
        &["member", "--degree", "3", "z*dz^2", "z*dz - 1"],
        &["mlambda", "--lambda", "-3/4", "--halfwidth", "2"],
        &["mlambda", "--lambda", "7", "--halfwidth", "2"],
        &["p1-global", "basis", "--max-order", "2"],
        &["p1-global", "is-global", "--max-order", "2", "z^2*dz"],
        &["p1-global", "is-global", "--max-order", "2", "z^3*dz"],
        &["sl2", "ad", "H"],
        &["sl2", "pbw-mul", "E", "F"],
        &["sl2", "casimir"],
        &["sl2", "casimir", "--phi"],
        &["sl2", "phi", "F*E - 1/2*H"],
        &["--laurent", "normalize", "zinv*dz"],
    ];
    for args in commands {
        let mut full = vec!["--json"];
        full.extend_from_slice(args);
        let out = run(&full);
        assert_eq!(out.code, EXIT_OK, "{args:?}: {}", out.stderr);
        let value: Value = serde_json::from_str(&out.stdout).unwrap();
        if let Err(errors) = schema.validate(&value) {
            let msgs: Vec<String> = errors
                .map(|e| format!("{e} at {}", e.instance_path))
                .collect();
            panic!("{args:?}: {msgs:?}");
        }
        assert_eq!(value["term_order"], TERM_ORDER);
        assert!(value["command"].as_str().is_some_and(|c| !c.is_empty()));
    }
}

#[test]
fn schema_rejects_malformed_terms() {
    let schema = schema();
    let mut value: Value =
        serde_json::from_str(&run(&["--json", "normalize", "dz*z"]).stdout).unwrap();
    value["result"][0]["coefficient"] = Value::from("0.5");
    assert!(!schema.is_valid(&value));
    value.as_object_mut().unwrap().remove("term_order");
    assert!(!schema.is_valid(&value));
}

#[test]
fn membership_certificate_in_text() {
    // z*dz^2 = dz * (z*dz - 1), while z*dz^2 - dz is only a right multiple
    let out = stdout(&["member", "--degree", "3", "z*dz^2", "z*dz - 1"]);
    assert_eq!(out, "member (certificate at degree <= 3)\ncofactor 1: dz\n");
    let out = run(&["member", "--degree", "3", "z*dz^2 - dz", "z*dz - 1"]);
    assert!(out.stdout.starts_with("not found"), "{}", out.stdout);
    assert!(out.stderr.starts_with("warning:"), "{}", out.stderr);
}
