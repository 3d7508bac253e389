mod common;

use std::io::Write;

use chanforms::zoo::ChannelSpec;
use chanforms_cli::report::AppliedState;
use chanforms_cli::{parse_channel_document, parse_machine_report, parse_representation};
use common::*;

fn code(o: &std::process::Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn temp_document(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn golden_reports() {
    for name in GOLDEN_CHANNELS {
        check_golden(name).unwrap();
    }
}

#[test]
fn analyze_exit_codes_follow_the_verdict() {
    for (name, expected) in [
        ("unitary", 0),
        ("pin", 0),
        ("bit_flip", 0),
        ("phase_flip", 0),
        ("transpose", 3),
        ("equatorial_projection", 3),
    ] {
        assert_eq!(code(&analyze_golden_output(name)), expected, "{name}");
    }
}

#[test]
fn machine_output_is_byte_identical_across_runs() {
    let a = analyze_golden_output("pin");
    let b = analyze_golden_output("pin");
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn machine_output_parses_back() {
    for name in GOLDEN_CHANNELS {
        let text = stdout(&analyze_golden_output(name));
        let report = parse_machine_report(&text).unwrap();
        let doc = parse_channel_document(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap();
        assert_eq!(report.channel.to_spec().unwrap(), doc.channel);
        assert_eq!(report.positivity_probe.as_ref().unwrap().seed, 7);
    }
}

#[test]
fn invalid_map_exits_1_and_names_the_constraint() {
    let path = fixture("not_trace_preserving");
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(
        stderr(&out).contains("trace preservation"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn parse_and_usage_errors_exit_2() {
    let syntax = temp_document(r#"{"format_version":"1","channel":"#);
    let out = run(&["analyze", syntax.path().to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("line 1"), "{}", stderr(&out));

    let unknown =
        temp_document(r#"{"format_version":"1","channel":{"kind":"transpose"},"colour":1}"#);
    let out = run(&["analyze", unknown.path().to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("unknown field `colour`"));

    let shape = temp_document(
        r#"{"format_version":"1","channel":{"kind":"raw_a","matrix":[[[1,0],[0,0],[0,0],[0,0]],[[0,0],[1,0],[0,0],[0,0]],[[0,0],[0,0],[1,0],[0,0]]]}}"#,
    );
    let out = run(&["analyze", shape.path().to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("bad matrix shape"));

    let qutrit = fixture("qutrit_identity");
    let out = run(&["analyze", qutrit.to_str().unwrap(), "--basis", "pauli"]);
    assert_eq!(code(&out), 2);
    let out = run(&["analyze", qutrit.to_str().unwrap(), "--basis", "units"]);
    assert_eq!(code(&out), 0);

    let out = run(&["analyze", "/nonexistent/channel.json"]);
    assert_eq!(code(&out), 2);

    let out = run(&["analyze"]);
    assert_eq!(code(&out), 2);

    let bad_env = chanforms()
        .env("CHANFORMS_TOL", "small")
        .args(["analyze", fixture("pin").to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(code(&bad_env), 2);
}

#[test]
fn tolerance_precedence() {
    // identity with a trace-preservation residual of about 1e-6
    let nearly = |options: &str| {
        temp_document(&format!(
            r#"{{"format_version":"1","channel":{{"kind":"raw_a","matrix":[
                [[1.000001,0],[0,0],[0,0],[0,0]],
                [[0,0],[1,0],[0,0],[0,0]],
                [[0,0],[0,0],[1,0],[0,0]],
                [[0,0],[0,0],[0,0],[1,0]]]}}{options}}}"#
        ))
    };
    let plain = nearly("");
    let path = plain.path().to_str().unwrap();
    assert_eq!(code(&run(&["analyze", path])), 1);

    let with_env = |env: &str, args: &[&str]| {
        chanforms()
            .env("CHANFORMS_TOL", env)
            .args(args)
            .output()
            .unwrap()
    };
    assert_eq!(code(&with_env("1e-5", &["analyze", path])), 0);
    assert_eq!(
        code(&with_env("1e-5", &["analyze", path, "--tol", "1e-9"])),
        1
    );
    assert_eq!(code(&run(&["analyze", path, "--tol", "1e-5"])), 0);

    let strict = nearly(r#","options":{"tol":1e-9}"#);
    let strict_path = strict.path().to_str().unwrap();
    assert_eq!(code(&with_env("1e-5", &["analyze", strict_path])), 1);
    assert_eq!(code(&run(&["analyze", strict_path, "--tol", "1e-5"])), 0);
}

#[test]
fn stdin_document() {
    let mut child = chanforms()
        .args(["analyze", "-", "--samples", "0"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(br#"{"format_version":"1","channel":{"kind":"bit_flip","p":0.75}}"#)
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("Kraus operators (2)"));
}

#[test]
fn apply_paths() {
    let proj = fixture("equatorial_projection");
    let out = run(&[
        "apply",
        proj.to_str().unwrap(),
        "--bloch",
        "0.2,-0.3,0.9",
        "--output",
        "machine",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let applied: AppliedState = serde_json::from_str(&stdout(&out)).unwrap();
    let p = applied.bloch.unwrap();
    assert!((p[0] - 0.2).abs() < 1e-12 && (p[1] + 0.3).abs() < 1e-12 && p[2].abs() < 1e-12);
    assert!(applied.positive);

    let transpose = fixture("transpose");
    let out = run(&[
        "apply",
        transpose.to_str().unwrap(),
        "--state",
        "[[[0.5,0],[0,-0.5]],[[0,0.5],[0.5,0]]]",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(
        stdout(&out).contains("Bloch vector (0, -1, 0)"),
        "{}",
        stdout(&out)
    );

    let qutrit = fixture("qutrit_identity");
    let out = run(&["apply", qutrit.to_str().unwrap(), "--bloch", "0,0,1"]);
    assert_eq!(code(&out), 2);

    let out = run(&["apply", proj.to_str().unwrap(), "--bloch", "1,1,1"]);
    assert_eq!(code(&out), 2, "outside the Bloch ball");
}

#[test]
fn convert_round_trips_for_every_target() {
    for name in GOLDEN_CHANNELS {
        let path = fixture(name);
        let doc = parse_channel_document(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let a = doc.channel.build(1e-9).unwrap();
        for target in ["a-form", "b-form", "coefficient", "kraus", "canonical"] {
            let out = run(&[
                "convert",
                path.to_str().unwrap(),
                "--to",
                target,
                "--output",
                "machine",
            ]);
            let ncp = matches!(
                doc.channel,
                ChannelSpec::Transpose | ChannelSpec::EquatorialProjection
            );
            if target == "kraus" && ncp {
                assert_eq!(code(&out), 3, "{name}");
                assert!(stderr(&out).contains("not completely positive"));
                continue;
            }
            assert_eq!(code(&out), 0, "{name} {target}: {}", stderr(&out));
            let rep = parse_representation(&stdout(&out)).unwrap();
            let rebuilt = rep.to_a_matrix().unwrap();
            assert!(rebuilt.max_abs_diff(a.matrix()) < 1e-9, "{name} {target}");
        }
    }
}

#[test]
fn zoo_lists_every_named_channel() {
    let out = run(&["zoo"]);
    assert_eq!(code(&out), 0);
    for name in GOLDEN_CHANNELS {
        assert!(stdout(&out).contains(name));
    }
    let machine = run(&["zoo", "--output", "machine"]);
    let entries: Vec<serde_json::Value> = serde_json::from_str(&stdout(&machine)).unwrap();
    for e in entries {
        let doc = serde_json::to_string(&e["example"]).unwrap();
        parse_channel_document(&doc).unwrap();
    }
}
