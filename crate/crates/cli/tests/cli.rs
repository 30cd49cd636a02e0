//! Behavioral tests for the command-line surface: exit codes, output
//! formats, and the JSON record contract.

use flipcoins_cli::records::Record;
use flipcoins_cli::{run, EXIT_INVALID, EXIT_OK, EXIT_USAGE};

fn run_cli(args: &[&str]) -> (i32, String) {
    let mut argv = vec!["flipcoins"];
    argv.extend_from_slice(args);
    let mut out = Vec::new();
    let code = run(argv, &mut out);
    (code, String::from_utf8(out).expect("utf-8 output"))
}

#[test]
fn value_golden() {
    let (code, out) = run_cli(&["value", "011101"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("value: 3/8 (0.375)"), "{out}");
    assert!(out.contains("outcome: Left wins"), "{out}");
}

#[test]
fn value_of_empty_position_is_zero() {
    let (code, out) = run_cli(&["value", ""]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("value: 0 (0)"), "{out}");
}

#[test]
fn exit_codes() {
    // usage errors: unknown subcommand, missing argument, bad flag value
    assert_eq!(run_cli(&["bogus"]).0, EXIT_USAGE);
    assert_eq!(run_cli(&["value"]).0, EXIT_USAGE);
    assert_eq!(run_cli(&["best", "1011", "--player", "x"]).0, EXIT_USAGE);
    // invalid positions and expressions
    assert_eq!(run_cli(&["value", "2x"]).0, EXIT_INVALID);
    assert_eq!(run_cli(&["sum", "1011+foo"]).0, EXIT_INVALID);
    assert_eq!(run_cli(&["best", "111", "--player", "R"]).0, EXIT_INVALID);
    // help is a success
    assert_eq!(run_cli(&["--help"]).0, EXIT_OK);
}

#[test]
fn reduce_plain_and_trace() {
    let (code, out) = run_cli(&["reduce", "0110110110111"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "1");

    let (code, out) = run_cli(&["reduce", "0110110110111", "--trace"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[0], "0110110110111 -> 0110110111  [B@11]");
    assert_eq!(lines[4], "1");
}

#[test]
fn decompose_prints_bracket_partition() {
    let (code, out) = run_cli(&["decompose", "01001110110111011101"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("decomposition: 01(0101)(00011)(101)"), "{out}");
    assert!(out.contains("value: -893/1024 (-0.8720703125)"), "{out}");
}

#[test]
fn best_prints_designated_move() {
    let (code, out) = run_cli(&["best", "1011", "--player", "L"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "Left (3,4) -> 1  value 0");
    let (code, out) = run_cli(&["best", "1011", "--player", "r"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "Right (2,3) -> 1101  value 1/2");
}

#[test]
fn moves_lists_options_with_values() {
    let (_, out) = run_cli(&["moves", "1011"]);
    assert_eq!(out.lines().count(), 5);
    assert!(out.contains("Left (3,4) -> 1  value 0"), "{out}");
    assert!(out.contains("Right (2,4) -> 111  value 1"), "{out}");
    let (_, out) = run_cli(&["moves", "1"]);
    assert_eq!(out.trim(), "no moves");
}

#[test]
fn json_records_round_trip() {
    // evaluating the normalized position of a record reproduces the record
    // byte for byte
    for input in ["0110", "1011", "0101011111", "10 11", ""] {
        let (code, first) = run_cli(&["value", input, "--json"]);
        assert_eq!(code, EXIT_OK);
        let record: Record = serde_json::from_str(first.trim()).expect("valid record json");
        let (code, second) = run_cli(&["value", &record.normalized, "--json"]);
        assert_eq!(code, EXIT_OK);
        let reparsed: Record = serde_json::from_str(second.trim()).expect("valid record json");
        assert_eq!(reparsed.normalized, record.normalized);
        assert_eq!(reparsed.value, record.value);
        assert_eq!(reparsed.sign_expansion, record.sign_expansion);
        assert_eq!(reparsed.outcome, record.outcome);
        // a normalized input is a fixed point of the whole pipeline
        let (_, third) = run_cli(&["value", &reparsed.normalized, "--json"]);
        assert_eq!(second, third, "records are byte-stable");
    }
}

#[test]
fn json_mode_is_one_record_per_line() {
    let (_, out) = run_cli(&["decompose", "1101100111", "--json"]);
    assert_eq!(out.lines().count(), 1);
    let record: Record = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(record.decomposition.as_deref(), Some("1101(101)"));
    assert_eq!(record.value.num, "3");
    assert_eq!(record.value.den_exp, 2);

    let (_, out) = run_cli(&["moves", "1011", "--json"]);
    let record: Record = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(record.advice.as_ref().map(Vec::len), Some(5));
}

#[test]
fn verify_small_sweep_is_clean() {
    let (code, out) = run_cli(&["verify", "--max-len", "10"]);
    assert_eq!(code, EXIT_OK);
    assert!(
        out.contains("checked 1023 positions up to length 10: 0 mismatches"),
        "{out}"
    );
    // every per-position line carries the match flag
    assert!(out.lines().take(1023).all(|l| l.ends_with(" ok")), "{out}");
}

#[test]
fn verify_to_length_14_is_clean() {
    let (code, out) = run_cli(&["verify", "--max-len", "14"]);
    assert_eq!(code, EXIT_OK);
    assert!(
        out.ends_with("checked 16383 positions up to length 14: 0 mismatches\n"),
        "{}",
        &out[out.len().saturating_sub(200)..]
    );
}

#[test]
fn verify_rejects_absurd_lengths() {
    let (code, _) = run_cli(&["verify", "--max-len", "70"]);
    assert_eq!(code, EXIT_INVALID);
}

#[test]
fn verify_json_lines() {
    let (code, out) = run_cli(&["verify", "--max-len", "5", "--json"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 32); // 31 positions + summary
    let first: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(first["match"], serde_json::Value::Bool(true));
    assert!(first["position"].is_string());
    assert!(first["fast"].is_string());
    assert!(first["oracle"].is_string());
    let summary: serde_json::Value = serde_json::from_str(lines[31]).unwrap();
    assert_eq!(summary["mismatches"], 0);
}

#[test]
fn selftest_passes() {
    let (code, out) = run_cli(&["selftest"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.lines().all(|l| l.starts_with("ok   ")), "{out}");
}
