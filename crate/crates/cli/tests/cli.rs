mod support;

use parikh_cli::report::{EXIT_ERROR, EXIT_FAILS, EXIT_HOLDS, EXIT_UNKNOWN};
use parikh_cli::syntax::{parse, print};
use support::{fixtures, parikh, schema};

#[test]
fn fixtures_survive_a_print_parse_round_trip() {
    let mut seen = 0;
    for entry in std::fs::read_dir(fixtures()).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let Ok(doc) = parse(&text) else { continue };
        let printed = print(&doc);
        assert_eq!(parse(&printed).unwrap(), doc, "{}", path.display());
        assert_eq!(print(&parse(&printed).unwrap()), printed);
        seen += 1;
    }
    assert!(seen >= 7);
}

#[test]
fn exit_codes_are_distinct() {
    let codes = [EXIT_HOLDS, EXIT_FAILS, EXIT_ERROR, EXIT_UNKNOWN];
    assert_eq!(codes, [0, 1, 2, 3]);
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [&["check-zero"][..], &["frobnicate"], &["variety", "intro.fsc", "--mode", "sometimes"], &["truncate", "intro.fsc"]] {
        let run = parikh(args);
        assert_eq!(run.code, EXIT_ERROR, "{args:?}");
        assert!(run.stdout.is_empty());
        assert!(!run.stderr.is_empty());
    }
    assert_eq!(parikh(&["--help"]).code, 0);
}

#[test]
fn member_mode_requires_an_output_vector() {
    let run = parikh(&["variety", "intro.fsc", "--mode", "member"]);
    assert_eq!(run.code, EXIT_ERROR);
    assert!(run.stderr.contains("--output"));
    let run = parikh(&["variety", "intro.fsc", "--mode", "member", "--output", "1,2"]);
    assert_eq!(run.code, EXIT_ERROR);
    assert!(run.stderr.contains("expected 1"));
}

#[test]
fn coordinates_are_checked() {
    let run = parikh(&["section", "polyrec.fsc", "--name", "powers", "--coord", "3", "--value", "0"]);
    assert_eq!(run.code, EXIT_ERROR);
    let run = parikh(&["diagonal", "polyrec.fsc", "--name", "powers", "--coords", "1"]);
    assert_eq!(run.code, EXIT_ERROR);
    let run = parikh(&["eval", "polyrec.fsc", "--name", "powers", "--point", "1"]);
    assert_eq!(run.code, EXIT_ERROR);
}

#[test]
fn convert_takes_hadamard_automata_only() {
    let run = parikh(&["--json", "convert", "fibonacci.fsc", "--name", "sum_form", "--config", "F+G", "--to", "polynomial-automaton"]);
    assert_eq!(run.code, EXIT_HOLDS);
    let value: serde_json::Value = serde_json::from_str(&run.stdout).unwrap();
    let text = value["text"].as_str().unwrap();
    assert!(text.contains("update a F = F + G"));
    assert!(text.contains("output F + G"));
    let run = parikh(&["convert", "binomial.fsc", "--to", "polynomial-automaton"]);
    assert_eq!(run.code, EXIT_ERROR);
    assert!(run.stderr.contains("hadamard"));
}

#[test]
fn schema_rejects_malformed_reports() {
    let validator = jsonschema::validator_for(&schema()).unwrap();
    let run = parikh(&["--json", "check-commutative", "intro.fsc"]);
    let good: serde_json::Value = serde_json::from_str(&run.stdout).unwrap();
    assert!(validator.is_valid(&good));

    let mut unknown_outcome = good.clone();
    unknown_outcome["outcome"] = "maybe".into();
    assert!(!validator.is_valid(&unknown_outcome));

    let mut extra = good.clone();
    extra["surprise"] = 1.into();
    assert!(!validator.is_valid(&extra));

    let mut float = good.clone();
    float["witness"]["fu"] = "9.0".into();
    assert!(!validator.is_valid(&float));

    let mut command = good;
    command["command"] = "check-everything".into();
    assert!(!validator.is_valid(&command));
}
