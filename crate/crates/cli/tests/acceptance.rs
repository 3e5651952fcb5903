mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::{model, run, stdout, summary};

fn report(n: usize, what: &str, ok: bool, detail: &str) {
    println!(
        "criterion {n} {}: {what} ({detail})",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {n} failed: {what} ({detail})");
}

/// Runs `equiv` and returns (passed, total, tallies, elapsed).
fn equiv(
    args: &[&str],
) -> (
    usize,
    usize,
    std::collections::BTreeMap<String, usize>,
    Duration,
    i32,
) {
    let mut full = vec!["equiv", "--seed", "2024", "--jobs", "4"];
    full.extend_from_slice(args);
    let start = Instant::now();
    let out = run(&full);
    let elapsed = start.elapsed();
    let text = stdout(&out);
    let (passed, total, tallies) = summary(&text);
    (
        passed,
        total,
        tallies,
        elapsed,
        out.status.code().unwrap_or(-1),
    )
}

fn row_set(text: &str) -> BTreeSet<BTreeSet<String>> {
    text.trim()
        .trim_start_matches('{')
        .trim_end_matches('}')
        .split(')')
        .map(|row| row.trim_start_matches([',', ' ', '(']))
        .filter(|row| !row.is_empty())
        .map(|row| row.split(',').map(|p| p.trim().to_string()).collect())
        .collect()
}

#[test]
fn criterion_1_circuit() {
    let start = Instant::now();
    let circuit = model("circuit.json");
    let verdict = |f: &str| stdout(&run(&["check", &circuit, f])).trim().to_string();
    let got = [
        verdict("[B:=1] S=1"),
        verdict("K [B:=1] S=1"),
        verdict("[B:=1] K S=1"),
    ];
    let team = row_set(&stdout(&run(&["intervene", &circuit, "B:=1"])));
    let expected = row_set("{(C=0,B=1,S=0),(C=1,B=1,S=1)}");
    let elapsed = start.elapsed();
    let ok =
        got == ["true", "false", "false"] && team == expected && elapsed < Duration::from_secs(1);
    report(
        1,
        "circuit verdicts and intervened team",
        ok,
        &format!("verdicts {got:?}, team {team:?}, {elapsed:?}"),
    );
}

#[test]
fn criterion_2_axiom_soundness() {
    let (passed, total, tallies, elapsed, code) = equiv(&[
        "--which",
        "axioms",
        "--count",
        "100",
        "--max-vars",
        "3",
        "--max-range",
        "3",
        "--max-team",
        "8",
        "--instances",
        "20",
    ]);
    let schemas = [
        "HP1", "HP2", "HP3", "HP4", "HP5", "HP6", "RH1", "RH2", "EX", "K", "T", "4", "5", "CM",
        "RP1", "RP2", "RP3", "RP4",
    ];
    let thin: Vec<&str> = schemas
        .iter()
        .copied()
        .filter(|s| tallies.get(*s).copied().unwrap_or(0) < 20)
        .collect();
    let ok = code == 0 && passed == total && thin.is_empty() && elapsed < Duration::from_secs(120);
    report(
        2,
        "axiom instances valid on 100 models",
        ok,
        &format!("{passed}/{total} valid, schemas under 20 instances {thin:?}, {elapsed:?}"),
    );
}

#[test]
fn criterion_3_reduction() {
    let (passed, total, tallies, _, code) =
        equiv(&["--which", "reduction", "--count", "500", "--depth", "5"]);
    let classified: usize = tallies.values().sum();
    let ok = code == 0 && passed == total && total == 500 && classified == 500;
    report(
        3,
        "tr1 and reduce preserve truth and land in their fragments",
        ok,
        &format!("{passed}/{total} equivalent, {tallies:?}"),
    );
}

#[test]
fn criterion_4_global_translation() {
    let (passed, total, tallies, _, code) = equiv(&["--which", "global", "--count", "200"]);
    let ok = code == 0 && passed == total && total >= 200;
    report(
        4,
        "team truth equals validity of tr",
        ok,
        &format!("{passed}/{total} agree, {tallies:?}"),
    );
}

#[test]
fn criterion_5_local_translation() {
    let (passed, total, tallies, _, code) = equiv(&["--which", "local", "--count", "200"]);
    let ok = code == 0 && passed == total && total >= 200;
    report(
        5,
        "both directions of the local translation and pointing invariance",
        ok,
        &format!("{passed}/{total} agree, {tallies:?}"),
    );
}

#[test]
fn criterion_6_causal_effect_agreement() {
    let (passed, total, tallies, _, code) =
        equiv(&["--which", "causes", "--max-vars", "3", "--max-range", "2"]);
    let ok =
        code == 0 && passed == total && tallies.get("endogenous effect").is_some_and(|&n| n > 0);
    report(
        6,
        "causal-effect formula matches parents on every small model",
        ok,
        &format!("{passed}/{total} agree, {tallies:?}"),
    );
}

#[test]
fn criterion_7_solve_uniqueness() {
    let (passed, total, _, _, code) = equiv(&["--which", "solve", "--count", "100"]);
    let ok = code == 0 && passed == total && total == 100;
    report(
        7,
        "one compliant valuation per exogenous tuple, equal to solve",
        ok,
        &format!("{passed}/{total}"),
    );
}

#[test]
fn criterion_8_downward_closure_and_selection() {
    let (passed, total, tallies, _, code) =
        equiv(&["--which", "downward", "--count", "100", "--max-team", "6"]);
    let each = ["downward closure", "classical reading", "selection"]
        .iter()
        .all(|k| tallies.get(*k) == Some(&100));
    let ok = code == 0 && passed == total && each;
    report(
        8,
        "downward closure, classical reading and selection",
        ok,
        &format!("{passed}/{total} hold, {tallies:?}"),
    );
}

#[test]
fn criterion_9_parser_round_trip() {
    let (passed, total, tallies, _, code) = equiv(&["--which", "roundtrip", "--count", "1000"]);
    let ok = code == 0
        && passed == total
        && tallies.get("PAKC") == Some(&1000)
        && tallies.get("COD") == Some(&1000);
    report(
        9,
        "parse(print(f)) = f in both languages",
        ok,
        &format!("{passed}/{total}, {tallies:?}"),
    );
}
