use std::collections::BTreeMap;
use std::process::{Command, Output};

pub fn model(name: &str) -> String {
    format!("{}/../../models/{name}", env!("CARGO_MANIFEST_DIR"))
}

pub fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_epicausal"))
        .args(args)
        .env_remove("EPICAUSAL_CAP")
        .env_remove("EPICAUSAL_OR_CAP")
        .output()
        .expect("binary runs")
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

/// Passed and total counts from the first line of an equiv summary, and the
/// indented tallies below it.
#[allow(dead_code)]
pub fn summary(text: &str) -> (usize, usize, BTreeMap<String, usize>) {
    let first = text.lines().next().expect("summary line");
    let counts = first.split_whitespace().nth(1).expect("counts");
    let (passed, total) = counts.split_once('/').expect("passed/total");
    let tallies = text
        .lines()
        .filter_map(|l| l.strip_prefix("  "))
        .filter_map(|l| l.rsplit_once(": "))
        .filter_map(|(k, v)| Some((k.to_string(), v.parse().ok()?)))
        .collect();
    (passed.parse().unwrap(), total.parse().unwrap(), tallies)
}
