//! Runs `selftest --seed 42 --format=json` twice and prints one line per
//! acceptance criterion. Criteria 1 to 10 are read from the first report,
//! criterion 11 compares the two runs byte for byte.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::Duration;

use serde_json::Value;

struct Run {
    stdout: Vec<u8>,
    times: BTreeMap<u8, Duration>,
    code: Option<i32>,
}

fn selftest() -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_multidet"))
        .args(["selftest", "--seed", "42", "--format=json"])
        .output()
        .expect("binary runs");
    let mut times = BTreeMap::new();
    for line in String::from_utf8_lossy(&out.stderr).lines() {
        let Some((k, ms)) = line.strip_prefix("criterion-").and_then(|l| l.split_once(": ")) else { continue };
        if let (Ok(k), Some(Ok(ms))) = (k.parse(), ms.strip_suffix(" ms").map(str::parse)) {
            times.insert(k, Duration::from_millis(ms));
        }
    }
    Run { stdout: out.stdout, times, code: out.status.code() }
}

/// Time limits stated with the criteria.
fn limit(k: u8) -> Option<Duration> {
    match k {
        1 => Some(Duration::from_secs(120)),
        2 => Some(Duration::from_secs(10)),
        6 => Some(Duration::from_secs(60)),
        9 => Some(Duration::from_secs(30)),
        _ => None,
    }
}

#[test]
fn acceptance_criteria() {
    let first = selftest();
    let second = selftest();
    let report: Value = serde_json::from_slice(&first.stdout).expect("JSON report");
    let items = report["items"].as_array().expect("items");
    let names: BTreeMap<u8, &str> = multidet::selftest::CRITERIA.into_iter().collect();
    let mut failed = vec![];
    for (k, name) in &names {
        let check = format!("criterion-{k}");
        let mine: Vec<&Value> = items.iter().filter(|i| i["check"] == check.as_str()).collect();
        let mut ok = !mine.is_empty() && mine.iter().all(|i| i["verdict"] == "pass");
        let mut notes: Vec<String> = mine
            .iter()
            .filter(|i| i["verdict"] != "pass")
            .map(|i| format!("{}: {}", i["location"].as_str().unwrap_or(""), i["detail"].as_str().unwrap_or("")))
            .collect();
        let took = first.times.get(k).copied();
        if let (Some(max), Some(t)) = (limit(*k), took) {
            if t > max {
                ok = false;
                notes.push(format!("took {t:?}, limit {max:?}"));
            }
        }
        let timing = took.map(|t| format!(" [{:.1} s]", t.as_secs_f64())).unwrap_or_default();
        println!("criterion {k} ({name}): {}{timing}", if ok { "PASS" } else { "FAIL" });
        for n in &notes {
            println!("    {n}");
        }
        if !ok {
            failed.push(*k);
        }
    }
    let same = first.stdout == second.stdout && !first.stdout.is_empty();
    println!("criterion 11 (determinism): {}", if same { "PASS" } else { "FAIL" });
    if !same {
        failed.push(11);
    }
    assert_eq!(first.code, Some(if failed.is_empty() { 0 } else { 1 }));
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
