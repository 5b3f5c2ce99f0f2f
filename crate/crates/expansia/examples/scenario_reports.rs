//! Drive the command-line interface in process: run a scenario to a
//! JSON-lines report, then replay the report and confirm it reproduces
//! byte for byte.
//!
//!     cargo run --example scenario_reports

use std::io::Write as _;

const SCENARIO: &str = "\
# the order-two pair whose product is hyperbolic
[group]
gen B = -1,1;0,1
gen C = -1,0;1,1

[space]
kind = torus
dim = 2

[task]
name = certify
depth = 4
";

fn run(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = expansia::cli::run_cli(
        args.iter().map(|s| s.to_string()),
        &mut out,
        &mut err,
    );
    (code, String::from_utf8(out).expect("reports are utf-8"))
}

fn main() -> std::io::Result<()> {
    let dir = tempfile::tempdir()?;
    let scenario = dir.path().join("pair.exp");
    std::fs::write(&scenario, SCENARIO)?;

    let (code, report) = run(&[
        "expansia",
        "certify",
        "--scenario",
        scenario.to_str().unwrap(),
        "--json",
    ]);
    println!("certify exited {code}; the report:");
    for line in report.lines() {
        println!("  {line}");
    }

    let saved = dir.path().join("report.jsonl");
    std::fs::File::create(&saved)?.write_all(report.as_bytes())?;
    let (code, replay) = run(&[
        "expansia",
        "certify",
        "--replay",
        saved.to_str().unwrap(),
    ]);
    println!("\nreplay exited {code}:");
    for line in replay.lines() {
        println!("  {line}");
    }
    Ok(())
}
