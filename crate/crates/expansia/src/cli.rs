//! Command-line front end: scenario loading, task dispatch, deterministic
//! JSON-line reports, and exact replay.
//!
//! Every task reads one scenario file; `--depth`, `--grid`, and `--seed`
//! override the file's `[task]` parameters and are recorded in the report
//! so a replay reproduces the exact run. Exit codes: 0 when the property
//! is certified or verified, 1 when it is falsified or refuted, 2 when
//! the bounded search is inconclusive, 64 for usage and input errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::actions::ActionHandle;
use crate::error::{Error, Result};
use crate::expansivity::{
    certify_linear, estimate_sup_constant, falsify_expansive, fixed_points, Sampler, Verdict,
};
use crate::groups::{coset_transversal, Subgroup, TransversalResult};
use crate::orbit::{cover_from_constant, verify_orbit_expansive, OrbitCoverVerdict};
use crate::rat::Rat;
use crate::report::{
    check_version, first_divergence, meta_record, parse_jsonl, rat_str, read_meta, summary_record,
    to_jsonl, Overrides,
};
use crate::scenario::{Scenario, TaskParams};
use crate::spaces::cover::{OpenCover, SetRepr};
use crate::spaces::{Point, Space};
use crate::suites::{canonical_suite, run_suite, SUITE_NAMES};

/// Exit code for usage and input errors.
pub const USAGE_EXIT: i32 = 64;

const DEFAULT_CERTIFY_DEPTH: usize = 6;
const DEFAULT_FALSIFY_DEPTH: usize = 8;
const DEFAULT_ESTIMATE_DEPTH: usize = 4;
const DEFAULT_COVER_DEPTH: usize = 8;
const DEFAULT_GRID: u32 = 12;
const DEFAULT_ESTIMATE_GRID: u32 = 8;
const DEFAULT_TRANSVERSAL_BOUND: usize = 4096;

#[derive(Parser, Debug)]
#[command(
    name = "expansia",
    version,
    about = "Certify, falsify, and measure expansive group actions on compact spaces.",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    task: TaskCmd,
}

#[derive(Subcommand, Debug)]
enum TaskCmd {
    /// Search the group ball for an element certifying expansivity.
    Certify(CommonArgs),
    /// Hunt for a point pair no ball element separates beyond `c`.
    Falsify(CommonArgs),
    /// Bracket the supremum of working expansivity constants.
    Estimate(CommonArgs),
    /// Enumerate the common fixed points of the generators.
    FixedPoints(CommonArgs),
    /// Decide whether the listed subgroup has finite index (is syndetic).
    Syndetic(CommonArgs),
    /// Verify or refute orbit expansivity of the scenario's cover.
    CoverVerify(CommonArgs),
    /// Build an orbit-expansive cover from an expansivity constant.
    CoverBuild(CommonArgs),
    /// List one fiber of the covering map, with its separation constant.
    Fiber(CommonArgs),
    /// Compute the covering map's fiber-separation constant.
    Beta(CommonArgs),
    /// Run a named self-check suite of randomized cross-validations.
    Suite(CommonArgs),
}

impl TaskCmd {
    fn parts(self) -> (&'static str, CommonArgs) {
        match self {
            TaskCmd::Certify(c) => ("certify", c),
            TaskCmd::Falsify(c) => ("falsify", c),
            TaskCmd::Estimate(c) => ("estimate", c),
            TaskCmd::FixedPoints(c) => ("fixed-points", c),
            TaskCmd::Syndetic(c) => ("syndetic", c),
            TaskCmd::CoverVerify(c) => ("cover-verify", c),
            TaskCmd::CoverBuild(c) => ("cover-build", c),
            TaskCmd::Fiber(c) => ("fiber", c),
            TaskCmd::Beta(c) => ("beta", c),
            TaskCmd::Suite(c) => ("suite", c),
        }
    }
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// Scenario file to run.
    #[arg(
        long,
        value_name = "FILE",
        required_unless_present = "replay",
        conflicts_with = "replay"
    )]
    scenario: Option<PathBuf>,

    /// Override the scenario's search depth.
    #[arg(long, value_name = "N")]
    depth: Option<usize>,

    /// Override the scenario's grid denominator.
    #[arg(long, value_name = "Q")]
    grid: Option<u32>,

    /// Override the scenario's random seed.
    #[arg(long, value_name = "S")]
    seed: Option<u64>,

    /// Re-validate a previously emitted JSON report instead of running.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["depth", "grid", "seed"])]
    replay: Option<PathBuf>,

    /// Emit the report as JSON lines (the replayable form).
    #[arg(long)]
    json: bool,
}

/// Run the command line against explicit streams; returns the exit code.
pub fn run_cli<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = write!(stdout, "{e}");
            return 0;
        }
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return USAGE_EXIT;
        }
    };
    let (name, common) = cli.task.parts();
    let started = Instant::now();
    let code = match run_task(name, &common, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_for_error(&e)
        }
    };
    // Wall-clock timing stays out of the report so its bytes are stable.
    let _ = writeln!(
        stderr,
        "{name}: finished in {} ms (exit {code})",
        started.elapsed().as_millis()
    );
    code
}

fn exit_for_error(e: &Error) -> i32 {
    match e {
        Error::ReplayMismatch { .. } => 1,
        Error::FixedSetNotFinite(_) | Error::Overflow => 2,
        _ => USAGE_EXIT,
    }
}

fn run_task(name: &str, args: &CommonArgs, stdout: &mut dyn Write) -> Result<i32> {
    if let Some(report_path) = &args.replay {
        let (records, code) = replay_report(name, report_path)?;
        emit(&records, args.json, stdout)?;
        return Ok(code);
    }
    let path = args
        .scenario
        .as_ref()
        .expect("the parser requires --scenario unless --replay is given");
    let text = fs::read_to_string(path)?;
    let scenario = Scenario::parse(&text)?;
    check_task_name(&scenario, name)?;
    let over = Overrides {
        depth: args.depth,
        grid: args.grid,
        seed: args.seed,
    };
    let eff = effective_params(&scenario, over);
    let seed = eff.seed.unwrap_or(0);
    let (task_records, exit, label) = execute(name, &scenario, &eff, seed)?;
    let mut records = vec![meta_record(name, seed, over, &scenario.raw)];
    records.extend(task_records);
    records.push(summary_record(exit, &label));
    emit(&records, args.json, stdout)?;
    Ok(exit)
}

/// Re-run the report's echoed scenario with its recorded overrides and
/// require the fresh records to match field for field.
fn replay_report(invoked: &str, path: &Path) -> Result<(Vec<Value>, i32)> {
    let text = fs::read_to_string(path)?;
    let original = parse_jsonl(&text)?;
    let meta = read_meta(&original)?;
    check_version(&meta.version)?;
    if meta.task != invoked {
        return Err(Error::invalid(format!(
            "report was produced by task `{}`, but `{invoked}` was invoked",
            meta.task
        )));
    }
    let scenario = Scenario::parse(&meta.scenario)?;
    check_task_name(&scenario, &meta.task)?;
    let eff = effective_params(&scenario, meta.overrides);
    let seed = eff.seed.unwrap_or(0);
    let (task_records, exit, label) = execute(&meta.task, &scenario, &eff, seed)?;
    let mut fresh = vec![meta_record(&meta.task, seed, meta.overrides, &meta.scenario)];
    fresh.extend(task_records);
    fresh.push(summary_record(exit, &label));
    if let Some((field, expected, actual)) = first_divergence(&original, &fresh) {
        return Err(Error::ReplayMismatch {
            field,
            expected,
            actual,
        });
    }
    let records = vec![
        json!({
            "record": "replay",
            "match": true,
            "records": original.len(),
            "task": meta.task,
            "verdict": label,
        }),
        summary_record(0, "replayed"),
    ];
    Ok((records, 0))
}

fn emit(records: &[Value], json: bool, out: &mut dyn Write) -> Result<()> {
    if json {
        out.write_all(to_jsonl(records).as_bytes())?;
    } else {
        for r in records {
            writeln!(out, "{}", human_line(r))?;
        }
    }
    Ok(())
}

/// One deterministic human-readable line per record (map iteration is
/// ordered, so this is as stable as the JSON form).
fn human_line(r: &Value) -> String {
    let Some(o) = r.as_object() else {
        return r.to_string();
    };
    let kind = o.get("record").and_then(Value::as_str).unwrap_or("record");
    let mut parts = Vec::new();
    for (k, v) in o {
        if k == "record" {
            continue;
        }
        let shown = match v {
            Value::String(s) => s.clone(),
            Value::Array(a) if k == "scenario" => format!("<{} lines>", a.len()),
            Value::Array(a) => {
                let items: Vec<String> = a
                    .iter()
                    .map(|x| match x {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    })
                    .collect();
                format!("[{}]", items.join(", "))
            }
            other => other.to_string(),
        };
        parts.push(format!("{k}={shown}"));
    }
    format!("{kind}: {}", parts.join("  "))
}

fn check_task_name(s: &Scenario, invoked: &str) -> Result<()> {
    if let Some(t) = &s.params.task {
        if t != invoked {
            return Err(Error::invalid(format!(
                "scenario file names task `{t}`, but `{invoked}` was invoked"
            )));
        }
    }
    Ok(())
}

fn effective_params(s: &Scenario, over: Overrides) -> TaskParams {
    let mut p = s.params.clone();
    if let Some(d) = over.depth {
        p.depth = Some(d);
    }
    if let Some(q) = over.grid {
        p.grid = Some(q);
    }
    if let Some(seed) = over.seed {
        p.seed = Some(seed);
    }
    p
}

fn execute(
    task: &str,
    s: &Scenario,
    p: &TaskParams,
    seed: u64,
) -> Result<(Vec<Value>, i32, String)> {
    match task {
        "certify" => certify_task(s, p),
        "falsify" => falsify_task(s, p),
        "estimate" => estimate_task(s, p),
        "fixed-points" => fixed_points_task(s),
        "syndetic" => syndetic_task(s, p),
        "cover-verify" => cover_verify_task(s, p),
        "cover-build" => cover_build_task(s, p),
        "fiber" => fiber_task(s, p),
        "beta" => beta_task(s),
        "suite" => suite_task(p, seed),
        other => Err(Error::invalid(format!("unknown task `{other}`"))),
    }
}

fn require_action(s: &Scenario) -> Result<&ActionHandle> {
    s.action
        .as_ref()
        .ok_or_else(|| Error::invalid("this task needs a [group] section (and usually [space])"))
}

fn require_cover(s: &Scenario) -> Result<&OpenCover> {
    s.cover
        .as_ref()
        .ok_or_else(|| Error::invalid("this task needs a [cover] section"))
}

fn require_covering(s: &Scenario) -> Result<&crate::actions::CoveringMap> {
    s.covering
        .as_ref()
        .ok_or_else(|| Error::invalid("this task needs a [covering] section"))
}

fn require_c<'a>(p: &'a TaskParams) -> Result<&'a Rat> {
    p.c.as_ref()
        .ok_or_else(|| Error::invalid("this task needs `c = P/Q` in the [task] section"))
}

fn default_sampler(space: &Space, grid: Option<u32>) -> Sampler {
    match space {
        Space::Torus { .. } => Sampler::Grid {
            q: grid.unwrap_or(DEFAULT_GRID),
        },
        _ => Sampler::All,
    }
}

fn sampler_str(s: &Sampler) -> String {
    match s {
        Sampler::All => "all".into(),
        Sampler::Grid { q } => format!("grid q={q}"),
        Sampler::Points(ps) => format!("{} explicit points", ps.len()),
    }
}

fn set_str(repr: &SetRepr) -> String {
    match repr {
        SetRepr::Mask(m) => {
            let idx: Vec<String> = (0..64).filter(|i| m & (1u64 << i) != 0).map(|i| i.to_string()).collect();
            idx.join(" ")
        }
        SetRepr::Boxes(b) => b.to_string(),
        SetRepr::TorusInter(list) => {
            let parts: Vec<String> = list
                .iter()
                .map(|(m, b)| format!("preimage[{m}]({b})"))
                .collect();
            parts.join(" & ")
        }
    }
}

/// Shared rendering for certify/falsify verdicts; the caller may add
/// task-specific fields before wrapping the map.
fn verdict_fields(v: &Verdict, a: &ActionHandle) -> (Map<String, Value>, i32, String) {
    let mut m = Map::new();
    m.insert("record".into(), json!("verdict"));
    match v {
        Verdict::Certified {
            constant,
            reason,
            witness,
            numeric,
        } => {
            m.insert("kind".into(), json!("certified"));
            m.insert("reason".into(), json!(reason));
            m.insert("numeric".into(), json!(numeric));
            if let Some(c) = constant {
                m.insert("constant".into(), json!(rat_str(c)));
            }
            if let Some(w) = witness {
                m.insert("witness".into(), json!(w.display(a.group())));
            }
            (m, 0, "certified".into())
        }
        Verdict::Falsified {
            pair,
            max_separation,
            depth,
            exact,
            reason,
        } => {
            m.insert("kind".into(), json!("falsified"));
            m.insert("reason".into(), json!(reason));
            m.insert("depth".into(), json!(depth));
            m.insert("exact".into(), json!(exact));
            if let Some((x, y)) = pair {
                m.insert("pair".into(), json!([x.to_string(), y.to_string()]));
            }
            if let Some(sep) = max_separation {
                m.insert("max_separation".into(), json!(rat_str(sep)));
            }
            (m, 1, "falsified".into())
        }
        Verdict::Inconclusive { depth } => {
            m.insert("kind".into(), json!("inconclusive"));
            m.insert("depth".into(), json!(depth));
            (m, 2, "inconclusive".into())
        }
    }
}

fn certify_task(s: &Scenario, p: &TaskParams) -> Result<(Vec<Value>, i32, String)> {
    let a = require_action(s)?;
    let depth = p.depth.unwrap_or(DEFAULT_CERTIFY_DEPTH);
    let v = certify_linear(a.group(), depth)?;
    let (mut m, exit, label) = verdict_fields(&v, a);
    m.entry("depth".to_string()).or_insert(json!(depth));
    Ok((vec![Value::Object(m)], exit, label))
}

fn falsify_task(s: &Scenario, p: &TaskParams) -> Result<(Vec<Value>, i32, String)> {
    let a = require_action(s)?;
    let c = require_c(p)?;
    let depth = p.depth.unwrap_or(DEFAULT_FALSIFY_DEPTH);
    let sampler = default_sampler(a.space(), p.grid);
    let v = falsify_expansive(a, c, depth, &sampler, None)?;
    let (mut m, exit, label) = verdict_fields(&v, a);
    m.insert("constant".into(), json!(rat_str(c)));
    m.insert("sampler".into(), json!(sampler_str(&sampler)));
    m.entry("depth".to_string()).or_insert(json!(depth));
    Ok((vec![Value::Object(m)], exit, label))
}

fn estimate_task(s: &Scenario, p: &TaskParams) -> Result<(Vec<Value>, i32, String)> {
    let a = require_action(s)?;
    let depth = p.depth.unwrap_or(DEFAULT_ESTIMATE_DEPTH);
    let q = p.grid.unwrap_or(DEFAULT_ESTIMATE_GRID);
    let est = estimate_sup_constant(a, depth, q)?;
    let rec = json!({
        "record": "estimate",
        "lo": rat_str(&est.lo),
        "hi": rat_str(&est.hi),
        "depth": est.depth,
        "grid": est.grid_q,
        "exact": est.exact,
    });
    Ok((vec![rec], 0, "estimated".into()))
}

fn fixed_points_task(s: &Scenario) -> Result<(Vec<Value>, i32, String)> {
    let a = require_action(s)?;
    match fixed_points(a) {
        Ok(pts) => {
            let strs: Vec<String> = pts.iter().map(Point::to_string).collect();
            let rec = json!({
                "record": "fixed-points",
                "finite": true,
                "count": strs.len(),
                "points": strs,
            });
            Ok((vec![rec], 0, "verified".into()))
        }
        Err(Error::FixedSetNotFinite(msg)) => {
            let rec = json!({
                "record": "fixed-points",
                "finite": false,
                "reason": msg,
            });
            Ok((vec![rec], 2, "inconclusive".into()))
        }
        Err(e) => Err(e),
    }
}

fn syndetic_task(s: &Scenario, p: &TaskParams) -> Result<(Vec<Value>, i32, String)> {
    let a = require_action(s)?;
    if s.subgroup_words.is_empty() {
        return Err(Error::invalid("the syndetic task needs a [subgroup] section"));
    }
    let sub = Subgroup::new(a.group(), s.subgroup_words.clone())?;
    let bound = p.bound.unwrap_or(DEFAULT_TRANSVERSAL_BOUND);
    match coset_transversal(a.group(), &sub, bound)? {
        TransversalResult::Complete { reps, exact } => {
            let words: Vec<String> = reps.iter().map(|w| w.display(a.group())).collect();
            let rec = json!({
                "record": "syndetic",
                "index": words.len(),
                "transversal": words,
                "exact": exact,
            });
            if exact {
                Ok((vec![rec], 0, "certified".into()))
            } else {
                Ok((vec![rec], 2, "inconclusive".into()))
            }
        }
        TransversalResult::Inconclusive { explored } => {
            let rec = json!({
                "record": "syndetic",
                "explored": explored,
                "exact": false,
            });
            Ok((vec![rec], 2, "inconclusive".into()))
        }
    }
}

fn cover_verify_task(s: &Scenario, p: &TaskParams) -> Result<(Vec<Value>, i32, String)> {
    let a = require_action(s)?;
    let cover = require_cover(s)?;
    let depth = p.depth.unwrap_or(DEFAULT_COVER_DEPTH);
    let sampler = default_sampler(a.space(), p.grid);
    let v = verify_orbit_expansive(a, cover, depth, &sampler)?;
    let mut m = Map::new();
    m.insert("record".into(), json!("cover"));
    m.insert("members".into(), json!(cover.len()));
    m.insert("sampler".into(), json!(sampler_str(&sampler)));
    let (exit, label) = match v {
        OrbitCoverVerdict::DecidedExpansiveCover => {
            m.insert("verdict".into(), json!("decided-expansive"));
            m.insert("depth".into(), json!(depth));
            (0, "certified")
        }
        OrbitCoverVerdict::VerifiedAtDepth(d) => {
            m.insert("verdict".into(), json!("verified-at-depth"));
            m.insert("depth".into(), json!(d));
            (0, "verified")
        }
        OrbitCoverVerdict::Refuted { x, y, exact } => {
            m.insert("verdict".into(), json!("refuted"));
            m.insert("depth".into(), json!(depth));
            m.insert("pair".into(), json!([x.to_string(), y.to_string()]));
            m.insert("exact".into(), json!(exact));
            (1, "refuted")
        }
    };
    Ok((vec![Value::Object(m)], exit, label.into()))
}

fn cover_build_task(s: &Scenario, p: &TaskParams) -> Result<(Vec<Value>, i32, String)> {
    let a = require_action(s)?;
    let c = require_c(p)?;
    let q = p.grid.unwrap_or(DEFAULT_GRID);
    let cover = cover_from_constant(a, c, q)?;
    let members: Vec<Value> = cover
        .members()
        .iter()
        .map(|m| json!({ "name": m.name, "set": set_str(&m.repr) }))
        .collect();
    let rec = json!({
        "record": "cover-build",
        "constant": rat_str(c),
        "count": members.len(),
        "members": members,
    });
    Ok((vec![rec], 0, "built".into()))
}

fn fiber_task(s: &Scenario, p: &TaskParams) -> Result<(Vec<Value>, i32, String)> {
    let cov = require_covering(s)?;
    let Some(Point::Torus(y)) = &p.point else {
        return Err(Error::invalid(
            "the fiber task needs `point = (a,b)` in the [task] section",
        ));
    };
    let fiber = cov.fiber(y)?;
    let beta = cov.separation()?;
    let strs: Vec<String> = fiber.iter().map(|t| t.to_string()).collect();
    let rec = json!({
        "record": "fiber",
        "point": y.to_string(),
        "count": strs.len(),
        "fiber": strs,
        "beta": rat_str(&beta),
        "degree": cov.degree(),
    });
    Ok((vec![rec], 0, "verified".into()))
}

fn beta_task(s: &Scenario) -> Result<(Vec<Value>, i32, String)> {
    let cov = require_covering(s)?;
    let rec = json!({
        "record": "beta",
        "beta": rat_str(&cov.separation()?),
        "degree": cov.degree(),
    });
    Ok((vec![rec], 0, "verified".into()))
}

fn suite_task(p: &TaskParams, seed: u64) -> Result<(Vec<Value>, i32, String)> {
    let name = p
        .suite
        .as_deref()
        .ok_or_else(|| Error::invalid("the suite task needs `suite = NAME` in [task]"))?;
    let canon = canonical_suite(name).ok_or_else(|| {
        Error::invalid(format!(
            "unknown suite `{name}`; known suites: {}",
            SUITE_NAMES.join(", ")
        ))
    })?;
    let outcome = run_suite(canon, seed)?;
    let mut records: Vec<Value> = outcome
        .cases
        .iter()
        .map(|c| json!({ "record": "case", "name": c.name, "pass": c.pass, "detail": c.detail }))
        .collect();
    records.push(json!({
        "record": "suite",
        "name": outcome.name,
        "cases": outcome.cases.len(),
        "failures": outcome.failures(),
        "seed": seed,
    }));
    if outcome.passed() {
        Ok((records, 0, "certified".into()))
    } else {
        Ok((records, 1, "falsified".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let full: Vec<String> = std::iter::once("expansia".to_string())
            .chain(args.iter().map(|s| s.to_string()))
            .collect();
        let code = run_cli(full, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    fn write_scenario(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
        let path = dir.path().join(name);
        fs::write(&path, text).unwrap();
        path.to_string_lossy().into_owned()
    }

    const CERTIFY_SCENARIO: &str = "\
[group]
gen A = 1,1;1,2

[task]
name = certify
depth = 4
";

    #[test]
    fn certify_verdicts_map_to_exit_codes() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_scenario(&dir, "hyp.exp", CERTIFY_SCENARIO);
        let (code, out, _) = run(&["certify", "--scenario", &path]);
        assert_eq!(code, 0, "stdout: {out}");
        assert!(out.contains("kind=certified"));
        assert!(out.contains("witness=A"));

        // a finite rotation group is falsified exactly
        let rot = "[group]\ngen R = 0,-1;1,0\n";
        let path = write_scenario(&dir, "rot.exp", rot);
        let (code, out, _) = run(&["certify", "--scenario", &path]);
        assert_eq!(code, 1, "stdout: {out}");
        assert!(out.contains("kind=falsified"));
    }

    #[test]
    fn usage_errors_exit_sixty_four() {
        // unknown flag
        let (code, _, err) = run(&["certify", "--scenario", "x", "--bogus"]);
        assert_eq!(code, 64, "stderr: {err}");
        // missing scenario file
        let (code, _, _) = run(&["certify", "--scenario", "/nonexistent/file.exp"]);
        assert_eq!(code, 64);
        // malformed scenario reports its position
        let dir = tempfile::tempdir().unwrap();
        let path = write_scenario(&dir, "bad.exp", "[group]\ngen A = 1,2;3\n");
        let (code, _, err) = run(&["certify", "--scenario", &path]);
        assert_eq!(code, 64);
        assert!(err.contains("line 2"), "stderr: {err}");
        // scenario task name must match the invoked task
        let path = write_scenario(&dir, "named.exp", CERTIFY_SCENARIO);
        let (code, _, err) = run(&["falsify", "--scenario", &path]);
        assert_eq!(code, 64);
        assert!(err.contains("names task `certify`"), "stderr: {err}");
    }

    #[test]
    fn json_reports_are_byte_identical_and_replayable() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_scenario(&dir, "hyp.exp", CERTIFY_SCENARIO);
        let (c1, out1, _) = run(&["certify", "--scenario", &path, "--json"]);
        let (c2, out2, _) = run(&["certify", "--scenario", &path, "--json"]);
        assert_eq!(c1, 0);
        assert_eq!(c2, 0);
        assert_eq!(out1, out2, "reports must be byte-identical");

        let report = dir.path().join("report.jsonl");
        fs::write(&report, &out1).unwrap();
        let (code, out, _) = run(&["certify", "--replay", report.to_str().unwrap()]);
        assert_eq!(code, 0, "stdout: {out}");
        assert!(out.contains("match=true"));

        // tampering with a witness is caught and the field is named
        let tampered = out1.replace("\"witness\":\"A\"", "\"witness\":\"A A\"");
        assert_ne!(tampered, out1);
        fs::write(&report, &tampered).unwrap();
        let (code, _, err) = run(&["certify", "--replay", report.to_str().unwrap()]);
        assert_eq!(code, 1);
        assert!(err.contains("records[1].witness"), "stderr: {err}");

        // a report from a different version is refused
        let versioned = out1.replace(
            &format!("\"version\":\"{}\"", crate::report::TOOL_VERSION),
            "\"version\":\"99.0.0\"",
        );
        assert_ne!(versioned, out1);
        fs::write(&report, &versioned).unwrap();
        let (code, _, err) = run(&["certify", "--replay", report.to_str().unwrap()]);
        assert_eq!(code, 64);
        assert!(err.contains("version mismatch"), "stderr: {err}");
    }

    #[test]
    fn replay_checks_the_task_name() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_scenario(&dir, "hyp.exp", CERTIFY_SCENARIO);
        let (_, out, _) = run(&["certify", "--scenario", &path, "--json"]);
        let report = dir.path().join("report.jsonl");
        fs::write(&report, &out).unwrap();
        let (code, _, err) = run(&["estimate", "--replay", report.to_str().unwrap()]);
        assert_eq!(code, 64);
        assert!(err.contains("produced by task `certify`"), "stderr: {err}");
    }

    #[test]
    fn flag_overrides_are_recorded_and_replayed() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_scenario(&dir, "hyp.exp", CERTIFY_SCENARIO);
        let (code, out, _) = run(&["certify", "--scenario", &path, "--depth", "2", "--json"]);
        assert_eq!(code, 0);
        assert!(out.contains("\"overrides\":{\"depth\":2}"), "stdout: {out}");
        let report = dir.path().join("report.jsonl");
        fs::write(&report, &out).unwrap();
        let (code, _, err) = run(&["certify", "--replay", report.to_str().unwrap()]);
        assert_eq!(code, 0, "stderr: {err}");
    }
}
