//! Deterministic JSON-line reports. Records are `serde_json` values whose
//! maps serialize with sorted keys, so identical runs produce identical
//! bytes; exact rationals are rendered as `p/q` strings and wall-clock
//! timing never enters the byte stream. A report can be replayed: the
//! scenario text echoed in the meta record is re-run and the fresh records
//! are compared field by field.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::rat::{fmt_rat, Rat};

/// Tool version stamped into every report.
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Render a rational for a report field.
pub fn rat_str(r: &Rat) -> String {
    fmt_rat(r)
}

/// Command-line parameter overrides recorded for replay.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Overrides {
    pub depth: Option<usize>,
    pub grid: Option<u32>,
    pub seed: Option<u64>,
}

impl Overrides {
    fn to_value(self) -> Value {
        let mut m = Map::new();
        if let Some(d) = self.depth {
            m.insert("depth".into(), json!(d));
        }
        if let Some(q) = self.grid {
            m.insert("grid".into(), json!(q));
        }
        if let Some(s) = self.seed {
            m.insert("seed".into(), json!(s));
        }
        Value::Object(m)
    }

    fn from_value(v: &Value) -> Overrides {
        Overrides {
            depth: v.get("depth").and_then(Value::as_u64).map(|d| d as usize),
            grid: v.get("grid").and_then(Value::as_u64).map(|q| q as u32),
            seed: v.get("seed").and_then(Value::as_u64),
        }
    }
}

/// First record of every report.
pub fn meta_record(task: &str, seed: u64, overrides: Overrides, scenario_raw: &str) -> Value {
    let lines: Vec<&str> = scenario_raw.lines().collect();
    json!({
        "record": "meta",
        "version": TOOL_VERSION,
        "task": task,
        "seed": seed,
        "overrides": overrides.to_value(),
        "scenario": lines,
    })
}

/// Last record of every report.
pub fn summary_record(exit: i32, label: &str) -> Value {
    json!({ "record": "summary", "exit": exit, "verdict": label })
}

/// Serialize records as JSON lines (one record per line, trailing newline).
pub fn to_jsonl(records: &[Value]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("records serialize"));
        out.push('\n');
    }
    out
}

/// Parse a JSON-lines report, skipping blank lines.
pub fn parse_jsonl(text: &str) -> Result<Vec<Value>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let v: Value = serde_json::from_str(line)
            .map_err(|e| Error::parse(i + 1, 1, format!("bad report line: {e}")))?;
        out.push(v);
    }
    Ok(out)
}

/// The replay-relevant contents of a report's meta record.
#[derive(Clone, Debug)]
pub struct ReportMeta {
    pub version: String,
    pub task: String,
    pub seed: u64,
    pub overrides: Overrides,
    pub scenario: String,
}

/// Extract and validate the meta record (it must come first).
pub fn read_meta(records: &[Value]) -> Result<ReportMeta> {
    let first = records
        .first()
        .ok_or_else(|| Error::invalid("empty report"))?;
    if first.get("record").and_then(Value::as_str) != Some("meta") {
        return Err(Error::invalid("report does not start with a meta record"));
    }
    let field = |k: &str| {
        first
            .get(k)
            .ok_or_else(|| Error::invalid(format!("meta record lacks `{k}`")))
    };
    let version = field("version")?
        .as_str()
        .ok_or_else(|| Error::invalid("meta `version` is not a string"))?
        .to_string();
    let task = field("task")?
        .as_str()
        .ok_or_else(|| Error::invalid("meta `task` is not a string"))?
        .to_string();
    let seed = field("seed")?
        .as_u64()
        .ok_or_else(|| Error::invalid("meta `seed` is not an integer"))?;
    let overrides = Overrides::from_value(field("overrides")?);
    let lines = field("scenario")?
        .as_array()
        .ok_or_else(|| Error::invalid("meta `scenario` is not an array"))?;
    let mut scenario = String::new();
    for l in lines {
        let s = l
            .as_str()
            .ok_or_else(|| Error::invalid("meta `scenario` holds a non-string line"))?;
        scenario.push_str(s);
        scenario.push('\n');
    }
    Ok(ReportMeta {
        version,
        task,
        seed,
        overrides,
        scenario,
    })
}

/// Reports are replayable across patch releases: the major component must
/// match, and while the major version is zero the minor must too.
pub fn check_version(report_version: &str) -> Result<()> {
    let split = |v: &str| -> (String, String) {
        let mut it = v.split('.');
        (
            it.next().unwrap_or("").to_string(),
            it.next().unwrap_or("").to_string(),
        )
    };
    let (rmaj, rmin) = split(report_version);
    let (tmaj, tmin) = split(TOOL_VERSION);
    let compatible = rmaj == tmaj && (rmaj != "0" || rmin == tmin);
    if compatible {
        Ok(())
    } else {
        Err(Error::VersionMismatch {
            report: report_version.to_string(),
            tool: TOOL_VERSION.to_string(),
        })
    }
}

/// First field where two record streams diverge, as
/// `(path, expected, actual)`.
pub fn first_divergence(expected: &[Value], actual: &[Value]) -> Option<(String, String, String)> {
    if expected.len() != actual.len() {
        return Some((
            "records.length".into(),
            expected.len().to_string(),
            actual.len().to_string(),
        ));
    }
    for (i, (e, a)) in expected.iter().zip(actual).enumerate() {
        if let Some(d) = diff_value(&format!("records[{i}]"), e, a) {
            return Some(d);
        }
    }
    None
}

fn diff_value(path: &str, e: &Value, a: &Value) -> Option<(String, String, String)> {
    match (e, a) {
        (Value::Object(eo), Value::Object(ao)) => {
            let mut keys: Vec<&String> = eo.keys().chain(ao.keys()).collect();
            keys.sort();
            keys.dedup();
            for k in keys {
                let p = format!("{path}.{k}");
                match (eo.get(k), ao.get(k)) {
                    (Some(ev), Some(av)) => {
                        if let Some(d) = diff_value(&p, ev, av) {
                            return Some(d);
                        }
                    }
                    (Some(ev), None) => return Some((p, ev.to_string(), "<absent>".into())),
                    (None, Some(av)) => return Some((p, "<absent>".into(), av.to_string())),
                    (None, None) => unreachable!("key came from one of the maps"),
                }
            }
            None
        }
        (Value::Array(ea), Value::Array(aa)) => {
            if ea.len() != aa.len() {
                return Some((
                    format!("{path}.length"),
                    ea.len().to_string(),
                    aa.len().to_string(),
                ));
            }
            for (i, (ev, av)) in ea.iter().zip(aa).enumerate() {
                if let Some(d) = diff_value(&format!("{path}[{i}]"), ev, av) {
                    return Some(d);
                }
            }
            None
        }
        _ if e == a => None,
        _ => Some((path.to_string(), e.to_string(), a.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jsonl_round_trips_and_stays_stable() {
        let records = vec![
            meta_record("certify", 7, Overrides::default(), "[group]\ngen A = 2,1;1,1\n"),
            summary_record(0, "certified"),
        ];
        let text = to_jsonl(&records);
        assert_eq!(to_jsonl(&parse_jsonl(&text).unwrap()), text);
        // sorted keys make the byte form reproducible
        assert_eq!(text, to_jsonl(&records));
        assert!(text.contains("\"record\":\"meta\""));
    }

    #[test]
    fn meta_extraction_recovers_the_scenario() {
        let raw = "[group]\ngen A = 2,1;1,1\n\n[task]\nname = certify\n";
        let records = vec![meta_record(
            "certify",
            3,
            Overrides {
                depth: Some(9),
                ..Default::default()
            },
            raw,
        )];
        let meta = read_meta(&records).unwrap();
        assert_eq!(meta.task, "certify");
        assert_eq!(meta.seed, 3);
        assert_eq!(meta.overrides.depth, Some(9));
        assert_eq!(meta.scenario, raw);
        assert_eq!(meta.version, TOOL_VERSION);
    }

    #[test]
    fn version_gate_accepts_patches_and_rejects_minors() {
        assert!(check_version(TOOL_VERSION).is_ok());
        // zero-major: a patch bump within the same minor is compatible
        let (maj, min) = {
            let mut it = TOOL_VERSION.split('.');
            (it.next().unwrap().to_string(), it.next().unwrap().to_string())
        };
        assert!(check_version(&format!("{maj}.{min}.99")).is_ok());
        assert!(check_version("99.0.0").is_err());
    }

    #[test]
    fn divergence_names_the_first_field() {
        let a = vec![json!({"record": "verdict", "kind": "certified", "witness": "B C"})];
        let b = vec![json!({"record": "verdict", "kind": "certified", "witness": "B B"})];
        let (path, expected, actual) = first_divergence(&a, &b).unwrap();
        assert_eq!(path, "records[0].witness");
        assert_eq!(expected, "\"B C\"");
        assert_eq!(actual, "\"B B\"");

        let c = vec![json!({"record": "verdict", "kind": "certified"})];
        let (path, _, actual) = first_divergence(&a, &c).unwrap();
        assert_eq!(path, "records[0].witness");
        assert_eq!(actual, "<absent>");

        assert!(first_divergence(&a, &a.clone()).is_none());
    }
}
