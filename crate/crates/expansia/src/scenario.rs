//! Line-oriented scenario files: bracketed section headers, `key = value`
//! entries, `#` comments. Parse errors carry 1-based line and column
//! positions; resolution turns the raw sections into a typed scenario
//! holding the action, optional subgroup, cover, and covering map, plus
//! the task parameters.
//!
//! ```text
//! [group]
//! gen B = -1,1;0,1
//! gen C = -1,0;1,1
//!
//! [space]
//! kind = torus
//! dim = 2
//!
//! [task]
//! name = certify
//! depth = 6
//! ```
//!
//! Generators are matrices (`a,b;c,d`) when the space is the torus and
//! permutations (`2,0,1` image lists) on finite spaces; metric spaces list
//! lower-triangle rows (`dist = 1; 1 1`), topologies list open sets
//! (`opens = 0; 0 1`), covers list members (`member U = 0 1`, or torus
//! boxes `member U = 0..1/2 x 0..1/2`), and subgroups list generating
//! words over the group's generator names (`gen = B C`).

use crate::actions::{ActionHandle, CoveringMap};
use crate::error::{Error, Result};
use crate::groups::{GroupPresentation, Word};
use crate::matrix::IntMatrix;
use crate::perm::Perm;
use crate::rat::{parse_rat, Rat};
use crate::spaces::cover::{NamedSet, OpenCover, SetRepr};
use crate::spaces::metric::FiniteMetricSpace;
use crate::spaces::topology::FiniteTopSpace;
use crate::spaces::torus::{TorusPoint, TorusSet};
use crate::spaces::{Point, Space};

/// One `key = value` line.
#[derive(Clone, Debug)]
pub struct Entry {
    pub key: String,
    pub value: String,
    /// 1-based line of the entry.
    pub line: usize,
    /// 1-based column where the value starts.
    pub col: usize,
}

/// One `[name]` section with its entries.
#[derive(Clone, Debug)]
pub struct Section {
    pub name: String,
    pub line: usize,
    pub entries: Vec<Entry>,
}

/// Split scenario text into sections without interpreting values.
pub fn parse_sections(text: &str) -> Result<Vec<Section>> {
    let mut sections: Vec<Section> = Vec::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.trim_end();
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let indent = line.len() - trimmed.len();
        if let Some(rest) = trimmed.strip_prefix('[') {
            let Some(close) = rest.find(']') else {
                return Err(Error::parse(line_no, indent + 1, "unterminated section header"));
            };
            let name = rest[..close].trim().to_string();
            if name.is_empty() {
                return Err(Error::parse(line_no, indent + 2, "empty section name"));
            }
            let tail = rest[close + 1..].trim();
            if !tail.is_empty() && !tail.starts_with('#') {
                return Err(Error::parse(
                    line_no,
                    indent + close + 3,
                    "unexpected text after section header",
                ));
            }
            if sections.iter().any(|s| s.name == name) {
                return Err(Error::parse(
                    line_no,
                    indent + 1,
                    format!("duplicate section [{name}]"),
                ));
            }
            sections.push(Section {
                name,
                line: line_no,
                entries: Vec::new(),
            });
            continue;
        }
        let Some(eq) = trimmed.find('=') else {
            return Err(Error::parse(
                line_no,
                indent + 1,
                "expected `key = value` or a `[section]` header",
            ));
        };
        let key = trimmed[..eq].trim().to_string();
        if key.is_empty() {
            return Err(Error::parse(line_no, indent + 1, "empty key"));
        }
        let after = &trimmed[eq + 1..];
        let value = after.trim().to_string();
        if value.is_empty() {
            return Err(Error::parse(line_no, indent + eq + 2, "empty value"));
        }
        let value_offset = after.len() - after.trim_start().len();
        let col = indent + eq + 2 + value_offset;
        let Some(section) = sections.last_mut() else {
            return Err(Error::parse(
                line_no,
                indent + 1,
                "entry appears before any [section] header",
            ));
        };
        section.entries.push(Entry {
            key,
            value,
            line: line_no,
            col,
        });
    }
    Ok(sections)
}

/// Task parameters drawn from the `[task]` section (command-line flags may
/// override depth, grid, and seed later).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TaskParams {
    pub task: Option<String>,
    pub c: Option<Rat>,
    pub epsilon: Option<Rat>,
    pub depth: Option<usize>,
    pub grid: Option<u32>,
    pub seed: Option<u64>,
    pub point: Option<Point>,
    pub suite: Option<String>,
    pub bound: Option<usize>,
}

/// A resolved scenario.
#[derive(Clone, Debug)]
pub struct Scenario {
    /// The exact input text, echoed into reports for replay.
    pub raw: String,
    pub action: Option<ActionHandle>,
    pub subgroup_words: Vec<Word>,
    pub cover: Option<OpenCover>,
    pub covering: Option<CoveringMap>,
    pub params: TaskParams,
}

/// Re-raise a value error at the entry's position.
fn at(entry: &Entry, err: Error) -> Error {
    match err {
        Error::Parse { .. } => err,
        other => Error::parse(entry.line, entry.col, other.to_string()),
    }
}

fn parse_usize(entry: &Entry) -> Result<usize> {
    entry
        .value
        .parse::<usize>()
        .map_err(|_| Error::parse(entry.line, entry.col, format!("bad count `{}`", entry.value)))
}

fn parse_u64(entry: &Entry) -> Result<u64> {
    entry
        .value
        .parse::<u64>()
        .map_err(|_| Error::parse(entry.line, entry.col, format!("bad integer `{}`", entry.value)))
}

fn parse_u32(entry: &Entry) -> Result<u32> {
    entry
        .value
        .parse::<u32>()
        .map_err(|_| Error::parse(entry.line, entry.col, format!("bad integer `{}`", entry.value)))
}

fn parse_rat_entry(entry: &Entry) -> Result<Rat> {
    parse_rat(&entry.value).map_err(|msg| Error::parse(entry.line, entry.col, msg))
}

/// Parse a space-separated point-index list into a finite-space mask.
fn parse_mask(entry: &Entry, n: usize) -> Result<u64> {
    let mut mask = 0u64;
    for tok in entry.value.split_whitespace() {
        let x: usize = tok.parse().map_err(|_| {
            Error::parse(entry.line, entry.col, format!("bad point index `{tok}`"))
        })?;
        if x >= n {
            return Err(Error::parse(
                entry.line,
                entry.col,
                format!("point index {x} out of range for {n} points"),
            ));
        }
        mask |= 1u64 << x;
    }
    Ok(mask)
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Scenario> {
        let sections = parse_sections(text)?;
        for s in &sections {
            match s.name.as_str() {
                "group" | "space" | "subgroup" | "cover" | "covering" | "task" => {}
                other => {
                    return Err(Error::parse(
                        s.line,
                        1,
                        format!("unknown section [{other}]"),
                    ))
                }
            }
        }
        let find = |name: &str| sections.iter().find(|s| s.name == name);

        // [space]
        let space = match find("space") {
            None => None,
            Some(s) => {
                let kind = s
                    .entries
                    .iter()
                    .find(|e| e.key == "kind")
                    .ok_or_else(|| Error::parse(s.line, 1, "[space] needs `kind = ...`"))?;
                match kind.value.as_str() {
                    "torus" => {
                        let dim = s
                            .entries
                            .iter()
                            .find(|e| e.key == "dim")
                            .ok_or_else(|| Error::parse(s.line, 1, "torus space needs `dim`"))?;
                        Some(Space::Torus {
                            dim: parse_usize(dim)?,
                        })
                    }
                    "metric" => {
                        let dist = s
                            .entries
                            .iter()
                            .find(|e| e.key == "dist")
                            .ok_or_else(|| Error::parse(s.line, 1, "metric space needs `dist`"))?;
                        let m = FiniteMetricSpace::parse(&dist.value).map_err(|e| at(dist, e))?;
                        Some(Space::Metric(m))
                    }
                    "top" => {
                        let n = s
                            .entries
                            .iter()
                            .find(|e| e.key == "n")
                            .ok_or_else(|| Error::parse(s.line, 1, "topological space needs `n`"))?;
                        let n = parse_usize(n)?;
                        let opens = s.entries.iter().find(|e| e.key == "opens");
                        let t = match opens {
                            Some(o) => {
                                FiniteTopSpace::parse(n, &o.value).map_err(|e| at(o, e))?
                            }
                            None => FiniteTopSpace::discrete(n)
                                .map_err(|e| Error::parse(s.line, 1, e.to_string()))?,
                        };
                        Some(Space::Top(t))
                    }
                    other => {
                        return Err(Error::parse(
                            kind.line,
                            kind.col,
                            format!("unknown space kind `{other}`"),
                        ))
                    }
                }
            }
        };

        // [group]
        let group = match find("group") {
            None => None,
            Some(s) => {
                let mut named_mats: Vec<(String, IntMatrix)> = Vec::new();
                let mut named_perms: Vec<(String, Perm)> = Vec::new();
                let torus_like = matches!(space, Some(Space::Torus { .. }) | None);
                for e in &s.entries {
                    let mut it = e.key.split_whitespace();
                    let (Some("gen"), Some(name), None) = (it.next(), it.next(), it.next()) else {
                        return Err(Error::parse(
                            e.line,
                            1,
                            format!("[group] entries are `gen NAME = ...`, found `{}`", e.key),
                        ));
                    };
                    if torus_like {
                        let m = IntMatrix::parse(&e.value).map_err(|err| at(e, err))?;
                        named_mats.push((name.to_string(), m));
                    } else {
                        let p = Perm::parse(&e.value).map_err(|err| at(e, err))?;
                        named_perms.push((name.to_string(), p));
                    }
                }
                if torus_like {
                    if named_mats.is_empty() {
                        return Err(Error::parse(s.line, 1, "[group] lists no generators"));
                    }
                    Some(GroupPresentation::from_matrices(named_mats)?)
                } else {
                    if named_perms.is_empty() {
                        return Err(Error::parse(s.line, 1, "[group] lists no generators"));
                    }
                    Some(GroupPresentation::from_perms(named_perms)?)
                }
            }
        };

        // action = group + space (torus inferred from matrix generators)
        let action = match group {
            None => None,
            Some(g) => {
                let sp = match (&space, g.matrix_dim()) {
                    (Some(sp), _) => sp.clone(),
                    (None, Some(dim)) => Space::Torus { dim },
                    (None, None) => {
                        return Err(Error::invalid(
                            "permutation generators need a [space] section",
                        ))
                    }
                };
                Some(ActionHandle::new(g, sp)?)
            }
        };

        // [subgroup]
        let mut subgroup_words = Vec::new();
        if let Some(s) = find("subgroup") {
            let Some(a) = &action else {
                return Err(Error::parse(s.line, 1, "[subgroup] needs a [group]"));
            };
            for e in &s.entries {
                if e.key != "gen" {
                    return Err(Error::parse(
                        e.line,
                        1,
                        format!("[subgroup] entries are `gen = WORD`, found `{}`", e.key),
                    ));
                }
                let w = a.group().parse_word(&e.value).map_err(|err| at(e, err))?;
                subgroup_words.push(w);
            }
        }

        // [cover]
        let cover = match find("cover") {
            None => None,
            Some(s) => {
                let Some(a) = &action else {
                    return Err(Error::parse(s.line, 1, "[cover] needs a [group] and space"));
                };
                let mut members = Vec::new();
                for e in &s.entries {
                    let mut it = e.key.split_whitespace();
                    let (Some("member"), Some(name), None) = (it.next(), it.next(), it.next())
                    else {
                        return Err(Error::parse(
                            e.line,
                            1,
                            format!("[cover] entries are `member NAME = ...`, found `{}`", e.key),
                        ));
                    };
                    let repr = match a.space() {
                        Space::Torus { dim } => SetRepr::Boxes(
                            TorusSet::parse(*dim, &e.value).map_err(|err| at(e, err))?,
                        ),
                        sp => SetRepr::Mask(parse_mask(
                            e,
                            sp.finite_size().expect("finite space"),
                        )?),
                    };
                    members.push(NamedSet::new(name, repr));
                }
                Some(OpenCover::new(a.space(), members)?)
            }
        };

        // [covering]
        let covering = match find("covering") {
            None => None,
            Some(s) => {
                let m = s
                    .entries
                    .iter()
                    .find(|e| e.key == "matrix")
                    .ok_or_else(|| Error::parse(s.line, 1, "[covering] needs `matrix = ...`"))?;
                let mat = IntMatrix::parse(&m.value).map_err(|err| at(m, err))?;
                Some(CoveringMap::new(mat)?)
            }
        };

        // [task]
        let mut params = TaskParams::default();
        if let Some(s) = find("task") {
            for e in &s.entries {
                match e.key.as_str() {
                    "name" => params.task = Some(e.value.clone()),
                    "c" => params.c = Some(parse_rat_entry(e)?),
                    "epsilon" => params.epsilon = Some(parse_rat_entry(e)?),
                    "depth" => params.depth = Some(parse_usize(e)?),
                    "grid" => params.grid = Some(parse_u32(e)?),
                    "seed" => params.seed = Some(parse_u64(e)?),
                    "bound" => params.bound = Some(parse_usize(e)?),
                    "suite" => params.suite = Some(e.value.clone()),
                    "point" => {
                        let p = match &action {
                            Some(a) if matches!(a.space(), Space::Torus { .. }) => Point::Torus(
                                TorusPoint::parse(&e.value).map_err(|err| at(e, err))?,
                            ),
                            Some(_) => Point::Finite(parse_usize(e)?),
                            None => Point::Torus(
                                TorusPoint::parse(&e.value).map_err(|err| at(e, err))?,
                            ),
                        };
                        params.point = Some(p);
                    }
                    other => {
                        return Err(Error::parse(
                            e.line,
                            1,
                            format!("unknown [task] key `{other}`"),
                        ))
                    }
                }
            }
        }

        Ok(Scenario {
            raw: text.to_string(),
            action,
            subgroup_words,
            cover,
            covering,
            params,
        })
    }
}
