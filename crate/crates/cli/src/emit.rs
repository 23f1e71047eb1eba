//! Serialized forms of reports and artifacts, and their canonical encodings.
//!
//! JSON is pretty-printed with keys sorted at every depth and a trailing
//! newline. Every document type deserializes back to itself, so emitting a
//! loaded artifact reproduces it byte for byte.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};
use tambara::ideal::{enumerate_ideals, is_prime, is_radical};
use tambara::spectrum::radical_generators;
use tambara::tambara::AxiomReport;
use tambara::{Analysis, Report, TambaraFunctor};

fn sort_keys(v: Value) -> Value {
    match v {
        Value::Object(map) => {
            let mut entries: Vec<(String, Value)> = map.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            Value::Object(entries.into_iter().map(|(k, v)| (k, sort_keys(v))).collect())
        }
        Value::Array(items) => Value::Array(items.into_iter().map(sort_keys).collect()),
        other => other,
    }
}

pub fn to_canonical_json<T: Serialize>(x: &T) -> String {
    let v = serde_json::to_value(x).expect("document types serialize to JSON");
    let mut s = serde_json::to_string_pretty(&sort_keys(v)).expect("values serialize");
    s.push('\n');
    s
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckDoc {
    pub name: String,
    /// `pass`, `fail`, or for axioms also `vacuous`, `assumed`, `unverified`.
    pub status: String,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckDoc {
    pub fn failed(&self) -> bool {
        self.status == "fail"
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub title: String,
    pub passed: bool,
    pub checks: Vec<CheckDoc>,
}

impl From<&Report> for ReportDoc {
    fn from(r: &Report) -> Self {
        let checks = r
            .checks
            .iter()
            .map(|c| CheckDoc {
                name: c.name.clone(),
                status: if c.passed { "pass" } else { "fail" }.to_string(),
                detail: c.detail.clone(),
                witness: c.witness.clone(),
            })
            .collect();
        ReportDoc { title: r.title.clone(), passed: r.passed(), checks }
    }
}

impl From<&AxiomReport> for ReportDoc {
    fn from(r: &AxiomReport) -> Self {
        let checks = r
            .checks
            .iter()
            .map(|c| CheckDoc {
                name: c.axiom.clone(),
                status: c.status.as_str().to_string(),
                detail: format!("{} ({} instances)", c.description, c.instances),
                witness: c.witness.clone(),
            })
            .collect();
        ReportDoc { title: format!("axioms {}", r.functor), passed: r.passed(), checks }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobResult {
    pub job: String,
    pub passed: bool,
    pub reports: Vec<ReportDoc>,
}

impl JobResult {
    pub fn new(job: String, reports: Vec<ReportDoc>) -> Self {
        JobResult { job, passed: reports.iter().all(|r| r.passed), reports }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArtifactRef {
    pub path: String,
    pub sha256: String,
}

/// An emitted file: a path relative to the output directory and its bytes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Artifact {
    pub path: String,
    pub content: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub passed: bool,
    pub checks: usize,
    pub failures: usize,
    pub jobs: Vec<JobResult>,
    pub artifacts: Vec<ArtifactRef>,
    /// SHA-256 over the canonical JSON of `command`, `jobs` and `artifacts`.
    pub content_hash: String,
}

impl RunReport {
    pub fn new(command: String, jobs: Vec<JobResult>, artifacts: &[Artifact]) -> Self {
        let artifacts: Vec<ArtifactRef> = artifacts
            .iter()
            .map(|a| ArtifactRef { path: a.path.clone(), sha256: sha256_hex(a.content.as_bytes()) })
            .collect();
        let all = || jobs.iter().flat_map(|j| &j.reports).flat_map(|r| &r.checks);
        let checks = all().count();
        let failures = all().filter(|c| c.failed()).count();
        let content_hash = sha256_hex(to_canonical_json(&(&command, &jobs, &artifacts)).as_bytes());
        RunReport { passed: failures == 0, command, checks, failures, jobs, artifacts, content_hash }
    }

    pub fn to_json(&self) -> String {
        to_canonical_json(self)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "tambara {}", self.command);
        for job in &self.jobs {
            for r in &job.reports {
                let _ = writeln!(out, "[{}] {}", if r.passed { "pass" } else { "FAIL" }, r.title);
                for c in &r.checks {
                    let _ = writeln!(out, "    {:<10} {}: {}", c.status, c.name, c.detail);
                    if let Some(w) = &c.witness {
                        let _ = writeln!(out, "    {:<10} witness: {w}", "");
                    }
                }
            }
        }
        for a in &self.artifacts {
            let _ = writeln!(out, "artifact {} sha256:{}", a.path, a.sha256);
        }
        let _ = writeln!(out, "{} checks, {} failed", self.checks, self.failures);
        let _ = writeln!(out, "content hash {}", self.content_hash);
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameElement {
    pub index: usize,
    pub label: String,
    /// Member element indices at each subgroup.
    pub levels: Vec<Vec<usize>>,
    /// `[subgroup, element]` pairs whose generated ideal has this radical.
    pub generators: Vec<(usize, usize)>,
}

/// The lattice of radical ideals: elements in canonical order and the
/// cover relation as `(lower, upper)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameArtifact {
    pub functor: String,
    pub subgroups: Vec<String>,
    pub elements: Vec<FrameElement>,
    pub hasse: Vec<(usize, usize)>,
    pub bottom: usize,
    pub top: usize,
    pub meet_primes: Vec<usize>,
}

impl FrameArtifact {
    pub fn new(a: &Analysis) -> Self {
        let t = &*a.functor;
        let f = a.frame.frame();
        let elements = a
            .frame
            .ideals()
            .iter()
            .enumerate()
            .map(|(index, i)| FrameElement {
                index,
                label: f.label(index).to_string(),
                levels: i.levels().iter().map(|l| l.to_vec()).collect(),
                generators: radical_generators(t, i),
            })
            .collect();
        FrameArtifact {
            functor: t.name().to_string(),
            subgroups: subgroup_names(t),
            elements,
            hasse: f.hasse_edges(),
            bottom: f.bottom(),
            top: f.top(),
            meet_primes: (0..f.size()).filter(|&q| f.is_meet_prime(q)).collect(),
        }
    }

    pub fn to_dot(&self) -> String {
        HasseDot {
            name: self.functor.clone(),
            labels: self.elements.iter().map(|e| e.label.clone()).collect(),
            edges: self.hasse.clone(),
        }
        .render()
    }
}

fn subgroup_names(t: &TambaraFunctor) -> Vec<String> {
    (0..t.subgroup_count()).map(|h| t.subgroup_name(h)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePoint {
    pub point: String,
    pub levels: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisEntry {
    pub subgroup: usize,
    pub element: usize,
    pub label: String,
    /// The points of `D_H(x)`.
    pub points: Vec<usize>,
}

/// The spectrum as a finite space: primes, every open set, and the basic
/// opens `D_H(x)` with the element that defines each.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumArtifact {
    pub functor: String,
    pub subgroups: Vec<String>,
    pub primes: Vec<PrimePoint>,
    pub opens: Vec<Vec<usize>>,
    pub basis: Vec<BasisEntry>,
}

impl SpectrumArtifact {
    pub fn new(a: &Analysis) -> Self {
        let t = &*a.functor;
        let s = &a.spectrum;
        let primes = s
            .primes()
            .iter()
            .zip(s.space().points())
            .map(|(p, name)| PrimePoint {
                point: name.clone(),
                levels: p.levels().iter().map(|l| l.to_vec()).collect(),
            })
            .collect();
        let mut opens: Vec<Vec<usize>> = s.space().opens().iter().map(|o| o.iter().collect()).collect();
        opens.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        let basis = s
            .basis()
            .iter()
            .map(|b| BasisEntry {
                subgroup: b.element.0,
                element: b.element.1,
                label: t.element_label(b.element.0, b.element.1),
                points: b.points.iter().collect(),
            })
            .collect();
        SpectrumArtifact { functor: t.name().to_string(), subgroups: subgroup_names(t), primes, opens, basis }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealEntry {
    pub label: String,
    pub levels: Vec<Vec<usize>>,
    pub radical: bool,
    pub prime: bool,
}

/// Every Tambara ideal of a functor, in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealsArtifact {
    pub functor: String,
    pub subgroups: Vec<String>,
    pub ideals: Vec<IdealEntry>,
}

impl IdealsArtifact {
    pub fn new(t: &TambaraFunctor) -> Self {
        let ideals = enumerate_ideals(t)
            .iter()
            .map(|i| IdealEntry {
                label: i.describe(t),
                levels: i.levels().iter().map(|l| l.to_vec()).collect(),
                radical: is_radical(t, i),
                prime: is_prime(t, i).is_ok(),
            })
            .collect();
        IdealsArtifact { functor: t.name().to_string(), subgroups: subgroup_names(t), ideals }
    }
}

/// A Hasse diagram in the DOT dialect this tool writes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HasseDot {
    pub name: String,
    pub labels: Vec<String>,
    pub edges: Vec<(usize, usize)>,
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Reads a quoted string starting at a `"`; returns it and the rest.
fn unquote(s: &str) -> Option<(String, &str)> {
    let mut chars = s.strip_prefix('"')?.char_indices();
    let mut out = String::new();
    while let Some((i, c)) = chars.next() {
        match c {
            '\\' => out.push(chars.next()?.1),
            '"' => return Some((out, &s[i + 2..])),
            c => out.push(c),
        }
    }
    None
}

impl HasseDot {
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"{}\" {{", escape(&self.name));
        let _ = writeln!(out, "  rankdir=BT;");
        let _ = writeln!(out, "  node [shape=box];");
        for (i, l) in self.labels.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", escape(l));
        }
        for (a, b) in &self.edges {
            let _ = writeln!(out, "  n{a} -> n{b};");
        }
        out.push_str("}\n");
        out
    }

    /// Parses the output of [`HasseDot::render`]; errors name the 1-based line.
    pub fn parse(src: &str) -> Result<Self, String> {
        let mut lines = src.lines().enumerate();
        let bad = |n: usize, why: &str| format!("line {}: {why}", n + 1);
        let (n, head) = lines.next().ok_or("empty input")?;
        let name = head
            .strip_prefix("digraph ")
            .and_then(unquote)
            .filter(|(_, rest)| *rest == " {")
            .ok_or_else(|| bad(n, "expected 'digraph \"name\" {'"))?
            .0;
        let mut dot = HasseDot { name, labels: Vec::new(), edges: Vec::new() };
        let mut closed = false;
        for (n, line) in lines {
            let line = line.trim();
            if closed {
                return Err(bad(n, "content after closing brace"));
            }
            if line == "}" {
                closed = true;
                continue;
            }
            if line == "rankdir=BT;" || line == "node [shape=box];" {
                continue;
            }
            let node = |s: &str| s.strip_prefix('n').and_then(|d| d.parse::<usize>().ok());
            if let Some((a, b)) = line.strip_suffix(';').and_then(|l| l.split_once(" -> ")) {
                let (a, b) = node(a).zip(node(b)).ok_or_else(|| bad(n, "bad edge"))?;
                dot.edges.push((a, b));
            } else if let Some((id, rest)) = line.split_once(" [label=") {
                if node(id) != Some(dot.labels.len()) {
                    return Err(bad(n, "nodes must be numbered consecutively from n0"));
                }
                let (label, rest) = unquote(rest).ok_or_else(|| bad(n, "unterminated label"))?;
                if rest != "];" {
                    return Err(bad(n, "expected '];' after label"));
                }
                dot.labels.push(label);
            } else {
                return Err(bad(n, "unrecognized statement"));
            }
        }
        if !closed {
            return Err("missing closing brace".into());
        }
        if let Some(&(a, b)) = dot.edges.iter().find(|&&(a, b)| a.max(b) >= dot.labels.len()) {
            return Err(format!("edge n{a} -> n{b} names an undeclared node"));
        }
        Ok(dot)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_sorted_at_every_depth() {
        let v = serde_json::json!({"b": {"z": 1, "a": [{"y": 0, "x": 1}]}, "a": null});
        let s = to_canonical_json(&v);
        let order: Vec<usize> = ["\"a\": null", "\"b\"", "\"a\": [", "\"x\"", "\"y\"", "\"z\""]
            .iter()
            .map(|k| s.find(k).unwrap())
            .collect();
        assert!(order.windows(2).all(|w| w[0] < w[1]), "{s}");
    }

    #[test]
    fn dot_matches_the_engine_and_round_trips() {
        let a = Analysis::new(tambara::fixtures::const_functor(6, "C2"));
        let art = FrameArtifact::new(&a);
        let dot = art.to_dot();
        assert_eq!(dot, a.frame.frame().to_dot(a.functor.name()));
        assert_eq!(HasseDot::parse(&dot).unwrap().render(), dot);
        let tricky =
            HasseDot { name: "a\"b\\c".into(), labels: vec!["x\"".into(), "]; y".into()], edges: vec![(0, 1)] };
        assert_eq!(HasseDot::parse(&tricky.render()).unwrap(), tricky);
        assert!(HasseDot::parse("digraph \"x\" {\n  n0 -> n1;\n}\n").is_err());
    }
}
