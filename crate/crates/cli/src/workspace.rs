//! The JSON workspace format: named groups, rings, functors, ideals,
//! morphisms and a job list, resolved into engine objects on load.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use tambara::ideal::generate_ideal;
use tambara::tambara::{
    burnside_c2_mod, constant_functor, cyclic_action, fixed_point_functor, product_functor, quotient_functor,
    same_group, trivial_action, zero_functor, Origin, TambaraData, TambaraFunctor, TambaraMorphism,
};
use tambara::{FiniteCommRing, FiniteGroup, TambaraIdeal};

use crate::emit::to_canonical_json;
use crate::lang::{self, Action, FunctorExpr, RingExpr};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupTable {
    pub name: String,
    /// Multiplication table, identity at index 0.
    pub table: Vec<Vec<usize>>,
    pub labels: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Name(String),
    Table(GroupTable),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingTable {
    pub name: String,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    pub labels: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RingSpec {
    Expr(String),
    Table(RingTable),
}

/// One restriction, transfer or norm table between levels `upper >= lower`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapTable {
    pub upper: usize,
    pub lower: usize,
    pub table: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConjTable {
    pub element: usize,
    pub subgroup: usize,
    pub table: Vec<usize>,
}

/// A functor given by dense tables. Subgroups are numbered as the engine
/// enumerates them for the group; `tambara export` prints a template.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorTables {
    pub group: GroupSpec,
    pub levels: Vec<RingSpec>,
    pub res: Vec<MapTable>,
    pub tr: Vec<MapTable>,
    pub nm: Vec<MapTable>,
    pub conj: Vec<ConjTable>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FunctorSpec {
    Expr(String),
    Tables(FunctorTables),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealSpec {
    pub functor: String,
    /// `[subgroup, element]` pairs.
    pub generators: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismSpec {
    pub source: String,
    pub target: String,
    pub maps: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub verb: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub functor: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub morphism: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suite: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkspaceDocument {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub groups: BTreeMap<String, GroupTable>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub rings: BTreeMap<String, RingSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub functors: BTreeMap<String, FunctorSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub ideals: BTreeMap<String, IdealSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub morphisms: BTreeMap<String, MorphismSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub jobs: Vec<JobSpec>,
}

impl WorkspaceDocument {
    pub fn to_json(&self) -> String {
        to_canonical_json(self)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("{at}: {message}")]
    Invalid { at: String, message: String },
}

fn invalid(at: &str, message: impl ToString) -> LoadError {
    LoadError::Invalid { at: at.to_string(), message: message.to_string() }
}

/// A fully resolved workspace.
#[derive(Debug, Clone)]
pub struct Workspace {
    pub document: WorkspaceDocument,
    pub functors: BTreeMap<String, Arc<TambaraFunctor>>,
    /// Ideal name to (functor name, ideal).
    pub ideals: BTreeMap<String, (String, TambaraIdeal)>,
    pub morphisms: BTreeMap<String, TambaraMorphism>,
}

impl Workspace {
    pub fn jobs(&self) -> &[JobSpec] {
        &self.document.jobs
    }
}

pub const VERBS: [&str; 6] = ["check", "ideals", "spectrum", "frame", "map", "suite"];

pub fn load_workspace(path: &Path) -> Result<Workspace, LoadError> {
    let text =
        std::fs::read_to_string(path).map_err(|source| LoadError::Io { path: path.display().to_string(), source })?;
    parse_workspace(&text)
}

pub fn parse_workspace(text: &str) -> Result<Workspace, LoadError> {
    let document: WorkspaceDocument = serde_json::from_str(text).map_err(|e| LoadError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    resolve(document)
}

pub fn resolve(document: WorkspaceDocument) -> Result<Workspace, LoadError> {
    let mut r = Resolver {
        doc: &document,
        groups: BTreeMap::new(),
        rings: BTreeMap::new(),
        functors: BTreeMap::new(),
        ideals: BTreeMap::new(),
        visiting: BTreeSet::new(),
    };
    for name in document.groups.keys() {
        r.group(name, &format!("groups.{name}"))?;
    }
    for name in document.rings.keys() {
        r.named_ring(name, &format!("rings.{name}"))?;
    }
    for name in document.functors.keys() {
        r.functor(name, &format!("functors.{name}"))?;
    }
    for name in document.ideals.keys() {
        r.ideal(name, &format!("ideals.{name}"))?;
    }
    let mut morphisms = BTreeMap::new();
    for (name, spec) in &document.morphisms {
        let at = format!("morphisms.{name}");
        let source = r.functor(&spec.source, &at)?;
        let target = r.functor(&spec.target, &at)?;
        let m = TambaraMorphism::new(source, target, spec.maps.clone()).map_err(|e| invalid(&at, e))?;
        morphisms.insert(name.clone(), m);
    }
    for (i, job) in document.jobs.iter().enumerate() {
        let at = format!("jobs[{i}]");
        if !VERBS.contains(&job.verb.as_str()) {
            return Err(invalid(&at, format!("unknown verb '{}'", job.verb)));
        }
        if let Some(f) = &job.functor {
            if !r.functors.contains_key(f) && !builtin_functor_names().contains(f) {
                return Err(invalid(&at, format!("unknown functor '{f}'")));
            }
        }
        if let Some(m) = &job.morphism {
            if !morphisms.contains_key(m) {
                return Err(invalid(&at, format!("unknown morphism '{m}'")));
            }
        }
        match (&job.verb[..], &job.suite) {
            ("suite", None) => return Err(invalid(&at, "verb 'suite' needs a suite name")),
            ("suite", Some(s)) => {
                s.parse::<crate::suite::Suite>().map_err(|e| invalid(&at, e))?;
            }
            (_, Some(_)) => return Err(invalid(&at, "only verb 'suite' takes a suite name")),
            _ => {}
        }
    }
    let functors = r.functors.into_iter().collect();
    let ideals = r.ideals;
    Ok(Workspace { document, functors, ideals, morphisms })
}

pub fn builtin_functor_names() -> Vec<String> {
    tambara::fixtures::functors().iter().map(|t| t.name().to_string()).collect()
}

struct Resolver<'a> {
    doc: &'a WorkspaceDocument,
    groups: BTreeMap<String, Arc<FiniteGroup>>,
    rings: BTreeMap<String, FiniteCommRing>,
    functors: BTreeMap<String, Arc<TambaraFunctor>>,
    ideals: BTreeMap<String, (String, TambaraIdeal)>,
    visiting: BTreeSet<String>,
}

impl Resolver<'_> {
    fn enter(&mut self, key: String, at: &str) -> Result<(), LoadError> {
        if self.visiting.insert(key.clone()) {
            Ok(())
        } else {
            Err(invalid(at, format!("cyclic definition through {key}")))
        }
    }

    fn group(&mut self, name: &str, at: &str) -> Result<Arc<FiniteGroup>, LoadError> {
        if let Some(g) = self.groups.get(name) {
            return Ok(g.clone());
        }
        let g = match self.doc.groups.get(name) {
            Some(table) => {
                if FiniteGroup::builtin(name).is_some() {
                    return Err(invalid(at, format!("'{name}' is a built-in group name")));
                }
                group_from_table(table).map_err(|e| invalid(at, e))?
            }
            None => FiniteGroup::builtin(name).ok_or_else(|| invalid(at, format!("unknown group '{name}'")))?,
        };
        let g = Arc::new(g);
        self.groups.insert(name.to_string(), g.clone());
        Ok(g)
    }

    fn group_spec(&mut self, spec: &GroupSpec, at: &str) -> Result<Arc<FiniteGroup>, LoadError> {
        match spec {
            GroupSpec::Name(n) => self.group(n, at),
            GroupSpec::Table(t) => Ok(Arc::new(group_from_table(t).map_err(|e| invalid(at, e))?)),
        }
    }

    fn named_ring(&mut self, name: &str, at: &str) -> Result<FiniteCommRing, LoadError> {
        if let Some(r) = self.rings.get(name) {
            return Ok(r.clone());
        }
        if lang::is_reserved_ring_name(name) {
            return Err(invalid(at, format!("'{name}' is a reserved word")));
        }
        let spec = self.doc.rings.get(name).ok_or_else(|| invalid(at, format!("unknown ring '{name}'")))?;
        let at = format!("rings.{name}");
        self.enter(at.clone(), &at)?;
        let r = self.ring_spec(spec, &at)?;
        self.visiting.remove(&at);
        self.rings.insert(name.to_string(), r.clone());
        Ok(r)
    }

    fn ring_spec(&mut self, spec: &RingSpec, at: &str) -> Result<FiniteCommRing, LoadError> {
        match spec {
            RingSpec::Expr(src) => {
                let e = lang::parse_ring(src).map_err(|e| invalid(at, format!("in '{src}': {e}")))?;
                self.ring_expr(&e, at)
            }
            RingSpec::Table(t) => {
                FiniteCommRing::from_tables(&t.name, t.add.clone(), t.mul.clone(), Some(t.labels.clone()))
                    .map_err(|e| invalid(at, e))
            }
        }
    }

    fn ring_expr(&mut self, e: &RingExpr, at: &str) -> Result<FiniteCommRing, LoadError> {
        match e {
            RingExpr::Zmod(n) => FiniteCommRing::zmod(*n).map_err(|e| invalid(at, e)),
            RingExpr::Gf(q) => FiniteCommRing::gf(*q).map_err(|e| invalid(at, e)),
            RingExpr::PolyQuot { base, c0, c1 } => {
                let base = self.ring_expr(base, at)?;
                FiniteCommRing::poly_quot(&base, *c0, *c1).map_err(|e| invalid(at, e))
            }
            RingExpr::Named(n) => self.named_ring(n, at),
        }
    }

    fn functor(&mut self, name: &str, at: &str) -> Result<Arc<TambaraFunctor>, LoadError> {
        if let Some(t) = self.functors.get(name) {
            return Ok(t.clone());
        }
        let Some(spec) = self.doc.functors.get(name) else {
            return tambara::fixtures::functors()
                .into_iter()
                .find(|t| t.name() == name)
                .ok_or_else(|| invalid(at, format!("unknown functor '{name}'")));
        };
        let at = format!("functors.{name}");
        self.enter(at.clone(), &at)?;
        let t = match spec {
            FunctorSpec::Expr(src) => {
                let e = lang::parse_functor(src).map_err(|e| invalid(&at, format!("in '{src}': {e}")))?;
                self.functor_expr(&e, &at)?
            }
            FunctorSpec::Tables(tables) => self.functor_tables(name, tables, &at)?,
        };
        self.visiting.remove(&at);
        let t = Arc::new(t.with_name(name));
        self.functors.insert(name.to_string(), t.clone());
        Ok(t)
    }

    fn functor_expr(&mut self, e: &FunctorExpr, at: &str) -> Result<TambaraFunctor, LoadError> {
        let err = |e: tambara::Error| invalid(at, e);
        Ok(match e {
            FunctorExpr::Constant { ring, group } => {
                let r = self.ring_expr(ring, at)?;
                constant_functor(&r, &self.group(group, at)?)
            }
            FunctorExpr::FixedPoint { ring, group, action } => {
                let r = self.ring_expr(ring, at)?;
                let g = self.group(group, at)?;
                let act = match action {
                    Action::Frobenius => cyclic_action(&r, &g, &r.frobenius()).map_err(err)?,
                    Action::Trivial => trivial_action(&r, &g),
                };
                fixed_point_functor(&r, &g, &act).map_err(err)?
            }
            FunctorExpr::Burnside(n) => burnside_c2_mod(*n).map_err(err)?,
            FunctorExpr::Product(a, b) => {
                let (a, b) = (self.functor(a, at)?, self.functor(b, at)?);
                let (p, _, _) = product_functor(&a, &b).map_err(err)?;
                Arc::unwrap_or_clone(p)
            }
            FunctorExpr::Quotient { functor, ideal } => {
                let t = self.functor(functor, at)?;
                let (owner, i) = self.ideal(ideal, at)?;
                if owner != *functor {
                    return Err(invalid(at, format!("ideal '{ideal}' belongs to '{owner}', not '{functor}'")));
                }
                let (q, _) = quotient_functor(&t, i.levels()).map_err(err)?;
                Arc::unwrap_or_clone(q)
            }
            FunctorExpr::Zero { group } => zero_functor(&self.group(group, at)?),
        })
    }

    fn functor_tables(&mut self, name: &str, spec: &FunctorTables, at: &str) -> Result<TambaraFunctor, LoadError> {
        let group = self.group_spec(&spec.group, &format!("{at}.group"))?;
        let mut levels = Vec::with_capacity(spec.levels.len());
        for (h, r) in spec.levels.iter().enumerate() {
            levels.push(Arc::new(self.ring_spec(r, &format!("{at}.levels[{h}]"))?));
        }
        let mut data = TambaraData {
            name: name.to_string(),
            group,
            levels,
            res: BTreeMap::new(),
            tr: BTreeMap::new(),
            nm: BTreeMap::new(),
            conj: BTreeMap::new(),
        };
        for (key, tables, into) in
            [("res", &spec.res, &mut data.res), ("tr", &spec.tr, &mut data.tr), ("nm", &spec.nm, &mut data.nm)]
        {
            for m in tables {
                if into.insert((m.upper, m.lower), m.table.clone()).is_some() {
                    return Err(invalid(
                        &format!("{at}.{key}"),
                        format!("duplicate table for ({}, {})", m.upper, m.lower),
                    ));
                }
            }
        }
        for c in &spec.conj {
            if data.conj.insert((c.element, c.subgroup), c.table.clone()).is_some() {
                return Err(invalid(
                    &format!("{at}.conj"),
                    format!("duplicate table for ({}, {})", c.element, c.subgroup),
                ));
            }
        }
        TambaraFunctor::from_data(data, Origin::Loaded).map_err(|e| invalid(at, e))
    }

    fn ideal(&mut self, name: &str, at: &str) -> Result<(String, TambaraIdeal), LoadError> {
        if let Some(i) = self.ideals.get(name) {
            return Ok(i.clone());
        }
        let spec = self.doc.ideals.get(name).ok_or_else(|| invalid(at, format!("unknown ideal '{name}'")))?;
        let at = format!("ideals.{name}");
        self.enter(at.clone(), &at)?;
        let t = self.functor(&spec.functor, &at)?;
        for &(h, x) in &spec.generators {
            if h >= t.subgroup_count() || x >= t.level(h).size() {
                return Err(invalid(&at, format!("generator [{h}, {x}] is not an element of '{}'", spec.functor)));
            }
        }
        let i = generate_ideal(&t, &spec.generators);
        self.visiting.remove(&at);
        let entry = (spec.functor.clone(), i);
        self.ideals.insert(name.to_string(), entry.clone());
        Ok(entry)
    }
}

fn group_from_table(t: &GroupTable) -> tambara::Result<FiniteGroup> {
    FiniteGroup::from_table(&t.name, t.table.clone(), Some(t.labels.clone()))
}

fn ring_table(r: &FiniteCommRing) -> RingSpec {
    RingSpec::Table(RingTable {
        name: r.name().to_string(),
        add: r.add_table(),
        mul: r.mul_table(),
        labels: r.labels().to_vec(),
    })
}

/// The dense-table description of `t`, loadable back with the same tables.
pub fn functor_tables(t: &TambaraFunctor) -> FunctorTables {
    let g = t.group();
    let group = match FiniteGroup::builtin(g.name()) {
        Some(b) if same_group(&b, g) => GroupSpec::Name(g.name().to_string()),
        _ => GroupSpec::Table(GroupTable { name: g.name().to_string(), table: g.table(), labels: g.labels().to_vec() }),
    };
    let data = t.data();
    let maps = |m: &BTreeMap<(usize, usize), Vec<usize>>| {
        m.iter().map(|(&(upper, lower), table)| MapTable { upper, lower, table: table.clone() }).collect()
    };
    FunctorTables {
        group,
        levels: t.levels().iter().map(|r| ring_table(r)).collect(),
        res: maps(&data.res),
        tr: maps(&data.tr),
        nm: maps(&data.nm),
        conj: data
            .conj
            .iter()
            .map(|(&(element, subgroup), table)| ConjTable { element, subgroup, table: table.clone() })
            .collect(),
    }
}

/// A workspace holding `t` as explicit tables under `name`.
pub fn export_functor(name: &str, t: &TambaraFunctor) -> WorkspaceDocument {
    let mut doc = WorkspaceDocument::default();
    doc.functors.insert(name.to_string(), FunctorSpec::Tables(functor_tables(t)));
    doc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors_resolve() {
        let ws = parse_workspace(
            r#"{
              "rings": {"R": "zmod 6", "S": "polyquot R t2=0"},
              "functors": {
                "A": "constant R over C2",
                "B": "fixedpoint gf 4 over C2 frobenius",
                "P": "product A B",
                "Q": "quotient A by I",
                "D": "constant S over C3"
              },
              "ideals": {"I": {"functor": "A", "generators": [[0, 2]]}}
            }"#,
        )
        .unwrap();
        assert_eq!(ws.functors["A"].level(0).size(), 6);
        assert_eq!(ws.functors["Q"].level(0).size(), 2);
        assert_eq!(ws.functors["P"].level(1).size(), 12);
        assert_eq!(ws.functors["D"].level(0).size(), 36);
        assert_eq!(ws.ideals["I"].0, "A");
    }

    #[test]
    fn cycles_and_unknown_names() {
        let e = parse_workspace(r#"{"functors": {"A": "product A A"}}"#).unwrap_err();
        assert!(e.to_string().contains("cyclic"), "{e}");
        let e = parse_workspace(r#"{"functors": {"A": "constant zmod 6 over D8"}}"#).unwrap_err();
        assert!(e.to_string().contains("unknown group 'D8'"), "{e}");
        let e = parse_workspace(r#"{"rings": {"zmod": "gf 2"}}"#).unwrap_err();
        assert!(e.to_string().contains("reserved"), "{e}");
        let e = parse_workspace(r#"{"jobs": [{"verb": "spectrum", "functor": "nope"}]}"#).unwrap_err();
        assert!(e.to_string().starts_with("jobs[0]"), "{e}");
    }

    #[test]
    fn tables_round_trip() {
        for t in tambara::fixtures::functors() {
            let doc = export_functor("T", &t);
            let ws = resolve(doc.clone()).unwrap();
            assert_eq!(export_functor("T", &ws.functors["T"]), doc, "{}", t.name());
        }
    }
}
