//! Verification suites and the job runner behind every verb.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use tambara::ideal::{
    enumerate_ideals, generalized_product_sets, generate_ideal, ideal_product, is_prime, principal_ideal, radical,
    Element, PowerChainRadical,
};
use tambara::spectrum::{
    closed_immersion, crt_connectedness, primes_by_full_enumeration, reduction_invariance, spectral_map, verify_frame,
    verify_points_primes, verify_spatial_coherent_spectral,
};
use tambara::tambara::{check_axioms, TambaraMorphism};
use tambara::{fixtures, Analysis, Report, TambaraFunctor, TambaraIdeal};

use crate::emit::to_canonical_json;
use crate::emit::{Artifact, FrameArtifact, IdealsArtifact, JobResult, ReportDoc, RunReport, SpectrumArtifact};
use crate::workspace::{JobSpec, Workspace};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Axioms,
    Ideals,
    Spectrum,
    Frame,
    Functoriality,
    Full,
}

pub const SUITES: [&str; 6] = ["axioms", "ideals", "spectrum", "frame", "functoriality", "full"];

impl FromStr for Suite {
    type Err = RunError;

    fn from_str(s: &str) -> Result<Self, RunError> {
        Ok(match s {
            "axioms" => Suite::Axioms,
            "ideals" => Suite::Ideals,
            "spectrum" => Suite::Spectrum,
            "frame" => Suite::Frame,
            "functoriality" => Suite::Functoriality,
            "full" => Suite::Full,
            _ => return Err(RunError::UnknownSuite(s.to_string())),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = [Suite::Axioms, Suite::Ideals, Suite::Spectrum, Suite::Frame, Suite::Functoriality, Suite::Full]
            .iter()
            .position(|s| s == self)
            .expect("listed");
        f.write_str(SUITES[i])
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("unknown suite '{0}' (expected one of: {list})", list = SUITES.join(", "))]
    UnknownSuite(String),
    #[error("unknown functor '{0}'")]
    UnknownFunctor(String),
    #[error("unknown morphism '{0}'")]
    UnknownMorphism(String),
    #[error("the functoriality checks need at least one morphism in scope")]
    NoMorphisms,
    #[error("unknown verb '{0}'")]
    UnknownVerb(String),
}

/// What a verb computes and which artifacts it writes.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Plan {
    pub axioms: bool,
    pub ideals: bool,
    pub frame: bool,
    pub spectrum: bool,
    pub functoriality: bool,
    pub ideal_artifacts: bool,
    pub frame_artifacts: bool,
    pub spectrum_artifacts: bool,
}

impl Plan {
    pub fn for_suite(s: Suite) -> Self {
        let none = Plan::default();
        match s {
            Suite::Axioms => Plan { axioms: true, ..none },
            Suite::Ideals => Plan { ideals: true, ideal_artifacts: true, ..none },
            Suite::Spectrum => Plan { spectrum: true, frame_artifacts: true, spectrum_artifacts: true, ..none },
            Suite::Frame => Plan { frame: true, frame_artifacts: true, ..none },
            Suite::Functoriality => Plan { functoriality: true, ..none },
            Suite::Full => Plan {
                axioms: true,
                ideals: true,
                frame: true,
                spectrum: true,
                functoriality: true,
                ideal_artifacts: true,
                frame_artifacts: true,
                spectrum_artifacts: true,
            },
        }
    }

    /// `check`, `ideals`, `spectrum`, `frame`, `map`, or `suite` with a name.
    pub fn for_verb(verb: &str, suite: Option<&str>) -> Result<Self, RunError> {
        Ok(match verb {
            "check" => Plan::for_suite(Suite::Axioms),
            "ideals" => Plan::for_suite(Suite::Ideals),
            "spectrum" => Plan::for_suite(Suite::Spectrum),
            "frame" => Plan::for_suite(Suite::Frame),
            "map" => Plan::for_suite(Suite::Functoriality),
            "suite" => Plan::for_suite(suite.unwrap_or("full").parse()?),
            other => return Err(RunError::UnknownVerb(other.to_string())),
        })
    }

    fn per_functor(&self) -> bool {
        self.axioms || self.ideals || self.frame || self.spectrum
    }
}

/// The functors and morphisms a run covers.
#[derive(Debug, Clone)]
pub struct Scope {
    pub functors: Vec<Arc<TambaraFunctor>>,
    pub morphisms: Vec<(String, TambaraMorphism)>,
    /// Functors addressable by `--functor` but not run by default.
    extra: Vec<Arc<TambaraFunctor>>,
}

impl Scope {
    pub fn builtin() -> Self {
        Scope { functors: fixtures::functors(), morphisms: fixtures::morphisms(), extra: Vec::new() }
    }

    pub fn from_workspace(ws: &Workspace) -> Self {
        Scope {
            functors: ws.functors.values().cloned().collect(),
            morphisms: ws.morphisms.iter().map(|(n, m)| (n.clone(), m.clone())).collect(),
            extra: fixtures::functors(),
        }
    }

    /// Narrows to one functor and the morphisms touching it.
    pub fn with_functor(mut self, name: &str) -> Result<Self, RunError> {
        let t = self
            .functors
            .iter()
            .chain(&self.extra)
            .find(|t| t.name() == name)
            .cloned()
            .ok_or_else(|| RunError::UnknownFunctor(name.to_string()))?;
        self.morphisms.retain(|(_, m)| m.source().name() == name || m.target().name() == name);
        self.functors = vec![t];
        Ok(self)
    }

    pub fn with_morphism(mut self, name: &str) -> Result<Self, RunError> {
        self.morphisms.retain(|(n, _)| n == name);
        if self.morphisms.is_empty() {
            return Err(RunError::UnknownMorphism(name.to_string()));
        }
        Ok(self)
    }
}

/// The reports and artifacts of one run.
#[derive(Debug, Clone)]
pub struct Run {
    pub report: RunReport,
    pub artifacts: Vec<Artifact>,
}

/// A file-name stem for each functor, unique within the list.
fn slugs(functors: &[Arc<TambaraFunctor>]) -> Vec<String> {
    let mut seen = BTreeSet::new();
    functors
        .iter()
        .map(|t| {
            let mut s = String::new();
            for c in t.name().chars() {
                if c.is_ascii_alphanumeric() || c == '-' {
                    s.push(c);
                } else if !s.ends_with('_') {
                    s.push('_');
                }
            }
            let base = s.trim_matches('_').to_string();
            let mut slug = base.clone();
            let mut k = 2;
            while !seen.insert(slug.clone()) {
                slug = format!("{base}-{k}");
                k += 1;
            }
            slug
        })
        .collect()
}

fn first_failure(items: impl IntoIterator<Item = Option<String>>) -> Option<String> {
    items.into_iter().flatten().next()
}

/// The prime-intersection radical: the meet of all primes containing `i`.
fn prime_radical(t: &TambaraFunctor, primes: &[TambaraIdeal], i: &TambaraIdeal) -> TambaraIdeal {
    primes.iter().filter(|p| i.is_subset(p)).fold(TambaraIdeal::whole(t), |acc, p| acc.intersection(p))
}

pub fn ideal_report(a: &Analysis) -> Report {
    let t = &*a.functor;
    let mut r = Report::new(format!("ideals {}", t.name()));
    let ideals = enumerate_ideals(t);
    let primes = a.spectrum.primes();
    r.note(
        "ideals.enumeration",
        format!("{} Tambara ideals, {} radical, {} prime", ideals.len(), a.frame.len(), primes.len()),
    );

    let chain = PowerChainRadical::new(t);
    let radicals: Vec<TambaraIdeal> = ideals.iter().map(|i| radical(t, i)).collect();
    r.check_none(
        "ideals.radical-agreement",
        "levelwise radical = power-chain radical = meet of containing primes, for every ideal",
        first_failure(ideals.iter().zip(&radicals).map(|(i, rad)| {
            let by_chain = chain.radical(i);
            let by_primes = prime_radical(t, primes, i);
            (*rad != by_chain || *rad != by_primes).then(|| {
                format!(
                    "I = {}: levelwise {}, power chain {}, primes {}",
                    i.describe(t),
                    rad.describe(t),
                    by_chain.describe(t),
                    by_primes.describe(t)
                )
            })
        })),
    );

    let n = ideals.len();
    let products: Vec<Vec<TambaraIdeal>> =
        ideals.iter().map(|i| ideals.iter().map(|j| ideal_product(t, i, j)).collect()).collect();
    let pairs = || (0..n).flat_map(|x| (0..n).map(move |y| (x, y)));
    r.check_none(
        "ideals.product-in-intersection",
        format!("IJ is contained in I meet J for all {} pairs", n * n),
        first_failure(pairs().map(|(x, y)| {
            (!products[x][y].is_subset(&ideals[x].intersection(&ideals[y])))
                .then(|| format!("I = {}, J = {}", ideals[x].describe(t), ideals[y].describe(t)))
        })),
    );
    r.check_none(
        "ideals.radical-of-product",
        format!("rad(IJ) = rad(I) meet rad(J) for all {} pairs", n * n),
        first_failure(pairs().map(|(x, y)| {
            (radical(t, &products[x][y]) != radicals[x].intersection(&radicals[y]))
                .then(|| format!("I = {}, J = {}", ideals[x].describe(t), ideals[y].describe(t)))
        })),
    );
    r.check_none(
        "ideals.prime-characterization",
        "the generalized-product test agrees with IJ in P implies I in P or J in P",
        first_failure(ideals.iter().map(|p| {
            let by_definition = p.is_proper(t)
                && pairs()
                    .all(|(x, y)| !products[x][y].is_subset(p) || ideals[x].is_subset(p) || ideals[y].is_subset(p));
            (is_prime(t, p).is_ok() != by_definition).then(|| format!("P = {}", p.describe(t)))
        })),
    );

    let elements: Vec<Element> = t.elements().collect();
    r.check_none(
        "ideals.principal-products",
        format!("<a><b> is generated by the generalized products of a and b, for all {} pairs", elements.len().pow(2)),
        first_failure(elements.iter().flat_map(|&x| elements.iter().map(move |&y| (x, y))).map(|(x, y)| {
            let gens: Vec<Element> = generalized_product_sets(t, x, y)
                .iter()
                .enumerate()
                .flat_map(|(l, s)| s.iter().map(move |v| (l, v)))
                .collect();
            let lhs = ideal_product(t, &principal_ideal(t, x), &principal_ideal(t, y));
            (lhs != generate_ideal(t, &gens))
                .then(|| format!("a = {}, b = {}", t.element_label(x.0, x.1), t.element_label(y.0, y.1)))
        })),
    );
    r
}

pub fn spectrum_reports(a: &Analysis) -> Vec<Report> {
    let t = &*a.functor;
    let mut oracle = Report::new(format!("primes {}", t.name()));
    let full = primes_by_full_enumeration(t);
    oracle.check(
        "primes.tuple-filter-oracle",
        full == a.spectrum.primes(),
        format!("{} primes among radical ideals, {} by filtering every ideal", a.spectrum.primes().len(), full.len()),
        || format!("radical route {:?}, full route {:?}", describe_all(t, a.spectrum.primes()), describe_all(t, &full)),
    );

    let mut geometry = Report::new(format!("geometry {}", t.name()));
    let ideals = enumerate_ideals(t);
    let mut immersion = None;
    for i in &ideals {
        match closed_immersion(a, i) {
            Ok(rep) => {
                if let Some(c) = rep.failures().next() {
                    immersion =
                        Some(format!("I = {}: {} ({})", i.describe(t), c.name, c.witness.clone().unwrap_or_default()));
                    break;
                }
            }
            Err(e) => {
                immersion = Some(format!("I = {}: {e}", i.describe(t)));
                break;
            }
        }
    }
    geometry.check_none(
        "geometry.closed-immersions",
        format!("Spec(T/I) maps onto V(I) and RadId(T/I) onto the up-set of rad(I), for all {} ideals", ideals.len()),
        immersion,
    );
    match reduction_invariance(a) {
        Ok(rep) => geometry.extend(rep),
        Err(e) => geometry.check_none("reduction.computed", "the reduction morphism exists", Some(e.to_string())),
    }
    match crt_connectedness(a) {
        Ok(c) => geometry.extend(c.report),
        Err(e) => geometry.check_none("crt.computed", "the connectedness data can be computed", Some(e.to_string())),
    }

    vec![verify_points_primes(a), verify_spatial_coherent_spectral(a).0, oracle, geometry]
}

fn describe_all(t: &TambaraFunctor, ideals: &[TambaraIdeal]) -> Vec<String> {
    ideals.iter().map(|i| i.describe(t)).collect()
}

fn functor_job(t: &Arc<TambaraFunctor>, slug: &str, plan: &Plan) -> (JobResult, Vec<Artifact>) {
    let mut reports = Vec::new();
    if plan.axioms {
        reports.push(ReportDoc::from(&check_axioms(t)));
    }
    let needs_analysis = plan.ideals || plan.frame || plan.spectrum || plan.frame_artifacts || plan.spectrum_artifacts;
    let analysis = needs_analysis.then(|| Analysis::new(t.clone()));
    let mut artifacts = Vec::new();
    if let Some(a) = &analysis {
        if plan.ideals {
            reports.push(ReportDoc::from(&ideal_report(a)));
        }
        if plan.frame {
            reports.push(ReportDoc::from(&verify_frame(a)));
        }
        if plan.spectrum {
            reports.extend(spectrum_reports(a).iter().map(ReportDoc::from));
        }
        if plan.frame_artifacts {
            let f = FrameArtifact::new(a);
            artifacts.push(Artifact { path: format!("{slug}.frame.dot"), content: f.to_dot() });
            artifacts.push(Artifact { path: format!("{slug}.frame.json"), content: to_canonical_json(&f) });
        }
        if plan.spectrum_artifacts {
            artifacts.push(Artifact {
                path: format!("{slug}.spectrum.json"),
                content: to_canonical_json(&SpectrumArtifact::new(a)),
            });
        }
    }
    if plan.ideal_artifacts {
        artifacts.push(Artifact {
            path: format!("{slug}.ideals.json"),
            content: to_canonical_json(&IdealsArtifact::new(t)),
        });
    }
    (JobResult::new(t.name().to_string(), reports), artifacts)
}

fn morphism_job(name: &str, m: &TambaraMorphism) -> JobResult {
    let (src, dst) = (Analysis::new(m.source().clone()), Analysis::new(m.target().clone()));
    let map = spectral_map(m, &src, &dst);
    JobResult::new(format!("map {name}"), vec![ReportDoc::from(&map.report)])
}

/// Runs `plan` over `scope` on `threads` worker threads. Results are merged
/// in scope order, so the output does not depend on scheduling.
pub fn execute(command: &str, plan: &Plan, scope: &Scope, threads: usize) -> Result<Run, RunError> {
    if plan.functoriality && !plan.per_functor() && scope.morphisms.is_empty() {
        return Err(RunError::NoMorphisms);
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build().expect("thread pool");
    let (functor_results, morphism_results) = pool.install(|| {
        let names = slugs(&scope.functors);
        let f: Vec<(JobResult, Vec<Artifact>)> = if plan.per_functor() || plan.ideal_artifacts || plan.frame_artifacts {
            scope.functors.par_iter().zip(names.par_iter()).map(|(t, s)| functor_job(t, s, plan)).collect()
        } else {
            Vec::new()
        };
        let m: Vec<JobResult> = if plan.functoriality {
            scope.morphisms.par_iter().map(|(n, m)| morphism_job(n, m)).collect()
        } else {
            Vec::new()
        };
        (f, m)
    });
    let mut jobs = Vec::new();
    let mut artifacts = Vec::new();
    for (j, a) in functor_results {
        jobs.push(j);
        artifacts.extend(a);
    }
    jobs.extend(morphism_results);
    let report = RunReport::new(command.to_string(), jobs, &artifacts);
    Ok(Run { report, artifacts })
}

/// Runs every job of a workspace in order and merges the results; an
/// artifact written by several jobs is kept once.
pub fn execute_workspace(ws: &Workspace, threads: usize) -> Result<Run, RunError> {
    let mut jobs = Vec::new();
    let mut artifacts: Vec<Artifact> = Vec::new();
    for spec in ws.jobs() {
        let run = execute_job(ws, spec, threads)?;
        jobs.extend(run.report.jobs);
        for a in run.artifacts {
            if !artifacts.iter().any(|b| b.path == a.path) {
                artifacts.push(a);
            }
        }
    }
    let report = RunReport::new("run".to_string(), jobs, &artifacts);
    Ok(Run { report, artifacts })
}

pub fn job_command(spec: &JobSpec) -> String {
    let mut parts = vec![spec.verb.clone()];
    parts.extend(spec.suite.clone());
    if let Some(f) = &spec.functor {
        parts.push(format!("--functor {f}"));
    }
    if let Some(m) = &spec.morphism {
        parts.push(format!("--morphism {m}"));
    }
    parts.join(" ")
}

fn execute_job(ws: &Workspace, spec: &JobSpec, threads: usize) -> Result<Run, RunError> {
    let plan = Plan::for_verb(&spec.verb, spec.suite.as_deref())?;
    let mut scope = Scope::from_workspace(ws);
    if let Some(f) = &spec.functor {
        scope = scope.with_functor(f)?;
    }
    if let Some(m) = &spec.morphism {
        scope = scope.with_morphism(m)?;
    }
    execute(&job_command(spec), &plan, &scope, threads)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slugs_are_unique_file_stems() {
        let t = fixtures::const_functor(6, "C2");
        let s = slugs(&[t.clone(), t]);
        assert_eq!(s, vec!["const_Z_6_C2".to_string(), "const_Z_6_C2-2".to_string()]);
    }

    #[test]
    fn suite_names_round_trip() {
        for name in SUITES {
            assert_eq!(name.parse::<Suite>().unwrap().to_string(), name);
        }
        assert!(matches!("nope".parse::<Suite>(), Err(RunError::UnknownSuite(_))));
    }
}
