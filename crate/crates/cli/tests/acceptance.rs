//! The acceptance criteria, each run as stated, one result line apiece.
//!
//! Runs without the libtest harness so the lines always reach stdout.

use std::collections::BTreeSet;
use std::panic;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tambara::fixtures;
use tambara::ideal::{
    enumerate_ideals, enumerate_radical_ideals, generalized_product_sets, generate_ideal, ideal_product, is_prime,
    nilradical, preimage_ideal, principal_ideal, radical, Element, PowerChainRadical,
};
use tambara::spectrum::{
    closed_immersion, crt_connectedness, primes_by_full_enumeration, radical_generators, reduction_invariance,
    spectral_map, verify_points_primes, verify_spatial_coherent_spectral,
};
use tambara::tambara::{check_axioms, quotient_functor, AxiomStatus, Origin};
use tambara::{Analysis, ElemSet, FiniteTopSpace, PointSet, TambaraFunctor, TambaraIdeal};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Ideals of `Z/n` by scanning every subset of residues.
fn zmod_ideals(n: usize) -> Vec<BTreeSet<usize>> {
    (0u64..1 << n)
        .map(|mask| (0..n).filter(|&x| mask >> x & 1 == 1).collect::<BTreeSet<usize>>())
        .filter(|s| {
            s.contains(&0)
                && s.iter().all(|&a| (0..n).all(|b| s.contains(&((a * b) % n))))
                && s.iter().all(|&a| s.iter().all(|&b| s.contains(&((a + b) % n))))
        })
        .collect()
}

fn zmod_primes(n: usize) -> Vec<BTreeSet<usize>> {
    zmod_ideals(n)
        .into_iter()
        .filter(|p| {
            !p.contains(&1)
                && (0..n).all(|a| (0..n).all(|b| !p.contains(&(a * b % n)) || p.contains(&a) || p.contains(&b)))
        })
        .collect()
}

/// `{x : x^k in I for some k}`.
fn zmod_radical(n: usize, i: &BTreeSet<usize>) -> BTreeSet<usize> {
    (0..n).filter(|&x| (1..=n).any(|k| i.contains(&(0..k).fold(1 % n, |acc, _| acc * x % n)))).collect()
}

/// The additive closure of all products.
fn zmod_product(n: usize, i: &BTreeSet<usize>, j: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut s: BTreeSet<usize> = i.iter().flat_map(|&a| j.iter().map(move |&b| a * b % n)).collect();
    loop {
        let next: BTreeSet<usize> =
            s.iter().flat_map(|&a| s.iter().map(move |&b| (a + b) % n)).chain(s.iter().copied()).collect();
        if next == s {
            return s;
        }
        s = next;
    }
}

fn level0(i: &TambaraIdeal) -> BTreeSet<usize> {
    i.level(0).iter().collect()
}

fn ring_oracle() -> Outcome {
    for n in [4, 6, 12] {
        let t = fixtures::const_functor(n, "1");
        let a = Analysis::new(t.clone());
        let f = a.frame.frame();
        let meet_primes: BTreeSet<BTreeSet<usize>> =
            (0..f.size()).filter(|&q| f.is_meet_prime(q)).map(|q| level0(a.frame.ideal(q))).collect();
        let oracle: BTreeSet<BTreeSet<usize>> = zmod_primes(n).into_iter().collect();
        ensure(meet_primes == oracle, || format!("Z/{n}: meet-primes {meet_primes:?}, ring primes {oracle:?}"))?;

        let ideals = zmod_ideals(n);
        for i in &ideals {
            for j in &ideals {
                let lhs = zmod_radical(n, &zmod_product(n, i, j));
                let rhs: BTreeSet<usize> = zmod_radical(n, i).intersection(&zmod_radical(n, j)).copied().collect();
                ensure(lhs == rhs, || format!("Z/{n}: rad(IJ) != rad(I) meet rad(J) for I={i:?}, J={j:?}"))?;
            }
        }
        let tambara_ideals = enumerate_ideals(&t);
        ensure(tambara_ideals.len() == ideals.len(), || {
            format!("Z/{n}: {} ideals vs {}", tambara_ideals.len(), ideals.len())
        })?;
        for i in &tambara_ideals {
            for j in &tambara_ideals {
                ensure(radical(&t, &ideal_product(&t, i, j)) == radical(&t, i).intersection(&radical(&t, j)), || {
                    format!("Z/{n}: engine product law fails at {}, {}", i.describe(&t), j.describe(&t))
                })?;
            }
        }
        ensure(f.check_spatial().0, || format!("Z/{n}: separation scan failed"))?;
        let sep = verify_spatial_coherent_spectral(&a).0;
        ensure(sep.get("spatial.separation").is_some_and(|c| c.passed), || {
            format!("Z/{n}: spatial.separation failed")
        })?;
    }
    let p6 = Analysis::new(fixtures::const_functor(6, "1")).spectrum.primes().len();
    let p4 = Analysis::new(fixtures::const_functor(4, "1")).spectrum.primes().len();
    ensure(p6 == 2 && p4 == 1, || format!("|Spec(Z/6)| = {p6}, |Spec(Z/4)| = {p4}"))?;
    Ok("Z/4, Z/6, Z/12 agree with subset-scan ring primes; |Spec(Z/6)| = 2, |Spec(Z/4)| = 1".into())
}

fn axioms() -> Outcome {
    for t in fixtures::functors() {
        let r = check_axioms(&t);
        for axiom in ["ring-maps", "T1", "T2", "T3", "T4", "T5"] {
            let c = r.check(axiom).ok_or_else(|| format!("{}: no {axiom} check", t.name()))?;
            ensure(c.status == AxiomStatus::Pass && c.instances > 0, || {
                format!("{} {axiom}: {} {:?}", t.name(), c.status, c.witness)
            })?;
        }
    }
    let c2 = fixtures::c2_functors();
    for t in &c2 {
        let (e, top) = (t.level(0), t.level(1));
        for a in 0..e.size() {
            for b in 0..e.size() {
                let lhs = t.nm(1, 0, e.add(a, b));
                let rhs = top.add(top.add(t.nm(1, 0, a), t.nm(1, 0, b)), t.tr(1, 0, e.mul(a, t.conj(1, 0, b))));
                ensure(lhs == rhs, || format!("{}: N(a+b) reciprocity fails at a={a}, b={b}", t.name()))?;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x7a3b);
    let mut caught = 0;
    let mut tried = Vec::new();
    while tried.len() < 20 {
        let t = &c2[rng.gen_range(0..c2.len())];
        let size = t.level(1).size();
        if size < 2 {
            continue;
        }
        let norm = rng.gen_bool(0.5);
        let mut data = t.data();
        let table = if norm { data.nm.get_mut(&(1, 0)) } else { data.tr.get_mut(&(1, 0)) }.expect("C2 has e <= C2");
        let slot = rng.gen_range(0..table.len());
        let old = table[slot];
        table[slot] = (old + rng.gen_range(1..size)) % size;
        let what = format!("{} {}[{slot}] {old}->{}", t.name(), if norm { "nm" } else { "tr" }, table[slot]);
        let bad = TambaraFunctor::from_data(data, Origin::Loaded).map_err(|e| format!("{what}: {e}"))?;
        if !check_axioms(&bad).passed() {
            caught += 1;
        }
        tried.push(what);
    }
    ensure(caught == 20, || format!("only {caught} of 20 mutations caught: {tried:?}"))?;
    Ok(format!(
        "{} fixtures pass exhaustively; reciprocity holds on {} C2 fixtures; 20/20 mutations caught",
        fixtures::functors().len(),
        c2.len()
    ))
}

fn radical_agreement() -> Outcome {
    let mut count = 0;
    for t in fixtures::c2_functors() {
        let chain = PowerChainRadical::new(&t);
        let primes = primes_by_full_enumeration(&t);
        for i in enumerate_ideals(&t) {
            let levelwise: Vec<ElemSet> =
                (0..t.subgroup_count()).map(|h| t.level(h).radical_set(&i.level(h))).collect();
            let by_chain = chain.radical(&i);
            let by_primes =
                primes.iter().filter(|p| i.is_subset(p)).fold(TambaraIdeal::whole(&t), |acc, p| acc.intersection(p));
            ensure(radical(&t, &i).levels() == levelwise.as_slice(), || {
                format!("{}: engine radical is not levelwise at {}", t.name(), i.describe(&t))
            })?;
            ensure(by_chain.levels() == levelwise.as_slice() && by_primes.levels() == levelwise.as_slice(), || {
                format!(
                    "{} I = {}: levelwise {:?}, power chain {}, primes {}",
                    t.name(),
                    i.describe(&t),
                    levelwise,
                    by_chain.describe(&t),
                    by_primes.describe(&t)
                )
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} ideals across the C2 fixtures"))
}

fn product_laws() -> Outcome {
    let mut pairs = 0;
    let mut element_pairs = 0;
    for t in [fixtures::const_functor(6, "C2"), fixtures::burnside(3)] {
        let ideals = enumerate_ideals(&t);
        for i in &ideals {
            for j in &ideals {
                let ij = ideal_product(&t, i, j);
                ensure(radical(&t, &ij) == radical(&t, i).intersection(&radical(&t, j)), || {
                    format!("{}: rad(IJ) != rad(I) meet rad(J) at {}, {}", t.name(), i.describe(&t), j.describe(&t))
                })?;
                ensure(ij.is_subset(&i.intersection(j)), || format!("{}: IJ not in I meet J", t.name()))?;
                pairs += 1;
            }
        }
        let elements: Vec<Element> = t.elements().collect();
        for &a in &elements {
            for &b in &elements {
                let gens: Vec<Element> = generalized_product_sets(&t, a, b)
                    .iter()
                    .enumerate()
                    .flat_map(|(l, s)| s.iter().map(move |v| (l, v)).collect::<Vec<_>>())
                    .collect();
                let lhs = ideal_product(&t, &principal_ideal(&t, a), &principal_ideal(&t, b));
                ensure(lhs == generate_ideal(&t, &gens), || {
                    format!("{}: <a><b> mismatch at a={a:?}, b={b:?}", t.name())
                })?;
                element_pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} ideal pairs and {element_pairs} element pairs"))
}

fn opens_as_set(space: &FiniteTopSpace) -> BTreeSet<PointSet> {
    space.opens().iter().copied().collect()
}

fn points_are_primes() -> Outcome {
    for t in fixtures::functors() {
        let a = Analysis::new(t.clone());
        let f = a.frame.frame();
        let meet: Vec<TambaraIdeal> =
            (0..f.size()).filter(|&q| f.is_meet_prime(q)).map(|q| a.frame.ideal(q).clone()).collect();
        let filtered: Vec<TambaraIdeal> =
            enumerate_radical_ideals(&t).into_iter().filter(|p| is_prime(&t, p).is_ok()).collect();
        let oracle = primes_by_full_enumeration(&t);
        ensure(meet == filtered && filtered == oracle, || {
            format!(
                "{}: meet-primes {}, is_prime filter {}, tuple filter {}",
                t.name(),
                meet.len(),
                filtered.len(),
                oracle.len()
            )
        })?;

        let u: BTreeSet<PointSet> = a.frame.ideals().iter().map(|i| a.spectrum.open_of(i)).collect();
        let basis: Vec<PointSet> = a.spectrum.basis().iter().map(|b| b.points).collect();
        let d =
            FiniteTopSpace::generated_by(a.spectrum.space().points().to_vec(), &basis).map_err(|e| e.to_string())?;
        ensure(u == opens_as_set(&d), || format!("{}: U(I) topology differs from the D_H(x) topology", t.name()))?;
        ensure(verify_points_primes(&a).passed(), || format!("{}: points report failed", t.name()))?;
    }
    let z6 = Analysis::new(fixtures::const_functor(6, "C2"));
    let discrete: BTreeSet<PointSet> = (0..4u64).map(PointSet).collect();
    ensure(z6.frame.len() == 4 && z6.spectrum.primes().len() == 2, || "const(Z/6,C2) counts".into())?;
    ensure(opens_as_set(z6.spectrum.space()) == discrete, || "const(Z/6,C2) is not discrete".into())?;
    let f2 = fixtures::const_functor(2, "C2");
    ensure(primes_by_full_enumeration(&f2).len() == 1, || "const(F2,C2) prime count".into())?;
    let z4 = fixtures::const_functor(4, "C2");
    let z4a = Analysis::new(z4.clone());
    ensure(primes_by_full_enumeration(&z4).len() == 1, || "const(Z/4,C2) prime count".into())?;
    ensure(is_prime(&z4, &nilradical(&z4)).is_ok(), || "const(Z/4,C2) nilradical not prime".into())?;
    ensure(z4a.spectrum.space().is_irreducible(), || "const(Z/4,C2) spectrum reducible".into())?;
    Ok("all fixtures; counts 4/2/discrete, 1, 1 with prime nilradical and irreducible spectrum".into())
}

fn spectrality() -> Outcome {
    let mut certified = 0;
    for t in fixtures::functors() {
        let a = Analysis::new(t.clone());
        ensure(a.frame.frame().check_spatial().0, || format!("{}: separation scan", t.name()))?;
        for i in a.frame.ideals() {
            let gens = radical_generators(&t, i);
            ensure(radical(&t, &generate_ideal(&t, &gens)) == *i, || {
                format!("{}: generators {gens:?} do not certify {}", t.name(), i.describe(&t))
            })?;
            certified += 1;
        }
        let s = a.spectrum.space().check_spectral_space();
        ensure(s.t0 && s.quasi_compact && s.sober && s.basis_closed_under_intersection, || {
            format!("{}: {s:?}", t.name())
        })?;
        let (r, _) = verify_spatial_coherent_spectral(&a);
        ensure(r.passed(), || format!("{}: {:?}", t.name(), r.failures().map(|c| &c.name).collect::<Vec<_>>()))?;
    }
    Ok(format!("{certified} radical ideals certified by exhibited generators"))
}

fn functoriality() -> Outcome {
    let wanted = ["reduction const(Z/4,C2)", "mod 2", "projection", "quotient"];
    let mut checked = Vec::new();
    for (name, m) in fixtures::morphisms() {
        if !wanted.iter().any(|w| name.contains(w)) {
            continue;
        }
        let (src, dst) = (Analysis::new(m.source().clone()), Analysis::new(m.target().clone()));
        let map = spectral_map(&m, &src, &dst);
        let (ff, tf) = (src.frame.frame(), dst.frame.frame());
        let phi = &map.frame_map;
        ensure(phi.len() == ff.size(), || format!("{name}: frame map undefined"))?;
        ensure(phi[ff.top()] == tf.top(), || format!("{name}: top not preserved"))?;
        ensure(ff.size() <= 16, || format!("{name}: frame too large for the subset scan"))?;
        for mask in 0u32..1 << ff.size() {
            let s: Vec<usize> = (0..ff.size()).filter(|&k| mask >> k & 1 == 1).collect();
            ensure(phi[ff.join_all(s.iter().copied())] == tf.join_all(s.iter().map(|&k| phi[k])), || {
                format!("{name}: join of {s:?} not preserved")
            })?;
        }
        for x in 0..ff.size() {
            for y in 0..ff.size() {
                ensure(phi[ff.meet(x, y)] == tf.meet(phi[x], phi[y]), || {
                    format!("{name}: meet of {x}, {y} not preserved")
                })?;
            }
        }
        for (j, q) in dst.spectrum.primes().iter().enumerate() {
            ensure(src.spectrum.primes()[map.point_map[j]] == preimage_ideal(&m, q), || {
                format!("{name}: point {j} is not the preimage")
            })?;
        }
        for o in src.spectrum.space().opens() {
            let pre = PointSet(
                (0..map.point_map.len()).filter(|&j| o.contains(map.point_map[j])).fold(0, |acc, j| acc | 1 << j),
            );
            ensure(dst.spectrum.space().is_open(pre), || format!("{name}: preimage of a compact open is not open"))?;
        }
        ensure(map.report.passed(), || format!("{name}: {:?}", map.report.failures().collect::<Vec<_>>()))?;
        checked.push(name);
    }
    ensure(checked.len() == 7, || format!("expected 7 morphisms, found {checked:?}"))?;
    Ok(format!("{} morphisms: {}", checked.len(), checked.join("; ")))
}

fn geometry() -> Outcome {
    let z6 = fixtures::const_functor(6, "C2");
    let a = Analysis::new(z6.clone());
    let ideals = enumerate_ideals(&z6);
    for i in &ideals {
        let r = closed_immersion(&a, i).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("immersion at {}: {:?}", i.describe(&z6), r.failures().collect::<Vec<_>>()))?;
        let (q, proj) = quotient_functor(&z6, i.levels()).map_err(|e| e.to_string())?;
        let qa = Analysis::new(q);
        let pulled: BTreeSet<_> =
            qa.spectrum.primes().iter().map(|p| preimage_ideal(&proj, p).canonical_key()).collect();
        let v: BTreeSet<_> = a.spectrum.primes().iter().filter(|p| i.is_subset(p)).map(|p| p.canonical_key()).collect();
        ensure(pulled == v && qa.spectrum.primes().len() == v.len(), || {
            format!("Spec(T/I) is not V(I) for I = {}", i.describe(&z6))
        })?;
    }
    for t in [fixtures::const_functor(4, "C2"), fixtures::burnside(9)] {
        let ta = Analysis::new(t.clone());
        let r = reduction_invariance(&ta).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("{}: reduction report failed", t.name()))?;
        let m = fixtures::reduction(&t);
        let ra = Analysis::new(m.target().clone());
        let map = spectral_map(&m, &ta, &ra);
        let n = ta.spectrum.primes().len();
        let image: BTreeSet<usize> = map.point_map.iter().copied().collect();
        ensure(map.point_map.len() == n && image.len() == n, || {
            format!("{}: reduction is not a bijection on points", t.name())
        })?;
        let pulled: BTreeSet<PointSet> = ta
            .spectrum
            .space()
            .opens()
            .iter()
            .map(|o| PointSet((0..n).filter(|&j| o.contains(map.point_map[j])).fold(0, |acc, j| acc | 1 << j)))
            .collect();
        ensure(pulled == opens_as_set(ra.spectrum.space()), || {
            format!("{}: reduction is not a homeomorphism", t.name())
        })?;
    }
    let c = crt_connectedness(&a).map_err(|e| e.to_string())?;
    let shapes: BTreeSet<BTreeSet<Vec<usize>>> =
        c.decompositions.iter().map(|d| [d.2.clone(), d.3.clone()].into_iter().collect()).collect();
    let expected: BTreeSet<BTreeSet<Vec<usize>>> =
        [[vec![2, 2], vec![3, 3]].into_iter().collect()].into_iter().collect();
    ensure(shapes == expected && c.clopen, || {
        format!("const(Z/6,C2) decompositions {:?}, clopen {}", c.decompositions, c.clopen)
    })?;
    let (prod, _, _) = fixtures::f2_times_f3();
    let sizes = |t: &Arc<TambaraFunctor>| t.levels().iter().map(|r| r.size()).collect::<Vec<_>>();
    ensure(
        sizes(&fixtures::const_functor(2, "C2")) == vec![2, 2]
            && sizes(&fixtures::const_functor(3, "C2")) == vec![3, 3]
            && sizes(&prod) == vec![6, 6],
        || "reference shapes".into(),
    )?;
    for t in fixtures::functors() {
        let c = crt_connectedness(&Analysis::new(t.clone())).map_err(|e| e.to_string())?;
        let four = [c.clopen, c.complemented, c.coprime_pair, c.product_decomposition];
        ensure(four.iter().all(|&b| b == four[0]) && c.irreducible == c.nilradical_prime && c.report.passed(), || {
            format!(
                "{}: four-way {four:?}, irreducible {}, nilradical prime {}",
                t.name(),
                c.irreducible,
                c.nilradical_prime
            )
        })?;
    }
    Ok(format!(
        "{} immersions; 2 reductions; CRT shapes (2,2)x(3,3); connectedness consistent on all fixtures",
        ideals.len()
    ))
}

fn files(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut out: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir)
        .map(|rd| {
            rd.filter_map(|e| e.ok())
                .map(|e| (e.file_name().to_string_lossy().into_owned(), std::fs::read(e.path()).unwrap_or_default()))
                .collect()
        })
        .unwrap_or_default();
    out.sort();
    out
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut runs = Vec::new();
    for k in 0..2 {
        let out = dir.path().join(format!("run{k}"));
        let o = Command::new(env!("CARGO_BIN_EXE_tambara"))
            .args(["suite", "full", "--format", "json", "--jobs", "4", "--out"])
            .arg(&out)
            .output()
            .map_err(|e| e.to_string())?;
        ensure(o.status.success(), || {
            format!("run {k} exited with {:?}: {}", o.status.code(), String::from_utf8_lossy(&o.stderr))
        })?;
        runs.push((o.stdout, files(&out)));
    }
    ensure(!runs[0].0.is_empty() && runs[0].1.len() > 1, || "no output".into())?;
    ensure(runs[0] == runs[1], || "the two runs differ".into())?;
    Ok(format!("report and {} files byte-identical", runs[0].1.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("ring oracle", ring_oracle),
        ("axioms", axioms),
        ("radical agreement", radical_agreement),
        ("product laws", product_laws),
        ("points = primes", points_are_primes),
        ("spatial, coherent, spectral", spectrality),
        ("functoriality", functoriality),
        ("geometry", geometry),
        ("determinism", determinism),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(f).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("acceptance {} {name}: PASS ({detail})", k + 1),
            Err(why) => {
                failed += 1;
                println!("acceptance {} {name}: FAIL ({why})", k + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
