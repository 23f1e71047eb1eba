//! Exhaustive verification of the Tambara functor axioms.

use std::fmt;

use super::functor::{Origin, TambaraFunctor};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxiomStatus {
    Pass,
    Fail,
    /// Nothing to check (e.g. sum reciprocity over the trivial group).
    Vacuous,
    /// Not checked, but holds for the built-in construction by design.
    Assumed,
    /// Not checked and not known to hold.
    Unverified,
}

impl AxiomStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            AxiomStatus::Pass => "pass",
            AxiomStatus::Fail => "fail",
            AxiomStatus::Vacuous => "vacuous",
            AxiomStatus::Assumed => "assumed",
            AxiomStatus::Unverified => "unverified",
        }
    }
}

impl fmt::Display for AxiomStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: String,
    pub description: String,
    pub status: AxiomStatus,
    /// Number of instances evaluated.
    pub instances: usize,
    /// First failing instance, if any.
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub functor: String,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    /// No check failed. `unverified` does not count as a failure.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != AxiomStatus::Fail)
    }

    pub fn check(&self, axiom: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.status == AxiomStatus::Fail)
    }
}

struct Tally {
    instances: usize,
    witness: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { instances: 0, witness: None }
    }

    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    fn done(&self) -> bool {
        self.witness.is_some()
    }

    fn finish(self, axiom: &str, description: &str) -> AxiomCheck {
        AxiomCheck {
            axiom: axiom.to_string(),
            description: description.to_string(),
            status: if self.witness.is_some() { AxiomStatus::Fail } else { AxiomStatus::Pass },
            instances: self.instances,
            witness: self.witness,
        }
    }
}

/// Checks every axiom on every instance, stopping each axiom at its first
/// counterexample.
pub fn check_axioms(t: &TambaraFunctor) -> AxiomReport {
    let checks = vec![
        ring_maps(t).finish(
            "ring-maps",
            "restriction and conjugation are ring maps, transfer is additive, norm is multiplicative and unital",
        ),
        t1(t).finish("T1", "identities and composites of restrictions, transfers, norms and conjugations"),
        t2(t).finish("T2", "conjugation commutes with restriction, transfer and norm"),
        inner(t).finish("inner-conjugation", "conjugation by an element of H is the identity on level H"),
        t3(t).finish("T3", "additive double coset formula for restriction of a transfer"),
        t4(t).finish("T4", "multiplicative double coset formula for restriction of a norm"),
        t5(t).finish("T5", "Frobenius reciprocity t(r(x) y) = x t(y)"),
        t6(t),
    ];
    AxiomReport { functor: t.name().to_string(), checks }
}

fn ring_maps(t: &TambaraFunctor) -> Tally {
    let mut tally = Tally::new();
    for (h, k) in t.inclusions() {
        let (rh, rk) = (t.level(h), t.level(k));
        tally.check(t.res(h, k, rh.one()) == rk.one(), || format!("res {h}->{k} does not preserve 1"));
        tally.check(t.nm(h, k, rk.one()) == rh.one(), || format!("nm {k}->{h} does not preserve 1"));
        for a in 0..rh.size() {
            for b in 0..rh.size() {
                let (ra, rb) = (t.res(h, k, a), t.res(h, k, b));
                tally.check(t.res(h, k, rh.add(a, b)) == rk.add(ra, rb), || {
                    format!("res {h}->{k} not additive at ({}, {})", rh.label(a), rh.label(b))
                });
                tally.check(t.res(h, k, rh.mul(a, b)) == rk.mul(ra, rb), || {
                    format!("res {h}->{k} not multiplicative at ({}, {})", rh.label(a), rh.label(b))
                });
            }
            if tally.done() {
                return tally;
            }
        }
        for a in 0..rk.size() {
            for b in 0..rk.size() {
                tally.check(t.tr(h, k, rk.add(a, b)) == rh.add(t.tr(h, k, a), t.tr(h, k, b)), || {
                    format!("tr {k}->{h} not additive at ({}, {})", rk.label(a), rk.label(b))
                });
                tally.check(t.nm(h, k, rk.mul(a, b)) == rh.mul(t.nm(h, k, a), t.nm(h, k, b)), || {
                    format!("nm {k}->{h} not multiplicative at ({}, {})", rk.label(a), rk.label(b))
                });
            }
            if tally.done() {
                return tally;
            }
        }
    }
    let g = t.group();
    for x in 0..g.order() {
        for h in 0..t.subgroup_count() {
            let src = t.level(h);
            let dst = t.level(g.conjugate_subgroup(h, x));
            tally.check(t.conj(x, h, src.one()) == dst.one(), || {
                format!("conj by {} on {h} does not preserve 1", g.label(x))
            });
            for a in 0..src.size() {
                for b in 0..src.size() {
                    let (ca, cb) = (t.conj(x, h, a), t.conj(x, h, b));
                    tally.check(
                        t.conj(x, h, src.add(a, b)) == dst.add(ca, cb)
                            && t.conj(x, h, src.mul(a, b)) == dst.mul(ca, cb),
                        || {
                            format!(
                                "conj by {} on {h} not a ring map at ({}, {})",
                                g.label(x),
                                src.label(a),
                                src.label(b)
                            )
                        },
                    );
                }
            }
            if tally.done() {
                return tally;
            }
        }
    }
    tally
}

fn t1(t: &TambaraFunctor) -> Tally {
    let mut tally = Tally::new();
    let g = t.group();
    let n = t.subgroup_count();
    for h in 0..n {
        for x in 0..t.level(h).size() {
            let ok = t.res(h, h, x) == x && t.tr(h, h, x) == x && t.nm(h, h, x) == x && t.conj(0, h, x) == x;
            tally.check(ok, || format!("identity maps fail on level {h} at {}", t.level(h).label(x)));
        }
    }
    for (h, k) in t.inclusions() {
        for l in (0..n).filter(|&l| g.is_subgroup_of(l, k)) {
            for x in 0..t.level(h).size() {
                tally.check(t.res(k, l, t.res(h, k, x)) == t.res(h, l, x), || {
                    format!("res {k}->{l} after res {h}->{k} differs from res {h}->{l} at {}", t.level(h).label(x))
                });
            }
            for x in 0..t.level(l).size() {
                tally.check(t.tr(h, k, t.tr(k, l, x)) == t.tr(h, l, x), || {
                    format!("tr {k}->{h} after tr {l}->{k} differs from tr {l}->{h} at {}", t.level(l).label(x))
                });
                tally.check(t.nm(h, k, t.nm(k, l, x)) == t.nm(h, l, x), || {
                    format!("nm {k}->{h} after nm {l}->{k} differs from nm {l}->{h} at {}", t.level(l).label(x))
                });
            }
        }
        if tally.done() {
            return tally;
        }
    }
    for a in 0..g.order() {
        for b in 0..g.order() {
            let ab = g.mul(a, b);
            for h in 0..n {
                let bh = g.conjugate_subgroup(h, b);
                for x in 0..t.level(h).size() {
                    tally.check(t.conj(a, bh, t.conj(b, h, x)) == t.conj(ab, h, x), || {
                        format!(
                            "conj by {} after conj by {} differs from conj by {} on level {h} at {}",
                            g.label(a),
                            g.label(b),
                            g.label(ab),
                            t.level(h).label(x)
                        )
                    });
                }
            }
        }
    }
    tally
}

fn t2(t: &TambaraFunctor) -> Tally {
    let mut tally = Tally::new();
    let g = t.group();
    for (h, k) in t.inclusions() {
        for e in 0..g.order() {
            let (eh, ek) = (g.conjugate_subgroup(h, e), g.conjugate_subgroup(k, e));
            for x in 0..t.level(h).size() {
                tally.check(t.conj(e, k, t.res(h, k, x)) == t.res(eh, ek, t.conj(e, h, x)), || {
                    format!("conj by {} does not commute with res {h}->{k} at {}", g.label(e), t.level(h).label(x))
                });
            }
            for y in 0..t.level(k).size() {
                tally.check(t.conj(e, h, t.tr(h, k, y)) == t.tr(eh, ek, t.conj(e, k, y)), || {
                    format!("conj by {} does not commute with tr {k}->{h} at {}", g.label(e), t.level(k).label(y))
                });
                tally.check(t.conj(e, h, t.nm(h, k, y)) == t.nm(eh, ek, t.conj(e, k, y)), || {
                    format!("conj by {} does not commute with nm {k}->{h} at {}", g.label(e), t.level(k).label(y))
                });
            }
        }
        if tally.done() {
            return tally;
        }
    }
    tally
}

fn inner(t: &TambaraFunctor) -> Tally {
    let mut tally = Tally::new();
    let g = t.group();
    for h in 0..t.subgroup_count() {
        for &e in g.subgroup(h).elements() {
            for x in 0..t.level(h).size() {
                tally.check(t.conj(e, h, x) == x, || {
                    format!("conj by {} moves {} on level {h}", g.label(e), t.level(h).label(x))
                });
            }
        }
    }
    tally
}

/// The summands of a double coset formula: for each `γ` in `L\K/H`, the
/// subgroup `γHγ^-1` and its intersection with `L`.
fn double_coset_terms(t: &TambaraFunctor, l: usize, k: usize, h: usize) -> Vec<(usize, usize, usize)> {
    let g = t.group();
    g.double_cosets(l, k, h)
        .expect("caller passes L, H <= K")
        .representatives
        .into_iter()
        .map(|gamma| {
            let ch = g.conjugate_subgroup(h, gamma);
            (gamma, ch, g.intersect_subgroups(l, ch))
        })
        .collect()
}

fn t3(t: &TambaraFunctor) -> Tally {
    let mut tally = Tally::new();
    let g = t.group();
    let n = t.subgroup_count();
    for k in 0..n {
        for h in (0..n).filter(|&h| g.is_subgroup_of(h, k)) {
            for l in (0..n).filter(|&l| g.is_subgroup_of(l, k)) {
                let terms = double_coset_terms(t, l, k, h);
                let rl = t.level(l);
                for x in 0..t.level(h).size() {
                    let lhs = t.res(k, l, t.tr(k, h, x));
                    let rhs = terms.iter().fold(rl.zero(), |acc, &(gamma, ch, m)| {
                        rl.add(acc, t.tr(l, m, t.res(ch, m, t.conj(gamma, h, x))))
                    });
                    tally.check(lhs == rhs, || {
                        format!(
                            "r^{k}_{l} t^{k}_{h}({}) = {} but the double coset sum is {}",
                            t.level(h).label(x),
                            rl.label(lhs),
                            rl.label(rhs)
                        )
                    });
                }
                if tally.done() {
                    return tally;
                }
            }
        }
    }
    tally
}

fn t4(t: &TambaraFunctor) -> Tally {
    let mut tally = Tally::new();
    let g = t.group();
    let n = t.subgroup_count();
    for k in 0..n {
        for h in (0..n).filter(|&h| g.is_subgroup_of(h, k)) {
            for l in (0..n).filter(|&l| g.is_subgroup_of(l, k)) {
                let terms = double_coset_terms(t, l, k, h);
                let rl = t.level(l);
                for x in 0..t.level(h).size() {
                    let lhs = t.res(k, l, t.nm(k, h, x));
                    let rhs = terms.iter().fold(rl.one(), |acc, &(gamma, ch, m)| {
                        rl.mul(acc, t.nm(l, m, t.res(ch, m, t.conj(gamma, h, x))))
                    });
                    tally.check(lhs == rhs, || {
                        format!(
                            "r^{k}_{l} N^{k}_{h}({}) = {} but the double coset product is {}",
                            t.level(h).label(x),
                            rl.label(lhs),
                            rl.label(rhs)
                        )
                    });
                }
                if tally.done() {
                    return tally;
                }
            }
        }
    }
    tally
}

fn t5(t: &TambaraFunctor) -> Tally {
    let mut tally = Tally::new();
    for (h, k) in t.inclusions() {
        let (rh, rk) = (t.level(h), t.level(k));
        for x in 0..rh.size() {
            let rx = t.res(h, k, x);
            for y in 0..rk.size() {
                let lhs = t.tr(h, k, rk.mul(rx, y));
                let rhs = rh.mul(x, t.tr(h, k, y));
                tally.check(lhs == rhs, || {
                    format!(
                        "t^{h}_{k}(r({}) * {}) = {} but x t(y) = {}",
                        rh.label(x),
                        rk.label(y),
                        rh.label(lhs),
                        rh.label(rhs)
                    )
                });
            }
        }
        if tally.done() {
            return tally;
        }
    }
    tally
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Orbit representatives of the non-constant functions `G -> {0, 1}`,
/// encoded as bitmasks over group elements, under left translation.
fn free_orbit_representatives(t: &TambaraFunctor) -> Vec<u32> {
    let g = t.group();
    let p = g.order();
    let translate = |mask: u32, e: usize| -> u32 {
        // (e.f)(x) = f(e^-1 x)
        (0..p).filter(|&x| mask >> g.mul(g.inverse(e), x) & 1 == 1).fold(0, |m, x| m | 1 << x)
    };
    let full = (1u32 << p) - 1;
    (1..full).filter(|&mask| (0..p).all(|e| translate(mask, e) >= mask)).collect()
}

/// Sum reciprocity for the norm from the trivial subgroup. Over a group of
/// prime order every non-constant function `G -> {a, b}` has a free orbit,
/// so `N(a + b) = N(a) + N(b) + sum over orbits of t(prod_g c_g(f(g)))`.
fn t6(t: &TambaraFunctor) -> AxiomCheck {
    let axiom = "T6";
    let description = "sum reciprocity N(a + b) = N(a) + N(b) + transfer terms";
    let g = t.group();
    let p = g.order();
    if p == 1 {
        return AxiomCheck {
            axiom: axiom.into(),
            description: description.into(),
            status: AxiomStatus::Vacuous,
            instances: 0,
            witness: None,
        };
    }
    if !is_prime(p) {
        let status = match t.origin() {
            Origin::BuiltIn => AxiomStatus::Assumed,
            Origin::Loaded => AxiomStatus::Unverified,
        };
        return AxiomCheck {
            axiom: axiom.into(),
            description: description.into(),
            status,
            instances: 0,
            witness: None,
        };
    }
    let (e, top) = (g.trivial_subgroup(), g.full_subgroup());
    let (re, rg) = (t.level(e), t.level(top));
    let reps = free_orbit_representatives(t);
    let mut tally = Tally::new();
    for a in 0..re.size() {
        for b in 0..re.size() {
            let lhs = t.nm(top, e, re.add(a, b));
            let mut rhs = rg.add(t.nm(top, e, a), t.nm(top, e, b));
            for &mask in &reps {
                let prod = (0..p).fold(re.one(), |acc, x| {
                    let v = if mask >> x & 1 == 1 { b } else { a };
                    re.mul(acc, t.conj(x, e, v))
                });
                rhs = rg.add(rhs, t.tr(top, e, prod));
            }
            tally.check(lhs == rhs, || {
                format!(
                    "N({} + {}) = {} but the reciprocity sum is {}",
                    re.label(a),
                    re.label(b),
                    rg.label(lhs),
                    rg.label(rhs)
                )
            });
        }
        if tally.done() {
            break;
        }
    }
    tally.finish(axiom, description)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let got: Vec<usize> = (0..20).filter(|&n| is_prime(n)).collect();
        assert_eq!(got, vec![2, 3, 5, 7, 11, 13, 17, 19]);
    }
}
