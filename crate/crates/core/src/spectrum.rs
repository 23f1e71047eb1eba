//! The frame of radical Tambara ideals, the Nakaoka spectrum, and the
//! checks tying them together.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::Result;
use crate::frame::{FiniteFrame, FiniteTopSpace, PointSet};
use crate::ideal::{
    enumerate_ideals, enumerate_radical_ideals, generalized_product_sets, generate_ideal, ideal_sum, is_prime,
    nilradical, preimage_ideal, principal_ideal, radical, radical_pushforward, validate_ideal, Element, TambaraIdeal,
};
use crate::report::Report;
use crate::tambara::{product_functor, quotient_functor, TambaraFunctor, TambaraMorphism};

/// Frames up to this size have their join preservation checked on every
/// subset rather than on pairs.
const SUBSET_JOIN_LIMIT: usize = 16;

/// All radical Tambara ideals in canonical order, ordered by inclusion.
#[derive(Debug, Clone)]
pub struct RadIdFrame {
    ideals: Vec<TambaraIdeal>,
    frame: FiniteFrame,
    index: HashMap<TambaraIdeal, usize>,
}

impl RadIdFrame {
    pub fn ideals(&self) -> &[TambaraIdeal] {
        &self.ideals
    }

    pub fn ideal(&self, a: usize) -> &TambaraIdeal {
        &self.ideals[a]
    }

    pub fn frame(&self) -> &FiniteFrame {
        &self.frame
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub fn index_of(&self, i: &TambaraIdeal) -> Option<usize> {
        self.index.get(i).copied()
    }
}

pub fn build_radid_frame(t: &TambaraFunctor) -> RadIdFrame {
    let ideals = enumerate_radical_ideals(t);
    let labels = ideals.iter().map(|i| i.describe(t)).collect();
    let frame = FiniteFrame::from_order(labels, |a, b| ideals[a].is_subset(&ideals[b]))
        .expect("radical ideals under inclusion form a lattice");
    let index = ideals.iter().cloned().enumerate().map(|(a, i)| (i, a)).collect();
    RadIdFrame { ideals, frame, index }
}

/// A basic open `D_H(x)` of the spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasicOpen {
    pub element: Element,
    pub points: PointSet,
}

#[derive(Debug, Clone)]
pub struct NakaokaSpectrum {
    primes: Vec<TambaraIdeal>,
    space: FiniteTopSpace,
    basis: Vec<BasicOpen>,
}

impl NakaokaSpectrum {
    pub fn primes(&self) -> &[TambaraIdeal] {
        &self.primes
    }

    pub fn space(&self) -> &FiniteTopSpace {
        &self.space
    }

    /// `D_H(x)` for every element, in element order.
    pub fn basis(&self) -> &[BasicOpen] {
        &self.basis
    }

    pub fn point_of(&self, p: &TambaraIdeal) -> Option<usize> {
        self.primes.iter().position(|q| q == p)
    }

    /// `V(I) = { P : I ⊆ P }`.
    pub fn vanishing(&self, i: &TambaraIdeal) -> PointSet {
        self.primes.iter().enumerate().filter(|(_, p)| i.is_subset(p)).map(|(k, _)| k).collect()
    }

    /// `U(I)`, the complement of `V(I)`.
    pub fn open_of(&self, i: &TambaraIdeal) -> PointSet {
        self.vanishing(i).complement(self.primes.len())
    }
}

/// Primes are radical, so they are found among the radical ideals.
pub fn nakaoka_spectrum(t: &TambaraFunctor) -> NakaokaSpectrum {
    spectrum_from_radicals(t, &enumerate_radical_ideals(t))
}

fn spectrum_from_radicals(t: &TambaraFunctor, radicals: &[TambaraIdeal]) -> NakaokaSpectrum {
    let primes: Vec<TambaraIdeal> = radicals.iter().filter(|p| is_prime(t, p).is_ok()).cloned().collect();
    let basis: Vec<BasicOpen> = t
        .elements()
        .map(|(h, x)| BasicOpen {
            element: (h, x),
            points: primes.iter().enumerate().filter(|(_, p)| !p.contains((h, x))).map(|(k, _)| k).collect(),
        })
        .collect();
    let labels = (0..primes.len()).map(|k| format!("P{k}")).collect();
    let subbasis: Vec<PointSet> = basis.iter().map(|b| b.points).collect();
    let space = FiniteTopSpace::generated_by(labels, &subbasis).expect("spectra here have at most 64 points");
    NakaokaSpectrum { primes, space, basis }
}

/// Primes found by scanning every Tambara ideal, not only radical ones.
pub fn primes_by_full_enumeration(t: &TambaraFunctor) -> Vec<TambaraIdeal> {
    enumerate_ideals(t).into_iter().filter(|p| is_prime(t, p).is_ok()).collect()
}

/// A functor together with its frame and spectrum.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub functor: Arc<TambaraFunctor>,
    pub frame: RadIdFrame,
    pub spectrum: NakaokaSpectrum,
}

impl Analysis {
    pub fn new(t: Arc<TambaraFunctor>) -> Self {
        let frame = build_radid_frame(&t);
        let spectrum = spectrum_from_radicals(&t, frame.ideals());
        Analysis { functor: t, frame, spectrum }
    }
}

fn first<T>(mut it: impl Iterator<Item = T>, show: impl Fn(T) -> String) -> Option<String> {
    it.next().map(show)
}

/// Meets are intersections, joins are radicals of sums, the lattice is a
/// frame and its bottom is the nilradical.
pub fn verify_frame(a: &Analysis) -> Report {
    let t = &*a.functor;
    let f = &a.frame;
    let fr = f.frame();
    let n = f.len();
    let mut r = Report::new(format!("frame {}", t.name()));
    r.check_none(
        "frame.ideals-radical",
        format!("{n} enumerated radical ideals pass I1-I5 and equal their radicals"),
        first(f.ideals().iter().filter(|i| !validate_ideal(t, i.levels()).is_empty() || radical(t, i) != **i), |i| {
            i.describe(t)
        }),
    );
    let pairs = || (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)));
    r.check_none(
        "frame.meet-is-intersection",
        "meet of two radical ideals is their levelwise intersection",
        first(pairs().filter(|&(x, y)| *f.ideal(fr.meet(x, y)) != f.ideal(x).intersection(f.ideal(y))), |(x, y)| {
            format!("{} and {}", fr.label(x), fr.label(y))
        }),
    );
    r.check_none(
        "frame.join-is-radical-sum",
        "join of two radical ideals is the radical of their levelwise sum",
        first(
            pairs().filter(|&(x, y)| {
                *f.ideal(fr.join(x, y)) != radical(t, &ideal_sum(t, &[f.ideal(x).clone(), f.ideal(y).clone()]))
            }),
            |(x, y)| format!("{} and {}", fr.label(x), fr.label(y)),
        ),
    );
    let (distributive, bad) = fr.is_frame();
    r.check("frame.distributive", distributive, "finite meets distribute over joins", || {
        let (x, y, z) = bad[0];
        format!("{} ∧ ({} ∨ {})", fr.label(x), fr.label(y), fr.label(z))
    });
    let nil = nilradical(t);
    r.check(
        "frame.bottom-is-nilradical",
        f.ideal(fr.bottom()) == &nil,
        "least radical ideal is the nilradical",
        || f.ideal(fr.bottom()).describe(t),
    );
    r
}

/// Meet-primes of the frame are exactly the primes, and the two topologies
/// on them agree.
pub fn verify_points_primes(a: &Analysis) -> Report {
    let t = &*a.functor;
    let (f, s) = (&a.frame, &a.spectrum);
    let fr = f.frame();
    let mut r = Report::new(format!("points and primes {}", t.name()));

    let meet_primes: Vec<TambaraIdeal> = fr.meet_primes().iter().map(|p| f.ideal(p.meet_prime_index).clone()).collect();
    let missing = s.primes().iter().find(|p| !meet_primes.contains(p));
    let extra = meet_primes.iter().find(|p| !s.primes().contains(p));
    r.check(
        "points.meet-primes-are-primes",
        missing.is_none() && extra.is_none() && meet_primes.len() == s.primes().len(),
        format!("{} meet-primes, {} primes", meet_primes.len(), s.primes().len()),
        || match (missing, extra) {
            (Some(p), _) => format!("prime {} is not meet-prime", p.describe(t)),
            (_, Some(p)) => format!("meet-prime {} is not prime", p.describe(t)),
            _ => "counts differ".into(),
        },
    );

    let mut u_opens: Vec<PointSet> = f.ideals().iter().map(|i| s.open_of(i)).collect();
    u_opens.sort_by_key(|o| (o.len(), o.0));
    u_opens.dedup();
    r.check(
        "points.topologies-agree",
        u_opens == s.space().opens(),
        format!("{} opens U(I), {} opens generated by D_H(x)", u_opens.len(), s.space().opens().len()),
        || {
            let diff = u_opens.iter().find(|o| !s.space().is_open(**o)).or(s
                .space()
                .opens()
                .iter()
                .find(|o| !u_opens.contains(o)));
            diff.map(|o| s.space().describe(*o)).unwrap_or_default()
        },
    );

    r.check_none(
        "points.basic-open-is-u-of-radical",
        "D_H(x) = U(√⟨x⟩_H) for every element",
        first(s.basis().iter().filter(|b| s.open_of(&radical(t, &principal_ideal(t, b.element))) != b.points), |b| {
            t.element_label(b.element.0, b.element.1)
        }),
    );

    r.check_none(
        "points.u-is-union-of-basic-opens",
        "U(I) is the union of D_H(x) over x in I(G/H)",
        first(
            f.ideals().iter().filter(|i| {
                let union =
                    s.basis().iter().filter(|b| i.contains(b.element)).fold(PointSet::EMPTY, |u, b| u.union(b.points));
                union != s.open_of(i)
            }),
            |i| i.describe(t),
        ),
    );

    r.check_none(
        "points.prime-levels-radical",
        "every level of every prime is a radical ring ideal",
        first(
            s.primes().iter().flat_map(|p| (0..t.subgroup_count()).map(move |h| (p, h))).filter(|&(p, h)| {
                let l = p.level(h);
                t.level(h).radical_set(&l) != l
            }),
            |(p, h)| format!("{} at level {h}", p.describe(t)),
        ),
    );

    let non_prime_level = s
        .primes()
        .iter()
        .find_map(|p| (0..t.subgroup_count()).find(|&h| !t.level(h).is_prime_set(&p.level(h))).map(|h| (p, h)));
    r.note(
        "points.non-ring-prime-level",
        match non_prime_level {
            Some((p, h)) => format!("found: prime {} has level {h} that is not a prime ring ideal", p.describe(t)),
            None => "no prime of this functor has a level that is not a prime ring ideal".to_string(),
        },
    );
    r
}

/// Greedy search for a finite set whose generated radical ideal is `i`:
/// starting from nothing, add the least element of `i` not yet covered. Each
/// step strictly grows the generated radical, which stays inside `i`.
pub fn radical_generators(t: &TambaraFunctor, i: &TambaraIdeal) -> Vec<Element> {
    let mut gens = Vec::new();
    let mut current = radical(t, &TambaraIdeal::zero(t));
    while current != *i {
        let next = i.members().find(|&e| !current.contains(e)).expect("current ⊆ i and differs");
        gens.push(next);
        current = radical(t, &generate_ideal(t, &gens));
    }
    gens
}

/// Spatiality, coherence with compacts the radical finitely generated
/// ideals, the spectral-space axioms, and the basis property of `D_H(x)`.
pub fn verify_spatial_coherent_spectral(a: &Analysis) -> (Report, Vec<Vec<Element>>) {
    let t = &*a.functor;
    let (f, s) = (&a.frame, &a.spectrum);
    let fr = f.frame();
    let mut r = Report::new(format!("spatial, coherent, spectral {}", t.name()));

    let (spatial, bad) = fr.check_spatial();
    r.check("spatial.separation", spatial, "distinct radical ideals are separated by a prime", || {
        let (x, y) = bad[0];
        format!("{} and {}", fr.label(x), fr.label(y))
    });

    let gens: Vec<Vec<Element>> = f.ideals().iter().map(|i| radical_generators(t, i)).collect();
    r.check_none(
        "coherent.radical-finitely-generated",
        format!("each of the {} radical ideals is √⟨S⟩ for an exhibited finite S", f.len()),
        first(f.ideals().iter().zip(&gens).filter(|(i, g)| radical(t, &generate_ideal(t, g)) != **i), |(i, _)| {
            i.describe(t)
        }),
    );
    let designated: Vec<usize> = (0..f.len()).collect();
    let compact = fr.compact_elements();
    r.check(
        "coherent.compacts-are-finitely-generated",
        compact == designated,
        "compact elements of the frame are the radical finitely generated ideals",
        || format!("{} compact elements of {}", compact.len(), f.len()),
    );
    let coh = fr.check_coherent(&designated);
    r.check(
        "coherent.frame",
        coh.passed(),
        "compacts generate, are closed under finite meets and contain the top",
        || format!("{coh:?}"),
    );

    let sp = s.space().check_spectral_space();
    r.check("spectral.t0", sp.t0, "distinct primes have distinct neighbourhoods", || format!("{:?}", sp.t0_witness));
    r.check("spectral.quasi-compact", sp.quasi_compact, "the space is quasi-compact", String::new);
    r.check("spectral.sober", sp.sober, "every irreducible closed set has a unique generic point", || {
        sp.sober_witness.map(|w| s.space().describe(w)).unwrap_or_default()
    });
    r.check(
        "spectral.compact-open-basis",
        sp.basis_closed_under_intersection,
        "compact opens form a basis closed under finite intersections",
        String::new,
    );
    let compact_opens: Vec<PointSet> = f.ideals().iter().map(|i| s.open_of(i)).collect();
    r.check_none(
        "spectral.compact-opens-meet-closed",
        "U(I) ∩ U(J) = U(I ∧ J) for radical finitely generated I, J",
        first(
            (0..f.len())
                .flat_map(|x| (0..f.len()).map(move |y| (x, y)))
                .filter(|&(x, y)| compact_opens[x].intersection(compact_opens[y]) != compact_opens[fr.meet(x, y)]),
            |(x, y)| format!("{} and {}", fr.label(x), fr.label(y)),
        ),
    );

    let basis = s.basis();
    let mut d_failure = None;
    'outer: for b1 in basis {
        for b2 in basis {
            let products = generalized_product_sets(t, b1.element, b2.element);
            let mut union = PointSet::EMPTY;
            for (l, set) in products.iter().enumerate() {
                for z in set.iter() {
                    union = union.union(basis_points(t, s, (l, z)));
                }
            }
            if union != b1.points.intersection(b2.points) {
                d_failure = Some(format!(
                    "D({}) ∩ D({})",
                    t.element_label(b1.element.0, b1.element.1),
                    t.element_label(b2.element.0, b2.element.1)
                ));
                break 'outer;
            }
        }
    }
    r.check_none(
        "spectral.d-basis",
        "D_H(x) ∩ D_K(y) is the union of D_L(z) over generalized products z of x and y",
        d_failure,
    );
    (r, gens)
}

fn basis_points(t: &TambaraFunctor, s: &NakaokaSpectrum, (h, x): Element) -> PointSet {
    let offset: usize = (0..h).map(|k| t.level(k).size()).sum();
    s.basis()[offset + x].points
}

/// The maps a morphism `φ: T -> S` induces: `φ̃` on frames and `φᵃ` on
/// spectra.
#[derive(Debug, Clone)]
pub struct SpectralMap {
    /// `φ̃(I) = √(φ_* I)`, as frame indices of the target.
    pub frame_map: Vec<usize>,
    /// `φᵃ(Q) = φ^-1(Q)`, as point indices of the source.
    pub point_map: Vec<usize>,
    pub report: Report,
}

pub fn spectral_map(m: &TambaraMorphism, src: &Analysis, dst: &Analysis) -> SpectralMap {
    let (t, sfun) = (&*src.functor, &*dst.functor);
    let (ff, sf) = (src.frame.frame(), dst.frame.frame());
    let mut r = Report::new(format!("spectral map {} -> {}", t.name(), sfun.name()));

    let images: Vec<Option<usize>> =
        src.frame.ideals().iter().map(|i| dst.frame.index_of(&radical_pushforward(m, i))).collect();
    r.check_none(
        "map.frame-map-defined",
        "√(φ_* I) is a radical ideal of the target for every radical I",
        first(images.iter().enumerate().filter(|(_, v)| v.is_none()), |(a, _)| ff.label(a).to_string()),
    );
    let frame_map: Vec<usize> = images.iter().map(|v| v.unwrap_or(0)).collect();

    r.check("map.preserves-top", frame_map[ff.top()] == sf.top(), "φ̃(T) = S", || {
        sf.label(frame_map[ff.top()]).to_string()
    });
    let n = ff.size();
    let join_failure = if n <= SUBSET_JOIN_LIMIT {
        first(
            (0u32..1 << n).filter(|&mask| {
                let members = (0..n).filter(move |&a| mask >> a & 1 == 1);
                frame_map[ff.join_all(members.clone())] != sf.join_all(members.map(|a| frame_map[a]))
            }),
            |mask| format!("subset {mask:#b}"),
        )
    } else {
        let bottom = (frame_map[ff.bottom()] != sf.bottom()).then(|| "the empty join".to_string());
        bottom.or_else(|| {
            first(
                (0..n)
                    .flat_map(|x| (0..n).map(move |y| (x, y)))
                    .filter(|&(x, y)| frame_map[ff.join(x, y)] != sf.join(frame_map[x], frame_map[y])),
                |(x, y)| format!("{} ∨ {}", ff.label(x), ff.label(y)),
            )
        })
    };
    r.check_none(
        "map.preserves-joins",
        if n <= SUBSET_JOIN_LIMIT { "joins of every subset" } else { "empty and binary joins" },
        join_failure,
    );
    r.check_none(
        "map.preserves-meets",
        "binary meets",
        first(
            (0..n)
                .flat_map(|x| (0..n).map(move |y| (x, y)))
                .filter(|&(x, y)| frame_map[ff.meet(x, y)] != sf.meet(frame_map[x], frame_map[y])),
            |(x, y)| format!("{} ∧ {}", ff.label(x), ff.label(y)),
        ),
    );

    let pre: Vec<TambaraIdeal> = dst.spectrum.primes().iter().map(|q| preimage_ideal(m, q)).collect();
    let point_map: Vec<Option<usize>> = pre.iter().map(|p| src.spectrum.point_of(p)).collect();
    r.check_none(
        "map.preimage-of-prime-is-prime",
        "φ^-1(Q) is a prime of the source for every prime Q of the target",
        first(point_map.iter().enumerate().filter(|(_, p)| p.is_none()), |(q, _)| {
            dst.spectrum.primes()[q].describe(sfun)
        }),
    );
    let point_map: Vec<usize> = point_map.into_iter().map(|p| p.unwrap_or(0)).collect();

    // Composing a point of the target frame with φ̃ gives the point of the
    // source frame whose meet-prime is the largest a with φ̃(a) ≤ q.
    let mismatch = dst.spectrum.primes().iter().zip(&pre).find(|(qi, p)| {
        let qa = dst.frame.index_of(qi).expect("primes are radical");
        let below = ff.join_all((0..n).filter(|&a| sf.leq(frame_map[a], qa)));
        src.frame.ideal(below) != *p
    });
    r.check_none(
        "map.points-agree",
        "φ^-1(Q) is the largest radical ideal sent below Q by φ̃",
        mismatch.map(|(qi, _)| qi.describe(sfun)),
    );

    let pulled = |o: PointSet| -> PointSet {
        point_map.iter().enumerate().filter(|(_, &p)| o.contains(p)).map(|(q, _)| q).collect()
    };
    r.check_none(
        "map.continuous",
        "preimages of opens are open",
        first(src.spectrum.space().opens().iter().filter(|&&o| !dst.spectrum.space().is_open(pulled(o))), |o| {
            src.spectrum.space().describe(*o)
        }),
    );
    r.check_none(
        "map.spectral",
        "the preimage of the compact open U(I) is the compact open U(φ̃(I))",
        first(
            src.frame.ideals().iter().enumerate().filter(|(a, i)| {
                pulled(src.spectrum.open_of(i)) != dst.spectrum.open_of(dst.frame.ideal(frame_map[*a]))
            }),
            |(a, _)| ff.label(a).to_string(),
        ),
    );
    SpectralMap { frame_map, point_map, report: r }
}

/// `T -> T/I` identifies the radical ideals of `T/I` with those above `√I`
/// and `Spec(T/I)` with `V(I)`.
pub fn closed_immersion(a: &Analysis, i: &TambaraIdeal) -> Result<Report> {
    let t = &a.functor;
    let (q, pi) = quotient_functor(t, i.levels())?;
    let b = Analysis::new(q);
    let mut r = Report::new(format!("closed immersion {} / {}", t.name(), i.describe(t)));
    let root = radical(t, i);

    let images: Vec<Option<usize>> =
        b.frame.ideals().iter().map(|j| a.frame.index_of(&preimage_ideal(&pi, j))).collect();
    let up: Vec<usize> = (0..a.frame.len()).filter(|&k| root.is_subset(a.frame.ideal(k))).collect();
    let mut got: Vec<usize> = images.iter().flatten().copied().collect();
    got.sort_unstable();
    let bijective = images.iter().all(|v| v.is_some()) && got.windows(2).all(|w| w[0] != w[1]) && got == up;
    let order = bijective
        && (0..b.frame.len()).all(|x| {
            (0..b.frame.len())
                .all(|y| b.frame.frame().leq(x, y) == a.frame.frame().leq(images[x].unwrap(), images[y].unwrap()))
        });
    r.check(
        "immersion.frame",
        bijective && order,
        format!("RadId(T/I) has {} elements, the up-set of √I has {}", b.frame.len(), up.len()),
        || if bijective { "order not preserved".into() } else { "preimage is not a bijection onto the up-set".into() },
    );

    let v = a.spectrum.vanishing(i);
    let points: Vec<Option<usize>> =
        b.spectrum.primes().iter().map(|p| a.spectrum.point_of(&preimage_ideal(&pi, p))).collect();
    let image: PointSet = points.iter().flatten().copied().collect();
    let onto = points.iter().all(|p| p.is_some()) && image == v && image.len() == points.len();
    let push = |o: PointSet| -> PointSet { o.iter().map(|k| points[k].unwrap()).collect() };
    let homeo = onto && {
        let mut mine: Vec<PointSet> = b.spectrum.space().opens().iter().map(|&o| push(o)).collect();
        let mut theirs: Vec<PointSet> = a.spectrum.space().opens().iter().map(|o| o.intersection(v)).collect();
        for l in [&mut mine, &mut theirs] {
            l.sort_by_key(|o| o.0);
            l.dedup();
        }
        mine == theirs
    };
    r.check(
        "immersion.spectrum",
        homeo,
        format!("Spec(T/I) has {} points, V(I) has {}", points.len(), v.len()),
        || if onto { "topologies differ".into() } else { "preimage is not a bijection onto V(I)".into() },
    );
    Ok(r)
}

/// `Spec(T_red) ≅ Spec(T)` through the reduction map.
pub fn reduction_invariance(a: &Analysis) -> Result<Report> {
    let t = &*a.functor;
    let nil = nilradical(t);
    let mut r = closed_immersion(a, &nil)?;
    r.title = format!("reduction {}", t.name());
    r.check(
        "reduction.everything-vanishes",
        a.spectrum.vanishing(&nil) == PointSet::full(a.spectrum.primes().len()),
        "every prime contains the nilradical",
        String::new,
    );
    Ok(r)
}

/// The connectedness diagnostics and the decomposition of `T_red` along
/// complemented radical ideals.
#[derive(Debug, Clone)]
pub struct Connectedness {
    /// Nontrivial clopen subset of the spectrum.
    pub clopen: bool,
    /// Nontrivial complemented element of the frame.
    pub complemented: bool,
    /// Nonzero coprime radical ideals of `T_red` meeting in zero.
    pub coprime_pair: bool,
    /// Nontrivial product decomposition of `T_red` along ideals.
    pub product_decomposition: bool,
    pub irreducible: bool,
    pub nilradical_prime: bool,
    /// Level sizes of `T/I` and `T/J` for each complemented pair `(I, J)`.
    pub decompositions: Vec<(usize, usize, Vec<usize>, Vec<usize>)>,
    pub report: Report,
}

pub fn crt_connectedness(a: &Analysis) -> Result<Connectedness> {
    let t = &a.functor;
    let (f, s) = (&a.frame, &a.spectrum);
    let fr = f.frame();
    let mut r = Report::new(format!("connectedness {}", t.name()));
    let npts = s.primes().len();
    let nil = nilradical(t);
    let (red, to_red) = quotient_functor(t, nil.levels())?;

    let pairs: Vec<(usize, usize)> =
        fr.complemented_pairs().into_iter().filter(|&(x, _)| x != fr.bottom() && x != fr.top()).collect();
    let mut decompositions = Vec::new();
    for &(x, y) in &pairs {
        if x > y {
            continue;
        }
        let (i, j) = (f.ideal(x), f.ideal(y));
        let (vi, vj) = (s.vanishing(i), s.vanishing(j));
        let space = s.space();
        r.check(
            &format!("crt.clopen[{x},{y}]"),
            vi.intersection(vj).is_empty()
                && vi.union(vj) == PointSet::full(npts)
                && space.is_open(vi)
                && space.is_open(vj),
            format!("Spec = V({}) ⊔ V({}) with both parts clopen", fr.label(x), fr.label(y)),
            || format!("V(I) = {}, V(J) = {}", space.describe(vi), space.describe(vj)),
        );
        let (qi, pi) = quotient_functor(t, i.levels())?;
        let (qj, pj) = quotient_functor(t, j.levels())?;
        let (prod, p1, p2) = product_functor(&qi, &qj)?;
        let mut maps = Vec::with_capacity(t.subgroup_count());
        let mut consistent = true;
        for h in 0..t.subgroup_count() {
            let lookup: HashMap<(usize, usize), usize> =
                (0..prod.level(h).size()).map(|e| ((p1.apply(h, e), p2.apply(h, e)), e)).collect();
            let mut map = vec![usize::MAX; red.level(h).size()];
            for e in 0..t.level(h).size() {
                let v = lookup[&(pi.apply(h, e), pj.apply(h, e))];
                let slot = &mut map[to_red.apply(h, e)];
                consistent &= *slot == usize::MAX || *slot == v;
                *slot = v;
            }
            maps.push(map);
        }
        let iso = consistent
            && match TambaraMorphism::new(red.clone(), prod.clone(), maps) {
                Ok(m) => m.is_isomorphism(),
                Err(_) => false,
            };
        r.check(
            &format!("crt.product[{x},{y}]"),
            iso,
            format!("T_red ≅ T/I × T/J for I = {}, J = {}", fr.label(x), fr.label(y)),
            || "the map to the product is not an isomorphism of Tambara functors".into(),
        );
        decompositions.push((
            x,
            y,
            qi.levels().iter().map(|l| l.size()).collect(),
            qj.levels().iter().map(|l| l.size()).collect(),
        ));
    }

    let clopen = s.space().nontrivial_clopen().is_some();
    let complemented = !pairs.is_empty();
    let red_radicals = enumerate_radical_ideals(&red);
    let zero = TambaraIdeal::zero(&red);
    let coprime_pair = red_radicals.iter().any(|i| {
        red_radicals.iter().any(|j| {
            *i != zero
                && *j != zero
                && i.intersection(j) == zero
                && ideal_sum(&red, &[i.clone(), j.clone()]).is_whole(&red)
        })
    });
    let red_ideals = enumerate_ideals(&red);
    let product_decomposition = red_ideals.iter().any(|i| {
        red_ideals.iter().any(|j| {
            i.is_proper(&red)
                && j.is_proper(&red)
                && i.intersection(j) == zero
                && ideal_sum(&red, &[i.clone(), j.clone()]).is_whole(&red)
                && splits(&red, i, j)
        })
    });
    let flags = [clopen, complemented, coprime_pair, product_decomposition];
    r.check(
        "connectedness.equivalence",
        flags.iter().all(|&b| b == flags[0]),
        format!(
            "nontrivial clopen {clopen}, complemented element {complemented}, coprime radical pair {coprime_pair}, product decomposition {product_decomposition}"
        ),
        || "the four conditions disagree".into(),
    );
    let irreducible = s.space().is_irreducible();
    let nilradical_prime = is_prime(t, &nil).is_ok();
    r.check(
        "irreducible.iff-nilradical-prime",
        irreducible == nilradical_prime,
        format!("irreducible {irreducible}, nilradical prime {nilradical_prime}"),
        || "irreducibility and primality of the nilradical disagree".into(),
    );
    Ok(Connectedness {
        clopen,
        complemented,
        coprime_pair,
        product_decomposition,
        irreducible,
        nilradical_prime,
        decompositions,
        report: r,
    })
}

/// Whether `x -> (x + I, x + J)` is a bijection at every level.
fn splits(t: &TambaraFunctor, i: &TambaraIdeal, j: &TambaraIdeal) -> bool {
    (0..t.subgroup_count()).all(|h| {
        let r = t.level(h);
        let (qi, pi) = r.quotient(&i.level(h)).expect("levels of an ideal are ideals");
        let (qj, pj) = r.quotient(&j.level(h)).expect("levels of an ideal are ideals");
        let mut seen = vec![false; qi.size() * qj.size()];
        qi.size() * qj.size() == r.size()
            && (0..r.size()).all(|x| !std::mem::replace(&mut seen[pi[x] * qj.size() + pj[x]], true))
    })
}
