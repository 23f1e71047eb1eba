//! Tambara ideals: validation, generation, sums, products, radicals and
//! primality.
//!
//! An ideal is a tuple of element sets, one per subgroup. Functions take the
//! functor explicitly; ideals do not hold a reference to it.

use std::fmt;

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::tambara::{TambaraFunctor, TambaraMorphism};

/// An element of a Tambara functor: `(subgroup id, element index)`.
pub type Element = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TambaraIdeal {
    levels: Vec<ElemSet>,
}

impl TambaraIdeal {
    /// Validates `levels` against I1 to I5.
    pub fn new(t: &TambaraFunctor, levels: Vec<ElemSet>) -> Result<Self> {
        let violations = validate_ideal(t, &levels);
        match violations.first() {
            None => Ok(TambaraIdeal { levels }),
            Some(v) => Err(Error::InvalidIdeal(v.to_string())),
        }
    }

    pub fn zero(t: &TambaraFunctor) -> Self {
        TambaraIdeal { levels: vec![ElemSet::singleton(0); t.subgroup_count()] }
    }

    pub fn whole(t: &TambaraFunctor) -> Self {
        TambaraIdeal { levels: t.levels().iter().map(|r| ElemSet::full(r.size())).collect() }
    }

    pub fn level(&self, h: usize) -> ElemSet {
        self.levels[h]
    }

    pub fn levels(&self) -> &[ElemSet] {
        &self.levels
    }

    pub fn contains(&self, (h, x): Element) -> bool {
        self.levels[h].contains(x)
    }

    pub fn is_subset(&self, other: &TambaraIdeal) -> bool {
        self.levels.iter().zip(&other.levels).all(|(a, b)| a.is_subset(b))
    }

    /// Levelwise intersection, again a Tambara ideal.
    pub fn intersection(&self, other: &TambaraIdeal) -> TambaraIdeal {
        TambaraIdeal { levels: self.levels.iter().zip(&other.levels).map(|(a, b)| a.intersection(b)).collect() }
    }

    /// `1 ∉ I(G/G)`.
    pub fn is_proper(&self, t: &TambaraFunctor) -> bool {
        let top = t.group().full_subgroup();
        !self.levels[top].contains(t.level(top).one())
    }

    pub fn is_whole(&self, t: &TambaraFunctor) -> bool {
        *self == TambaraIdeal::whole(t)
    }

    pub fn is_zero(&self) -> bool {
        self.levels.iter().all(|l| l.len() == 1)
    }

    /// Total number of members over all levels.
    pub fn size(&self) -> usize {
        self.levels.iter().map(|l| l.len()).sum()
    }

    /// Members in level order, the enumeration order of elements.
    pub fn members(&self) -> impl Iterator<Item = Element> + '_ {
        self.levels.iter().enumerate().flat_map(|(h, l)| l.iter().map(move |x| (h, x)))
    }

    /// Sort key of the canonical order: total size, then member lists.
    pub fn canonical_key(&self) -> (usize, Vec<Vec<usize>>) {
        (self.size(), self.levels.iter().map(|l| l.to_vec()).collect())
    }

    pub fn describe(&self, t: &TambaraFunctor) -> String {
        let parts: Vec<String> = self
            .levels
            .iter()
            .enumerate()
            .map(|(h, l)| format!("{}:{}", t.subgroup_name(h), t.level(h).describe(l)))
            .collect();
        parts.join(" ")
    }
}

pub fn sort_ideals(ideals: &mut [TambaraIdeal]) {
    ideals.sort_by_cached_key(|i| i.canonical_key());
}

/// One failed instance of I1 to I5.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealViolation {
    pub axiom: &'static str,
    pub detail: String,
}

impl fmt::Display for IdealViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.axiom, self.detail)
    }
}

/// Exhaustive check of I1 to I5; returns every violation.
pub fn validate_ideal(t: &TambaraFunctor, levels: &[ElemSet]) -> Vec<IdealViolation> {
    let mut out = Vec::new();
    if levels.len() != t.subgroup_count() {
        out.push(IdealViolation {
            axiom: "shape",
            detail: format!("{} levels for {} subgroups", levels.len(), t.subgroup_count()),
        });
        return out;
    }
    for (h, l) in levels.iter().enumerate() {
        let r = t.level(h);
        if l.iter().any(|x| x >= r.size()) {
            out.push(IdealViolation { axiom: "shape", detail: format!("level {h} names an element outside the ring") });
            return out;
        }
        if !r.is_ideal(l) {
            out.push(IdealViolation {
                axiom: "I1",
                detail: format!("{} is not an ideal of level {}", r.describe(l), t.subgroup_name(h)),
            });
        }
    }
    let name = |h: usize, x: usize| t.level(h).label(x).to_string();
    for (h, k) in t.inclusions() {
        for x in levels[h].iter() {
            let v = t.res(h, k, x);
            if !levels[k].contains(v) {
                out.push(IdealViolation {
                    axiom: "I2",
                    detail: format!("r^{h}_{k}({}) = {} is not in level {k}", name(h, x), name(k, v)),
                });
            }
        }
    }
    for (h, k) in t.inclusions() {
        for y in levels[k].iter() {
            let v = t.tr(h, k, y);
            if !levels[h].contains(v) {
                out.push(IdealViolation {
                    axiom: "I3",
                    detail: format!("t^{h}_{k}({}) = {} is not in level {h}", name(k, y), name(h, v)),
                });
            }
        }
    }
    for (h, k) in t.inclusions() {
        for y in levels[k].iter() {
            let v = t.nm(h, k, y);
            if !levels[h].contains(v) {
                out.push(IdealViolation {
                    axiom: "I4",
                    detail: format!("N^{h}_{k}({}) = {} is not in level {h}", name(k, y), name(h, v)),
                });
            }
        }
    }
    let g = t.group();
    for e in 0..g.order() {
        for h in 0..t.subgroup_count() {
            let c = g.conjugate_subgroup(h, e);
            for x in levels[h].iter() {
                let v = t.conj(e, h, x);
                if !levels[c].contains(v) {
                    out.push(IdealViolation {
                        axiom: "I5",
                        detail: format!(
                            "c_{{{},{h}}}({}) = {} is not in level {c}",
                            g.label(e),
                            name(h, x),
                            name(c, v)
                        ),
                    });
                }
            }
        }
    }
    out
}

/// Stability under the structure maps, assuming every level is already a
/// ring ideal. Used by enumeration.
fn closed_under_maps(t: &TambaraFunctor, levels: &[ElemSet]) -> bool {
    let g = t.group();
    t.inclusions().all(|(h, k)| {
        levels[h].iter().all(|x| levels[k].contains(t.res(h, k, x)))
            && levels[k].iter().all(|y| levels[h].contains(t.tr(h, k, y)) && levels[h].contains(t.nm(h, k, y)))
    }) && (0..g.order()).all(|e| {
        (0..t.subgroup_count()).all(|h| {
            let c = g.conjugate_subgroup(h, e);
            levels[h].iter().all(|x| levels[c].contains(t.conj(e, h, x)))
        })
    })
}

/// Least Tambara ideal containing the given level sets.
///
/// Each pass closes every level to a ring ideal and then pushes every
/// member through every restriction, transfer, norm and conjugation; norms
/// are not additive, so pushing only generators would not be enough.
pub fn close_levels(t: &TambaraFunctor, mut levels: Vec<ElemSet>) -> TambaraIdeal {
    for (h, l) in levels.iter_mut().enumerate() {
        l.insert(t.level(h).zero());
    }
    let g = t.group();
    loop {
        let mut changed = false;
        for (h, l) in levels.iter_mut().enumerate() {
            let c = t.level(h).ideal_closure(l);
            if c != *l {
                *l = c;
                changed = true;
            }
        }
        for (h, k) in t.inclusions() {
            for x in levels[h].iter().collect::<Vec<_>>() {
                changed |= levels[k].insert(t.res(h, k, x));
            }
            for y in levels[k].iter().collect::<Vec<_>>() {
                changed |= levels[h].insert(t.tr(h, k, y));
                changed |= levels[h].insert(t.nm(h, k, y));
            }
        }
        for e in 0..g.order() {
            for h in 0..t.subgroup_count() {
                let c = g.conjugate_subgroup(h, e);
                for x in levels[h].iter().collect::<Vec<_>>() {
                    changed |= levels[c].insert(t.conj(e, h, x));
                }
            }
        }
        if !changed {
            return TambaraIdeal { levels };
        }
    }
}

/// The ideal generated by finitely many elements.
pub fn generate_ideal(t: &TambaraFunctor, gens: &[Element]) -> TambaraIdeal {
    let mut levels = vec![ElemSet::new(); t.subgroup_count()];
    for &(h, x) in gens {
        levels[h].insert(x);
    }
    close_levels(t, levels)
}

/// `⟨x⟩_H`.
pub fn principal_ideal(t: &TambaraFunctor, (h, x): Element) -> TambaraIdeal {
    generate_ideal(t, &[(h, x)])
}

/// Levelwise sum; the sum of Tambara ideals is again one.
pub fn ideal_sum(t: &TambaraFunctor, ideals: &[TambaraIdeal]) -> TambaraIdeal {
    let mut levels = vec![ElemSet::singleton(0); t.subgroup_count()];
    for i in ideals {
        for (h, l) in levels.iter_mut().enumerate() {
            *l = t.level(h).sum_sets(l, &i.levels[h]);
        }
    }
    TambaraIdeal { levels }
}

/// The ideal generated by the levelwise products `I(G/H) J(G/H)`.
pub fn ideal_product(t: &TambaraFunctor, i: &TambaraIdeal, j: &TambaraIdeal) -> TambaraIdeal {
    let levels = (0..t.subgroup_count()).map(|h| t.level(h).product_sets(&i.levels[h], &j.levels[h])).collect();
    close_levels(t, levels)
}

/// How a multiplicative translate `N^L_{gKg^-1}(c_{g,K}(r^H_K(x)))` arises.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TranslateDescriptor {
    pub from: Element,
    pub k: usize,
    pub g: usize,
    pub target: usize,
    pub value: usize,
}

/// Every multiplicative translate of `x` into level `l`, one per admissible
/// `(K, g)`, in order of `K` then `g`.
pub fn translate_descriptors(t: &TambaraFunctor, (h, x): Element, l: usize) -> Vec<TranslateDescriptor> {
    let g = t.group();
    let mut out = Vec::new();
    for k in (0..t.subgroup_count()).filter(|&k| g.is_subgroup_of(k, h)) {
        for e in 0..g.order() {
            let ck = g.conjugate_subgroup(k, e);
            if g.is_subgroup_of(ck, l) {
                let value = t.nm(l, ck, t.conj(e, k, t.res(h, k, x)));
                out.push(TranslateDescriptor { from: (h, x), k, g: e, target: l, value });
            }
        }
    }
    out
}

/// The set of values of the multiplicative translates of `x` into level `l`.
pub fn multiplicative_translates(t: &TambaraFunctor, (h, x): Element, l: usize) -> ElemSet {
    t.translate_values(h, x, l)
}

/// A product of a translate of `x` and a translate of `y` in a common level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneralizedProduct {
    pub level: usize,
    pub value: usize,
    pub left: TranslateDescriptor,
    pub right: TranslateDescriptor,
}

impl GeneralizedProduct {
    /// Recomputes the value from the provenance.
    pub fn recompute(&self, t: &TambaraFunctor) -> usize {
        let eval = |d: &TranslateDescriptor| {
            let g = t.group();
            let ck = g.conjugate_subgroup(d.k, d.g);
            t.nm(d.target, ck, t.conj(d.g, d.k, t.res(d.from.0, d.k, d.from.1)))
        };
        t.level(self.level).mul(eval(&self.left), eval(&self.right))
    }

    pub fn describe(&self, t: &TambaraFunctor) -> String {
        let g = t.group();
        let part = |d: &TranslateDescriptor| {
            format!("N(c_{}(r^{}_{}({})))", g.label(d.g), d.from.0, d.k, t.level(d.from.0).label(d.from.1))
        };
        format!(
            "{} * {} = {} at level {}",
            part(&self.left),
            part(&self.right),
            t.level(self.level).label(self.value),
            t.subgroup_name(self.level)
        )
    }
}

/// Every generalized product of `x` and `y` with its provenance.
pub fn generalized_products(t: &TambaraFunctor, x: Element, y: Element) -> Vec<GeneralizedProduct> {
    let mut out = Vec::new();
    for l in 0..t.subgroup_count() {
        let (lx, ly) = (translate_descriptors(t, x, l), translate_descriptors(t, y, l));
        for a in &lx {
            for b in &ly {
                out.push(GeneralizedProduct { level: l, value: t.level(l).mul(a.value, b.value), left: *a, right: *b });
            }
        }
    }
    out
}

/// Values of the generalized products of `x` and `y`, per level.
pub fn generalized_product_sets(t: &TambaraFunctor, x: Element, y: Element) -> Vec<ElemSet> {
    (0..t.subgroup_count())
        .map(|l| {
            let r = t.level(l);
            let ty = t.translate_values(y.0, y.1, l);
            let mut out = ElemSet::new();
            for u in t.translate_values(x.0, x.1, l).iter() {
                for v in ty.iter() {
                    out.insert(r.mul(u, v));
                }
            }
            out
        })
        .collect()
}

fn q_holds(t: &TambaraFunctor, i: &TambaraIdeal, x: Element, y: Element) -> bool {
    (0..t.subgroup_count()).all(|l| {
        let r = t.level(l);
        let ty = t.translate_values(y.0, y.1, l);
        t.translate_values(x.0, x.1, l).iter().all(|u| ty.iter().all(|v| i.levels[l].contains(r.mul(u, v))))
    })
}

/// `Q(I, x, y)`: every generalized product of `x` and `y` lies in `I`. On
/// failure returns the first generalized product outside `I`.
pub fn q_predicate(
    t: &TambaraFunctor,
    i: &TambaraIdeal,
    x: Element,
    y: Element,
) -> std::result::Result<(), GeneralizedProduct> {
    if q_holds(t, i, x, y) {
        return Ok(());
    }
    let witness = generalized_products(t, x, y)
        .into_iter()
        .find(|p| !i.levels[p.level].contains(p.value))
        .expect("a failing product exists");
    Err(witness)
}

/// All generalized products of pairs from two generator lists. When `gi`
/// generates `I` and `gj` generates `J`, these generate `IJ`, because the
/// product distributes over sums and each `⟨a⟩⟨b⟩` is generated by the
/// generalized products of `a` and `b`.
pub fn product_generators(t: &TambaraFunctor, gi: &[Element], gj: &[Element]) -> Vec<Element> {
    let mut levels = vec![ElemSet::new(); t.subgroup_count()];
    for &a in gi {
        for &b in gj {
            for (l, s) in generalized_product_sets(t, a, b).into_iter().enumerate() {
                levels[l] = levels[l].union(&s);
            }
        }
    }
    levels.iter().enumerate().flat_map(|(h, s)| s.iter().map(move |x| (h, x))).collect()
}

/// Levelwise ring radical, which is again a Tambara ideal.
pub fn radical(t: &TambaraFunctor, i: &TambaraIdeal) -> TambaraIdeal {
    TambaraIdeal { levels: i.levels.iter().enumerate().map(|(h, l)| t.level(h).radical_set(l)).collect() }
}

pub fn is_radical(t: &TambaraFunctor, i: &TambaraIdeal) -> bool {
    radical(t, i) == *i
}

pub fn nilradical(t: &TambaraFunctor) -> TambaraIdeal {
    radical(t, &TambaraIdeal::zero(t))
}

/// The radical by its definition: `x ∈ √I` iff `⟨x⟩^n ⊆ I` for some `n`.
///
/// For every element the chain `⟨x⟩ ⊇ ⟨x⟩^2 ⊇ ...` is followed until two
/// consecutive terms agree; from then on it is constant, so `x ∈ √I` iff
/// that stable term lies in `I`.
pub struct PowerChainRadical {
    floors: Vec<Vec<TambaraIdeal>>,
    lengths: Vec<Vec<usize>>,
}

impl PowerChainRadical {
    pub fn new(t: &TambaraFunctor) -> Self {
        let mut floors = Vec::with_capacity(t.subgroup_count());
        let mut lengths = Vec::with_capacity(t.subgroup_count());
        for h in 0..t.subgroup_count() {
            let mut fl = Vec::with_capacity(t.level(h).size());
            let mut ln = Vec::with_capacity(t.level(h).size());
            for x in 0..t.level(h).size() {
                let base = principal_ideal(t, (h, x));
                let mut power = base.clone();
                let mut n = 1;
                loop {
                    let next = ideal_product(t, &power, &base);
                    if next == power {
                        break;
                    }
                    power = next;
                    n += 1;
                }
                fl.push(power);
                ln.push(n);
            }
            floors.push(fl);
            lengths.push(ln);
        }
        PowerChainRadical { floors, lengths }
    }

    /// The stable power of `⟨x⟩`.
    pub fn floor(&self, (h, x): Element) -> &TambaraIdeal {
        &self.floors[h][x]
    }

    /// The exponent at which the chain for `x` stabilizes.
    pub fn stable_exponent(&self, (h, x): Element) -> usize {
        self.lengths[h][x]
    }

    pub fn radical(&self, i: &TambaraIdeal) -> TambaraIdeal {
        TambaraIdeal {
            levels: self
                .floors
                .iter()
                .map(|fl| fl.iter().enumerate().filter(|(_, f)| f.is_subset(i)).map(|(x, _)| x).collect())
                .collect(),
        }
    }
}

/// Why an ideal is not prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrimeFailure {
    NotProper,
    /// `Q(P, a, b)` holds although neither `a` nor `b` lies in `P`.
    Witness {
        a: Element,
        b: Element,
    },
}

/// Primality through the `Q` characterization: `P` is proper and
/// `Q(P, a, b)` forces `a ∈ P` or `b ∈ P`, scanned over all element pairs.
pub fn is_prime(t: &TambaraFunctor, p: &TambaraIdeal) -> std::result::Result<(), PrimeFailure> {
    if !p.is_proper(t) {
        return Err(PrimeFailure::NotProper);
    }
    let outside: Vec<Element> = t.elements().filter(|&e| !p.contains(e)).collect();
    for (i, &a) in outside.iter().enumerate() {
        for &b in &outside[i..] {
            if q_holds(t, p, a, b) {
                return Err(PrimeFailure::Witness { a, b });
            }
        }
    }
    Ok(())
}

/// `I + J = T`.
pub fn are_coprime(t: &TambaraFunctor, i: &TambaraIdeal, j: &TambaraIdeal) -> bool {
    ideal_sum(t, &[i.clone(), j.clone()]).is_whole(t)
}

/// Levelwise preimage of an ideal of the target.
pub fn preimage_ideal(m: &TambaraMorphism, j: &TambaraIdeal) -> TambaraIdeal {
    let s = m.source();
    TambaraIdeal {
        levels: (0..s.subgroup_count())
            .map(|h| (0..s.level(h).size()).filter(|&x| j.levels[h].contains(m.apply(h, x))).collect())
            .collect(),
    }
}

/// The ideal of the target generated by the levelwise images.
pub fn pushforward_ideal(m: &TambaraMorphism, i: &TambaraIdeal) -> TambaraIdeal {
    let levels = i.levels.iter().enumerate().map(|(h, l)| l.iter().map(|x| m.apply(h, x)).collect()).collect();
    close_levels(m.target(), levels)
}

/// `√(φ_* I)`.
pub fn radical_pushforward(m: &TambaraMorphism, i: &TambaraIdeal) -> TambaraIdeal {
    radical(m.target(), &pushforward_ideal(m, i))
}

fn enumerate_tuples(t: &TambaraFunctor, choices: Vec<Vec<ElemSet>>) -> Vec<TambaraIdeal> {
    let n = t.subgroup_count();
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    if choices.iter().any(|c| c.is_empty()) {
        return out;
    }
    loop {
        let levels: Vec<ElemSet> = (0..n).map(|h| choices[h][idx[h]]).collect();
        if closed_under_maps(t, &levels) {
            out.push(TambaraIdeal { levels });
        }
        let mut h = 0;
        loop {
            if h == n {
                sort_ideals(&mut out);
                return out;
            }
            idx[h] += 1;
            if idx[h] < choices[h].len() {
                break;
            }
            idx[h] = 0;
            h += 1;
        }
    }
}

/// Every Tambara ideal: tuples of ring ideals filtered by I2 to I5, in
/// canonical order.
pub fn enumerate_ideals(t: &TambaraFunctor) -> Vec<TambaraIdeal> {
    enumerate_tuples(t, t.levels().iter().map(|r| r.ideal_sets().to_vec()).collect())
}

/// Every radical Tambara ideal; levels are restricted to radical ring
/// ideals before filtering.
pub fn enumerate_radical_ideals(t: &TambaraFunctor) -> Vec<TambaraIdeal> {
    let choices = t
        .levels()
        .iter()
        .map(|r| r.ideal_sets().iter().filter(|i| r.radical_set(i) == **i).copied().collect())
        .collect();
    enumerate_tuples(t, choices)
}
