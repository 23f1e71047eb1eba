//! Finite lattices and frames, their points (meet-prime elements), the point
//! space, and the finite versions of spatiality, coherence and spectrality.
//!
//! All joins in a finite lattice are finite, so binary distributivity
//! `a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c)` is the full frame law here.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// A finite lattice given by its order, with meet and join tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteFrame {
    labels: Vec<String>,
    size: usize,
    leq: Vec<bool>,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
}

/// A point of a frame, stored as its meet-prime element `q`; the associated
/// two-valued map sends `a` to 0 exactly when `a <= q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FramePoint {
    pub meet_prime_index: usize,
}

impl FramePoint {
    /// `p_q(a)`.
    pub fn value(&self, frame: &FiniteFrame, a: usize) -> bool {
        !frame.leq(a, self.meet_prime_index)
    }
}

/// Outcome of [`FiniteFrame::check_coherent`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoherenceReport {
    pub generates: bool,
    pub meet_closed: bool,
    pub contains_top: bool,
    pub all_compact: bool,
    /// Elements not the join of the designated elements below them.
    pub ungenerated: Vec<usize>,
    /// Designated pairs whose meet is not designated.
    pub meet_failures: Vec<(usize, usize)>,
}

impl CoherenceReport {
    pub fn passed(&self) -> bool {
        self.generates && self.meet_closed && self.contains_top && self.all_compact
    }
}

/// Outcome of comparing a frame with the open-set frame of its point space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub injective: bool,
    pub preserves_joins: bool,
    pub preserves_meets: bool,
    pub surjective: bool,
}

impl EmbeddingReport {
    pub fn is_isomorphism(&self) -> bool {
        self.injective && self.preserves_joins && self.preserves_meets && self.surjective
    }
}

impl FiniteFrame {
    /// Builds a lattice from an order predicate. Fails unless `leq` is a
    /// partial order in which every pair has a meet and a join.
    pub fn from_order(labels: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::NotALattice("empty order".into()));
        }
        let mut table = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = leq(a, b);
            }
        }
        let le = |a: usize, b: usize| table[a * n + b];
        for a in 0..n {
            if !le(a, a) {
                return Err(Error::NotALattice(format!("not reflexive at {a}")));
            }
            for b in 0..n {
                if a != b && le(a, b) && le(b, a) {
                    return Err(Error::NotALattice(format!("not antisymmetric at ({a}, {b})")));
                }
                for c in 0..n {
                    if le(a, b) && le(b, c) && !le(a, c) {
                        return Err(Error::NotALattice(format!("not transitive at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let greatest = |cands: Vec<usize>| cands.iter().copied().find(|&x| cands.iter().all(|&y| le(y, x)));
        let least = |cands: Vec<usize>| cands.iter().copied().find(|&x| cands.iter().all(|&y| le(x, y)));
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                meet[a * n + b] = greatest((0..n).filter(|&x| le(x, a) && le(x, b)).collect())
                    .ok_or_else(|| Error::NotALattice(format!("no meet of ({a}, {b})")))?;
                join[a * n + b] = least((0..n).filter(|&x| le(a, x) && le(b, x)).collect())
                    .ok_or_else(|| Error::NotALattice(format!("no join of ({a}, {b})")))?;
            }
        }
        let bottom = least((0..n).collect()).ok_or_else(|| Error::NotALattice("no bottom".into()))?;
        let top = greatest((0..n).collect()).ok_or_else(|| Error::NotALattice("no top".into()))?;
        Ok(FiniteFrame { labels, size: n, leq: table, meet, join, bottom, top })
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        Self::from_order((0..n).map(|i| i.to_string()).collect(), |a, b| a <= b).expect("chains are lattices")
    }

    /// Subsets of a `k`-set, element `m` being the bitmask `m`.
    pub fn powerset(k: usize) -> Self {
        Self::from_order((0..1usize << k).map(|m| format!("{m:0k$b}")).collect(), |a, b| a & !b == 0)
            .expect("powersets are lattices")
    }

    /// The non-distributive diamond `M3`.
    pub fn diamond() -> Self {
        let labels = ["0", "a", "b", "c", "1"].iter().map(|s| s.to_string()).collect();
        Self::from_order(labels, |a, b| a == b || a == 0 || b == 4).expect("M3 is a lattice")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.size + b]
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.size + b]
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.size + b]
    }

    /// Join of a finite family (bottom for the empty family).
    pub fn join_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn meet_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Distributivity over every triple; returns all violating `(a, b, c)`.
    pub fn is_frame(&self) -> (bool, Vec<(usize, usize, usize)>) {
        let mut bad = Vec::new();
        for a in 0..self.size {
            for b in 0..self.size {
                for c in 0..self.size {
                    let lhs = self.meet(a, self.join(b, c));
                    let rhs = self.join(self.meet(a, b), self.meet(a, c));
                    if lhs != rhs {
                        bad.push((a, b, c));
                    }
                }
            }
        }
        (bad.is_empty(), bad)
    }

    pub fn is_meet_prime(&self, q: usize) -> bool {
        q != self.top
            && (0..self.size)
                .all(|l| self.leq(l, q) || (0..self.size).all(|m| self.leq(m, q) || !self.leq(self.meet(l, m), q)))
    }

    /// All meet-prime elements, in index order.
    pub fn meet_primes(&self) -> Vec<FramePoint> {
        (0..self.size).filter(|&q| self.is_meet_prime(q)).map(|q| FramePoint { meet_prime_index: q }).collect()
    }

    /// `U(a)` as a set over the positions of [`Self::meet_primes`].
    pub fn basic_open(&self, points: &[FramePoint], a: usize) -> PointSet {
        PointSet::from_iter(points.iter().enumerate().filter(|(_, p)| p.value(self, a)).map(|(i, _)| i))
    }

    /// The space of points with opens generated by all `U(a)`.
    pub fn point_space(&self) -> FiniteTopSpace {
        let points = self.meet_primes();
        let labels = points.iter().map(|p| self.labels[p.meet_prime_index].clone()).collect();
        let basis: Vec<PointSet> = (0..self.size).map(|a| self.basic_open(&points, a)).collect();
        FiniteTopSpace::generated_by(labels, &basis).expect("at most 64 points")
    }

    /// Pairs `m ≰ n` not separated by any point.
    pub fn check_spatial(&self) -> (bool, Vec<(usize, usize)>) {
        let points = self.meet_primes();
        let mut bad = Vec::new();
        for m in 0..self.size {
            for n in 0..self.size {
                if self.leq(m, n) {
                    continue;
                }
                if !points.iter().any(|p| p.value(self, m) && !p.value(self, n)) {
                    bad.push((m, n));
                }
            }
        }
        (bad.is_empty(), bad)
    }

    /// Checks `a -> U(a)` against the open-set frame of the point space.
    pub fn embedding_report(&self) -> EmbeddingReport {
        let points = self.meet_primes();
        let u: Vec<PointSet> = (0..self.size).map(|a| self.basic_open(&points, a)).collect();
        let space = self.point_space();
        let mut injective = true;
        let mut preserves_joins = true;
        let mut preserves_meets = true;
        for a in 0..self.size {
            for b in 0..self.size {
                if a != b && u[a] == u[b] {
                    injective = false;
                }
                if u[self.join(a, b)] != u[a].union(u[b]) {
                    preserves_joins = false;
                }
                if u[self.meet(a, b)] != u[a].intersection(u[b]) {
                    preserves_meets = false;
                }
            }
        }
        preserves_joins &= u[self.bottom].is_empty();
        preserves_meets &= u[self.top] == PointSet::full(points.len());
        let surjective = space.opens().iter().all(|o| u.contains(o));
        EmbeddingReport { injective, preserves_joins, preserves_meets, surjective }
    }

    /// Compact elements. A cover of `a` in a finite frame is a finite
    /// family and so its own finite subcover; the scan confirms that `a` is
    /// the finite join of the elements below it.
    pub fn compact_elements(&self) -> Vec<usize> {
        (0..self.size).filter(|&a| self.join_all((0..self.size).filter(|&b| self.leq(b, a))) == a).collect()
    }

    /// Coherence with respect to a designated set of compact elements.
    pub fn check_coherent(&self, designated: &[usize]) -> CoherenceReport {
        let is_designated = |x: usize| designated.contains(&x);
        let ungenerated: Vec<usize> = (0..self.size)
            .filter(|&a| self.join_all(designated.iter().copied().filter(|&d| self.leq(d, a))) != a)
            .collect();
        let mut meet_failures = Vec::new();
        for &a in designated {
            for &b in designated {
                if a < b && !is_designated(self.meet(a, b)) {
                    meet_failures.push((a, b));
                }
            }
        }
        let compact = self.compact_elements();
        CoherenceReport {
            generates: ungenerated.is_empty(),
            meet_closed: meet_failures.is_empty(),
            contains_top: is_designated(self.top),
            all_compact: designated.iter().all(|d| compact.contains(d)),
            ungenerated,
            meet_failures,
        }
    }

    /// Complemented elements as `(a, complement)` pairs.
    pub fn complemented_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.size {
            for b in 0..self.size {
                if self.meet(a, b) == self.bottom && self.join(a, b) == self.top {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Cover relations `(lower, upper)` of the Hasse diagram.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for a in 0..self.size {
            for b in 0..self.size {
                if a == b || !self.leq(a, b) {
                    continue;
                }
                let covered = (0..self.size).any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b));
                if !covered {
                    edges.push((a, b));
                }
            }
        }
        edges
    }

    /// Hasse diagram in DOT, nodes in index order, bottom-up.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"{}\" {{", escape(name));
        let _ = writeln!(out, "  rankdir=BT;");
        let _ = writeln!(out, "  node [shape=box];");
        for (i, l) in self.labels.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", escape(l));
        }
        for (a, b) in self.hasse_edges() {
            let _ = writeln!(out, "  n{a} -> n{b};");
        }
        out.push_str("}\n");
        out
    }

    /// Whether `map` (self -> other) is an order isomorphism.
    pub fn is_isomorphism_to(&self, other: &FiniteFrame, map: &[usize]) -> bool {
        if self.size != other.size || map.len() != self.size {
            return false;
        }
        let mut seen = vec![false; other.size];
        for &m in map {
            if m >= other.size || seen[m] {
                return false;
            }
            seen[m] = true;
        }
        (0..self.size).all(|a| (0..self.size).all(|b| self.leq(a, b) == other.leq(map[a], map[b])))
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// A set of points of a finite space (at most 64 points).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PointSet(pub u64);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    pub fn full(n: usize) -> Self {
        assert!(n <= 64);
        if n == 64 {
            PointSet(u64::MAX)
        } else {
            PointSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        PointSet(1 << i)
    }

    pub fn contains(&self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn union(self, o: Self) -> Self {
        PointSet(self.0 | o.0)
    }

    pub fn intersection(self, o: Self) -> Self {
        PointSet(self.0 & o.0)
    }

    pub fn complement(self, n: usize) -> Self {
        PointSet(!self.0 & Self::full(n).0)
    }

    pub fn is_subset(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.0 >> i & 1 == 1)
    }
}

impl FromIterator<usize> for PointSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        PointSet(iter.into_iter().fold(0, |acc, i| {
            assert!(i < 64, "point index {i} out of range");
            acc | 1 << i
        }))
    }
}

/// A finite topological space; opens sorted by (size, bits).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTopSpace {
    points: Vec<String>,
    opens: Vec<PointSet>,
}

/// The four conditions of a spectral space, for a finite space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralSpaceReport {
    pub t0: bool,
    pub quasi_compact: bool,
    pub basis_closed_under_intersection: bool,
    pub sober: bool,
    /// Two distinct points with the same neighbourhoods.
    pub t0_witness: Option<(usize, usize)>,
    /// An irreducible closed set that is not the closure of exactly one point.
    pub sober_witness: Option<PointSet>,
}

impl SpectralSpaceReport {
    pub fn passed(&self) -> bool {
        self.t0 && self.quasi_compact && self.basis_closed_under_intersection && self.sober
    }
}

impl FiniteTopSpace {
    /// Validates that `opens` is a topology on `points`.
    pub fn new(points: Vec<String>, opens: Vec<PointSet>) -> Result<Self> {
        let n = points.len();
        if n > 64 {
            return Err(Error::InvalidTopology(format!("{n} points exceed 64")));
        }
        let full = PointSet::full(n);
        let mut opens = opens;
        opens.sort_by_key(|o| (o.len(), o.0));
        opens.dedup();
        if opens.iter().any(|o| !o.is_subset(full)) {
            return Err(Error::InvalidTopology("open set mentions unknown points".into()));
        }
        if !opens.contains(&PointSet::EMPTY) || !opens.contains(&full) {
            return Err(Error::InvalidTopology("missing the empty set or the whole space".into()));
        }
        for &a in &opens {
            for &b in &opens {
                if !opens.contains(&a.union(b)) || !opens.contains(&a.intersection(b)) {
                    return Err(Error::InvalidTopology(format!(
                        "not closed under union/intersection at {:#b}, {:#b}",
                        a.0, b.0
                    )));
                }
            }
        }
        Ok(FiniteTopSpace { points, opens })
    }

    /// The topology generated by a subbasis.
    pub fn generated_by(points: Vec<String>, subbasis: &[PointSet]) -> Result<Self> {
        let n = points.len();
        if n > 64 {
            return Err(Error::InvalidTopology(format!("{n} points exceed 64")));
        }
        let full = PointSet::full(n);
        let mut basis: Vec<PointSet> = vec![full];
        for &s in subbasis {
            let extra: Vec<PointSet> = basis.iter().map(|b| b.intersection(s)).collect();
            for e in extra {
                if !basis.contains(&e) {
                    basis.push(e);
                }
            }
        }
        let mut opens = vec![PointSet::EMPTY];
        for &b in &basis {
            let extra: Vec<PointSet> = opens.iter().map(|o| o.union(b)).collect();
            for e in extra {
                if !opens.contains(&e) {
                    opens.push(e);
                }
            }
        }
        Self::new(points, opens)
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    pub fn opens(&self) -> &[PointSet] {
        &self.opens
    }

    pub fn is_open(&self, s: PointSet) -> bool {
        self.opens.contains(&s)
    }

    pub fn closed_sets(&self) -> Vec<PointSet> {
        let n = self.points.len();
        let mut c: Vec<PointSet> = self.opens.iter().map(|o| o.complement(n)).collect();
        c.sort_by_key(|o| (o.len(), o.0));
        c
    }

    pub fn closure(&self, s: PointSet) -> PointSet {
        self.closed_sets()
            .into_iter()
            .filter(|c| s.is_subset(*c))
            .fold(PointSet::full(self.points.len()), |a, c| a.intersection(c))
    }

    /// Whether the space is connected, returning a nontrivial clopen if not.
    pub fn nontrivial_clopen(&self) -> Option<PointSet> {
        let n = self.points.len();
        self.opens.iter().copied().find(|&o| !o.is_empty() && o != PointSet::full(n) && self.is_open(o.complement(n)))
    }

    /// Nonempty, and no two nonempty opens are disjoint.
    pub fn is_irreducible(&self) -> bool {
        !self.points.is_empty()
            && self
                .opens
                .iter()
                .all(|&a| a.is_empty() || self.opens.iter().all(|&b| b.is_empty() || !a.intersection(b).is_empty()))
    }

    /// The open-set frame, elements in the stored order of `opens`.
    pub fn open_frame(&self) -> FiniteFrame {
        let labels = self.opens.iter().map(|o| self.describe(*o)).collect();
        FiniteFrame::from_order(labels, |a, b| self.opens[a].is_subset(self.opens[b])).expect("opens form a lattice")
    }

    pub fn describe(&self, s: PointSet) -> String {
        let names: Vec<&str> = s.iter().map(|i| self.points[i].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }

    /// T0, quasi-compactness, compact-open basis closed under intersection,
    /// and sobriety, each computed by direct scan.
    pub fn check_spectral_space(&self) -> SpectralSpaceReport {
        let n = self.points.len();
        let full = PointSet::full(n);

        let mut t0_witness = None;
        'outer: for p in 0..n {
            for q in p + 1..n {
                if self.opens.iter().all(|o| o.contains(p) == o.contains(q)) {
                    t0_witness = Some((p, q));
                    break 'outer;
                }
            }
        }

        // An open cover is a subfamily of the finite list `opens`; the space
        // is quasi-compact iff every cover of the whole space has a finite
        // subcover, and here each cover already is finite. What remains to
        // check is that the whole space is itself open.
        let quasi_compact = self.is_open(full);

        // Compact opens: opens U such that every cover of U by opens has a
        // finite subcover. With finitely many opens that is all of them, so
        // the basis condition is closure of the opens under intersection and
        // the fact that they cover every open.
        let compact: Vec<PointSet> = self.opens.clone();
        let basis_closed_under_intersection =
            compact.iter().all(|&a| compact.iter().all(|&b| compact.contains(&a.intersection(b))))
                && self.opens.iter().all(|&o| {
                    compact.iter().filter(|c| c.is_subset(o)).fold(PointSet::EMPTY, |acc, &c| acc.union(c)) == o
                });

        let closed = self.closed_sets();
        let point_closures: Vec<PointSet> = (0..n).map(|p| self.closure(PointSet::singleton(p))).collect();
        let mut sober_witness = None;
        for &c in &closed {
            if c.is_empty() {
                continue;
            }
            let proper: Vec<PointSet> = closed.iter().copied().filter(|&d| d.is_subset(c) && d != c).collect();
            let reducible = proper.iter().any(|&a| proper.iter().any(|&b| a.union(b) == c));
            if reducible {
                continue;
            }
            let generic = point_closures.iter().filter(|&&pc| pc == c).count();
            if generic != 1 {
                sober_witness = Some(c);
                break;
            }
        }

        SpectralSpaceReport {
            t0: t0_witness.is_none(),
            quasi_compact,
            basis_closed_under_intersection,
            sober: sober_witness.is_none(),
            t0_witness,
            sober_witness,
        }
    }
}
