//! Finite commutative rings as addition and multiplication tables, with an
//! exhaustive ideal calculus and the Zariski frame of radical ideals.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use crate::elemset::{ElemSet, MAX_ELEMS};
use crate::error::{Error, Result};
use crate::frame::FiniteFrame;

/// Largest ring accepted as a table.
///
/// Large enough for `(Z/15)[t]/(t^2 - 2t)`, the biggest Burnside level
/// constructed here.
pub const MAX_RING_SIZE: usize = MAX_ELEMS;

/// A finite commutative ring with unit. Zero is index 0 and one is index 1
/// (both 0 for the zero ring).
#[derive(Debug, Clone)]
pub struct FiniteCommRing {
    name: String,
    size: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
    neg: Vec<usize>,
    labels: Vec<String>,
    fingerprint: u64,
    principal: OnceLock<Vec<ElemSet>>,
    ideals: OnceLock<Vec<ElemSet>>,
}

/// An ideal of a [`FiniteCommRing`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RingIdeal {
    ring: u64,
    members: ElemSet,
}

impl RingIdeal {
    pub fn members(&self) -> ElemSet {
        self.members
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_subset(&self, other: &RingIdeal) -> bool {
        self.members.is_subset(&other.members)
    }
}

/// A unital ring homomorphism between table rings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingHom {
    map: Vec<usize>,
}

impl RingHom {
    pub fn new(source: &FiniteCommRing, target: &FiniteCommRing, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.size() {
            return Err(Error::InvalidHom(format!("map has {} entries, source has {}", map.len(), source.size())));
        }
        if let Some(&v) = map.iter().find(|&&v| v >= target.size()) {
            return Err(Error::InvalidHom(format!("image {v} out of range")));
        }
        if map[source.zero()] != target.zero() || map[source.one()] != target.one() {
            return Err(Error::InvalidHom("zero or one not preserved".into()));
        }
        for a in 0..source.size() {
            for b in 0..source.size() {
                if map[source.add(a, b)] != target.add(map[a], map[b]) {
                    return Err(Error::InvalidHom(format!("addition not preserved at ({a}, {b})")));
                }
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(Error::InvalidHom(format!("multiplication not preserved at ({a}, {b})")));
                }
            }
        }
        Ok(RingHom { map })
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn table(&self) -> &[usize] {
        &self.map
    }

    pub fn is_bijective(&self, target: &FiniteCommRing) -> bool {
        self.map.len() == target.size() && self.map.iter().copied().collect::<ElemSet>().len() == target.size()
    }
}

impl FiniteCommRing {
    /// Builds a ring from full tables, checking every commutative ring axiom.
    pub fn from_tables(
        name: &str,
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let size = add.len();
        if size == 0 || size > MAX_RING_SIZE {
            return Err(Error::InvalidRing(format!("size {size} outside 1..={MAX_RING_SIZE}")));
        }
        if mul.len() != size {
            return Err(Error::InvalidRing("add and mul tables differ in size".into()));
        }
        let flatten = |t: Vec<Vec<usize>>, what: &str| -> Result<Vec<usize>> {
            let mut flat = Vec::with_capacity(size * size);
            for (i, row) in t.into_iter().enumerate() {
                if row.len() != size {
                    return Err(Error::InvalidRing(format!("{what} row {i} has wrong length")));
                }
                if row.iter().any(|&v| v >= size) {
                    return Err(Error::InvalidRing(format!("{what} row {i} has an entry out of range")));
                }
                flat.extend(row);
            }
            Ok(flat)
        };
        let add = flatten(add, "add")?;
        let mul = flatten(mul, "mul")?;
        let labels = labels.unwrap_or_else(|| (0..size).map(|i| i.to_string()).collect());
        Self::from_flat(name, size, add, mul, labels)
    }

    fn from_flat(name: &str, size: usize, add: Vec<usize>, mul: Vec<usize>, labels: Vec<String>) -> Result<Self> {
        if labels.len() != size {
            return Err(Error::InvalidRing(format!("{} labels for {size} elements", labels.len())));
        }
        let one = if size == 1 { 0 } else { 1 };
        let at = |t: &[usize], a: usize, b: usize| t[a * size + b];
        for a in 0..size {
            if at(&add, 0, a) != a {
                return Err(Error::InvalidRing(format!("index 0 is not additive identity (at {a})")));
            }
            if at(&mul, one, a) != a {
                return Err(Error::InvalidRing(format!("index {one} is not multiplicative identity (at {a})")));
            }
            for b in 0..size {
                if at(&add, a, b) != at(&add, b, a) {
                    return Err(Error::InvalidRing(format!("addition not commutative at ({a}, {b})")));
                }
                if at(&mul, a, b) != at(&mul, b, a) {
                    return Err(Error::InvalidRing(format!("multiplication not commutative at ({a}, {b})")));
                }
            }
        }
        let mut neg = vec![usize::MAX; size];
        for a in 0..size {
            match (0..size).find(|&b| at(&add, a, b) == 0) {
                Some(b) => neg[a] = b,
                None => return Err(Error::InvalidRing(format!("element {a} has no additive inverse"))),
            }
        }
        for a in 0..size {
            for b in 0..size {
                let ab_add = at(&add, a, b);
                let ab_mul = at(&mul, a, b);
                for c in 0..size {
                    if at(&add, ab_add, c) != at(&add, a, at(&add, b, c)) {
                        return Err(Error::InvalidRing(format!("addition not associative at ({a}, {b}, {c})")));
                    }
                    if at(&mul, ab_mul, c) != at(&mul, a, at(&mul, b, c)) {
                        return Err(Error::InvalidRing(format!("multiplication not associative at ({a}, {b}, {c})")));
                    }
                    if at(&mul, a, at(&add, b, c)) != at(&add, ab_mul, at(&mul, a, c)) {
                        return Err(Error::InvalidRing(format!("not distributive at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let mut hasher = DefaultHasher::new();
        size.hash(&mut hasher);
        add.hash(&mut hasher);
        mul.hash(&mut hasher);
        Ok(FiniteCommRing {
            name: name.to_string(),
            size,
            add,
            mul,
            neg,
            labels,
            fingerprint: hasher.finish(),
            principal: OnceLock::new(),
            ideals: OnceLock::new(),
        })
    }

    /// Builds a ring on `n` "natural" indices, moving `zero` to index 0 and
    /// `one` to index 1 and keeping the remaining elements in natural order.
    /// Returns the ring and the map natural index -> ring index.
    fn from_natural(
        name: &str,
        n: usize,
        zero: usize,
        one: usize,
        labels: Vec<String>,
        add: impl Fn(usize, usize) -> usize,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Result<(Self, Vec<usize>)> {
        if n > MAX_RING_SIZE {
            return Err(Error::Unsupported(format!("ring of size {n} exceeds {MAX_RING_SIZE}")));
        }
        let mut order = vec![zero];
        if one != zero {
            order.push(one);
        }
        order.extend((0..n).filter(|&i| i != zero && i != one));
        let mut pos = vec![0; n];
        for (i, &nat) in order.iter().enumerate() {
            pos[nat] = i;
        }
        let mut add_t = vec![0; n * n];
        let mut mul_t = vec![0; n * n];
        for (i, &a) in order.iter().enumerate() {
            for (j, &b) in order.iter().enumerate() {
                add_t[i * n + j] = pos[add(a, b)];
                mul_t[i * n + j] = pos[mul(a, b)];
            }
        }
        let labels = order.iter().map(|&i| labels[i].clone()).collect();
        Ok((Self::from_flat(name, n, add_t, mul_t, labels)?, pos))
    }

    /// The integers modulo `n`, residue `i` at index `i`.
    pub fn zmod(n: usize) -> Result<Self> {
        if !(1..=64).contains(&n) {
            return Err(Error::Unsupported(format!("zmod {n}: modulus must be in 1..=64")));
        }
        let labels = (0..n).map(|i| i.to_string()).collect();
        let (ring, _) =
            Self::from_natural(&format!("Z/{n}"), n, 0, 1 % n, labels, |a, b| (a + b) % n, |a, b| (a * b) % n)?;
        Ok(ring)
    }

    pub fn zero_ring() -> Self {
        Self::zmod(1).expect("Z/1 is valid")
    }

    /// The finite field with `q` elements, `q` in {2, 3, 4, 5, 7, 8, 9}.
    ///
    /// Element `sum a_i x^i` sits at index `sum a_i p^i`, reducing modulo
    /// x^2+x+1 (q=4), x^3+x+1 (q=8) or x^2+1 (q=9).
    pub fn gf(q: usize) -> Result<Self> {
        // (p, coefficients r with x^d = sum r_i x^i)
        let (p, reduction): (usize, Vec<usize>) = match q {
            2 | 3 | 5 | 7 => (q, vec![]),
            4 => (2, vec![1, 1]),
            8 => (2, vec![1, 1, 0]),
            9 => (3, vec![2, 0]),
            _ => return Err(Error::Unsupported(format!("gf {q}: supported orders are 2,3,4,5,7,8,9"))),
        };
        let d = reduction.len().max(1);
        let digits = |mut x: usize| -> Vec<usize> {
            (0..d)
                .map(|_| {
                    let c = x % p;
                    x /= p;
                    c
                })
                .collect()
        };
        let undigits = |c: &[usize]| c.iter().rev().fold(0, |acc, &v| acc * p + v);
        let add = |a: usize, b: usize| {
            let (da, db) = (digits(a), digits(b));
            undigits(&da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect::<Vec<_>>())
        };
        let mul = |a: usize, b: usize| {
            let (da, db) = (digits(a), digits(b));
            let mut prod = vec![0; 2 * d];
            for (i, x) in da.iter().enumerate() {
                for (j, y) in db.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            for deg in (d..2 * d).rev() {
                let c = prod[deg];
                if c == 0 || reduction.is_empty() {
                    continue;
                }
                prod[deg] = 0;
                for (i, r) in reduction.iter().enumerate() {
                    prod[deg - d + i] = (prod[deg - d + i] + c * r) % p;
                }
            }
            undigits(&prod[..d])
        };
        let labels = (0..q)
            .map(|x| {
                if d == 1 {
                    return x.to_string();
                }
                let terms: Vec<String> = digits(x)
                    .iter()
                    .enumerate()
                    .rev()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &c)| match (i, c) {
                        (0, c) => c.to_string(),
                        (1, 1) => "x".to_string(),
                        (1, c) => format!("{c}x"),
                        (i, 1) => format!("x^{i}"),
                        (i, c) => format!("{c}x^{i}"),
                    })
                    .collect();
                if terms.is_empty() {
                    "0".to_string()
                } else {
                    terms.join("+")
                }
            })
            .collect();
        let (ring, _) = Self::from_natural(&format!("GF({q})"), q, 0, 1, labels, add, mul)?;
        Ok(ring)
    }

    /// `base[t]/(t^2 - c1 t - c0)` with `a + b t` at index `a + b |base|`.
    pub fn poly_quot(base: &FiniteCommRing, c0: usize, c1: usize) -> Result<Self> {
        let n = base.size();
        if c0 >= n || c1 >= n {
            return Err(Error::Unsupported("relation coefficient out of range".into()));
        }
        let split = |x: usize| (x % n, x / n);
        let add = |x: usize, y: usize| {
            let ((a, b), (c, d)) = (split(x), split(y));
            base.add(a, c) + n * base.add(b, d)
        };
        // (a + bt)(c + dt) = ac + (ad + bc) t + bd t^2, with t^2 = c1 t + c0
        let mul = |x: usize, y: usize| {
            let ((a, b), (c, d)) = (split(x), split(y));
            let bd = base.mul(b, d);
            let constant = base.add(base.mul(a, c), base.mul(bd, c0));
            let linear = base.add(base.add(base.mul(a, d), base.mul(b, c)), base.mul(bd, c1));
            constant + n * linear
        };
        let labels = (0..n * n)
            .map(|x| {
                let (a, b) = split(x);
                match (a, b) {
                    (_, 0) => base.label(a).to_string(),
                    (0, 1) => "t".to_string(),
                    (0, _) => format!("{}t", base.label(b)),
                    (_, 1) => format!("{}+t", base.label(a)),
                    _ => format!("{}+{}t", base.label(a), base.label(b)),
                }
            })
            .collect();
        let rel = match (c1, c0) {
            (0, 0) => "t2=0".to_string(),
            (c1, 0) => format!("t2={}t", base.label(c1)),
            (0, c0) => format!("t2={}", base.label(c0)),
            (c1, c0) => format!("t2={}t+{}", base.label(c1), base.label(c0)),
        };
        let one = if n == 1 { 0 } else { base.one() };
        let (ring, _) = Self::from_natural(&format!("{}[t]/({rel})", base.name()), n * n, 0, one, labels, add, mul)?;
        Ok(ring)
    }

    /// `a x b` with pair `(x, y)` at natural index `x + y |a|`, then
    /// canonicalized. Returns the ring and the natural-to-ring index map.
    pub fn product(a: &FiniteCommRing, b: &FiniteCommRing) -> Result<(Self, Vec<usize>)> {
        let n = a.size();
        let split = |x: usize| (x % n, x / n);
        let labels = (0..n * b.size())
            .map(|x| {
                let (p, q) = split(x);
                format!("({},{})", a.label(p), b.label(q))
            })
            .collect();
        let one = a.one() + n * b.one();
        Self::from_natural(
            &format!("{}x{}", a.name(), b.name()),
            n * b.size(),
            0,
            one,
            labels,
            |x, y| {
                let ((p, q), (r, s)) = (split(x), split(y));
                a.add(p, r) + n * b.add(q, s)
            },
            |x, y| {
                let ((p, q), (r, s)) = (split(x), split(y));
                a.mul(p, r) + n * b.mul(q, s)
            },
        )
    }

    /// Index of the pair `(x, y)` in `product(a, b)`.
    pub fn product_index(a: &FiniteCommRing, natural_to_ring: &[usize], x: usize, y: usize) -> usize {
        natural_to_ring[x + a.size() * y]
    }

    /// `R / I`, cosets ordered by their least representative. Returns the
    /// quotient and the projection table `R -> R/I`.
    pub fn quotient(&self, ideal: &ElemSet) -> Result<(Self, Vec<usize>)> {
        if !self.is_ideal(ideal) {
            return Err(Error::InvalidIdeal("quotient by a non-ideal".into()));
        }
        let mut proj = vec![usize::MAX; self.size];
        let mut reps = Vec::new();
        for x in 0..self.size {
            if proj[x] != usize::MAX {
                continue;
            }
            let class = reps.len();
            reps.push(x);
            for i in ideal.iter() {
                proj[self.add(x, i)] = class;
            }
        }
        let k = reps.len();
        let labels: Vec<String> = reps.iter().map(|&r| format!("[{}]", self.label(r))).collect();
        let one = if k == 1 { 0 } else { 1 };
        let name = format!(
            "{}/({})",
            self.name,
            ideal.iter().map(|x| self.label(x).to_string()).collect::<Vec<_>>().join(",")
        );
        let (ring, _) = Self::from_natural(
            &name,
            k,
            0,
            one,
            labels,
            |a, b| proj[self.add(reps[a], reps[b])],
            |a, b| proj[self.mul(reps[a], reps[b])],
        )?;
        Ok((ring, proj))
    }

    /// Materializes a subring. Elements keep the order of their parent
    /// indices; returns the subring and its embedding (subring -> parent).
    pub fn subring(&self, name: &str, members: &ElemSet) -> Result<(Self, Vec<usize>)> {
        let embed = members.to_vec();
        if embed.first() != Some(&0) || (self.size > 1 && embed.get(1) != Some(&1)) {
            return Err(Error::InvalidRing("subring must contain zero and one".into()));
        }
        let mut pos = vec![usize::MAX; self.size];
        for (i, &x) in embed.iter().enumerate() {
            pos[x] = i;
        }
        let k = embed.len();
        let mut add = Vec::with_capacity(k * k);
        let mut mul = Vec::with_capacity(k * k);
        for &a in &embed {
            for &b in &embed {
                let (s, p) = (pos[self.add(a, b)], pos[self.mul(a, b)]);
                if s == usize::MAX || p == usize::MAX {
                    return Err(Error::InvalidRing("subset is not closed under the ring operations".into()));
                }
                add.push(s);
                mul.push(p);
            }
        }
        let labels = embed.iter().map(|&x| self.label(x).to_string()).collect();
        Ok((Self::from_flat(name, k, add, mul, labels)?, embed))
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn one(&self) -> usize {
        if self.size == 1 {
            0
        } else {
            1
        }
    }

    pub fn is_zero_ring(&self) -> bool {
        self.size == 1
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size + b]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b]
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg[b])
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.one(), |acc, _| self.mul(acc, a))
    }

    /// `k * a`, repeated addition.
    pub fn scale(&self, k: usize, a: usize) -> usize {
        (0..k).fold(self.zero(), |acc, _| self.add(acc, a))
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn element_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn add_table(&self) -> Vec<Vec<usize>> {
        self.add.chunks(self.size).map(|r| r.to_vec()).collect()
    }

    pub fn mul_table(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.size).map(|r| r.to_vec()).collect()
    }

    /// Whether two rings have identical tables (names and labels ignored).
    pub fn same_tables(&self, other: &FiniteCommRing) -> bool {
        self.size == other.size && self.add == other.add && self.mul == other.mul
    }

    pub fn is_automorphism(&self, map: &[usize]) -> bool {
        RingHom::new(self, self, map.to_vec()).is_ok_and(|h| h.is_bijective(self))
    }

    /// `x -> x^p` where `p` is the characteristic (a ring endomorphism of any
    /// finite field).
    pub fn frobenius(&self) -> Vec<usize> {
        let p = self.characteristic();
        (0..self.size).map(|x| self.pow(x, p)).collect()
    }

    pub fn characteristic(&self) -> usize {
        if self.size == 1 {
            return 1;
        }
        let mut acc = self.one();
        let mut k = 1;
        while acc != 0 {
            acc = self.add(acc, self.one());
            k += 1;
        }
        k
    }

    pub fn ideal(&self, members: ElemSet) -> Result<RingIdeal> {
        if !self.is_ideal(&members) {
            return Err(Error::InvalidIdeal(format!("{:?} is not an ideal of {}", members, self.name)));
        }
        Ok(RingIdeal { ring: self.fingerprint, members })
    }

    fn wrap(&self, members: ElemSet) -> RingIdeal {
        RingIdeal { ring: self.fingerprint, members }
    }

    fn check(&self, i: &RingIdeal) -> Result<()> {
        if i.ring == self.fingerprint {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn is_ideal(&self, set: &ElemSet) -> bool {
        if !set.contains(0) || set.iter().any(|x| x >= self.size) {
            return false;
        }
        set.iter().all(|a| {
            set.iter().all(|b| set.contains(self.add(a, b))) && (0..self.size).all(|r| set.contains(self.mul(r, a)))
        })
    }

    /// `(a) = { r a }`.
    pub fn principal_set(&self, a: usize) -> ElemSet {
        self.principal
            .get_or_init(|| (0..self.size).map(|x| (0..self.size).map(|r| self.mul(r, x)).collect()).collect())[a]
    }

    /// `I + J` for ideals given as sets.
    pub fn sum_sets(&self, i: &ElemSet, j: &ElemSet) -> ElemSet {
        if i.is_subset(j) {
            return *j;
        }
        if j.is_subset(i) {
            return *i;
        }
        let mut out = ElemSet::new();
        for a in i.iter() {
            for b in j.iter() {
                out.insert(self.add(a, b));
            }
        }
        out
    }

    /// Smallest ideal containing `set`.
    pub fn ideal_closure(&self, set: &ElemSet) -> ElemSet {
        set.iter().fold(ElemSet::singleton(0), |acc, x| {
            if acc.contains(x) {
                acc
            } else {
                self.sum_sets(&acc, &self.principal_set(x))
            }
        })
    }

    /// Ideal generated by all pairwise products.
    pub fn product_sets(&self, i: &ElemSet, j: &ElemSet) -> ElemSet {
        let mut prods = ElemSet::new();
        for a in i.iter() {
            for b in j.iter() {
                prods.insert(self.mul(a, b));
            }
        }
        self.ideal_closure(&prods)
    }

    /// `{ x : x^k in I for some 1 <= k <= |R| }`.
    pub fn radical_set(&self, i: &ElemSet) -> ElemSet {
        (0..self.size)
            .filter(|&x| {
                let mut p = x;
                for _ in 0..self.size {
                    if i.contains(p) {
                        return true;
                    }
                    p = self.mul(p, x);
                }
                false
            })
            .collect()
    }

    /// All ideals as sets, ordered by size then member list.
    pub fn ideal_sets(&self) -> &[ElemSet] {
        self.ideals.get_or_init(|| {
            let mut found: Vec<ElemSet> = Vec::new();
            for x in 0..self.size {
                let p = self.principal_set(x);
                if !found.contains(&p) {
                    found.push(p);
                }
            }
            let mut i = 0;
            while i < found.len() {
                for j in 0..=i {
                    let s = self.sum_sets(&found[i], &found[j]);
                    if !found.contains(&s) {
                        found.push(s);
                    }
                }
                i += 1;
            }
            sort_canonical(&mut found);
            found
        })
    }

    pub fn ideals(&self) -> Vec<RingIdeal> {
        self.ideal_sets().iter().map(|&s| self.wrap(s)).collect()
    }

    pub fn zero_ideal(&self) -> RingIdeal {
        self.wrap(ElemSet::singleton(0))
    }

    pub fn unit_ideal(&self) -> RingIdeal {
        self.wrap(ElemSet::full(self.size))
    }

    pub fn principal_ideal(&self, a: usize) -> RingIdeal {
        self.wrap(self.principal_set(a))
    }

    pub fn radical(&self, i: &RingIdeal) -> Result<RingIdeal> {
        self.check(i)?;
        Ok(self.wrap(self.radical_set(&i.members)))
    }

    pub fn ideal_sum(&self, i: &RingIdeal, j: &RingIdeal) -> Result<RingIdeal> {
        self.check(i)?;
        self.check(j)?;
        Ok(self.wrap(self.sum_sets(&i.members, &j.members)))
    }

    pub fn ideal_product(&self, i: &RingIdeal, j: &RingIdeal) -> Result<RingIdeal> {
        self.check(i)?;
        self.check(j)?;
        Ok(self.wrap(self.product_sets(&i.members, &j.members)))
    }

    pub fn ideal_intersect(&self, i: &RingIdeal, j: &RingIdeal) -> Result<RingIdeal> {
        self.check(i)?;
        self.check(j)?;
        Ok(self.wrap(i.members.intersection(&j.members)))
    }

    pub fn is_prime_set(&self, p: &ElemSet) -> bool {
        p.len() < self.size
            && (0..self.size)
                .all(|x| p.contains(x) || (0..self.size).all(|y| p.contains(y) || !p.contains(self.mul(x, y))))
    }

    /// All prime ideals, by exhaustive pair check over every proper ideal.
    pub fn primes(&self) -> Vec<RingIdeal> {
        self.ideal_sets().iter().filter(|p| self.is_prime_set(p)).map(|&p| self.wrap(p)).collect()
    }

    pub fn nilradical(&self) -> RingIdeal {
        self.wrap(self.radical_set(&ElemSet::singleton(0)))
    }

    pub fn radical_ideals(&self) -> Vec<RingIdeal> {
        self.ideal_sets().iter().filter(|i| self.radical_set(i) == **i).map(|&i| self.wrap(i)).collect()
    }

    /// The frame of radical ideals: meet is intersection, join is the radical
    /// of the sum. Element `i` of the frame is `zariski_frame().0[i]`.
    pub fn zariski_frame(&self) -> (Vec<RingIdeal>, FiniteFrame) {
        let ideals = self.radical_ideals();
        let labels = ideals.iter().map(|i| self.describe(&i.members)).collect();
        let frame = FiniteFrame::from_order(labels, |a, b| ideals[a].members.is_subset(&ideals[b].members))
            .expect("inclusion order on radical ideals is a lattice");
        (ideals, frame)
    }

    /// Short human-readable description of an element subset.
    pub fn describe(&self, set: &ElemSet) -> String {
        let members: Vec<&str> = set.iter().map(|x| self.label(x)).collect();
        format!("{{{}}}", members.join(","))
    }
}

/// Canonical order on element subsets: by size, then by sorted member list.
pub fn sort_canonical(sets: &mut [ElemSet]) {
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.to_vec().cmp(&b.to_vec())));
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> ElemSet {
        xs.iter().copied().collect()
    }

    /// Oracle: ideals as all subsets passing the ideal test (tiny rings only).
    fn ideals_by_subset_scan(r: &FiniteCommRing) -> Vec<ElemSet> {
        let n = r.size();
        let mut out: Vec<ElemSet> = (0u32..1 << n)
            .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect::<ElemSet>())
            .filter(|s| r.is_ideal(s))
            .collect();
        sort_canonical(&mut out);
        out
    }

    #[test]
    fn zmod_basics() {
        let z1 = FiniteCommRing::zmod(1).unwrap();
        assert!(z1.is_zero_ring());
        assert_eq!(z1.one(), 0);
        let z2 = FiniteCommRing::zmod(2).unwrap();
        assert_eq!(z2.ideals().len(), 2);
        assert!(FiniteCommRing::zmod(0).is_err());
        assert!(FiniteCommRing::zmod(65).is_err());
        let z6 = FiniteCommRing::zmod(6).unwrap();
        assert_eq!(z6.mul(2, 3), 0);
        assert_eq!(z6.label(5), "5");
    }

    #[test]
    fn ideal_enumeration_matches_subset_scan() {
        for n in 1..=12 {
            let r = FiniteCommRing::zmod(n).unwrap();
            assert_eq!(r.ideal_sets(), ideals_by_subset_scan(&r).as_slice(), "Z/{n}");
        }
        let z6 = FiniteCommRing::zmod(6).unwrap();
        assert_eq!(z6.ideal_sets(), &[set(&[0]), set(&[0, 3]), set(&[0, 2, 4]), ElemSet::full(6)]);
        let z4 = FiniteCommRing::zmod(4).unwrap();
        assert_eq!(z4.ideal_sets(), &[set(&[0]), set(&[0, 2]), ElemSet::full(4)]);
        for q in [2, 3, 4, 5, 7, 8] {
            assert_eq!(FiniteCommRing::gf(q).unwrap().ideal_sets().len(), 2);
        }
    }

    #[test]
    fn radicals() {
        let z4 = FiniteCommRing::zmod(4).unwrap();
        assert_eq!(z4.nilradical().members(), set(&[0, 2]));
        let z6 = FiniteCommRing::zmod(6).unwrap();
        assert_eq!(z6.nilradical().members(), set(&[0]));
        for i in z6.ideals() {
            let r = z6.radical(&i).unwrap();
            assert!(i.is_subset(&r));
            assert_eq!(z6.radical(&r).unwrap(), r);
        }
    }

    #[test]
    fn products_sums_intersections() {
        let z6 = FiniteCommRing::zmod(6).unwrap();
        let two = z6.principal_ideal(2);
        let three = z6.principal_ideal(3);
        assert_eq!(z6.ideal_product(&two, &three).unwrap(), z6.zero_ideal());
        assert_eq!(z6.ideal_intersect(&two, &three).unwrap(), z6.zero_ideal());
        assert_eq!(z6.ideal_sum(&two, &three).unwrap(), z6.unit_ideal());
        for i in z6.ideals() {
            assert_eq!(z6.ideal_product(&i, &z6.unit_ideal()).unwrap(), i);
        }
        let z4 = FiniteCommRing::zmod(4).unwrap();
        assert_eq!(z6.ideal_sum(&two, &z4.zero_ideal()), Err(Error::RingMismatch));
    }

    #[test]
    fn radical_of_product_is_intersection_of_radicals() {
        for n in [4, 6, 8, 9, 12, 18, 36] {
            let r = FiniteCommRing::zmod(n).unwrap();
            for i in r.ideals() {
                for j in r.ideals() {
                    let lhs = r.radical(&r.ideal_product(&i, &j).unwrap()).unwrap();
                    let rhs = r.ideal_intersect(&r.radical(&i).unwrap(), &r.radical(&j).unwrap()).unwrap();
                    assert_eq!(lhs, rhs, "Z/{n}");
                }
            }
        }
    }

    #[test]
    fn primes_examples() {
        let z6 = FiniteCommRing::zmod(6).unwrap();
        let p: Vec<ElemSet> = z6.primes().iter().map(|p| p.members()).collect();
        assert_eq!(p, vec![set(&[0, 3]), set(&[0, 2, 4])]);
        let z4 = FiniteCommRing::zmod(4).unwrap();
        assert_eq!(z4.primes().len(), 1);
        assert_eq!(z4.primes()[0].members(), set(&[0, 2]));
        let f = FiniteCommRing::gf(9).unwrap();
        assert_eq!(f.primes(), vec![f.zero_ideal()]);
    }

    #[test]
    fn zariski_frames() {
        let z6 = FiniteCommRing::zmod(6).unwrap();
        let (ideals, frame) = z6.zariski_frame();
        assert_eq!(ideals.len(), 4);
        assert!(frame.is_frame().0);
        let f = FiniteCommRing::gf(4).unwrap();
        assert_eq!(f.zariski_frame().1.size(), 2);
        let z12 = FiniteCommRing::zmod(12).unwrap();
        let (ideals, frame) = z12.zariski_frame();
        let members: Vec<ElemSet> = ideals.iter().map(|i| i.members()).collect();
        assert_eq!(members, vec![set(&[0, 6]), set(&[0, 3, 6, 9]), set(&[0, 2, 4, 6, 8, 10]), ElemSet::full(12)]);
        assert_eq!(frame.bottom(), 0);
    }

    #[test]
    fn galois_fields() {
        let f4 = FiniteCommRing::gf(4).unwrap();
        let frob = f4.frobenius();
        assert!(f4.is_automorphism(&frob));
        let x = 2;
        assert_ne!(frob[x], x);
        assert_eq!(frob[frob[x]], x);
        let f2 = FiniteCommRing::gf(2).unwrap();
        assert_eq!(f2.frobenius(), vec![0, 1]);
        let f9 = FiniteCommRing::gf(9).unwrap();
        let frob = f9.frobenius();
        assert!((0..9).any(|x| frob[x] != x));
        assert!((0..9).all(|x| frob[frob[x]] == x));
        let f8 = FiniteCommRing::gf(8).unwrap();
        let frob = f8.frobenius();
        assert!((0..8).all(|x| frob[frob[frob[x]]] == x));
        // every nonzero element is a unit
        for q in [4, 8, 9] {
            let f = FiniteCommRing::gf(q).unwrap();
            for x in 1..q {
                assert!((1..q).any(|y| f.mul(x, y) == 1), "GF({q})");
            }
        }
        assert!(FiniteCommRing::gf(6).is_err());
    }

    #[test]
    fn poly_quotient_burnside_shape() {
        let z3 = FiniteCommRing::zmod(3).unwrap();
        let a = FiniteCommRing::poly_quot(&z3, 0, 2).unwrap();
        assert_eq!(a.size(), 9);
        let t = a.element_by_label("t").unwrap();
        let two_t = a.element_by_label("2t").unwrap();
        assert_eq!(a.mul(t, t), two_t);
    }

    #[test]
    fn quotient_and_product() {
        let z6 = FiniteCommRing::zmod(6).unwrap();
        let (q, proj) = z6.quotient(&set(&[0, 2, 4])).unwrap();
        assert!(q.same_tables(&FiniteCommRing::zmod(2).unwrap()));
        assert_eq!(proj, vec![0, 1, 0, 1, 0, 1]);
        let (q, _) = z6.quotient(&set(&[0, 3])).unwrap();
        assert!(q.same_tables(&FiniteCommRing::zmod(3).unwrap()));
        let (q, _) = z6.quotient(&ElemSet::full(6)).unwrap();
        assert!(q.is_zero_ring());
        assert!(z6.quotient(&set(&[0, 1])).is_err());

        let f2 = FiniteCommRing::zmod(2).unwrap();
        let f3 = FiniteCommRing::zmod(3).unwrap();
        let (p, _) = FiniteCommRing::product(&f2, &f3).unwrap();
        assert_eq!(p.size(), 6);
        assert_eq!(p.ideals().len(), 4);
        assert_eq!(p.primes().len(), 2);
    }

    #[test]
    fn homs() {
        let z6 = FiniteCommRing::zmod(6).unwrap();
        let z2 = FiniteCommRing::zmod(2).unwrap();
        assert!(RingHom::new(&z6, &z2, (0..6).map(|x| x % 2).collect()).is_ok());
        assert!(RingHom::new(&z6, &z2, vec![0; 6]).is_err());
        let z4 = FiniteCommRing::zmod(4).unwrap();
        assert!(RingHom::new(&z4, &z6, (0..4).map(|x| x % 6).collect()).is_err());
    }

    #[test]
    fn rejects_bad_tables() {
        let add = vec![vec![0, 1], vec![1, 0]];
        let mul = vec![vec![0, 1], vec![0, 1]];
        assert!(FiniteCommRing::from_tables("bad", add, mul, None).is_err());
    }
}
