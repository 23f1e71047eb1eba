//! Finite groups given by multiplication tables.
//!
//! Every group carries its full subgroup list, sorted by size and then by
//! element set, so that subgroup ids are stable and every downstream tuple
//! ordering is reproducible.

use crate::elemset::ElemSet;
use crate::error::{Error, Result};

/// Largest group order accepted.
pub const MAX_GROUP_ORDER: usize = 24;

/// A subgroup, identified by its position in the parent's subgroup list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    pub id: usize,
    elements: Vec<usize>,
    set: ElemSet,
}

impl Subgroup {
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.set.contains(x)
    }

    pub fn set(&self) -> ElemSet {
        self.set
    }
}

/// Canonical representatives of `L\K/H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleCosetDecomposition {
    pub left: usize,
    pub mid: usize,
    pub right: usize,
    /// Minimal element index of each double coset, ascending.
    pub representatives: Vec<usize>,
    /// The double coset of each representative, in the same order.
    pub classes: Vec<ElemSet>,
}

#[derive(Debug, Clone)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    mul: Vec<usize>,
    inverse: Vec<usize>,
    labels: Vec<String>,
    subgroups: Vec<Subgroup>,
    /// `conj[x * nsub + h]` is the id of `x H x^-1`.
    conj: Vec<usize>,
}

impl FiniteGroup {
    /// Builds a group from a full multiplication table with identity at index 0.
    pub fn from_table(name: &str, table: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        let order = table.len();
        if order == 0 || order > MAX_GROUP_ORDER {
            return Err(Error::InvalidGroup(format!("order {order} outside 1..={MAX_GROUP_ORDER}")));
        }
        let mut mul = Vec::with_capacity(order * order);
        for (i, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(Error::InvalidGroup(format!("row {i} has length {}, expected {order}", row.len())));
            }
            for &v in row {
                if v >= order {
                    return Err(Error::InvalidGroup(format!("entry {v} in row {i} out of range")));
                }
                mul.push(v);
            }
        }
        for a in 0..order {
            if mul[a] != a || mul[a * order] != a {
                return Err(Error::InvalidGroup(format!("element 0 is not an identity (fails at {a})")));
            }
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    let ab = mul[a * order + b];
                    let bc = mul[b * order + c];
                    if mul[ab * order + c] != mul[a * order + bc] {
                        return Err(Error::InvalidGroup(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let mut inverse = vec![usize::MAX; order];
        for a in 0..order {
            match (0..order).find(|&b| mul[a * order + b] == 0 && mul[b * order + a] == 0) {
                Some(b) => inverse[a] = b,
                None => return Err(Error::InvalidGroup(format!("element {a} has no inverse"))),
            }
        }
        let labels = match labels {
            Some(l) if l.len() == order => l,
            Some(l) => {
                return Err(Error::InvalidGroup(format!("{} labels for {order} elements", l.len())));
            }
            None => (0..order).map(|i| if i == 0 { "e".to_string() } else { format!("g{i}") }).collect(),
        };
        let mut group = FiniteGroup {
            name: name.to_string(),
            order,
            mul,
            inverse,
            labels,
            subgroups: Vec::new(),
            conj: Vec::new(),
        };
        group.subgroups = group.compute_subgroups();
        let n = group.subgroups.len();
        let mut conj = vec![0; order * n];
        for x in 0..order {
            for h in 0..n {
                let image: ElemSet =
                    group.subgroups[h].elements.iter().map(|&y| group.mul(group.mul(x, y), group.inverse[x])).collect();
                conj[x * n + h] = group.subgroup_by_set(&image).expect("conjugate of a subgroup is a subgroup");
            }
        }
        group.conj = conj;
        Ok(group)
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// The cyclic group `C_n`, element `i` standing for `g^i`.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let labels = (0..n)
            .map(|i| match i {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{i}"),
            })
            .collect();
        let name = if n == 1 { "1".to_string() } else { format!("C{n}") };
        Self::from_table(&name, table, Some(labels)).expect("cyclic table is a group")
    }

    /// The Klein four-group `C2 x C2`.
    pub fn klein_four() -> Self {
        let table = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
        let labels = ["e", "a", "b", "ab"].iter().map(|s| s.to_string()).collect();
        Self::from_table("K4", table, Some(labels)).expect("Klein table is a group")
    }

    /// The symmetric group on three letters.
    ///
    /// Elements are the permutations of `{1,2,3}` in lexicographic order of
    /// their images; multiplication is composition `(ab)(i) = a(b(i))`.
    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let index = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap();
        let table = perms.iter().map(|a| perms.iter().map(|b| index([a[b[0]], a[b[1]], a[b[2]]])).collect()).collect();
        let labels = perms.iter().map(cycle_notation).collect();
        Self::from_table("S3", table, Some(labels)).expect("S3 table is a group")
    }

    /// Built-in groups by name: `1`/`trivial`, `C2`, `C3`, `C4`, `K4`, `S3`.
    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "1" | "trivial" | "C1" => Some(Self::trivial()),
            "C2" => Some(Self::cyclic(2)),
            "C3" => Some(Self::cyclic(3)),
            "C4" => Some(Self::cyclic(4)),
            "K4" | "C2xC2" => Some(Self::klein_four()),
            "S3" => Some(Self::symmetric3()),
            _ => None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// The multiplication table as rows.
    pub fn table(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn subgroup(&self, id: usize) -> &Subgroup {
        &self.subgroups[id]
    }

    pub fn subgroup_count(&self) -> usize {
        self.subgroups.len()
    }

    pub fn trivial_subgroup(&self) -> usize {
        0
    }

    pub fn full_subgroup(&self) -> usize {
        self.subgroups.len() - 1
    }

    pub fn subgroup_by_set(&self, set: &ElemSet) -> Option<usize> {
        self.subgroups.iter().position(|s| s.set == *set)
    }

    /// Whether subgroup `k` is contained in subgroup `h`.
    pub fn is_subgroup_of(&self, k: usize, h: usize) -> bool {
        self.subgroups[k].set.is_subset(&self.subgroups[h].set)
    }

    /// `[H : K]` for `K <= H`.
    pub fn index(&self, h: usize, k: usize) -> usize {
        self.subgroups[h].order() / self.subgroups[k].order()
    }

    /// Id of `x H x^-1`.
    pub fn conjugate_subgroup(&self, h: usize, x: usize) -> usize {
        self.conj[x * self.subgroups.len() + h]
    }

    pub fn intersect_subgroups(&self, a: usize, b: usize) -> usize {
        let set = self.subgroups[a].set.intersection(&self.subgroups[b].set);
        self.subgroup_by_set(&set).expect("intersection of subgroups is a subgroup")
    }

    /// Minimal representatives of the left cosets `xK` inside `H`.
    pub fn coset_representatives(&self, h: usize, k: usize) -> Result<Vec<usize>> {
        if !self.is_subgroup_of(k, h) {
            return Err(Error::NotContained { inner: k, outer: h });
        }
        let mut covered = ElemSet::new();
        let mut reps = Vec::new();
        for &x in &self.subgroups[h].elements {
            if covered.contains(x) {
                continue;
            }
            reps.push(x);
            for &y in &self.subgroups[k].elements {
                covered.insert(self.mul(x, y));
            }
        }
        Ok(reps)
    }

    /// Decomposes `K` into double cosets `L γ H`.
    pub fn double_cosets(&self, l: usize, k: usize, h: usize) -> Result<DoubleCosetDecomposition> {
        for inner in [l, h] {
            if !self.is_subgroup_of(inner, k) {
                return Err(Error::NotContained { inner, outer: k });
            }
        }
        let mut covered = ElemSet::new();
        let mut representatives = Vec::new();
        let mut classes = Vec::new();
        for &gamma in &self.subgroups[k].elements {
            if covered.contains(gamma) {
                continue;
            }
            let mut class = ElemSet::new();
            for &a in &self.subgroups[l].elements {
                let ag = self.mul(a, gamma);
                for &b in &self.subgroups[h].elements {
                    class.insert(self.mul(ag, b));
                }
            }
            covered = covered.union(&class);
            representatives.push(gamma);
            classes.push(class);
        }
        Ok(DoubleCosetDecomposition { left: l, mid: k, right: h, representatives, classes })
    }

    /// Smallest subgroup containing `gens`.
    pub fn generated_subgroup(&self, gens: &ElemSet) -> ElemSet {
        let mut set = ElemSet::singleton(0);
        let mut frontier = vec![0];
        while let Some(x) = frontier.pop() {
            for g in gens.iter() {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    /// Every subgroup is a join of cyclic subgroups, so closing the trivial
    /// subgroup under joins with cyclic subgroups reaches all of them.
    fn compute_subgroups(&self) -> Vec<Subgroup> {
        let cyclic: Vec<ElemSet> = (0..self.order).map(|x| self.generated_subgroup(&ElemSet::singleton(x))).collect();
        let mut found: Vec<ElemSet> = vec![ElemSet::singleton(0)];
        let mut i = 0;
        while i < found.len() {
            let base = found[i];
            for c in &cyclic {
                let joined = self.generated_subgroup(&base.union(c));
                if !found.contains(&joined) {
                    found.push(joined);
                }
            }
            i += 1;
        }
        let mut elements: Vec<Vec<usize>> = found.iter().map(|s| s.to_vec()).collect();
        elements.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        elements
            .into_iter()
            .enumerate()
            .map(|(id, elements)| Subgroup { id, set: elements.iter().copied().collect(), elements })
            .collect()
    }
}

fn cycle_notation(p: &[usize; 3]) -> String {
    let mut seen = [false; 3];
    let mut out = String::new();
    for start in 0..3 {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            out.push_str(&(i + 1).to_string());
            i = p[i];
        }
        out.push(')');
    }
    if out.is_empty() {
        "e".to_string()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force: every element subset that is closed under multiplication
    /// and contains the identity.
    fn subgroups_by_subset_scan(g: &FiniteGroup) -> Vec<Vec<usize>> {
        let n = g.order();
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            if mask & 1 == 0 {
                continue;
            }
            let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let closed = members.iter().all(|&a| members.iter().all(|&b| mask >> g.mul(a, b) & 1 == 1));
            if closed {
                out.push(members);
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    fn by_label(g: &FiniteGroup, label: &str) -> usize {
        g.labels().iter().position(|l| l == label).unwrap()
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(FiniteGroup::trivial().subgroup_count(), 1);
        assert_eq!(FiniteGroup::cyclic(2).subgroup_count(), 2);
        let s3 = FiniteGroup::symmetric3();
        let sizes: Vec<usize> = s3.subgroups().iter().map(|s| s.order()).collect();
        assert_eq!(sizes, vec![1, 2, 2, 2, 3, 6]);
    }

    #[test]
    fn enumeration_matches_subset_scan() {
        for name in ["1", "C2", "C3", "C4", "K4", "S3"] {
            let g = FiniteGroup::builtin(name).unwrap();
            let got: Vec<Vec<usize>> = g.subgroups().iter().map(|s| s.elements().to_vec()).collect();
            assert_eq!(got, subgroups_by_subset_scan(&g), "{name}");
        }
    }

    #[test]
    fn enumeration_is_deterministic() {
        let a = FiniteGroup::symmetric3();
        let b = FiniteGroup::symmetric3();
        assert_eq!(a.subgroups(), b.subgroups());
    }

    #[test]
    fn conjugation_in_s3() {
        let s3 = FiniteGroup::symmetric3();
        let t12 = by_label(&s3, "(12)");
        let t23 = by_label(&s3, "(23)");
        let c123 = by_label(&s3, "(123)");
        let h = s3.subgroup_by_set(&[0, t12].into_iter().collect()).unwrap();
        let expected = s3.subgroup_by_set(&[0, t23].into_iter().collect()).unwrap();
        assert_eq!(s3.conjugate_subgroup(h, c123), expected);
        for x in 0..6 {
            assert_eq!(s3.conjugate_subgroup(s3.full_subgroup(), x), s3.full_subgroup());
            for h in 0..s3.subgroup_count() {
                let c = s3.conjugate_subgroup(h, x);
                assert_eq!(s3.subgroup(c).order(), s3.subgroup(h).order());
            }
        }
        let c2 = FiniteGroup::cyclic(2);
        assert_eq!(c2.conjugate_subgroup(0, 1), 0);
    }

    #[test]
    fn double_cosets_examples() {
        let c2 = FiniteGroup::cyclic(2);
        assert_eq!(c2.double_cosets(0, 1, 0).unwrap().representatives, vec![0, 1]);
        assert_eq!(c2.double_cosets(1, 1, 1).unwrap().representatives, vec![0]);
        assert!(c2.double_cosets(1, 0, 0).is_err());

        let s3 = FiniteGroup::symmetric3();
        let l = s3.subgroup_by_set(&[0, by_label(&s3, "(12)")].into_iter().collect()).unwrap();
        let h = s3.subgroup_by_set(&[0, by_label(&s3, "(13)")].into_iter().collect()).unwrap();
        let d = s3.double_cosets(l, s3.full_subgroup(), h).unwrap();
        assert_eq!(d.representatives.len(), 2);
    }

    #[test]
    fn double_cosets_partition() {
        let s3 = FiniteGroup::symmetric3();
        for k in 0..s3.subgroup_count() {
            for l in 0..s3.subgroup_count() {
                for h in 0..s3.subgroup_count() {
                    let Ok(d) = s3.double_cosets(l, k, h) else {
                        assert!(!s3.is_subgroup_of(l, k) || !s3.is_subgroup_of(h, k));
                        continue;
                    };
                    let mut union = ElemSet::new();
                    for (rep, class) in d.representatives.iter().zip(&d.classes) {
                        assert!(union.intersection(class).is_empty());
                        assert_eq!(class.min(), Some(*rep));
                        union = union.union(class);
                    }
                    assert_eq!(union, s3.subgroup(k).set());
                }
            }
        }
    }

    #[test]
    fn rejects_bad_tables() {
        // Non-associative loop of order 5 with identity 0.
        let bad = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroup::from_table("L5", bad, None).unwrap_err();
        assert!(matches!(err, Error::InvalidGroup(msg) if msg.contains("associative")));
        assert!(FiniteGroup::from_table("E", vec![], None).is_err());
    }

    #[test]
    fn s3_labels() {
        let s3 = FiniteGroup::symmetric3();
        assert_eq!(s3.labels(), &["e", "(23)", "(12)", "(123)", "(132)", "(13)"]);
    }
}
