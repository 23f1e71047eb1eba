use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::ring::FiniteCommRing;

/// Where a functor came from; decides how unverifiable axioms are reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    BuiltIn,
    Loaded,
}

/// Raw, unvalidated Tambara data keyed by subgroup ids.
///
/// `res[(h, k)]`, `tr[(h, k)]` and `nm[(h, k)]` are present exactly for
/// `k <= h`; `res` maps level `h` to level `k`, the other two map `k` to `h`.
/// `conj[(g, h)]` maps level `h` to level `g h g^-1`.
#[derive(Debug, Clone)]
pub struct TambaraData {
    pub name: String,
    pub group: Arc<FiniteGroup>,
    pub levels: Vec<Arc<FiniteCommRing>>,
    pub res: BTreeMap<(usize, usize), Vec<usize>>,
    pub tr: BTreeMap<(usize, usize), Vec<usize>>,
    pub nm: BTreeMap<(usize, usize), Vec<usize>>,
    pub conj: BTreeMap<(usize, usize), Vec<usize>>,
}

/// A G-Tambara functor with finite table rings at every subgroup.
///
/// Structure maps are stored for every pair `k <= h` and every `g`, not only
/// for generators, so axiom checks and ideal closure are plain table scans.
/// Construction only checks shapes; [`crate::tambara::check_axioms`] checks
/// the axioms.
#[derive(Debug, Clone)]
pub struct TambaraFunctor {
    name: String,
    group: Arc<FiniteGroup>,
    levels: Vec<Arc<FiniteCommRing>>,
    res: Vec<Vec<usize>>,
    tr: Vec<Vec<usize>>,
    nm: Vec<Vec<usize>>,
    conj: Vec<Vec<usize>>,
    origin: Origin,
    translates: OnceLock<Vec<Vec<Vec<ElemSet>>>>,
}

impl TambaraFunctor {
    pub fn from_data(data: TambaraData, origin: Origin) -> Result<Self> {
        let g = &data.group;
        let n = g.subgroup_count();
        if data.levels.len() != n {
            return Err(Error::Shape(format!("{} levels for {n} subgroups", data.levels.len())));
        }
        let mut res = vec![Vec::new(); n * n];
        let mut tr = vec![Vec::new(); n * n];
        let mut nm = vec![Vec::new(); n * n];
        for (kind, table, dense, backwards) in
            [("res", &data.res, &mut res, false), ("tr", &data.tr, &mut tr, true), ("nm", &data.nm, &mut nm, true)]
        {
            for &(h, k) in table.keys() {
                if h >= n || k >= n || !g.is_subgroup_of(k, h) {
                    return Err(Error::Shape(format!("{kind} given for non-inclusion ({h}, {k})")));
                }
            }
            for h in 0..n {
                for k in 0..n {
                    if !g.is_subgroup_of(k, h) {
                        continue;
                    }
                    let map = table
                        .get(&(h, k))
                        .ok_or_else(|| Error::Shape(format!("missing {kind} for subgroups ({h}, {k})")))?;
                    let (src, dst) = if backwards { (k, h) } else { (h, k) };
                    check_table(kind, map, &data.levels[src], &data.levels[dst])?;
                    dense[h * n + k] = map.clone();
                }
            }
        }
        let mut conj = vec![Vec::new(); g.order() * n];
        for &(x, h) in data.conj.keys() {
            if x >= g.order() || h >= n {
                return Err(Error::Shape(format!("conj given for unknown pair ({x}, {h})")));
            }
        }
        for x in 0..g.order() {
            for h in 0..n {
                let map = data
                    .conj
                    .get(&(x, h))
                    .ok_or_else(|| Error::Shape(format!("missing conj for element {x}, subgroup {h}")))?;
                check_table("conj", map, &data.levels[h], &data.levels[g.conjugate_subgroup(h, x)])?;
                conj[x * n + h] = map.clone();
            }
        }
        Ok(TambaraFunctor {
            name: data.name,
            group: data.group,
            levels: data.levels,
            res,
            tr,
            nm,
            conj,
            origin,
            translates: OnceLock::new(),
        })
    }

    /// The raw tables, e.g. for serialization or deliberate corruption.
    pub fn data(&self) -> TambaraData {
        let n = self.subgroup_count();
        let mut data = TambaraData {
            name: self.name.clone(),
            group: self.group.clone(),
            levels: self.levels.clone(),
            res: BTreeMap::new(),
            tr: BTreeMap::new(),
            nm: BTreeMap::new(),
            conj: BTreeMap::new(),
        };
        for (h, k) in self.inclusions() {
            data.res.insert((h, k), self.res[h * n + k].clone());
            data.tr.insert((h, k), self.tr[h * n + k].clone());
            data.nm.insert((h, k), self.nm[h * n + k].clone());
        }
        for x in 0..self.group.order() {
            for h in 0..n {
                data.conj.insert((x, h), self.conj[x * n + h].clone());
            }
        }
        data
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn origin(&self) -> Origin {
        self.origin
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn subgroup_count(&self) -> usize {
        self.levels.len()
    }

    pub fn level(&self, h: usize) -> &FiniteCommRing {
        &self.levels[h]
    }

    pub fn levels(&self) -> &[Arc<FiniteCommRing>] {
        &self.levels
    }

    /// Whether every level is the zero ring.
    pub fn is_zero(&self) -> bool {
        self.levels.iter().all(|r| r.is_zero_ring())
    }

    /// All pairs `(h, k)` with `k <= h`, in lexicographic order.
    pub fn inclusions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.subgroup_count();
        (0..n).flat_map(move |h| (0..n).filter(move |&k| self.group.is_subgroup_of(k, h)).map(move |k| (h, k)))
    }

    /// Every `(level, element)` pair.
    pub fn elements(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.subgroup_count()).flat_map(move |h| (0..self.levels[h].size()).map(move |x| (h, x)))
    }

    /// `r^H_K(x)`.
    #[inline]
    pub fn res(&self, h: usize, k: usize, x: usize) -> usize {
        self.res[h * self.levels.len() + k][x]
    }

    /// `t^H_K(x)`.
    #[inline]
    pub fn tr(&self, h: usize, k: usize, x: usize) -> usize {
        self.tr[h * self.levels.len() + k][x]
    }

    /// `N^H_K(x)`.
    #[inline]
    pub fn nm(&self, h: usize, k: usize, x: usize) -> usize {
        self.nm[h * self.levels.len() + k][x]
    }

    /// `c_{g,H}(x)`, landing in level `g H g^-1`.
    #[inline]
    pub fn conj(&self, g: usize, h: usize, x: usize) -> usize {
        self.conj[g * self.levels.len() + h][x]
    }

    pub fn element_label(&self, h: usize, x: usize) -> String {
        format!("{}@{}", self.levels[h].label(x), self.subgroup_name(h))
    }

    pub fn subgroup_name(&self, h: usize) -> String {
        let s = self.group.subgroup(h);
        let members: Vec<&str> = s.elements().iter().map(|&e| self.group.label(e)).collect();
        format!("H{h}{{{}}}", members.join(","))
    }

    /// Values of all multiplicative translates of `x` (at `h`) into level `l`.
    pub fn translate_values(&self, h: usize, x: usize, l: usize) -> ElemSet {
        self.translates.get_or_init(|| self.compute_translates())[h][x][l]
    }

    fn compute_translates(&self) -> Vec<Vec<Vec<ElemSet>>> {
        let n = self.subgroup_count();
        let g = &self.group;
        (0..n)
            .map(|h| {
                (0..self.levels[h].size())
                    .map(|x| {
                        let mut out = vec![ElemSet::new(); n];
                        for k in (0..n).filter(|&k| g.is_subgroup_of(k, h)) {
                            let r = self.res(h, k, x);
                            for e in 0..g.order() {
                                let ck = g.conjugate_subgroup(k, e);
                                let c = self.conj(e, k, r);
                                for (l, slot) in out.iter_mut().enumerate() {
                                    if g.is_subgroup_of(ck, l) {
                                        slot.insert(self.nm(l, ck, c));
                                    }
                                }
                            }
                        }
                        out
                    })
                    .collect()
            })
            .collect()
    }
}

fn check_table(kind: &str, map: &[usize], src: &FiniteCommRing, dst: &FiniteCommRing) -> Result<()> {
    if map.len() != src.size() {
        return Err(Error::Shape(format!("{kind} table has {} entries, source level has {}", map.len(), src.size())));
    }
    if let Some(v) = map.iter().find(|&&v| v >= dst.size()) {
        return Err(Error::Shape(format!("{kind} table entry {v} outside target level of size {}", dst.size())));
    }
    Ok(())
}

/// Whether two groups have the same multiplication table.
pub fn same_group(a: &FiniteGroup, b: &FiniteGroup) -> bool {
    a.order() == b.order() && a.table() == b.table()
}
