use std::sync::Arc;

use super::functor::{same_group, TambaraFunctor};
use crate::error::{Error, Result};
use crate::ring::RingHom;

/// A morphism of Tambara functors over the same group: a ring map at every
/// level commuting with restriction, transfer, norm and conjugation.
#[derive(Debug, Clone)]
pub struct TambaraMorphism {
    source: Arc<TambaraFunctor>,
    target: Arc<TambaraFunctor>,
    maps: Vec<Vec<usize>>,
}

impl TambaraMorphism {
    /// Validates every level map and every commuting square on all elements.
    pub fn new(source: Arc<TambaraFunctor>, target: Arc<TambaraFunctor>, maps: Vec<Vec<usize>>) -> Result<Self> {
        if !same_group(source.group(), target.group()) {
            return Err(Error::InvalidMorphism("source and target live over different groups".into()));
        }
        let n = source.subgroup_count();
        if maps.len() != n {
            return Err(Error::InvalidMorphism(format!("{} level maps for {n} subgroups", maps.len())));
        }
        for (h, map) in maps.iter().enumerate() {
            RingHom::new(source.level(h), target.level(h), map.clone())
                .map_err(|e| Error::InvalidMorphism(format!("level {h}: {e}")))?;
        }
        let fail = |what: String| Err(Error::InvalidMorphism(what));
        for (h, k) in source.inclusions() {
            for x in 0..source.level(h).size() {
                if maps[k][source.res(h, k, x)] != target.res(h, k, maps[h][x]) {
                    return fail(format!("does not commute with res {h}->{k} at {}", source.element_label(h, x)));
                }
            }
            for y in 0..source.level(k).size() {
                if maps[h][source.tr(h, k, y)] != target.tr(h, k, maps[k][y]) {
                    return fail(format!("does not commute with tr {k}->{h} at {}", source.element_label(k, y)));
                }
                if maps[h][source.nm(h, k, y)] != target.nm(h, k, maps[k][y]) {
                    return fail(format!("does not commute with nm {k}->{h} at {}", source.element_label(k, y)));
                }
            }
        }
        let g = source.group();
        for e in 0..g.order() {
            for h in 0..n {
                let c = g.conjugate_subgroup(h, e);
                for x in 0..source.level(h).size() {
                    if maps[c][source.conj(e, h, x)] != target.conj(e, h, maps[h][x]) {
                        return fail(format!(
                            "does not commute with conj by {} at {}",
                            g.label(e),
                            source.element_label(h, x)
                        ));
                    }
                }
            }
        }
        Ok(TambaraMorphism { source, target, maps })
    }

    pub fn identity(t: &Arc<TambaraFunctor>) -> Self {
        let maps = t.levels().iter().map(|r| (0..r.size()).collect()).collect();
        TambaraMorphism { source: t.clone(), target: t.clone(), maps }
    }

    pub fn source(&self) -> &Arc<TambaraFunctor> {
        &self.source
    }

    pub fn target(&self) -> &Arc<TambaraFunctor> {
        &self.target
    }

    pub fn maps(&self) -> &[Vec<usize>] {
        &self.maps
    }

    #[inline]
    pub fn apply(&self, h: usize, x: usize) -> usize {
        self.maps[h][x]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &TambaraMorphism) -> Result<TambaraMorphism> {
        if self.target.levels().len() != other.source.levels().len()
            || self.target.levels().iter().zip(other.source.levels()).any(|(a, b)| !a.same_tables(b))
        {
            return Err(Error::InvalidMorphism("composable morphisms need matching middle functors".into()));
        }
        let maps = self.maps.iter().zip(&other.maps).map(|(f, g)| f.iter().map(|&x| g[x]).collect()).collect();
        Ok(TambaraMorphism { source: self.source.clone(), target: other.target.clone(), maps })
    }

    pub fn is_injective(&self) -> bool {
        self.maps.iter().enumerate().all(|(h, m)| {
            let mut seen = vec![false; self.target.level(h).size()];
            m.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
        })
    }

    pub fn is_surjective(&self) -> bool {
        self.maps.iter().enumerate().all(|(h, m)| {
            let mut seen = vec![false; self.target.level(h).size()];
            for &v in m {
                seen[v] = true;
            }
            seen.into_iter().all(|b| b)
        })
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}
