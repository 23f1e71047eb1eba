//! Built-in Tambara functors.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::axioms::check_axioms;
use super::functor::{same_group, Origin, TambaraData, TambaraFunctor};
use super::morphism::TambaraMorphism;
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::ring::FiniteCommRing;

fn empty_data(name: String, group: &Arc<FiniteGroup>, levels: Vec<Arc<FiniteCommRing>>) -> TambaraData {
    TambaraData {
        name,
        group: group.clone(),
        levels,
        res: BTreeMap::new(),
        tr: BTreeMap::new(),
        nm: BTreeMap::new(),
        conj: BTreeMap::new(),
    }
}

fn inclusions(g: &FiniteGroup) -> Vec<(usize, usize)> {
    let n = g.subgroup_count();
    (0..n).flat_map(|h| (0..n).filter(move |&k| g.is_subgroup_of(k, h)).map(move |k| (h, k))).collect()
}

/// Every level `r`; restriction and conjugation are identities,
/// `t^H_K(x) = [H:K] x` and `N^H_K(x) = x^[H:K]`.
pub fn constant_functor(r: &FiniteCommRing, g: &Arc<FiniteGroup>) -> TambaraFunctor {
    let ring = Arc::new(r.clone());
    let n = g.subgroup_count();
    let mut data = empty_data(format!("const({},{})", r.name(), g.name()), g, vec![ring; n]);
    let id: Vec<usize> = (0..r.size()).collect();
    for (h, k) in inclusions(g) {
        let i = g.index(h, k);
        data.res.insert((h, k), id.clone());
        data.tr.insert((h, k), (0..r.size()).map(|x| r.scale(i, x)).collect());
        data.nm.insert((h, k), (0..r.size()).map(|x| r.pow(x, i)).collect());
    }
    for x in 0..g.order() {
        for h in 0..n {
            data.conj.insert((x, h), id.clone());
        }
    }
    TambaraFunctor::from_data(data, Origin::BuiltIn).expect("constant functor tables are complete")
}

/// The action of a cyclic group through powers of one automorphism: element
/// `g^i` acts as `aut^i`.
pub fn cyclic_action(r: &FiniteCommRing, g: &FiniteGroup, aut: &[usize]) -> Result<Vec<Vec<usize>>> {
    let n = g.order();
    if g.table() != FiniteGroup::cyclic(n).table() {
        return Err(Error::Unsupported(format!("{} is not a cyclic group in standard form", g.name())));
    }
    let mut action = vec![(0..r.size()).collect::<Vec<usize>>()];
    for i in 1..n {
        let prev: &Vec<usize> = &action[i - 1];
        action.push(prev.iter().map(|&x| aut[x]).collect());
    }
    Ok(action)
}

/// The trivial action of any group.
pub fn trivial_action(r: &FiniteCommRing, g: &FiniteGroup) -> Vec<Vec<usize>> {
    vec![(0..r.size()).collect(); g.order()]
}

/// Fixed points of a ring with `G`-action: level `H` is the subring fixed by
/// `H`, restriction is inclusion, transfer and norm are the sum and product
/// over coset representatives, conjugation is the action.
pub fn fixed_point_functor(r: &FiniteCommRing, g: &Arc<FiniteGroup>, action: &[Vec<usize>]) -> Result<TambaraFunctor> {
    if action.len() != g.order() {
        return Err(Error::InvalidHom(format!(
            "action has {} entries for a group of order {}",
            action.len(),
            g.order()
        )));
    }
    for (x, a) in action.iter().enumerate() {
        if !r.is_automorphism(a) {
            return Err(Error::InvalidHom(format!("action of {} is not a ring automorphism", g.label(x))));
        }
    }
    for x in 0..g.order() {
        for y in 0..g.order() {
            let xy = g.mul(x, y);
            if (0..r.size()).any(|e| action[xy][e] != action[x][action[y][e]]) {
                return Err(Error::InvalidHom(format!(
                    "action is not a homomorphism at ({}, {})",
                    g.label(x),
                    g.label(y)
                )));
            }
        }
    }
    let n = g.subgroup_count();
    let mut levels = Vec::with_capacity(n);
    let mut embeds = Vec::with_capacity(n);
    let mut positions = Vec::with_capacity(n);
    for h in 0..n {
        let fixed: ElemSet =
            (0..r.size()).filter(|&e| g.subgroup(h).elements().iter().all(|&x| action[x][e] == e)).collect();
        let (ring, embed) = r.subring(&format!("{}^H{h}", r.name()), &fixed)?;
        let mut pos = vec![usize::MAX; r.size()];
        for (i, &e) in embed.iter().enumerate() {
            pos[e] = i;
        }
        levels.push(Arc::new(ring));
        embeds.push(embed);
        positions.push(pos);
    }
    let mut data = empty_data(format!("fixedpoint({},{})", r.name(), g.name()), g, levels);
    for (h, k) in inclusions(g) {
        let reps = g.coset_representatives(h, k)?;
        data.res.insert((h, k), embeds[h].iter().map(|&e| positions[k][e]).collect());
        let mut tr = Vec::with_capacity(embeds[k].len());
        let mut nm = Vec::with_capacity(embeds[k].len());
        for &e in &embeds[k] {
            let sum = reps.iter().fold(r.zero(), |acc, &x| r.add(acc, action[x][e]));
            let prod = reps.iter().fold(r.one(), |acc, &x| r.mul(acc, action[x][e]));
            for v in [sum, prod] {
                if positions[h][v] == usize::MAX {
                    return Err(Error::InvalidHom("transfer or norm leaves the fixed subring".into()));
                }
            }
            tr.push(positions[h][sum]);
            nm.push(positions[h][prod]);
        }
        data.tr.insert((h, k), tr);
        data.nm.insert((h, k), nm);
    }
    for x in 0..g.order() {
        for h in 0..n {
            let target = g.conjugate_subgroup(h, x);
            data.conj.insert((x, h), embeds[h].iter().map(|&e| positions[target][action[x][e]]).collect());
        }
    }
    TambaraFunctor::from_data(data, Origin::BuiltIn)
}

/// The Burnside Tambara functor of `C2` reduced modulo an odd `n`.
///
/// Level `e` is `Z/n`, level `C2` is `(Z/n)[t]/(t^2 - 2t)`. Restriction sends
/// `t` to 2, transfer is `a -> a t` and the norm is
/// `a -> a + ((a^2 - a) / 2) t`, halving the even integer `a^2 - a` for the
/// representative `0 <= a < n` before reducing.
pub fn burnside_c2_mod(n: usize) -> Result<TambaraFunctor> {
    if n.is_multiple_of(2) || !(3..=15).contains(&n) {
        return Err(Error::Unsupported(format!("burnside-c2-mod {n}: the modulus must be odd and in 3..=15")));
    }
    let g = Arc::new(FiniteGroup::cyclic(2));
    let base = FiniteCommRing::zmod(n)?;
    // poly_quot encodes t^2 = c1 t + c0 and puts a + b t at index a + b n.
    let top = FiniteCommRing::poly_quot(&base, 0, 2)?;
    let at = |a: usize, b: usize| a % n + (b % n) * n;
    let mut data = empty_data(format!("burnside-c2-mod({n})"), &g, vec![Arc::new(base), Arc::new(top)]);
    data.res.insert((0, 0), (0..n).collect());
    data.tr.insert((0, 0), (0..n).collect());
    data.nm.insert((0, 0), (0..n).collect());
    data.res.insert((1, 1), (0..n * n).collect());
    data.tr.insert((1, 1), (0..n * n).collect());
    data.nm.insert((1, 1), (0..n * n).collect());
    data.res.insert((1, 0), (0..n * n).map(|x| (x % n + 2 * (x / n)) % n).collect());
    data.tr.insert((1, 0), (0..n).map(|a| at(0, a)).collect());
    data.nm.insert((1, 0), (0..n).map(|a| at(a, (a * a - a) / 2)).collect());
    for x in 0..2 {
        data.conj.insert((x, 0), (0..n).collect());
        data.conj.insert((x, 1), (0..n * n).collect());
    }
    let t = TambaraFunctor::from_data(data, Origin::BuiltIn)?;
    let report = check_axioms(&t);
    if let Some(fail) = report.first_failure() {
        return Err(Error::Axiom(format!(
            "{} fails {}: {}",
            t.name(),
            fail.axiom,
            fail.witness.clone().unwrap_or_default()
        )));
    }
    Ok(t)
}

/// The zero Tambara functor: every level is the zero ring.
pub fn zero_functor(g: &Arc<FiniteGroup>) -> TambaraFunctor {
    constant_functor(&FiniteCommRing::zero_ring(), g).with_name(&format!("zero({})", g.name()))
}

/// Levelwise product with componentwise structure maps, together with the
/// two projections.
pub fn product_functor(
    a: &Arc<TambaraFunctor>,
    b: &Arc<TambaraFunctor>,
) -> Result<(Arc<TambaraFunctor>, TambaraMorphism, TambaraMorphism)> {
    if !same_group(a.group(), b.group()) {
        return Err(Error::FunctorMismatch(format!("{} and {} live over different groups", a.name(), b.name())));
    }
    let g = a.group_arc().clone();
    let n = g.subgroup_count();
    let mut levels = Vec::with_capacity(n);
    // pairs[h][i] = components of element i of the product level h
    let mut pairs = Vec::with_capacity(n);
    let mut index = Vec::with_capacity(n);
    for h in 0..n {
        let (ra, rb) = (a.level(h), b.level(h));
        let (ring, natural) = FiniteCommRing::product(ra, rb)?;
        let mut p = vec![(0, 0); ring.size()];
        for (nat, &i) in natural.iter().enumerate() {
            p[i] = (nat % ra.size(), nat / ra.size());
        }
        levels.push(Arc::new(ring));
        pairs.push(p);
        index.push(natural);
    }
    let at = |h: usize, x: usize, y: usize| index[h][x + a.level(h).size() * y];
    let mut data = empty_data(format!("{}x{}", a.name(), b.name()), &g, levels);
    for (h, k) in inclusions(&g) {
        data.res.insert((h, k), pairs[h].iter().map(|&(x, y)| at(k, a.res(h, k, x), b.res(h, k, y))).collect());
        data.tr.insert((h, k), pairs[k].iter().map(|&(x, y)| at(h, a.tr(h, k, x), b.tr(h, k, y))).collect());
        data.nm.insert((h, k), pairs[k].iter().map(|&(x, y)| at(h, a.nm(h, k, x), b.nm(h, k, y))).collect());
    }
    for e in 0..g.order() {
        for h in 0..n {
            let c = g.conjugate_subgroup(h, e);
            data.conj.insert((e, h), pairs[h].iter().map(|&(x, y)| at(c, a.conj(e, h, x), b.conj(e, h, y))).collect());
        }
    }
    let origin =
        if a.origin() == Origin::BuiltIn && b.origin() == Origin::BuiltIn { Origin::BuiltIn } else { Origin::Loaded };
    let prod = Arc::new(TambaraFunctor::from_data(data, origin)?);
    let first = pairs.iter().map(|p| p.iter().map(|&(x, _)| x).collect()).collect();
    let second = pairs.iter().map(|p| p.iter().map(|&(_, y)| y).collect()).collect();
    let pa = TambaraMorphism::new(prod.clone(), a.clone(), first)?;
    let pb = TambaraMorphism::new(prod.clone(), b.clone(), second)?;
    Ok((prod, pa, pb))
}

/// `T / I` for levelwise sets `ideal`, with the projection. The induced
/// maps are checked to be well defined on every coset.
pub fn quotient_functor(t: &Arc<TambaraFunctor>, ideal: &[ElemSet]) -> Result<(Arc<TambaraFunctor>, TambaraMorphism)> {
    let g = t.group_arc().clone();
    let n = g.subgroup_count();
    if ideal.len() != n {
        return Err(Error::InvalidIdeal(format!("{} levels given for {n} subgroups", ideal.len())));
    }
    let mut levels = Vec::with_capacity(n);
    let mut proj = Vec::with_capacity(n);
    let mut reps = Vec::with_capacity(n);
    for h in 0..n {
        let (ring, p) = t.level(h).quotient(&ideal[h])?;
        let mut r = vec![usize::MAX; ring.size()];
        for x in (0..p.len()).rev() {
            r[p[x]] = x;
        }
        levels.push(Arc::new(ring));
        proj.push(p);
        reps.push(r);
    }
    let induced = |kind: &str, src: usize, dst: usize, f: &dyn Fn(usize) -> usize| -> Result<Vec<usize>> {
        let mut out = vec![usize::MAX; reps[src].len()];
        for x in 0..proj[src].len() {
            let v = proj[dst][f(x)];
            let slot = &mut out[proj[src][x]];
            if *slot == usize::MAX {
                *slot = v;
            } else if *slot != v {
                return Err(Error::InvalidIdeal(format!(
                    "{kind} is not well defined on the quotient at {}",
                    t.element_label(src, x)
                )));
            }
        }
        Ok(out)
    };
    let mut data = empty_data(format!("{}/I", t.name()), &g, levels);
    for (h, k) in inclusions(&g) {
        data.res.insert((h, k), induced("res", h, k, &|x| t.res(h, k, x))?);
        data.tr.insert((h, k), induced("tr", k, h, &|x| t.tr(h, k, x))?);
        data.nm.insert((h, k), induced("nm", k, h, &|x| t.nm(h, k, x))?);
    }
    for e in 0..g.order() {
        for h in 0..n {
            let c = g.conjugate_subgroup(h, e);
            data.conj.insert((e, h), induced("conj", h, c, &|x| t.conj(e, h, x))?);
        }
    }
    let q = Arc::new(TambaraFunctor::from_data(data, t.origin())?);
    let pi = TambaraMorphism::new(t.clone(), q.clone(), proj)?;
    Ok((q, pi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_tables() {
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let t = constant_functor(&FiniteCommRing::zmod(6).unwrap(), &c2);
        assert_eq!(t.nm(1, 0, 2), 4);
        assert_eq!(t.tr(1, 0, 2), 4);
        let f2 = constant_functor(&FiniteCommRing::zmod(2).unwrap(), &c2);
        assert_eq!((0..2).map(|x| f2.tr(1, 0, x)).collect::<Vec<_>>(), vec![0, 0]);
        assert_eq!((0..2).map(|x| f2.nm(1, 0, x)).collect::<Vec<_>>(), vec![0, 1]);
    }

    #[test]
    fn burnside_norm_uses_integer_lift() {
        let t = burnside_c2_mod(3).unwrap();
        let top = t.level(1);
        assert_eq!(top.label(t.nm(1, 0, 2)), "2+t");
        assert_eq!(t.nm(1, 0, 0), top.zero());
        assert_eq!(t.nm(1, 0, 1), top.one());
        for a in 0..3 {
            assert_eq!(t.res(1, 0, t.tr(1, 0, a)), (2 * a) % 3);
        }
    }

    #[test]
    fn burnside_rejects_even_and_out_of_range() {
        for n in [1, 2, 4, 6, 16, 17] {
            assert!(burnside_c2_mod(n).is_err(), "{n}");
        }
    }

    #[test]
    fn galois_fixed_points() {
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let f4 = FiniteCommRing::gf(4).unwrap();
        let action = cyclic_action(&f4, &c2, &f4.frobenius()).unwrap();
        let t = fixed_point_functor(&f4, &c2, &action).unwrap();
        assert_eq!(t.level(1).size(), 2);
        for x in 0..4 {
            let x3 = f4.pow(x, 3);
            assert_eq!(t.level(1).label(t.nm(1, 0, x)), f4.label(x3));
            let tr = f4.add(x, f4.mul(x, x));
            assert_eq!(t.level(1).label(t.tr(1, 0, x)), f4.label(tr));
        }
        let f9 = FiniteCommRing::gf(9).unwrap();
        let action = cyclic_action(&f9, &c2, &f9.frobenius()).unwrap();
        let t = fixed_point_functor(&f9, &c2, &action).unwrap();
        assert_eq!(t.level(1).size(), 3);
    }

    #[test]
    fn rejects_non_automorphism_action() {
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let z4 = FiniteCommRing::zmod(4).unwrap();
        let bad = vec![vec![0, 1, 2, 3], vec![0, 0, 0, 0]];
        assert!(fixed_point_functor(&z4, &c2, &bad).is_err());
        // x -> 3x is additive but not multiplicative on Z/4.
        let bad = vec![vec![0, 1, 2, 3], vec![0, 3, 2, 1]];
        assert!(fixed_point_functor(&z4, &c2, &bad).is_err());
    }

    #[test]
    fn product_of_fields() {
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let a = Arc::new(constant_functor(&FiniteCommRing::zmod(2).unwrap(), &c2));
        let b = Arc::new(constant_functor(&FiniteCommRing::zmod(3).unwrap(), &c2));
        let (p, _, _) = product_functor(&a, &b).unwrap();
        assert!(p.levels().iter().all(|r| r.size() == 6));
        assert!(check_axioms(&p).passed());
        let s3 = Arc::new(FiniteGroup::symmetric3());
        let c = Arc::new(constant_functor(&FiniteCommRing::zmod(2).unwrap(), &s3));
        assert!(product_functor(&a, &c).is_err());
    }

    #[test]
    fn quotient_by_zero_and_everything() {
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let t = Arc::new(constant_functor(&FiniteCommRing::zmod(4).unwrap(), &c2));
        let zero = vec![ElemSet::singleton(0); 2];
        let (q, pi) = quotient_functor(&t, &zero).unwrap();
        assert!(pi.is_isomorphism());
        assert!(q.levels().iter().zip(t.levels()).all(|(a, b)| a.same_tables(b)));
        let all = vec![ElemSet::full(4); 2];
        let (q, _) = quotient_functor(&t, &all).unwrap();
        assert!(q.is_zero());
    }
}
