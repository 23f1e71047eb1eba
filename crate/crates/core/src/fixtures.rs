//! The built-in fixture functors and morphisms.

use std::sync::Arc;

use crate::elemset::ElemSet;
use crate::group::FiniteGroup;
use crate::ideal::{generate_ideal, nilradical};
use crate::ring::FiniteCommRing;
use crate::tambara::{
    burnside_c2_mod, constant_functor, cyclic_action, fixed_point_functor, product_functor, quotient_functor,
    TambaraFunctor, TambaraMorphism,
};

fn zmod(n: usize) -> FiniteCommRing {
    FiniteCommRing::zmod(n).expect("small modulus")
}

pub fn const_functor(n: usize, group: &str) -> Arc<TambaraFunctor> {
    let g = Arc::new(FiniteGroup::builtin(group).expect("built-in group"));
    Arc::new(constant_functor(&zmod(n), &g))
}

pub fn galois_c2(q: usize) -> Arc<TambaraFunctor> {
    let g = Arc::new(FiniteGroup::cyclic(2));
    let field = FiniteCommRing::gf(q).expect("supported field");
    let action = cyclic_action(&field, &g, &field.frobenius()).expect("C2 is cyclic");
    Arc::new(fixed_point_functor(&field, &g, &action).expect("Frobenius is an automorphism of order 2"))
}

pub fn burnside(n: usize) -> Arc<TambaraFunctor> {
    Arc::new(burnside_c2_mod(n).expect("odd modulus in range"))
}

/// `const(F2, C2) x const(F3, C2)` with its projections.
pub fn f2_times_f3() -> (Arc<TambaraFunctor>, TambaraMorphism, TambaraMorphism) {
    product_functor(&const_functor(2, "C2"), &const_functor(3, "C2")).expect("same group")
}

/// Every fixture functor, in a fixed order.
pub fn functors() -> Vec<Arc<TambaraFunctor>> {
    vec![
        const_functor(4, "1"),
        const_functor(6, "1"),
        const_functor(12, "1"),
        const_functor(2, "C2"),
        const_functor(4, "C2"),
        const_functor(6, "C2"),
        galois_c2(4),
        burnside(3),
        burnside(9),
        f2_times_f3().0,
        const_functor(9, "C3"),
        const_functor(2, "S3"),
    ]
}

/// The fixture functors over `C2`.
pub fn c2_functors() -> Vec<Arc<TambaraFunctor>> {
    functors().into_iter().filter(|t| t.group().name() == "C2").collect()
}

/// Reduction map `T -> T / nil(T)`.
pub fn reduction(t: &Arc<TambaraFunctor>) -> TambaraMorphism {
    quotient_functor(t, nilradical(t).levels()).expect("the nilradical is an ideal").1
}

/// `const(Z/6, C2) -> const(Z/2, C2)`, reduction mod 2 at every level.
pub fn mod_two_projection() -> TambaraMorphism {
    let (src, dst) = (const_functor(6, "C2"), const_functor(2, "C2"));
    let maps = src.levels().iter().map(|r| (0..r.size()).map(|x| x % 2).collect()).collect();
    TambaraMorphism::new(src, dst, maps).expect("reduction mod 2 commutes with the constant structure maps")
}

/// The quotient map by the ideal generated by one element.
pub fn principal_quotient(t: &Arc<TambaraFunctor>, gen: (usize, usize)) -> TambaraMorphism {
    let i = generate_ideal(t, &[gen]);
    quotient_functor(t, i.levels()).expect("generated ideals are ideals").1
}

/// Every fixture morphism with a short name, in a fixed order.
pub fn morphisms() -> Vec<(String, TambaraMorphism)> {
    let z4 = const_functor(4, "C2");
    let z6 = const_functor(6, "C2");
    let (_, p1, p2) = f2_times_f3();
    vec![
        ("reduction const(Z/4,C2)".to_string(), reduction(&z4)),
        ("reduction burnside-c2-mod(9)".to_string(), reduction(&burnside(9))),
        ("mod 2 const(Z/6,C2)".to_string(), mod_two_projection()),
        ("first projection const(Z/2,C2)xconst(Z/3,C2)".to_string(), p1),
        ("second projection const(Z/2,C2)xconst(Z/3,C2)".to_string(), p2),
        ("quotient const(Z/6,C2) by <2>".to_string(), principal_quotient(&z6, (0, 2))),
        ("quotient const(Z/6,C2) by <3>".to_string(), principal_quotient(&z6, (0, 3))),
        ("quotient burnside-c2-mod(3) by <t>".to_string(), principal_quotient(&burnside(3), (1, 3))),
        ("identity const(Z/6,C2)".to_string(), TambaraMorphism::identity(&z6)),
    ]
}

/// The diagonal ideal with the same member set at every level of a
/// constant functor.
pub fn diagonal(members: &[usize], levels: usize) -> Vec<ElemSet> {
    vec![members.iter().copied().collect(); levels]
}
