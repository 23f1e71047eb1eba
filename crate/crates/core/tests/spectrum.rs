use std::sync::Arc;

use tambara::fixtures;
use tambara::ideal::{enumerate_ideals, generate_ideal, nilradical, preimage_ideal, radical, TambaraIdeal};
use tambara::spectrum::*;
use tambara::tambara::{zero_functor, TambaraMorphism};
use tambara::{FiniteGroup, TambaraFunctor};

fn analysis(t: &Arc<TambaraFunctor>) -> Analysis {
    Analysis::new(t.clone())
}

/// Prime ideals of `Z/n` from the definition, by scanning residue subsets.
fn zmod_primes_by_scan(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u64..1 << n {
        let has = |x: usize| mask >> x & 1 == 1;
        let proper = !has(1 % n);
        let ideal =
            has(0) && (0..n).all(|a| !has(a) || (0..n).all(|b| (!has(b) || has((a + b) % n)) && has(a * b % n)));
        let prime = (0..n).all(|a| (0..n).all(|b| !has(a * b % n) || has(a) || has(b)));
        if proper && ideal && prime {
            out.push((0..n).filter(|&x| has(x)).collect());
        }
    }
    out.sort();
    out
}

#[test]
fn trivial_group_reduces_to_rings() {
    for n in [4, 6, 12] {
        let t = fixtures::const_functor(n, "1");
        let a = analysis(&t);
        let mut primes: Vec<Vec<usize>> = a.spectrum.primes().iter().map(|p| p.level(0).to_vec()).collect();
        primes.sort();
        assert_eq!(primes, zmod_primes_by_scan(n), "Z/{n}");
        let (_, zariski) = t.level(0).zariski_frame();
        assert_eq!(zariski.size(), a.frame.len());
        assert!(verify_points_primes(&a).passed());
    }
    assert_eq!(analysis(&fixtures::const_functor(6, "1")).spectrum.primes().len(), 2);
    assert_eq!(analysis(&fixtures::const_functor(4, "1")).spectrum.primes().len(), 1);
}

#[test]
fn counts() {
    let z6 = analysis(&fixtures::const_functor(6, "C2"));
    assert_eq!(z6.frame.len(), 4);
    assert_eq!(z6.spectrum.primes().len(), 2);
    assert_eq!(z6.spectrum.space().opens().len(), 4);
    let f2 = analysis(&fixtures::const_functor(2, "C2"));
    assert_eq!(f2.frame.len(), 2);
    assert_eq!(f2.spectrum.primes(), &[TambaraIdeal::zero(&f2.functor)]);
    let z4 = analysis(&fixtures::const_functor(4, "C2"));
    assert_eq!(z4.spectrum.primes(), &[nilradical(&z4.functor)]);
    assert!(z4.spectrum.space().is_irreducible());
}

#[test]
fn zero_functor_is_degenerate() {
    let t = Arc::new(zero_functor(&Arc::new(FiniteGroup::cyclic(2))));
    let a = analysis(&t);
    assert_eq!(a.frame.len(), 1);
    assert!(a.spectrum.primes().is_empty());
    assert!(verify_frame(&a).passed());
    assert!(verify_points_primes(&a).passed());
    assert!(verify_spatial_coherent_spectral(&a).0.passed());
    let c = crt_connectedness(&a).unwrap();
    assert!(c.report.passed());
    assert!(!c.irreducible && !c.nilradical_prime);
}

#[test]
fn every_fixture_verifies() {
    for t in fixtures::functors() {
        let a = analysis(&t);
        for r in [verify_frame(&a), verify_points_primes(&a), verify_spatial_coherent_spectral(&a).0] {
            assert!(r.passed(), "{}: {:?}", r.title, r.failures().collect::<Vec<_>>());
        }
        assert_eq!(primes_by_full_enumeration(&t), a.spectrum.primes(), "{}", t.name());
        let (_, gens) = verify_spatial_coherent_spectral(&a);
        for (i, g) in a.frame.ideals().iter().zip(&gens) {
            assert_eq!(radical(&t, &generate_ideal(&t, g)), *i);
        }
    }
}

#[test]
fn honesty_flag_finds_a_non_prime_level() {
    let a = analysis(&fixtures::burnside(3));
    let note = verify_points_primes(&a).get("points.non-ring-prime-level").unwrap().detail.clone();
    assert!(note.starts_with("found"), "{note}");
}

#[test]
fn morphisms_induce_spectral_maps() {
    for (name, m) in fixtures::morphisms() {
        let (s, d) = (analysis(m.source()), analysis(m.target()));
        let map = spectral_map(&m, &s, &d);
        assert!(map.report.passed(), "{name}: {:?}", map.report.failures().collect::<Vec<_>>());
    }
    let m = fixtures::mod_two_projection();
    let (s, d) = (analysis(m.source()), analysis(m.target()));
    let map = spectral_map(&m, &s, &d);
    assert_eq!(map.point_map.len(), 1);
    assert_eq!(s.spectrum.primes()[map.point_map[0]].levels(), fixtures::diagonal(&[0, 2, 4], 2).as_slice());

    let z6 = fixtures::const_functor(6, "C2");
    let a = analysis(&z6);
    let id = spectral_map(&TambaraMorphism::identity(&z6), &a, &a);
    assert_eq!(id.frame_map, (0..a.frame.len()).collect::<Vec<_>>());
    assert_eq!(id.point_map, (0..a.spectrum.primes().len()).collect::<Vec<_>>());
}

#[test]
fn reduction_is_a_homeomorphism() {
    for t in [fixtures::const_functor(4, "C2"), fixtures::burnside(9)] {
        let a = analysis(&t);
        let r = reduction_invariance(&a).unwrap();
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
        let m = fixtures::reduction(&t);
        let b = analysis(m.target());
        let map = spectral_map(&m, &a, &b);
        let mut points = map.point_map.clone();
        points.sort_unstable();
        assert_eq!(points, (0..a.spectrum.primes().len()).collect::<Vec<_>>());
    }
}

#[test]
fn closed_immersions() {
    for t in fixtures::functors() {
        let a = analysis(&t);
        for i in enumerate_ideals(&t) {
            let r = closed_immersion(&a, &i).unwrap();
            assert!(r.passed(), "{} {}: {:?}", t.name(), i.describe(&t), r.failures().collect::<Vec<_>>());
        }
    }
    let t = fixtures::const_functor(6, "C2");
    let a = analysis(&t);
    let two = TambaraIdeal::new(&t, fixtures::diagonal(&[0, 2, 4], 2)).unwrap();
    assert_eq!(a.spectrum.vanishing(&two).len(), 1);
}

#[test]
fn connectedness() {
    let z6 = crt_connectedness(&analysis(&fixtures::const_functor(6, "C2"))).unwrap();
    assert!(z6.report.passed());
    assert!(z6.clopen && z6.complemented && z6.coprime_pair && z6.product_decomposition);
    let shapes: Vec<(Vec<usize>, Vec<usize>)> = z6
        .decompositions
        .iter()
        .map(|d| if d.2 <= d.3 { (d.2.clone(), d.3.clone()) } else { (d.3.clone(), d.2.clone()) })
        .collect();
    assert_eq!(shapes, vec![(vec![2, 2], vec![3, 3])]);

    let z4 = crt_connectedness(&analysis(&fixtures::const_functor(4, "C2"))).unwrap();
    assert!(!z4.clopen && !z4.complemented && !z4.coprime_pair && !z4.product_decomposition);
    assert!(z4.irreducible && z4.nilradical_prime);

    let prod = crt_connectedness(&analysis(&fixtures::f2_times_f3().0)).unwrap();
    assert!(prod.clopen && prod.report.passed());

    for t in fixtures::functors() {
        let c = crt_connectedness(&analysis(&t)).unwrap();
        assert!(c.report.passed(), "{}: {:?}", t.name(), c.report.failures().collect::<Vec<_>>());
    }
}

#[test]
fn clopen_pieces_match_projections() {
    let (t, p1, p2) = fixtures::f2_times_f3();
    let a = analysis(&t);
    for p in [&p1, &p2] {
        let b = analysis(p.target());
        let q = &b.spectrum.primes()[0];
        let pulled = preimage_ideal(p, q);
        let v = a.spectrum.vanishing(&pulled);
        assert_eq!(v.len(), 1);
        assert!(a.spectrum.space().is_open(v));
    }
}
