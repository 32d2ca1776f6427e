use expcone_core::cone::Mode;
use expcone_core::rational::{self, int, ratio, QVec, Rational};
use expcone_core::root_system::is_weight;
use expcone_core::{
    expanding_cone, floor, floor_prime, horospherical_roots, hplus_contained_in_u, CartanVector,
    Covector, Family, FloorPrime, ParabolicData, RootSystem,
};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn proper_subsets(sys: &RootSystem) -> Vec<Vec<usize>> {
    let n = sys.rank();
    (0u32..(1 << n))
        .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect::<Vec<_>>())
        .filter(|levi| ParabolicData::new(sys, levi).is_ok())
        .collect()
}

fn all_systems(max_rank: usize) -> Vec<RootSystem> {
    let mut out = Vec::new();
    for f in [Family::A, Family::B, Family::C, Family::D] {
        for r in f.min_rank()..=max_rank {
            out.push(RootSystem::build(f, r).unwrap());
        }
    }
    out
}

#[test]
fn coroots_span_the_cartan_subspace() {
    for sys in all_systems(4) {
        for levi in proper_subsets(&sys) {
            let pd = ParabolicData::new(&sys, &levi).unwrap();
            let ec = expanding_cone(&sys, &pd).unwrap();
            assert!(!ec.roots.is_empty());
            assert_eq!(ec.cone.span_dim(), sys.rank(), "{} {levi:?}", sys.label());
            assert_eq!(ec.cone.equations(), sys.cartan_equations().as_slice());
        }
    }
}

#[test]
fn kappa_rescaling_leaves_cones_and_floors_unchanged() {
    for (f, r) in [
        (Family::A, 3),
        (Family::B, 2),
        (Family::C, 3),
        (Family::D, 4),
    ] {
        let a = RootSystem::build(f, r).unwrap();
        let b = RootSystem::build_with_kappa(f, r, ratio(3, 7)).unwrap();
        for levi in proper_subsets(&a) {
            let ea = expanding_cone(&a, &ParabolicData::new(&a, &levi).unwrap()).unwrap();
            let eb = expanding_cone(&b, &ParabolicData::new(&b, &levi).unwrap()).unwrap();
            assert!(ea.cone.same_cone(&eb.cone));
            let c: QVec = (0..r)
                .map(|i| {
                    if levi.contains(&i) {
                        int(0)
                    } else {
                        int(1 + i as i64)
                    }
                })
                .collect();
            let w = a.from_simple_values(&c).unwrap();
            let s = CartanVector(
                ea.coroots
                    .iter()
                    .fold(vec![Rational::zero(); a.ambient_dim()], |acc, x| {
                        rational::add(&acc, &x.0)
                    }),
            );
            let fa = horospherical_roots(&a, &w).unwrap();
            let fb = horospherical_roots(&b, &w).unwrap();
            assert_eq!(floor(&ea, &fa, &s).unwrap(), floor(&eb, &fb, &s).unwrap());
            assert_eq!(
                floor_prime(&ea, &fa, &s).unwrap(),
                floor_prime(&eb, &fb, &s).unwrap()
            );
        }
    }
}

#[test]
fn flow_expanding_exactly_the_radical_stays_in_the_cone() {
    for sys in all_systems(4) {
        for levi in proper_subsets(&sys) {
            let pd = ParabolicData::new(&sys, &levi).unwrap();
            let ec = expanding_cone(&sys, &pd).unwrap();
            let c: QVec = (0..sys.rank())
                .map(|i| {
                    if levi.contains(&i) {
                        int(0)
                    } else {
                        ratio(2 * i as i64 + 1, 3)
                    }
                })
                .collect();
            let w = sys.from_simple_values(&c).unwrap();
            let fd = horospherical_roots(&sys, &w).unwrap();
            let mut want = ec.roots.clone();
            let mut got = fd.expanded_roots.clone();
            want.sort_by(|x, y| rational::lex_cmp(&x.0, &y.0));
            got.sort_by(|x, y| rational::lex_cmp(&x.0, &y.0));
            assert_eq!(got, want);
            assert!(hplus_contained_in_u(&ec, &fd));
            for t in [ratio(1, 2), int(1), int(7)] {
                assert!(ec.cone.member(&w.scaled(&t).0, Mode::Open).unwrap());
            }
        }
    }
}

#[test]
fn facet_weights_lie_in_dual_cone_and_weight_lattice() {
    for sys in all_systems(4) {
        for levi in proper_subsets(&sys) {
            let ec = expanding_cone(&sys, &ParabolicData::new(&sys, &levi).unwrap()).unwrap();
            for fw in &ec.facet_weights {
                let beta = Covector(fw.clone());
                assert!(is_weight(&sys, &beta));
                for a in &ec.roots {
                    assert!(!sys.pairing(&beta, a).is_negative());
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn interior_points_have_positive_facet_values(
        which in 0usize..4,
        coeffs in prop::collection::vec(1i64..50, 40),
    ) {
        let sys = [
            RootSystem::build(Family::A, 3).unwrap(),
            RootSystem::build(Family::B, 3).unwrap(),
            RootSystem::build(Family::C, 2).unwrap(),
            RootSystem::build(Family::D, 4).unwrap(),
        ][which].clone();
        let ec = expanding_cone(&sys, &ParabolicData::new(&sys, &[0]).unwrap()).unwrap();
        let mut s = vec![Rational::zero(); sys.ambient_dim()];
        for (x, c) in ec.coroots.iter().zip(&coeffs) {
            s = rational::add(&s, &rational::scale(&int(*c), &x.0));
        }
        for f in &ec.facet_weights {
            prop_assert!(rational::dot(f, &s).is_positive());
        }
    }

    #[test]
    fn floor_prime_dominates_floor(
        c in prop::collection::vec(0i64..4, 3),
        s in prop::collection::vec(-6i64..=6, 3),
        levi_mask in 0u32..8,
    ) {
        let sys = RootSystem::build(Family::A, 3).unwrap();
        let levi: Vec<usize> = (0..3).filter(|i| levi_mask & (1 << i) != 0).collect();
        prop_assume!(ParabolicData::new(&sys, &levi).is_ok());
        let c: QVec = (0..3).map(|i| if levi.contains(&i) { int(0) } else { int(c[i]) }).collect();
        prop_assume!(!rational::is_zero_vec(&c));
        let ec = expanding_cone(&sys, &ParabolicData::new(&sys, &levi).unwrap()).unwrap();
        let w = sys.from_simple_values(&c).unwrap();
        let sv = sys.from_simple_values(&s.iter().map(|&x| int(x)).collect::<Vec<_>>()).unwrap();
        let fd = horospherical_roots(&sys, &w).unwrap();
        let fl = floor(&ec, &fd, &sv).unwrap();
        match floor_prime(&ec, &fd, &sv).unwrap() {
            FloorPrime::Finite(fp) => prop_assert!(fp >= fl),
            FloorPrime::Unbounded => {}
        }
        prop_assert!(!fl.is_negative());
    }
}
