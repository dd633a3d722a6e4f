use malcev_core::closure::{
    close_sym_refl, dtc, is_higher_congruence, is_reflexive, is_symmetric, is_tolerance,
    is_transitive, tc, theta, tolerance, ClosureOptions, Route,
};
use malcev_core::corpus;
use malcev_core::cube::CubeShape;
use malcev_core::relation::CubeRelation;
use malcev_core::FiniteAlgebra;
use proptest::prelude::*;

fn small_algebras() -> Vec<FiniteAlgebra> {
    corpus::bundled_up_to(3)
}

/// (algebra index, dimension, cubes as label vectors)
fn case() -> impl Strategy<Value = (usize, usize, Vec<Vec<usize>>)> {
    let count = small_algebras().len();
    (0..count, 1usize..=2).prop_flat_map(|(a, k)| {
        let n = small_algebras()[a].size();
        let cube = proptest::collection::vec(0..n, 1 << k);
        (Just(a), Just(k), proptest::collection::vec(cube, 1..=3))
    })
}

fn relation(k: usize, cubes: &[Vec<usize>]) -> CubeRelation<usize> {
    CubeRelation::from_label_vecs(CubeShape::normalized(k), cubes.iter().cloned()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sym_refl_closure_is_a_closure((_, k, cubes) in case()) {
        let r = relation(k, &cubes);
        let c = close_sym_refl(&r).unwrap();
        prop_assert!(r.is_subset(&c));
        prop_assert!(is_reflexive(&c) && is_symmetric(&c));
        prop_assert_eq!(close_sym_refl(&c).unwrap(), c.clone());
        let smaller = relation(k, &cubes[..1]);
        prop_assert!(close_sym_refl(&smaller).unwrap().is_subset(&c));
    }

    #[test]
    fn tolerance_is_least_tolerance((a, k, cubes) in case()) {
        let alg = &small_algebras()[a];
        let opts = ClosureOptions::default();
        let r = relation(k, &cubes);
        let t = tolerance(alg, &r, &opts).unwrap();
        prop_assert!(r.is_subset(&t));
        prop_assert!(is_tolerance(alg, &t));
        prop_assert_eq!(tolerance(alg, &t, &opts).unwrap(), t.clone());
        // directional closures of a tolerance stay tolerances
        for i in 0..k {
            let d = dtc(&t, i).unwrap();
            prop_assert!(t.is_subset(&d));
            prop_assert!(is_tolerance(alg, &d), "direction {}", i);
        }
    }

    #[test]
    fn theta_is_least_higher_congruence((a, k, cubes) in case()) {
        let alg = &small_algebras()[a];
        let opts = ClosureOptions::default();
        let r = relation(k, &cubes);
        let (th, _) = theta(alg, &r, Route::BasicOps, &opts).unwrap();
        prop_assert!(r.is_subset(&th));
        prop_assert!(is_higher_congruence(alg, &th));
        prop_assert!(is_transitive(&th));
        prop_assert_eq!(theta(alg, &th, Route::BasicOps, &opts).unwrap().0, th.clone());
        prop_assert_eq!(tc(&th, None).unwrap(), th.clone());
        let (poly, _) = theta(alg, &r, Route::PolK, &opts).unwrap();
        prop_assert_eq!(&poly, &th);
        let (sub, _) = theta(alg, &relation(k, &cubes[..1]), Route::BasicOps, &opts).unwrap();
        prop_assert!(sub.is_subset(&th));
    }
}
