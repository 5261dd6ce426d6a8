//! Property tests over randomly generated complexes, subcomplexes and
//! simplicial self-maps: lattice laws, valuation identities, chain-algebra
//! identities, and the agreement of the Lefschetz evaluators.

mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;

use lefschetz_core::ratio::int;
use lefschetz_core::{
    barycentric_subdivide, boundary_operator, chain_lefschetz, homological_lefschetz,
    identity_subdivision, induced_chain_map, lefschetz_axiomatic, lefschetz_open_sum,
    lefschetz_report, simplex_coefficient, subdivision_operator, ChainOperator, Complex, MapPair,
    Simplex, SimplicialMap,
};

fn complex_strategy(max_vertex: u32, max_pieces: usize) -> impl Strategy<Value = Complex> {
    prop::collection::vec(
        prop::collection::btree_set(0..max_vertex, 1..=3usize),
        1..=max_pieces,
    )
    .prop_map(|pieces| {
        Complex::from_maximal(
            pieces
                .into_iter()
                .map(|s| s.into_iter().collect::<Vec<_>>()),
        )
        .expect("distinct vertices by construction")
    })
}

fn sampled_subcomplexes(complex: &Complex, seed: u64, count: usize) -> Vec<Complex> {
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    complex.sample_subcomplexes(count, &mut rng)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn complexes_are_face_closed(complex in complex_strategy(8, 6)) {
        let set: BTreeSet<Simplex> = complex.simplices().cloned().collect();
        prop_assert!(Complex::from_closed_set(set).is_ok());
    }

    #[test]
    fn euler_characteristic_of_closed_simplices_is_one(complex in complex_strategy(8, 6)) {
        for s in complex.simplices() {
            prop_assert_eq!(Complex::closed_simplex(s).euler_characteristic(), 1);
        }
    }

    #[test]
    fn lattice_laws(complex in complex_strategy(8, 6), seed in any::<u64>()) {
        let subs = sampled_subcomplexes(&complex, seed, 3);
        let (a, b, c) = (&subs[0], &subs[1], &subs[2]);
        prop_assert_eq!(a.union(b), b.union(a));
        prop_assert_eq!(a.intersection(b), b.intersection(a));
        prop_assert_eq!(a.union(&b.union(c)), a.union(b).union(c));
        prop_assert_eq!(a.intersection(&b.intersection(c)), a.intersection(b).intersection(c));
        prop_assert_eq!(a.union(a), a.clone());
        prop_assert_eq!(a.intersection(a), a.clone());
        prop_assert_eq!(
            a.intersection(&b.union(c)),
            a.intersection(b).union(&a.intersection(c))
        );
        prop_assert_eq!(
            a.union(&b.intersection(c)),
            a.union(b).intersection(&a.union(c))
        );
    }

    #[test]
    fn euler_characteristic_is_a_valuation(complex in complex_strategy(8, 6), seed in any::<u64>()) {
        let subs = sampled_subcomplexes(&complex, seed, 2);
        let (a, b) = (&subs[0], &subs[1]);
        prop_assert_eq!(
            a.union(b).euler_characteristic() + a.intersection(b).euler_characteristic(),
            a.euler_characteristic() + b.euler_characteristic()
        );
    }

    #[test]
    fn boundary_squared_is_zero(complex in complex_strategy(8, 6)) {
        let dim = complex.dimension().unwrap_or(0);
        for q in 2..=dim {
            let composed = boundary_operator(&complex, q - 1).compose(&boundary_operator(&complex, q));
            prop_assert_eq!(composed, ChainOperator::zero(q, q - 2));
        }
    }

    #[test]
    fn induced_maps_are_chain_maps(complex in complex_strategy(7, 5), seed in any::<u64>()) {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let map = common::random_self_map(&mut rng, &complex);
        let dim = complex.dimension().unwrap_or(0);
        for q in 1..=dim {
            let lhs = boundary_operator(map.base(), q).compose(&induced_chain_map(&map, q));
            let rhs = induced_chain_map(&map, q - 1).compose(&boundary_operator(map.refined(), q));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn self_coefficients_are_signs(complex in complex_strategy(7, 5), seed in any::<u64>()) {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let map = common::random_self_map(&mut rng, &complex);
        let pair = MapPair::whole(map);
        for x in complex.simplices() {
            let c = simplex_coefficient(&pair, x);
            prop_assert!(c == int(-1) || c == int(0) || c == int(1));
            if let Some(image) = pair.map().image_simplex(x) {
                if image.dim() < x.dim() {
                    prop_assert_eq!(c, int(0));
                }
            }
        }
    }

    #[test]
    fn identity_lefschetz_is_euler(complex in complex_strategy(8, 6), seed in any::<u64>()) {
        let id = SimplicialMap::identity(&complex);
        for a in sampled_subcomplexes(&complex, seed, 3) {
            let pair = MapPair::new(id.clone(), a.clone()).unwrap();
            let chi = int(a.euler_characteristic());
            prop_assert_eq!(chain_lefschetz(&pair), chi.clone());
            prop_assert_eq!(lefschetz_axiomatic(&pair), chi.clone());
            prop_assert_eq!(lefschetz_open_sum(&pair), chi);
        }
    }

    #[test]
    fn evaluators_agree_on_whole_pairs(complex in complex_strategy(7, 5), seed in any::<u64>()) {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let map = common::random_self_map(&mut rng, &complex);
        let report = lefschetz_report(&MapPair::whole(map)).unwrap();
        prop_assert!(report.agree);
        // the common value is an integer
        prop_assert!(report.value_chain.is_integer());
    }

    #[test]
    fn hopf_trace_identity(complex in complex_strategy(7, 5), seed in any::<u64>()) {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let map = common::random_self_map(&mut rng, &complex);
        let pair = MapPair::whole(map);
        prop_assert_eq!(chain_lefschetz(&pair), homological_lefschetz(&pair).unwrap());
    }

    #[test]
    fn axiomatic_evaluators_are_valuations(complex in complex_strategy(7, 5), seed in any::<u64>()) {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let map = common::random_self_map(&mut rng, &complex);
        let subs = sampled_subcomplexes(&complex, seed.wrapping_add(1), 2);
        let (a, b) = (&subs[0], &subs[1]);
        let pair = |s: &Complex| MapPair::new(map.clone(), s.clone()).unwrap();
        for evaluate in [lefschetz_axiomatic, lefschetz_open_sum, chain_lefschetz] {
            let lhs = evaluate(&pair(&a.union(b))) + evaluate(&pair(&a.intersection(b)));
            let rhs = evaluate(&pair(a)) + evaluate(&pair(b));
            prop_assert_eq!(lhs, rhs);
        }
    }
}

proptest! {
    // subdivision checks run fewer cases: each builds a barycentric
    // subdivision and its operator
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn subdivision_operator_is_a_chain_map(complex in complex_strategy(5, 3)) {
        let sub = barycentric_subdivide(&identity_subdivision(&complex));
        lefschetz_core::subdivision::validate(&sub).unwrap();
        let s = subdivision_operator(&sub);
        let dim = complex.dimension().unwrap_or(0);
        for q in 1..=dim {
            let lhs = boundary_operator(sub.refined(), q).compose(&s.operator(q));
            let rhs = s.operator(q - 1).compose(&boundary_operator(sub.base(), q));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn subdivision_tiling_is_positive(complex in complex_strategy(5, 3)) {
        use lefschetz_core::subdivision::{orientation_sign, relative_volume};
        let sub = barycentric_subdivide(&identity_subdivision(&complex));
        let s = subdivision_operator(&sub);
        for sigma in complex.simplices() {
            let q = sigma.dim();
            let op = s.operator(q);
            let col = op.column(sigma).expect("every base simplex is subdivided");
            let mut total = int(0);
            for (x, coeff) in col.iter() {
                // column support: same dimension, carrier exactly sigma
                prop_assert_eq!(x.dim(), sigma.dim());
                prop_assert_eq!(&sub.carrier_of(x), sigma);
                prop_assert_eq!(coeff.clone(), orientation_sign(&sub, sigma, x));
                // volume corrected by the operator sign is positive
                let corrected = relative_volume(&sub, sigma, x) * coeff;
                prop_assert!(corrected > int(0));
                total += corrected;
            }
            // and the corrected volumes tile the base simplex exactly
            prop_assert_eq!(total, int(1));
        }
    }
}

#[test]
fn sampled_subcomplex_generator_is_deterministic() {
    let complex = common::sphere();
    let a = sampled_subcomplexes(&complex, 99, 5);
    let b = sampled_subcomplexes(&complex, 99, 5);
    assert_eq!(a, b);
}
