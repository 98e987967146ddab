use laminations::{random_congruent_lamination, SampleBounds};
use proptest::prelude::*;
use quantum_trace::{duality_a, trace_lamination};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use surface_combinatorics::Triangulation;

fn triangulation() -> impl Strategy<Value = Triangulation> {
    let start = prop_oneof![
        (4u32..=6).prop_map(Triangulation::disk_fan),
        (-1i64..=1).prop_map(Triangulation::annulus),
    ];
    (start, prop::collection::vec(any::<prop::sample::Index>(), 0..5)).prop_map(|(mut t, picks)| {
        for p in picks {
            let interior = t.interior_edges();
            t = t.flip(interior[p.index(interior.len())]).unwrap().0;
        }
        t
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn traces_are_balanced_and_positive(t in triangulation(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = SampleBounds { max_components: 2, max_weight: 2, max_peripheral: 2, max_twist: 1 };
        let l = random_congruent_lamination(&t, &mut rng, &b);
        let z = trace_lamination(&l, &t).unwrap();
        prop_assert!(z.is_positive());
        prop_assert!(z.terms().all(|(k, _)| t.is_balanced(k)));
        let x = duality_a(&l, &t).unwrap();
        prop_assert!(x.is_positive());
        prop_assert_eq!(x.len(), z.len());
    }
}
