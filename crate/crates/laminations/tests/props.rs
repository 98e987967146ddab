use laminations::{random_a_lamination, tropical_mutate_a, tropical_mutate_x, ALamination, SampleBounds};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use surface_combinatorics::Triangulation;

fn triangulation() -> impl Strategy<Value = Triangulation> {
    let start = prop_oneof![
        (4u32..=7).prop_map(Triangulation::disk_fan),
        (-2i64..=2).prop_map(Triangulation::annulus),
    ];
    (start, prop::collection::vec(any::<prop::sample::Index>(), 0..6)).prop_map(|(mut t, picks)| {
        for p in picks {
            let interior = t.interior_edges();
            t = t.flip(interior[p.index(interior.len())]).unwrap().0;
        }
        t
    })
}

fn case() -> impl Strategy<Value = (Triangulation, ALamination, usize)> {
    (triangulation(), any::<u64>(), any::<prop::sample::Index>()).prop_map(|(t, seed, pick)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = random_a_lamination(t.model, &mut rng, &SampleBounds::default());
        let interior = t.interior_edges();
        let k = t.idx(interior[pick.index(interior.len())]);
        (t, l, k)
    })
}

proptest! {
    #[test]
    fn tropical_ensemble_round_trip((_t, l, _k) in case()) {
        prop_assert_eq!(l.tropical_ensemble().inverse_tropical_ensemble(), l);
    }

    #[test]
    fn shear_coordinates_mutate_tropically((t, l, k) in case()) {
        let p = l.tropical_ensemble();
        let (t1, _) = t.flip(t.edges[k].id).unwrap();
        let want = tropical_mutate_x(&p.shear_coords(&t).unwrap(), k, &t.exchange_matrix());
        prop_assert_eq!(p.shear_coords(&t1).unwrap(), want);
    }

    #[test]
    fn a_coordinates_mutate_tropically((t, l, k) in case()) {
        let (t1, _) = t.flip(t.edges[k].id).unwrap();
        let want = tropical_mutate_a(&l.a_coords_doubled(&t).unwrap(), k, &t.exchange_matrix());
        prop_assert_eq!(l.a_coords_doubled(&t1).unwrap(), want);
    }

    #[test]
    fn lamination_json_round_trip((t, l, _k) in case()) {
        let s = serde_json::to_string(&l.to_json(&t).unwrap()).unwrap();
        let back = ALamination::from_json(&serde_json::from_str(&s).unwrap(), &t).unwrap();
        prop_assert_eq!(back, l);
    }
}
