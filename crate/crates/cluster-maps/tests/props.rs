use std::sync::OnceLock;

use cluster_maps::suites::verify_square;
use laminations::{random_congruent_lamination, SampleBounds};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use skein_engine::SkeinEngine;
use surface_combinatorics::surface::{Model, Triangulation};

fn engine() -> &'static SkeinEngine {
    static E: OnceLock<SkeinEngine> = OnceLock::new();
    E.get_or_init(|| SkeinEngine::new(Model::Disk(5)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn square_commutes_on_random_congruent_laminations(pick in any::<prop::sample::Index>(), seed in any::<u64>()) {
        let tris = Triangulation::all_disk_triangulations(5);
        let tri = &tris[pick.index(tris.len())];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = SampleBounds { max_components: 2, max_weight: 2, max_peripheral: 1, max_twist: 0 };
        let l = random_congruent_lamination(tri, &mut rng, &b);
        let r = verify_square(engine(), &l, tri);
        prop_assert!(r.equal, "{}", serde_json::to_string(&r).unwrap());
    }
}
