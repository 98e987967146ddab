use proptest::prelude::*;
use surface_combinatorics::surface::{mat_mul, mutate_exchange, transpose};
use surface_combinatorics::Triangulation;

/// A triangulation reached from a standard one by a sequence of flips.
fn triangulation() -> impl Strategy<Value = Triangulation> {
    let start = prop_oneof![
        (3u32..=7).prop_map(Triangulation::disk_fan),
        (-2i64..=2).prop_map(Triangulation::annulus),
    ];
    (start, prop::collection::vec(any::<prop::sample::Index>(), 0..8)).prop_map(|(mut t, picks)| {
        for p in picks {
            let interior = t.interior_edges();
            if interior.is_empty() {
                break;
            }
            t = t.flip(interior[p.index(interior.len())]).unwrap().0;
        }
        t
    })
}

fn antisymmetric(m: &[Vec<i64>]) -> bool {
    (0..m.len()).all(|i| (0..m.len()).all(|j| m[i][j] == -m[j][i]))
}

proptest! {
    #[test]
    fn matrices_are_antisymmetric_and_compatible(t in triangulation()) {
        let eps = t.exchange_matrix();
        let pi = t.compatibility_matrix();
        prop_assert!(antisymmetric(&eps));
        prop_assert!(antisymmetric(&pi));
        let p = t.p_matrix();
        let ppp = mat_mul(&mat_mul(&p, &pi), &transpose(&p));
        let want: Vec<Vec<i64>> = eps.iter().map(|r| r.iter().map(|v| -4 * v).collect()).collect();
        prop_assert_eq!(ppp, want);
    }

    #[test]
    fn flip_is_an_involution(t in triangulation(), pick in any::<prop::sample::Index>()) {
        let interior = t.interior_edges();
        prop_assume!(!interior.is_empty());
        let k = interior[pick.index(interior.len())];
        let (t1, r) = t.flip(k).unwrap();
        prop_assert!(t1.validate().is_ok());
        let (t2, _) = t1.flip(r.new).unwrap();
        prop_assert_eq!(t2.class_key(), t.class_key());
        prop_assert_eq!(t2.exchange_matrix(), t.exchange_matrix());
        prop_assert_eq!(t2.compatibility_matrix(), t.compatibility_matrix());
    }

    #[test]
    fn flip_mutates_the_exchange_matrix(t in triangulation(), pick in any::<prop::sample::Index>()) {
        let interior = t.interior_edges();
        prop_assume!(!interior.is_empty());
        let k = interior[pick.index(interior.len())];
        let (t1, _) = t.flip(k).unwrap();
        prop_assert_eq!(t1.exchange_matrix(), mutate_exchange(&t.exchange_matrix(), t.idx(k)));
    }

    #[test]
    fn json_round_trip(t in triangulation()) {
        let s = serde_json::to_string(&t.to_json()).unwrap();
        let back = Triangulation::from_json(&serde_json::from_str(&s).unwrap()).unwrap();
        prop_assert_eq!(back, t);
    }
}
