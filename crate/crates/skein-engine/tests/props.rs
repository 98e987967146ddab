use proptest::prelude::*;
use skein_engine::{cut_element, SkeinElement, SkeinEngine};
use surface_combinatorics::curve::{Curve, Multicurve};
use surface_combinatorics::surface::{Model, Triangulation};
use std::sync::OnceLock;

fn engine() -> &'static SkeinEngine {
    static E: OnceLock<SkeinEngine> = OnceLock::new();
    E.get_or_init(|| SkeinEngine::new(Model::Disk(5)))
}

fn diagonal() -> impl Strategy<Value = Curve> {
    prop::sample::select(vec![(0, 2), (0, 3), (1, 3), (1, 4), (2, 4)]).prop_map(|(a, b)| Curve::chord(a, b))
}

fn element() -> impl Strategy<Value = SkeinElement> {
    diagonal().prop_map(|c| SkeinElement::basis_element(Model::Disk(5), skein_engine::Basis::Muller, Multicurve::single(c)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplication_is_associative(x in element(), y in element(), z in element()) {
        let e = engine();
        let l = e.multiply(&e.multiply(&x, &y).unwrap(), &z).unwrap();
        let r = e.multiply(&x, &e.multiply(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn cut_is_multiplicative(x in element(), y in element(), pick in any::<prop::sample::Index>()) {
        let e = engine();
        let tris = Triangulation::all_disk_triangulations(5);
        let tri = &tris[pick.index(tris.len())];
        let lhs = cut_element(e, &e.multiply(&x, &y).unwrap(), tri).unwrap();
        let rhs = &cut_element(e, &x, tri).unwrap() * &cut_element(e, &y, tri).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
