use quantum_torus::torus::TorusElement;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use skein_engine::{a_torus_lattice, cut, edge_curves, SkeinEngine};
use surface_combinatorics::curve::{Curve, Multicurve};
use surface_combinatorics::surface::{Model, Triangulation};

fn triangulations() -> Vec<Triangulation> {
    let mut out = vec![];
    for n in 3..=6 {
        out.extend(Triangulation::all_disk_triangulations(n));
    }
    out.extend((-2..=2).map(Triangulation::annulus));
    out
}

#[test]
fn cut_of_an_edge_is_its_generator() {
    for tri in triangulations() {
        let engine = SkeinEngine::new(tri.model);
        let lat = a_torus_lattice(&tri);
        for (i, c) in edge_curves(&tri).unwrap().into_iter().enumerate() {
            assert_eq!(cut(&engine, &Multicurve::single(c), &tri).unwrap(), TorusElement::monomial(&lat, lat.unit(i)));
        }
    }
}

#[test]
fn cut_is_multiplicative_on_crossing_pairs() {
    let cases = [
        (Model::Disk(5), Curve::chord(0, 2), Curve::chord(1, 3)),
        (Model::Disk(6), Curve::chord(0, 3), Curve::chord(1, 4)),
        (Model::Disk(6), Curve::chord(1, 5), Curve::chord(0, 2)),
        (Model::Annulus11, Curve::Span(0), Curve::Span(1)),
        (Model::Annulus11, Curve::Loop, Curve::Span(-1)),
    ];
    for (model, a, b) in cases {
        let engine = SkeinEngine::new(model);
        let tri = match model {
            Model::Disk(n) => Triangulation::disk_fan(n),
            _ => Triangulation::annulus(0),
        };
        let (ma, mb) = (Multicurve::single(a), Multicurve::single(b));
        let prod = engine.basis_product(&ma, &mb).unwrap();
        let lhs = skein_engine::cut_element(&engine, &prod, &tri).unwrap();
        let rhs = &cut(&engine, &ma, &tri).unwrap() * &cut(&engine, &mb, &tri).unwrap();
        assert_eq!(lhs, rhs, "{a} {b}");
    }
}

#[test]
fn drawn_products_do_not_depend_on_slot_order() {
    let cases = [
        (Model::Disk(5), vec![Curve::chord(0, 2), Curve::chord(0, 3)], Curve::chord(1, 4)),
        (Model::Disk(6), vec![Curve::chord(0, 2), Curve::chord(0, 2), Curve::chord(3, 5)], Curve::chord(1, 4)),
        (Model::Disk(6), vec![Curve::chord(1, 3), Curve::chord(4, 0)], Curve::chord(2, 5)),
        (Model::Annulus11, vec![Curve::Span(0), Curve::Span(0)], Curve::Span(2)),
        (Model::Annulus11, vec![Curve::Span(1)], Curve::Loop),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for (model, top, c) in cases {
        let engine = SkeinEngine::new(model);
        let i = Multicurve::from_pairs(top.iter().map(|c| (*c, 1)));
        let base = engine.draw_product::<ChaCha8Rng>(&i, c, None).unwrap();
        for _ in 0..20 {
            let got = engine.draw_product(&i, c, Some(&mut rng));
            assert_eq!(got.as_ref().ok(), Some(&base), "{top:?} {c} {got:?}");
        }
    }
}
