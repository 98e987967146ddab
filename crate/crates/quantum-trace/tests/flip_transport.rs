use laminations::{curve_classes, LamCurve, State};
use quantum_trace::{to_congruent_x, trace_curve, transport_x};
use surface_combinatorics::surface::{Model, Triangulation};

/// `Tr(γ)^2` in the X-torus: squaring makes every exponent even.
fn congruent_trace(c: &LamCurve, tri: &Triangulation) -> quantum_torus::TorusElement {
    let t = trace_curve(c, tri, [State::Minus; 2]).unwrap();
    to_congruent_x(&(&t * &t), tri).unwrap()
}

fn check(tri: &Triangulation, curves: &[LamCurve]) -> usize {
    let mut bad = 0;
    for kappa in tri.interior_edges() {
        let (flipped, _) = tri.flip(kappa).unwrap();
        for c in curves {
            let after = congruent_trace(c, &flipped);
            let before = congruent_trace(c, tri);
            let r = transport_x(&after, tri, kappa).unwrap();
            if !r.equals_polynomial(&before) {
                bad += 1;
            }
        }
    }
    bad
}

fn annulus_curves() -> Vec<LamCurve> {
    let mut v = curve_classes(Model::Annulus11, 2);
    v.extend([LamCurve::Peripheral(0), LamCurve::Peripheral(1)]);
    v
}

#[test]
fn disk_traces_commute_with_flips() {
    for n in [4, 5] {
        let mut curves = curve_classes(Model::Disk(n), 0);
        curves.extend((0..n).map(LamCurve::Peripheral));
        for tri in Triangulation::all_disk_triangulations(n) {
            assert_eq!(check(&tri, &curves), 0, "D{n}");
        }
    }
}

#[test]
fn annulus_traces_commute_with_flips() {
    for k in -2..=2 {
        assert_eq!(check(&Triangulation::annulus(k), &annulus_curves()), 0, "k = {k}");
    }
}

#[test]
fn loop_times_arc_is_multiplicative() {
    for k in -1..=1 {
        let tri = Triangulation::annulus(k);
        let z = trace_curve(&LamCurve::Core, &tri, [State::Minus; 2]).unwrap();
        let t = |j: i64| trace_curve(&LamCurve::Transverse(j), &tri, [State::Minus; 2]).unwrap();
        for j in -3..=3 {
            let rhs = &t(j + 1).shift(2) + &t(j - 1).shift(-2);
            assert_eq!(&z * &t(j), rhs, "k = {k}, j = {j}");
        }
    }
}
