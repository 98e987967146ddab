use std::sync::Arc;

use proptest::prelude::*;
use quantum_torus::torus::{chebyshev_eval, weyl_product};
use quantum_torus::{ChebyshevKind, ChebyshevPoly, QScalar, SkewLattice, TorusElement};

fn lattice(upper: [i64; 3]) -> Arc<SkewLattice> {
    let [a, b, c] = upper;
    let form = vec![vec![0, a, b], vec![-a, 0, c], vec![-b, -c, 0]];
    Arc::new(SkewLattice::new(vec!["x".into(), "y".into(), "z".into()], form).unwrap())
}

fn scalar() -> impl Strategy<Value = QScalar> {
    prop::collection::vec((-6i64..=6, -3i64..=3), 0..4).prop_map(QScalar::from_pairs)
}

fn vector() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, 3)
}

fn element(lat: Arc<SkewLattice>) -> impl Strategy<Value = TorusElement> {
    prop::collection::vec((vector(), scalar()), 0..4).prop_map(move |terms| {
        let mut x = TorusElement::zero(&lat);
        for (k, c) in terms {
            x.add_term(k, &c);
        }
        x
    })
}

fn form() -> impl Strategy<Value = [i64; 3]> {
    [-3i64..=3, -3i64..=3, -3i64..=3]
}

proptest! {
    #[test]
    fn scalar_ring_laws(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!((a.clone() * b.clone()).bar(), a.bar() * b.bar());
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert!((a.clone() - a).is_zero());
    }

    #[test]
    fn scalar_json_round_trip(a in scalar()) {
        let s = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<QScalar>(&s).unwrap(), a);
    }

    #[test]
    fn generators_q_commute(f in form(), a in vector(), b in vector()) {
        let lat = lattice(f);
        let (ma, mb) = (TorusElement::monomial(&lat, a.clone()), TorusElement::monomial(&lat, b.clone()));
        prop_assert_eq!(&ma * &mb, (&mb * &ma).shift(2 * lat.pair(&a, &b)));
        prop_assert_eq!(weyl_product(&lat, &[a.clone(), b.clone()]), (&ma * &mb).shift(-lat.pair(&a, &b)));
    }

    #[test]
    fn multiplication_is_associative_and_distributive(
        (x, y, z) in form().prop_flat_map(|f| {
            let lat = lattice(f);
            (element(lat.clone()), element(lat.clone()), element(lat))
        })
    ) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
    }

    #[test]
    fn monomial_inverses(f in form(), a in vector(), c in -4i64..=4) {
        let lat = lattice(f);
        let m = TorusElement::term(&lat, a, QScalar::q_half(c));
        let inv = m.monomial_inverse().unwrap();
        prop_assert_eq!(&m * &inv, TorusElement::one(&lat));
    }

    #[test]
    fn chebyshev_identities(f in form(), a in vector(), m in 0i64..6, n in 0i64..6) {
        let lat = lattice(f);
        let x = &TorusElement::monomial(&lat, a.clone()) + &TorusElement::monomial(&lat, a.iter().map(|v| -v).collect());
        let t = |k: i64| chebyshev_eval(ChebyshevKind::First, k, &x).unwrap();
        let s = |k: i64| chebyshev_eval(ChebyshevKind::Second, k, &x).unwrap();
        prop_assert_eq!(&t(m) * &t(n), &t(m + n) + &t((m - n).abs()));
        if n >= 2 {
            prop_assert_eq!(t(n), &s(n) - &s(n - 2));
        }
        prop_assert_eq!(ChebyshevPoly::new(ChebyshevKind::First, n as usize).eval(&x), t(n));
        prop_assert_eq!(ChebyshevPoly::new(ChebyshevKind::Second, n as usize).eval(&x), s(n));
    }
}
