//! Closed-form identities on the annulus `A_{1,1}`: loop-arc products, the `B_n` family
//! and products of twisted arcs.

use quantum_torus::error::Result;
use quantum_torus::scalar::QScalar;
use surface_combinatorics::curve::{Curve, Multicurve};
use surface_combinatorics::surface::Model;

use crate::{b_family, Basis, SkeinElement, SkeinEngine};

/// `τ^k(α)`: the spanning arc with winding `k`.
pub fn twisted_arc(k: i64) -> SkeinElement {
    SkeinElement::basis_element(Model::Annulus11, Basis::Muller, Multicurve::single(Curve::Span(k)))
}

/// `B_n` with the end heights it has inside the product `α·τ^{n+1}(α)`.
///
/// The diagram is evaluated with simultaneous ends and shifted by `q^{-1}`, the height
/// factor of an end of `α` lying above an end of `τ^{n+1}(α)`.
pub fn b_element(n: i64) -> Result<SkeinElement> {
    Ok(b_family(n, true)?.evaluate_simultaneous()?.shift(-2))
}

/// Engine value of `T_n(z)·τ^k(α)`.
pub fn loop_arc_lhs(engine: &SkeinEngine, n: i64, k: i64) -> Result<SkeinElement> {
    engine.multiply(&engine.chebyshev_loop(n, false), &twisted_arc(k))
}

/// `q^n τ^{n+k}(α) + q^{-n} τ^{k-n}(α)` (the `n = 0` case is `2τ^k(α)`).
pub fn loop_arc_rhs(n: i64, k: i64) -> SkeinElement {
    twisted_arc(k + n).shift(2 * n).add(&twisted_arc(k - n).shift(-2 * n))
}

/// `q^{n-1} S_{n-1}(z)·B_1`.
pub fn b_closed_form(engine: &SkeinEngine, n: i64) -> Result<SkeinElement> {
    let s = engine.chebyshev_loop(n - 1, true);
    Ok(engine.multiply(&s, &b_element(1)?)?.shift(2 * (n - 1)))
}

/// Engine value of `α·τ^n(α)`.
pub fn twist_product_lhs(engine: &SkeinEngine, n: i64) -> Result<SkeinElement> {
    engine.multiply(&twisted_arc(0), &twisted_arc(n))
}

/// `Σ_{i=1}^{⌊n/2⌋} q^{n-4i+3} S_{n-2i}(z)·B_1 + q^{t/2} τ^{⌊n/2⌋}(α)·τ^{⌈n/2⌉}(α)`
/// with the tail half-exponent `t` supplied by the caller.
pub fn twist_product_rhs(engine: &SkeinEngine, n: i64, tail_half_exp: i64) -> Result<SkeinElement> {
    let b1 = b_element(1)?;
    let mut out = SkeinElement::zero(Model::Annulus11, Basis::Muller);
    for i in 1..=n / 2 {
        let s = engine.chebyshev_loop(n - 2 * i, true);
        out = out.add(&engine.multiply(&s, &b1)?.shift(2 * (n - 4 * i + 3)));
    }
    let tail = engine.multiply(&twisted_arc(n.div_euclid(2)), &twisted_arc(n - n.div_euclid(2)))?;
    Ok(out.add(&tail.shift(tail_half_exp)))
}

/// Tail half-exponent `-4⌈(n+1)/2⌉` of the closed form as usually stated.
pub fn stated_tail_half_exp(n: i64) -> i64 {
    -4 * (n + 2).div_euclid(2)
}

/// Tail half-exponent `-4⌊n/2⌋` obtained by unrolling
/// `α·τ^k(α) = q B_{k-1} + q^{-2} τ(α)·τ^{k-1}(α)` down to `α·α` or `α·τ(α)`.
pub fn recursion_tail_half_exp(n: i64) -> i64 {
    -4 * n.div_euclid(2)
}

/// Right side of `α·τ^k(α) = q B_{k-1} + q^{-2} τ(α)·τ^{k-1}(α)`.
pub fn twist_recursion_rhs(engine: &SkeinEngine, k: i64) -> Result<SkeinElement> {
    let b = b_element(k - 1)?.shift(2);
    let t = engine.multiply(&twisted_arc(1), &twisted_arc(k - 1))?.shift(-4);
    Ok(b.add(&t))
}

/// First term of `a - b`, for failure witnesses.
pub fn witness(a: &SkeinElement, b: &SkeinElement) -> Option<(Multicurve, QScalar)> {
    a.sub(b).terms.into_iter().next()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b_one_is_the_boundary_pair() {
        let pair = Multicurve::from_pairs([(Curve::Boundary(0), 1), (Curve::Boundary(1), 1)]);
        let want = SkeinElement::term(Model::Annulus11, Basis::Muller, pair, QScalar::q_half(-2));
        assert_eq!(b_element(1).unwrap(), want);
    }

    #[test]
    fn b_family_matches_closed_form() {
        let e = SkeinEngine::new(Model::Annulus11);
        for n in 1..=6 {
            assert_eq!(b_element(n).unwrap(), b_closed_form(&e, n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn loop_times_twisted_arc() {
        let e = SkeinEngine::new(Model::Annulus11);
        for n in 0..=5 {
            for k in -2..=2 {
                assert_eq!(loop_arc_lhs(&e, n, k).unwrap(), loop_arc_rhs(n, k), "n = {n}, k = {k}");
            }
        }
    }

    #[test]
    fn twist_products_follow_the_recursion() {
        let e = SkeinEngine::new(Model::Annulus11);
        for k in 2..=6 {
            assert_eq!(twist_product_lhs(&e, k).unwrap(), twist_recursion_rhs(&e, k).unwrap(), "k = {k}");
        }
    }

    #[test]
    fn twist_products_closed_form_with_recursion_tail() {
        let e = SkeinEngine::new(Model::Annulus11);
        for n in 2..=6 {
            let rhs = twist_product_rhs(&e, n, recursion_tail_half_exp(n)).unwrap();
            assert_eq!(twist_product_lhs(&e, n).unwrap(), rhs, "n = {n}");
        }
    }

    #[test]
    fn stated_tail_differs_by_q_minus_two() {
        let e = SkeinEngine::new(Model::Annulus11);
        for n in 2..=6 {
            assert_eq!(stated_tail_half_exp(n), recursion_tail_half_exp(n) - 4);
            let rhs = twist_product_rhs(&e, n, stated_tail_half_exp(n)).unwrap();
            assert_ne!(twist_product_lhs(&e, n).unwrap(), rhs, "n = {n}");
        }
    }
}
