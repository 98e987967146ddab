//! X-torus elements with denominators in the single flip variable, and the quantum
//! cluster transformation of a flip written as a finite adjoint action.

use std::collections::BTreeSet;
use std::sync::Arc;

use quantum_torus::error::{Error, Result};
use quantum_torus::torus::{SkewLattice, TorusElement};
use quantum_torus::QScalar;
use surface_combinatorics::surface::{EdgeId, Triangulation};

use crate::trace::x_lattice;

/// `N · ∏_{c ∈ D} (1 + v^c X_κ)^{-1}` with `v = q^{-2}` and odd `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalX {
    pub numerator: TorusElement,
    pub kappa: usize,
    pub denominator: BTreeSet<i64>,
}

/// `1 + v^c X_κ`.
fn factor(lat: &Arc<SkewLattice>, kappa: usize, c: i64) -> TorusElement {
    let mut f = TorusElement::one(lat);
    f.add_term(lat.unit(kappa), &QScalar::q_half(-4 * c));
    f
}

impl RationalX {
    pub fn polynomial(x: TorusElement, kappa: usize) -> Self {
        Self { numerator: x, kappa, denominator: BTreeSet::new() }
    }

    fn denominator_element(&self, set: &BTreeSet<i64>) -> TorusElement {
        let lat = self.numerator.lattice().clone();
        let mut d = TorusElement::one(&lat);
        for &c in set {
            d = &d * &factor(&lat, self.kappa, c);
        }
        d
    }

    /// Rewrites over the denominator `set ⊇ self.denominator`.
    fn over(&self, set: &BTreeSet<i64>) -> TorusElement {
        let extra: BTreeSet<i64> = set.difference(&self.denominator).copied().collect();
        &self.numerator * &self.denominator_element(&extra)
    }

    pub fn add(&self, other: &Self) -> Self {
        let set: BTreeSet<i64> = self.denominator.union(&other.denominator).copied().collect();
        let numerator = &self.over(&set) + &other.over(&set);
        Self { numerator, kappa: self.kappa, denominator: set }
    }

    /// `a D^{-1} = b E^{-1}` iff `a E = b D`, the denominators being central among themselves.
    pub fn equals(&self, other: &Self) -> bool {
        let lhs = &self.numerator * &other.denominator_element(&other.denominator);
        let rhs = &other.numerator * &self.denominator_element(&self.denominator);
        lhs == rhs
    }

    /// The product of the denominator factors.
    pub fn denominator_product(&self) -> TorusElement {
        self.denominator_element(&self.denominator)
    }

    /// Equality with a Laurent polynomial.
    pub fn equals_polynomial(&self, x: &TorusElement) -> bool {
        self.numerator == x * &self.denominator_element(&self.denominator)
    }
}

/// Monomial part of the flip: `e'_κ ↦ -e_κ`, `e'_α ↦ e_α + [ε_{ακ}]_+ e_κ`.
pub fn flip_monomial(eps: &[Vec<i64>], kappa: usize, lambda: &[i64]) -> Vec<i64> {
    let mut out = lambda.to_vec();
    out[kappa] = -lambda[kappa];
    for (a, &l) in lambda.iter().enumerate() {
        if a != kappa {
            out[kappa] += l * eps[a][kappa].max(0);
        }
    }
    out
}

/// Pulls an element of the X-torus of `tri.flip(kappa)` back to the X-torus of `tri`.
pub fn transport_x(elt: &TorusElement, tri: &Triangulation, kappa: EdgeId) -> Result<RationalX> {
    let k = tri.index_of(kappa).ok_or_else(|| Error::Input(format!("no edge {kappa}")))?;
    if tri.is_boundary(kappa) {
        return Err(Error::FlipNotAllowed(kappa));
    }
    let lat = x_lattice(tri);
    let eps = tri.exchange_matrix();
    let mut acc = RationalX::polynomial(TorusElement::zero(&lat), k);
    for (lambda, c) in elt.terms() {
        let mu = flip_monomial(&eps, k, lambda);
        // X_κ B_μ = v^{2n} B_μ X_κ.
        let n: i64 = (0..mu.len()).map(|b| eps[k][b] * mu[b]).sum();
        let m = TorusElement::term(&lat, mu, c.clone());
        let term = if n >= 0 {
            let mut f = TorusElement::one(&lat);
            for j in 1..=n {
                f = &f * &factor(&lat, k, 2 * j - 1);
            }
            RationalX::polynomial(&m * &f, k)
        } else {
            let set = (0..-n).map(|j| -(2 * j + 1)).collect();
            RationalX { numerator: m, kappa: k, denominator: set }
        };
        acc = acc.add(&term);
    }
    Ok(acc)
}
