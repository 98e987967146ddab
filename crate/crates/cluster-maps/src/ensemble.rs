//! Quantum cluster K₂-tori, the ensemble maps into them, the quantum exchange relation and
//! the transport of A-torus elements across a flip.

use std::sync::Arc;

use quantum_torus::error::{Error, Result};
use quantum_torus::torus::{SkewLattice, TorusElement};
use quantum_torus::QScalar;
use quantum_trace::{x_lattice, z_lattice};
use surface_combinatorics::surface::{EdgeId, Triangulation};

/// The A-torus of `tri`: generators `A_α` with `ω(f_α, f_β) = π_{αβ}`.
pub fn a_lattice(tri: &Triangulation) -> Arc<SkewLattice> {
    skein_engine::a_torus_lattice(tri)
}

/// `pᵀλ`, the exponent of `p*(X^λ)`.
pub fn ensemble_vector(tri: &Triangulation, lambda: &[i64]) -> Vec<i64> {
    let p = tri.p_matrix();
    let n = tri.n();
    (0..n).map(|b| (0..n).map(|a| p[a][b] * lambda[a]).sum()).collect()
}

fn check_lattice(x: &TorusElement, expected: &Arc<SkewLattice>) -> Result<()> {
    if x.lattice() != expected {
        return Err(Error::LatticeMismatch);
    }
    Ok(())
}

/// `p*`: `X_λ ↦ A(pᵀλ)`, extended linearly.
pub fn ensemble_q(x: &TorusElement, tri: &Triangulation) -> Result<TorusElement> {
    check_lattice(x, &x_lattice(tri))?;
    let lat = a_lattice(tri);
    Ok(x.map_terms(&lat, |k, c| (ensemble_vector(tri, k), c.clone())))
}

/// The balanced extension `Z_λ ↦ A(-pᵀλ/2)`.
pub fn ensemble_balanced(z: &TorusElement, tri: &Triangulation) -> Result<TorusElement> {
    check_lattice(z, &z_lattice(tri))?;
    let lat = a_lattice(tri);
    let mut out = TorusElement::zero(&lat);
    for (k, c) in z.terms() {
        let v = ensemble_vector(tri, k);
        if v.iter().any(|x| x % 2 != 0) {
            return Err(Error::NotBalanced);
        }
        out.add_term(v.iter().map(|x| -x / 2).collect(), c);
    }
    Ok(out)
}

/// The two Weyl monomials `u, w` of the exchange relation `A_{κ'} = u + w`.
pub fn exchange_monomials(tri: &Triangulation, kappa: EdgeId) -> Result<(Vec<i64>, Vec<i64>)> {
    let k = tri.index_of(kappa).ok_or_else(|| Error::Input(format!("no edge {kappa}")))?;
    if tri.is_boundary(kappa) {
        return Err(Error::FlipNotAllowed(kappa));
    }
    let eps = tri.exchange_matrix();
    let mut u = vec![0; tri.n()];
    let mut w = vec![0; tri.n()];
    for b in 0..tri.n() {
        u[b] = eps[k][b].max(0);
        w[b] = (-eps[k][b]).max(0);
    }
    u[k] -= 1;
    w[k] -= 1;
    Ok((u, w))
}

/// `A_{κ'}` written in the A-torus of `tri`.
pub fn quantum_exchange(tri: &Triangulation, kappa: EdgeId) -> Result<TorusElement> {
    let (u, w) = exchange_monomials(tri, kappa)?;
    let lat = a_lattice(tri);
    Ok(&TorusElement::monomial(&lat, u) + &TorusElement::monomial(&lat, w))
}

/// The exchange relation as a finite adjoint action: `A(μ'f_{κ'})·∏(1 + q^{…}p*X_κ)`.
///
/// Here `μ'f_{κ'} = -f_κ + Σ[-ε_{κβ}]_+ f_β` and the product has `n = -ω_A(p*e_κ, ·)/4`
/// factors; with the pairing `-4δ` this is a single factor.
pub fn exchange_adjoint_form(tri: &Triangulation, kappa: EdgeId) -> Result<TorusElement> {
    let k = tri.index_of(kappa).ok_or_else(|| Error::Input(format!("no edge {kappa}")))?;
    let (_, w) = exchange_monomials(tri, kappa)?;
    let lat = a_lattice(tri);
    let px = ensemble_vector(tri, &lat.unit(k));
    let n = -lat.pair(&px, &w) / 4;
    if n < 0 {
        return Err(Error::Input("negative adjoint degree".into()));
    }
    let mut acc = TorusElement::monomial(&lat, w);
    for j in 1..=n {
        // Ad of the quantum dilogarithm on B_w contributes 1 + v^{2j-1} p*X_κ with v = q^{-2}.
        let mut f = TorusElement::one(&lat);
        f.add_term(px.clone(), &QScalar::q_half(-4 * (2 * j - 1)));
        acc = &acc * &f;
    }
    Ok(acc)
}

/// Pulls an element of the A-torus of `tri.flip(kappa)` back to the A-torus of `tri`.
///
/// Unflipped generators keep their position and the new generator, which sits at `κ`'s
/// position, is replaced by the exchange sum. Negative powers of the new generator would
/// leave the Laurent ring and are rejected.
pub fn transport_a(x: &TorusElement, tri: &Triangulation, kappa: EdgeId) -> Result<TorusElement> {
    let k = tri.index_of(kappa).ok_or_else(|| Error::Input(format!("no edge {kappa}")))?;
    let (flipped, _) = tri.flip(kappa)?;
    check_lattice(x, &a_lattice(&flipped))?;
    let lat_new = a_lattice(&flipped);
    let lat = a_lattice(tri);
    let e = quantum_exchange(tri, kappa)?;
    let mut out = TorusElement::zero(&lat);
    let mut powers: Vec<TorusElement> = vec![TorusElement::one(&lat)];
    for (lambda, c) in x.terms() {
        let d = lambda[k];
        if d < 0 {
            return Err(Error::OutOfScope("negative power of the flipped generator".into()));
        }
        while powers.len() <= d as usize {
            let next = &powers[powers.len() - 1] * &e;
            powers.push(next);
        }
        let mut rest = lambda.clone();
        rest[k] = 0;
        let mut dk = lat_new.zero_vector();
        dk[k] = d;
        // B_{rest + d f} = q^{-ω(rest, d f)/2} B_rest · B_f^d.
        let h = -lat_new.pair(&rest, &dk);
        let m = TorusElement::term(&lat, rest, c.shift(h));
        out = &out + &(&m * &powers[d as usize]);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_balanced_corner() {
        let tri = Triangulation::triangle();
        let z = TorusElement::monomial(&z_lattice(&tri), vec![0, 1, 1]);
        let a = ensemble_balanced(&z, &tri).unwrap();
        assert_eq!(a.as_unit_monomial().unwrap(), &vec![0, 1, 0]);
        let one = ensemble_balanced(&TorusElement::one(&z_lattice(&tri)), &tri).unwrap();
        assert_eq!(one, TorusElement::one(&a_lattice(&tri)));
        let odd = TorusElement::monomial(&z_lattice(&tri), vec![1, 0, 0]);
        assert_eq!(ensemble_balanced(&odd, &tri), Err(Error::NotBalanced));
    }

    #[test]
    fn quadrilateral_exchange_has_two_terms() {
        let tri = Triangulation::disk_fan(4);
        let kappa = tri.interior_edges()[0];
        let e = quantum_exchange(&tri, kappa).unwrap();
        assert_eq!(e.len(), 2);
        for (k, c) in e.terms() {
            assert!(c.is_one());
            assert_eq!(k[tri.idx(kappa)], -1);
            assert_eq!(k.iter().filter(|&&x| x == 1).count(), 2);
        }
    }

    #[test]
    fn transport_of_square_is_a_q_binomial() {
        let tri = Triangulation::disk_fan(5);
        for kappa in tri.interior_edges() {
            let (flipped, _) = tri.flip(kappa).unwrap();
            let k = tri.idx(kappa);
            let lat = a_lattice(&flipped);
            let x = TorusElement::monomial(&lat, lat.unit(k));
            let e = quantum_exchange(&tri, kappa).unwrap();
            assert_eq!(transport_a(&x, &tri, kappa).unwrap(), e);
            let sq = transport_a(&x.pow(2), &tri, kappa).unwrap();
            assert_eq!(sq.len(), 3);
            assert_eq!(sq, e.pow(2));
            for b in 0..tri.n() {
                if b != k {
                    let g = TorusElement::monomial(&lat, lat.unit(b));
                    let t = transport_a(&g, &tri, kappa).unwrap();
                    assert_eq!(t.as_unit_monomial().unwrap(), &lat.unit(b));
                }
            }
        }
    }
}
