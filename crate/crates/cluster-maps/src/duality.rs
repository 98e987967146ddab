//! The duality map on P-laminations and the structural checks on its values.

use std::collections::BTreeMap;

use num_rational::Ratio;
use quantum_torus::error::{Error, Result};
use quantum_torus::torus::TorusElement;
use quantum_torus::QScalar;
use laminations::{ALamination, LamCurve, PLamination};
use skein_engine::{cut_element, lamination_lift, SkeinEngine};
use surface_combinatorics::curve::Curve;
use surface_combinatorics::surface::{Model, Triangulation};

use crate::ensemble::{a_lattice, ensemble_q};

/// `𝕀_X = Cut ∘ S_X`.
pub fn duality_x(engine: &SkeinEngine, lp: &PLamination, tri: &Triangulation) -> Result<TorusElement> {
    if lp.model != tri.model || engine.model != tri.model {
        return Err(Error::Input("lamination, engine and triangulation disagree on the surface".into()));
    }
    cut_element(engine, &lamination_lift(&lp.inverse_tropical_ensemble())?, tri)
}

/// The unique rational solution of `m·x = b`, if the system is consistent and has full
/// column rank.
pub fn solve_rational(m: &[Vec<i64>], b: &[i64]) -> Option<Vec<Ratio<i64>>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let zero = Ratio::from_integer(0);
    let mut a: Vec<Vec<Ratio<i64>>> = m
        .iter()
        .zip(b)
        .map(|(r, &v)| r.iter().map(|&x| Ratio::from_integer(x)).chain([Ratio::from_integer(v)]).collect())
        .collect();
    let mut row = 0;
    for col in 0..cols {
        let piv = (row..rows).find(|&r| a[r][col] != zero)?;
        a.swap(row, piv);
        let inv = Ratio::from_integer(1) / a[row][col];
        for x in a[row].iter_mut() {
            *x *= inv;
        }
        for r in 0..rows {
            if r != row && a[r][col] != zero {
                let f = a[r][col];
                for c in 0..=cols {
                    let v = a[row][c];
                    a[r][c] -= f * v;
                }
            }
        }
        row += 1;
    }
    if a[row..].iter().any(|r| r[cols] != zero) {
        return None;
    }
    Some(a[..cols].iter().map(|r| r[cols]).collect())
}

/// Solves `pᵀc = d` over the rationals.
fn solve_transpose(tri: &Triangulation, d: &[i64]) -> Option<Vec<Ratio<i64>>> {
    let p = tri.p_matrix();
    let n = tri.n();
    let pt: Vec<Vec<i64>> = (0..n).map(|r| (0..n).map(|c| p[c][r]).collect()).collect();
    solve_rational(&pt, d)
}

/// The A-lamination on a disk with the given a-coordinates, if there is one.
///
/// Every lamination is supported on the diagonals of some triangulation together with the
/// peripheral arcs; for each diagonal set the a-coordinates are a square linear system in
/// the weights.
pub fn lamination_with_a_coords(tri: &Triangulation, a: &[i64]) -> Option<ALamination> {
    let n = match tri.model {
        Model::Disk(n) => n,
        _ => return None,
    };
    let column = |c: LamCurve| -> Option<Vec<i64>> {
        ALamination::from_pairs(tri.model, [(c, 1)]).ok()?.a_coords_doubled(tri).ok()
    };
    let target: Vec<i64> = a.iter().map(|v| 2 * v).collect();
    for diags in Triangulation::all_disk_diagonal_sets(n) {
        let curves: Vec<LamCurve> = diags
            .iter()
            .map(|&(i, j)| LamCurve::Arc(i, j))
            .chain((0..n).map(LamCurve::Peripheral))
            .collect();
        let cols: Option<Vec<Vec<i64>>> = curves.iter().map(|&c| column(c)).collect();
        let cols = cols?;
        let m: Vec<Vec<i64>> = (0..tri.n()).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
        let Some(w) = solve_rational(&m, &target) else { continue };
        if w.iter().any(|x| !x.is_integer()) {
            continue;
        }
        let w: Vec<i64> = w.iter().map(|x| x.to_integer()).collect();
        if w.iter().zip(&curves).any(|(x, c)| *x < 0 && !c.is_peripheral()) {
            continue;
        }
        if let Ok(l) = ALamination::from_pairs(tri.model, curves.into_iter().zip(w)) {
            return Some(l);
        }
    }
    None
}

/// Outcome of the pointedness check of an A-torus element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pointedness {
    pub leading: Vec<i64>,
    pub leading_coeff: QScalar,
    /// Exponent offsets `c` with `μ = leading + pᵀc`, one per term.
    pub offsets: Vec<Vec<i64>>,
    pub polynomial: bool,
}

/// Checks `x = [A^m]·F(p*X)` with `F` a polynomial; returns the offsets of all terms.
pub fn pointedness(x: &TorusElement, tri: &Triangulation, m: &[i64]) -> Pointedness {
    let mut offsets = vec![];
    let mut polynomial = true;
    for (k, _) in x.terms() {
        let d: Vec<i64> = k.iter().zip(m).map(|(a, b)| a - b).collect();
        match solve_transpose(tri, &d) {
            Some(c) if c.iter().all(|r| r.is_integer() && *r.numer() >= 0) => {
                offsets.push(c.iter().map(|r| r.to_integer()).collect());
            }
            _ => polynomial = false,
        }
    }
    Pointedness { leading: m.to_vec(), leading_coeff: x.coeff(m), offsets, polynomial }
}

impl Pointedness {
    pub fn holds(&self) -> bool {
        self.polynomial && self.leading_coeff.is_one()
    }
}

/// A disk triangulation containing every diagonal in `chords`.
pub fn triangulation_containing(n: u32, chords: &[(u32, u32)]) -> Option<Triangulation> {
    Triangulation::all_disk_diagonal_sets(n)
        .into_iter()
        .find(|d| chords.iter().all(|c| d.contains(c)))
        .and_then(|d| Triangulation::disk(n, &d).ok())
}

/// The triangulation containing the M-shift of `l` and the weight vector `w(ℓ)` on it.
pub fn shifted_triangulation(l: &ALamination) -> Result<(Triangulation, Vec<i64>)> {
    let n = match l.model {
        Model::Disk(n) => n,
        _ => return Err(Error::OutOfScope("only disks carry the comparison".into())),
    };
    let mut chords = vec![];
    let mut weights: BTreeMap<Curve, i64> = BTreeMap::new();
    for (c, &w) in &l.components {
        let s = c.m_shift(l.model).ok_or_else(|| Error::Inadmissible(format!("{c:?} has no shift")))?;
        if let (LamCurve::Arc(..), Curve::Chord(a, b)) = (c, s) {
            chords.push((a, b));
        }
        *weights.entry(s).or_default() += w;
    }
    let tri = triangulation_containing(n, &chords)
        .ok_or_else(|| Error::Input("no triangulation contains the shifted arcs".into()))?;
    let mut v = vec![0; tri.n()];
    for (curve, w) in weights {
        let pos = tri
            .edges
            .iter()
            .position(|e| Curve::from_edge_class(e.class) == Some(curve))
            .ok_or_else(|| Error::Input(format!("{curve} is not an edge")))?;
        v[pos] += w;
    }
    Ok((tri, v))
}

/// `p*(𝕀_A(L))` and the Weyl monomial `A^{w(ℓ)}` in a triangulation containing `ℓ = L^M`.
pub fn shifted_monomial_sides(l: &ALamination) -> Result<(Triangulation, TorusElement, TorusElement)> {
    let (tri, w) = shifted_triangulation(l)?;
    let lhs = ensemble_q(&quantum_trace::duality_a(l, &tri)?, &tri)?;
    let rhs = TorusElement::monomial(&a_lattice(&tri), w);
    Ok((tri, lhs, rhs))
}

/// Result of the independence and spanning check of a family of pointed elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanCheck {
    pub elements: usize,
    pub distinct_leading: bool,
    pub products: usize,
    /// Products that did not reduce to zero, with the exponent that could not be matched.
    pub unexpanded: Vec<(usize, usize, Vec<i64>)>,
}

impl SpanCheck {
    pub fn holds(&self) -> bool {
        self.distinct_leading && self.unexpanded.is_empty()
    }
}

/// Lowest exponent of `x` for the weight `w`, ties broken lexicographically.
fn lowest(x: &TorusElement, w: &[i64]) -> Option<Vec<i64>> {
    x.terms()
        .map(|(k, _)| k)
        .min_by_key(|k| (k.iter().zip(w).map(|(a, b)| a * b).sum::<i64>(), (*k).clone()))
        .cloned()
}

/// Checks that the pointed elements `family` (lowest exponent with coefficient one) are
/// linearly independent and that every pairwise product reduces to zero by subtracting
/// multiples of the pointed elements returned by `pool` for a lowest exponent.
///
/// `weight` must be positive on the cone of `X`-directions, so the lowest term of each
/// element is its pointed term; distinct lowest terms give independence by triangularity.
pub fn span_check(
    family: &[(Vec<i64>, TorusElement)],
    mut pool: impl FnMut(&[i64]) -> Option<TorusElement>,
    weight: &[i64],
) -> SpanCheck {
    let mut leads: Vec<Vec<i64>> = family.iter().map(|(m, _)| m.clone()).collect();
    leads.sort();
    leads.dedup();
    let distinct_leading = leads.len() == family.len()
        && family.iter().all(|(m, x)| lowest(x, weight).as_ref() == Some(m) && x.coeff(m).is_one());
    let mut unexpanded = vec![];
    let mut products = 0;
    for i in 0..family.len() {
        for j in 0..family.len() {
            products += 1;
            let mut r = &family[i].1 * &family[j].1;
            let mut steps = 0;
            while let Some(m) = lowest(&r, weight) {
                steps += 1;
                match pool(&m) {
                    Some(b) if steps < 10_000 => {
                        let c = r.coeff(&m);
                        r = &r - &b.scale(&c);
                    }
                    _ => {
                        unexpanded.push((i, j, m));
                        break;
                    }
                }
            }
        }
    }
    SpanCheck { elements: family.len(), distinct_leading, products, unexpanded }
}
