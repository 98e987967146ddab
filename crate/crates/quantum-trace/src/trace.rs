//! State sums over crossing words.
//!
//! An end of a segment with state `s` on edge `e` contributes `Z_e^{-s}`; the two ends
//! at an interior crossing share one state, so the crossing contributes `Z_e^{-s}` once.
//! In a segment cutting off the corner between sides `a` and `b` (`a` being the side whose
//! counterclockwise head is the corner vertex), the state pattern `(+ on a, - on b)`
//! vanishes. Every surviving global state contributes its Weyl-normalized monomial.

use std::collections::BTreeMap;
use std::sync::Arc;

use laminations::{ALamination, CurveWord, LamCurve, State, StatedComponent, WordKind};
use quantum_torus::error::{Error, Result};
use quantum_torus::torus::{chebyshev_eval, pointed_normalize_by, ChebyshevKind, SkewLattice, TorusElement};
use quantum_torus::QScalar;
use surface_combinatorics::surface::Triangulation;

fn scaled_form(tri: &Triangulation, k: i64) -> Vec<Vec<i64>> {
    tri.exchange_matrix().iter().map(|r| r.iter().map(|x| k * x).collect()).collect()
}

/// Square-root torus of `tri`: form `-ε`.
pub fn z_lattice(tri: &Triangulation) -> Arc<SkewLattice> {
    Arc::new(SkewLattice::new(tri.labels(), scaled_form(tri, -1)).expect("ε is skew-symmetric"))
}

/// X-torus of `tri` written in `q`: form `-4ε`, so that `X_α ↦ Z_α^{-2}` preserves products.
pub fn x_lattice(tri: &Triangulation) -> Arc<SkewLattice> {
    Arc::new(SkewLattice::new(tri.labels(), scaled_form(tri, -4)).expect("ε is skew-symmetric"))
}

/// Trace of a crossing word. Arc ends carry `end_states` (start, end).
///
/// Elevation increases along the curve, so the pieces inside one triangle form a stack
/// with later pieces on top, and the triangle factor is their ordered product. Loops are
/// supported when every triangle holds at most one piece.
pub fn trace_word(word: &CurveWord, tri: &Triangulation, end_states: [State; 2]) -> Result<TorusElement> {
    let lat = z_lattice(tri);
    let segs = word.segments(tri)?;
    let nt = tri.triangles.len();
    if word.is_loop() {
        let mut seen = vec![false; nt];
        for sg in &segs {
            if std::mem::replace(&mut seen[sg.tri], true) {
                return Err(Error::OutOfScope("loop passes twice through a triangle".into()));
            }
        }
    }
    // Number of state points: crossings plus arc ends.
    let m = word.crossings.len() + if word.is_loop() { 0 } else { 2 };
    // Segment `i` runs from point `seg_from[i]` to point `i + 1` (mod m for loops).
    let seg_points = |i: usize| -> (usize, usize) {
        if word.is_loop() {
            ((i + m - 1) % m, i)
        } else {
            (i, i + 1)
        }
    };
    let alive = |sg: usize, s_in: i64, s_out: i64| {
        let seg = segs[sg];
        let (a, _) = seg.corner();
        let (sa, sb) = if a == seg.inp { (s_in, s_out) } else { (s_out, s_in) };
        !(sa == 1 && sb == -1)
    };
    let choices = |i: usize| -> Vec<i64> {
        match word.kind {
            WordKind::Arc { .. } if i == 0 => vec![end_states[0].sign()],
            WordKind::Arc { .. } if i == m - 1 => vec![end_states[1].sign()],
            _ => vec![1, -1],
        }
    };
    // ω_T(j, j+1) = -1 between side positions of one triangle.
    let omega = |x: &[i64], y: &[i64]| -> i64 {
        (0..3).map(|j| -(x[j] * y[(j + 1) % 3] - x[(j + 1) % 3] * y[j])).sum()
    };
    // Visiting order of the segments and the point closing each step.
    let order: Vec<usize> = if word.is_loop() { (1..m).chain([0]).collect() } else { (0..segs.len()).collect() };
    let mut out = TorusElement::zero(&lat);
    for s0 in choices(if word.is_loop() { 0 } else { 0 }) {
        // Key: (current state, per-triangle exponent stacks); value: q-shift counts.
        let mut layer: BTreeMap<(i64, Vec<i64>), QScalar> = BTreeMap::new();
        layer.insert((s0, vec![0; 3 * nt]), QScalar::one());
        for &sg in &order {
            let (_, to) = seg_points(sg);
            let closing = word.is_loop() && sg == 0;
            let seg = segs[sg];
            let mut next: BTreeMap<(i64, Vec<i64>), QScalar> = BTreeMap::new();
            for ((prev, acc), c) in &layer {
                let opts = if closing { vec![s0] } else { choices(to) };
                for s in opts {
                    if !alive(sg, *prev, s) {
                        continue;
                    }
                    let mut mono = [0i64; 3];
                    mono[seg.inp] -= prev;
                    mono[seg.out] -= s;
                    let base = 3 * seg.tri;
                    let h = omega(&mono, &acc[base..base + 3]);
                    let mut w = acc.clone();
                    for j in 0..3 {
                        w[base + j] += mono[j];
                    }
                    let e = next.entry((s, w)).or_insert_with(QScalar::zero);
                    *e += &c.shift(h);
                }
            }
            layer = next;
        }
        for ((_, acc), c) in layer {
            let mut lambda = vec![0; tri.n()];
            for (t, sides) in tri.triangles.iter().enumerate() {
                for (j, side) in sides.iter().enumerate() {
                    // Every edge copy carries the full exponent of its edge.
                    lambda[tri.idx(side.edge)] = acc[3 * t + j];
                }
            }
            out.add_term(lambda, &c);
        }
    }
    Ok(out)
}

/// Trace of a lamination component class with the given end states.
pub fn trace_curve(c: &LamCurve, tri: &Triangulation, end_states: [State; 2]) -> Result<TorusElement> {
    trace_word(&CurveWord::of_curve(c, tri)?, tri, end_states)
}

/// Lowest term in the square-root torus: every other exponent is lower by an even vector.
fn z_cone(d: &[i64]) -> bool {
    d.iter().all(|&x| x <= 0 && x % 2 == 0)
}

fn normalize(x: &TorusElement) -> Result<TorusElement> {
    Ok(pointed_normalize_by(x, z_cone)?.0)
}

/// Trace of the skein lift of an A-lamination with all states `-`, in the square-root
/// torus: loops of weight `w` give `T_w`, arcs give normalized `w`-th powers, peripheral
/// arcs of negative weight use the `(+,+)` state, and the product is normalized so that its
/// lowest coefficient is one.
pub fn trace_lamination(l: &ALamination, tri: &Triangulation) -> Result<TorusElement> {
    if l.model != tri.model {
        return Err(Error::Input("lamination and triangulation live on different surfaces".into()));
    }
    let lat = z_lattice(tri);
    let mut acc = TorusElement::one(&lat);
    for (c, &w) in &l.components {
        let factor = match c {
            LamCurve::Core => {
                let t = trace_curve(c, tri, [State::Minus; 2])?;
                chebyshev_eval(ChebyshevKind::First, w, &t)?
            }
            _ => {
                let st = if w < 0 { State::Plus } else { State::Minus };
                let t = trace_curve(c, tri, [st; 2])?;
                normalize(&t.pow(w.unsigned_abs() as u32))?
            }
        };
        acc = &acc * &factor;
    }
    normalize(&acc)
}

/// Trace of an admissible stated multicurve.
pub fn trace_stated(comps: &[StatedComponent], tri: &Triangulation) -> Result<TorusElement> {
    trace_lamination(&laminations::stated_lamination(tri.model, comps)?, tri)
}

/// `X_α ↦ Z_α^{-2}` inverted: halves and negates every exponent.
pub fn to_congruent_x(z: &TorusElement, tri: &Triangulation) -> Result<TorusElement> {
    let lat = x_lattice(tri);
    if z.terms().any(|(k, _)| k.iter().any(|x| x % 2 != 0)) {
        return Err(Error::OddExponent);
    }
    Ok(z.map_terms(&lat, |k, c| (k.iter().map(|x| -x / 2).collect(), c.clone())))
}

/// The duality map on a congruent A-lamination, valued in the X-torus of `tri`.
pub fn duality_a(l: &ALamination, tri: &Triangulation) -> Result<TorusElement> {
    if !l.is_congruent(tri)? {
        return Err(Error::NotCongruent);
    }
    to_congruent_x(&trace_lamination(l, tri)?, tri)
}

#[cfg(test)]
mod tests {
    use super::*;
    use surface_combinatorics::surface::Model;

    #[test]
    fn triangle_corner_arcs() {
        let tri = Triangulation::triangle();
        for p in 0..3 {
            let c = LamCurve::Peripheral(p);
            let minus = trace_curve(&c, &tri, [State::Minus; 2]).unwrap();
            let exps = minus.as_unit_monomial().expect("single monomial").clone();
            assert_eq!(exps.iter().filter(|&&x| x == 1).count(), 2);
            let plus = trace_curve(&c, &tri, [State::Plus; 2]).unwrap();
            let neg: Vec<i64> = exps.iter().map(|x| -x).collect();
            assert_eq!(plus.as_unit_monomial(), Some(&neg));
            let mixed = [
                trace_curve(&c, &tri, [State::Plus, State::Minus]).unwrap(),
                trace_curve(&c, &tri, [State::Minus, State::Plus]).unwrap(),
            ];
            assert_eq!(mixed.iter().filter(|t| t.is_zero()).count(), 1);
        }
    }

    #[test]
    fn core_loop_has_three_balanced_terms() {
        let tri = Triangulation::annulus(0);
        let t = trace_curve(&LamCurve::Core, &tri, [State::Minus; 2]).unwrap();
        assert_eq!(t.len(), 3);
        for (k, c) in t.terms() {
            assert!(tri.is_balanced(k));
            assert!(c.is_one());
        }
    }

    #[test]
    fn peripheral_arcs_are_monomials() {
        for tri in Triangulation::all_disk_triangulations(5).into_iter().chain([Triangulation::annulus(1)]) {
            let pts: Vec<u32> = if tri.model == Model::Annulus11 { vec![0, 1] } else { (0..5).collect() };
            for p in pts {
                let t = trace_curve(&LamCurve::Peripheral(p), &tri, [State::Minus; 2]).unwrap();
                assert_eq!(t.len(), 1, "{t}");
            }
        }
    }

    #[test]
    fn single_crossing_arc_is_not_congruent() {
        let tri = Triangulation::disk(4, &[(0, 2)]).unwrap();
        let t = trace_curve(&LamCurve::Arc(0, 2), &tri, [State::Minus; 2]).unwrap();
        assert_eq!(to_congruent_x(&t, &tri), Err(Error::OddExponent));
    }
}
