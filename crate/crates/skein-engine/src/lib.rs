//! Muller skein algebras of marked disks and of the annulus with one special point on
//! each boundary component.
//!
//! Products are computed diagrammatically: representatives are drawn with exact integer
//! coordinates, all crossings are resolved by a Kauffman-type state sum, and every
//! resulting crossingless diagram is classified into the basis of simple multicurves.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use surface_combinatorics::curve::{Curve, Multicurve, SIGMA};
use quantum_torus::error::{Error, Result};
use surface_combinatorics::geometry::{
    disk_boundary_point, polyline_crossings, Frac, Polyline, Pt, ANN_H, ANN_W, DISK_S,
};
use quantum_torus::scalar::QScalar;
use surface_combinatorics::surface::{Model, PointId, Triangulation};
use quantum_torus::torus::{SkewLattice, TorusElement};
use laminations::{stated_lamination, StatedComponent};

pub mod annulus;

/// Basis in which the loop multiplicity of a term is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    /// `m` loops mean `z^m`.
    Muller,
    /// `m` loops mean `T_m(z)`.
    Bracelets,
}

/// A `Z[q^{±1/2}]`-combination of Weyl-normalized simple multicurves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeinElement {
    pub model: Model,
    pub basis: Basis,
    pub terms: BTreeMap<Multicurve, QScalar>,
}

impl SkeinElement {
    pub fn zero(model: Model, basis: Basis) -> Self {
        Self { model, basis, terms: BTreeMap::new() }
    }

    pub fn one(model: Model, basis: Basis) -> Self {
        Self::basis_element(model, basis, Multicurve::empty())
    }

    pub fn basis_element(model: Model, basis: Basis, m: Multicurve) -> Self {
        Self::term(model, basis, m, QScalar::one())
    }

    pub fn term(model: Model, basis: Basis, m: Multicurve, c: QScalar) -> Self {
        let mut e = Self::zero(model, basis);
        e.add_term(m, &c);
        e
    }

    pub fn add_term(&mut self, m: Multicurve, c: &QScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.basis, other.basis, "adding elements in different bases");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&QScalar::constant(-1)))
    }

    pub fn scale(&self, c: &QScalar) -> Self {
        let mut out = Self::zero(self.model, self.basis);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), &(v * c));
        }
        out
    }

    /// Multiplies by `q^{h/2}`.
    pub fn shift(&self, h: i64) -> Self {
        Self {
            model: self.model,
            basis: self.basis,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.shift(h))).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// All coefficients lie in `Z≥0[q^{±1/2}]`.
    pub fn is_positive(&self) -> bool {
        self.terms.values().all(QScalar::is_nonnegative)
    }

    /// Rewrites loop powers `z^m` as combinations of `T_k(z)`.
    pub fn to_bracelets(&self) -> Self {
        if self.basis == Basis::Bracelets {
            return self.clone();
        }
        let mut out = Self::zero(self.model, Basis::Bracelets);
        for (m, c) in &self.terms {
            let k = m.loops();
            let rest = m.without_loops();
            for (j, b) in power_in_chebyshev(k) {
                let mut key = rest.clone();
                key.add(Curve::Loop, j);
                out.add_term(key, &c.scale(b));
            }
        }
        out
    }

    /// Rewrites `T_k(z)` as polynomials in `z`.
    pub fn to_muller(&self) -> Self {
        if self.basis == Basis::Muller {
            return self.clone();
        }
        let mut out = Self::zero(self.model, Basis::Muller);
        for (m, c) in &self.terms {
            let k = m.loops();
            let rest = m.without_loops();
            for (j, b) in chebyshev_t_in_powers(k) {
                let mut key = rest.clone();
                key.add(Curve::Loop, j);
                out.add_term(key, &c.scale(b));
            }
        }
        out
    }

    /// Applies `τ^k` to every component (annulus only).
    pub fn dehn_twist(&self, k: i64) -> Result<Self> {
        if self.model != Model::Annulus11 {
            return Err(Error::Input("Dehn twists are defined on the annulus only".into()));
        }
        let mut out = Self::zero(self.model, self.basis);
        for (m, c) in &self.terms {
            out.add_term(m.dehn_twist(k), c);
        }
        Ok(out)
    }
}

impl std::fmt::Display for SkeinElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({c}){m}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `T_k(x)` for `k ≥ 1` (with `T_0 = 1`) as `Σ b_j x^j`.
fn chebyshev_t_in_powers(k: i64) -> Vec<(i64, i64)> {
    if k == 0 {
        return vec![(0, 1)];
    }
    let p = quantum_torus::torus::ChebyshevPoly::new(quantum_torus::torus::ChebyshevKind::First, k as usize);
    p.coeffs.iter().enumerate().filter(|(_, c)| **c != 0).map(|(j, c)| (j as i64, *c)).collect()
}

/// `x^m = Σ_{i<m/2} C(m,i) T_{m-2i} + [m even] C(m,m/2)` with `T_0 = 1`.
fn power_in_chebyshev(m: i64) -> Vec<(i64, i64)> {
    let mut binom = vec![1i64];
    for _ in 0..m {
        let mut next = vec![1i64; binom.len() + 1];
        for i in 1..binom.len() {
            next[i] = binom[i - 1] + binom[i];
        }
        binom = next;
    }
    let mut out = vec![];
    for i in 0..=m {
        if 2 * i < m {
            out.push((m - 2 * i, binom[i as usize]));
        } else if 2 * i == m {
            out.push((0, binom[i as usize]));
        }
    }
    out
}

// ---- diagrams ----

/// An end of a strand at a special point; `u` orders ends counterclockwise (larger first).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndSlot {
    pub point: PointId,
    pub u: i64,
}

/// A drawn component. Its height at parameter `(segment, t)` is `(base, segment, t)`
/// ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Strand {
    pub points: Vec<Pt>,
    /// Closed strands: the last point is the first one shifted by this many periods.
    pub closed_shift: Option<i64>,
    pub base: i64,
    pub ends: Option<[EndSlot; 2]>,
}

impl Strand {
    fn polyline(&self) -> Polyline {
        Polyline { points: self.points.clone(), closed_shift: self.closed_shift }
    }

    fn segments(&self) -> usize {
        self.points.len() - 1
    }
}

/// A tangle diagram with elevation on a disk or on the annulus cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagram {
    pub model: Model,
    pub strands: Vec<Strand>,
}

#[derive(Clone, Copy, Debug)]
struct XPoint {
    a: usize,
    seg_a: usize,
    t_a: Frac,
    b: usize,
    seg_b: usize,
    t_b: Frac,
    shift: i64,
    sign: i64,
}

/// Where one end of a piece is attached.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Attach {
    /// Arm `4x + r` of crossing `x`: `r` = 0 a-in, 1 a-out, 2 b-in, 3 b-out.
    Arm(usize),
    /// Strand end `(strand, 0 | 1)`.
    End(usize, usize),
}

#[derive(Clone, Copy, Debug)]
struct Piece {
    start: Attach,
    end: Attach,
    seam: i64,
}

fn period(model: Model) -> i64 {
    if model == Model::Annulus11 {
        ANN_W
    } else {
        0
    }
}

type Height = (i64, usize, Frac);

impl Diagram {
    fn height(&self, s: usize, seg: usize, t: Frac) -> Height {
        (self.strands[s].base, seg, t)
    }

    fn end_height(&self, s: usize, which: usize) -> Height {
        let st = &self.strands[s];
        if which == 0 {
            (st.base, 0, Frac { num: 0, den: 1 })
        } else {
            (st.base, st.segments(), Frac { num: 0, den: 1 })
        }
    }

    /// Half-exponent `h` with (diagram) = `q^{h/2}` (same diagram with simultaneous ends).
    pub fn end_weight(&self) -> i64 {
        let mut ends: Vec<(PointId, i64, Height)> = vec![];
        for (s, st) in self.strands.iter().enumerate() {
            if let Some(es) = st.ends {
                for (w, e) in es.iter().enumerate() {
                    ends.push((e.point, e.u, self.end_height(s, w)));
                }
            }
        }
        let mut h = 0;
        for i in 0..ends.len() {
            for j in 0..ends.len() {
                if i == j || ends[i].0 != ends[j].0 || ends[i].1 <= ends[j].1 {
                    continue;
                }
                // `i` precedes `j` counterclockwise.
                h += match ends[i].2.cmp(&ends[j].2) {
                    std::cmp::Ordering::Greater => 1,
                    std::cmp::Ordering::Less => -1,
                    std::cmp::Ordering::Equal => 0,
                };
            }
        }
        SIGMA * h
    }

    fn crossings(&self) -> Vec<XPoint> {
        let per = period(self.model);
        let polys: Vec<Polyline> = self.strands.iter().map(Strand::polyline).collect();
        let mut out = vec![];
        for i in 0..polys.len() {
            for j in i..polys.len() {
                for r in polyline_crossings(&polys[i], &polys[j], per, i == j) {
                    out.push(XPoint {
                        a: i,
                        seg_a: r.seg_a,
                        t_a: r.t_a,
                        b: j,
                        seg_b: r.seg_b,
                        t_b: r.t_b,
                        shift: r.shift,
                        sign: r.sign,
                    });
                }
            }
        }
        out
    }

    /// Number of interior double points.
    pub fn crossing_count(&self) -> usize {
        self.crossings().len()
    }

    /// The skein element of the diagram with all ends at each special point declared
    /// simultaneous.
    pub fn evaluate_simultaneous(&self) -> Result<SkeinElement> {
        let xs = self.crossings();
        if xs.len() > 26 {
            return Err(Error::OutOfScope(format!("{} crossings exceed the state-sum limit", xs.len())));
        }
        // Events along each strand.
        let mut events: Vec<Vec<((usize, Frac), usize)>> = vec![vec![]; self.strands.len()];
        for (k, x) in xs.iter().enumerate() {
            events[x.a].push(((x.seg_a, x.t_a), 4 * k));
            events[x.b].push(((x.seg_b, x.t_b), 4 * k + 2));
        }
        for ev in &mut events {
            ev.sort_by(|p, q| p.0.cmp(&q.0));
            for w in ev.windows(2) {
                if w[0].0 == w[1].0 {
                    return Err(Error::Input("degenerate diagram: coincident crossings".into()));
                }
            }
        }
        let mut pieces: Vec<Piece> = vec![];
        let mut arm_piece: HashMap<usize, (usize, bool)> = HashMap::new();
        let mut free_loops: Vec<i64> = vec![];
        for (s, st) in self.strands.iter().enumerate() {
            let ev = &events[s];
            match st.closed_shift {
                None => {
                    let mut start = Attach::End(s, 0);
                    for (_, arm) in ev {
                        let idx = pieces.len();
                        pieces.push(Piece { start, end: Attach::Arm(*arm), seam: 0 });
                        arm_piece.insert(*arm, (idx, false));
                        if let Attach::Arm(a) = start {
                            arm_piece.insert(a, (idx, true));
                        }
                        start = Attach::Arm(arm + 1);
                    }
                    let idx = pieces.len();
                    pieces.push(Piece { start, end: Attach::End(s, 1), seam: 0 });
                    if let Attach::Arm(a) = start {
                        arm_piece.insert(a, (idx, true));
                    }
                }
                Some(shift) => {
                    if ev.is_empty() {
                        free_loops.push(shift);
                        continue;
                    }
                    let n = ev.len();
                    for i in 0..n {
                        let from = ev[i].1 + 1;
                        let to = ev[(i + 1) % n].1;
                        let idx = pieces.len();
                        let seam = if i + 1 == n { shift } else { 0 };
                        pieces.push(Piece { start: Attach::Arm(from), end: Attach::Arm(to), seam });
                        arm_piece.insert(from, (idx, true));
                        arm_piece.insert(to, (idx, false));
                    }
                }
            }
        }
        // Over strand and smoothing pairings per crossing.
        let mut pairings: Vec<[[(usize, usize); 2]; 2]> = vec![];
        for (k, x) in xs.iter().enumerate() {
            let ha = self.height(x.a, x.seg_a, x.t_a);
            let hb = self.height(x.b, x.seg_b, x.t_b);
            let a_over = ha > hb;
            let (u_in, u_out, v_in, v_out) = if a_over {
                (4 * k, 4 * k + 1, 4 * k + 2, 4 * k + 3)
            } else {
                (4 * k + 2, 4 * k + 3, 4 * k, 4 * k + 1)
            };
            let s = if a_over { x.sign } else { -x.sign };
            let (v_pos, v_neg) = if s > 0 { (v_out, v_in) } else { (v_in, v_out) };
            // A-smoothing joins (-u, s·v) and (+u, -s·v); B the other pairing.
            pairings.push([[(u_in, v_pos), (u_out, v_neg)], [(u_in, v_neg), (u_out, v_pos)]]);
        }
        let ends_of = |s: usize, w: usize| -> (PointId, i64) {
            let st = &self.strands[s];
            let e = st.ends.expect("open strand has ends")[w];
            let p = if w == 0 { st.points[0] } else { *st.points.last().unwrap() };
            (e.point, p.x)
        };
        let n = xs.len();
        let mut total = SkeinElement::zero(self.model, Basis::Muller);
        let mut partner = vec![0usize; 4 * n];
        for mask in 0u64..(1u64 << n) {
            let mut a_count = 0i64;
            for k in 0..n {
                let choice = ((mask >> k) & 1) as usize;
                if choice == 0 {
                    a_count += 1;
                }
                for &(p, q) in &pairings[k][choice] {
                    partner[p] = q;
                    partner[q] = p;
                }
            }
            let exp = 2 * (a_count - (n as i64 - a_count));
            let mut visited = vec![false; pieces.len()];
            let mut result = Multicurve::empty();
            let mut trivial = 0u32;
            let mut zero = false;
            let frame_step = |from_arm: usize, to_arm: usize| -> i64 {
                let x = &xs[from_arm / 4];
                let from_a = from_arm % 4 < 2;
                let to_a = to_arm % 4 < 2;
                match (from_a, to_a) {
                    (true, false) => x.shift,
                    (false, true) => -x.shift,
                    _ => 0,
                }
            };
            // Walks from piece `p` in direction `fwd`; returns the final attachment and offset.
            let walk = |mut p: usize, mut fwd: bool, visited: &mut Vec<bool>| -> (Attach, i64, usize, bool) {
                let mut off = 0i64;
                let (p0, f0) = (p, fwd);
                loop {
                    visited[p] = true;
                    let pc = pieces[p];
                    off += if fwd { pc.seam } else { -pc.seam };
                    let at = if fwd { pc.end } else { pc.start };
                    match at {
                        Attach::End(..) => return (at, off, p, fwd),
                        Attach::Arm(a) => {
                            let b = partner[a];
                            off += frame_step(a, b);
                            let (q, at_start) = arm_piece[&b];
                            p = q;
                            fwd = at_start;
                            if p == p0 && fwd == f0 {
                                return (at, off, p, fwd);
                            }
                        }
                    }
                }
            };
            for (pi, pc) in pieces.iter().enumerate() {
                if visited[pi] {
                    continue;
                }
                if let Attach::End(s, w) = pc.start {
                    let (fin, off, _, _) = walk(pi, true, &mut visited);
                    let Attach::End(s2, w2) = fin else { unreachable!("arcs end at strand ends") };
                    let (p_s, x_s) = ends_of(s, w);
                    let (p_f, x_f) = ends_of(s2, w2);
                    match classify_arc(self.model, p_s, x_s, p_f, x_f + off * period(self.model))? {
                        Some(c) => result.add(c, 1),
                        None => zero = true,
                    }
                }
            }
            for (pi, pc) in pieces.iter().enumerate() {
                if visited[pi] {
                    continue;
                }
                if let Attach::End(s, w) = pc.end {
                    let (fin, off, _, _) = walk(pi, false, &mut visited);
                    let Attach::End(s2, w2) = fin else { unreachable!("arcs end at strand ends") };
                    let (p_s, x_s) = ends_of(s, w);
                    let (p_f, x_f) = ends_of(s2, w2);
                    match classify_arc(self.model, p_s, x_s, p_f, x_f + off * period(self.model))? {
                        Some(c) => result.add(c, 1),
                        None => zero = true,
                    }
                }
            }
            for pi in 0..pieces.len() {
                if visited[pi] {
                    continue;
                }
                let (_, off, _, _) = walk(pi, true, &mut visited);
                match off.abs() {
                    0 => trivial += 1,
                    1 => result.add(Curve::Loop, 1),
                    _ => return Err(Error::Input("resolved loop is not simple".into())),
                }
            }
            if zero {
                continue;
            }
            for shift in &free_loops {
                match shift.abs() {
                    0 => trivial += 1,
                    1 => result.add(Curve::Loop, 1),
                    _ => return Err(Error::Input("loop is not simple".into())),
                }
            }
            let delta = QScalar::from_pairs([(4, -1), (-4, -1)]);
            let c = delta.pow(trivial).shift(exp);
            total.add_term(result, &c);
        }
        Ok(total)
    }

    /// The skein element of the diagram with its end heights.
    pub fn evaluate(&self) -> Result<SkeinElement> {
        Ok(self.evaluate_simultaneous()?.shift(self.end_weight()))
    }
}

/// Classifies a crossingless arc by its endpoints; `None` for contractible arcs.
fn classify_arc(model: Model, p_s: PointId, x_s: i64, p_f: PointId, x_f: i64) -> Result<Option<Curve>> {
    match model {
        Model::Disk(_) => Ok(if p_s == p_f { None } else { Some(Curve::chord(p_s, p_f)) }),
        Model::Annulus11 => {
            let d = x_f - x_s;
            let r = (d + ANN_W / 2).div_euclid(ANN_W);
            if p_s != p_f {
                let k = if p_s == 0 { r } else { -r };
                Ok(Some(Curve::Span(k)))
            } else {
                match r.abs() {
                    0 => Ok(None),
                    1 => Ok(Some(Curve::Boundary(p_s as u8))),
                    _ => Err(Error::Input("resolved arc is not simple".into())),
                }
            }
        }
        Model::Abstract => Err(Error::OutOfScope("no planar model".into())),
    }
}

/// Counterclockwise sort key of an end, refined by the copy index so that parallel copies
/// are drawn without crossings.
fn end_key(model: Model, c: &Curve, end: usize, copy: i64) -> (i64, i64, i64) {
    let (_, k) = c.ends(model)[end];
    match c {
        Curve::Chord(..) => (k.0, k.1, if end == 0 { copy } else { -copy }),
        Curve::Span(_) => (k.0, k.1, if end == 0 { -copy } else { copy }),
        Curve::Boundary(_) => (k.0, k.1, if end == 0 { copy } else { -copy }),
        Curve::Loop => (0, 0, 0),
    }
}

const DISK_GAP: i64 = 32;
const ANN_GAP: i64 = 128;
const LOOP_GAP: i64 = ANN_H / 1024;
const LAYER: i64 = 10;

/// Draws non-boundary components (top layer first, one layer per entry) with the
/// counterclockwise slot rule. With `rng`, the slots at every special point are shuffled.
pub fn draw<R: Rng>(model: Model, layers: &[Vec<Curve>], mut rng: Option<&mut R>) -> Result<Diagram> {
    struct Spec {
        curve: Curve,
        copy: i64,
        base: i64,
    }
    let mut specs: Vec<Spec> = vec![];
    let mut copies: BTreeMap<Curve, i64> = BTreeMap::new();
    let nl = layers.len() as i64;
    for (li, layer) in layers.iter().enumerate() {
        for c in layer {
            if c.is_boundary(model) {
                return Err(Error::Input(format!("boundary curve {c} cannot be drawn")));
            }
            let k = copies.entry(*c).or_insert(0);
            specs.push(Spec { curve: *c, copy: *k, base: LAYER * (nl - li as i64) * 1000 + specs.len() as i64 * LAYER });
            *k += 1;
        }
    }
    // Slot offsets.
    let mut at_point: BTreeMap<PointId, Vec<((i64, i64, i64), usize, usize)>> = BTreeMap::new();
    for (i, sp) in specs.iter().enumerate() {
        for (e, (p, _)) in sp.curve.ends(model).iter().enumerate() {
            at_point.entry(*p).or_default().push((end_key(model, &sp.curve, e, sp.copy), i, e));
        }
    }
    let gap = if model == Model::Annulus11 { ANN_GAP } else { DISK_GAP };
    let limit = if model == Model::Annulus11 { ANN_W / 2 } else { DISK_S / 2 };
    let mut offset: HashMap<(usize, usize), i64> = HashMap::new();
    for list in at_point.values_mut() {
        list.sort();
        let n = list.len() as i64;
        if n * gap >= limit {
            return Err(Error::OutOfScope("too many ends at one special point".into()));
        }
        let mut ranks: Vec<i64> = (0..n).collect();
        let mut jitter = vec![0; n as usize];
        if let Some(r) = rng.as_deref_mut() {
            ranks.shuffle(r);
            // Sub-gap jitter keeps the slot order and avoids concurrent crossings.
            for j in jitter.iter_mut() {
                *j = r.gen_range(0..gap / 2);
            }
        }
        for (idx, (_, i, e)) in list.iter().enumerate() {
            let rank = ranks[idx];
            offset.insert((*i, *e), (n - 1 - rank) * gap - (n - 1) * gap / 2 + jitter[idx]);
        }
    }
    let mut strands = vec![];
    for (i, sp) in specs.iter().enumerate() {
        let ends = sp.curve.ends(model);
        let slot = |e: usize| EndSlot { point: ends[e].0, u: offset[&(i, e)] };
        let strand = match (sp.curve, model) {
            (Curve::Chord(a, b), Model::Disk(n)) => {
                let ua = a as i64 * DISK_S + offset[&(i, 0)];
                let ub = b as i64 * DISK_S + offset[&(i, 1)];
                Strand {
                    points: vec![disk_boundary_point(n, ua), disk_boundary_point(n, ub)],
                    closed_shift: None,
                    base: sp.base,
                    ends: Some([slot(0), slot(1)]),
                }
            }
            (Curve::Span(k), Model::Annulus11) => Strand {
                points: vec![Pt::new(offset[&(i, 0)], 0), Pt::new(k * ANN_W - offset[&(i, 1)], ANN_H)],
                closed_shift: None,
                base: sp.base,
                ends: Some([slot(0), slot(1)]),
            },
            (Curve::Loop, Model::Annulus11) => {
                let y = ANN_H / 2 + sp.copy * LOOP_GAP;
                let phase = ANN_W / 2 + 7;
                Strand {
                    points: vec![Pt::new(phase, y), Pt::new(phase + ANN_W, y)],
                    closed_shift: Some(1),
                    base: sp.base,
                    ends: None,
                }
            }
            (c, m) => return Err(Error::Input(format!("curve {c} does not live on {m:?}"))),
        };
        strands.push(strand);
    }
    Ok(Diagram { model, strands })
}

type NoRng = rand_chacha::ChaCha8Rng;

/// The diagram `B_n` on the annulus: a tent around the outer boundary together with an arc
/// at the inner special point winding `n` times with `n - 1` self-crossings. `reversed`
/// swaps the elevation at the self-crossings.
pub fn b_family(n: i64, reversed: bool) -> Result<Diagram> {
    if n < 1 {
        return Err(Error::Input("B_n needs n ≥ 1".into()));
    }
    let d = ANN_GAP;
    let outer = Strand {
        points: vec![Pt::new(d, 0), Pt::new(ANN_W / 2, ANN_H / 8), Pt::new(ANN_W - d, 0)],
        closed_shift: None,
        base: 0,
        ends: Some([EndSlot { point: 0, u: d }, EndSlot { point: 0, u: -d }]),
    };
    let mut pts = vec![Pt::new(d, ANN_H), Pt::new(n * ANN_W / 2, ANN_H - ANN_H / 4), Pt::new(n * ANN_W - d, ANN_H)];
    let mut ends = [EndSlot { point: 1, u: -d }, EndSlot { point: 1, u: d }];
    if reversed {
        pts.reverse();
        ends.reverse();
    }
    let inner = Strand { points: pts, closed_shift: None, base: LAYER, ends: Some(ends) };
    Ok(Diagram { model: Model::Annulus11, strands: vec![outer, inner] })
}

// ---- engine ----

/// Multiplication engine with a shared cache of diagrammatic products.
pub struct SkeinEngine {
    pub model: Model,
    memo: RwLock<HashMap<(Multicurve, Curve), Arc<SkeinElement>>>,
}

impl SkeinEngine {
    pub fn new(model: Model) -> Self {
        Self { model, memo: RwLock::new(HashMap::new()) }
    }

    /// Half-exponent of `[X][Y] = q^{λ/2}[X ∪ Y]` for compatible `X`, `Y`.
    pub fn lambda(&self, x: &Multicurve, y: &Multicurve) -> i64 {
        x.pairing(self.model, y)
    }

    /// `[I]·c` for a multicurve `I` without boundary curves and a non-boundary curve `c`,
    /// computed from a drawing whose slots may be shuffled by `rng`.
    pub fn draw_product<R: Rng>(&self, i: &Multicurve, c: Curve, rng: Option<&mut R>) -> Result<SkeinElement> {
        let top: Vec<Curve> = i.factor_list(self.model).into_iter().map(|(c, _)| c).collect();
        let layers = vec![top.clone(), vec![c]];
        let d = draw(self.model, &layers, rng)?;
        let mut top_diag = d.clone();
        top_diag.strands.pop();
        let own = if top_diag.crossing_count() == 0 {
            top_diag.end_weight()
        } else {
            // Shuffled slots: the top layer alone reduces to a q-power times [I].
            let e = top_diag.evaluate()?;
            match e.terms.iter().next() {
                Some((m, s)) if e.len() == 1 && m == i => match s.as_monomial() {
                    Some((h, 1)) => h,
                    _ => return Err(Error::Input("top layer coefficient is not a q-power".into())),
                },
                _ => return Err(Error::Input("top layer does not reduce to its basis element".into())),
            }
        };
        Ok(d.evaluate()?.shift(-own))
    }

    fn interior_times_curve(&self, i: &Multicurve, c: Curve) -> Result<Arc<SkeinElement>> {
        let key = (i.clone(), c);
        if let Some(v) = self.memo.read().expect("memo lock").get(&key) {
            return Ok(v.clone());
        }
        let v = Arc::new(self.draw_product::<NoRng>(i, c, None)?);
        self.memo.write().expect("memo lock").insert(key, v.clone());
        Ok(v)
    }

    /// `[X]·c^{sign}` in the Muller basis (`sign = -1` only for boundary curves).
    pub fn basis_times_curve(&self, x: &Multicurve, c: Curve, sign: i64) -> Result<SkeinElement> {
        let model = self.model;
        let cm = Multicurve::from_pairs([(c, sign)]);
        if c.is_boundary(model) {
            let h = self.lambda(x, &cm);
            return Ok(SkeinElement::term(model, Basis::Muller, x.union(&cm), QScalar::q_half(h)));
        }
        if sign != 1 {
            return Err(Error::Input(format!("curve {c} is not invertible")));
        }
        let (inner, bd) = x.split_boundary(model);
        let pre = -self.lambda(&inner, &bd) + 2 * self.lambda(&bd, &cm);
        let ic = self.interior_times_curve(&inner, c)?;
        let mut out = SkeinElement::zero(model, Basis::Muller);
        for (y, s) in &ic.terms {
            let h = pre + self.lambda(y, &bd);
            out.add_term(y.union(&bd), &s.shift(h));
        }
        Ok(out)
    }

    /// `[X]·[Y]` in the Muller basis.
    pub fn basis_product(&self, x: &Multicurve, y: &Multicurve) -> Result<SkeinElement> {
        let factors = y.factor_list(self.model);
        let lam = Multicurve::ordered_product_exponent(self.model, &factors);
        let mut acc = SkeinElement::basis_element(self.model, Basis::Muller, x.clone());
        for (c, s) in factors {
            let mut next = SkeinElement::zero(self.model, Basis::Muller);
            for (m, v) in &acc.terms {
                let p = self.basis_times_curve(m, c, s)?;
                next = next.add(&p.scale(v));
            }
            acc = next;
        }
        Ok(acc.shift(-lam))
    }

    /// Product of two elements; the result is in the basis of `x`.
    pub fn multiply(&self, x: &SkeinElement, y: &SkeinElement) -> Result<SkeinElement> {
        if x.model != self.model || y.model != self.model {
            return Err(Error::Input("surface mismatch".into()));
        }
        let xm = x.to_muller();
        let ym = y.to_muller();
        let mut out = SkeinElement::zero(self.model, Basis::Muller);
        for (a, ca) in &xm.terms {
            for (b, cb) in &ym.terms {
                out = out.add(&self.basis_product(a, b)?.scale(&(ca * cb)));
            }
        }
        Ok(if x.basis == Basis::Bracelets { out.to_bracelets() } else { out })
    }

    /// Expansion of the product of two bracelets basis elements in the bracelets basis.
    pub fn structure_constants(&self, b1: &Multicurve, b2: &Multicurve) -> Result<SkeinElement> {
        let x = SkeinElement::basis_element(self.model, Basis::Bracelets, b1.clone());
        let y = SkeinElement::basis_element(self.model, Basis::Bracelets, b2.clone());
        self.multiply(&x, &y)
    }

    /// Power of a single curve as a plain product `c^k`.
    pub fn curve_power(&self, c: Curve, k: u32) -> Result<SkeinElement> {
        let mut acc = SkeinElement::one(self.model, Basis::Muller);
        let e = SkeinElement::basis_element(self.model, Basis::Muller, Multicurve::single(c));
        for _ in 0..k {
            acc = self.multiply(&acc, &e)?;
        }
        Ok(acc)
    }

    /// `T_n(z)` (`S_n(z)` for `second`) in the Muller basis.
    pub fn chebyshev_loop(&self, n: i64, second: bool) -> SkeinElement {
        let kind = if second { quantum_torus::torus::ChebyshevKind::Second } else { quantum_torus::torus::ChebyshevKind::First };
        let p = quantum_torus::torus::ChebyshevPoly::new(kind, n as usize);
        let mut out = SkeinElement::zero(self.model, Basis::Muller);
        for (j, c) in p.coeffs.iter().enumerate() {
            let mut m = Multicurve::empty();
            m.add(Curve::Loop, j as i64);
            out.add_term(m, &QScalar::constant(*c));
        }
        out
    }
}

// ---- cutting map ----

/// A-torus of a triangulation: basis `A_α` with form `Π`.
pub fn a_torus_lattice(tri: &Triangulation) -> Arc<SkewLattice> {
    Arc::new(SkewLattice::new(tri.labels(), tri.compatibility_matrix()).expect("Π is skew-symmetric"))
}

/// Curve classes of the edges of `tri`, in edge order.
pub fn edge_curves(tri: &Triangulation) -> Result<Vec<Curve>> {
    tri.edges
        .iter()
        .map(|e| Curve::from_edge_class(e.class).ok_or_else(|| Error::OutOfScope("edge without a class".into())))
        .collect()
}

/// Exponent vector of a multicurve made of triangulation edges.
fn edge_exponents(tri: &Triangulation, curves: &[Curve], m: &Multicurve) -> Result<Vec<i64>> {
    let mut v = vec![0; tri.n()];
    for (c, k) in m.iter() {
        let i = curves
            .iter()
            .position(|e| e == c)
            .ok_or_else(|| Error::Input(format!("component {c} is not an edge of the triangulation")))?;
        v[i] += k;
    }
    Ok(v)
}

/// The cutting map on a single curve.
fn cut_curve(engine: &SkeinEngine, tri: &Triangulation, curves: &[Curve], c: Curve) -> Result<TorusElement> {
    let lat = a_torus_lattice(tri);
    if let Some(i) = curves.iter().position(|e| *e == c) {
        return Ok(TorusElement::monomial(&lat, lat.unit(i)));
    }
    let inter: Vec<i64> = curves.iter().map(|e| e.intersection(&c)).collect();
    let e_mc = Multicurve::from_pairs(curves.iter().zip(&inter).map(|(e, k)| (*e, *k)));
    let prod = engine.basis_product(&Multicurve::single(c), &e_mc)?;
    let mut out = TorusElement::zero(&lat);
    let inv: Vec<i64> = inter.iter().map(|k| -k).collect();
    let inv_m = TorusElement::monomial(&lat, inv);
    for (m, s) in &prod.terms {
        let v = edge_exponents(tri, curves, m)?;
        let t = &TorusElement::term(&lat, v, s.clone()) * &inv_m;
        out = &out + &t;
    }
    Ok(out)
}

/// The cutting map `[C] ↦ Cut(C)` into the A-torus of `tri`.
pub fn cut(engine: &SkeinEngine, c: &Multicurve, tri: &Triangulation) -> Result<TorusElement> {
    if tri.model != engine.model {
        return Err(Error::Input("surface mismatch".into()));
    }
    let curves = edge_curves(tri)?;
    let factors = c.factor_list(tri.model);
    let lam = Multicurve::ordered_product_exponent(tri.model, &factors);
    let lat = a_torus_lattice(tri);
    let mut acc = TorusElement::one(&lat);
    for (f, s) in factors {
        let mut t = cut_curve(engine, tri, &curves, f)?;
        if s < 0 {
            t = t.monomial_inverse().ok_or_else(|| Error::Input("inverse of a non-monomial".into()))?;
        }
        acc = &acc * &t;
    }
    Ok(acc.shift(-lam))
}

/// The cutting map on a skein element (Muller or bracelets basis).
pub fn cut_element(engine: &SkeinEngine, x: &SkeinElement, tri: &Triangulation) -> Result<TorusElement> {
    let lat = a_torus_lattice(tri);
    let mut out = TorusElement::zero(&lat);
    for (m, s) in &x.to_muller().terms {
        out = &out + &cut(engine, m, tri)?.scale(s);
    }
    Ok(out)
}

// ---- state-clasp correspondence ----

/// `Φ` on an admissible stated multicurve, returned in the bracelets basis.
pub fn phi_state_clasp(model: Model, comps: &[StatedComponent]) -> Result<SkeinElement> {
    lamination_lift(&stated_lamination(model, comps)?)
}

/// `S_X`: the skein lift of an A-lamination with all states `-` (negative peripheral
/// weights become inverse boundary edges, loop weights become `T_w(z)`).
pub fn lamination_lift(l: &laminations::ALamination) -> Result<SkeinElement> {
    let model = l.model;
    let mut m = Multicurve::empty();
    for (c, w) in &l.components {
        match c {
            laminations::LamCurve::Core => m.add(Curve::Loop, *w),
            _ => {
                let b = c.m_shift(model).ok_or_else(|| Error::Inadmissible("no shift".into()))?;
                m.add(b, *w);
            }
        }
    }
    m.validate(model)?;
    Ok(SkeinElement::basis_element(model, Basis::Bracelets, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_conversion_round_trip() {
        for m in 0..7 {
            let mut mc = Multicurve::empty();
            mc.add(Curve::Loop, m);
            let x = SkeinElement::basis_element(Model::Annulus11, Basis::Muller, mc);
            assert_eq!(x.to_bracelets().to_muller(), x);
        }
    }

    #[test]
    fn simple_multicurves_draw_without_crossings() {
        let layers = vec![vec![Curve::Chord(0, 2), Curve::Chord(0, 2), Curve::Chord(0, 3), Curve::Chord(3, 5)]];
        let d = draw::<NoRng>(Model::Disk(6), &layers, None).unwrap();
        assert_eq!(d.crossing_count(), 0);
        let layers = vec![vec![Curve::Span(1), Curve::Span(1), Curve::Span(2), Curve::Span(2)]];
        let d = draw::<NoRng>(Model::Annulus11, &layers, None).unwrap();
        assert_eq!(d.crossing_count(), 0);
    }

    use rand::SeedableRng;

    fn disk_samples() -> Vec<(Model, Vec<Curve>)> {
        vec![
            (Model::Disk(5), vec![Curve::Chord(0, 2), Curve::Chord(0, 3)]),
            (Model::Disk(6), vec![Curve::Chord(0, 2), Curve::Chord(0, 2), Curve::Chord(2, 5), Curve::Chord(3, 5)]),
            (Model::Disk(6), vec![Curve::Chord(1, 4), Curve::Chord(1, 3), Curve::Chord(4, 0)]),
            (Model::Annulus11, vec![Curve::Span(0), Curve::Span(1), Curve::Span(1)]),
            (Model::Annulus11, vec![Curve::Span(-2), Curve::Span(-2), Curve::Span(-1)]),
        ]
    }

    #[test]
    fn shuffled_slots_give_the_same_element() {
        let mut rng = NoRng::seed_from_u64(5);
        for (model, curves) in disk_samples() {
            let curves: Vec<Curve> = curves.into_iter().map(|c| match c {
                Curve::Chord(a, b) => Curve::chord(a, b),
                c => c,
            }).collect();
            let base = draw::<NoRng>(model, &[curves.clone()], None).unwrap().evaluate().unwrap();
            assert_eq!(base.len(), 1);
            for _ in 0..20 {
                let d = draw(model, &[curves.clone()], Some(&mut rng)).unwrap();
                assert_eq!(d.evaluate().unwrap(), base, "{curves:?}");
            }
        }
    }

    #[test]
    fn drawn_pairing_matches_lambda() {
        for (model, curves) in disk_samples() {
            let curves: Vec<Curve> = curves.into_iter().map(|c| match c {
                Curve::Chord(a, b) => Curve::chord(a, b),
                c => c,
            }).collect();
            let engine = SkeinEngine::new(model);
            let (last, rest) = curves.split_last().unwrap();
            let i = Multicurve::from_pairs(rest.iter().map(|c| (*c, 1)));
            let got = engine.draw_product::<NoRng>(&i, *last, None).unwrap();
            let h = engine.lambda(&i, &Multicurve::single(*last));
            let want = SkeinElement::term(model, Basis::Muller, i.union(&Multicurve::single(*last)), QScalar::q_half(h));
            assert_eq!(got, want);
        }
    }

    #[test]
    fn lambda_equals_compatibility_matrix() {
        let mut tris = Triangulation::all_disk_triangulations(6);
        tris.extend((-2..=2).map(Triangulation::annulus));
        for tri in tris {
            let cs = edge_curves(&tri).unwrap();
            let pi = tri.compatibility_matrix();
            for i in 0..cs.len() {
                for j in 0..cs.len() {
                    assert_eq!(surface_combinatorics::curve::pairing(tri.model, &cs[i], &cs[j]), pi[i][j]);
                }
            }
        }
    }

    #[test]
    fn loop_times_arc() {
        let engine = SkeinEngine::new(Model::Annulus11);
        let m = Model::Annulus11;
        for n in 0..=4i64 {
            for k in -1..=1i64 {
                let t = engine.chebyshev_loop(n, false);
                let t = if n == 0 { SkeinElement::one(m, Basis::Muller) } else { t };
                let a = SkeinElement::basis_element(m, Basis::Muller, Multicurve::single(Curve::Span(k)));
                let got = engine.multiply(&t, &a).unwrap();
                let mut want = SkeinElement::zero(m, Basis::Muller);
                if n == 0 {
                    want = a.clone();
                } else {
                    want.add_term(Multicurve::single(Curve::Span(k).twist(n)), &QScalar::q_half(2 * n));
                    want.add_term(Multicurve::single(Curve::Span(k).twist(-n)), &QScalar::q_half(-2 * n));
                }
                assert_eq!(got, want, "n={n} k={k}");
            }
        }
    }
}
