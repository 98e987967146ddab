//! Curves on triangulated disks and annuli as crossing words, integral A- and
//! P-laminations, their coordinates and tropical transformations.

use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use surface_combinatorics::curve::Curve;
use quantum_torus::error::{Error, Result};
use surface_combinatorics::geometry::{
    disk_boundary_point, polyline_crossings, Polyline, Pt, ANN_H, ANN_W, DISK_S,
};
use surface_combinatorics::surface::{EdgeClass, EdgeId, Model, PointId, Triangulation};

/// Isotopy class of a lamination component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LamCurve {
    /// Disk arc between boundary intervals `i < j` that are not adjacent.
    Arc(u32, u32),
    /// Peripheral arc encircling a marked point.
    Peripheral(PointId),
    /// Annulus arc joining the two boundary intervals; its shift is `Span(k + 1)`.
    Transverse(i64),
    /// Annulus core loop.
    Core,
}

/// Boundary interval index: disk interval `i` runs from point `i` to point `i + 1`;
/// annulus interval `i` is boundary component `i`.
pub type Interval = u32;

/// Height of the turning point of a peripheral arc in the annulus cover.
const ANN_PERIPH_DEPTH: i64 = ANN_H / 256;

pub fn num_intervals(model: Model) -> u32 {
    match model {
        Model::Disk(n) => n,
        Model::Annulus11 => 2,
        Model::Abstract => 0,
    }
}

/// Marked point at the negative end `m⁻` of an interval.
pub fn interval_terminal(model: Model, i: Interval) -> PointId {
    match model {
        Model::Disk(n) => (i + 1) % n,
        _ => i,
    }
}

/// Interval whose negative end is `p`.
pub fn interval_ending_at(model: Model, p: PointId) -> Interval {
    match model {
        Model::Disk(n) => (p + n - 1) % n,
        _ => p,
    }
}

/// Edge identifier of a boundary interval in `tri`.
pub fn interval_edge(tri: &Triangulation, i: Interval) -> Result<EdgeId> {
    let class = match tri.model {
        Model::Disk(n) => EdgeClass::Chord(i.min((i + 1) % n), i.max((i + 1) % n)),
        Model::Annulus11 => EdgeClass::AnnulusBoundary(i as u8),
        Model::Abstract => return Err(Error::OutOfScope("triangulation without a geometric model".into())),
    };
    tri.edge_with_class(class)
        .ok_or_else(|| Error::Input(format!("interval {i} has no boundary edge")))
}

/// Boundary interval of a boundary edge.
pub fn edge_interval(tri: &Triangulation, e: EdgeId) -> Result<Interval> {
    match (tri.model, tri.edge(e).class) {
        (Model::Disk(n), EdgeClass::Chord(i, j)) if j == i + 1 => Ok(i % n),
        (Model::Disk(n), EdgeClass::Chord(0, j)) if j == n - 1 => Ok(n - 1),
        (Model::Annulus11, EdgeClass::AnnulusBoundary(i)) => Ok(i as u32),
        _ => Err(Error::Input(format!("edge {e} is not a boundary interval"))),
    }
}

impl LamCurve {
    pub fn is_peripheral(&self) -> bool {
        matches!(self, LamCurve::Peripheral(_))
    }

    pub fn is_loop(&self) -> bool {
        matches!(self, LamCurve::Core)
    }

    pub fn validate(&self, model: Model) -> Result<()> {
        let ok = match (*self, model) {
            (LamCurve::Arc(i, j), Model::Disk(n)) => {
                i < j && j < n && j - i >= 2 && !(i == 0 && j == n - 1)
            }
            (LamCurve::Peripheral(p), Model::Disk(n)) => p < n,
            (LamCurve::Peripheral(p), Model::Annulus11) => p < 2,
            (LamCurve::Transverse(_) | LamCurve::Core, Model::Annulus11) => true,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Input(format!("{self:?} is not a curve on {model:?}")))
        }
    }

    /// Whether two classes have disjoint representatives.
    pub fn compatible(&self, other: &LamCurve) -> bool {
        match (*self, *other) {
            (LamCurve::Peripheral(_), _) | (_, LamCurve::Peripheral(_)) => true,
            (LamCurve::Arc(a, b), LamCurve::Arc(c, d)) => {
                let inside = |x: u32| a < x && x < b;
                let distinct = a != c && a != d && b != c && b != d;
                !(distinct && inside(c) != inside(d))
            }
            (LamCurve::Transverse(k), LamCurve::Transverse(l)) => (k - l).abs() <= 1,
            (LamCurve::Core, LamCurve::Transverse(_)) | (LamCurve::Transverse(_), LamCurve::Core) => false,
            _ => true,
        }
    }

    /// Start and end intervals of an arc.
    pub fn end_intervals(&self, model: Model) -> Option<(Interval, Interval)> {
        match *self {
            LamCurve::Arc(i, j) => Some((i, j)),
            LamCurve::Peripheral(p) => match model {
                Model::Disk(n) => Some(((p + n - 1) % n, p)),
                _ => Some((p, p)),
            },
            LamCurve::Transverse(_) => Some((0, 1)),
            LamCurve::Core => None,
        }
    }

    /// Arc obtained by sliding both endpoints to the positive ends of their intervals.
    pub fn m_shift(&self, model: Model) -> Option<Curve> {
        match (*self, model) {
            (LamCurve::Arc(i, j), Model::Disk(_)) => Some(Curve::chord(i, j)),
            (LamCurve::Peripheral(p), Model::Disk(n)) => {
                let i = (p + n - 1) % n;
                Some(Curve::chord(i, (i + 1) % n))
            }
            (LamCurve::Peripheral(p), Model::Annulus11) => Some(Curve::Boundary(p as u8)),
            (LamCurve::Transverse(k), Model::Annulus11) => Some(Curve::Span(k + 1)),
            _ => None,
        }
    }

    /// Representative polyline in the planar model.
    pub fn polyline(&self, model: Model) -> Result<Polyline> {
        self.validate(model)?;
        Ok(match (*self, model) {
            (LamCurve::Arc(i, j), Model::Disk(n)) => Polyline::open(vec![
                disk_boundary_point(n, i as i64 * DISK_S + DISK_S / 2),
                disk_boundary_point(n, j as i64 * DISK_S + DISK_S / 2),
            ]),
            (LamCurve::Peripheral(p), Model::Disk(n)) => Polyline::open(vec![
                disk_boundary_point(n, p as i64 * DISK_S - DISK_S / 4),
                disk_boundary_point(n, p as i64 * DISK_S + DISK_S / 4),
            ]),
            (LamCurve::Peripheral(0), Model::Annulus11) => Polyline::open(vec![
                Pt::new(-ANN_W / 4, 0),
                Pt::new(1, ANN_PERIPH_DEPTH),
                Pt::new(ANN_W / 4, 0),
            ]),
            (LamCurve::Peripheral(_), Model::Annulus11) => Polyline::open(vec![
                Pt::new(ANN_W / 4, ANN_H),
                Pt::new(1, ANN_H - ANN_PERIPH_DEPTH),
                Pt::new(-ANN_W / 4, ANN_H),
            ]),
            (LamCurve::Transverse(k), Model::Annulus11) => Polyline::open(vec![
                Pt::new(ANN_W / 2, 0),
                Pt::new(k * ANN_W + ANN_W / 2, ANN_H),
            ]),
            (LamCurve::Core, Model::Annulus11) => Polyline::closed(
                vec![Pt::new(ANN_W / 2 + 1, ANN_H / 2), Pt::new(ANN_W + ANN_W / 2 + 1, ANN_H / 2)],
                1,
            ),
            _ => unreachable!("validated above"),
        })
    }
}

/// Straight representative of an edge in the planar model, oriented tail to head.
pub fn edge_polyline(tri: &Triangulation, e: EdgeId) -> Result<Polyline> {
    let edge = tri.edge(e);
    match (tri.model, edge.class) {
        (Model::Disk(n), EdgeClass::Chord(_, _)) => Ok(Polyline::open(vec![
            disk_boundary_point(n, edge.tail as i64 * DISK_S),
            disk_boundary_point(n, edge.head as i64 * DISK_S),
        ])),
        (Model::Annulus11, EdgeClass::Span(k)) => {
            let a = Pt::new(0, 0);
            let b = Pt::new(k * ANN_W, ANN_H);
            Ok(Polyline::open(if edge.tail == 0 { vec![a, b] } else { vec![b, a] }))
        }
        _ => Err(Error::OutOfScope(format!("edge {e} has no planar representative"))),
    }
}

/// Passage of a curve through an interior edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Crossing {
    pub edge: EdgeId,
    /// True when the curve passes from the triangle where the edge is a forward side to
    /// the triangle where it is a backward side.
    pub forward: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WordKind {
    Arc { start: EdgeId, end: EdgeId },
    Loop,
}

/// A curve recorded by the sequence of interior edges it crosses.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveWord {
    pub kind: WordKind,
    pub crossings: Vec<Crossing>,
}

/// Piece of a curve inside one triangle, between the sides at positions `inp` and `out`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Segment {
    pub tri: usize,
    pub inp: usize,
    pub out: usize,
}

impl Segment {
    /// Positions `(a, b)` of the two sides bounding the corner cut off by the segment.
    /// `a` is the side whose counterclockwise head is the corner vertex.
    pub fn corner(&self) -> (usize, usize) {
        if self.out == (self.inp + 1) % 3 {
            (self.inp, self.out)
        } else {
            (self.out, self.inp)
        }
    }
}

impl CurveWord {
    /// Word of the planar representative of `c` with respect to `tri`.
    pub fn of_curve(c: &LamCurve, tri: &Triangulation) -> Result<CurveWord> {
        let model = tri.model;
        let poly = c.polyline(model)?;
        let period = if model == Model::Annulus11 { ANN_W } else { 0 };
        let mut found = vec![];
        for e in tri.interior_edges() {
            let ep = edge_polyline(tri, e)?;
            for x in polyline_crossings(&poly, &ep, period, false) {
                found.push(((x.seg_a, x.t_a), Crossing { edge: e, forward: x.sign > 0 }));
            }
        }
        found.sort_by(|a, b| a.0.cmp(&b.0));
        let crossings = found.into_iter().map(|(_, x)| x).collect();
        let kind = match c.end_intervals(model) {
            Some((s, t)) => WordKind::Arc { start: interval_edge(tri, s)?, end: interval_edge(tri, t)? },
            None => WordKind::Loop,
        };
        Ok(CurveWord { kind, crossings })
    }

    pub fn is_loop(&self) -> bool {
        self.kind == WordKind::Loop
    }

    /// Triangle pieces of the word. For loops, segment `i` is entered through crossing
    /// `i - 1` and left through crossing `i` (cyclically).
    pub fn segments(&self, tri: &Triangulation) -> Result<Vec<Segment>> {
        let bad = || Error::Input("crossing word is inconsistent with the triangulation".into());
        let find = |t: usize, e: EdgeId, fwd: bool| -> Option<usize> {
            (0..3).find(|&j| tri.triangles[t][j].edge == e && tri.triangles[t][j].forward == fwd)
        };
        let other_side = |e: EdgeId, fwd: bool| -> Option<(usize, usize)> {
            tri.occurrences(e)
                .into_iter()
                .find(|&(t, j)| tri.triangles[t][j].forward == !fwd)
        };
        match self.kind {
            WordKind::Arc { start, end } => {
                let (mut t, mut inp) = *tri.occurrences(start).first().ok_or_else(bad)?;
                let mut out = vec![];
                for x in &self.crossings {
                    let j = find(t, x.edge, x.forward).ok_or_else(bad)?;
                    out.push(Segment { tri: t, inp, out: j });
                    (t, inp) = other_side(x.edge, x.forward).ok_or_else(bad)?;
                }
                let j = (0..3).find(|&j| tri.triangles[t][j].edge == end).ok_or_else(bad)?;
                out.push(Segment { tri: t, inp, out: j });
                Ok(out)
            }
            WordKind::Loop => {
                let n = self.crossings.len();
                if n == 0 {
                    return Err(Error::Input("loop word is empty".into()));
                }
                let mut out = vec![];
                for i in 0..n {
                    let prev = self.crossings[(i + n - 1) % n];
                    let next = self.crossings[i];
                    let (t, inp) = other_side(prev.edge, prev.forward).ok_or_else(bad)?;
                    let j = find(t, next.edge, next.forward).ok_or_else(bad)?;
                    out.push(Segment { tri: t, inp, out: j });
                }
                Ok(out)
            }
        }
    }

    /// Rebuilds a word from consecutive triangle pieces.
    fn from_segments(kind: WordKind, segs: &[Segment], tri: &Triangulation) -> CurveWord {
        let exit = |s: &Segment| {
            let side = tri.triangles[s.tri][s.out];
            Crossing { edge: side.edge, forward: side.forward }
        };
        let crossings = match kind {
            WordKind::Arc { .. } => segs[..segs.len() - 1].iter().map(exit).collect(),
            WordKind::Loop => segs.iter().map(exit).collect(),
        };
        CurveWord { kind, crossings }
    }

    /// Removes immediate backtracking (cyclically for loops).
    pub fn reduce(&self) -> CurveWord {
        let cancels = |a: &Crossing, b: &Crossing| a.edge == b.edge && a.forward != b.forward;
        let mut stack: Vec<Crossing> = vec![];
        for x in &self.crossings {
            if stack.last().is_some_and(|y| cancels(y, x)) {
                stack.pop();
            } else {
                stack.push(*x);
            }
        }
        if self.is_loop() {
            while stack.len() >= 2 && cancels(&stack[0], stack.last().unwrap()) {
                stack.pop();
                stack.remove(0);
            }
        }
        CurveWord { kind: self.kind, crossings: stack }
    }

    pub fn is_reduced(&self) -> bool {
        self.reduce() == *self
    }

    /// Canonical representative: loops are rotated to their least rotation.
    pub fn canonical(&self) -> CurveWord {
        if !self.is_loop() || self.crossings.is_empty() {
            return self.clone();
        }
        let n = self.crossings.len();
        let best = (0..n)
            .map(|r| {
                let mut v = self.crossings.clone();
                v.rotate_left(r);
                v
            })
            .min()
            .unwrap();
        CurveWord { kind: self.kind, crossings: best }
    }

    /// Number of times the word meets edge `e` (crossings, or endpoints on boundary edges).
    pub fn intersection(&self, e: EdgeId) -> i64 {
        let mut s = self.crossings.iter().filter(|x| x.edge == e).count() as i64;
        if let WordKind::Arc { start, end } = self.kind {
            s += i64::from(start == e) + i64::from(end == e);
        }
        s
    }
}

/// Rewrites a word on `tri` as a word on `tri.flip(kappa)`.
pub fn flip_transport_curve(word: &CurveWord, tri: &Triangulation, kappa: EdgeId) -> Result<CurveWord> {
    let (new_tri, receipt) = tri.flip(kappa)?;
    let occ = tri.occurrences(kappa);
    let (t1, j1) = occ[0];
    let (t2, j2) = occ[1];
    // Old side occurrence (triangle, position) -> new occurrence, for the four outer sides.
    let new_kappa_pos = |t: usize| (0..3).find(|&j| new_tri.triangles[t][j].edge == receipt.new).unwrap();
    let remap = |t: usize, j: usize| -> (usize, usize) {
        if t != t1 && t != t2 {
            return (t, j);
        }
        let side = tri.triangles[t][j];
        let nt = if t == t1 {
            if j == (j1 + 1) % 3 { t1 } else { t2 }
        } else if j == (j2 + 1) % 3 {
            t2
        } else {
            t1
        };
        let nj = (0..3).find(|&k| new_tri.triangles[nt][k] == side).unwrap();
        (nt, nj)
    };
    let segs = word.segments(tri)?;
    let n = segs.len();
    let in_q = |s: &Segment| s.tri == t1 || s.tri == t2;
    let enters_via_kappa = |s: &Segment| in_q(s) && tri.triangles[s.tri][s.inp].edge == kappa;
    let start = if word.is_loop() {
        (0..n).find(|&i| !enters_via_kappa(&segs[i])).unwrap_or(0)
    } else {
        0
    };
    let mut out: Vec<Segment> = vec![];
    let mut i = 0;
    while i < n {
        let s = segs[(start + i) % n];
        if !in_q(&s) {
            out.push(s);
            i += 1;
            continue;
        }
        let (entry, exit, used) = if tri.triangles[s.tri][s.out].edge == kappa && i + 1 < n {
            let s2 = segs[(start + i + 1) % n];
            ((s.tri, s.inp), (s2.tri, s2.out), 2)
        } else {
            ((s.tri, s.inp), (s.tri, s.out), 1)
        };
        let (na, ja) = remap(entry.0, entry.1);
        let (nb, jb) = remap(exit.0, exit.1);
        if na == nb {
            out.push(Segment { tri: na, inp: ja, out: jb });
        } else {
            out.push(Segment { tri: na, inp: ja, out: new_kappa_pos(na) });
            out.push(Segment { tri: nb, inp: new_kappa_pos(nb), out: jb });
        }
        i += used;
    }
    Ok(CurveWord::from_segments(word.kind, &out, &new_tri).reduce())
}

/// Integral A-lamination: weighted pairwise disjoint curves; only peripheral arcs may
/// carry negative weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ALamination {
    pub model: Model,
    pub components: BTreeMap<LamCurve, i64>,
}

/// Integral P-lamination: non-peripheral weighted curves plus a pinning on the intervals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PLamination {
    pub model: Model,
    pub components: BTreeMap<LamCurve, i64>,
    pub pinning: BTreeMap<Interval, i64>,
}

fn check_components(model: Model, comps: &BTreeMap<LamCurve, i64>, allow_peripheral: bool) -> Result<()> {
    for (c, w) in comps {
        c.validate(model)?;
        if *w == 0 {
            return Err(Error::Input(format!("component {c:?} has zero weight")));
        }
        if c.is_peripheral() && !allow_peripheral {
            return Err(Error::Input("P-laminations have no peripheral components".into()));
        }
        if *w < 0 && !c.is_peripheral() {
            return Err(Error::Input(format!("non-peripheral component {c:?} has negative weight")));
        }
    }
    let cs: Vec<&LamCurve> = comps.keys().collect();
    for i in 0..cs.len() {
        for j in (i + 1)..cs.len() {
            if !cs[i].compatible(cs[j]) {
                return Err(Error::Input(format!("components {:?} and {:?} intersect", cs[i], cs[j])));
            }
        }
    }
    Ok(())
}

impl ALamination {
    pub fn new(model: Model, components: BTreeMap<LamCurve, i64>) -> Result<Self> {
        let components: BTreeMap<LamCurve, i64> = components.into_iter().filter(|(_, w)| *w != 0).collect();
        check_components(model, &components, true)?;
        Ok(Self { model, components })
    }

    pub fn empty(model: Model) -> Self {
        Self { model, components: BTreeMap::new() }
    }

    pub fn from_pairs<I: IntoIterator<Item = (LamCurve, i64)>>(model: Model, pairs: I) -> Result<Self> {
        let mut m = BTreeMap::new();
        for (c, w) in pairs {
            *m.entry(c).or_insert(0) += w;
        }
        Self::new(model, m)
    }

    /// Twice the a-coordinates, indexed by edge position in `tri`.
    pub fn a_coords_doubled(&self, tri: &Triangulation) -> Result<Vec<i64>> {
        let mut a = vec![0; tri.n()];
        for (c, w) in &self.components {
            let word = CurveWord::of_curve(c, tri)?;
            for (k, e) in tri.edges.iter().enumerate() {
                a[k] += w * word.intersection(e.id);
            }
        }
        Ok(a)
    }

    /// a-coordinates when all of them are integers.
    pub fn a_coords(&self, tri: &Triangulation) -> Result<Option<Vec<i64>>> {
        let d = self.a_coords_doubled(tri)?;
        Ok(if d.iter().all(|x| x % 2 == 0) { Some(d.iter().map(|x| x / 2).collect()) } else { None })
    }

    pub fn is_congruent(&self, tri: &Triangulation) -> Result<bool> {
        Ok(self.a_coords(tri)?.is_some())
    }

    /// Forgets peripheral arcs, recording their weights as a pinning.
    pub fn tropical_ensemble(&self) -> PLamination {
        let mut components = BTreeMap::new();
        let mut pinning = BTreeMap::new();
        for (c, w) in &self.components {
            match c {
                LamCurve::Peripheral(p) => {
                    pinning.insert(interval_ending_at(self.model, *p), *w);
                }
                _ => {
                    components.insert(*c, *w);
                }
            }
        }
        PLamination { model: self.model, components, pinning }
    }

    pub fn total_weight(&self) -> i64 {
        self.components.values().map(|w| w.abs()).sum()
    }
}

impl PLamination {
    pub fn new(model: Model, components: BTreeMap<LamCurve, i64>, pinning: BTreeMap<Interval, i64>) -> Result<Self> {
        let components: BTreeMap<LamCurve, i64> = components.into_iter().filter(|(_, w)| *w != 0).collect();
        check_components(model, &components, false)?;
        if pinning.keys().any(|i| *i >= num_intervals(model)) {
            return Err(Error::Input("pinning refers to an unknown interval".into()));
        }
        let pinning = pinning.into_iter().filter(|(_, v)| *v != 0).collect();
        Ok(Self { model, components, pinning })
    }

    /// Elementary lamination of an edge: shear coordinates `δ_{·,α}`.
    pub fn elementary(tri: &Triangulation, alpha: EdgeId) -> Result<Self> {
        let e = tri.edge(alpha);
        let mut components = BTreeMap::new();
        let mut pinning = BTreeMap::new();
        match e.class {
            EdgeClass::Chord(a, b) if !tri.is_boundary(alpha) => {
                components.insert(LamCurve::Arc(a, b), 1);
            }
            EdgeClass::Span(k) => {
                components.insert(LamCurve::Transverse(k - 1), 1);
            }
            _ if tri.is_boundary(alpha) => {
                pinning.insert(edge_interval(tri, alpha)?, 1);
            }
            _ => return Err(Error::OutOfScope("edge without a geometric model".into())),
        }
        Self::new(tri.model, components, pinning)
    }

    /// Shear coordinates indexed by edge position in `tri`.
    pub fn shear_coords(&self, tri: &Triangulation) -> Result<Vec<i64>> {
        let mut x = vec![0; tri.n()];
        for (i, v) in &self.pinning {
            x[tri.idx(interval_edge(tri, *i)?)] += v;
        }
        for (c, w) in &self.components {
            let word = CurveWord::of_curve(c, tri)?;
            for (k, v) in word_shear(&word, tri)? {
                x[k] += w * v;
            }
        }
        Ok(x)
    }

    /// Inverse of [`ALamination::tropical_ensemble`].
    pub fn inverse_tropical_ensemble(&self) -> ALamination {
        let mut components = self.components.clone();
        for (i, v) in &self.pinning {
            if *v != 0 {
                components.insert(LamCurve::Peripheral(interval_terminal(self.model, *i)), *v);
            }
        }
        ALamination { model: self.model, components }
    }
}

/// State of an arc end.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum State {
    Plus,
    Minus,
}

impl State {
    /// `+1` for `Plus`, `-1` for `Minus`.
    pub fn sign(self) -> i64 {
        match self {
            State::Plus => 1,
            State::Minus => -1,
        }
    }
}

/// A component of a stated multicurve. Loops ignore their states.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatedComponent {
    pub curve: LamCurve,
    pub states: [State; 2],
}

/// The A-lamination of an admissible stated multicurve: non-corner arcs carry `(-,-)`,
/// corner arcs equal states (`(+,+)` counts with weight `-1`).
pub fn stated_lamination(model: Model, comps: &[StatedComponent]) -> Result<ALamination> {
    let mut m: BTreeMap<LamCurve, i64> = BTreeMap::new();
    for sc in comps {
        let w = match (sc.curve, sc.states) {
            (LamCurve::Core, _) => 1,
            (LamCurve::Peripheral(_), [State::Minus, State::Minus]) => 1,
            (LamCurve::Peripheral(_), [State::Plus, State::Plus]) => -1,
            (LamCurve::Peripheral(_), _) => {
                return Err(Error::Inadmissible("corner arc with different states".into()))
            }
            (_, [State::Minus, State::Minus]) => 1,
            _ => return Err(Error::Inadmissible("non-corner arc with a + state".into())),
        };
        *m.entry(sc.curve).or_insert(0) += w;
    }
    m.retain(|_, w| *w != 0);
    ALamination::new(model, m)
}

/// Shear contributions `(edge position, ±1)` of a single curve word.
pub fn word_shear(word: &CurveWord, tri: &Triangulation) -> Result<Vec<(usize, i64)>> {
    let segs = word.segments(tri)?;
    let n = segs.len();
    let mut out = vec![];
    let role = |s: &Segment, pos: usize| s.corner().0 == pos;
    let pairs: Vec<(usize, usize)> = if word.is_loop() {
        (0..n).map(|i| (i, (i + 1) % n)).collect()
    } else {
        (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect()
    };
    for (i, j) in pairs {
        let (s, t) = (segs[i], segs[j]);
        let e = tri.triangles[s.tri][s.out].edge;
        let (ra, rb) = (role(&s, s.out), role(&t, t.inp));
        let v = match (ra, rb) {
            (true, true) => 1,
            (false, false) => -1,
            _ => 0,
        };
        if v != 0 {
            out.push((tri.idx(e), v));
        }
    }
    if let WordKind::Arc { start, end } = word.kind {
        let (s0, sl) = (segs[0], segs[n - 1]);
        if role(&s0, s0.inp) {
            out.push((tri.idx(start), 1));
        }
        if role(&sl, sl.out) {
            out.push((tri.idx(end), 1));
        }
    }
    Ok(out)
}

/// Tropical x-transformation at the edge position `k`, using the exchange matrix before the flip.
pub fn tropical_mutate_x(x: &[i64], k: usize, eps: &[Vec<i64>]) -> Vec<i64> {
    let xk = x[k];
    (0..x.len())
        .map(|a| {
            if a == k {
                -xk
            } else {
                let e = eps[a][k];
                x[a] - e * (-e.signum() * xk).max(0)
            }
        })
        .collect()
}

/// Tropical a-transformation at the edge position `k`, using the exchange matrix before the flip.
pub fn tropical_mutate_a(a: &[i64], k: usize, eps: &[Vec<i64>]) -> Vec<i64> {
    let pos: i64 = (0..a.len()).map(|b| eps[k][b].max(0) * a[b]).sum();
    let neg: i64 = (0..a.len()).map(|b| (-eps[k][b]).max(0) * a[b]).sum();
    let mut out = a.to_vec();
    out[k] = -a[k] + pos.max(neg);
    out
}

/// Non-peripheral curve classes of bounded complexity.
pub fn curve_classes(model: Model, max_twist: i64) -> Vec<LamCurve> {
    match model {
        Model::Disk(n) => {
            let mut v = vec![];
            for i in 0..n {
                for j in (i + 2)..n {
                    if !(i == 0 && j == n - 1) {
                        v.push(LamCurve::Arc(i, j));
                    }
                }
            }
            v
        }
        Model::Annulus11 => {
            let mut v: Vec<LamCurve> = (-max_twist..=max_twist).map(LamCurve::Transverse).collect();
            v.push(LamCurve::Core);
            v
        }
        Model::Abstract => vec![],
    }
}

/// Parameters for random laminations.
#[derive(Clone, Copy, Debug)]
pub struct SampleBounds {
    pub max_components: usize,
    pub max_weight: i64,
    pub max_peripheral: i64,
    pub max_twist: i64,
}

impl Default for SampleBounds {
    fn default() -> Self {
        Self { max_components: 3, max_weight: 2, max_peripheral: 2, max_twist: 3 }
    }
}

/// Random A-lamination.
pub fn random_a_lamination<R: Rng>(model: Model, rng: &mut R, b: &SampleBounds) -> ALamination {
    let classes = curve_classes(model, b.max_twist);
    let mut comps: BTreeMap<LamCurve, i64> = BTreeMap::new();
    let k = rng.gen_range(1..=b.max_components.max(1));
    for _ in 0..(4 * k) {
        if comps.len() >= k || classes.is_empty() {
            break;
        }
        let c = classes[rng.gen_range(0..classes.len())];
        if comps.keys().all(|d| d.compatible(&c)) {
            comps.insert(c, rng.gen_range(1..=b.max_weight.max(1)));
        }
    }
    for p in 0..num_intervals(model) {
        if b.max_peripheral > 0 && rng.gen_bool(0.5) {
            let w = rng.gen_range(-b.max_peripheral..=b.max_peripheral);
            if w != 0 {
                comps.insert(LamCurve::Peripheral(p), w);
            }
        }
    }
    ALamination::new(model, comps).expect("sampled components are compatible")
}

/// Random A-lamination that is congruent with respect to `tri`.
pub fn random_congruent_lamination<R: Rng>(tri: &Triangulation, rng: &mut R, b: &SampleBounds) -> ALamination {
    for _ in 0..10_000 {
        let l = random_a_lamination(tri.model, rng, b);
        if l.is_congruent(tri).unwrap_or(false) {
            return l;
        }
    }
    let l = random_a_lamination(tri.model, rng, b);
    ALamination { model: l.model, components: l.components.into_iter().map(|(c, w)| (c, 2 * w)).collect() }
}

/// Random P-lamination.
pub fn random_p_lamination<R: Rng>(model: Model, rng: &mut R, b: &SampleBounds) -> PLamination {
    random_a_lamination(model, rng, b).tropical_ensemble()
}

/// All A-laminations whose non-peripheral weights sum to at most `max_total` and whose
/// peripheral weights lie in `[-max_peripheral, max_peripheral]`.
pub fn enumerate_a_laminations(model: Model, max_total: i64, max_peripheral: i64, max_twist: i64) -> Vec<ALamination> {
    let classes = curve_classes(model, max_twist);
    let mut bases: Vec<BTreeMap<LamCurve, i64>> = vec![];
    fn rec(
        classes: &[LamCurve],
        i: usize,
        budget: i64,
        cur: &mut BTreeMap<LamCurve, i64>,
        out: &mut Vec<BTreeMap<LamCurve, i64>>,
    ) {
        if i == classes.len() {
            out.push(cur.clone());
            return;
        }
        rec(classes, i + 1, budget, cur, out);
        let c = classes[i];
        if cur.keys().all(|d| d.compatible(&c)) {
            for w in 1..=budget {
                cur.insert(c, w);
                rec(classes, i + 1, budget - w, cur, out);
            }
            cur.remove(&c);
        }
    }
    rec(&classes, 0, max_total, &mut BTreeMap::new(), &mut bases);
    let np = num_intervals(model);
    let mut out = vec![];
    for base in bases {
        let mut pins = vec![base];
        for p in 0..np {
            let mut next = vec![];
            for m in &pins {
                for w in -max_peripheral..=max_peripheral {
                    let mut m2 = m.clone();
                    if w != 0 {
                        m2.insert(LamCurve::Peripheral(p), w);
                    }
                    next.push(m2);
                }
            }
            pins = next;
        }
        out.extend(pins.into_iter().map(|components| ALamination { model, components }));
    }
    out
}

// ---- JSON ----

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComponentJson {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<EdgeId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub end: Option<EdgeId>,
    #[serde(default)]
    pub word: Vec<EdgeId>,
    pub weight: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub peripheral_at: Option<PointId>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct LaminationJson {
    pub components: Vec<ComponentJson>,
    #[serde(default)]
    pub pinning: BTreeMap<String, i64>,
}

fn component_json(c: &LamCurve, w: i64, tri: &Triangulation) -> Result<ComponentJson> {
    let word = CurveWord::of_curve(c, tri)?;
    let (kind, start, end) = match word.kind {
        WordKind::Arc { start, end } => ("arc", Some(start), Some(end)),
        WordKind::Loop => ("loop", None, None),
    };
    Ok(ComponentJson {
        kind: kind.into(),
        start,
        end,
        word: word.crossings.iter().map(|x| x.edge).collect(),
        weight: w,
        peripheral_at: match c {
            LamCurve::Peripheral(p) => Some(*p),
            _ => None,
        },
    })
}

fn identify(cj: &ComponentJson, tri: &Triangulation) -> Result<LamCurve> {
    let model = tri.model;
    if let Some(p) = cj.peripheral_at {
        let c = LamCurve::Peripheral(p);
        c.validate(model)?;
        return Ok(c);
    }
    let candidates: Vec<LamCurve> = match (cj.kind.as_str(), model) {
        ("loop", Model::Annulus11) => vec![LamCurve::Core],
        ("arc", Model::Disk(_)) => {
            let s = edge_interval(tri, cj.start.ok_or_else(|| Error::Input("arc without start".into()))?)?;
            let t = edge_interval(tri, cj.end.ok_or_else(|| Error::Input("arc without end".into()))?)?;
            let c = LamCurve::Arc(s.min(t), s.max(t));
            c.validate(model)?;
            vec![c]
        }
        ("arc", Model::Annulus11) => (-64..=64).map(LamCurve::Transverse).collect(),
        _ => return Err(Error::Input(format!("unsupported component kind {:?}", cj.kind))),
    };
    if candidates.len() == 1 {
        return Ok(candidates[0]);
    }
    for c in candidates {
        let w = CurveWord::of_curve(&c, tri)?;
        let edges: Vec<EdgeId> = w.crossings.iter().map(|x| x.edge).collect();
        let rev: Vec<EdgeId> = edges.iter().rev().copied().collect();
        if edges == cj.word || rev == cj.word {
            return Ok(c);
        }
    }
    Err(Error::Input("crossing word matches no simple curve".into()))
}

impl ALamination {
    pub fn to_json(&self, tri: &Triangulation) -> Result<LaminationJson> {
        let components = self
            .components
            .iter()
            .map(|(c, w)| component_json(c, *w, tri))
            .collect::<Result<Vec<_>>>()?;
        Ok(LaminationJson { components, pinning: BTreeMap::new() })
    }

    pub fn from_json(j: &LaminationJson, tri: &Triangulation) -> Result<Self> {
        Ok(PLamination::from_json_any(j, tri, true)?.inverse_tropical_ensemble())
    }
}

impl PLamination {
    pub fn to_json(&self, tri: &Triangulation) -> Result<LaminationJson> {
        let components = self
            .components
            .iter()
            .map(|(c, w)| component_json(c, *w, tri))
            .collect::<Result<Vec<_>>>()?;
        let pinning = self
            .pinning
            .iter()
            .map(|(i, v)| Ok((interval_edge(tri, *i)?.to_string(), *v)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(LaminationJson { components, pinning })
    }

    pub fn from_json(j: &LaminationJson, tri: &Triangulation) -> Result<Self> {
        Self::from_json_any(j, tri, false)
    }

    fn from_json_any(j: &LaminationJson, tri: &Triangulation, allow_peripheral: bool) -> Result<Self> {
        let mut components = BTreeMap::new();
        let mut pinning: BTreeMap<Interval, i64> = BTreeMap::new();
        for cj in &j.components {
            let c = identify(cj, tri)?;
            match c {
                LamCurve::Peripheral(p) => {
                    if !allow_peripheral {
                        return Err(Error::Input("P-laminations have no peripheral components".into()));
                    }
                    *pinning.entry(interval_ending_at(tri.model, p)).or_insert(0) += cj.weight;
                }
                _ => *components.entry(c).or_insert(0) += cj.weight,
            }
        }
        for (k, v) in &j.pinning {
            let e: EdgeId = k.parse().map_err(|_| Error::Input(format!("bad interval id {k:?}")))?;
            if tri.index_of(e).is_none() {
                return Err(Error::Input(format!("unknown interval {e}")));
            }
            *pinning.entry(edge_interval(tri, e)?).or_insert(0) += v;
        }
        Self::new(tri.model, components, pinning)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elementary_laminations_have_delta_coordinates() {
        let mut tris = Triangulation::all_disk_triangulations(5);
        tris.push(Triangulation::annulus(0));
        tris.push(Triangulation::annulus(-2));
        for tri in &tris {
            for (k, e) in tri.edges.iter().enumerate() {
                let l = PLamination::elementary(tri, e.id).unwrap();
                let x = l.shear_coords(tri).unwrap();
                let mut d = vec![0; tri.n()];
                d[k] = 1;
                assert_eq!(x, d, "edge {} of {:?}", e.id, tri.class_key());
            }
        }
    }

    #[test]
    fn arc_crossing_one_diagonal() {
        let tri = Triangulation::disk(4, &[(0, 2)]).unwrap();
        let l = ALamination::from_pairs(Model::Disk(4), [(LamCurve::Arc(1, 3), 2)]).unwrap();
        let a = l.a_coords(&tri).unwrap().unwrap();
        assert_eq!(a, vec![0, 1, 0, 1, 1]);
    }

    #[test]
    fn words_are_reduced() {
        let tri = Triangulation::annulus(1);
        for c in curve_classes(Model::Annulus11, 4) {
            let w = CurveWord::of_curve(&c, &tri).unwrap();
            assert!(w.is_reduced());
            w.segments(&tri).unwrap();
        }
    }

    fn flip_cases() -> Vec<Triangulation> {
        let mut v = Triangulation::all_disk_triangulations(5);
        v.extend((-2..=2).map(Triangulation::annulus));
        v
    }

    #[test]
    fn transported_words_match_geometry() {
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(7);
        for tri in flip_cases() {
            for _ in 0..10 {
                let l = random_a_lamination(tri.model, &mut rng, &SampleBounds::default());
                for kappa in tri.interior_edges() {
                    let (t2, _) = tri.flip(kappa).unwrap();
                    for c in l.components.keys() {
                        let w = CurveWord::of_curve(c, &tri).unwrap();
                        let moved = flip_transport_curve(&w, &tri, kappa).unwrap();
                        let direct = CurveWord::of_curve(c, &t2).unwrap();
                        assert_eq!(moved.canonical(), direct.canonical(), "{c:?} flip {kappa}");
                    }
                }
            }
        }
    }

    #[test]
    fn coordinates_follow_tropical_flips() {
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(11);
        for tri in flip_cases() {
            let eps = tri.exchange_matrix();
            for _ in 0..10 {
                let l = random_a_lamination(tri.model, &mut rng, &SampleBounds::default());
                let lp = l.tropical_ensemble();
                for kappa in tri.interior_edges() {
                    let k = tri.idx(kappa);
                    let (t2, _) = tri.flip(kappa).unwrap();
                    let a = l.a_coords_doubled(&tri).unwrap();
                    assert_eq!(l.a_coords_doubled(&t2).unwrap(), tropical_mutate_a(&a, k, &eps));
                    let x = lp.shear_coords(&tri).unwrap();
                    assert_eq!(lp.shear_coords(&t2).unwrap(), tropical_mutate_x(&x, k, &eps));
                }
            }
        }
    }

    #[test]
    fn ensemble_is_linear_in_a_coordinates() {
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(3);
        for tri in flip_cases() {
            let eps = tri.exchange_matrix();
            let p = tri.p_matrix();
            let em: Vec<Vec<i64>> =
                (0..tri.n()).map(|i| (0..tri.n()).map(|j| 2 * eps[i][j] - p[i][j]).collect()).collect();
            for _ in 0..10 {
                let l = random_a_lamination(tri.model, &mut rng, &SampleBounds::default());
                let a = l.a_coords_doubled(&tri).unwrap();
                let x = l.tropical_ensemble().shear_coords(&tri).unwrap();
                let pa: Vec<i64> = (0..tri.n()).map(|i| (0..tri.n()).map(|j| em[i][j] * a[j]).sum()).collect();
                let x2: Vec<i64> = x.iter().map(|v| 2 * v).collect();
                assert_eq!(x2, pa);
                assert_eq!(l.tropical_ensemble().inverse_tropical_ensemble(), l);
            }
        }
    }
}
