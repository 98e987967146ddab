//! Isotopy classes of simple curves with endpoints at special points on `D_n` and `A_{1,1}`,
//! and simple multicurves in normal form.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use quantum_torus::error::{Error, Result};
use crate::surface::{EdgeClass, Model, PointId};

/// Sign convention of the simultaneous-crossing relation: a diagram whose ends at a special
/// point have heights `h` equals `q^{(SIGMA/2) Σ_{i<j} sgn(h_i - h_j)}` times its Weyl
/// normalization, the sum running over pairs of ends in counterclockwise order.
pub const SIGMA: i64 = 1;

/// A simple curve class of the skein engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Curve {
    /// Disk chord between marked points `i < j` (a boundary edge when adjacent).
    Chord(u32, u32),
    /// Annulus boundary edge: 0 outer, 1 inner.
    Boundary(u8),
    /// Annulus arc from the outer to the inner special point with winding `k`.
    Span(i64),
    /// Annulus core loop.
    Loop,
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Curve::Chord(i, j) => write!(f, "c{i}_{j}"),
            Curve::Boundary(i) => write!(f, "b{i}"),
            Curve::Span(k) => write!(f, "t{k}"),
            Curve::Loop => write!(f, "z"),
        }
    }
}

impl Curve {
    pub fn chord(i: u32, j: u32) -> Curve {
        Curve::Chord(i.min(j), i.max(j))
    }

    pub fn from_edge_class(c: EdgeClass) -> Option<Curve> {
        match c {
            EdgeClass::Chord(i, j) => Some(Curve::chord(i, j)),
            EdgeClass::AnnulusBoundary(i) => Some(Curve::Boundary(i)),
            EdgeClass::Span(k) => Some(Curve::Span(k)),
            EdgeClass::Abstract => None,
        }
    }

    pub fn is_boundary(&self, model: Model) -> bool {
        match (*self, model) {
            (Curve::Chord(i, j), Model::Disk(n)) => j == i + 1 || (i == 0 && j == n - 1),
            (Curve::Boundary(_), _) => true,
            _ => false,
        }
    }

    pub fn is_loop(&self) -> bool {
        matches!(self, Curve::Loop)
    }

    /// Ends as `(point, key)`; the key orders ends counterclockwise at that point.
    pub fn ends(&self, model: Model) -> Vec<(PointId, (i64, i64))> {
        match (*self, model) {
            (Curve::Chord(i, j), Model::Disk(n)) => {
                let n = n as i64;
                let (a, b) = (i as i64, j as i64);
                vec![(i, ((b - a).rem_euclid(n), 0)), (j, ((a - b).rem_euclid(n), 0))]
            }
            (Curve::Boundary(p), Model::Annulus11) => {
                vec![(p as PointId, (0, 0)), (p as PointId, (2, 0))]
            }
            (Curve::Span(k), Model::Annulus11) => vec![(0, (1, -k)), (1, (1, -k))],
            _ => vec![],
        }
    }

    /// Geometric intersection number of two classes.
    pub fn intersection(&self, other: &Curve) -> i64 {
        match (*self, *other) {
            (Curve::Chord(a, b), Curve::Chord(c, d)) => {
                let inside = |x: u32| a < x && x < b;
                let distinct = a != c && a != d && b != c && b != d;
                i64::from(distinct && inside(c) != inside(d))
            }
            (Curve::Span(j), Curve::Span(k)) => ((j - k).abs() - 1).max(0),
            (Curve::Span(_), Curve::Loop) | (Curve::Loop, Curve::Span(_)) => 1,
            _ => 0,
        }
    }

    /// Right-handed Dehn twist along the core, applied `k` times.
    pub fn twist(&self, k: i64) -> Curve {
        match *self {
            Curve::Span(j) => Curve::Span(j + TAU_DIR * k),
            c => c,
        }
    }
}

/// Direction in which the right-handed Dehn twist along the core changes the winding.
pub const TAU_DIR: i64 = 1;

/// `λ(a, b)` with `[a][b] = q^{λ/2}[a ∪ b]` for compatible classes.
pub fn pairing(model: Model, a: &Curve, b: &Curve) -> i64 {
    if a == b {
        return 0;
    }
    let ea = a.ends(model);
    let eb = b.ends(model);
    let mut s = 0;
    for (p, ka) in &ea {
        for (r, kb) in &eb {
            if p == r {
                s += match ka.cmp(kb) {
                    std::cmp::Ordering::Less => 1,
                    std::cmp::Ordering::Greater => -1,
                    std::cmp::Ordering::Equal => 0,
                };
            }
        }
    }
    SIGMA * s
}

/// A simple multicurve: multiplicities per class. Boundary edges may carry negative
/// exponents (boundary localization); other classes are nonnegative.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Multicurve(pub BTreeMap<Curve, i64>);

impl Multicurve {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn single(c: Curve) -> Self {
        Self::from_pairs([(c, 1)])
    }

    pub fn from_pairs<I: IntoIterator<Item = (Curve, i64)>>(pairs: I) -> Self {
        let mut m = Self::empty();
        for (c, k) in pairs {
            m.add(c, k);
        }
        m
    }

    pub fn add(&mut self, c: Curve, k: i64) {
        if k == 0 {
            return;
        }
        let e = self.0.entry(c).or_insert(0);
        *e += k;
        if *e == 0 {
            self.0.remove(&c);
        }
    }

    pub fn get(&self, c: &Curve) -> i64 {
        self.0.get(c).copied().unwrap_or(0)
    }

    pub fn union(&self, other: &Multicurve) -> Multicurve {
        let mut m = self.clone();
        for (c, k) in &other.0 {
            m.add(*c, *k);
        }
        m
    }

    pub fn scaled(&self, k: i64) -> Multicurve {
        Multicurve(self.0.iter().map(|(c, m)| (*c, m * k)).filter(|(_, m)| *m != 0).collect())
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Curve, &i64)> {
        self.0.iter()
    }

    /// Splits into (non-boundary part, boundary part).
    pub fn split_boundary(&self, model: Model) -> (Multicurve, Multicurve) {
        let mut inner = Multicurve::empty();
        let mut bd = Multicurve::empty();
        for (c, k) in &self.0 {
            if c.is_boundary(model) {
                bd.add(*c, *k);
            } else {
                inner.add(*c, *k);
            }
        }
        (inner, bd)
    }

    pub fn loops(&self) -> i64 {
        self.get(&Curve::Loop)
    }

    /// Multicurve without its loop components.
    pub fn without_loops(&self) -> Multicurve {
        Multicurve(self.0.iter().filter(|(c, _)| !c.is_loop()).map(|(c, k)| (*c, *k)).collect())
    }

    /// Checks the normal-form conditions for `model`.
    pub fn validate(&self, model: Model) -> Result<()> {
        for (c, k) in &self.0 {
            match (c, model) {
                (Curve::Chord(i, j), Model::Disk(n)) if i < j && *j < n => {}
                (Curve::Boundary(i), Model::Annulus11) if *i < 2 => {}
                (Curve::Span(_) | Curve::Loop, Model::Annulus11) => {}
                _ => return Err(Error::Input(format!("curve {c} does not live on {model:?}"))),
            }
            if *k < 0 && !c.is_boundary(model) {
                return Err(Error::Input(format!("negative multiplicity on non-boundary curve {c}")));
            }
        }
        let cs: Vec<&Curve> = self.0.keys().collect();
        for i in 0..cs.len() {
            for j in (i + 1)..cs.len() {
                if cs[i].intersection(cs[j]) != 0 {
                    return Err(Error::Input(format!("curves {} and {} intersect", cs[i], cs[j])));
                }
            }
        }
        Ok(())
    }

    /// Bilinear pairing `λ(U, V)`.
    pub fn pairing(&self, model: Model, other: &Multicurve) -> i64 {
        let mut s = 0;
        for (a, m) in &self.0 {
            for (b, k) in &other.0 {
                s += m * k * pairing(model, a, b);
            }
        }
        s
    }

    /// Components listed with multiplicity: `(curve, ±1)` entries; boundary curves last.
    pub fn factor_list(&self, model: Model) -> Vec<(Curve, i64)> {
        let mut inner = vec![];
        let mut bd = vec![];
        for (c, k) in &self.0 {
            let target = if c.is_boundary(model) { &mut bd } else { &mut inner };
            for _ in 0..k.abs() {
                target.push((*c, k.signum()));
            }
        }
        inner.extend(bd);
        inner
    }

    /// `Λ` with `f_1 ⋯ f_m = q^{Λ/2}[U]` for the ordered factor list of `U`.
    pub fn ordered_product_exponent(model: Model, factors: &[(Curve, i64)]) -> i64 {
        let mut s = 0;
        for i in 0..factors.len() {
            for j in (i + 1)..factors.len() {
                s += factors[i].1 * factors[j].1 * pairing(model, &factors[i].0, &factors[j].0);
            }
        }
        s
    }

    pub fn dehn_twist(&self, k: i64) -> Multicurve {
        Multicurve::from_pairs(self.0.iter().map(|(c, m)| (c.twist(k), *m)))
    }
}

impl fmt::Display for Multicurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(c, k)| if *k == 1 { c.to_string() } else { format!("{c}^{k}") })
            .collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// All simple curve classes of `D_n`.
pub fn disk_chords(n: u32) -> Vec<Curve> {
    let mut v = vec![];
    for i in 0..n {
        for j in (i + 1)..n {
            v.push(Curve::Chord(i, j));
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chord_crossing() {
        assert_eq!(Curve::Chord(0, 2).intersection(&Curve::Chord(1, 3)), 1);
        assert_eq!(Curve::Chord(0, 2).intersection(&Curve::Chord(2, 4)), 0);
        assert_eq!(Curve::Chord(0, 3).intersection(&Curve::Chord(1, 2)), 0);
    }

    #[test]
    fn pairing_is_antisymmetric() {
        let m = Model::Disk(6);
        let cs = disk_chords(6);
        for a in &cs {
            for b in &cs {
                assert_eq!(pairing(m, a, b), -pairing(m, b, a));
            }
        }
    }
}
