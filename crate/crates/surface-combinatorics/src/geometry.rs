//! Exact integer geometry for the two planar models used by the skein engine and by
//! crossing-word computations.
//!
//! * Disk `D_n`: the boundary is the convex curve made of the parabola `y = x²` for
//!   `0 ≤ x ≤ (n-1)S` closed by the chord `y = (n-1)S·x`. Boundary positions are integers
//!   `u ∈ [0, nS)` increasing along the boundary orientation; marked point `i` sits at `u = iS`.
//! * Annulus `A_{1,1}`: curves live in the universal cover `ℝ × [0, H]` with deck translation
//!   `θ ↦ θ + W`. The outer boundary is `r = 0` (oriented by increasing `θ`), the inner one
//!   `r = H` (oriented by decreasing `θ`). Both special points sit at `θ ≡ 0`.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

/// Boundary units per interval of the disk model.
pub const DISK_S: i64 = 1 << 12;
/// Period of the annulus cover.
pub const ANN_W: i64 = 1 << 14;
/// Height of the annulus cover.
pub const ANN_H: i64 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Pt {
    pub x: i64,
    pub y: i64,
}

impl Pt {
    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }

    pub fn shift_x(self, dx: i64) -> Self {
        Self { x: self.x + dx, y: self.y }
    }
}

fn sub(a: Pt, b: Pt) -> (i128, i128) {
    ((a.x - b.x) as i128, (a.y - b.y) as i128)
}

fn cross(u: (i128, i128), v: (i128, i128)) -> i128 {
    u.0 * v.1 - u.1 * v.0
}

/// Orientation of the triple `(a, b, c)`: positive for counterclockwise.
pub fn orient(a: Pt, b: Pt, c: Pt) -> i128 {
    cross(sub(b, a), sub(c, a))
}

/// Sign of the cross product of two direction vectors.
pub fn cross_sign(u: (Pt, Pt), v: (Pt, Pt)) -> i64 {
    cross(sub(u.1, u.0), sub(v.1, v.0)).signum() as i64
}

/// A nonnegative rational `num/den` with `den > 0`.
#[derive(Clone, Copy, Debug)]
pub struct Frac {
    pub num: i128,
    pub den: i128,
}

impl PartialEq for Frac {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Frac {}

impl PartialOrd for Frac {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Frac {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num * other.den).cmp(&(other.num * self.den))
    }
}

/// Proper crossing of the open segments `p1p2` and `q1q2`.
///
/// Returns the parameters along each segment. Touching or collinear configurations are
/// reported as `None`; the models are built so that these never occur between curves
/// that are meant to cross.
pub fn segment_crossing(p1: Pt, p2: Pt, q1: Pt, q2: Pt) -> Option<(Frac, Frac)> {
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    if d1 == 0 || d2 == 0 || d3 == 0 || d4 == 0 {
        return None;
    }
    if (d1 > 0) == (d2 > 0) || (d3 > 0) == (d4 > 0) {
        return None;
    }
    let r = sub(p2, p1);
    let s = sub(q2, q1);
    let qp = sub(q1, p1);
    let den = cross(r, s);
    let t = cross(qp, s);
    let u = cross(qp, r);
    let (t, u, den) = if den < 0 { (-t, -u, -den) } else { (t, u, den) };
    Some((Frac { num: t, den }, Frac { num: u, den }))
}

/// Integer point of the disk boundary at position `u` (taken modulo `n·S`).
pub fn disk_boundary_point(n: u32, u: i64) -> Pt {
    let n = n as i64;
    let total = n * DISK_S;
    let u = u.rem_euclid(total);
    let l = (n - 1) * DISK_S;
    if u <= l {
        Pt::new(u, u * u)
    } else {
        let x = (n - 1) * (total - u);
        Pt::new(x, l * x)
    }
}

/// Interval of the disk containing boundary position `u` (which must avoid marked points).
pub fn disk_interval_of(n: u32, u: i64) -> u32 {
    let total = n as i64 * DISK_S;
    (u.rem_euclid(total) / DISK_S) as u32
}

/// Open polyline or closed loop in one of the models.
#[derive(Clone, Debug)]
pub struct Polyline {
    pub points: Vec<Pt>,
    /// For closed curves in the annulus the last point equals the first point shifted by
    /// `closed_shift` periods.
    pub closed_shift: Option<i64>,
}

impl Polyline {
    pub fn open(points: Vec<Pt>) -> Self {
        Self { points, closed_shift: None }
    }

    pub fn closed(points: Vec<Pt>, shift: i64) -> Self {
        Self { points, closed_shift: Some(shift) }
    }

    pub fn segments(&self) -> usize {
        self.points.len() - 1
    }

    pub fn x_range(&self) -> (i64, i64) {
        let lo = self.points.iter().map(|p| p.x).min().unwrap_or(0);
        let hi = self.points.iter().map(|p| p.x).max().unwrap_or(0);
        (lo, hi)
    }
}

/// Crossing between segment `i` of one polyline and segment `j` of another one translated
/// by `m` periods.
#[derive(Clone, Copy, Debug)]
pub struct RawCrossing {
    pub seg_a: usize,
    pub t_a: Frac,
    pub seg_b: usize,
    pub t_b: Frac,
    pub shift: i64,
    /// Sign of `cross(dir_a, dir_b)`.
    pub sign: i64,
}

/// All crossings of `a` with translates of `b` by multiples of `period` (`period = 0` for
/// the disk). When `same` is set, `a` and `b` are the same curve and each crossing is
/// reported once.
pub fn polyline_crossings(a: &Polyline, b: &Polyline, period: i64, same: bool) -> Vec<RawCrossing> {
    let mut out = vec![];
    let shifts: Vec<i64> = if period == 0 {
        vec![0]
    } else {
        let (alo, ahi) = a.x_range();
        let (blo, bhi) = b.x_range();
        let lo = (alo - bhi).div_euclid(period) - 1;
        let hi = (ahi - blo).div_euclid(period) + 1;
        (lo..=hi).collect()
    };
    for &m in &shifts {
        if same && m < 0 {
            continue;
        }
        for i in 0..a.segments() {
            for j in 0..b.segments() {
                if same && m == 0 && j <= i {
                    continue;
                }
                let q1 = b.points[j].shift_x(m * period);
                let q2 = b.points[j + 1].shift_x(m * period);
                if let Some((t, u)) = segment_crossing(a.points[i], a.points[i + 1], q1, q2) {
                    let sign = cross_sign((a.points[i], a.points[i + 1]), (q1, q2));
                    out.push(RawCrossing { seg_a: i, t_a: t, seg_b: j, t_b: u, shift: m, sign });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crossing_basic() {
        let c = segment_crossing(Pt::new(0, 0), Pt::new(2, 2), Pt::new(0, 2), Pt::new(2, 0));
        let (t, u) = c.unwrap();
        assert_eq!(t, Frac { num: 1, den: 2 });
        assert_eq!(u, Frac { num: 1, den: 2 });
        assert!(segment_crossing(Pt::new(0, 0), Pt::new(1, 0), Pt::new(0, 1), Pt::new(1, 1)).is_none());
    }

    #[test]
    fn disk_boundary_is_convex() {
        let n = 5;
        let pts: Vec<Pt> = (0..(n as i64 * 8)).map(|k| disk_boundary_point(n, k * DISK_S / 8)).collect();
        for i in 0..pts.len() {
            let a = pts[i];
            let b = pts[(i + 1) % pts.len()];
            let c = pts[(i + 2) % pts.len()];
            assert!(orient(a, b, c) >= 0);
        }
    }
}
