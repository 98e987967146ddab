//! Marked surfaces without punctures, ideal triangulations and their matrices.
//!
//! A triangulation is combinatorial: each triangle is a counterclockwise triple of
//! directed edge sides. Boundary edges are directed along the boundary orientation
//! (surface on the left), from `m⁺` to `m⁻`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use quantum_torus::error::{Error, Result};

pub type EdgeId = u32;
pub type PointId = u32;

/// Compact oriented surface data: genus and special-point counts per boundary component.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MarkedSurface {
    pub genus: u32,
    pub boundary: Vec<u32>,
}

impl MarkedSurface {
    pub fn disk(n: u32) -> Self {
        Self { genus: 0, boundary: vec![n] }
    }

    pub fn annulus11() -> Self {
        Self { genus: 0, boundary: vec![1, 1] }
    }

    /// Euler characteristic of the surface with boundary.
    pub fn euler_char(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundary.len() as i64
    }

    pub fn num_special(&self) -> i64 {
        self.boundary.iter().map(|&b| b as i64).sum()
    }

    pub fn validate(&self) -> Result<()> {
        if self.boundary.is_empty() || self.boundary.iter().any(|&b| b == 0) {
            return Err(Error::Input("every boundary component needs a special point".into()));
        }
        if -2 * self.euler_char() + self.num_special() <= 0 {
            return Err(Error::Input("surface admits no ideal triangulation".into()));
        }
        Ok(())
    }

    pub fn expected_edges(&self) -> i64 {
        -3 * self.euler_char() + 2 * self.num_special()
    }

    pub fn expected_interior_edges(&self) -> i64 {
        -3 * self.euler_char() + self.num_special()
    }

    pub fn expected_triangles(&self) -> i64 {
        -2 * self.euler_char() + self.num_special()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeKind {
    Interior,
    Boundary,
}

/// Isotopy class of an edge on the surfaces handled by the skein engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeClass {
    /// Chord of a marked disk between marked points `i < j`.
    Chord(u32, u32),
    /// Boundary edge of the annulus: 0 outer, 1 inner.
    AnnulusBoundary(u8),
    /// Spanning arc `τ^k(α)` of the annulus.
    Span(i64),
    /// No geometric model attached.
    Abstract,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub id: EdgeId,
    pub kind: EdgeKind,
    pub tail: PointId,
    pub head: PointId,
    pub class: EdgeClass,
}

/// A directed side of a triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Side {
    pub edge: EdgeId,
    /// Whether the edge direction agrees with the counterclockwise traversal.
    pub forward: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum End {
    Tail,
    Head,
}

/// One end of an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeEnd {
    pub edge: EdgeId,
    pub end: End,
}

/// Geometric model attached to a triangulation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    Disk(u32),
    Annulus11,
    Abstract,
}

/// Old and new identifiers of a flipped edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlipReceipt {
    pub old: EdgeId,
    pub new: EdgeId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triangulation {
    pub surface: MarkedSurface,
    pub model: Model,
    pub edges: Vec<Edge>,
    pub triangles: Vec<[Side; 3]>,
}

/// Sign convention for the compatibility matrix: `π(x, y) = PI_SIGN` when the end `x`
/// precedes `y` in counterclockwise order at a shared special point.
pub const PI_SIGN: i64 = 1;

impl Triangulation {
    pub fn n(&self) -> usize {
        self.edges.len()
    }

    pub fn index_of(&self, id: EdgeId) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    pub fn idx(&self, id: EdgeId) -> usize {
        self.index_of(id).unwrap_or_else(|| panic!("unknown edge {id}"))
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[self.idx(id)]
    }

    pub fn is_boundary(&self, id: EdgeId) -> bool {
        self.edge(id).kind == EdgeKind::Boundary
    }

    pub fn interior_edges(&self) -> Vec<EdgeId> {
        self.edges.iter().filter(|e| e.kind == EdgeKind::Interior).map(|e| e.id).collect()
    }

    pub fn boundary_edges(&self) -> Vec<EdgeId> {
        self.edges.iter().filter(|e| e.kind == EdgeKind::Boundary).map(|e| e.id).collect()
    }

    pub fn labels(&self) -> Vec<String> {
        self.edges.iter().map(|e| e.id.to_string()).collect()
    }

    /// Initial and terminal marked points of a boundary interval.
    pub fn interval(&self, id: EdgeId) -> (PointId, PointId) {
        let e = self.edge(id);
        (e.tail, e.head)
    }

    pub fn points(&self) -> BTreeSet<PointId> {
        self.edges.iter().flat_map(|e| [e.tail, e.head]).collect()
    }

    /// Start point of a side in counterclockwise traversal.
    pub fn side_tail(&self, s: Side) -> PointId {
        let e = self.edge(s.edge);
        if s.forward {
            e.tail
        } else {
            e.head
        }
    }

    /// End point of a side in counterclockwise traversal.
    pub fn side_head(&self, s: Side) -> PointId {
        let e = self.edge(s.edge);
        if s.forward {
            e.head
        } else {
            e.tail
        }
    }

    fn side_tail_end(s: Side) -> EdgeEnd {
        EdgeEnd { edge: s.edge, end: if s.forward { End::Tail } else { End::Head } }
    }

    fn side_head_end(s: Side) -> EdgeEnd {
        EdgeEnd { edge: s.edge, end: if s.forward { End::Head } else { End::Tail } }
    }

    /// Occurrences `(triangle, position)` of an edge among triangle sides.
    pub fn occurrences(&self, id: EdgeId) -> Vec<(usize, usize)> {
        let mut out = vec![];
        for (t, tri) in self.triangles.iter().enumerate() {
            for (j, s) in tri.iter().enumerate() {
                if s.edge == id {
                    out.push((t, j));
                }
            }
        }
        out
    }

    /// Checks the structural invariants and the Euler-characteristic counts.
    pub fn validate(&self) -> Result<()> {
        self.surface.validate()?;
        let ids: BTreeSet<EdgeId> = self.edges.iter().map(|e| e.id).collect();
        if ids.len() != self.edges.len() {
            return Err(Error::Input("duplicate edge identifiers".into()));
        }
        for tri in &self.triangles {
            let set: BTreeSet<EdgeId> = tri.iter().map(|s| s.edge).collect();
            if set.len() != 3 {
                return Err(Error::Input("self-folded or degenerate triangle".into()));
            }
            for j in 0..3 {
                if !ids.contains(&tri[j].edge) {
                    return Err(Error::Input(format!("unknown edge {} in triangle", tri[j].edge)));
                }
                if self.side_head(tri[j]) != self.side_tail(tri[(j + 1) % 3]) {
                    return Err(Error::Input("triangle sides do not close up".into()));
                }
            }
        }
        for e in &self.edges {
            let occ = self.occurrences(e.id);
            match e.kind {
                EdgeKind::Interior if occ.len() != 2 => {
                    return Err(Error::Input(format!("interior edge {} must bound two triangles", e.id)))
                }
                EdgeKind::Boundary if occ.len() != 1 => {
                    return Err(Error::Input(format!("boundary edge {} must bound one triangle", e.id)))
                }
                EdgeKind::Boundary => {
                    let (t, j) = occ[0];
                    if !self.triangles[t][j].forward {
                        return Err(Error::Input("boundary edges must follow the boundary orientation".into()));
                    }
                }
                _ => {}
            }
        }
        let s = &self.surface;
        let n_int = self.interior_edges().len() as i64;
        if self.edges.len() as i64 != s.expected_edges()
            || n_int != s.expected_interior_edges()
            || self.triangles.len() as i64 != s.expected_triangles()
        {
            return Err(Error::Input("edge or triangle counts violate the Euler formulas".into()));
        }
        Ok(())
    }

    /// `ε_{αβ}`: +1 for each triangle in which `β` follows `α` counterclockwise.
    pub fn exchange_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.n();
        let mut m = vec![vec![0; n]; n];
        for tri in &self.triangles {
            for j in 0..3 {
                let a = self.idx(tri[j].edge);
                let b = self.idx(tri[(j + 1) % 3].edge);
                m[a][b] += 1;
                m[b][a] -= 1;
            }
        }
        m
    }

    /// Edge ends around each marked point in counterclockwise order, starting from the
    /// boundary edge that leaves the point.
    pub fn corner_table(&self) -> BTreeMap<PointId, Vec<EdgeEnd>> {
        let mut next: BTreeMap<EdgeEnd, EdgeEnd> = BTreeMap::new();
        let mut vertex: BTreeMap<EdgeEnd, PointId> = BTreeMap::new();
        for tri in &self.triangles {
            for j in 0..3 {
                let s = tri[j];
                let s1 = tri[(j + 1) % 3];
                let v = self.side_head(s);
                let first = Self::side_tail_end(s1);
                let second = Self::side_head_end(s);
                next.insert(first, second);
                vertex.insert(first, v);
                vertex.insert(second, v);
            }
        }
        let seconds: BTreeSet<EdgeEnd> = next.values().copied().collect();
        let mut table: BTreeMap<PointId, Vec<EdgeEnd>> = BTreeMap::new();
        for (&first, _) in next.iter() {
            if seconds.contains(&first) {
                continue;
            }
            let v = vertex[&first];
            let mut chain = vec![first];
            let mut cur = first;
            while let Some(&n) = next.get(&cur) {
                chain.push(n);
                cur = n;
                if chain.len() > 4 * self.n() + 4 {
                    panic!("corner chain does not terminate");
                }
            }
            table.entry(v).or_default().extend(chain);
        }
        table
    }

    /// `π_{αβ}` from the corner table.
    pub fn compatibility_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.n();
        let mut m = vec![vec![0; n]; n];
        for ends in self.corner_table().values() {
            for i in 0..ends.len() {
                for j in (i + 1)..ends.len() {
                    let a = self.idx(ends[i].edge);
                    let b = self.idx(ends[j].edge);
                    m[a][b] += PI_SIGN;
                    m[b][a] -= PI_SIGN;
                }
            }
        }
        m
    }

    /// `p = ε + m` with `m = -δ` on boundary pairs.
    pub fn p_matrix(&self) -> Vec<Vec<i64>> {
        let mut p = self.exchange_matrix();
        for (i, e) in self.edges.iter().enumerate() {
            if e.kind == EdgeKind::Boundary {
                p[i][i] -= 1;
            }
        }
        p
    }

    /// True when every triangle has even exponent sum.
    pub fn is_balanced(&self, lambda: &[i64]) -> bool {
        self.triangles.iter().all(|tri| {
            let s: i64 = tri.iter().map(|s| lambda[self.idx(s.edge)]).sum();
            s.rem_euclid(2) == 0
        })
    }

    fn fresh_id(&self) -> EdgeId {
        self.edges.iter().map(|e| e.id).max().unwrap_or(0) + 1
    }

    /// Flips the interior edge `kappa`. The new edge takes the old edge's position.
    pub fn flip(&self, kappa: EdgeId) -> Result<(Triangulation, FlipReceipt)> {
        let pos = self.index_of(kappa).ok_or(Error::FlipNotAllowed(kappa))?;
        if self.edges[pos].kind != EdgeKind::Interior {
            return Err(Error::FlipNotAllowed(kappa));
        }
        let occ = self.occurrences(kappa);
        if occ.len() != 2 || occ[0].0 == occ[1].0 {
            return Err(Error::FlipNotAllowed(kappa));
        }
        let rot = |t: usize, j: usize| -> [Side; 3] {
            let tri = self.triangles[t];
            [tri[j], tri[(j + 1) % 3], tri[(j + 2) % 3]]
        };
        let [k1, a, b] = rot(occ[0].0, occ[0].1);
        let [_k2, c, d] = rot(occ[1].0, occ[1].1);
        let v2 = self.side_head(a);
        let v3 = self.side_head(c);
        let _ = k1;
        let new_id = self.fresh_id();
        let class = match self.model {
            Model::Disk(_) => Edge::chord_class(v2, v3),
            Model::Annulus11 => {
                let other = self
                    .edges
                    .iter()
                    .find(|e| e.kind == EdgeKind::Interior && e.id != kappa)
                    .map(|e| e.class);
                match (self.edges[pos].class, other) {
                    (EdgeClass::Span(k), Some(EdgeClass::Span(j))) => EdgeClass::Span(2 * j - k),
                    _ => EdgeClass::Abstract,
                }
            }
            Model::Abstract => EdgeClass::Abstract,
        };
        let mut out = self.clone();
        out.edges[pos] = Edge { id: new_id, kind: EdgeKind::Interior, tail: v2, head: v3, class };
        let kf = Side { edge: new_id, forward: true };
        let kb = Side { edge: new_id, forward: false };
        out.triangles[occ[0].0] = [d, a, kf];
        out.triangles[occ[1].0] = [b, c, kb];
        Ok((out, FlipReceipt { old: kappa, new: new_id }))
    }

    /// Edge identifier with the given class, if present.
    pub fn edge_with_class(&self, class: EdgeClass) -> Option<EdgeId> {
        self.edges.iter().find(|e| e.class == class).map(|e| e.id)
    }

    // ---- builders ----

    /// Triangulation of the disk with `n` marked points `0..n` (counterclockwise) and the
    /// given diagonals. Boundary edge `i` runs from point `i` to point `i+1`.
    pub fn disk(n: u32, diagonals: &[(u32, u32)]) -> Result<Triangulation> {
        if n < 3 {
            return Err(Error::Input("a marked disk needs at least 3 points".into()));
        }
        let mut edges: Vec<Edge> = (0..n)
            .map(|i| Edge {
                id: i,
                kind: EdgeKind::Boundary,
                tail: i,
                head: (i + 1) % n,
                class: Edge::chord_class(i, (i + 1) % n),
            })
            .collect();
        let mut diags: Vec<(u32, u32)> =
            diagonals.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        diags.sort();
        diags.dedup();
        for (k, &(a, b)) in diags.iter().enumerate() {
            if b >= n || b - a < 2 || (a == 0 && b == n - 1) {
                return Err(Error::Input(format!("({a},{b}) is not a diagonal")));
            }
            edges.push(Edge {
                id: n + k as u32,
                kind: EdgeKind::Interior,
                tail: a,
                head: b,
                class: EdgeClass::Chord(a, b),
            });
        }
        let find = |x: u32, y: u32| -> Option<Side> {
            edges.iter().find_map(|e| {
                if e.tail == x && e.head == y {
                    Some(Side { edge: e.id, forward: true })
                } else if e.tail == y && e.head == x {
                    Some(Side { edge: e.id, forward: false })
                } else {
                    None
                }
            })
        };
        let mut triangles = vec![];
        let mut stack: Vec<Vec<u32>> = vec![(0..n).collect()];
        while let Some(poly) = stack.pop() {
            if poly.len() == 3 {
                let s = [
                    find(poly[0], poly[1]),
                    find(poly[1], poly[2]),
                    find(poly[2], poly[0]),
                ];
                if s.iter().any(Option::is_none) {
                    return Err(Error::Input("diagonals do not triangulate the disk".into()));
                }
                triangles.push([s[0].unwrap(), s[1].unwrap(), s[2].unwrap()]);
                continue;
            }
            let k = poly.len();
            let mut split = None;
            'outer: for i in 0..k {
                for j in (i + 2)..k {
                    if i == 0 && j == k - 1 {
                        continue;
                    }
                    let (a, b) = (poly[i].min(poly[j]), poly[i].max(poly[j]));
                    if diags.contains(&(a, b)) {
                        split = Some((i, j));
                        break 'outer;
                    }
                }
            }
            let (i, j) =
                split.ok_or_else(|| Error::Input("diagonals do not triangulate the disk".into()))?;
            stack.push(poly[i..=j].to_vec());
            let mut rest: Vec<u32> = poly[j..].to_vec();
            rest.extend_from_slice(&poly[..=i]);
            stack.push(rest);
        }
        triangles.sort_by_key(|t| {
            let mut v: Vec<EdgeId> = t.iter().map(|s| s.edge).collect();
            v.sort();
            v
        });
        let t = Triangulation {
            surface: MarkedSurface::disk(n),
            model: Model::Disk(n),
            edges,
            triangles,
        };
        t.validate()?;
        Ok(t)
    }

    /// Fan triangulation of the disk from point 0.
    pub fn disk_fan(n: u32) -> Triangulation {
        let diags: Vec<(u32, u32)> = (2..n.saturating_sub(1)).map(|k| (0, k)).collect();
        Self::disk(n, &diags).expect("fan triangulation is valid")
    }

    /// All triangulations of the disk with `n` marked points, as diagonal sets.
    pub fn all_disk_diagonal_sets(n: u32) -> Vec<Vec<(u32, u32)>> {
        fn rec(poly: &[u32]) -> Vec<Vec<(u32, u32)>> {
            if poly.len() < 3 {
                return vec![vec![]];
            }
            let (first, last) = (poly[0], poly[poly.len() - 1]);
            let mut out = vec![];
            for m in 1..poly.len() - 1 {
                let left = rec(&poly[..=m]);
                let right = rec(&poly[m..]);
                for l in &left {
                    for r in &right {
                        let mut d = l.clone();
                        d.extend(r.iter().copied());
                        let apex = poly[m];
                        if m != 1 {
                            d.push((first.min(apex), first.max(apex)));
                        }
                        if m != poly.len() - 2 {
                            d.push((apex.min(last), apex.max(last)));
                        }
                        d.sort();
                        out.push(d);
                    }
                }
            }
            out
        }
        let poly: Vec<u32> = (0..n).collect();
        let mut all = rec(&poly);
        all.sort();
        all.dedup();
        all
    }

    pub fn all_disk_triangulations(n: u32) -> Vec<Triangulation> {
        Self::all_disk_diagonal_sets(n)
            .iter()
            .map(|d| Self::disk(n, d).expect("enumerated triangulation is valid"))
            .collect()
    }

    /// Triangulation of the annulus with one special point per boundary component whose
    /// interior edges are `τ^k(α)` and `τ^{k+1}(α)`.
    ///
    /// Point 0 lies on the outer boundary, point 1 on the inner one. Edges: 0 = outer
    /// boundary edge, 1 = inner boundary edge, 2 = `τ^k(α)`, 3 = `τ^{k+1}(α)`.
    pub fn annulus(k: i64) -> Triangulation {
        let edges = vec![
            Edge { id: 0, kind: EdgeKind::Boundary, tail: 0, head: 0, class: EdgeClass::AnnulusBoundary(0) },
            Edge { id: 1, kind: EdgeKind::Boundary, tail: 1, head: 1, class: EdgeClass::AnnulusBoundary(1) },
            Edge { id: 2, kind: EdgeKind::Interior, tail: 0, head: 1, class: EdgeClass::Span(k) },
            Edge { id: 3, kind: EdgeKind::Interior, tail: 0, head: 1, class: EdgeClass::Span(k + 1) },
        ];
        let f = |e| Side { edge: e, forward: true };
        let b = |e| Side { edge: e, forward: false };
        let t = Triangulation {
            surface: MarkedSurface::annulus11(),
            model: Model::Annulus11,
            edges,
            triangles: vec![[f(3), f(1), b(2)], [f(0), f(2), b(3)]],
        };
        t.validate().expect("annulus triangulation is valid");
        t
    }

    /// Single triangle with edges 1, 2, 3 in counterclockwise order.
    pub fn triangle() -> Triangulation {
        let t = Self::disk(3, &[]).expect("triangle");
        t
    }

    /// Canonical key identifying the triangulation up to edge relabeling.
    pub fn class_key(&self) -> Vec<EdgeClass> {
        let mut v: Vec<EdgeClass> = self.edges.iter().map(|e| e.class).collect();
        v.sort();
        v
    }
}

impl Edge {
    pub fn chord_class(a: u32, b: u32) -> EdgeClass {
        EdgeClass::Chord(a.min(b), a.max(b))
    }
}

/// Matrix mutation at index `k`.
pub fn mutate_exchange(eps: &[Vec<i64>], k: usize) -> Vec<Vec<i64>> {
    let n = eps.len();
    let mut out = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            out[i][j] = if i == k || j == k {
                -eps[i][j]
            } else {
                eps[i][j] + (eps[i][k].abs() * eps[k][j] + eps[i][k] * eps[k][j].abs()) / 2
            };
        }
    }
    out
}

/// Matrix product helper.
pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let m = b[0].len();
    let mut out = vec![vec![0; m]; n];
    for i in 0..n {
        for k in 0..b.len() {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn transpose(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let m = a[0].len();
    (0..m).map(|j| (0..n).map(|i| a[i][j]).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_exchange_matrix() {
        let t = Triangulation::triangle();
        let e = t.exchange_matrix();
        assert_eq!(e[0][1], 1);
        assert_eq!(e[1][2], 1);
        assert_eq!(e[2][0], 1);
    }

    #[test]
    fn catalan_counts() {
        assert_eq!(Triangulation::all_disk_diagonal_sets(4).len(), 2);
        assert_eq!(Triangulation::all_disk_diagonal_sets(5).len(), 5);
        assert_eq!(Triangulation::all_disk_diagonal_sets(6).len(), 14);
    }

    #[test]
    fn annulus_kronecker() {
        let t = Triangulation::annulus(0);
        let e = t.exchange_matrix();
        assert_eq!(e[2][3], 2);
    }
}

#[cfg(test)]
mod identity_tests {
    use super::*;

    fn check(t: &Triangulation) {
        let e = t.exchange_matrix();
        let pi = t.compatibility_matrix();
        let p = t.p_matrix();
        let lhs = mat_mul(&mat_mul(&p, &pi), &transpose(&p));
        let rhs: Vec<Vec<i64>> = e.iter().map(|r| r.iter().map(|x| -4 * x).collect()).collect();
        assert_eq!(lhs, rhs, "p Pi p^T for {:?}", t.class_key());
        let ep = mat_mul(&e, &pi);
        for (i, edge) in t.edges.iter().enumerate() {
            if edge.kind == EdgeKind::Interior {
                for j in 0..t.n() {
                    assert_eq!(ep[i][j], if i == j { 4 } else { 0 });
                }
            }
        }
    }

    #[test]
    fn compatibility_identities() {
        for n in 3..=6 {
            for t in Triangulation::all_disk_triangulations(n) {
                check(&t);
            }
        }
        for k in -2..=2 {
            check(&Triangulation::annulus(k));
        }
    }
}
