//! JSON form of triangulations.

use serde::{Deserialize, Serialize};

use quantum_torus::error::{Error, Result};

use crate::surface::{Edge, EdgeClass, EdgeId, EdgeKind, MarkedSurface, Model, PointId, Side, Triangulation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub id: EdgeId,
    pub kind: EdgeKind,
    pub tail: PointId,
    pub head: PointId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<EdgeClass>,
}

/// A boundary interval with its initial point `m_plus` and terminal point `m_minus`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalJson {
    pub id: EdgeId,
    pub m_plus: PointId,
    pub m_minus: PointId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangulationJson {
    pub surface: MarkedSurface,
    pub edges: Vec<EdgeJson>,
    pub triangles: Vec<[Side; 3]>,
    pub intervals: Vec<IntervalJson>,
}

impl Triangulation {
    pub fn to_json(&self) -> TriangulationJson {
        let edges = self
            .edges
            .iter()
            .map(|e| EdgeJson {
                id: e.id,
                kind: e.kind,
                tail: e.tail,
                head: e.head,
                class: (e.class != EdgeClass::Abstract).then_some(e.class),
            })
            .collect();
        let intervals = self
            .edges
            .iter()
            .filter(|e| e.kind == EdgeKind::Boundary)
            .map(|e| IntervalJson { id: e.id, m_plus: e.tail, m_minus: e.head })
            .collect();
        TriangulationJson { surface: self.surface.clone(), edges, triangles: self.triangles.clone(), intervals }
    }

    /// Rebuilds and validates a triangulation. Disk edge classes are derived from their
    /// endpoints; annulus edges must carry their class.
    pub fn from_json(j: &TriangulationJson) -> Result<Self> {
        let model = if j.surface == MarkedSurface::annulus11() {
            Model::Annulus11
        } else if j.surface.genus == 0 && j.surface.boundary.len() == 1 {
            Model::Disk(j.surface.boundary[0])
        } else {
            Model::Abstract
        };
        for iv in &j.intervals {
            let e = j
                .edges
                .iter()
                .find(|e| e.id == iv.id)
                .ok_or_else(|| Error::Input(format!("interval {} is not an edge", iv.id)))?;
            if e.kind != EdgeKind::Boundary || (e.tail, e.head) != (iv.m_plus, iv.m_minus) {
                return Err(Error::Input(format!("interval {} disagrees with its edge", iv.id)));
            }
        }
        let edges = j
            .edges
            .iter()
            .map(|e| {
                let class = match (e.class, model) {
                    (Some(c), _) => c,
                    (None, Model::Disk(_)) => Edge::chord_class(e.tail, e.head),
                    (None, Model::Annulus11) => {
                        return Err(Error::Input(format!("annulus edge {} needs a class", e.id)))
                    }
                    (None, Model::Abstract) => EdgeClass::Abstract,
                };
                Ok(Edge { id: e.id, kind: e.kind, tail: e.tail, head: e.head, class })
            })
            .collect::<Result<Vec<Edge>>>()?;
        let t = Triangulation { surface: j.surface.clone(), model, edges, triangles: j.triangles.clone() };
        t.validate()?;
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let mut all = Triangulation::all_disk_triangulations(5);
        all.push(Triangulation::annulus(1));
        all.push(Triangulation::triangle());
        for t in all {
            let s = serde_json::to_string(&t.to_json()).unwrap();
            let back: TriangulationJson = serde_json::from_str(&s).unwrap();
            assert_eq!(Triangulation::from_json(&back).unwrap(), t);
        }
    }

    #[test]
    fn inconsistent_interval_is_rejected() {
        let mut j = Triangulation::disk_fan(4).to_json();
        j.intervals[0].m_plus = 3;
        assert!(Triangulation::from_json(&j).is_err());
    }
}
