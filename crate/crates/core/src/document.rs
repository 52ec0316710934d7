//! JSON document formats: labeled meshes, strand reports and twist assignments.
//!
//! Serialization is deterministic: keys are emitted in declaration order,
//! twists and null sides are sorted, and only nonzero twists are written.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{LkError, Result};
use crate::mesh::{connectivity_report, ConnectivityReport, EdgeKey, FaceId, LabeledMesh};
use crate::strands::{StrandKind, StrandSet};
use crate::vec3::Point3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TwistEntry {
    pub edge: [usize; 2],
    pub t: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NullSide {
    pub face: usize,
    pub edge: [usize; 2],
    #[serde(default)]
    pub occurrence: usize,
}

/// Periodic data attached to a mesh document.
///
/// Either `generators` (Voronoi scaffold of the generator set) or
/// `face_shifts` (the document's faces form an explicit fundamental domain,
/// with one lattice shift per face corner) must be present.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeriodicBlock {
    pub basis: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_twists: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub face_shifts: Option<Vec<Vec<Vec<i64>>>>,
}

/// The labeled mesh document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LkmDocument {
    pub vertices: Vec<Vec<f64>>,
    pub faces: Vec<Vec<usize>>,
    #[serde(default)]
    pub twists: Vec<TwistEntry>,
    #[serde(default)]
    pub null_sides: Vec<NullSide>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub periodic: Option<PeriodicBlock>,
}

pub(crate) fn point3(v: &[f64], what: &str) -> Result<Point3> {
    match v.len() {
        2 => Ok([v[0], v[1], 0.0]),
        3 => Ok([v[0], v[1], v[2]]),
        n => Err(LkError::Malformed(format!("{what} has {n} coordinates"))),
    }
}

impl LkmDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| LkError::Malformed(e.to_string()))
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    pub fn vertex_points(&self) -> Result<Vec<Point3>> {
        self.vertices
            .iter()
            .enumerate()
            .map(|(i, v)| point3(v, &format!("vertex {i}")))
            .collect()
    }

    /// Build the labeled mesh, applying twists and null sides.
    pub fn to_mesh(&self) -> Result<LabeledMesh> {
        let mut mesh = LabeledMesh::new(self.vertex_points()?, self.faces.clone())?;
        apply_twists(&mut mesh, &self.twists)?;
        for n in &self.null_sides {
            let key = EdgeKey::strict(n.edge[0], n.edge[1])?;
            let s = mesh.find_slot(FaceId(n.face), key, n.occurrence)?;
            mesh.set_null(s, true);
        }
        Ok(mesh)
    }

    /// Canonical document for a labeled mesh.
    pub fn from_mesh(mesh: &LabeledMesh) -> Self {
        let twists = mesh
            .edges()
            .iter()
            .zip(mesh.twists())
            .filter(|(_, &t)| t != 0)
            .map(|(rec, &t)| TwistEntry { edge: rec.key.pair(), t })
            .collect();
        let null_sides = mesh
            .null_slots()
            .map(|s| {
                let slot = mesh.slot(s);
                let occurrence = mesh
                    .face_slots(slot.face)
                    .take_while(|&o| o != s)
                    .filter(|&o| mesh.slot(o).key == slot.key)
                    .count();
                NullSide { face: slot.face.0, edge: slot.key.pair(), occurrence }
            })
            .collect();
        LkmDocument {
            vertices: mesh.vertices().iter().map(|p| p.to_vec()).collect(),
            faces: mesh
                .faces()
                .iter()
                .map(|f| f.iter().map(|v| v.0).collect())
                .collect(),
            twists,
            null_sides,
            periodic: None,
        }
    }
}

/// Apply explicit twist entries, rejecting duplicates and unknown edges.
pub fn apply_twists(mesh: &mut LabeledMesh, entries: &[TwistEntry]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for t in entries {
        let key = EdgeKey::strict(t.edge[0], t.edge[1])?;
        if !seen.insert(key) {
            return Err(LkError::DuplicateTwist(key.a.0, key.b.0));
        }
        mesh.set_twist_by_key(key, t.t)?;
    }
    Ok(())
}

/// Validate a document without failing fast: problems land in `errors`.
pub fn validate_document(doc: &LkmDocument) -> ConnectivityReport {
    match doc.to_mesh() {
        Ok(mesh) => connectivity_report(&mesh),
        Err(e) => ConnectivityReport {
            vertex_count: doc.vertices.len(),
            face_count: doc.faces.len(),
            errors: vec![e.to_string()],
            ..Default::default()
        },
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub kind: StrandKind,
    /// `[face, side index]` of every passage, in traversal order.
    pub slots: Vec<[usize; 2]>,
    pub length: usize,
}

/// Serializable summary of a strand trace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrandReport {
    pub components: Vec<ComponentReport>,
    pub count: usize,
}

impl StrandReport {
    pub fn new(mesh: &LabeledMesh, strands: &StrandSet) -> Self {
        let components = strands
            .components
            .iter()
            .map(|c| ComponentReport {
                kind: c.kind,
                slots: c
                    .slots
                    .iter()
                    .map(|&s| {
                        let slot = mesh.slot(s);
                        [slot.face.0, slot.index]
                    })
                    .collect(),
                length: c.len(),
            })
            .collect();
        StrandReport { components, count: strands.count() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TET: &str = r#"{"vertices":[[1,1,1],[1,-1,-1],[-1,1,-1],[-1,-1,1]],
        "faces":[[0,1,2],[0,3,1],[0,2,3],[1,3,2]],
        "twists":[{"edge":[0,1],"t":1},{"edge":[2,3],"t":-2}],
        "null_sides":[{"face":1,"edge":[0,3]}]}"#;

    #[test]
    fn round_trip_is_stable() {
        let doc = LkmDocument::parse(TET).unwrap();
        let mesh = doc.to_mesh().unwrap();
        let canon = LkmDocument::from_mesh(&mesh).to_json();
        let again = LkmDocument::from_mesh(&LkmDocument::parse(&canon).unwrap().to_mesh().unwrap());
        assert_eq!(canon, again.to_json());
        assert_eq!(mesh.null_slots().count(), 1);
    }

    #[test]
    fn label_errors() {
        let mut doc = LkmDocument::parse(TET).unwrap();
        doc.twists.push(TwistEntry { edge: [0, 1], t: 3 });
        assert!(matches!(doc.to_mesh(), Err(LkError::DuplicateTwist(0, 1))));
        doc.twists.pop();
        doc.twists.push(TwistEntry { edge: [1, 0], t: 3 });
        assert!(matches!(doc.to_mesh(), Err(LkError::NonCanonicalEdge(1, 0))));
        doc.twists.pop();
        doc.null_sides[0].occurrence = 1;
        assert!(matches!(doc.to_mesh(), Err(LkError::UnknownSide { .. })));
        let report = validate_document(&doc);
        assert_eq!(report.errors.len(), 1);
    }
}
