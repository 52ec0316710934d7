//! Periodic scaffolds: lattices, Voronoi honeycombs, quotient strand tracing
//! and finite tiling.

pub mod lattice;
pub mod scaffold;
pub mod tile;
pub mod trace;
pub mod voronoi;

pub use lattice::{Lattice, PRESETS};
pub use scaffold::{periodic_scaffold, wigner_seitz, PeriodicEdgeKey, PeriodicMesh, VertexRef};
pub use tile::tile;
pub use trace::{trace_periodic, PeriodicKind, PeriodicStrand, PeriodicStrandSet};

use crate::error::Result;

/// Wigner-Seitz honeycomb of a named lattice (a single generator at the origin).
pub fn preset_scaffold(name: &str) -> Result<PeriodicMesh> {
    let lattice = Lattice::preset(name)?;
    let origin = vec![0.0; lattice.dim()];
    periodic_scaffold(&lattice, &[origin])
}

use crate::document::{LkmDocument, PeriodicBlock};
use crate::error::LkError;
use crate::passage::Shift;

fn shift_of(v: &[i64], dim: usize, face: usize) -> Result<Shift> {
    if v.len() != dim {
        return Err(LkError::Malformed(format!("face {face}: shift {v:?} needs {dim} components")));
    }
    let mut s = [0i64; 3];
    s[..dim].copy_from_slice(v);
    Ok(s)
}

/// The periodic mesh a document's `periodic` block describes, if it has one.
///
/// With `generators` the document's own vertices and faces are ignored and
/// the Voronoi scaffold of the generators (fractional coordinates) is built.
/// With `face_shifts` the faces are read as an explicit fundamental domain:
/// corner `k` of face `f` is vertex `faces[f][k]` moved by lattice shift
/// `face_shifts[f][k]`.
pub fn periodic_from_document(doc: &LkmDocument) -> Result<Option<PeriodicMesh>> {
    let Some(block) = &doc.periodic else {
        return Ok(None);
    };
    let lattice = Lattice::new(&block.basis)?;
    let mut pmesh = match (&block.generators, &block.face_shifts) {
        (Some(gens), None) => periodic_scaffold(&lattice, gens)?,
        (None, Some(shifts)) => {
            if shifts.len() != doc.faces.len() {
                return Err(LkError::Malformed(format!(
                    "{} face shift lists for {} faces",
                    shifts.len(),
                    doc.faces.len()
                )));
            }
            let faces = doc
                .faces
                .iter()
                .zip(shifts)
                .enumerate()
                .map(|(f, (face, sh))| {
                    if face.len() != sh.len() {
                        return Err(LkError::Malformed(format!("face {f}: {} shifts for {} corners", sh.len(), face.len())));
                    }
                    face.iter()
                        .zip(sh)
                        .map(|(&class, s)| Ok(VertexRef { class, shift: shift_of(s, lattice.dim(), f)? }))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            PeriodicMesh::new(lattice, doc.vertex_points()?, faces)?
        }
        _ => {
            return Err(LkError::Malformed(
                "periodic block needs exactly one of generators or face_shifts".into(),
            ))
        }
    };
    if let Some(v) = &block.class_twists {
        pmesh.assign_class_twists(v)?;
    }
    Ok(Some(pmesh))
}

/// Explicit fundamental-domain document for a periodic mesh.
pub fn periodic_document(pmesh: &PeriodicMesh) -> LkmDocument {
    let dim = pmesh.dim();
    LkmDocument {
        vertices: pmesh.vertices().iter().map(|p| p[..dim].to_vec()).collect(),
        faces: pmesh.faces().iter().map(|f| f.iter().map(|r| r.class).collect()).collect(),
        twists: Vec::new(),
        null_sides: Vec::new(),
        periodic: Some(PeriodicBlock {
            basis: pmesh.lattice().basis_rows(),
            generators: None,
            class_twists: Some(pmesh.twists().to_vec()),
            face_shifts: Some(
                pmesh.faces().iter().map(|f| f.iter().map(|r| r.shift[..dim].to_vec()).collect()).collect(),
            ),
        }),
    }
}
