//! Finite blocks of a periodic complex.

use std::collections::BTreeMap;

use crate::error::{LkError, Result};
use crate::exec::Exec;
use crate::mesh::{FaceId, LabeledMesh};
use crate::passage::{shift_add, Shift};
use crate::vec3::Point3;

use super::scaffold::{PeriodicMesh, VertexRef};

/// Replicate the complex over `extent` cells per lattice axis.
///
/// Scaffolds built from generators contribute every facet of every cell in
/// the block, so the block is closed off by its outer facets; explicit
/// quotients contribute one copy of each fundamental face per cell. Faces
/// across the block boundary are absent, which leaves boundary edges of lower
/// degree. Every tiled edge inherits the twist of its class.
pub fn tile(pmesh: &PeriodicMesh, extent: &[usize]) -> Result<LabeledMesh> {
    let dim = pmesh.dim();
    if extent.len() != dim || extent.contains(&0) {
        return Err(LkError::InvalidArgument(format!(
            "extent must have {dim} positive entries, got {extent:?}"
        )));
    }
    let mut cells: Vec<Shift> = Vec::new();
    for x in 0..extent[0] as i64 {
        for y in 0..extent[1] as i64 {
            for z in 0..if dim == 3 { extent[2] as i64 } else { 1 } {
                cells.push([x, y, z]);
            }
        }
    }
    let copies: Vec<Vec<(usize, Shift)>> = Exec::Parallel.map(&cells, |&c| match pmesh.cells() {
        Some(vor) => vor
            .iter()
            .flat_map(|cell| cell.iter().map(move |&(f, s)| (f, shift_add(c, s))))
            .collect(),
        None => (0..pmesh.faces().len()).map(|f| (f, c)).collect(),
    });

    let mut placed: BTreeMap<(usize, Shift), usize> = BTreeMap::new();
    let mut vertex_ids: BTreeMap<VertexRef, usize> = BTreeMap::new();
    let mut vertices: Vec<Point3> = Vec::new();
    let mut faces: Vec<Vec<usize>> = Vec::new();
    let mut origin: Vec<usize> = Vec::new();
    for (f, s) in copies.into_iter().flatten() {
        if placed.contains_key(&(f, s)) {
            continue;
        }
        placed.insert((f, s), faces.len());
        let face = pmesh.faces()[f]
            .iter()
            .map(|r| {
                let key = VertexRef { class: r.class, shift: shift_add(r.shift, s) };
                *vertex_ids.entry(key).or_insert_with(|| {
                    vertices.push(pmesh.position(key));
                    vertices.len() - 1
                })
            })
            .collect();
        faces.push(face);
        origin.push(f);
    }
    let mut mesh = LabeledMesh::new(vertices, faces)?;
    for (tf, &f) in origin.iter().enumerate() {
        for (k, s) in mesh.face_slots(FaceId(tf)).collect::<Vec<_>>().into_iter().enumerate() {
            let class = pmesh.slots()[pmesh.slot_of(f, k)].edge;
            let edge = mesh.slot(s).edge;
            mesh.set_twist(edge, pmesh.twists()[class]);
        }
    }
    Ok(mesh)
}
