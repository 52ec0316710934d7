//! Periodic meshes: a fundamental domain of faces whose corners reference
//! vertex classes together with lattice shifts.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{LkError, Result};
use crate::mesh::{axial_angle, corner_neighbour, radial_sort, slot_anchor, LabeledMesh, Side};
use crate::passage::{shift_sub, Shift};
use crate::vec3::{self, Point3};

use super::lattice::Lattice;
use super::voronoi::{polygon_cell, polyhedron_cell};

/// Corner of a periodic face: a vertex class translated by a lattice shift.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct VertexRef {
    pub class: usize,
    pub shift: Shift,
}

/// Edge class key: low-end class, high-end class and the shift between them.
/// The low end is the endpoint with the lexicographically smaller position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PeriodicEdgeKey {
    pub lo: usize,
    pub hi: usize,
    pub delta: Shift,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeriodicSlot {
    pub face: usize,
    pub index: usize,
    pub edge: usize,
    /// `+1` when the face runs from the low end to the high end.
    pub direction: i8,
    /// Shift of the low endpoint in this face's corner references.
    pub offset: Shift,
    pub radial_index: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeriodicEdge {
    pub key: PeriodicEdgeKey,
    pub radial_order: Vec<usize>,
}

impl PeriodicEdge {
    pub fn degree(&self) -> usize {
        self.radial_order.len()
    }
}

/// Quotient of a periodic polygon complex by its lattice.
#[derive(Debug, Clone)]
pub struct PeriodicMesh {
    lattice: Lattice,
    vertices: Vec<Point3>,
    faces: Vec<Vec<VertexRef>>,
    face_start: Vec<usize>,
    slots: Vec<PeriodicSlot>,
    edges: Vec<PeriodicEdge>,
    corners: Vec<[(usize, Side); 2]>,
    twists: Vec<i64>,
    /// Faces bounding each Voronoi cell, as (face, translation), when known.
    cells: Option<Vec<Vec<(usize, Shift)>>>,
}

fn round_key(x: f64) -> i64 {
    (x * 1e6).round() as i64
}

fn lex_less(a: Point3, b: Point3, tol: f64) -> bool {
    for i in 0..3 {
        if (a[i] - b[i]).abs() > tol {
            return a[i] < b[i];
        }
    }
    false
}

impl PeriodicMesh {
    /// Build from vertex class positions and faces of corner references.
    pub fn new(lattice: Lattice, vertices: Vec<Point3>, faces: Vec<Vec<VertexRef>>) -> Result<Self> {
        Self::with_cells(lattice, vertices, faces, None)
    }

    fn with_cells(
        lattice: Lattice,
        vertices: Vec<Point3>,
        faces: Vec<Vec<VertexRef>>,
        cells: Option<Vec<Vec<(usize, Shift)>>>,
    ) -> Result<Self> {
        let scale: f64 = lattice.basis().iter().map(|v| vec3::norm(*v)).fold(0.0, f64::max);
        let tol = 1e-7 * scale;
        let pos = |r: VertexRef| vec3::add(vertices[r.class], lattice.translation(r.shift));

        let mut raw = Vec::new();
        let mut dirs_per_face = Vec::new();
        for (f, face) in faces.iter().enumerate() {
            if face.len() < 3 {
                return Err(LkError::ShortFace { face: f, len: face.len() });
            }
            let mut dirs = Vec::new();
            for k in 0..face.len() {
                let (r0, r1) = (face[k], face[(k + 1) % face.len()]);
                if r0.class >= vertices.len() || r1.class >= vertices.len() {
                    return Err(LkError::UnknownVertex { face: f, vertex: r0.class.max(r1.class) });
                }
                let (p0, p1) = (pos(r0), pos(r1));
                if vec3::dist(p0, p1) <= tol {
                    return Err(LkError::RepeatedVertex { face: f, vertex: r0.class });
                }
                let (lo, hi, direction) = if lex_less(p0, p1, tol) { (r0, r1, 1) } else { (r1, r0, -1) };
                let key = PeriodicEdgeKey { lo: lo.class, hi: hi.class, delta: shift_sub(hi.shift, lo.shift) };
                dirs.push(direction);
                raw.push((f, k, key, direction, lo.shift));
            }
            dirs_per_face.push(dirs);
        }

        // Class ids: low-end position reduced into the unit cell, then the
        // edge direction in descending lexicographic order.
        let mut keys: Vec<PeriodicEdgeKey> = raw.iter().map(|r| r.2).collect();
        keys.sort();
        keys.dedup();
        let sort_key = |k: &PeriodicEdgeKey| {
            let lo = vertices[k.lo];
            let frac = lattice.to_fractional(lo);
            let reduced: Vec<i64> = frac.iter().map(|x| round_key(x - (x + 1e-9).floor())).collect();
            let dir = vec3::sub(vec3::add(vertices[k.hi], lattice.translation(k.delta)), lo);
            let neg_dir: Vec<i64> = dir.iter().map(|x| -round_key(*x)).collect();
            (reduced, neg_dir, *k)
        };
        keys.sort_by_key(sort_key);
        let edge_of: BTreeMap<PeriodicEdgeKey, usize> = keys.iter().enumerate().map(|(i, k)| (*k, i)).collect();

        let mut face_start = Vec::new();
        let mut slots = Vec::new();
        let mut corners = Vec::new();
        for (f, face) in faces.iter().enumerate() {
            face_start.push(slots.len());
            let base = slots.len();
            for k in 0..face.len() {
                let (_, _, key, direction, offset) = raw[base + k];
                slots.push(PeriodicSlot { face: f, index: k, edge: edge_of[&key], direction, offset, radial_index: 0 });
            }
            for k in 0..face.len() {
                let lo = corner_neighbour(&dirs_per_face[f], k, Side::Lo);
                let hi = corner_neighbour(&dirs_per_face[f], k, Side::Hi);
                corners.push([(base + lo.0, lo.1), (base + hi.0, hi.1)]);
            }
        }

        let mut members = vec![Vec::new(); keys.len()];
        for (s, slot) in slots.iter().enumerate() {
            members[slot.edge].push(s);
        }
        let mut edges = Vec::new();
        for (e, key) in keys.iter().enumerate() {
            let order = if members[e].len() <= 2 {
                members[e].clone()
            } else {
                let a = vertices[key.lo];
                let b = vec3::add(vertices[key.hi], lattice.translation(key.delta));
                let mut entries = Vec::new();
                for &s in &members[e] {
                    let slot = &slots[s];
                    let local: Vec<Point3> = faces[slot.face].iter().map(|&r| pos(r)).collect();
                    let idx: Vec<usize> = (0..local.len()).collect();
                    let anchor = vec3::sub(slot_anchor(&local, &idx, slot.index), lattice.translation(slot.offset));
                    let ang = axial_angle(a, b, anchor).ok_or(LkError::DegenerateFace { face: slot.face, a: key.lo, b: key.hi })?;
                    entries.push((s, ang));
                }
                radial_sort(entries)
            };
            for (i, &s) in order.iter().enumerate() {
                slots[s].radial_index = i;
            }
            edges.push(PeriodicEdge { key: *key, radial_order: order });
        }
        let twists = vec![0; edges.len()];
        Ok(PeriodicMesh { lattice, vertices, faces, face_start, slots, edges, corners, twists, cells })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn dim(&self) -> usize {
        self.lattice.dim()
    }

    /// Representative position of each vertex class.
    pub fn vertices(&self) -> &[Point3] {
        &self.vertices
    }

    pub fn faces(&self) -> &[Vec<VertexRef>] {
        &self.faces
    }

    pub fn slots(&self) -> &[PeriodicSlot] {
        &self.slots
    }

    pub fn slot_of(&self, face: usize, k: usize) -> usize {
        self.face_start[face] + k
    }

    pub fn edges(&self) -> &[PeriodicEdge] {
        &self.edges
    }

    /// Number of edge classes (edges of the quotient).
    pub fn class_count(&self) -> usize {
        self.edges.len()
    }

    /// Class id of every quotient edge key.
    pub fn edge_classes(&self) -> BTreeMap<PeriodicEdgeKey, usize> {
        self.edges.iter().enumerate().map(|(i, e)| (e.key, i)).collect()
    }

    pub fn corner(&self, slot: usize, side: Side) -> (usize, Side) {
        self.corners[slot][side as usize]
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub fn position(&self, r: VertexRef) -> Point3 {
        vec3::add(self.vertices[r.class], self.lattice.translation(r.shift))
    }

    /// Faces of each Voronoi cell with their translations, for scaffolds built
    /// from generators.
    pub fn cells(&self) -> Option<&[Vec<(usize, Shift)>]> {
        self.cells.as_deref()
    }

    /// Give every edge class its twist; `vector` is indexed by class id.
    pub fn assign_class_twists(&mut self, vector: &[i64]) -> Result<()> {
        if vector.len() != self.edges.len() {
            return Err(LkError::InvalidArgument(format!(
                "class twist vector has {} entries for {} edge classes",
                vector.len(),
                self.edges.len()
            )));
        }
        self.twists.copy_from_slice(vector);
        Ok(())
    }

    pub fn with_class_twists(&self, vector: &[i64]) -> Result<Self> {
        let mut m = self.clone();
        m.assign_class_twists(vector)?;
        Ok(m)
    }

    pub fn set_uniform_twist(&mut self, t: i64) {
        self.twists.iter_mut().for_each(|x| *x = t);
    }

    /// Same complex with face `face` represented by a translated copy.
    pub fn with_face_translated(&self, face: usize, by: Shift) -> Result<Self> {
        let mut faces = self.faces.clone();
        for r in &mut faces[face] {
            r.shift = crate::passage::shift_add(r.shift, by);
        }
        let cells = self.cells.as_ref().map(|cells| {
            cells
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|&(f, s)| if f == face { (f, shift_sub(s, by)) } else { (f, s) })
                        .collect()
                })
                .collect()
        });
        let mut m = Self::with_cells(self.lattice.clone(), self.vertices.clone(), faces, cells)?;
        let old = self.edges.iter().map(|e| e.key);
        let twist_of: BTreeMap<PeriodicEdgeKey, i64> = old.zip(self.twists.iter().copied()).collect();
        for (i, e) in m.edges.clone().iter().enumerate() {
            m.twists[i] = twist_of.get(&e.key).copied().unwrap_or(0);
        }
        Ok(m)
    }
}

/// Assigns vertex classes by reducing positions modulo the lattice.
struct ClassTable<'a> {
    lattice: &'a Lattice,
    reps: Vec<Point3>,
    fracs: Vec<[f64; 3]>,
    tol: f64,
}

impl<'a> ClassTable<'a> {
    fn reference(&mut self, p: Point3) -> VertexRef {
        let f = self.lattice.to_fractional(p);
        let dim = self.lattice.dim();
        for (c, rf) in self.fracs.iter().enumerate() {
            let mut shift = [0i64; 3];
            let ok = (0..dim).all(|i| {
                let d = f[i] - rf[i];
                shift[i] = d.round() as i64;
                (d - d.round()).abs() <= self.tol
            });
            if ok {
                return VertexRef { class: c, shift };
            }
        }
        let mut shift = [0i64; 3];
        let mut rf = f;
        for i in 0..dim {
            let fl = (f[i] + self.tol).floor();
            shift[i] = fl as i64;
            rf[i] = f[i] - fl;
        }
        self.reps.push(vec3::sub(p, self.lattice.translation(shift)));
        self.fracs.push(rf);
        VertexRef { class: self.reps.len() - 1, shift }
    }
}

fn min_shift(refs: &[VertexRef]) -> Shift {
    refs.iter().map(|r| r.shift).min().expect("nonempty")
}

/// Voronoi scaffold of the periodic point set `generators + lattice`.
///
/// Generators are given in fractional coordinates. In three dimensions the
/// faces are the Voronoi facets, one per translation class; in the plane each
/// Voronoi tile is a single face.
pub fn periodic_scaffold(lattice: &Lattice, generators: &[Vec<f64>]) -> Result<PeriodicMesh> {
    if generators.is_empty() {
        return Err(LkError::InvalidArgument("at least one generator is required".into()));
    }
    let dim = lattice.dim();
    let mut gens: Vec<Point3> = Vec::new();
    for g in generators {
        if g.len() != dim || g.iter().any(|c| !c.is_finite()) {
            return Err(LkError::InvalidArgument(format!("generator {g:?} does not match dimension {dim}")));
        }
        let mut f = [0.0; 3];
        for i in 0..dim {
            f[i] = g[i] - g[i].floor();
        }
        let p = lattice.to_cartesian(f);
        let dup = gens.iter().any(|&q| {
            let d = lattice.to_fractional(vec3::sub(p, q));
            (0..dim).all(|i| (d[i] - d[i].round()).abs() < 1e-9)
        });
        if dup {
            return Err(LkError::InvalidArgument("generators coincide modulo the lattice".into()));
        }
        gens.push(p);
    }
    let mut sites = Vec::new();
    for s in lattice.shifts_within(2) {
        for &g in &gens {
            sites.push(vec3::add(g, lattice.translation(s)));
        }
    }
    let mut table = ClassTable { lattice, reps: Vec::new(), fracs: Vec::new(), tol: 1e-7 };
    let mut faces: Vec<Vec<VertexRef>> = Vec::new();
    let mut cells: Vec<Vec<(usize, Shift)>> = Vec::new();
    if dim == 2 {
        for &g in &gens {
            let ring = polygon_cell(g, &sites)?;
            let refs: Vec<VertexRef> = ring.iter().map(|s| table.reference(s.start)).collect();
            cells.push(vec![(faces.len(), [0; 3])]);
            faces.push(refs);
        }
    } else {
        let mut seen: BTreeMap<Vec<VertexRef>, usize> = BTreeMap::new();
        for &g in &gens {
            let mut cell = Vec::new();
            for facet in polyhedron_cell(g, &sites)? {
                let refs: Vec<VertexRef> = facet.vertices.iter().map(|&p| table.reference(p)).collect();
                let m = min_shift(&refs);
                let mut key: Vec<VertexRef> =
                    refs.iter().map(|r| VertexRef { class: r.class, shift: shift_sub(r.shift, m) }).collect();
                key.sort();
                match seen.get(&key) {
                    Some(&f) => {
                        let fm = min_shift(&faces[f]);
                        cell.push((f, shift_sub(m, fm)));
                    }
                    None => {
                        seen.insert(key, faces.len());
                        cell.push((faces.len(), [0; 3]));
                        faces.push(refs);
                    }
                }
            }
            cells.push(cell);
        }
    }
    PeriodicMesh::with_cells(lattice.clone(), table.reps, faces, Some(cells))
}

/// Wigner-Seitz cell of the lattice as a standalone mesh (a polygon in 2D).
pub fn wigner_seitz(lattice: &Lattice) -> Result<LabeledMesh> {
    let sites: Vec<Point3> = lattice.shifts_within(2).into_iter().map(|s| lattice.translation(s)).collect();
    let mut verts: Vec<Point3> = Vec::new();
    let scale: f64 = lattice.basis().iter().map(|v| vec3::norm(*v)).fold(0.0, f64::max);
    let index = |p: Point3, verts: &mut Vec<Point3>| {
        if let Some(i) = verts.iter().position(|&q| vec3::dist(p, q) <= 1e-7 * scale) {
            i
        } else {
            verts.push(p);
            verts.len() - 1
        }
    };
    let faces = if lattice.dim() == 2 {
        let ring = polygon_cell([0.0; 3], &sites)?;
        vec![ring.iter().map(|s| index(s.start, &mut verts)).collect::<Vec<_>>()]
    } else {
        polyhedron_cell([0.0; 3], &sites)?
            .iter()
            .map(|f| f.vertices.iter().map(|&p| index(p, &mut verts)).collect())
            .collect()
    };
    LabeledMesh::new(verts, faces)
}
