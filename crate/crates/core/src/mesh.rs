//! Labeled non-manifold polygon meshes.
//!
//! A mesh is a list of vertex positions and a list of polygonal faces given as
//! vertex cycles. Every pair of consecutive face vertices is a *side slot*; the
//! slots that share the same unordered vertex pair form an edge, and the order
//! in which those slots appear when sweeping counter-clockwise around the edge
//! axis is its *radial order*. Labels (integer twists per edge and null flags
//! per slot) are stored separately from the immutable topology so that
//! relabeling is cheap.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::error::{LkError, Result};
use crate::vec3::{self, Point3};

macro_rules! id_type {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(pub usize);

        impl $name {
            #[inline]
            pub fn index(self) -> usize {
                self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self.0)
            }
        }
    };
}

id_type!(
    /// Index into the vertex list.
    VertexId
);
id_type!(
    /// Index into the face list.
    FaceId
);
id_type!(
    /// Dense index of a side slot; slots of face 0 come first, in cycle order.
    SlotId
);
id_type!(
    /// Dense index of an edge; edges are numbered in ascending [`EdgeKey`] order.
    EdgeId
);

/// Canonical unordered vertex pair, always stored with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeKey {
    pub a: VertexId,
    pub b: VertexId,
}

impl EdgeKey {
    /// Canonical key for the pair `{u, v}`, or `None` if `u == v`.
    pub fn new(u: usize, v: usize) -> Option<Self> {
        match u.cmp(&v) {
            std::cmp::Ordering::Less => Some(EdgeKey { a: VertexId(u), b: VertexId(v) }),
            std::cmp::Ordering::Greater => Some(EdgeKey { a: VertexId(v), b: VertexId(u) }),
            std::cmp::Ordering::Equal => None,
        }
    }

    /// Parse an explicitly written pair, rejecting `a >= b`.
    pub fn strict(a: usize, b: usize) -> Result<Self> {
        if a < b {
            Ok(EdgeKey { a: VertexId(a), b: VertexId(b) })
        } else {
            Err(LkError::NonCanonicalEdge(a, b))
        }
    }

    pub fn pair(self) -> [usize; 2] {
        [self.a.0, self.b.0]
    }
}

impl fmt::Display for EdgeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// End of an edge, named by the canonical orientation `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    /// The `a` end.
    Lo,
    /// The `b` end.
    Hi,
}

/// One occurrence of an edge along a face boundary.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Slot {
    pub face: FaceId,
    /// Position of the side in the face cycle: it joins corner `index` to `index + 1`.
    pub index: usize,
    pub edge: EdgeId,
    pub key: EdgeKey,
    /// `+1` when the face walks the side from `a` to `b`, `-1` otherwise.
    pub direction: i8,
    pub radial_index: usize,
}

/// An edge together with its slots in radial order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdgeRecord {
    pub key: EdgeKey,
    pub radial_order: Vec<SlotId>,
}

impl EdgeRecord {
    pub fn degree(&self) -> usize {
        self.radial_order.len()
    }
}

/// Immutable combinatorics and geometry shared by all relabelings of a mesh.
#[derive(Debug)]
pub struct MeshTopology {
    vertices: Vec<Point3>,
    faces: Vec<Vec<VertexId>>,
    face_start: Vec<usize>,
    slots: Vec<Slot>,
    edges: Vec<EdgeRecord>,
    edge_index: BTreeMap<EdgeKey, EdgeId>,
    corners: Vec<[(SlotId, Side); 2]>,
}

/// A mesh with its twist and null-slot labels.
///
/// Cloning is cheap: the topology is shared and only the label vectors are copied.
#[derive(Debug, Clone)]
pub struct LabeledMesh {
    topo: Arc<MeshTopology>,
    twists: Vec<i64>,
    nulls: Vec<bool>,
}

fn check_faces(vertex_count: usize, faces: &[Vec<usize>]) -> Result<()> {
    for (f, face) in faces.iter().enumerate() {
        if face.len() < 3 {
            return Err(LkError::ShortFace { face: f, len: face.len() });
        }
        for &v in face {
            if v >= vertex_count {
                return Err(LkError::UnknownVertex { face: f, vertex: v });
            }
        }
        for k in 0..face.len() {
            if face[k] == face[(k + 1) % face.len()] {
                return Err(LkError::RepeatedVertex { face: f, vertex: face[k] });
            }
        }
    }
    Ok(())
}

/// Point representing slot `k` of `face` when ordering faces around the edge.
///
/// Normally the face centroid. When the face runs along the same edge more
/// than once, each occurrence is represented by the centroid of the boundary
/// stretch that follows it up to the next occurrence.
pub(crate) fn slot_anchor(vertices: &[Point3], face: &[usize], k: usize) -> Point3 {
    let n = face.len();
    let key = EdgeKey::new(face[k], face[(k + 1) % n]);
    let repeats = (0..n)
        .filter(|&j| EdgeKey::new(face[j], face[(j + 1) % n]) == key)
        .count();
    if repeats > 1 {
        let mut pts = Vec::new();
        let mut j = (k + 1) % n;
        loop {
            pts.push(vertices[face[j]]);
            if EdgeKey::new(face[j], face[(j + 1) % n]) == key || pts.len() > n {
                break;
            }
            j = (j + 1) % n;
        }
        let c = vec3::centroid(pts.iter());
        let (a, b) = (vertices[face[k]], vertices[face[(k + 1) % n]]);
        if let Some((axis, _, _)) = vec3::edge_frame(a, b) {
            let d = vec3::sub(c, a);
            let perp = vec3::sub(d, vec3::scale(axis, vec3::dot(d, axis)));
            if vec3::norm(perp) > 1e-12 * (1.0 + vec3::dist(a, b)) {
                return c;
            }
        }
    }
    vec3::centroid(face.iter().map(|&v| &vertices[v]))
}

/// Angle of `p` around the oriented axis `a -> b`, measured counter-clockwise
/// (right-hand rule) in the frame of [`vec3::edge_frame`]. `None` when `p`
/// lies on the axis.
pub(crate) fn axial_angle(a: Point3, b: Point3, p: Point3) -> Option<f64> {
    let (axis, u, w) = vec3::edge_frame(a, b)?;
    let d = vec3::sub(p, a);
    let perp = vec3::sub(d, vec3::scale(axis, vec3::dot(d, axis)));
    let scale = 1.0 + vec3::dist(a, b).max(vec3::norm(d));
    if vec3::norm(perp) <= 1e-12 * scale {
        return None;
    }
    let ang = vec3::dot(perp, w).atan2(vec3::dot(perp, u));
    Some(if ang < 0.0 { ang + std::f64::consts::TAU } else { ang })
}

/// Sort `(slot, angle)` pairs counter-clockwise, breaking near-ties by slot id,
/// then rotate the cycle so the smallest slot id comes first.
///
/// Anchoring at the smallest slot makes the radial indices independent of the
/// reference direction used to measure angles, so rigid motions of the whole
/// mesh leave them unchanged.
pub(crate) fn radial_sort(mut entries: Vec<(usize, f64)>) -> Vec<usize> {
    const TIE: f64 = 1e-9;
    entries.sort_by(|x, y| {
        if (x.1 - y.1).abs() <= TIE {
            x.0.cmp(&y.0)
        } else {
            x.1.total_cmp(&y.1)
        }
    });
    let start = entries
        .iter()
        .enumerate()
        .min_by_key(|(_, e)| e.0)
        .map(|(i, _)| i)
        .unwrap_or(0);
    entries.rotate_left(start);
    entries.into_iter().map(|e| e.0).collect()
}

/// Corner neighbour of slot `k` (of a face with `n` sides and per-slot
/// directions `dir`) at the given end of its edge.
///
/// Returns the local index of the adjacent slot and which end of *its* edge the
/// shared corner is.
pub(crate) fn corner_neighbour(dir: &[i8], k: usize, side: Side) -> (usize, Side) {
    let n = dir.len();
    // The face enters side k at corner k and leaves at corner k+1.
    let at_end = matches!((dir[k] > 0, side), (true, Side::Hi) | (false, Side::Lo));
    if at_end {
        let r = (k + 1) % n;
        // Corner k+1 is where side r starts.
        (r, if dir[r] > 0 { Side::Lo } else { Side::Hi })
    } else {
        let r = (k + n - 1) % n;
        // Corner k is where side r ends.
        (r, if dir[r] > 0 { Side::Hi } else { Side::Lo })
    }
}

impl MeshTopology {
    fn build(vertices: Vec<Point3>, faces: Vec<Vec<usize>>) -> Result<Self> {
        for (i, p) in vertices.iter().enumerate() {
            if p.iter().any(|c| !c.is_finite()) {
                return Err(LkError::NonFiniteVertex(i));
            }
        }
        check_faces(vertices.len(), &faces)?;

        let mut keys = BTreeSet::new();
        for face in &faces {
            for k in 0..face.len() {
                keys.insert(EdgeKey::new(face[k], face[(k + 1) % face.len()]).expect("checked"));
            }
        }
        let edge_index: BTreeMap<EdgeKey, EdgeId> =
            keys.iter().enumerate().map(|(i, &k)| (k, EdgeId(i))).collect();

        let mut slots = Vec::new();
        let mut face_start = Vec::with_capacity(faces.len());
        let mut corners = Vec::new();
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); keys.len()];
        for (f, face) in faces.iter().enumerate() {
            face_start.push(slots.len());
            let n = face.len();
            let mut dirs = Vec::with_capacity(n);
            for k in 0..n {
                let (u, v) = (face[k], face[(k + 1) % n]);
                let key = EdgeKey::new(u, v).expect("checked");
                let edge = edge_index[&key];
                let direction = if u < v { 1 } else { -1 };
                dirs.push(direction);
                members[edge.0].push(slots.len());
                slots.push(Slot {
                    face: FaceId(f),
                    index: k,
                    edge,
                    key,
                    direction,
                    radial_index: 0,
                });
            }
            let base = face_start[f];
            for k in 0..n {
                let lo = corner_neighbour(&dirs, k, Side::Lo);
                let hi = corner_neighbour(&dirs, k, Side::Hi);
                corners.push([(SlotId(base + lo.0), lo.1), (SlotId(base + hi.0), hi.1)]);
            }
        }

        let mut edges = Vec::with_capacity(keys.len());
        for (e, key) in keys.iter().enumerate() {
            let slot_ids = &members[e];
            let order = if slot_ids.len() <= 2 {
                slot_ids.clone()
            } else {
                let (pa, pb) = (vertices[key.a.0], vertices[key.b.0]);
                let mut entries = Vec::with_capacity(slot_ids.len());
                for &s in slot_ids {
                    let slot = &slots[s];
                    let face: Vec<usize> = faces[slot.face.0].clone();
                    let anchor = slot_anchor(&vertices, &face, slot.index);
                    let ang = axial_angle(pa, pb, anchor).ok_or(LkError::DegenerateFace {
                        face: slot.face.0,
                        a: key.a.0,
                        b: key.b.0,
                    })?;
                    entries.push((s, ang));
                }
                radial_sort(entries)
            };
            for (i, &s) in order.iter().enumerate() {
                slots[s].radial_index = i;
            }
            edges.push(EdgeRecord {
                key: *key,
                radial_order: order.into_iter().map(SlotId).collect(),
            });
        }

        let faces = faces
            .into_iter()
            .map(|f| f.into_iter().map(VertexId).collect())
            .collect();
        Ok(MeshTopology {
            vertices,
            faces,
            face_start,
            slots,
            edges,
            edge_index,
            corners,
        })
    }
}

impl LabeledMesh {
    /// Build a mesh with all twists zero and no null slots.
    pub fn new(vertices: Vec<Point3>, faces: Vec<Vec<usize>>) -> Result<Self> {
        let topo = MeshTopology::build(vertices, faces)?;
        let twists = vec![0; topo.edges.len()];
        let nulls = vec![false; topo.slots.len()];
        Ok(LabeledMesh {
            topo: Arc::new(topo),
            twists,
            nulls,
        })
    }

    pub fn vertices(&self) -> &[Point3] {
        &self.topo.vertices
    }

    pub fn vertex(&self, v: VertexId) -> Point3 {
        self.topo.vertices[v.0]
    }

    pub fn faces(&self) -> &[Vec<VertexId>] {
        &self.topo.faces
    }

    pub fn face(&self, f: FaceId) -> &[VertexId] {
        &self.topo.faces[f.0]
    }

    pub fn face_count(&self) -> usize {
        self.topo.faces.len()
    }

    pub fn slots(&self) -> &[Slot] {
        &self.topo.slots
    }

    pub fn slot(&self, s: SlotId) -> &Slot {
        &self.topo.slots[s.0]
    }

    pub fn slot_count(&self) -> usize {
        self.topo.slots.len()
    }

    /// Slot id of side `k` of face `f`.
    pub fn slot_of(&self, f: FaceId, k: usize) -> SlotId {
        SlotId(self.topo.face_start[f.0] + k)
    }

    /// Slots of face `f` in cycle order.
    pub fn face_slots(&self, f: FaceId) -> impl Iterator<Item = SlotId> + '_ {
        let start = self.topo.face_start[f.0];
        (start..start + self.topo.faces[f.0].len()).map(SlotId)
    }

    pub fn edges(&self) -> &[EdgeRecord] {
        &self.topo.edges
    }

    pub fn edge_count(&self) -> usize {
        self.topo.edges.len()
    }

    pub fn edge(&self, e: EdgeId) -> &EdgeRecord {
        &self.topo.edges[e.0]
    }

    pub fn edge_id(&self, key: EdgeKey) -> Option<EdgeId> {
        self.topo.edge_index.get(&key).copied()
    }

    /// Edge record for `key`; the radial order of its slots.
    pub fn radial_order(&self, key: EdgeKey) -> Result<&EdgeRecord> {
        self.edge_id(key)
            .map(|e| &self.topo.edges[e.0])
            .ok_or(LkError::UnknownEdge(key.a.0, key.b.0))
    }

    pub fn degree(&self, e: EdgeId) -> usize {
        self.topo.edges[e.0].radial_order.len()
    }

    pub fn twist(&self, e: EdgeId) -> i64 {
        self.twists[e.0]
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub fn set_twist(&mut self, e: EdgeId, t: i64) {
        self.twists[e.0] = t;
    }

    pub fn set_twist_by_key(&mut self, key: EdgeKey, t: i64) -> Result<()> {
        let e = self
            .edge_id(key)
            .ok_or(LkError::UnknownEdge(key.a.0, key.b.0))?;
        self.twists[e.0] = t;
        Ok(())
    }

    pub fn set_all_twists(&mut self, t: i64) {
        self.twists.iter_mut().for_each(|x| *x = t);
    }

    /// Replace every twist at once; `twists` is indexed by [`EdgeId`].
    pub fn set_twists(&mut self, twists: &[i64]) {
        assert_eq!(twists.len(), self.twists.len(), "one twist per edge");
        self.twists.copy_from_slice(twists);
    }

    pub fn with_twists(&self, twists: &[i64]) -> Self {
        let mut m = self.clone();
        m.set_twists(twists);
        m
    }

    pub fn is_null(&self, s: SlotId) -> bool {
        self.nulls[s.0]
    }

    pub fn set_null(&mut self, s: SlotId, null: bool) {
        self.nulls[s.0] = null;
    }

    pub fn null_slots(&self) -> impl Iterator<Item = SlotId> + '_ {
        self.nulls
            .iter()
            .enumerate()
            .filter(|(_, &n)| n)
            .map(|(i, _)| SlotId(i))
    }

    /// The `occurrence`-th slot of face `f` lying on edge `key` (0-based, in cycle order).
    pub fn find_slot(&self, f: FaceId, key: EdgeKey, occurrence: usize) -> Result<SlotId> {
        let err = LkError::UnknownSide {
            face: f.0,
            a: key.a.0,
            b: key.b.0,
            occurrence,
        };
        if f.0 >= self.face_count() {
            return Err(err);
        }
        self.face_slots(f)
            .filter(|&s| self.slot(s).key == key)
            .nth(occurrence)
            .ok_or(err)
    }

    /// Station reached at the other end of a corner: the neighbouring slot in
    /// the same face that shares the vertex at `side` of slot `s`.
    pub fn corner(&self, s: SlotId, side: Side) -> (SlotId, Side) {
        self.topo.corners[s.0][side as usize]
    }

    /// Anchor point used to order slot `s` around its edge.
    pub fn slot_anchor(&self, s: SlotId) -> Point3 {
        let slot = self.slot(s);
        let face: Vec<usize> = self.face(slot.face).iter().map(|v| v.0).collect();
        slot_anchor(&self.topo.vertices, &face, slot.index)
    }

    /// Shares topology with `other` (a relabeling of the same mesh).
    pub fn same_topology(&self, other: &LabeledMesh) -> bool {
        Arc::ptr_eq(&self.topo, &other.topo)
    }

    /// Diameter of the vertex bounding box; a length scale for tolerances.
    pub fn scale(&self) -> f64 {
        let mut lo = [f64::INFINITY; 3];
        let mut hi = [f64::NEG_INFINITY; 3];
        for p in self.vertices() {
            for i in 0..3 {
                lo[i] = lo[i].min(p[i]);
                hi[i] = hi[i].max(p[i]);
            }
        }
        if lo[0].is_finite() {
            vec3::dist(lo, hi).max(1e-12)
        } else {
            1.0
        }
    }
}

/// Link between two faces across an edge of the dual graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DualLink {
    pub from: FaceId,
    pub to: FaceId,
    pub edge: EdgeId,
}

/// Face adjacency graph. Degree-2 edges yield one link; an edge of degree
/// `K >= 3` yields the `K` links between radially consecutive faces.
#[derive(Debug, Clone, Serialize)]
pub struct DualGraph {
    pub node_count: usize,
    pub links: Vec<DualLink>,
}

impl DualGraph {
    pub fn component_count(&self) -> usize {
        let mut uf = UnionFind::new(self.node_count);
        for l in &self.links {
            uf.union(l.from.0, l.to.0);
        }
        let labels = uf.into_labeling();
        labels.iter().collect::<BTreeSet<_>>().len()
    }
}

pub fn dual_graph(mesh: &LabeledMesh) -> DualGraph {
    let mut links = Vec::new();
    for (e, rec) in mesh.edges().iter().enumerate() {
        let faces: Vec<FaceId> = rec.radial_order.iter().map(|&s| mesh.slot(s).face).collect();
        match faces.len() {
            0 | 1 => {}
            2 => links.push(DualLink { from: faces[0], to: faces[1], edge: EdgeId(e) }),
            k => {
                for i in 0..k {
                    links.push(DualLink {
                        from: faces[i],
                        to: faces[(i + 1) % k],
                        edge: EdgeId(e),
                    });
                }
            }
        }
    }
    DualGraph {
        node_count: mesh.face_count(),
        links,
    }
}

/// Summary of the combinatorial structure of a mesh.
#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq)]
pub struct ConnectivityReport {
    pub vertex_count: usize,
    pub face_count: usize,
    pub edge_count: usize,
    /// Number of edges per degree `K`.
    pub degree_histogram: BTreeMap<usize, usize>,
    /// Components of faces connected through shared edges.
    pub edge_components: usize,
    /// Components of faces connected through shared vertices.
    pub vertex_components: usize,
    pub errors: Vec<String>,
    pub warnings: Vec<String>,
}

fn face_components(face_count: usize, groups: impl Iterator<Item = Vec<usize>>) -> usize {
    if face_count == 0 {
        return 0;
    }
    let mut uf = UnionFind::new(face_count);
    for g in groups {
        for w in g.windows(2) {
            uf.union(w[0], w[1]);
        }
    }
    uf.into_labeling().into_iter().collect::<BTreeSet<_>>().len()
}

/// Degree histogram, edge/vertex connectivity and label warnings.
pub fn connectivity_report(mesh: &LabeledMesh) -> ConnectivityReport {
    let mut degree_histogram = BTreeMap::new();
    for rec in mesh.edges() {
        *degree_histogram.entry(rec.degree()).or_insert(0) += 1;
    }
    let edge_components = face_components(
        mesh.face_count(),
        mesh.edges().iter().map(|rec| {
            rec.radial_order
                .iter()
                .map(|&s| mesh.slot(s).face.0)
                .collect()
        }),
    );
    let mut by_vertex: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (f, face) in mesh.faces().iter().enumerate() {
        for v in face {
            by_vertex.entry(v.0).or_default().push(f);
        }
    }
    let vertex_components = face_components(mesh.face_count(), by_vertex.into_values());

    let mut warnings = Vec::new();
    if vertex_components < edge_components {
        warnings.push(format!(
            "{} edge-connected components are joined only through shared vertices (vertex hinge)",
            edge_components
        ));
    }
    for (e, rec) in mesh.edges().iter().enumerate() {
        if rec.degree() == 1 && mesh.twist(EdgeId(e)) != 0 {
            warnings.push(format!(
                "twist {} on boundary edge {} has no effect",
                mesh.twist(EdgeId(e)),
                rec.key
            ));
        }
    }
    ConnectivityReport {
        vertex_count: mesh.vertices().len(),
        face_count: mesh.face_count(),
        edge_count: mesh.edge_count(),
        degree_histogram,
        edge_components,
        vertex_components,
        errors: Vec::new(),
        warnings,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tet() -> LabeledMesh {
        LabeledMesh::new(
            vec![[1., 1., 1.], [1., -1., -1.], [-1., 1., -1.], [-1., -1., 1.]],
            vec![vec![0, 1, 2], vec![0, 3, 1], vec![0, 2, 3], vec![1, 3, 2]],
        )
        .unwrap()
    }

    #[test]
    fn slots_and_edges() {
        let m = tet();
        assert_eq!(m.slot_count(), 12);
        assert_eq!(m.edge_count(), 6);
        assert!(m.edges().iter().all(|e| e.degree() == 2));
        let s = m.slot_of(FaceId(1), 2);
        assert_eq!(m.slot(s).key, EdgeKey::new(0, 1).unwrap());
        assert_eq!(m.slot(s).direction, -1);
    }

    #[test]
    fn corners_are_involutions() {
        let m = tet();
        for s in 0..m.slot_count() {
            for side in [Side::Lo, Side::Hi] {
                let (r, rs) = m.corner(SlotId(s), side);
                assert_ne!(r, SlotId(s));
                assert_eq!(m.corner(r, rs), (SlotId(s), side));
            }
        }
    }

    #[test]
    fn rejects_bad_faces() {
        let v = vec![[0., 0., 0.], [1., 0., 0.], [0., 1., 0.]];
        assert!(matches!(
            LabeledMesh::new(v.clone(), vec![vec![0, 1]]),
            Err(LkError::ShortFace { .. })
        ));
        assert!(matches!(
            LabeledMesh::new(v.clone(), vec![vec![0, 1, 7]]),
            Err(LkError::UnknownVertex { vertex: 7, .. })
        ));
        assert!(matches!(
            LabeledMesh::new(v, vec![vec![0, 1, 1, 2]]),
            Err(LkError::RepeatedVertex { .. })
        ));
    }

    #[test]
    fn degenerate_face_on_busy_edge() {
        let v = vec![
            [0., 0., 0.],
            [0., 0., 1.],
            [1., 0., 0.5],
            [0., 1., 0.5],
            [0., 0., 0.5],
        ];
        let faces = vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 1, 4]];
        match LabeledMesh::new(v, faces) {
            Err(LkError::DegenerateFace { face, .. }) => assert_eq!(face, 2),
            other => panic!("unexpected {other:?}"),
        }
    }
}
