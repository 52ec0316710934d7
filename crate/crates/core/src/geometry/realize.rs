//! Turning traced strands into space curves.
//!
//! Each edge gets one *station* per slot: a point on a small circle around the
//! edge axis, placed in the direction of the slot's face. A passage runs along
//! the middle part of its edge as a helix from its own station to the station
//! `t` slots further around, turning counter-clockwise (right-handed about the
//! low-to-high vertex axis) for positive `t`, a full turn for `t = K`. Between
//! passages the strand runs along the face boundary inset toward the centroid,
//! cutting the corner through the inset copy of the shared vertex.

use std::f64::consts::{FRAC_PI_2, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{LkError, Result};
use crate::mesh::{axial_angle, EdgeId, FaceId, LabeledMesh, Side, SlotId, VertexId};
use crate::strands::{transfer, StrandSet};
use crate::vec3::{self, Point3};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RealizeParams {
    /// Offset toward the face centroid, as a fraction of the way there.
    pub inset: f64,
    /// Helix samples per quarter turn.
    pub helix_samples: usize,
    /// Length of the helical part of each edge, as a fraction of the edge.
    pub edge_blend_length: f64,
    /// Tube radius; `None` means 3% of the mean edge length.
    pub tube_radius: Option<f64>,
    pub tube_sides: usize,
}

impl Default for RealizeParams {
    fn default() -> Self {
        RealizeParams { inset: 0.25, helix_samples: 8, edge_blend_length: 0.3, tube_radius: None, tube_sides: 12 }
    }
}

impl RealizeParams {
    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(LkError::InvalidArgument(what.to_string()));
        if !(self.inset > 0.0 && self.inset < 1.0) {
            return bad(&format!("inset {} must lie in (0, 1)", self.inset));
        }
        if !(self.edge_blend_length > 0.0 && self.edge_blend_length < 0.5) {
            return bad(&format!("edge blend length {} must lie in (0, 0.5)", self.edge_blend_length));
        }
        if self.helix_samples == 0 {
            return bad("helix samples must be positive");
        }
        if self.tube_sides < 3 {
            return bad("tubes need at least 3 sides");
        }
        if let Some(r) = self.tube_radius {
            if !(r > 0.0 && r.is_finite()) {
                return bad(&format!("tube radius {r} must be positive"));
            }
        }
        Ok(())
    }

    pub fn radius_for(&self, mesh: &LabeledMesh) -> f64 {
        self.tube_radius.unwrap_or_else(|| default_tube_radius(mesh))
    }
}

/// One realized strand.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polyline {
    pub id: usize,
    pub closed: bool,
    pub points: Vec<Point3>,
}

impl Polyline {
    /// Index into the export palette.
    pub fn color_index(&self) -> usize {
        self.id
    }

    /// Segments as point pairs, including the closing one for closed curves.
    pub fn segments(&self) -> impl Iterator<Item = (Point3, Point3)> + '_ {
        let n = self.points.len();
        let count = if self.closed { n } else { n.saturating_sub(1) };
        (0..count).map(move |i| (self.points[i], self.points[(i + 1) % n]))
    }

    /// Same curve with every segment split into `factor` pieces.
    pub fn refined(&self, factor: usize) -> Polyline {
        let mut points = Vec::new();
        for (a, b) in self.segments() {
            for j in 0..factor.max(1) {
                points.push(vec3::lerp(a, b, j as f64 / factor.max(1) as f64));
            }
        }
        if !self.closed {
            if let Some(&last) = self.points.last() {
                points.push(last);
            }
        }
        Polyline { id: self.id, closed: self.closed, points }
    }
}

/// Realized strands, one polyline per component.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrandGeometry {
    pub components: Vec<Polyline>,
}

impl StrandGeometry {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("geometry serializes");
        s.push('\n');
        s
    }
}

struct EdgeFrame {
    a: Point3,
    b: Point3,
    u: Point3,
    w: Point3,
    rho: f64,
    /// Station angle for each radial index, ascending within one turn.
    phi: Vec<f64>,
}

impl EdgeFrame {
    /// Station angle for an unbounded radial index: one extra turn per `K` steps.
    fn angle(&self, n: i64) -> f64 {
        let k = self.phi.len() as i64;
        self.phi[n.rem_euclid(k) as usize] + TAU * n.div_euclid(k) as f64
    }

    fn point(&self, lambda: f64, theta: f64) -> Point3 {
        let on_axis = vec3::lerp(self.a, self.b, lambda);
        let radial = vec3::add(vec3::scale(self.u, theta.cos()), vec3::scale(self.w, theta.sin()));
        vec3::add(on_axis, vec3::scale(radial, self.rho))
    }
}

fn unit_normal(mesh: &LabeledMesh, s: SlotId) -> Point3 {
    let face = mesh.face(mesh.slot(s).face);
    let pts: Vec<Point3> = face.iter().map(|&v| mesh.vertex(v)).collect();
    vec3::normalize(vec3::newell_normal(&pts)).unwrap_or([0.0; 3])
}

fn circular_gap(x: f64, y: f64) -> f64 {
    let d = (x - y).rem_euclid(TAU);
    d.min(TAU - d)
}

fn edge_frame(mesh: &LabeledMesh, e: EdgeId, inset: f64) -> Result<EdgeFrame> {
    let rec = mesh.edge(e);
    let (a, b) = (mesh.vertex(rec.key.a), mesh.vertex(rec.key.b));
    let (axis, u, w) = vec3::edge_frame(a, b)
        .ok_or_else(|| LkError::DegenerateGeometry(format!("edge {} has zero length", rec.key)))?;
    let len = vec3::dist(a, b);
    let k = rec.degree();
    let mut raw = Vec::with_capacity(k);
    let mut nudged = Vec::with_capacity(k);
    let mut reach = f64::INFINITY;
    for &s in &rec.radial_order {
        let anchor = mesh.slot_anchor(s);
        let d = vec3::sub(anchor, a);
        let perp = vec3::norm(vec3::sub(d, vec3::scale(axis, vec3::dot(d, axis))));
        reach = reach.min(perp);
        let degenerate = || {
            LkError::DegenerateGeometry(format!("face {} is degenerate at edge {}", mesh.slot(s).face, rec.key))
        };
        raw.push(axial_angle(a, b, anchor).ok_or_else(degenerate)?);
        // Coincident faces (two-sided polygons) are told apart by pushing
        // their anchors slightly along their own normals.
        let pushed = vec3::add(anchor, vec3::scale(unit_normal(mesh, s), 1e-3 * len));
        nudged.push(axial_angle(a, b, pushed).ok_or_else(degenerate)?);
    }
    let tied = k >= 2 && (0..k).any(|i| circular_gap(raw[i], raw[(i + 1) % k]) < 1e-9);
    let alpha = if tied { nudged } else { raw };
    if !(reach > 1e-9 * len) {
        return Err(LkError::DegenerateGeometry(format!("edge {} has a flat incident face", rec.key)));
    }
    let mut unwrapped = Vec::with_capacity(k);
    for (i, &x) in alpha.iter().enumerate() {
        let mut v = x;
        if i > 0 {
            while v < unwrapped[i - 1] {
                v += TAU;
            }
        }
        unwrapped.push(v);
    }
    let even = |i: usize| unwrapped[0] + TAU * i as f64 / k as f64;
    let consistent = unwrapped[k - 1] < unwrapped[0] + TAU;
    let phi: Vec<f64> = if !consistent {
        (0..k).map(even).collect()
    } else {
        let min_gap = (0..k)
            .map(|i| if i + 1 < k { unwrapped[i + 1] - unwrapped[i] } else { unwrapped[0] + TAU - unwrapped[i] })
            .fold(f64::INFINITY, f64::min);
        if k >= 2 && min_gap < 0.25 * TAU / k as f64 {
            (0..k).map(|i| 0.5 * (unwrapped[i] + even(i))).collect()
        } else {
            unwrapped
        }
    };
    Ok(EdgeFrame { a, b, u, w, rho: inset * reach, phi })
}

/// Face and vertex of the corner a passage ending at station `(s, side)`
/// turns through.
fn corner_of(mesh: &LabeledMesh, s: SlotId, side: Side) -> (FaceId, VertexId) {
    let slot = mesh.slot(s);
    let face = mesh.face(slot.face);
    let k = slot.index;
    let v = match (side, slot.direction > 0) {
        (Side::Hi, true) | (Side::Lo, false) => face[(k + 1) % face.len()],
        _ => face[k],
    };
    (slot.face, v)
}

/// Inset copy of vertex `v` in face `f`, lifted off the face plane by the
/// mean lift of the neighbouring stations `p` and `q`. Stations of ordinary
/// faces lie in the face plane; only spread-out coincident faces get lifted.
fn inset_corner(mesh: &LabeledMesh, f: FaceId, v: VertexId, inset: f64, p: Point3, q: Point3) -> Point3 {
    let face = mesh.face(f);
    let c = vec3::centroid(face.iter().map(|v| &mesh.vertices()[v.0]));
    let base = vec3::lerp(mesh.vertex(v), c, inset);
    let pts: Vec<Point3> = face.iter().map(|&v| mesh.vertex(v)).collect();
    match vec3::normalize(vec3::newell_normal(&pts)) {
        Some(n) => {
            let lift = 0.5 * (vec3::dot(vec3::sub(p, base), n) + vec3::dot(vec3::sub(q, base), n));
            vec3::add(base, vec3::scale(n, lift))
        }
        None => base,
    }
}

/// Realize every strand of `strands` (traced on `mesh`) as a polyline.
pub fn realize(mesh: &LabeledMesh, strands: &StrandSet, params: &RealizeParams) -> Result<StrandGeometry> {
    params.validate()?;
    let frames = (0..mesh.edge_count())
        .map(|e| edge_frame(mesh, EdgeId(e), params.inset))
        .collect::<Result<Vec<_>>>()?;
    let (l0, l1) = (0.5 - params.edge_blend_length / 2.0, 0.5 + params.edge_blend_length / 2.0);
    let quarter = params.helix_samples as f64;

    let components = strands
        .components
        .iter()
        .enumerate()
        .map(|(id, strand)| {
            let visits: Vec<(SlotId, bool)> =
                strand.slots.iter().copied().zip(strand.forward.iter().copied()).collect();
            let pieces: Vec<Vec<Point3>> = visits
                .iter()
                .map(|&(s, forward)| {
                    let slot = mesh.slot(s);
                    let frame = &frames[slot.edge.0];
                    let i = slot.radial_index as i64;
                    let start = frame.angle(i);
                    let end = frame.angle(i + mesh.twist(slot.edge));
                    let n = (((end - start).abs() / FRAC_PI_2) * quarter).ceil().max(1.0) as usize;
                    let mut piece: Vec<Point3> = (0..=n)
                        .map(|j| {
                            let u = j as f64 / n as f64;
                            frame.point(l0 + u * (l1 - l0), start + u * (end - start))
                        })
                        .collect();
                    if !forward {
                        piece.reverse();
                    }
                    piece
                })
                .collect();
            let closed = strand.is_closed();
            let mut points: Vec<Point3> = Vec::new();
            for (j, &(s, forward)) in visits.iter().enumerate() {
                points.extend_from_slice(&pieces[j]);
                if j + 1 == visits.len() && !closed {
                    break;
                }
                // A forward passage ends at the far station of the slot it
                // transfers to; a backward one at its own near station.
                let (exit, side) = if forward { (transfer(mesh, s), Side::Hi) } else { (s, Side::Lo) };
                let (f, v) = corner_of(mesh, exit, side);
                let next = &pieces[(j + 1) % visits.len()];
                let here = *pieces[j].last().expect("passages have points");
                points.push(inset_corner(mesh, f, v, params.inset, here, next[0]));
            }
            Polyline { id, closed, points }
        })
        .collect();
    Ok(StrandGeometry { components })
}

/// Default tube radius: 3% of the mean edge length.
pub fn default_tube_radius(mesh: &LabeledMesh) -> f64 {
    let total: f64 = mesh
        .edges()
        .iter()
        .map(|r| vec3::dist(mesh.vertex(r.key.a), mesh.vertex(r.key.b)))
        .sum();
    0.03 * total / mesh.edge_count().max(1) as f64
}
