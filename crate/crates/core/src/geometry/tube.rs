//! Tubular surfaces around polylines, swept with a rotation-minimizing frame.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{LkError, Result};
use crate::vec3::{self, Point3};

use super::realize::Polyline;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TubeMesh {
    pub vertices: Vec<Point3>,
    /// Outward-facing triangles.
    pub triangles: Vec<[usize; 3]>,
}

impl TubeMesh {
    pub fn edge_count(&self) -> usize {
        let edges: BTreeSet<(usize, usize)> = self
            .triangles
            .iter()
            .flat_map(|t| (0..3).map(move |i| (t[i].min(t[(i + 1) % 3]), t[i].max(t[(i + 1) % 3]))))
            .collect();
        edges.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edge_count() as i64 + self.triangles.len() as i64
    }

    /// Every directed edge is matched by exactly one opposite edge.
    pub fn is_watertight(&self) -> bool {
        let mut count: HashMap<(usize, usize), i32> = HashMap::new();
        for t in &self.triangles {
            for i in 0..3 {
                *count.entry((t[i], t[(i + 1) % 3])).or_default() += 1;
            }
        }
        count.iter().all(|(&(a, b), &n)| n == 1 && count.get(&(b, a)) == Some(&1))
    }
}

fn reflect(v: Point3, n: Point3, c: f64) -> Point3 {
    vec3::sub(v, vec3::scale(n, 2.0 * vec3::dot(n, v) / c))
}

/// Rotation-minimizing normals along `points` with unit tangents `tangents`,
/// by the double reflection method. For closed curves the residual twist at
/// the seam is spread evenly along the curve.
fn frames(points: &[Point3], tangents: &[Point3], closed: bool) -> Vec<Point3> {
    let n = points.len();
    let t0 = tangents[0];
    let (_, seed, _) = vec3::edge_frame([0.0; 3], t0).expect("unit tangent");
    let mut normals = vec![seed];
    let steps = if closed { n } else { n - 1 };
    for i in 0..steps {
        let j = (i + 1) % n;
        let v1 = vec3::sub(points[j], points[i]);
        let c1 = vec3::dot(v1, v1);
        let r = normals[i];
        let (rl, tl) = if c1 > 0.0 {
            (reflect(r, v1, c1), reflect(tangents[i], v1, c1))
        } else {
            (r, tangents[i])
        };
        let v2 = vec3::sub(tangents[j], tl);
        let c2 = vec3::dot(v2, v2);
        let next = if c2 > 1e-24 { reflect(rl, v2, c2) } else { rl };
        normals.push(next);
    }
    if closed {
        let back = normals.pop().expect("seam frame");
        let b0 = vec3::cross(t0, normals[0]);
        let mismatch = vec3::dot(back, b0).atan2(vec3::dot(back, normals[0]));
        for (i, r) in normals.iter_mut().enumerate() {
            *r = vec3::rotate(*r, tangents[i], -mismatch * i as f64 / n as f64);
        }
    }
    normals
}

/// Tube of `radius` with `sides` vertices per ring. Open polylines get flat
/// end caps, so every tube is a closed surface: a torus for closed strands,
/// a sphere for open ones.
pub fn tube(poly: &Polyline, radius: f64, sides: usize) -> Result<TubeMesh> {
    if !(radius > 0.0) || sides < 3 {
        return Err(LkError::InvalidArgument(format!("tube radius {radius} / sides {sides}")));
    }
    let mut points: Vec<Point3> = Vec::with_capacity(poly.points.len());
    for &p in &poly.points {
        if points.last().is_none_or(|&q| vec3::dist(p, q) > 1e-12) {
            points.push(p);
        }
    }
    if poly.closed && points.len() > 1 && vec3::dist(points[0], points[points.len() - 1]) <= 1e-12 {
        points.pop();
    }
    let n = points.len();
    if n < 2 || (poly.closed && n < 3) {
        return Err(LkError::DegenerateGeometry(format!("component {} is too short for a tube", poly.id)));
    }
    let closed = poly.closed;
    let tangents: Vec<Point3> = (0..n)
        .map(|i| {
            let (prev, next) = if closed {
                (points[(i + n - 1) % n], points[(i + 1) % n])
            } else {
                (points[i.saturating_sub(1)], points[(i + 1).min(n - 1)])
            };
            let d = vec3::sub(next, prev);
            vec3::normalize(d)
                .or_else(|| vec3::normalize(vec3::sub(points[(i + 1) % n], points[i])))
                .unwrap_or([0.0, 0.0, 1.0])
        })
        .collect();
    let normals = frames(&points, &tangents, closed);

    let mut vertices = Vec::with_capacity(n * sides + 2);
    for i in 0..n {
        let r = normals[i];
        let b = vec3::cross(tangents[i], r);
        for j in 0..sides {
            let th = std::f64::consts::TAU * j as f64 / sides as f64;
            let dir = vec3::add(vec3::scale(r, th.cos()), vec3::scale(b, th.sin()));
            vertices.push(vec3::add(points[i], vec3::scale(dir, radius)));
        }
    }
    let at = |i: usize, j: usize| (i % n) * sides + j % sides;
    let mut triangles = Vec::new();
    let rings = if closed { n } else { n - 1 };
    for i in 0..rings {
        for j in 0..sides {
            triangles.push([at(i, j), at(i + 1, j + 1), at(i + 1, j)]);
            triangles.push([at(i, j), at(i, j + 1), at(i + 1, j + 1)]);
        }
    }
    if !closed {
        let start = vertices.len();
        vertices.push(points[0]);
        vertices.push(points[n - 1]);
        for j in 0..sides {
            triangles.push([start, at(0, j + 1), at(0, j)]);
            triangles.push([start + 1, at(n - 1, j), at(n - 1, j + 1)]);
        }
    }
    Ok(TubeMesh { vertices, triangles })
}
