//! Linking numbers and separation of realized strands.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{LkError, Result};
use crate::exec::Exec;
use crate::vec3::{self, Point3};

use super::realize::{Polyline, StrandGeometry};

/// Largest distance from an integer the Gauss sum may have.
pub const LINKING_TOLERANCE: f64 = 1e-6;

fn closed_segments(points: &[Point3]) -> Vec<(Point3, Point3)> {
    let n = points.len();
    (0..n).map(|i| (points[i], points[(i + 1) % n])).collect()
}

/// Signed solid angle of the spherical triangle `a, b, c` seen from the
/// origin (Van Oosterom and Strackee).
fn triangle_solid_angle(a: Point3, b: Point3, c: Point3) -> f64 {
    let (la, lb, lc) = (vec3::norm(a), vec3::norm(b), vec3::norm(c));
    let num = vec3::dot(a, vec3::cross(b, c));
    let den = la * lb * lc + vec3::dot(a, b) * lc + vec3::dot(a, c) * lb + vec3::dot(b, c) * la;
    2.0 * num.atan2(den)
}

/// Gauss integral over segment pair `(p1, p2)`, `(p3, p4)`: the signed solid
/// angle of the quadrilateral of difference vectors, divided by `4 pi`.
/// Splitting it into two triangles keeps collinear configurations exact.
fn segment_pair(p1: Point3, p2: Point3, p3: Point3, p4: Point3) -> f64 {
    let r13 = vec3::sub(p3, p1);
    let r14 = vec3::sub(p4, p1);
    let r23 = vec3::sub(p3, p2);
    let r24 = vec3::sub(p4, p2);
    -(triangle_solid_angle(r13, r14, r24) + triangle_solid_angle(r13, r24, r23)) / (4.0 * PI)
}

/// Discrete Gauss linking integral of two closed polygons: the exact sum of
/// the solid angles of all segment pairs.
pub fn gauss_sum(a: &[Point3], b: &[Point3]) -> f64 {
    let sa = closed_segments(a);
    let sb = closed_segments(b);
    sa.iter()
        .map(|&(p1, p2)| sb.iter().map(|&(p3, p4)| segment_pair(p1, p2, p3, p4)).sum::<f64>())
        .sum()
}

/// Smallest distance between any segment of `a` and any segment of `b`.
pub fn polyline_distance(a: &Polyline, b: &Polyline) -> f64 {
    let mut best = f64::INFINITY;
    let bsegs: Vec<(Point3, Point3)> = b.segments().collect();
    for (p0, p1) in a.segments() {
        for &(q0, q1) in &bsegs {
            // Cheap reject: coordinate gaps bound the distance from below.
            let mut gap2 = 0.0;
            for i in 0..3 {
                let (l, h) = (p0[i].min(p1[i]), p0[i].max(p1[i]));
                let (m, k) = (q0[i].min(q1[i]), q0[i].max(q1[i]));
                let g = (m - h).max(l - k).max(0.0);
                gap2 += g * g;
            }
            if gap2 >= best * best {
                continue;
            }
            best = best.min(vec3::segment_distance_sq(p0, p1, q0, q1).sqrt());
        }
    }
    best
}

/// Linking number of two disjoint closed polygons.
pub fn linking_number(a: &Polyline, b: &Polyline) -> Result<i64> {
    if !a.closed || !b.closed {
        return Err(LkError::InvalidArgument("linking numbers need closed curves".into()));
    }
    let scale = a
        .points
        .iter()
        .chain(&b.points)
        .map(|p| vec3::norm(*p))
        .fold(1.0, f64::max);
    let d = polyline_distance(a, b);
    if d <= 1e-9 * scale {
        return Err(LkError::CurvesTouch(d));
    }
    let s = gauss_sum(&a.points, &b.points);
    let r = s.round();
    if (s - r).abs() >= LINKING_TOLERANCE {
        return Err(LkError::NonIntegralLinking(s));
    }
    Ok(r as i64)
}

/// Pairwise linking numbers of the closed components.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinkingMatrix {
    /// Component ids of the rows and columns.
    pub ids: Vec<usize>,
    pub values: Vec<Vec<i64>>,
    pub warnings: Vec<String>,
}

impl LinkingMatrix {
    pub fn get(&self, a: usize, b: usize) -> Option<i64> {
        let i = self.ids.iter().position(|&x| x == a)?;
        let j = self.ids.iter().position(|&x| x == b)?;
        Some(self.values[i][j])
    }
}

pub fn linking_matrix(geom: &StrandGeometry, exec: Exec) -> Result<LinkingMatrix> {
    let closed: Vec<&Polyline> = geom.components.iter().filter(|c| c.closed).collect();
    let warnings = geom
        .components
        .iter()
        .filter(|c| !c.closed)
        .map(|c| format!("component {} is open and was left out of the linking matrix", c.id))
        .collect();
    let n = closed.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let values = exec.map(&pairs, |&(i, j)| linking_number(closed[i], closed[j]));
    let mut m = vec![vec![0i64; n]; n];
    for (&(i, j), v) in pairs.iter().zip(values) {
        let v = v?;
        m[i][j] = v;
        m[j][i] = v;
    }
    Ok(LinkingMatrix { ids: closed.iter().map(|c| c.id).collect(), values: m, warnings })
}

/// Smallest distance between two different components (infinite if fewer than two).
pub fn min_separation(geom: &StrandGeometry, exec: Exec) -> f64 {
    let n = geom.components.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    exec.map(&pairs, |&(i, j)| polyline_distance(&geom.components[i], &geom.components[j]))
        .into_iter()
        .fold(f64::INFINITY, f64::min)
}
