//! Voronoi cells by half-space clipping.
//!
//! A cell starts as a box around its site and is cut by the bisector plane
//! (or line, in the plane) of every other site, nearest first. Vertices that
//! land within the tolerance of an existing vertex are welded to it, which is
//! what keeps degenerate configurations such as the cubic lattice (eight
//! cells per vertex) consistent.

use crate::error::{LkError, Result};
use crate::vec3::{self, Point3};

/// Plane and weld tolerance, relative to the site spacing.
pub const TOLERANCE: f64 = 1e-9;

/// One facet of a 3D cell, counter-clockwise seen from outside, with the
/// index of the site on its other side.
#[derive(Debug, Clone, PartialEq)]
pub struct CellFacet {
    pub vertices: Vec<Point3>,
    pub neighbor: usize,
}

/// One side of a planar cell: it starts at `start` and separates the cell
/// from site `neighbor`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellSide {
    pub start: Point3,
    pub neighbor: usize,
}

fn sorted_sites(center: Point3, sites: &[Point3], tol: f64) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..sites.len())
        .filter(|&i| vec3::dist(sites[i], center) > tol)
        .collect();
    idx.sort_by(|&a, &b| {
        vec3::dist(sites[a], center)
            .total_cmp(&vec3::dist(sites[b], center))
            .then(a.cmp(&b))
    });
    idx
}

fn half_extent(center: Point3, sites: &[Point3]) -> f64 {
    sites
        .iter()
        .map(|&s| vec3::dist(s, center))
        .fold(0.0, f64::max)
        .max(1.0)
}

/// Voronoi cell of `center` among `sites` in the xy-plane, as a
/// counter-clockwise ring of sides. Sites coinciding with `center` are ignored.
pub fn polygon_cell(center: Point3, sites: &[Point3]) -> Result<Vec<CellSide>> {
    let r = half_extent(center, sites);
    let tol = TOLERANCE * r;
    let c = center;
    let mut ring: Vec<(Point3, Option<usize>)> = vec![
        ([c[0] - r, c[1] - r, 0.0], None),
        ([c[0] + r, c[1] - r, 0.0], None),
        ([c[0] + r, c[1] + r, 0.0], None),
        ([c[0] - r, c[1] + r, 0.0], None),
    ];
    for j in sorted_sites(center, sites, tol) {
        let n = vec3::sub(sites[j], center);
        let len = vec3::norm(n);
        let mid = vec3::lerp(center, sites[j], 0.5);
        let d = |p: Point3| vec3::dot(vec3::sub(p, mid), n) / len;
        if ring.iter().all(|&(p, _)| d(p) <= tol) {
            continue;
        }
        let mut out: Vec<(Point3, Option<usize>)> = Vec::new();
        let push = |out: &mut Vec<(Point3, Option<usize>)>, p: Point3, l: Option<usize>| {
            match out.last_mut() {
                Some(last) if vec3::dist(last.0, p) <= tol => last.1 = l,
                _ => out.push((p, l)),
            }
        };
        for i in 0..ring.len() {
            let (p, lp) = ring[i];
            let (q, _) = ring[(i + 1) % ring.len()];
            let (dp, dq) = (d(p), d(q));
            if dp <= tol {
                if dp >= -tol && dq > tol {
                    push(&mut out, p, Some(j));
                } else {
                    push(&mut out, p, lp);
                    if dp < -tol && dq > tol {
                        let x = vec3::lerp(p, q, dp / (dp - dq));
                        push(&mut out, x, Some(j));
                    }
                }
            } else if dq < -tol {
                let x = vec3::lerp(p, q, dp / (dp - dq));
                push(&mut out, x, lp);
            }
        }
        if out.len() > 1 && vec3::dist(out[0].0, out[out.len() - 1].0) <= tol {
            let last = out.pop().expect("nonempty");
            out[0].1 = out[0].1.or(last.1);
        }
        ring = out;
    }
    ring.into_iter()
        .map(|(start, n)| {
            n.map(|neighbor| CellSide { start, neighbor })
                .ok_or_else(|| LkError::DegenerateGeometry("unbounded planar Voronoi cell".into()))
        })
        .collect()
}

struct Poly {
    verts: Vec<Point3>,
    faces: Vec<(Vec<usize>, Option<usize>)>,
    tol: f64,
}

impl Poly {
    fn weld(&mut self, p: Point3) -> usize {
        if let Some(i) = self.verts.iter().position(|&v| vec3::dist(v, p) <= self.tol) {
            return i;
        }
        self.verts.push(p);
        self.verts.len() - 1
    }

    fn clip(&mut self, normal: Point3, mid: Point3, label: usize) {
        let len = vec3::norm(normal);
        let tol = self.tol;
        let d: Vec<f64> = self
            .verts
            .iter()
            .map(|&p| vec3::dot(vec3::sub(p, mid), normal) / len)
            .collect();
        let used: Vec<bool> = {
            let mut u = vec![false; self.verts.len()];
            self.faces.iter().flat_map(|f| &f.0).for_each(|&i| u[i] = true);
            u
        };
        if (0..self.verts.len()).all(|i| !used[i] || d[i] <= tol) {
            return;
        }
        let mut on_plane: Vec<usize> = Vec::new();
        let faces = std::mem::take(&mut self.faces);
        for (poly, lab) in faces {
            let mut out: Vec<usize> = Vec::new();
            for i in 0..poly.len() {
                let (a, b) = (poly[i], poly[(i + 1) % poly.len()]);
                let (da, db) = (d[a], d[b]);
                if da <= tol {
                    out.push(a);
                    if da.abs() <= tol {
                        on_plane.push(a);
                    }
                }
                if (da < -tol && db > tol) || (da > tol && db < -tol) {
                    let p = vec3::lerp(self.verts[a], self.verts[b], da / (da - db));
                    let x = self.weld(p);
                    out.push(x);
                    on_plane.push(x);
                }
            }
            out.dedup();
            while out.len() > 1 && out.first() == out.last() {
                out.pop();
            }
            if out.len() >= 3 {
                self.faces.push((out, lab));
            }
        }
        on_plane.sort_unstable();
        on_plane.dedup();
        if on_plane.len() >= 3 {
            let n = vec3::scale(normal, 1.0 / len);
            let (_, u, w) = vec3::edge_frame([0.0; 3], n).expect("nonzero normal");
            let c = vec3::centroid(on_plane.iter().map(|&i| &self.verts[i]));
            let ang = |i: usize| {
                let q = vec3::sub(self.verts[i], c);
                vec3::dot(q, w).atan2(vec3::dot(q, u))
            };
            on_plane.sort_by(|&a, &b| ang(a).total_cmp(&ang(b)));
            self.faces.push((on_plane, Some(label)));
        }
    }
}

/// Voronoi cell of `center` among `sites` in space, as outward-oriented facets.
pub fn polyhedron_cell(center: Point3, sites: &[Point3]) -> Result<Vec<CellFacet>> {
    let r = half_extent(center, sites);
    let mut poly = Poly { verts: Vec::new(), faces: Vec::new(), tol: TOLERANCE * r };
    for i in 0..8 {
        let p = [
            center[0] + if i & 1 == 0 { -r } else { r },
            center[1] + if i & 2 == 0 { -r } else { r },
            center[2] + if i & 4 == 0 { -r } else { r },
        ];
        poly.verts.push(p);
    }
    for f in [
        [0, 2, 3, 1],
        [4, 5, 7, 6],
        [0, 1, 5, 4],
        [2, 6, 7, 3],
        [0, 4, 6, 2],
        [1, 3, 7, 5],
    ] {
        poly.faces.push((f.to_vec(), None));
    }
    for j in sorted_sites(center, sites, poly.tol) {
        let n = vec3::sub(sites[j], center);
        poly.clip(n, vec3::lerp(center, sites[j], 0.5), j);
    }
    poly.faces
        .into_iter()
        .map(|(f, lab)| {
            let neighbor =
                lab.ok_or_else(|| LkError::DegenerateGeometry("unbounded Voronoi cell".into()))?;
            Ok(CellFacet { vertices: f.iter().map(|&i| poly.verts[i]).collect(), neighbor })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(dim: usize) -> Vec<Point3> {
        let mut v = Vec::new();
        for x in -2..=2 {
            for y in -2..=2 {
                for z in if dim == 3 { -2..=2 } else { 0..=0 } {
                    v.push([x as f64, y as f64, z as f64]);
                }
            }
        }
        v
    }

    #[test]
    fn cubic_cell_is_a_cube() {
        let cell = polyhedron_cell([0.0; 3], &grid(3)).unwrap();
        assert_eq!(cell.len(), 6);
        assert!(cell.iter().all(|f| f.vertices.len() == 4));
        for f in &cell {
            let n = vec3::newell_normal(&f.vertices);
            let c = vec3::centroid(f.vertices.iter());
            assert!(vec3::dot(n, c) > 0.0, "outward");
        }
    }

    #[test]
    fn square_cell_is_a_square() {
        let cell = polygon_cell([0.0; 3], &grid(2)).unwrap();
        assert_eq!(cell.len(), 4);
        let pts: Vec<Point3> = cell.iter().map(|s| s.start).collect();
        assert!(vec3::newell_normal(&pts)[2] > 0.0);
    }
}
