//! Reference meshes: platonic solids, two-sided polygons, books and random
//! convex triangulations.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::mesh::LabeledMesh;
use crate::vec3::{self, Point3};

fn build(vertices: Vec<Point3>, faces: Vec<Vec<usize>>) -> LabeledMesh {
    LabeledMesh::new(vertices, faces).expect("fixture meshes are valid")
}

/// Regular tetrahedron with outward-oriented faces.
pub fn tetrahedron() -> LabeledMesh {
    build(
        vec![[1., 1., 1.], [1., -1., -1.], [-1., 1., -1.], [-1., -1., 1.]],
        vec![vec![0, 1, 2], vec![0, 3, 1], vec![0, 2, 3], vec![1, 3, 2]],
    )
}

/// Unit cube `[-1, 1]^3`; vertex `i` has coordinates given by the bits of `i` (x = bit 0).
pub fn cube() -> LabeledMesh {
    let vertices = (0..8)
        .map(|i| {
            [
                if i & 1 == 0 { -1.0 } else { 1.0 },
                if i & 2 == 0 { -1.0 } else { 1.0 },
                if i & 4 == 0 { -1.0 } else { 1.0 },
            ]
        })
        .collect();
    build(
        vertices,
        vec![
            vec![0, 2, 3, 1],
            vec![4, 5, 7, 6],
            vec![0, 1, 5, 4],
            vec![2, 6, 7, 3],
            vec![0, 4, 6, 2],
            vec![1, 3, 7, 5],
        ],
    )
}

pub fn octahedron() -> LabeledMesh {
    convex_hull_mesh(vec![
        [1., 0., 0.],
        [-1., 0., 0.],
        [0., 1., 0.],
        [0., -1., 0.],
        [0., 0., 1.],
        [0., 0., -1.],
    ])
}

pub fn icosahedron() -> LabeledMesh {
    let p = (1.0 + 5f64.sqrt()) / 2.0;
    let mut v = Vec::new();
    for &a in &[-1.0, 1.0] {
        for &b in &[-p, p] {
            v.push([0.0, a, b]);
            v.push([a, b, 0.0]);
            v.push([b, 0.0, a]);
        }
    }
    convex_hull_mesh(v)
}

/// Regular `n`-gon in the xy-plane glued to a reversed copy of itself.
pub fn two_sided_polygon(n: usize) -> LabeledMesh {
    let vertices = (0..n)
        .map(|i| {
            let a = TAU * i as f64 / n as f64;
            [a.cos(), a.sin(), 0.0]
        })
        .collect();
    let front: Vec<usize> = (0..n).collect();
    let back: Vec<usize> = (0..n).rev().collect();
    build(vertices, vec![front, back])
}

/// `k` triangular pages around the spine `(0, 1)` along the z axis, at evenly
/// spaced angles starting from +x.
pub fn book(k: usize) -> LabeledMesh {
    let mut vertices = vec![[0., 0., 0.], [0., 0., 1.]];
    let mut faces = Vec::new();
    for j in 0..k {
        let a = TAU * j as f64 / k as f64;
        vertices.push([a.cos(), a.sin(), 0.5]);
        faces.push(vec![0, 1, 2 + j]);
    }
    build(vertices, faces)
}

/// Two triangles sharing one edge.
pub fn strip() -> LabeledMesh {
    book(2)
}

/// Convex hull of points in general position, faces oriented outward.
///
/// Brute force over vertex triples; intended for the small point sets used in
/// fixtures and tests.
pub fn convex_hull_mesh(points: Vec<Point3>) -> LabeledMesh {
    let n = points.len();
    let c = vec3::centroid(points.iter());
    let mut faces = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let nrm = vec3::cross(
                    vec3::sub(points[j], points[i]),
                    vec3::sub(points[k], points[i]),
                );
                let side = |p: Point3| vec3::dot(nrm, vec3::sub(p, points[i]));
                let eps = 1e-9 * vec3::norm(nrm);
                let (mut pos, mut neg) = (false, false);
                for (m, &p) in points.iter().enumerate() {
                    if m == i || m == j || m == k {
                        continue;
                    }
                    let s = side(p);
                    pos |= s > eps;
                    neg |= s < -eps;
                }
                if pos && neg {
                    continue;
                }
                if side(c) > 0.0 {
                    faces.push(vec![i, k, j]);
                } else {
                    faces.push(vec![i, j, k]);
                }
            }
        }
    }
    build(points, faces)
}

/// Triangulated sphere: convex hull of `n >= 4` random points on the unit sphere.
pub fn random_sphere(n: usize, seed: u64) -> LabeledMesh {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = (0..n.max(4))
        .map(|_| loop {
            let p = [
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            ];
            if let Some(q) = vec3::normalize(p) {
                if vec3::norm(p) <= 1.0 {
                    break q;
                }
            }
        })
        .collect();
    convex_hull_mesh(points)
}
