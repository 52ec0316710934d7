//! Small fixed-size vector helpers shared by the geometric modules.

pub type Point3 = [f64; 3];

#[inline]
pub fn add(a: Point3, b: Point3) -> Point3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

#[inline]
pub fn sub(a: Point3, b: Point3) -> Point3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

#[inline]
pub fn scale(a: Point3, s: f64) -> Point3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

#[inline]
pub fn dot(a: Point3, b: Point3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
pub fn cross(a: Point3, b: Point3) -> Point3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

#[inline]
pub fn norm(a: Point3) -> f64 {
    dot(a, a).sqrt()
}

#[inline]
pub fn dist(a: Point3, b: Point3) -> f64 {
    norm(sub(a, b))
}

/// Unit vector along `a`, or `None` when `a` is (numerically) zero.
pub fn normalize(a: Point3) -> Option<Point3> {
    let n = norm(a);
    if n > 1e-300 && n.is_finite() {
        Some(scale(a, 1.0 / n))
    } else {
        None
    }
}

pub fn lerp(a: Point3, b: Point3, t: f64) -> Point3 {
    add(a, scale(sub(b, a), t))
}

pub fn centroid<'a, I: IntoIterator<Item = &'a Point3>>(points: I) -> Point3 {
    let mut acc = [0.0; 3];
    let mut n = 0usize;
    for p in points {
        acc = add(acc, *p);
        n += 1;
    }
    if n == 0 {
        acc
    } else {
        scale(acc, 1.0 / n as f64)
    }
}

/// Newell normal of a polygon (unnormalized; length is twice the area for planar input).
pub fn newell_normal(points: &[Point3]) -> Point3 {
    let mut n = [0.0; 3];
    for i in 0..points.len() {
        let p = points[i];
        let q = points[(i + 1) % points.len()];
        n[0] += (p[1] - q[1]) * (p[2] + q[2]);
        n[1] += (p[2] - q[2]) * (p[0] + q[0]);
        n[2] += (p[0] - q[0]) * (p[1] + q[1]);
    }
    n
}

/// Right-handed orthonormal frame `(axis, u, w)` around the direction `a -> b`.
///
/// `u` is built from the world axis least aligned with the edge so the frame
/// depends only on the edge itself.
pub fn edge_frame(a: Point3, b: Point3) -> Option<(Point3, Point3, Point3)> {
    let axis = normalize(sub(b, a))?;
    let k = (0..3)
        .min_by(|&i, &j| axis[i].abs().total_cmp(&axis[j].abs()))
        .unwrap_or(0);
    let mut r = [0.0; 3];
    r[k] = 1.0;
    let u = normalize(sub(r, scale(axis, dot(r, axis))))?;
    let w = cross(axis, u);
    Some((axis, u, w))
}

/// Rotate `v` about the unit vector `axis` by `angle` (Rodrigues).
pub fn rotate(v: Point3, axis: Point3, angle: f64) -> Point3 {
    let (s, c) = angle.sin_cos();
    let k_cross_v = cross(axis, v);
    let k_dot_v = dot(axis, v);
    add(
        add(scale(v, c), scale(k_cross_v, s)),
        scale(axis, k_dot_v * (1.0 - c)),
    )
}

/// Squared distance between segments `p0p1` and `q0q1`.
pub fn segment_distance_sq(p0: Point3, p1: Point3, q0: Point3, q1: Point3) -> f64 {
    let d1 = sub(p1, p0);
    let d2 = sub(q1, q0);
    let r = sub(p0, q0);
    let a = dot(d1, d1);
    let e = dot(d2, d2);
    let f = dot(d2, r);
    let eps = 1e-300;
    let (s, t);
    if a <= eps && e <= eps {
        return dot(r, r);
    }
    if a <= eps {
        s = 0.0;
        t = (f / e).clamp(0.0, 1.0);
    } else {
        let c = dot(d1, r);
        if e <= eps {
            t = 0.0;
            s = (-c / a).clamp(0.0, 1.0);
        } else {
            let b = dot(d1, d2);
            let denom = a * e - b * b;
            let mut s0 = if denom > 0.0 {
                ((b * f - c * e) / denom).clamp(0.0, 1.0)
            } else {
                0.0
            };
            let mut t0 = (b * s0 + f) / e;
            if t0 < 0.0 {
                t0 = 0.0;
                s0 = (-c / a).clamp(0.0, 1.0);
            } else if t0 > 1.0 {
                t0 = 1.0;
                s0 = ((b - c) / a).clamp(0.0, 1.0);
            }
            s = s0;
            t = t0;
        }
    }
    let cp = add(p0, scale(d1, s));
    let cq = add(q0, scale(d2, t));
    let d = sub(cp, cq);
    dot(d, d)
}
