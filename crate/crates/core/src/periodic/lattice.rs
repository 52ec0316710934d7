//! Bravais lattices in two and three dimensions.

use crate::error::{LkError, Result};
use crate::passage::Shift;
use crate::vec3::{self, Point3};

/// Names accepted by [`Lattice::preset`].
pub const PRESETS: [&str; 7] = ["sq", "hex", "cP", "hP", "oF", "cF", "cI"];

/// Axis ratios `a : b : c` used for the face-centred orthorhombic preset.
pub const OF_ASPECT: [f64; 3] = [1.0, 1.2, 1.5];

/// Lattice basis. Planar lattices live in the `z = 0` plane; vectors are
/// stored with three coordinates either way.
#[derive(Debug, Clone, PartialEq)]
pub struct Lattice {
    dim: usize,
    basis: Vec<Point3>,
    inverse: [[f64; 3]; 3],
}

fn det3(m: &[Point3; 3]) -> f64 {
    vec3::dot(m[0], vec3::cross(m[1], m[2]))
}

impl Lattice {
    /// Build from `N` basis vectors of `N` coordinates each (`N` = 2 or 3).
    pub fn new(basis: &[Vec<f64>]) -> Result<Self> {
        let dim = basis.len();
        if !(2..=3).contains(&dim) || basis.iter().any(|v| v.len() != dim) {
            return Err(LkError::InvalidArgument(format!(
                "a lattice needs 2 or 3 basis vectors of matching dimension, got {dim}"
            )));
        }
        if basis.iter().flatten().any(|c| !c.is_finite()) {
            return Err(LkError::DegenerateBasis);
        }
        let mut b: Vec<Point3> = basis
            .iter()
            .map(|v| [v[0], v[1], if dim == 3 { v[2] } else { 0.0 }])
            .collect();
        let m = if dim == 2 {
            [b[0], b[1], [0.0, 0.0, 1.0]]
        } else {
            [b[0], b[1], b[2]]
        };
        let det = det3(&m);
        let scale: f64 = m.iter().map(|v| vec3::norm(*v)).product();
        if !(det.abs() > 1e-9 * scale) {
            return Err(LkError::DegenerateBasis);
        }
        // Rows of the inverse are the reciprocal vectors.
        let inverse = [
            vec3::scale(vec3::cross(m[1], m[2]), 1.0 / det),
            vec3::scale(vec3::cross(m[2], m[0]), 1.0 / det),
            vec3::scale(vec3::cross(m[0], m[1]), 1.0 / det),
        ];
        b.truncate(dim);
        Ok(Lattice { dim, basis: b, inverse })
    }

    pub fn preset(name: &str) -> Result<Self> {
        let h = 3f64.sqrt() / 2.0;
        let [a, b, c] = OF_ASPECT;
        let basis: Vec<Vec<f64>> = match name {
            "sq" => vec![vec![1., 0.], vec![0., 1.]],
            "hex" => vec![vec![1., 0.], vec![0.5, h]],
            "cP" => vec![vec![1., 0., 0.], vec![0., 1., 0.], vec![0., 0., 1.]],
            "hP" => vec![vec![1., 0., 0.], vec![0.5, h, 0.], vec![0., 0., 1.]],
            "cI" => vec![vec![-0.5, 0.5, 0.5], vec![0.5, -0.5, 0.5], vec![0.5, 0.5, -0.5]],
            "cF" => vec![vec![0., 0.5, 0.5], vec![0.5, 0., 0.5], vec![0.5, 0.5, 0.]],
            "oF" => vec![
                vec![0., b / 2., c / 2.],
                vec![a / 2., 0., c / 2.],
                vec![a / 2., b / 2., 0.],
            ],
            _ => return Err(LkError::UnknownPreset(name.to_string())),
        };
        Lattice::new(&basis)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[Point3] {
        &self.basis
    }

    /// Basis as `N` vectors of `N` coordinates.
    pub fn basis_rows(&self) -> Vec<Vec<f64>> {
        self.basis.iter().map(|v| v[..self.dim].to_vec()).collect()
    }

    /// Cartesian position of the lattice translation `shift`.
    pub fn translation(&self, shift: Shift) -> Point3 {
        (0..self.dim).fold([0.0; 3], |acc, i| vec3::add(acc, vec3::scale(self.basis[i], shift[i] as f64)))
    }

    /// Cartesian position of fractional coordinates.
    pub fn to_cartesian(&self, frac: [f64; 3]) -> Point3 {
        (0..self.dim).fold([0.0; 3], |acc, i| vec3::add(acc, vec3::scale(self.basis[i], frac[i])))
    }

    /// Fractional coordinates of `p` (the unused third entry is zero in 2D).
    pub fn to_fractional(&self, p: Point3) -> [f64; 3] {
        let mut f = [0.0; 3];
        for (fi, row) in f.iter_mut().zip(&self.inverse).take(self.dim) {
            *fi = vec3::dot(*row, p);
        }
        f
    }

    /// All shifts with every coordinate in `-r..=r` (trailing axes fixed at 0).
    pub fn shifts_within(&self, r: i64) -> Vec<Shift> {
        let span = |i: usize| if i < self.dim { -r..=r } else { 0..=0 };
        let mut out = Vec::new();
        for x in span(0) {
            for y in span(1) {
                for z in span(2) {
                    out.push([x, y, z]);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_and_fractional_round_trip() {
        for name in PRESETS {
            let l = Lattice::preset(name).unwrap();
            let p = [0.3, -1.7, if l.dim() == 3 { 2.2 } else { 0.0 }];
            let q = l.to_cartesian(l.to_fractional(p));
            assert!(vec3::dist(p, q) < 1e-12, "{name}");
        }
        assert!(matches!(Lattice::preset("xx"), Err(LkError::UnknownPreset(_))));
    }

    #[test]
    fn degenerate_basis_rejected() {
        let r = Lattice::new(&[vec![1., 0., 0.], vec![2., 0., 0.], vec![0., 0., 1.]]);
        assert!(matches!(r, Err(LkError::DegenerateBasis)));
    }
}
