//! Wavefront OBJ output.
//!
//! One object group and one material per strand component. Coordinates are
//! written with six decimals so files are byte-identical across runs.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::Result;
use crate::vec3::Point3;

use super::realize::StrandGeometry;
use super::tube::{tube, TubeMesh};

const PALETTE: [[f64; 3]; 8] = [
    [0.894, 0.102, 0.110],
    [0.216, 0.494, 0.722],
    [0.302, 0.686, 0.290],
    [0.596, 0.306, 0.639],
    [1.000, 0.498, 0.000],
    [0.651, 0.337, 0.157],
    [0.969, 0.506, 0.749],
    [0.400, 0.400, 0.400],
];

/// Tube settings for OBJ output; `None` writes bare polylines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TubeStyle {
    pub radius: f64,
    pub sides: usize,
}

fn fixed(x: f64) -> String {
    let x = if x.abs() < 5e-7 { 0.0 } else { x };
    format!("{x:.6}")
}

fn vertex_line(out: &mut String, p: Point3) {
    let _ = writeln!(out, "v {} {} {}", fixed(p[0]), fixed(p[1]), fixed(p[2]));
}

pub fn material_name(id: usize) -> String {
    format!("strand_{id}")
}

/// OBJ text for `geom`. `mtllib` names the material library to reference.
pub fn obj_string(geom: &StrandGeometry, style: Option<TubeStyle>, mtllib: Option<&str>) -> Result<String> {
    let tubes: Option<Vec<TubeMesh>> = style
        .map(|s| geom.components.iter().map(|c| tube(c, s.radius, s.sides)).collect::<Result<_>>())
        .transpose()?;
    let mut out = String::new();
    if let Some(lib) = mtllib {
        let _ = writeln!(out, "mtllib {lib}");
    }
    let mut base = 1usize;
    for (k, comp) in geom.components.iter().enumerate() {
        let _ = writeln!(out, "o strand_{}", comp.id);
        let _ = writeln!(out, "usemtl {}", material_name(comp.id));
        match &tubes {
            Some(t) => {
                let mesh = &t[k];
                mesh.vertices.iter().for_each(|&p| vertex_line(&mut out, p));
                for tri in &mesh.triangles {
                    let _ = writeln!(out, "f {} {} {}", tri[0] + base, tri[1] + base, tri[2] + base);
                }
                base += mesh.vertices.len();
            }
            None => {
                comp.points.iter().for_each(|&p| vertex_line(&mut out, p));
                let n = comp.points.len();
                let mut idx: Vec<String> = (0..n).map(|i| (base + i).to_string()).collect();
                if comp.closed && n > 0 {
                    idx.push(base.to_string());
                }
                let _ = writeln!(out, "l {}", idx.join(" "));
                base += n;
            }
        }
    }
    Ok(out)
}

pub fn mtl_string(geom: &StrandGeometry) -> String {
    let mut out = String::new();
    for comp in &geom.components {
        let c = PALETTE[comp.id % PALETTE.len()];
        let _ = writeln!(out, "newmtl {}", material_name(comp.id));
        let _ = writeln!(out, "Kd {:.3} {:.3} {:.3}", c[0], c[1], c[2]);
        let _ = writeln!(out, "Ka 0.000 0.000 0.000");
        let _ = writeln!(out, "Ks 0.200 0.200 0.200");
        let _ = writeln!(out, "Ns 32.000");
        out.push('\n');
    }
    out
}

/// Write `path` (OBJ) and a sibling `.mtl` file.
pub fn export_obj(path: &Path, geom: &StrandGeometry, style: Option<TubeStyle>) -> Result<()> {
    let mtl_path = path.with_extension("mtl");
    let lib = mtl_path
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "strands.mtl".into());
    std::fs::write(path, obj_string(geom, style, Some(&lib))?)?;
    std::fs::write(&mtl_path, mtl_string(geom))?;
    Ok(())
}
