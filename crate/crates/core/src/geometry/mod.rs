//! Space curves, tubes and linking numbers for traced strands.

mod export;
mod linking;
mod realize;
mod tube;

pub use export::{export_obj, material_name, mtl_string, obj_string, TubeStyle};
pub use linking::{
    gauss_sum, linking_matrix, linking_number, min_separation, polyline_distance, LinkingMatrix,
    LINKING_TOLERANCE,
};
pub use realize::{default_tube_radius, realize, Polyline, RealizeParams, StrandGeometry};
pub use tube::{tube, TubeMesh};

use crate::error::Result;
use crate::exec::Exec;
use crate::mesh::LabeledMesh;
use crate::strands::trace;

/// Tube radius that fits: the requested one, or 45% of the smallest gap
/// between components when that is tighter.
pub fn fitted_radius(geom: &StrandGeometry, requested: f64, exec: Exec) -> f64 {
    let gap = min_separation(geom, exec);
    if gap.is_finite() && 2.0 * requested >= gap {
        0.45 * gap
    } else {
        requested
    }
}

/// Trace and realize in one step.
pub fn realize_mesh(mesh: &LabeledMesh, params: &RealizeParams) -> Result<StrandGeometry> {
    realize(mesh, &trace(mesh), params)
}
