//! Twisted-edge strand topology on labeled polygon meshes.
//!
//! Each edge of a (possibly non-manifold) polygon mesh carries an integer
//! twist. Strands run along the face boundaries and are permuted around each
//! edge by its twist; the resulting closed curves form knots, links and
//! chainmail-like interlocked rings. The crate provides
//!
//! * [`mesh`]: the labeled mesh with radial edge ordering,
//! * [`strands`]: strand tracing and the per-edge orbit law,
//! * [`design`]: spanning-tree knots, chainmail, tightening and orbit enumeration,
//! * [`periodic`]: lattices, periodic Voronoi scaffolds and infinite strands,
//! * [`geometry`]: polyline realization, tubes, linking numbers and OBJ export,
//! * [`document`]: the JSON document formats.

pub mod design;
pub mod document;
pub mod error;
pub mod exec;
pub mod fixtures;
pub mod geometry;
pub mod mesh;
pub mod passage;
pub mod periodic;
pub mod strands;
pub mod vec3;

pub use error::{LkError, Result};
pub use exec::Exec;
pub use mesh::{EdgeId, EdgeKey, FaceId, LabeledMesh, SlotId, VertexId};
pub use strands::{trace, StrandSet};
