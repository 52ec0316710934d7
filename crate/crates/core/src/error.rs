use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Error)]
pub enum LkError {
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error("vertex {0} has a non-finite coordinate")]
    NonFiniteVertex(usize),
    #[error("face {face} references unknown vertex {vertex}")]
    UnknownVertex { face: usize, vertex: usize },
    #[error("face {face} has {len} vertices; at least 3 are required")]
    ShortFace { face: usize, len: usize },
    #[error("face {face} repeats vertex {vertex} on consecutive corners")]
    RepeatedVertex { face: usize, vertex: usize },
    #[error("face {face} is degenerate around edge ({a}, {b})")]
    DegenerateFace { face: usize, a: usize, b: usize },
    #[error("edge ({0}, {1}) is not written as (a, b) with a < b")]
    NonCanonicalEdge(usize, usize),
    #[error("no edge ({0}, {1}) exists in the mesh")]
    UnknownEdge(usize, usize),
    #[error("edge ({0}, {1}) is labeled more than once")]
    DuplicateTwist(usize, usize),
    #[error("face {face} has no occurrence {occurrence} of edge ({a}, {b})")]
    UnknownSide {
        face: usize,
        a: usize,
        b: usize,
        occurrence: usize,
    },
    #[error("edge ({a}, {b}) has degree {degree}; this operation needs degree at most 2")]
    NonManifoldEdge { a: usize, b: usize, degree: usize },
    #[error("dual graph is disconnected ({0} components)")]
    DisconnectedDual(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("lattice basis is degenerate")]
    DegenerateBasis,
    #[error("unknown lattice preset `{0}`")]
    UnknownPreset(String),
    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),
    #[error("curves touch or intersect (distance {0:e})")]
    CurvesTouch(f64),
    #[error("linking sum {0} is not within tolerance of an integer")]
    NonIntegralLinking(f64),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, LkError>;
