//! Write the built-in fixture meshes as `.lkm` documents.
//!
//! `cargo run -p lk-core --example write_fixtures -- data`

use std::path::PathBuf;

use lk_core::document::LkmDocument;
use lk_core::fixtures::{book, cube, icosahedron, octahedron, strip, tetrahedron, two_sided_polygon};

fn main() -> lk_core::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "data".into()));
    std::fs::create_dir_all(&dir)?;
    let fixtures = [
        ("tetra", tetrahedron()),
        ("cube", cube()),
        ("octahedron", octahedron()),
        ("icosahedron", icosahedron()),
        ("two_sided_square", two_sided_polygon(4)),
        ("two_sided_octagon", two_sided_polygon(8)),
        ("book3", book(3)),
        ("strip", strip()),
    ];
    for (name, mesh) in fixtures {
        let path = dir.join(format!("{name}.lkm"));
        LkmDocument::from_mesh(&mesh).write(&path)?;
        println!("{}", path.display());
    }
    Ok(())
}
