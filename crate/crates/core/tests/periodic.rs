use itertools::Itertools;
use lk_core::periodic::{
    periodic_scaffold, preset_scaffold, tile, trace_periodic, wigner_seitz, Lattice, PeriodicKind, PRESETS,
};
use lk_core::strands::trace;

fn uniform(name: &str, t: i64) -> lk_core::periodic::PeriodicStrandSet {
    let mut p = preset_scaffold(name).unwrap();
    p.set_uniform_twist(t);
    trace_periodic(&p)
}

#[test]
fn wigner_seitz_cells() {
    let cube = wigner_seitz(&Lattice::preset("cP").unwrap()).unwrap();
    assert_eq!((cube.face_count(), cube.edge_count()), (6, 12));
    let to = wigner_seitz(&Lattice::preset("cI").unwrap()).unwrap();
    assert_eq!((to.face_count(), to.edge_count()), (14, 36));
    let sizes = to.faces().iter().map(|f| f.len()).counts();
    assert_eq!((sizes[&6], sizes[&4]), (8, 6));
    let rd = wigner_seitz(&Lattice::preset("cF").unwrap()).unwrap();
    assert_eq!((rd.face_count(), rd.edge_count()), (12, 24));
    let hp = wigner_seitz(&Lattice::preset("hP").unwrap()).unwrap();
    assert_eq!(hp.face_count(), 8);
    let sq = wigner_seitz(&Lattice::preset("sq").unwrap()).unwrap();
    assert_eq!(sq.edge_count(), 4);
    let hex = wigner_seitz(&Lattice::preset("hex").unwrap()).unwrap();
    assert_eq!(hex.edge_count(), 6);
    for name in PRESETS {
        let cell = wigner_seitz(&Lattice::preset(name).unwrap()).unwrap();
        let expect = if name == "sq" || name == "hex" { 1 } else { 2 };
        assert!(cell.edges().iter().all(|e| e.degree() == expect), "{name}");
    }
}

#[test]
fn scaffold_class_counts() {
    let cp = preset_scaffold("cP").unwrap();
    assert_eq!((cp.vertices().len(), cp.class_count(), cp.faces().len()), (1, 3, 3));
    assert!(cp.edges().iter().all(|e| e.degree() == 4));
    let ci = preset_scaffold("cI").unwrap();
    assert_eq!((ci.vertices().len(), ci.class_count(), ci.faces().len()), (6, 12, 7));
    assert!(ci.edges().iter().all(|e| e.degree() == 3));
    let sq = preset_scaffold("sq").unwrap();
    assert_eq!(sq.class_count(), 2);
    assert!(sq.edges().iter().all(|e| e.degree() == 2));
    assert_eq!(preset_scaffold("hex").unwrap().class_count(), 3);
    for name in ["hP", "cF", "oF"] {
        let p = preset_scaffold(name).unwrap();
        assert!(p.edges().iter().all(|e| e.degree() >= 3), "{name}");
    }
}

#[test]
fn cubic_edge_classes_follow_the_axes() {
    let cp = preset_scaffold("cP").unwrap();
    let deltas: Vec<[i64; 3]> = cp.edges().iter().map(|e| e.key.delta).collect();
    assert_eq!(deltas, vec![[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
}

#[test]
fn face_centre_generators() {
    let l = Lattice::preset("cP").unwrap();
    let p = periodic_scaffold(&l, &[vec![0.5, 0.5, 0.0], vec![0.5, 0.0, 0.5], vec![0.0, 0.5, 0.5]]).unwrap();
    assert_eq!(p.faces().len(), 12);
    let degrees = p.edges().iter().map(|e| e.degree()).counts();
    assert_eq!(p.class_count(), 11);
    assert_eq!((degrees[&3], degrees[&4]), (8, 3));
}

#[test]
fn cubic_uniform_counts() {
    let counts: Vec<usize> = (0..=4).map(|t| uniform("cP", t).count()).collect();
    assert_eq!(counts, vec![3, 4, 6, 4, 3]);
    assert_eq!(uniform("cP", 0).closed_count(), 3);
}

#[test]
fn truncated_octahedral_uniform_counts() {
    for t in 0..=4 {
        assert_eq!(uniform("cI", t).count(), 7, "t={t}");
    }
}

#[test]
fn planar_weaves() {
    let sq = uniform("sq", 1);
    assert_eq!(sq.closed_count(), 0);
    assert_eq!(sq.direction_classes().len(), 2);
    let hex = uniform("hex", 1);
    assert_eq!(hex.closed_count(), 0);
    assert_eq!(hex.direction_classes().len(), 3);
    for name in ["sq", "hex"] {
        let s = uniform(name, 0);
        assert!(s.components.iter().all(|c| c.kind == PeriodicKind::Closed));
    }
}

/// Permutations of a class vector (in class order x, y, z) reproducing the
/// expected count and structure repeat box.
fn matching_permutations(v: [i64; 3], count: usize, rbox: [usize; 3]) -> Vec<Vec<i64>> {
    let cp = preset_scaffold("cP").unwrap();
    v.iter()
        .copied()
        .permutations(3)
        .unique()
        .filter(|perm| {
            let s = trace_periodic(&cp.with_class_twists(perm).unwrap());
            s.count() == count && s.structure_repeat_box() == rbox
        })
        .collect()
}

#[test]
fn non_uniform_cubic_vectors() {
    assert_eq!(matching_permutations([2, 1, 1], 1, [4, 2, 2]), vec![vec![2, 1, 1]]);
    let closed = matching_permutations([-1, 0, 1], 1, [2, 1, 2]);
    assert!(!closed.is_empty());
    for perm in &closed {
        let cp = preset_scaffold("cP").unwrap().with_class_twists(perm).unwrap();
        assert_eq!(trace_periodic(&cp).components[0].kind, PeriodicKind::Closed);
    }
    assert_eq!(matching_permutations([1, 3, 1], 2, [1, 2, 1]), vec![vec![1, 3, 1]]);
    assert_eq!(matching_permutations([2, 3, 2], 3, [1, 4, 1]), vec![vec![2, 3, 2]]);
}

#[test]
fn infinite_thread_of_211() {
    let cp = preset_scaffold("cP").unwrap().with_class_twists(&[2, 1, 1]).unwrap();
    let s = trace_periodic(&cp);
    assert_eq!(s.count(), 1);
    assert_eq!(s.components[0].kind, PeriodicKind::Infinite);
    assert_eq!(s.components[0].closure_offset.iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![4, 0, 0]);
}

#[test]
fn fundamental_domain_choice_is_irrelevant() {
    for (name, t) in [("cP", 1), ("cI", 2), ("hex", 1), ("sq", 1)] {
        let mut p = preset_scaffold(name).unwrap();
        p.set_uniform_twist(t);
        let a = trace_periodic(&p);
        let shifted = p.with_face_translated(0, [1, -2, if p.dim() == 3 { 3 } else { 0 }]).unwrap();
        let b = trace_periodic(&shifted);
        assert_eq!(a.count(), b.count(), "{name}");
        assert_eq!(a.direction_classes(), b.direction_classes(), "{name}");
        let mut wa: Vec<Vec<i64>> = a.components.iter().map(|c| c.closure_offset.clone()).collect();
        let mut wb: Vec<Vec<i64>> = b.components.iter().map(|c| c.closure_offset.clone()).collect();
        wa.sort();
        wb.sort();
        assert_eq!(wa, wb);
    }
}

#[test]
fn class_substitution_invariance() {
    let cp = preset_scaffold("cP").unwrap();
    let base = trace_periodic(&cp.with_class_twists(&[2, 1, 1]).unwrap()).partition();
    let moved = trace_periodic(&cp.with_class_twists(&[-2, 5, 1]).unwrap()).partition();
    assert_eq!(base, moved);
}

#[test]
fn closure_offsets_are_self_consistent() {
    let cp = preset_scaffold("cP").unwrap().with_class_twists(&[2, 1, 1]).unwrap();
    let s = trace_periodic(&cp);
    for c in &s.components {
        // Walking a second period lands exactly one closure offset further.
        let visits = c.slots.len();
        assert_eq!(c.cells.len(), visits);
        assert_eq!(c.cells[0], [0, 0, 0]);
    }
}

#[test]
fn tiles() {
    let cp = preset_scaffold("cP").unwrap();
    let one = tile(&cp, &[1, 1, 1]).unwrap();
    assert_eq!((one.face_count(), one.edge_count()), (6, 12));
    let block = tile(&cp, &[2, 2, 2]).unwrap();
    assert_eq!(block.face_count(), 36);
    assert!(block.edges().iter().any(|e| e.degree() == 4));
    assert_eq!(block.edges().iter().filter(|e| e.degree() == 4).count(), 6);
    let ci = tile(&preset_scaffold("cI").unwrap(), &[2, 2, 2]).unwrap();
    assert!(ci.edges().iter().all(|e| e.degree() <= 3));
    assert!(tile(&cp, &[2, 0, 1]).is_err());
}

#[test]
fn tiled_closed_loops_match_quotient() {
    let cp = preset_scaffold("cP").unwrap();
    let quotient = trace_periodic(&cp);
    assert_eq!(quotient.closed_count(), 3);
    let block = tile(&cp, &[2, 2, 2]).unwrap();
    let finite = trace(&block);
    assert_eq!(finite.count(), block.face_count());
    assert!(finite.count() >= quotient.count() * 8);
}

#[test]
fn periodic_documents_round_trip() {
    use lk_core::document::LkmDocument;
    use lk_core::periodic::{periodic_document, periodic_from_document};
    for name in ["cP", "cI", "sq", "hex"] {
        let mut p = preset_scaffold(name).unwrap();
        p.set_uniform_twist(1);
        let doc = periodic_document(&p);
        let back = periodic_from_document(&LkmDocument::parse(&doc.to_json()).unwrap()).unwrap().unwrap();
        assert_eq!(back.class_count(), p.class_count());
        assert_eq!(back.twists(), p.twists());
        assert_eq!(trace_periodic(&back).partition(), trace_periodic(&p).partition(), "{name}");
    }
    let text = r#"{"vertices":[],"faces":[],"periodic":{"basis":[[1,0,0],[0,1,0],[0,0,1]],"generators":[[0,0,0]],"class_twists":[2,2,2]}}"#;
    let p = periodic_from_document(&LkmDocument::parse(text).unwrap()).unwrap().unwrap();
    assert_eq!(trace_periodic(&p).count(), 6);
    let bad = r#"{"vertices":[],"faces":[],"periodic":{"basis":[[1,0],[0,1]]}}"#;
    assert!(periodic_from_document(&LkmDocument::parse(bad).unwrap()).is_err());
}
