use lk_core::design::{
    chainmail, chainmail_random, chainmail_uniform, enumerate_orbits, spanning_tree_knot, tighten,
    GroupMode, PredicateKind, TwistAssignment,
};
use lk_core::fixtures::{book, cube, icosahedron, random_sphere, tetrahedron, two_sided_polygon};
use lk_core::mesh::EdgeKey;
use lk_core::strands::{component_count, trace};
use lk_core::{Exec, LkError};
use std::collections::BTreeMap;

#[test]
fn spanning_tree_knots_are_single_cycles() {
    let meshes = [tetrahedron(), cube(), icosahedron(), random_sphere(16, 9)];
    for mesh in &meshes {
        for seed in 0..25 {
            let a = spanning_tree_knot(mesh, seed, 1, 2).unwrap();
            assert_eq!(component_count(&a.apply(mesh).unwrap()), 1, "seed {seed}");
        }
    }
}

#[test]
fn spanning_tree_is_seed_deterministic() {
    let m = icosahedron();
    let a = spanning_tree_knot(&m, 7, 3, -2).unwrap();
    let b = spanning_tree_knot(&m, 7, 3, -2).unwrap();
    assert_eq!(a, b);
    let odd = a.twists.values().filter(|&&t| t == 3).count();
    assert_eq!(odd, m.face_count() - 1);
}

#[test]
fn spanning_tree_refuses_branching_edges() {
    assert!(matches!(
        spanning_tree_knot(&book(3), 0, 1, 0),
        Err(LkError::NonManifoldEdge { degree: 3, .. })
    ));
    assert!(spanning_tree_knot(&cube(), 0, 2, 0).is_err());
}

#[test]
fn chainmail_gives_one_ring_per_face() {
    for mesh in [tetrahedron(), cube(), icosahedron(), book(3), two_sided_polygon(5)] {
        for sign in [1, -1] {
            let a = chainmail_uniform(&mesh, sign).unwrap();
            assert_eq!(component_count(&a.apply(&mesh).unwrap()), mesh.face_count());
        }
        let a = chainmail_random(&mesh, 4).unwrap();
        assert_eq!(component_count(&a.apply(&mesh).unwrap()), mesh.face_count());
    }
}

#[test]
fn chainmail_book_spine() {
    let mesh = book(3);
    let spine = EdgeKey::new(0, 1).unwrap();
    for sign in [1i8, -1] {
        let signs = BTreeMap::from([(spine, sign)]);
        let a = chainmail(&mesh, &signs, |_, k| k as u64).unwrap();
        assert_eq!(a.get(spine), Some(3 * sign as i64));
        assert_eq!(component_count(&a.apply(&mesh).unwrap()), 3);
    }
    let signs = BTreeMap::from([(spine, 1i8)]);
    assert!(chainmail(&mesh, &signs, |_, _| 2).is_err());
}

#[test]
fn tightening_preserves_partition() {
    let mesh = icosahedron();
    let a = spanning_tree_knot(&mesh, 3, 1, 2).unwrap();
    let key = *a.twists.keys().next().unwrap();
    let b = tighten(&a, &mesh, key, 2).unwrap();
    assert_eq!(b.get(key).unwrap(), a.get(key).unwrap() + 4);
    assert_eq!(
        trace(&a.apply(&mesh).unwrap()).partition(),
        trace(&b.apply(&mesh).unwrap()).partition()
    );
}

#[test]
fn assignment_document_round_trip() {
    let a = spanning_tree_knot(&cube(), 1, 1, 2).unwrap();
    let back: TwistAssignment = serde_json::from_str(&a.to_json()).unwrap();
    assert_eq!(a, back);
    assert!(a.to_json().starts_with("{\n  \"twists\": ["));
}

fn orbit_counts(palette: &[i64], pred: PredicateKind) -> Vec<(u64, f64)> {
    let mesh = tetrahedron();
    let faces = mesh.face_count();
    let p = move |s: &lk_core::StrandSet| pred.evaluate(s, faces);
    GroupMode::ALL
        .iter()
        .map(|&mode| {
            let r = enumerate_orbits(&mesh, palette, &p, mode, Exec::Parallel).unwrap();
            assert!(r.consistent(), "{mode:?}: {} vs {}", r.orbit_count, r.burnside);
            (r.orbit_count, r.burnside)
        })
        .collect()
}

#[test]
fn tetrahedron_chainmail_orbits() {
    let counts = orbit_counts(&[-2, 2], PredicateKind::Any);
    assert_eq!(counts[0].0, 12);
    assert_eq!(counts[1].0, 11);
    assert_eq!(counts[2].0, 7);
}

#[test]
fn tetrahedron_knot_orbit_counts_are_frozen() {
    let counts = orbit_counts(&[-2, -1, 1, 2], PredicateKind::SingleCycle);
    let orbits: Vec<u64> = counts.iter().map(|c| c.0).collect();
    assert_eq!(orbits, vec![168, 100, 84]);
}

#[test]
fn sequential_and_parallel_agree() {
    let mesh = tetrahedron();
    let faces = mesh.face_count();
    let p = move |s: &lk_core::StrandSet| PredicateKind::SingleCycle.evaluate(s, faces);
    let a = enumerate_orbits(&mesh, &[-2, -1, 1, 2], &p, GroupMode::Full, Exec::Sequential).unwrap();
    let b = enumerate_orbits(&mesh, &[-2, -1, 1, 2], &p, GroupMode::Full, Exec::Parallel).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.accepted_assignments, 1792);
}

#[test]
fn enumeration_bounds() {
    let p = |_: &lk_core::StrandSet| true;
    assert!(matches!(
        enumerate_orbits(&icosahedron(), &[1, 2], &p, GroupMode::Full, Exec::Sequential),
        Err(LkError::BoundExceeded(_))
    ));
    assert!(enumerate_orbits(&tetrahedron(), &[1, 2], &p, GroupMode::FullWithNegation, Exec::Sequential).is_err());
}
