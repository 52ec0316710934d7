use std::path::PathBuf;

use lk_core::design::{chainmail_uniform, spanning_tree_knot};
use lk_core::fixtures::{book, cube, octahedron, tetrahedron, two_sided_polygon};
use lk_core::geometry::{
    export_obj, fitted_radius, gauss_sum, linking_matrix, linking_number, min_separation, mtl_string,
    obj_string, realize, tube, Polyline, RealizeParams, StrandGeometry, TubeStyle, LINKING_TOLERANCE,
};
use lk_core::periodic::{preset_scaffold, tile};
use lk_core::vec3::{self, Point3};
use lk_core::{trace, Exec, LabeledMesh};
use proptest::prelude::*;

fn twisted(mut m: LabeledMesh, t: i64) -> LabeledMesh {
    m.set_all_twists(t);
    m
}

fn geometry(m: &LabeledMesh) -> StrandGeometry {
    realize(m, &trace(m), &RealizeParams::default()).unwrap()
}

fn matrix(m: &LabeledMesh) -> Vec<Vec<i64>> {
    linking_matrix(&geometry(m), Exec::Parallel).unwrap().values
}

/// Linking number from a generic planar projection: half the signed count of
/// crossings between the two curves.
fn crossing_count(a: &[Point3], b: &[Point3]) -> i64 {
    let tilt = |p: Point3| vec3::rotate(vec3::rotate(p, [1.0, 0.0, 0.0], 0.4131), [0.0, 1.0, 0.0], 0.2718);
    let a: Vec<Point3> = a.iter().map(|&p| tilt(p)).collect();
    let b: Vec<Point3> = b.iter().map(|&p| tilt(p)).collect();
    let mut total = 0;
    for i in 0..a.len() {
        let (p, p2) = (a[i], a[(i + 1) % a.len()]);
        let d = vec3::sub(p2, p);
        for j in 0..b.len() {
            let (q, q2) = (b[j], b[(j + 1) % b.len()]);
            let e = vec3::sub(q2, q);
            let den = d[0] * e[1] - d[1] * e[0];
            if den.abs() < 1e-15 {
                continue;
            }
            let w = vec3::sub(q, p);
            let s = (w[0] * e[1] - w[1] * e[0]) / den;
            let u = (w[0] * d[1] - w[1] * d[0]) / den;
            if !(0.0..1.0).contains(&s) || !(0.0..1.0).contains(&u) {
                continue;
            }
            let za = p[2] + s * d[2];
            let zb = q[2] + u * e[2];
            let (over, under) = if za > zb { (d, e) } else { (e, d) };
            total += if over[0] * under[1] - over[1] * under[0] > 0.0 { 1 } else { -1 };
        }
    }
    assert_eq!(total % 2, 0);
    total / 2
}

#[test]
fn hopf_rings_from_one_full_twist() {
    let mut m = cube();
    let e = m.edges()[0].key;
    m.set_all_twists(0);
    m.set_twist_by_key(e, 2).unwrap();
    let g = geometry(&m);
    let closed: Vec<&Polyline> = g.components.iter().collect();
    let mut linked = 0;
    for i in 0..closed.len() {
        for j in i + 1..closed.len() {
            let lk = linking_number(closed[i], closed[j]).unwrap();
            assert_eq!(lk, crossing_count(&closed[i].points, &closed[j].points));
            if lk != 0 {
                assert_eq!(lk.abs(), 1);
                linked += 1;
            }
        }
    }
    assert_eq!(linked, 1);
}

#[test]
fn torus_links_from_two_sided_polygons() {
    for (n, want) in [(4, 2), (8, 4)] {
        let g = geometry(&twisted(two_sided_polygon(n), 1));
        assert_eq!(g.components.len(), 2);
        let lk = linking_number(&g.components[0], &g.components[1]).unwrap();
        assert_eq!(lk.abs(), want, "n = {n}");
        assert_eq!(lk, crossing_count(&g.components[0].points, &g.components[1].points));
    }
}

#[test]
fn borromean_tetrahedron_is_pairwise_unlinked() {
    let m = matrix(&twisted(tetrahedron(), 1));
    assert_eq!(m.len(), 3);
    assert!(m.iter().flatten().all(|&v| v == 0));
}

#[test]
fn chainmail_cube_links_neighbours_only() {
    let m = twisted(cube(), 2);
    let strands = trace(&m);
    let faces: Vec<usize> = strands
        .components
        .iter()
        .map(|c| m.slot(c.slots[0]).face.0)
        .collect();
    let lk = matrix(&m);
    for i in 0..6 {
        for j in 0..6 {
            let share = m.face(lk_core::FaceId(faces[i])).iter().filter(|v| m.face(lk_core::FaceId(faces[j])).contains(v)).count() == 2;
            let want = if i != j && share { 1 } else { 0 };
            assert_eq!(lk[i][j].abs(), want, "{i} {j}");
        }
    }
    let neg = matrix(&twisted(cube(), -2));
    for i in 0..6 {
        for j in 0..6 {
            assert_eq!(neg[i][j], -lk[i][j]);
        }
    }
}

#[test]
fn zero_twists_give_an_unlinked_matrix() {
    for m in [cube(), octahedron(), tetrahedron()] {
        assert!(matrix(&m).iter().flatten().all(|&v| v == 0));
    }
}

#[test]
fn untwisted_strands_are_inset_face_boundaries() {
    let m = cube();
    let p = RealizeParams::default();
    let strands = trace(&m);
    let g = realize(&m, &strands, &p).unwrap();
    for (c, s) in g.components.iter().zip(&strands.components) {
        let face = m.face(m.slot(s.slots[0]).face);
        let pts: Vec<Point3> = face.iter().map(|&v| m.vertex(v)).collect();
        let n = vec3::normalize(vec3::newell_normal(&pts)).unwrap();
        let centre = vec3::centroid(pts.iter());
        for &q in &c.points {
            assert!(vec3::dot(vec3::sub(q, pts[0]), n).abs() < 1e-12, "planar");
        }
        for &v in &pts {
            let corner = vec3::lerp(v, centre, p.inset);
            assert!(c.points.iter().any(|&q| vec3::dist(q, corner) < 1e-12));
        }
    }
}

#[test]
fn realization_matches_the_strand_set() {
    for m in [twisted(cube(), 1), twisted(tetrahedron(), 2), twisted(book(4), 1), twisted(octahedron(), 3)] {
        let s = trace(&m);
        let g = geometry(&m);
        assert_eq!(g.components.len(), s.count());
        for (c, k) in g.components.iter().zip(&s.components) {
            assert_eq!(c.closed, k.is_closed());
            if c.closed {
                assert!(c.points.len() >= 4);
                assert!(vec3::dist(c.points[0], c.points[c.points.len() - 1]) > 1e-9);
            }
            for w in c.points.windows(2) {
                assert!(vec3::dist(w[0], w[1]) > 1e-9);
            }
        }
    }
}

fn mirrored(m: &LabeledMesh) -> LabeledMesh {
    let verts: Vec<Point3> = m.vertices().iter().map(|p| [p[0], -p[1], p[2]]).collect();
    let faces: Vec<Vec<usize>> = m.faces().iter().map(|f| f.iter().map(|v| v.0).collect()).collect();
    let mut out = LabeledMesh::new(verts, faces).unwrap();
    let neg: Vec<i64> = m.twists().iter().map(|t| -t).collect();
    out.set_twists(&neg);
    out
}

fn point_sets(g: &StrandGeometry, flip: bool) -> Vec<Vec<[i64; 3]>> {
    let mut sets: Vec<Vec<[i64; 3]>> = g
        .components
        .iter()
        .map(|c| {
            let mut v: Vec<[i64; 3]> = c
                .points
                .iter()
                .map(|p| {
                    let y = if flip { -p[1] } else { p[1] };
                    [(p[0] * 1e8).round() as i64, (y * 1e8).round() as i64, (p[2] * 1e8).round() as i64]
                })
                .collect();
            v.sort();
            v
        })
        .collect();
    sets.sort();
    sets
}

#[test]
fn mirror_image_is_the_negated_labeling() {
    for m in [twisted(cube(), 1), twisted(tetrahedron(), 2), twisted(book(3), 1)] {
        let a = geometry(&m);
        let b = geometry(&mirrored(&m));
        assert_eq!(point_sets(&a, true), point_sets(&b, false));
    }
}

#[test]
fn default_parameters_leave_room_for_tubes() {
    for m in [twisted(cube(), 2), twisted(tetrahedron(), 2), twisted(octahedron(), 2), twisted(cube(), -2)] {
        let g = geometry(&m);
        let r = RealizeParams::default().radius_for(&m);
        let gap = min_separation(&g, Exec::Parallel);
        assert!(gap > r);
        let fitted = fitted_radius(&g, r, Exec::Parallel);
        assert!(fitted <= r && 2.0 * fitted < gap);
    }
}

fn circle(c: Point3, n: usize) -> Polyline {
    Polyline {
        id: 0,
        closed: true,
        points: (0..n)
            .map(|i| {
                let t = std::f64::consts::TAU * i as f64 / n as f64;
                [c[0] + t.cos(), c[1] + t.sin(), c[2]]
            })
            .collect(),
    }
}

#[test]
fn separation_examples() {
    let g = StrandGeometry { components: vec![circle([0.0; 3], 64), circle([3.0, 0.0, 0.0], 64)] };
    assert!((min_separation(&g, Exec::Sequential) - 1.0).abs() < 1e-9);
    let same = StrandGeometry { components: vec![circle([0.0; 3], 16), circle([0.0; 3], 16)] };
    assert_eq!(min_separation(&same, Exec::Sequential), 0.0);
    assert!(linking_number(&same.components[0], &same.components[1]).is_err());
    let far = StrandGeometry { components: vec![circle([0.0; 3], 16), circle([0.0, 0.0, 5.0], 16)] };
    assert_eq!(linking_number(&far.components[0], &far.components[1]).unwrap(), 0);
}

#[test]
fn open_components_are_left_out() {
    let mut m = twisted(cube(), 2);
    let s = m.find_slot(lk_core::FaceId(0), m.edges()[0].key, 0).unwrap();
    m.set_null(s, true);
    let g = geometry(&m);
    let lk = linking_matrix(&g, Exec::Sequential).unwrap();
    assert_eq!(lk.ids.len(), g.components.iter().filter(|c| c.closed).count());
    assert_eq!(lk.warnings.len(), 1);
}

#[test]
fn tubes_close_up() {
    let square = Polyline {
        id: 0,
        closed: true,
        points: vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [1.0, 1.0, 0.0], [0.0, 1.0, 0.0]],
    };
    let t = tube(&square, 0.05, 12).unwrap();
    assert_eq!(t.triangles.len(), 2 * 4 * 12);
    assert!(t.is_watertight());
    let trefoil = Polyline {
        id: 0,
        closed: true,
        points: (0..120)
            .map(|i| {
                let t = std::f64::consts::TAU * i as f64 / 120.0;
                [t.sin() + 2.0 * (2.0 * t).sin(), t.cos() - 2.0 * (2.0 * t).cos(), -(3.0 * t).sin()]
            })
            .collect(),
    };
    let t = tube(&trefoil, 0.1, 8).unwrap();
    assert!(t.is_watertight());
    assert_eq!(t.euler_characteristic(), 0);
    let mut open = square.clone();
    open.closed = false;
    let t = tube(&open, 0.05, 12).unwrap();
    assert!(t.is_watertight());
    assert_eq!(t.euler_characteristic(), 2);
    let repeated = Polyline { id: 0, closed: true, points: vec![[0.0; 3]; 4] };
    assert!(tube(&repeated, 0.05, 6).is_err());
}

#[test]
fn realized_tubes_are_watertight() {
    let m = twisted(cube(), 2);
    for c in &geometry(&m).components {
        let t = tube(c, 0.05, 8).unwrap();
        assert!(t.is_watertight());
        assert_eq!(t.euler_characteristic(), 0);
    }
}

fn golden(name: &str, text: &str) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("LK_BLESS").is_some() {
        std::fs::write(&path, text).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert!(want == text, "{name} differs from the golden file");
}

#[test]
fn golden_obj_files() {
    let knot = spanning_tree_knot(&cube(), 7, 1, 0).unwrap().apply(&cube()).unwrap();
    let g = geometry(&knot);
    assert_eq!(g.components.len(), 1);
    golden("single_loop.obj", &obj_string(&g, None, Some("single_loop.mtl")).unwrap());

    let mail = chainmail_uniform(&cube(), 1).unwrap().apply(&cube()).unwrap();
    let g = geometry(&mail);
    golden("chainmail_cube.obj", &obj_string(&g, Some(TubeStyle { radius: 0.06, sides: 4 }), Some("chainmail_cube.mtl")).unwrap());
    golden("chainmail_cube.mtl", &mtl_string(&g));

    let mut cp = preset_scaffold("cP").unwrap();
    cp.set_uniform_twist(2);
    let block = tile(&cp, &[1, 1, 1]).unwrap();
    golden("tiled_cp.obj", &obj_string(&geometry(&block), None, None).unwrap());
}

#[test]
fn export_writes_obj_and_material_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mail.obj");
    let g = geometry(&twisted(cube(), 2));
    export_obj(&path, &g, Some(TubeStyle { radius: 0.05, sides: 6 })).unwrap();
    let obj = std::fs::read_to_string(&path).unwrap();
    assert!(obj.starts_with("mtllib mail.mtl\n"));
    assert_eq!(obj.matches("\no strand_").count(), 6);
    assert!(std::fs::read_to_string(dir.path().join("mail.mtl")).unwrap().contains("newmtl strand_5"));
}

#[test]
fn gauss_residuals_are_small() {
    for m in [twisted(cube(), 2), twisted(two_sided_polygon(8), 1), twisted(tetrahedron(), 1), twisted(book(3), 3)] {
        let g = geometry(&m);
        for i in 0..g.components.len() {
            for j in i + 1..g.components.len() {
                let s = gauss_sum(&g.components[i].points, &g.components[j].points);
                assert!((s - s.round()).abs() < LINKING_TOLERANCE);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn linking_is_symmetric_and_refinement_invariant(t in prop_oneof![Just(-2i64), Just(2)], pick in 0usize..3) {
        let m = twisted([cube(), tetrahedron(), octahedron()][pick].clone(), t);
        let g = geometry(&m);
        let (a, b) = (&g.components[0], &g.components[1]);
        let lk = linking_number(a, b).unwrap();
        prop_assert_eq!(lk, linking_number(b, a).unwrap());
        prop_assert_eq!(lk, linking_number(&a.refined(2), b).unwrap());
        prop_assert_eq!(lk, linking_number(&a.refined(3), &b.refined(2)).unwrap());
    }

    #[test]
    fn negation_negates_linking(seed in 0u64..50) {
        let a = lk_core::design::chainmail_random(&cube(), seed).unwrap().apply(&cube()).unwrap();
        let neg: Vec<i64> = a.twists().iter().map(|t| -t).collect();
        let b = a.with_twists(&neg);
        let (la, lb) = (matrix(&a), matrix(&b));
        for i in 0..la.len() {
            for j in 0..la.len() {
                prop_assert_eq!(la[i][j], -lb[i][j]);
            }
        }
    }
}
