//! Design operators: knots from spanning trees, chainmail, tightening and
//! symmetry-reduced enumeration of twist assignments.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use log::debug;
use petgraph::unionfind::UnionFind;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::document::TwistEntry;
use crate::error::{LkError, Result};
use crate::exec::Exec;
use crate::mesh::{dual_graph, EdgeId, EdgeKey, LabeledMesh};
use crate::strands::{trace, StrandSet};

/// Upper bound on the number of assignments [`enumerate_orbits`] will visit.
pub const MAX_ASSIGNMENTS: u64 = 10_000_000;

/// A sparse set of edge twists; edges not listed keep their current value.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(from = "AssignmentDoc", into = "AssignmentDoc")]
pub struct TwistAssignment {
    pub twists: BTreeMap<EdgeKey, i64>,
}

#[derive(Serialize, Deserialize)]
struct AssignmentDoc {
    twists: Vec<TwistEntry>,
}

impl From<AssignmentDoc> for TwistAssignment {
    fn from(d: AssignmentDoc) -> Self {
        TwistAssignment {
            twists: d
                .twists
                .into_iter()
                .filter_map(|t| EdgeKey::new(t.edge[0], t.edge[1]).map(|k| (k, t.t)))
                .collect(),
        }
    }
}

impl From<TwistAssignment> for AssignmentDoc {
    fn from(a: TwistAssignment) -> Self {
        AssignmentDoc {
            twists: a
                .twists
                .into_iter()
                .map(|(k, t)| TwistEntry { edge: k.pair(), t })
                .collect(),
        }
    }
}

impl TwistAssignment {
    /// Every twist currently on `mesh`.
    pub fn of_mesh(mesh: &LabeledMesh) -> Self {
        TwistAssignment {
            twists: mesh
                .edges()
                .iter()
                .map(|r| r.key)
                .zip(mesh.twists().iter().copied())
                .collect(),
        }
    }

    pub fn get(&self, key: EdgeKey) -> Option<i64> {
        self.twists.get(&key).copied()
    }

    /// Copy of `mesh` with these twists written over its own.
    pub fn apply(&self, mesh: &LabeledMesh) -> Result<LabeledMesh> {
        let mut m = mesh.clone();
        for (&k, &t) in &self.twists {
            m.set_twist_by_key(k, t)?;
        }
        Ok(m)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("assignments serialize");
        s.push('\n');
        s
    }
}

fn require_manifold(mesh: &LabeledMesh) -> Result<()> {
    if let Some(rec) = mesh.edges().iter().find(|r| r.degree() > 2) {
        return Err(LkError::NonManifoldEdge {
            a: rec.key.a.0,
            b: rec.key.b.0,
            degree: rec.degree(),
        });
    }
    Ok(())
}

/// Single-cycle knot from a random spanning tree of the dual graph.
///
/// Edges of the tree get `odd_value`, every other interior edge gets
/// `even_value`; boundary edges are left out. Starting from one strand per
/// face, each odd tree edge swaps strand ends between two different strands
/// and so merges them, which leaves exactly one strand.
pub fn spanning_tree_knot(
    mesh: &LabeledMesh,
    seed: u64,
    odd_value: i64,
    even_value: i64,
) -> Result<TwistAssignment> {
    if odd_value.rem_euclid(2) != 1 {
        return Err(LkError::InvalidArgument(format!("odd value {odd_value} is even")));
    }
    if even_value.rem_euclid(2) != 0 {
        return Err(LkError::InvalidArgument(format!("even value {even_value} is odd")));
    }
    require_manifold(mesh)?;
    let dual = dual_graph(mesh);
    let comps = dual.component_count();
    if comps > 1 {
        return Err(LkError::DisconnectedDual(comps));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights: Vec<f64> = dual.links.iter().map(|_| rng.gen::<f64>()).collect();
    let order = (0..dual.links.len()).sorted_by(|&i, &j| weights[i].total_cmp(&weights[j]).then(i.cmp(&j)));
    let mut uf = UnionFind::new(mesh.face_count());
    let mut tree = BTreeSet::new();
    for i in order {
        let l = dual.links[i];
        if uf.union(l.from.0, l.to.0) {
            tree.insert(l.edge);
        }
    }
    let twists = dual
        .links
        .iter()
        .map(|l| {
            let t = if tree.contains(&l.edge) { odd_value } else { even_value };
            (mesh.edge(l.edge).key, t)
        })
        .collect();
    let assignment = TwistAssignment { twists };
    let count = trace(&assignment.apply(mesh)?).count();
    if count != 1 {
        return Err(LkError::InvalidArgument(format!(
            "spanning-tree labeling produced {count} strands; null sides are not supported"
        )));
    }
    debug!("spanning tree with {} odd edges", tree.len());
    Ok(assignment)
}

/// Chainmail labeling: every listed edge gets `sign * magnitude(key, K)`,
/// which must be a nonzero multiple of the edge degree `K`. The result has one
/// closed strand per face.
pub fn chainmail<F>(
    mesh: &LabeledMesh,
    signs: &BTreeMap<EdgeKey, i8>,
    magnitude: F,
) -> Result<TwistAssignment>
where
    F: Fn(EdgeKey, usize) -> u64,
{
    let mut twists = BTreeMap::new();
    for (&key, &sign) in signs {
        let rec = mesh.radial_order(key)?;
        let k = rec.degree();
        let mag = magnitude(key, k);
        if mag == 0 || !mag.is_multiple_of(k as u64) || sign == 0 {
            return Err(LkError::InvalidArgument(format!(
                "chainmail twist {}*{} on edge {} is not a nonzero multiple of K={}",
                sign, mag, key, k
            )));
        }
        twists.insert(key, sign.signum() as i64 * mag as i64);
    }
    let assignment = TwistAssignment { twists };
    let strands = trace(&assignment.apply(mesh)?);
    if mesh.null_slots().next().is_none() && strands.count() != mesh.face_count() {
        return Err(LkError::InvalidArgument(format!(
            "chainmail produced {} strands for {} faces",
            strands.count(),
            mesh.face_count()
        )));
    }
    Ok(assignment)
}

/// Default chainmail magnitude: 2 on degree-2 edges, `K` elsewhere.
pub fn default_chainmail_magnitude(_key: EdgeKey, k: usize) -> u64 {
    if k == 2 {
        2
    } else {
        k as u64
    }
}

/// Chainmail with one sign on every interior edge.
pub fn chainmail_uniform(mesh: &LabeledMesh, sign: i8) -> Result<TwistAssignment> {
    let signs = mesh
        .edges()
        .iter()
        .filter(|r| r.degree() >= 2)
        .map(|r| (r.key, sign))
        .collect();
    chainmail(mesh, &signs, default_chainmail_magnitude)
}

/// Chainmail with independently random signs.
pub fn chainmail_random(mesh: &LabeledMesh, seed: u64) -> Result<TwistAssignment> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let signs = mesh
        .edges()
        .iter()
        .filter(|r| r.degree() >= 2)
        .map(|r| (r.key, if rng.gen::<bool>() { 1 } else { -1 }))
        .collect();
    chainmail(mesh, &signs, default_chainmail_magnitude)
}

/// Add `m * K` to the twist on `edge`: the strand topology is unchanged, only
/// the number of full turns drawn around the edge grows.
pub fn tighten(
    assignment: &TwistAssignment,
    mesh: &LabeledMesh,
    edge: EdgeKey,
    m: i64,
) -> Result<TwistAssignment> {
    let k = mesh.radial_order(edge)?.degree() as i64;
    let current = assignment
        .get(edge)
        .unwrap_or_else(|| mesh.twist(mesh.edge_id(edge).expect("edge exists")));
    let mut out = assignment.clone();
    out.twists.insert(edge, current + m * k);
    let before = trace(&assignment.apply(mesh)?).partition();
    let after = trace(&out.apply(mesh)?).partition();
    if before != after {
        return Err(LkError::InvalidArgument("tightening changed the strand partition".into()));
    }
    Ok(out)
}

/// Combinatorial automorphism of a mesh.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Symmetry {
    pub vertex_map: Vec<usize>,
    /// Image of each edge, indexed by [`EdgeId`].
    pub edge_map: Vec<usize>,
    /// `+1` when every face cycle keeps its direction, `-1` otherwise.
    pub orientation: i8,
}

fn canonical_cycle(c: &[usize]) -> Vec<usize> {
    let (start, _) = c.iter().enumerate().min_by_key(|(_, &v)| v).expect("nonempty face");
    c[start..].iter().chain(&c[..start]).copied().collect()
}

/// All vertex permutations preserving the edge set and the face set.
///
/// Faces are compared as cycles, in either direction; the orientation flag
/// records whether directions are kept. Plain backtracking over vertex
/// images, so meshes are limited to `max_vertices` vertices.
pub fn automorphisms(mesh: &LabeledMesh, max_vertices: usize) -> Result<Vec<Symmetry>> {
    let n = mesh.vertices().len();
    if n > max_vertices {
        return Err(LkError::BoundExceeded(format!(
            "automorphism search limited to {max_vertices} vertices, mesh has {n}"
        )));
    }
    let mut adj = vec![vec![false; n]; n];
    for r in mesh.edges() {
        adj[r.key.a.0][r.key.b.0] = true;
        adj[r.key.b.0][r.key.a.0] = true;
    }
    let mut incidence = vec![0usize; n];
    for f in mesh.faces() {
        for v in f {
            incidence[v.0] += 1;
        }
    }
    let signature: Vec<(usize, usize)> = (0..n)
        .map(|v| (adj[v].iter().filter(|&&x| x).count(), incidence[v]))
        .collect();

    // Visit vertices in BFS order so each new vertex is constrained by an earlier one.
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    for root in 0..n {
        if placed[root] {
            continue;
        }
        placed[root] = true;
        order.push(root);
        let mut head = order.len() - 1;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for w in 0..n {
                if adj[v][w] && !placed[w] {
                    placed[w] = true;
                    order.push(w);
                }
            }
        }
    }

    let faces: Vec<Vec<usize>> = mesh
        .faces()
        .iter()
        .map(|f| f.iter().map(|v| v.0).collect())
        .collect();
    let directed: BTreeSet<Vec<usize>> = faces.iter().map(|f| canonical_cycle(f)).collect();

    let mut out = Vec::new();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    search(
        0,
        &order,
        &adj,
        &signature,
        &mut image,
        &mut used,
        &mut |img: &[usize]| {
            let mut all_plus = true;
            for f in &faces {
                let mapped: Vec<usize> = f.iter().map(|&v| img[v]).collect();
                let plus = directed.contains(&canonical_cycle(&mapped));
                let rev: Vec<usize> = mapped.iter().rev().copied().collect();
                let minus = directed.contains(&canonical_cycle(&rev));
                if !plus && !minus {
                    return;
                }
                all_plus &= plus;
            }
            let orientation = if all_plus { 1 } else { -1 };
            let edge_map = mesh
                .edges()
                .iter()
                .map(|r| {
                    let k = EdgeKey::new(img[r.key.a.0], img[r.key.b.0]).expect("injective");
                    mesh.edge_id(k).expect("adjacency preserved").0
                })
                .collect();
            out.push(Symmetry { vertex_map: img.to_vec(), edge_map, orientation });
        },
    );
    out.sort_by(|a, b| a.vertex_map.cmp(&b.vertex_map));
    Ok(out)
}

fn search(
    depth: usize,
    order: &[usize],
    adj: &[Vec<bool>],
    sig: &[(usize, usize)],
    image: &mut [usize],
    used: &mut [bool],
    emit: &mut dyn FnMut(&[usize]),
) {
    if depth == order.len() {
        emit(image);
        return;
    }
    let v = order[depth];
    for cand in 0..order.len() {
        if used[cand] || sig[cand] != sig[v] {
            continue;
        }
        let ok = order[..depth]
            .iter()
            .all(|&u| adj[u][v] == adj[image[u]][cand]);
        if !ok {
            continue;
        }
        image[v] = cand;
        used[cand] = true;
        search(depth + 1, order, adj, sig, image, used, emit);
        used[cand] = false;
        image[v] = usize::MAX;
    }
}

/// Which symmetries identify two assignments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupMode {
    /// Orientation-preserving automorphisms.
    Rotations,
    /// All automorphisms, acting on edges only.
    Full,
    /// All automorphisms; orientation-reversing ones also negate every twist.
    FullWithNegation,
}

impl GroupMode {
    pub const ALL: [GroupMode; 3] = [GroupMode::Rotations, GroupMode::Full, GroupMode::FullWithNegation];

    pub fn name(self) -> &'static str {
        match self {
            GroupMode::Rotations => "rotations",
            GroupMode::Full => "full",
            GroupMode::FullWithNegation => "full-with-negation",
        }
    }
}

impl std::str::FromStr for GroupMode {
    type Err = LkError;

    fn from_str(s: &str) -> Result<Self> {
        GroupMode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| LkError::InvalidArgument(format!("unknown group `{s}`")))
    }
}

/// Result of a symmetry-reduced enumeration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitReport {
    pub group: GroupMode,
    pub group_order: usize,
    pub total_assignments: u64,
    pub accepted_assignments: u64,
    /// Number of orbits, counted by canonical representatives.
    pub orbit_count: u64,
    /// Burnside average over the group, computed from fixed points.
    pub burnside: f64,
    pub representatives: Vec<TwistAssignment>,
}

impl OrbitReport {
    /// The two independent counts agree.
    pub fn consistent(&self) -> bool {
        (self.burnside - self.orbit_count as f64).abs() < 1e-9
    }
}

/// Group element acting on palette-index vectors.
struct Action {
    edge_map: Vec<usize>,
    negate: bool,
}

/// Enumerate every assignment of `palette` values to the edges of `mesh`,
/// keep those whose trace satisfies `predicate`, and count them up to the
/// symmetries selected by `mode`.
///
/// Traces depend only on twist residues modulo the edge degrees, so the
/// predicate is evaluated once per residue pattern. The orbit count comes from
/// canonical (lexicographically smallest) representatives; the Burnside
/// average is computed separately by constructing the fixed assignments of each
/// group element from its edge cycles.
pub fn enumerate_orbits(
    mesh: &LabeledMesh,
    palette: &[i64],
    predicate: &(dyn Fn(&StrandSet) -> bool + Sync),
    mode: GroupMode,
    exec: Exec,
) -> Result<OrbitReport> {
    let e_count = mesh.edge_count();
    let p = palette.len() as u64;
    if p == 0 || palette.iter().collect::<BTreeSet<_>>().len() != palette.len() {
        return Err(LkError::InvalidArgument("palette must be nonempty and duplicate-free".into()));
    }
    let total = p
        .checked_pow(e_count as u32)
        .filter(|&t| t <= MAX_ASSIGNMENTS)
        .ok_or_else(|| {
            LkError::BoundExceeded(format!("{}^{} assignments exceed {}", p, e_count, MAX_ASSIGNMENTS))
        })?;

    let symmetries = automorphisms(mesh, 12)?;
    let actions: Vec<Action> = symmetries
        .iter()
        .filter(|s| mode != GroupMode::Rotations || s.orientation == 1)
        .map(|s| Action {
            edge_map: s.edge_map.clone(),
            negate: mode == GroupMode::FullWithNegation && s.orientation == -1,
        })
        .collect();
    let negated: Vec<Option<usize>> = palette
        .iter()
        .map(|&v| palette.iter().position(|&w| w == -v))
        .collect();
    if actions.iter().any(|a| a.negate) && negated.iter().any(Option::is_none) {
        return Err(LkError::InvalidArgument("palette must be closed under negation".into()));
    }

    let cache = ResidueCache::build(mesh, palette, predicate, exec);
    let accepted = exec.filter_range(0..total, |code| {
        cache.accepts(&decode(code, p, e_count))
    });

    let digits_of = |code: u64| decode(code, p, e_count);
    let act = |a: &Action, d: &[usize]| -> Vec<usize> {
        let mut out = vec![0; d.len()];
        for (e, &x) in d.iter().enumerate() {
            out[a.edge_map[e]] = if a.negate { negated[x].expect("closed") } else { x };
        }
        out
    };
    let canonical: Vec<bool> = exec.map(&accepted, |&code| {
        let d = digits_of(code);
        actions.iter().all(|a| encode(&act(a, &d), p) >= code)
    });
    let representatives: Vec<u64> = accepted
        .iter()
        .zip(&canonical)
        .filter(|(_, &c)| c)
        .map(|(&code, _)| code)
        .collect();

    let fixed: Vec<u64> = exec.map(&actions, |a| count_fixed(a, palette.len(), &negated, &cache));
    let burnside = fixed.iter().sum::<u64>() as f64 / actions.len() as f64;

    let edge_keys: Vec<EdgeKey> = mesh.edges().iter().map(|r| r.key).collect();
    let to_assignment = |code: u64| TwistAssignment {
        twists: digits_of(code)
            .iter()
            .enumerate()
            .map(|(e, &d)| (edge_keys[e], palette[d]))
            .collect(),
    };
    Ok(OrbitReport {
        group: mode,
        group_order: actions.len(),
        total_assignments: total,
        accepted_assignments: accepted.len() as u64,
        orbit_count: representatives.len() as u64,
        burnside,
        representatives: representatives.into_iter().map(to_assignment).collect(),
    })
}

fn decode(mut code: u64, p: u64, edges: usize) -> Vec<usize> {
    let mut d = vec![0; edges];
    for e in (0..edges).rev() {
        d[e] = (code % p) as usize;
        code /= p;
    }
    d
}

fn encode(d: &[usize], p: u64) -> u64 {
    d.iter().fold(0, |acc, &x| acc * p + x as u64)
}

/// Predicate results keyed by the residue of each edge twist modulo its degree.
struct ResidueCache {
    /// Per edge: palette index -> index into that edge's residue list.
    residue_index: Vec<Vec<usize>>,
    radix: Vec<usize>,
    accepted: Vec<bool>,
}

impl ResidueCache {
    fn build(
        mesh: &LabeledMesh,
        palette: &[i64],
        predicate: &(dyn Fn(&StrandSet) -> bool + Sync),
        exec: Exec,
    ) -> Self {
        let mut residue_index = Vec::new();
        let mut radix = Vec::new();
        let mut representative = Vec::new();
        for e in 0..mesh.edge_count() {
            let k = mesh.degree(EdgeId(e)) as i64;
            let residues: Vec<i64> = palette.iter().map(|v| v.rem_euclid(k)).unique().collect();
            residue_index.push(
                palette
                    .iter()
                    .map(|v| residues.iter().position(|&r| r == v.rem_euclid(k)).expect("listed"))
                    .collect(),
            );
            representative.push(residues.clone());
            radix.push(residues.len());
        }
        let patterns: usize = radix.iter().product();
        let accepted = exec.map_range(0..patterns, |mut code| {
            let mut twists = vec![0i64; radix.len()];
            for e in (0..radix.len()).rev() {
                twists[e] = representative[e][code % radix[e]];
                code /= radix[e];
            }
            predicate(&trace(&mesh.with_twists(&twists)))
        });
        ResidueCache { residue_index, radix, accepted }
    }

    fn accepts(&self, digits: &[usize]) -> bool {
        let code = digits
            .iter()
            .enumerate()
            .fold(0usize, |acc, (e, &d)| acc * self.radix[e] + self.residue_index[e][d]);
        self.accepted[code]
    }
}

/// Number of accepted assignments fixed by `a`, built cycle by cycle.
fn count_fixed(a: &Action, palette_len: usize, negated: &[Option<usize>], cache: &ResidueCache) -> u64 {
    let n = a.edge_map.len();
    let mut seen = vec![false; n];
    let mut cycles = Vec::new();
    for e in 0..n {
        if seen[e] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut x = e;
        while !seen[x] {
            seen[x] = true;
            cyc.push(x);
            x = a.edge_map[x];
        }
        cycles.push(cyc);
    }
    // Admissible starting values per cycle: without negation anything goes;
    // with negation the value flips at every step, so odd cycles need v = -v.
    let choices: Vec<Vec<usize>> = cycles
        .iter()
        .map(|c| {
            (0..palette_len)
                .filter(|&d| !a.negate || c.len() % 2 == 0 || negated[d] == Some(d))
                .collect()
        })
        .collect();
    let mut count = 0u64;
    for pick in choices.iter().map(|c| c.iter()).multi_cartesian_product() {
        let mut digits = vec![0usize; n];
        for (cyc, &d) in cycles.iter().zip(&pick) {
            let mut v = *d;
            for &e in cyc {
                digits[e] = v;
                if a.negate {
                    v = negated[v].expect("closed");
                }
            }
        }
        if cache.accepts(&digits) {
            count += 1;
        }
    }
    if cycles.is_empty() && cache.accepts(&[]) {
        count = 1;
    }
    count
}

/// Named trace predicates for enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PredicateKind {
    /// Exactly one strand (a knot).
    SingleCycle,
    /// One strand per face (chainmail).
    OnePerFace,
    /// Every assignment.
    Any,
}

impl PredicateKind {
    pub fn evaluate(self, strands: &StrandSet, face_count: usize) -> bool {
        match self {
            PredicateKind::SingleCycle => strands.count() == 1 && strands.paths().next().is_none(),
            PredicateKind::OnePerFace => strands.count() == face_count,
            PredicateKind::Any => true,
        }
    }
}

impl std::str::FromStr for PredicateKind {
    type Err = LkError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "single-cycle" => Ok(PredicateKind::SingleCycle),
            "one-per-face" => Ok(PredicateKind::OnePerFace),
            "any" => Ok(PredicateKind::Any),
            _ => Err(LkError::InvalidArgument(format!("unknown predicate `{s}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{cube, tetrahedron};

    #[test]
    fn platonic_group_orders() {
        let t = automorphisms(&tetrahedron(), 12).unwrap();
        assert_eq!(t.len(), 24);
        assert_eq!(t.iter().filter(|s| s.orientation == 1).count(), 12);
        let c = automorphisms(&cube(), 12).unwrap();
        assert_eq!(c.len(), 48);
        assert_eq!(c.iter().filter(|s| s.orientation == 1).count(), 24);
    }

    #[test]
    fn codes_round_trip() {
        let d = decode(1234, 4, 6);
        assert_eq!(encode(&d, 4), 1234);
    }
}
