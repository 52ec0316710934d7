//! Strand tracing on labeled meshes.
//!
//! A twist `t` on an edge of degree `K` sends the strand leaving the slot at
//! radial index `i` to the slot at index `(i + t) mod K`. Only the residue of
//! `t` modulo `K` matters for the topology; the integer itself is kept for the
//! geometric realization, where it fixes how many half turns are drawn.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{LkError, Result};
use crate::mesh::{EdgeId, LabeledMesh, Side, SlotId};
use crate::passage::{self, PassageNetwork, Shift, Visit, ZERO_SHIFT};

/// Slot reached by the passage leaving `s` through its edge.
pub fn transfer(mesh: &LabeledMesh, s: SlotId) -> SlotId {
    shifted(mesh, s, 1)
}

/// Inverse of [`transfer`].
pub fn transfer_inv(mesh: &LabeledMesh, s: SlotId) -> SlotId {
    shifted(mesh, s, -1)
}

fn shifted(mesh: &LabeledMesh, s: SlotId, sign: i64) -> SlotId {
    let slot = mesh.slot(s);
    let rec = mesh.edge(slot.edge);
    let k = rec.radial_order.len() as i64;
    let j = (slot.radial_index as i64 + sign * mesh.twist(slot.edge)).rem_euclid(k);
    rec.radial_order[j as usize]
}

impl PassageNetwork for LabeledMesh {
    fn passage_count(&self) -> usize {
        self.slot_count()
    }

    fn is_null(&self, slot: usize) -> bool {
        LabeledMesh::is_null(self, SlotId(slot))
    }

    fn transfer(&self, slot: usize) -> (usize, Shift) {
        (transfer(self, SlotId(slot)).0, ZERO_SHIFT)
    }

    fn transfer_inv(&self, slot: usize) -> (usize, Shift) {
        (transfer_inv(self, SlotId(slot)).0, ZERO_SHIFT)
    }

    fn corner(&self, slot: usize, side: Side) -> (usize, Side) {
        let (r, s) = LabeledMesh::corner(self, SlotId(slot), side);
        (r.0, s)
    }
}

/// A slot's passage together with the direction it is traversed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DirectedSlot {
    pub slot: SlotId,
    pub forward: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    Next(DirectedSlot),
    /// The strand ends at a null slot.
    Terminus,
}

/// Next passage along the strand after `ds`.
pub fn successor(mesh: &LabeledMesh, ds: DirectedSlot) -> Step {
    let v = Visit { slot: ds.slot.0, forward: ds.forward, cell: ZERO_SHIFT };
    match passage::step(mesh, v) {
        Some(n) => Step::Next(DirectedSlot { slot: SlotId(n.slot), forward: n.forward }),
        None => Step::Terminus,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StrandKind {
    Cycle,
    Path,
}

/// One strand: the passages it runs through, in traversal order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Strand {
    pub kind: StrandKind,
    pub slots: Vec<SlotId>,
    /// Traversal direction of each passage (`true` = low end to high end).
    pub forward: Vec<bool>,
}

impl Strand {
    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.kind == StrandKind::Cycle
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StrandSet {
    pub components: Vec<Strand>,
}

impl StrandSet {
    pub fn count(&self) -> usize {
        self.components.len()
    }

    pub fn cycles(&self) -> impl Iterator<Item = &Strand> {
        self.components.iter().filter(|c| c.is_closed())
    }

    pub fn paths(&self) -> impl Iterator<Item = &Strand> {
        self.components.iter().filter(|c| !c.is_closed())
    }

    /// Components as sorted slot sets, sorted; equal partitions compare equal.
    pub fn partition(&self) -> Vec<Vec<SlotId>> {
        let mut p: Vec<Vec<SlotId>> = self
            .components
            .iter()
            .map(|c| {
                let mut s = c.slots.clone();
                s.sort();
                s
            })
            .collect();
        p.sort();
        p
    }

    /// Sorted component lengths.
    pub fn lengths(&self) -> Vec<usize> {
        let mut l: Vec<usize> = self.components.iter().map(Strand::len).collect();
        l.sort_unstable();
        l
    }
}

/// Trace every strand of the labeled mesh.
///
/// Components are ordered by their smallest slot id; a cycle starts at that
/// slot, a path at whichever of its two ends has the smaller slot id.
pub fn trace(mesh: &LabeledMesh) -> StrandSet {
    let components = passage::walk_components(mesh)
        .into_iter()
        .map(|c| Strand {
            kind: if c.closed { StrandKind::Cycle } else { StrandKind::Path },
            slots: c.visits.iter().map(|v| SlotId(v.slot)).collect(),
            forward: c.visits.iter().map(|v| v.forward).collect(),
        })
        .collect();
    StrandSet { components }
}

pub fn component_count(mesh: &LabeledMesh) -> usize {
    trace(mesh).count()
}

/// Cycle structure of the transfer permutation on one edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitLaw {
    pub degree: usize,
    pub twist: i64,
    /// `gcd(K, t)`, with `gcd(K, 0) = K`.
    pub orbit_count: usize,
    /// `K / gcd(K, t)`.
    pub orbit_length: usize,
}

/// The transfer on an edge of degree `k` with twist `t` splits its `k` slots
/// into `gcd(k, t)` orbits of length `k / gcd(k, t)`.
pub fn orbit_law(k: usize, t: i64) -> Result<OrbitLaw> {
    if k == 0 {
        return Err(LkError::InvalidArgument("edge degree must be at least 1".into()));
    }
    let g = (k as i64).gcd(&t) as usize;
    Ok(OrbitLaw {
        degree: k,
        twist: t,
        orbit_count: g,
        orbit_length: k / g,
    })
}

/// Orbit law of every edge of `mesh`, indexed by [`EdgeId`].
pub fn edge_orbit_laws(mesh: &LabeledMesh) -> Vec<OrbitLaw> {
    (0..mesh.edge_count())
        .map(|e| orbit_law(mesh.degree(EdgeId(e)), mesh.twist(EdgeId(e))).expect("edges have slots"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_law_examples() {
        assert_eq!(orbit_law(6, 4).unwrap().orbit_count, 2);
        assert_eq!(orbit_law(6, 4).unwrap().orbit_length, 3);
        assert_eq!(orbit_law(5, 0).unwrap().orbit_count, 5);
        assert_eq!(orbit_law(4, -2).unwrap().orbit_count, 2);
        assert_eq!(orbit_law(1, 7).unwrap().orbit_length, 1);
        assert!(orbit_law(0, 1).is_err());
    }

    #[test]
    fn transfer_walks_radial_order() {
        let mut m = LabeledMesh::new(
            vec![[0., 0., 0.], [0., 0., 1.], [1., 0., 0.5], [-0.5, 0.8, 0.5], [-0.5, -0.8, 0.5]],
            vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 1, 4]],
        )
        .unwrap();
        let spine = m.edge_id(crate::mesh::EdgeKey::new(0, 1).unwrap()).unwrap();
        m.set_twist(spine, 1);
        let order = m.edge(spine).radial_order.clone();
        for i in 0..3 {
            assert_eq!(transfer(&m, order[i]), order[(i + 1) % 3]);
            assert_eq!(transfer_inv(&m, order[(i + 1) % 3]), order[i]);
        }
    }
}
