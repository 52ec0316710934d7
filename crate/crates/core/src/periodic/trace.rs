//! Strand tracing on periodic quotients.

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::Serialize;

use crate::mesh::Side;
use crate::passage::{self, shift_sub, PassageNetwork, Shift};

use super::scaffold::PeriodicMesh;

impl PassageNetwork for PeriodicMesh {
    fn passage_count(&self) -> usize {
        self.slots().len()
    }

    fn is_null(&self, _slot: usize) -> bool {
        false
    }

    fn transfer(&self, slot: usize) -> (usize, Shift) {
        let p = &self.slots()[slot];
        let e = &self.edges()[p.edge];
        let k = e.degree() as i64;
        let q = e.radial_order[(p.radial_index as i64 + self.twists()[p.edge]).rem_euclid(k) as usize];
        (q, shift_sub(p.offset, self.slots()[q].offset))
    }

    fn transfer_inv(&self, slot: usize) -> (usize, Shift) {
        let r = &self.slots()[slot];
        let e = &self.edges()[r.edge];
        let k = e.degree() as i64;
        let p = e.radial_order[(r.radial_index as i64 - self.twists()[r.edge]).rem_euclid(k) as usize];
        (p, shift_sub(r.offset, self.slots()[p].offset))
    }

    fn corner(&self, slot: usize, side: Side) -> (usize, Side) {
        PeriodicMesh::corner(self, slot, side)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PeriodicKind {
    /// Returns to its starting cell after one period.
    Closed,
    /// Advances by a nonzero lattice vector every period.
    Infinite,
}

/// One strand of the quotient.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeriodicStrand {
    pub slots: Vec<usize>,
    pub forward: Vec<bool>,
    /// Cell of each passage's face copy, relative to the first passage.
    pub cells: Vec<Shift>,
    pub closure_offset: Vec<i64>,
    pub kind: PeriodicKind,
    pub repeat_box: Vec<usize>,
}

impl PeriodicStrand {
    /// Closure offset reduced to a primitive vector with its first nonzero
    /// entry positive; `None` for closed loops.
    pub fn direction_class(&self) -> Option<Vec<i64>> {
        let g = self.closure_offset.iter().fold(0i64, |g, &x| g.gcd(&x));
        if g == 0 {
            return None;
        }
        let mut d: Vec<i64> = self.closure_offset.iter().map(|x| x / g).collect();
        if d.iter().find(|&&x| x != 0).copied().unwrap_or(0) < 0 {
            d.iter_mut().for_each(|x| *x = -*x);
        }
        Some(d)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeriodicStrandSet {
    pub components: Vec<PeriodicStrand>,
}

impl PeriodicStrandSet {
    pub fn count(&self) -> usize {
        self.components.len()
    }

    pub fn closed_count(&self) -> usize {
        self.components.iter().filter(|c| c.kind == PeriodicKind::Closed).count()
    }

    pub fn infinite_count(&self) -> usize {
        self.count() - self.closed_count()
    }

    /// Distinct primitive directions of the infinite strands, up to sign.
    pub fn direction_classes(&self) -> BTreeSet<Vec<i64>> {
        self.components.iter().filter_map(PeriodicStrand::direction_class).collect()
    }

    /// Componentwise maximum of the per-strand repeat boxes.
    pub fn structure_repeat_box(&self) -> Vec<usize> {
        let dim = self.components.first().map_or(0, |c| c.repeat_box.len());
        (0..dim)
            .map(|i| self.components.iter().map(|c| c.repeat_box[i]).max().unwrap_or(1))
            .collect()
    }

    /// Components as sorted slot sets, sorted.
    pub fn partition(&self) -> Vec<Vec<usize>> {
        let mut p: Vec<Vec<usize>> = self
            .components
            .iter()
            .map(|c| {
                let mut s = c.slots.clone();
                s.sort_unstable();
                s
            })
            .collect();
        p.sort();
        p
    }
}

/// Trace the quotient strands, tracking the lattice cell of every passage.
///
/// The repeat box of a strand is measured in cells along each lattice axis:
/// the closure offset where it is nonzero, otherwise the rounded extent of the
/// face corners visited during one period (at least 1).
pub fn trace_periodic(pmesh: &PeriodicMesh) -> PeriodicStrandSet {
    let dim = pmesh.dim();
    let lattice = pmesh.lattice();
    let components = passage::walk_components(pmesh)
        .into_iter()
        .map(|c| {
            let w: Vec<i64> = c.closure[..dim].to_vec();
            let mut lo = [f64::INFINITY; 3];
            let mut hi = [f64::NEG_INFINITY; 3];
            for v in &c.visits {
                let face = pmesh.slots()[v.slot].face;
                for r in &pmesh.faces()[face] {
                    let f = lattice.to_fractional(pmesh.vertices()[r.class]);
                    for i in 0..dim {
                        let x = f[i] + (r.shift[i] + v.cell[i]) as f64;
                        lo[i] = lo[i].min(x);
                        hi[i] = hi[i].max(x);
                    }
                }
            }
            let repeat_box = (0..dim)
                .map(|i| {
                    if w[i] != 0 {
                        w[i].unsigned_abs() as usize
                    } else {
                        ((hi[i] - lo[i]).round() as usize).max(1)
                    }
                })
                .collect();
            PeriodicStrand {
                slots: c.visits.iter().map(|v| v.slot).collect(),
                forward: c.visits.iter().map(|v| v.forward).collect(),
                cells: c.visits.iter().map(|v| v.cell).collect(),
                kind: if w.iter().all(|&x| x == 0) { PeriodicKind::Closed } else { PeriodicKind::Infinite },
                closure_offset: w,
                repeat_box,
            }
        })
        .collect();
    PeriodicStrandSet { components }
}
