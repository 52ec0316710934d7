//! Generic strand walker shared by finite meshes and periodic quotients.
//!
//! Every slot owns one *passage*: a strand piece that starts at the slot's own
//! station near the low end of its edge and ends at the station of the slot
//! `t` radial steps further on, near the high end. Passages meet at face
//! corners, so each passage has exactly two neighbours and the strands are the
//! connected pieces of the resulting graph. A null slot removes its passage.

use crate::mesh::Side;

/// Integer lattice translation (unused trailing coordinates stay zero).
pub type Shift = [i64; 3];

pub const ZERO_SHIFT: Shift = [0; 3];

#[inline]
pub fn shift_add(a: Shift, b: Shift) -> Shift {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

#[inline]
pub fn shift_sub(a: Shift, b: Shift) -> Shift {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

/// The combinatorial data a strand walk needs.
pub trait PassageNetwork {
    fn passage_count(&self) -> usize;
    fn is_null(&self, slot: usize) -> bool;
    /// Slot whose high-end station terminates the passage of `slot`, with the
    /// lattice shift between the two face copies.
    fn transfer(&self, slot: usize) -> (usize, Shift);
    /// Inverse of [`PassageNetwork::transfer`].
    fn transfer_inv(&self, slot: usize) -> (usize, Shift);
    /// Station across the face corner at the given end of `slot`.
    fn corner(&self, slot: usize, side: Side) -> (usize, Side);
}

/// A passage traversed in a given direction, located in lattice cell `cell`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Visit {
    pub slot: usize,
    pub forward: bool,
    pub cell: Shift,
}

/// Next passage along the strand, or `None` at a null slot.
pub fn step<N: PassageNetwork + ?Sized>(net: &N, v: Visit) -> Option<Visit> {
    let (station, side, cell) = if v.forward {
        let (q, d) = net.transfer(v.slot);
        (q, Side::Hi, shift_add(v.cell, d))
    } else {
        (v.slot, Side::Lo, v.cell)
    };
    let (r, r_side) = net.corner(station, side);
    let next = match r_side {
        Side::Lo => Visit { slot: r, forward: true, cell },
        Side::Hi => {
            let (p, d) = net.transfer_inv(r);
            Visit { slot: p, forward: false, cell: shift_add(cell, d) }
        }
    };
    if net.is_null(next.slot) {
        None
    } else {
        Some(next)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WalkComponent {
    pub visits: Vec<Visit>,
    pub closed: bool,
    /// Cell offset accumulated over one period of a closed walk.
    pub closure: Shift,
}

fn flip(v: Visit) -> Visit {
    Visit { forward: !v.forward, ..v }
}

/// All strand components, ordered by their smallest passage.
///
/// Closed components start at their smallest passage traversed forward; open
/// ones run from the end with the smaller passage id.
pub fn walk_components<N: PassageNetwork + ?Sized>(net: &N) -> Vec<WalkComponent> {
    let n = net.passage_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] || net.is_null(s) {
            continue;
        }
        let start = Visit { slot: s, forward: true, cell: [0; 3] };
        let mut visits = vec![start];
        seen[s] = true;
        let mut cur = start;
        let mut closure = None;
        while let Some(next) = step(net, cur) {
            if next.slot == s {
                debug_assert!(next.forward, "a passage is traversed once per component");
                closure = Some(next.cell);
                break;
            }
            assert!(visits.len() <= n, "strand walk failed to terminate");
            seen[next.slot] = true;
            visits.push(next);
            cur = next;
        }
        if let Some(closure) = closure {
            out.push(WalkComponent { visits, closed: true, closure });
            continue;
        }
        let mut back = Vec::new();
        let mut cur = flip(start);
        while let Some(next) = step(net, cur) {
            assert!(back.len() <= n, "strand walk failed to terminate");
            seen[next.slot] = true;
            back.push(next);
            cur = next;
        }
        let mut path: Vec<Visit> = back.into_iter().rev().map(flip).collect();
        path.extend(visits);
        if path.first().map(|v| v.slot) > path.last().map(|v| v.slot) {
            path.reverse();
            path.iter_mut().for_each(|v| *v = flip(*v));
        }
        out.push(WalkComponent { visits: path, closed: false, closure: [0; 3] });
    }
    out
}
