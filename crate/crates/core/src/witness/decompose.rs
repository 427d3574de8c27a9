//! Partition of `A1 Δ A2` into alternating trails.
//!
//! Every edge of `A1 Δ A2` has two half-edges, one at each end (a self-loop
//! has both at its vertex). At each vertex the `A1` halves are paired with the
//! `A2` halves in canonical order, as many as possible. Following pairs from
//! an unpaired half traces an open trail; what is left after all open trails
//! are gone splits into closed trails.
//!
//! A trail only passes through a vertex along a pair, which keeps the `A2`
//! degree there. Its ends sit on unpaired halves, and all unpaired halves at a
//! vertex belong to the same side, of which there are at most
//! `|d_A1(v) - d_A2(v)|`. So `A2 Δ P` stays a 2-matching for every part.

use std::collections::BTreeMap;

use crate::graph::{Edge, EdgeSet, VertexId};
use crate::trail::Trail;

pub fn decompose_alternating_trails(a1: &EdgeSet, a2: &EdgeSet) -> Vec<Trail> {
    let edges: Vec<Edge> = a1.symmetric_difference(a2).to_vec();
    let half_vertex = |h: usize| {
        let e = edges[h / 2];
        if h.is_multiple_of(2) {
            e.u()
        } else {
            e.v()
        }
    };

    let mut at: BTreeMap<VertexId, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for h in 0..2 * edges.len() {
        let slot = at.entry(half_vertex(h)).or_default();
        if a1.contains(&edges[h / 2]) {
            slot.0.push(h);
        } else {
            slot.1.push(h);
        }
    }
    let mut partner: Vec<Option<usize>> = vec![None; 2 * edges.len()];
    for (ones, twos) in at.values() {
        for (&x, &y) in ones.iter().zip(twos) {
            partner[x] = Some(y);
            partner[y] = Some(x);
        }
    }

    let mut used = vec![false; edges.len()];
    let mut trails = Vec::new();
    let walk = |start: usize, used: &mut Vec<bool>| {
        let mut nodes = vec![half_vertex(start)];
        let mut cur = start;
        loop {
            used[cur / 2] = true;
            let far = cur ^ 1;
            nodes.push(half_vertex(far));
            match partner[far] {
                Some(next) if next != start => cur = next,
                _ => break,
            }
        }
        Trail::from_nodes(nodes).expect("each edge is walked once")
    };

    for h in 0..2 * edges.len() {
        if partner[h].is_none() && !used[h / 2] {
            trails.push(walk(h, &mut used));
        }
    }
    for i in 0..edges.len() {
        if !used[i] {
            trails.push(walk(2 * i, &mut used));
        }
    }
    trails
}
