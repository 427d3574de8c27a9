#![allow(dead_code)]

use proptest::prelude::*;
use tf2m::{Edge, Rational, WeightedGraph};

/// Graphs on `1..=max_n` vertices with at most `max_edges` edges and small
/// integer or half-integer weights. Self-loops appear only when `loops`.
pub fn arb_graph(max_n: usize, loops: bool, max_edges: usize) -> impl Strategy<Value = WeightedGraph> {
    (1..=max_n).prop_flat_map(move |n| {
        let mut slots = Vec::new();
        for a in 0..n {
            for b in a..n {
                if a != b || loops {
                    slots.push((a, b));
                }
            }
        }
        let len = slots.len();
        (
            Just(slots),
            prop::collection::vec(any::<bool>(), len),
            prop::collection::vec((0u32..10, any::<bool>()), len),
        )
            .prop_map(move |(slots, keep, weights)| {
                let edges: Vec<(Edge, Rational)> = slots
                    .iter()
                    .zip(keep)
                    .zip(weights)
                    .filter(|(((_, _), k), _)| *k)
                    .take(max_edges)
                    .map(|(((a, b), _), (w, half))| {
                        let w = if half {
                            Rational::new(2 * w as i64 + 1, 2)
                        } else {
                            Rational::from_integer(w as i64)
                        };
                        (Edge::new(*a, *b), w)
                    })
                    .collect();
                WeightedGraph::new(n, edges).unwrap()
            })
    })
}

/// A graph together with a random permutation seed for greedy matchings.
pub fn arb_graph_and_order(
    max_n: usize,
    loops: bool,
    max_edges: usize,
) -> impl Strategy<Value = (WeightedGraph, Vec<usize>)> {
    (
        arb_graph(max_n, loops, max_edges),
        prop::collection::vec(0usize..64, 0..40),
    )
}
