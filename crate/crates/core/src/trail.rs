//! Trails, the `|P| + 2 sl(P)` budget, and the predicates that decide whether
//! a trail improves a solution.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{Edge, EdgeSet, VertexId, WeightedGraph};
use crate::rational::Rational;
use crate::triangles::TriangleSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TrailError {
    #[error("a trail needs at least one node")]
    Empty,
    #[error("edge {0:?} appears twice")]
    RepeatedEdge(Edge),
}

/// A walk `u1, u2, ..., uk` whose `k - 1` edges are pairwise distinct.
///
/// Node repeats are allowed. A single node with no edges is the empty trail.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<VertexId>", into = "Vec<VertexId>")]
pub struct Trail {
    nodes: Vec<VertexId>,
    edges: Vec<Edge>,
}

impl Trail {
    pub fn from_nodes(nodes: Vec<VertexId>) -> Result<Self, TrailError> {
        if nodes.is_empty() {
            return Err(TrailError::Empty);
        }
        let edges: Vec<Edge> = nodes.windows(2).map(|w| Edge::new(w[0], w[1])).collect();
        let mut seen = std::collections::HashSet::with_capacity(edges.len());
        for e in &edges {
            if !seen.insert(*e) {
                return Err(TrailError::RepeatedEdge(*e));
            }
        }
        Ok(Trail { nodes, edges })
    }

    pub fn nodes(&self) -> &[VertexId] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// `|P|`, the number of edges.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// `sl(P)`.
    pub fn self_loops(&self) -> usize {
        self.edges.iter().filter(|e| e.is_loop()).count()
    }

    /// `|P| + 2 sl(P)`.
    pub fn cost(&self) -> usize {
        self.len() + 2 * self.self_loops()
    }

    pub fn first(&self) -> VertexId {
        self.nodes[0]
    }

    pub fn last(&self) -> VertexId {
        *self.nodes.last().expect("non-empty")
    }

    pub fn is_closed(&self) -> bool {
        !self.is_empty() && self.first() == self.last()
    }

    pub fn reversed(&self) -> Trail {
        let mut nodes = self.nodes.clone();
        nodes.reverse();
        let mut edges = self.edges.clone();
        edges.reverse();
        Trail { nodes, edges }
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edges.iter().copied().collect()
    }

    pub fn contains_edge(&self, e: &Edge) -> bool {
        self.edges.contains(e)
    }
}

impl TryFrom<Vec<VertexId>> for Trail {
    type Error = TrailError;
    fn try_from(nodes: Vec<VertexId>) -> Result<Self, Self::Error> {
        Trail::from_nodes(nodes)
    }
}

impl From<Trail> for Vec<VertexId> {
    fn from(t: Trail) -> Self {
        t.nodes
    }
}

impl fmt::Debug for Trail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Trail{:?}", self.nodes)
    }
}

/// The length budget `|P| + 2 sl(P) <= 7/eps`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Budget {
    limit: Rational,
}

impl Budget {
    /// Budget for a local-search or witness parameter `eps`.
    pub fn for_epsilon(eps: &Rational) -> Self {
        Budget {
            limit: Rational::from_integer(7) / eps,
        }
    }

    pub fn from_limit(limit: Rational) -> Self {
        Budget { limit }
    }

    pub fn limit(&self) -> &Rational {
        &self.limit
    }

    /// Largest integral `|P| + 2 sl(P)` within the budget.
    pub fn max_cost(&self) -> usize {
        use num_traits::ToPrimitive;
        let floor = self.limit.floor();
        if floor.sign() == num_bigint::Sign::Minus {
            0
        } else {
            floor.to_usize().unwrap_or(usize::MAX)
        }
    }

    /// Exact rational comparison.
    pub fn admits(&self, trail: &Trail) -> bool {
        Rational::from_integer(trail.cost() as i64) <= self.limit
    }
}

/// `M Δ P`, treating the trail as its edge set.
pub fn symmetric_difference(m: &EdgeSet, p: &Trail) -> EdgeSet {
    m.symmetric_difference(p.edges())
}

/// Every edge lies in `A1 Δ A2` and consecutive edges sit on opposite sides.
pub fn is_alternating(p: &Trail, a1: &EdgeSet, a2: &EdgeSet) -> bool {
    let side = |e: &Edge| match (a1.contains(e), a2.contains(e)) {
        (true, false) => Some(true),
        (false, true) => Some(false),
        _ => None,
    };
    let mut prev: Option<bool> = None;
    for e in p.edges() {
        let Some(s) = side(e) else { return false };
        if prev == Some(s) {
            return false;
        }
        prev = Some(s);
    }
    true
}

/// `M Δ P` is a `T`-free 2-matching of strictly larger weight than `M`.
///
/// Trails using edges outside the graph are never augmenting.
pub fn is_augmenting(g: &WeightedGraph, p: &Trail, m: &EdgeSet, t: &TriangleSet) -> bool {
    if p.edges().iter().any(|e| !g.contains_edge(e)) {
        return false;
    }
    let next = symmetric_difference(m, p);
    next.is_two_matching() && t.is_free(&next) && gain(g, m, p).is_positive()
}

/// `w(M Δ P) - w(M)`.
pub fn gain(g: &WeightedGraph, m: &EdgeSet, p: &Trail) -> Rational {
    let mut total = Rational::zero();
    for e in p.edges() {
        let w = g.weight(e).expect("trail edge in graph");
        if m.contains(e) {
            total -= w;
        } else {
            total += w;
        }
    }
    total
}
