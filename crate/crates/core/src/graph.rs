//! Weighted undirected graphs with self-loops, and edge sets over them.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;
use crate::rational::Rational;

pub type VertexId = usize;

/// An unordered vertex pair stored with `u <= v`. `u == v` is a self-loop.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[VertexId; 2]", into = "[VertexId; 2]")]
pub struct Edge {
    u: VertexId,
    v: VertexId,
}

impl Edge {
    pub fn new(a: VertexId, b: VertexId) -> Self {
        if a <= b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn self_loop(v: VertexId) -> Self {
        Edge { u: v, v }
    }

    pub fn u(&self) -> VertexId {
        self.u
    }

    pub fn v(&self) -> VertexId {
        self.v
    }

    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    pub fn touches(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint opposite `x`; for a self-loop at `x` this is `x`.
    pub fn other(&self, x: VertexId) -> Option<VertexId> {
        if self.u == x {
            Some(self.v)
        } else if self.v == x {
            Some(self.u)
        } else {
            None
        }
    }

    /// Degree contribution of this edge at `x` (self-loops count twice).
    pub fn ends_at(&self, x: VertexId) -> usize {
        usize::from(self.u == x) + usize::from(self.v == x)
    }
}

impl From<[VertexId; 2]> for Edge {
    fn from([a, b]: [VertexId; 2]) -> Self {
        Edge::new(a, b)
    }
}

impl From<Edge> for [VertexId; 2] {
    fn from(e: Edge) -> Self {
        [e.u, e.v]
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// A set of edges. Ordered, so iteration is canonical.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeSet {
    edges: BTreeSet<Edge>,
}

impl EdgeSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.edges.contains(e)
    }

    pub fn insert(&mut self, e: Edge) -> bool {
        self.edges.insert(e)
    }

    pub fn remove(&mut self, e: &Edge) -> bool {
        self.edges.remove(e)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.iter()
    }

    /// `d_F(x)`: incident edges of `x`, self-loops counted twice.
    pub fn degree_of(&self, x: VertexId) -> usize {
        self.edges.iter().map(|e| e.ends_at(x)).sum()
    }

    /// Degrees of every vertex touched by the set.
    pub fn degrees(&self) -> BTreeMap<VertexId, usize> {
        let mut deg = BTreeMap::new();
        for e in &self.edges {
            *deg.entry(e.u).or_insert(0) += 1;
            *deg.entry(e.v).or_insert(0) += 1;
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().values().copied().max().unwrap_or(0)
    }

    /// True when every vertex has degree at most two.
    pub fn is_two_matching(&self) -> bool {
        self.max_degree() <= 2
    }

    pub fn symmetric_difference<'a>(&self, other: impl IntoIterator<Item = &'a Edge>) -> EdgeSet {
        let mut out = self.clone();
        for e in other {
            if !out.edges.remove(e) {
                out.edges.insert(*e);
            }
        }
        out
    }

    pub fn union(&self, other: &EdgeSet) -> EdgeSet {
        self.edges.union(&other.edges).copied().collect()
    }

    pub fn intersection(&self, other: &EdgeSet) -> EdgeSet {
        self.edges.intersection(&other.edges).copied().collect()
    }

    pub fn difference(&self, other: &EdgeSet) -> EdgeSet {
        self.edges.difference(&other.edges).copied().collect()
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.edges.is_subset(&other.edges)
    }

    pub fn to_vec(&self) -> Vec<Edge> {
        self.edges.iter().copied().collect()
    }
}

impl FromIterator<Edge> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = Edge>>(iter: I) -> Self {
        EdgeSet {
            edges: iter.into_iter().collect(),
        }
    }
}

impl<'a> IntoIterator for &'a EdgeSet {
    type Item = &'a Edge;
    type IntoIter = std::collections::btree_set::Iter<'a, Edge>;
    fn into_iter(self) -> Self::IntoIter {
        self.edges.iter()
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.edges.iter()).finish()
    }
}

/// Index of an edge in a graph's canonical (sorted) edge list.
pub type EdgeId = usize;

/// An undirected graph on vertices `0..n` with exact non-negative weights.
///
/// Self-loops are allowed, parallel edges are not. The graph is immutable
/// once built; reductions produce fresh copies.
#[derive(Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<Edge>,
    weights: Vec<Rational>,
    index: HashMap<Edge, EdgeId>,
    // neighbor lists sorted by (neighbor, edge id)
    adjacency: Vec<Vec<(VertexId, EdgeId)>>,
}

impl WeightedGraph {
    /// Builds a graph, rejecting out-of-range endpoints, parallel edges and
    /// negative weights.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (Edge, Rational)>) -> Result<Self, GraphError> {
        let mut map = BTreeMap::new();
        for (e, w) in edges {
            if e.v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: e.v, n });
            }
            if w.is_negative() {
                return Err(GraphError::NegativeWeight { edge: e, weight: w });
            }
            if map.insert(e, w).is_some() {
                return Err(GraphError::ParallelEdge(e));
            }
        }
        Ok(Self::from_map(n, map))
    }

    fn from_map(n: usize, map: BTreeMap<Edge, Rational>) -> Self {
        let (edges, weights): (Vec<_>, Vec<_>) = map.into_iter().unzip();
        let index = edges.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        let mut adjacency = vec![Vec::new(); n];
        for (id, e) in edges.iter().enumerate() {
            adjacency[e.u].push((e.v, id));
            if !e.is_loop() {
                adjacency[e.v].push((e.u, id));
            }
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        WeightedGraph {
            n,
            edges,
            weights,
            index,
            adjacency,
        }
    }

    /// Convenience constructor from `(u, v, weight)` triples.
    pub fn from_triples<W: Into<Rational>>(
        n: usize,
        triples: impl IntoIterator<Item = (VertexId, VertexId, W)>,
    ) -> Result<Self, GraphError> {
        Self::new(n, triples.into_iter().map(|(u, v, w)| (Edge::new(u, v), w.into())))
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Edge {
        self.edges[id]
    }

    pub fn edge_id(&self, e: &Edge) -> Option<EdgeId> {
        self.index.get(e).copied()
    }

    pub fn contains_edge(&self, e: &Edge) -> bool {
        self.index.contains_key(e)
    }

    pub fn weight(&self, e: &Edge) -> Option<&Rational> {
        self.edge_id(e).map(|id| &self.weights[id])
    }

    pub fn weight_by_id(&self, id: EdgeId) -> &Rational {
        &self.weights[id]
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn iter(&self) -> impl Iterator<Item = (Edge, &Rational)> + '_ {
        self.edges.iter().copied().zip(self.weights.iter())
    }

    /// `(neighbor, edge id)` pairs in ascending neighbor order. A self-loop
    /// appears once with the vertex itself as neighbor.
    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adjacency[v]
    }

    pub fn max_weight(&self) -> Option<&Rational> {
        self.weights.iter().max()
    }

    /// Range-checked `d_F(u)`.
    pub fn degree(&self, f: &EdgeSet, u: VertexId) -> Result<usize, GraphError> {
        if u >= self.n {
            return Err(GraphError::VertexOutOfRange { vertex: u, n: self.n });
        }
        Ok(f.degree_of(u))
    }

    /// First member of `f` that is not an edge of this graph.
    pub fn missing_edge(&self, f: &EdgeSet) -> Option<Edge> {
        f.iter().find(|e| !self.contains_edge(e)).copied()
    }

    /// Builds an [`EdgeSet`], checking every member exists here.
    pub fn edge_set(&self, edges: impl IntoIterator<Item = Edge>) -> Result<EdgeSet, GraphError> {
        let set: EdgeSet = edges.into_iter().collect();
        match self.missing_edge(&set) {
            Some(e) => Err(GraphError::MissingEdge(e)),
            None => Ok(set),
        }
    }

    /// `w(F)`, exact.
    ///
    /// # Panics
    /// If `f` holds an edge that is not in the graph.
    pub fn weight_of<'a>(&self, f: impl IntoIterator<Item = &'a Edge>) -> Rational {
        f.into_iter()
            .map(|e| {
                self.weight(e)
                    .unwrap_or_else(|| panic!("edge {e:?} is not in the graph"))
            })
            .sum()
    }

    /// A copy with one extra vertex per call, returning its id.
    pub fn with_new_vertex(&self) -> (WeightedGraph, VertexId) {
        let map = self.iter().map(|(e, w)| (e, w.clone())).collect();
        (Self::from_map(self.n + 1, map), self.n)
    }

    /// Applies an edit to the edge map and rebuilds.
    pub fn edited(
        &self,
        extra_vertices: usize,
        edit: impl FnOnce(&mut BTreeMap<Edge, Rational>),
    ) -> Result<WeightedGraph, GraphError> {
        let mut map: BTreeMap<Edge, Rational> = self.iter().map(|(e, w)| (e, w.clone())).collect();
        edit(&mut map);
        Self::new(self.n + extra_vertices, map)
    }

    pub fn has_self_loops(&self) -> bool {
        self.edges.iter().any(Edge::is_loop)
    }
}

impl fmt::Debug for WeightedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightedGraph")
            .field("n", &self.n)
            .field("edges", &self.iter().collect::<Vec<_>>())
            .finish()
    }
}
