//! Triangles, forbidden families `T`, and the `T(F)` query.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;
use crate::graph::{Edge, EdgeSet, VertexId, WeightedGraph};

/// A 3-cycle on distinct vertices `a < b < c`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[VertexId; 3]", into = "[VertexId; 3]")]
pub struct Triangle {
    a: VertexId,
    b: VertexId,
    c: VertexId,
}

impl Triangle {
    /// Returns `None` unless the three vertices are distinct.
    pub fn new(x: VertexId, y: VertexId, z: VertexId) -> Option<Self> {
        let mut v = [x, y, z];
        v.sort_unstable();
        if v[0] == v[1] || v[1] == v[2] {
            return None;
        }
        Some(Triangle {
            a: v[0],
            b: v[1],
            c: v[2],
        })
    }

    pub fn vertices(&self) -> [VertexId; 3] {
        [self.a, self.b, self.c]
    }

    pub fn edges(&self) -> [Edge; 3] {
        [
            Edge::new(self.a, self.b),
            Edge::new(self.a, self.c),
            Edge::new(self.b, self.c),
        ]
    }

    pub fn contains_edge(&self, e: &Edge) -> bool {
        !e.is_loop() && self.has_vertex(e.u()) && self.has_vertex(e.v())
    }

    pub fn has_vertex(&self, x: VertexId) -> bool {
        self.a == x || self.b == x || self.c == x
    }

    /// The vertex not on `e`, when `e` is one of the triangle's edges.
    pub fn opposite(&self, e: &Edge) -> Option<VertexId> {
        if !self.contains_edge(e) {
            return None;
        }
        self.vertices().into_iter().find(|x| !e.touches(*x))
    }

    pub fn as_edge_set(&self) -> EdgeSet {
        self.edges().into_iter().collect()
    }

    /// `|F ∩ T|`.
    pub fn overlap(&self, f: &EdgeSet) -> usize {
        self.edges().iter().filter(|e| f.contains(e)).count()
    }

    pub fn is_subset_of(&self, f: &EdgeSet) -> bool {
        self.edges().iter().all(|e| f.contains(e))
    }
}

impl TryFrom<[VertexId; 3]> for Triangle {
    type Error = String;
    fn try_from([x, y, z]: [VertexId; 3]) -> Result<Self, Self::Error> {
        Triangle::new(x, y, z).ok_or_else(|| format!("vertices {x}, {y}, {z} are not distinct"))
    }
}

impl From<Triangle> for [VertexId; 3] {
    fn from(t: Triangle) -> Self {
        t.vertices()
    }
}

impl fmt::Debug for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {} {})", self.a, self.b, self.c)
    }
}

/// A family of triangles with an edge → triangles index.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct TriangleSet {
    triangles: BTreeSet<Triangle>,
    by_edge: BTreeMap<Edge, BTreeSet<Triangle>>,
}

impl TriangleSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Every 3-cycle of `g` on distinct vertices, by sorted adjacency
    /// intersection. Self-loops never participate.
    pub fn enumerate(g: &WeightedGraph) -> Self {
        let n = g.vertex_count();
        // higher-numbered neighbors only
        let up: Vec<Vec<VertexId>> = (0..n)
            .map(|v| g.neighbors(v).iter().map(|&(x, _)| x).filter(|&x| x > v).collect())
            .collect();
        let mut out = TriangleSet::new();
        for a in 0..n {
            for (i, &b) in up[a].iter().enumerate() {
                // c > b with a-c and b-c both present
                let (xs, ys) = (&up[a][i + 1..], &up[b]);
                let (mut p, mut q) = (0, 0);
                while p < xs.len() && q < ys.len() {
                    match xs[p].cmp(&ys[q]) {
                        std::cmp::Ordering::Less => p += 1,
                        std::cmp::Ordering::Greater => q += 1,
                        std::cmp::Ordering::Equal => {
                            out.insert_unchecked(Triangle { a, b, c: xs[p] });
                            p += 1;
                            q += 1;
                        }
                    }
                }
            }
        }
        out
    }

    /// A family of listed triangles, each of which must be a triangle of `g`.
    pub fn from_triangles(
        g: &WeightedGraph,
        triangles: impl IntoIterator<Item = Triangle>,
    ) -> Result<Self, GraphError> {
        let mut out = TriangleSet::new();
        for t in triangles {
            if t.edges().iter().any(|e| !g.contains_edge(e)) {
                return Err(GraphError::NotATriangle(t));
            }
            out.insert_unchecked(t);
        }
        Ok(out)
    }

    fn insert_unchecked(&mut self, t: Triangle) {
        if self.triangles.insert(t) {
            for e in t.edges() {
                self.by_edge.entry(e).or_default().insert(t);
            }
        }
    }

    pub fn remove(&mut self, t: &Triangle) -> bool {
        if !self.triangles.remove(t) {
            return false;
        }
        for e in t.edges() {
            if let Some(set) = self.by_edge.get_mut(&e) {
                set.remove(t);
                if set.is_empty() {
                    self.by_edge.remove(&e);
                }
            }
        }
        true
    }

    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    pub fn contains(&self, t: &Triangle) -> bool {
        self.triangles.contains(t)
    }

    /// Triangles in canonical (sorted vertex triple) order.
    pub fn iter(&self) -> impl Iterator<Item = &Triangle> + '_ {
        self.triangles.iter()
    }

    /// Members containing edge `e`.
    pub fn containing<'a>(&'a self, e: &Edge) -> impl Iterator<Item = &'a Triangle> + 'a {
        self.by_edge.get(e).into_iter().flatten()
    }

    /// `T(F)`: members containing at least one edge of `f`.
    pub fn touching<'a>(&self, f: impl IntoIterator<Item = &'a Edge>) -> TriangleSet {
        let mut out = TriangleSet::new();
        for e in f {
            for t in self.containing(e) {
                out.insert_unchecked(*t);
            }
        }
        out
    }

    /// `T \ T(F)`.
    pub fn without_touching<'a>(&self, f: impl IntoIterator<Item = &'a Edge>) -> TriangleSet {
        let mut out = self.clone();
        for t in self.touching(f).iter() {
            out.remove(t);
        }
        out
    }

    /// First member that is a subset of `f`, in canonical order.
    pub fn first_contained_in(&self, f: &EdgeSet) -> Option<Triangle> {
        if self.triangles.len() <= f.len() {
            return self.triangles.iter().find(|t| t.is_subset_of(f)).copied();
        }
        let mut best: Option<Triangle> = None;
        for e in f {
            for t in self.containing(e) {
                if t.is_subset_of(f) && best.is_none_or(|b| *t < b) {
                    best = Some(*t);
                }
            }
        }
        best
    }

    /// True iff no member of the family is a subset of `f`.
    pub fn is_free(&self, f: &EdgeSet) -> bool {
        self.first_contained_in(f).is_none()
    }

    /// Every member has all its edges in `g`.
    pub fn is_valid_for(&self, g: &WeightedGraph) -> bool {
        self.triangles
            .iter()
            .all(|t| t.edges().iter().all(|e| g.contains_edge(e)))
    }
}

impl FromIterator<Triangle> for TriangleSet {
    fn from_iter<I: IntoIterator<Item = Triangle>>(iter: I) -> Self {
        let mut out = TriangleSet::new();
        for t in iter {
            out.insert_unchecked(t);
        }
        out
    }
}

impl std::fmt::Debug for TriangleSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.triangles.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> WeightedGraph {
        let mut t = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                t.push((a, b, 1));
            }
        }
        WeightedGraph::from_triples(n, t).unwrap()
    }

    fn tri(a: usize, b: usize, c: usize) -> Triangle {
        Triangle::new(a, b, c).unwrap()
    }

    #[test]
    fn triangle_requires_distinct_vertices() {
        assert!(Triangle::new(1, 1, 2).is_none());
        assert_eq!(tri(3, 1, 2).vertices(), [1, 2, 3]);
        assert_eq!(tri(0, 1, 2).opposite(&Edge::new(0, 2)), Some(1));
        assert!(!tri(0, 1, 2).contains_edge(&Edge::self_loop(0)));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(TriangleSet::enumerate(&complete(4)).len(), 4);
        let c4 = WeightedGraph::from_triples(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, 1)]).unwrap();
        assert_eq!(TriangleSet::enumerate(&c4).len(), 0);
        let path = WeightedGraph::from_triples(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1)]).unwrap();
        assert_eq!(TriangleSet::enumerate(&path).len(), 0);
    }

    #[test]
    fn self_loops_never_form_triangles() {
        let g = WeightedGraph::from_triples(3, [(0, 0, 1), (0, 1, 1), (1, 1, 1), (1, 2, 1)]).unwrap();
        assert!(TriangleSet::enumerate(&g).is_empty());
    }

    #[test]
    fn t_freeness() {
        let g = complete(3);
        let all = TriangleSet::enumerate(&g);
        let t = tri(0, 1, 2);
        assert!(!all.is_free(&t.as_edge_set()));
        let two: EdgeSet = [Edge::new(0, 1), Edge::new(1, 2)].into_iter().collect();
        assert!(all.is_free(&two));
        assert!(TriangleSet::new().is_free(&t.as_edge_set()));
    }

    #[test]
    fn touching_query() {
        let g = complete(4);
        let all = TriangleSet::enumerate(&g);
        assert!(all.touching(&EdgeSet::new()).is_empty());
        let everything: EdgeSet = g.edges().iter().copied().collect();
        assert_eq!(all.touching(&everything), all);
        let one: EdgeSet = [Edge::new(0, 1)].into_iter().collect();
        let got: Vec<_> = all.touching(&one).iter().copied().collect();
        assert_eq!(got, vec![tri(0, 1, 2), tri(0, 1, 3)]);
    }

    #[test]
    fn listed_triangles_are_validated() {
        let g = WeightedGraph::from_triples(4, [(0, 1, 1), (1, 2, 1), (0, 2, 1), (2, 3, 1)]).unwrap();
        assert!(TriangleSet::from_triangles(&g, [tri(0, 1, 2)]).is_ok());
        assert!(matches!(
            TriangleSet::from_triangles(&g, [tri(1, 2, 3)]),
            Err(GraphError::NotATriangle(_))
        ));
    }

    #[test]
    fn removal_keeps_index_consistent() {
        let g = complete(4);
        let mut all = TriangleSet::enumerate(&g);
        assert!(all.remove(&tri(0, 1, 2)));
        assert_eq!(all.containing(&Edge::new(0, 1)).count(), 1);
        assert!(!all.remove(&tri(0, 1, 2)));
    }
}
