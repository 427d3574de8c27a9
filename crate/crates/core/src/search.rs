//! Bounded enumeration of augmenting trails.
//!
//! The search is a depth-first walk over trails: starting edges in canonical
//! order (each non-loop edge from its smaller endpoint first), extensions in
//! ascending neighbor order. Every non-empty prefix is a candidate. A
//! candidate is accepted when
//!
//! * its edge sequence is not lexicographically larger than its reverse
//!   (a trail and its reverse give the same `M Δ P`),
//! * `M Δ P` keeps every degree at most two,
//! * no forbidden triangle touching `P` ends up inside `M Δ P`,
//! * the weight gain is strictly positive.
//!
//! Degree feasibility is tracked incrementally through a per-vertex delta
//! and a count of over-full vertices. Only triangles containing an added edge
//! can become violated, since `M` itself is `T`-free.

use serde::{Deserialize, Serialize};

use crate::graph::{EdgeId, EdgeSet, VertexId, WeightedGraph};
use crate::numeric::{integer_weights, to_rational, Exact, IntWeights};
use crate::rational::Rational;
use crate::trail::{Budget, Trail};
use crate::triangles::TriangleSet;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// The first augmenting trail in enumeration order.
    #[default]
    First,
    /// A trail of maximum gain; ties go to the earliest in enumeration order.
    Best,
}

/// Which trails the search walks over.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchClass {
    /// Consecutive edges alternate between `M` and non-`M` edges.
    #[default]
    Alternating,
    /// Every trail within budget.
    All,
}

/// An augmenting trail and its exact gain `w(M Δ P) - w(M)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Found {
    pub trail: Trail,
    pub gain: Rational,
}

/// Returns an augmenting trail for `m` with `|P| + 2 sl(P)` within `budget`,
/// or `None` when the searched class holds none.
///
/// `m` must be a `t`-free 2-matching of `g`.
pub fn enumerate_augmenting_trails(
    g: &WeightedGraph,
    m: &EdgeSet,
    t: &TriangleSet,
    budget: &Budget,
    strategy: Strategy,
    class: SearchClass,
) -> Option<Trail> {
    find_augmenting_trail(g, m, t, budget, strategy, class).map(|f| f.trail)
}

/// As [`enumerate_augmenting_trails`], also reporting the gain.
pub fn find_augmenting_trail(
    g: &WeightedGraph,
    m: &EdgeSet,
    t: &TriangleSet,
    budget: &Budget,
    strategy: Strategy,
    class: SearchClass,
) -> Option<Found> {
    debug_assert!(m.is_two_matching(), "search requires a 2-matching");
    let (ints, scale) = integer_weights(g.weights());
    match ints {
        IntWeights::Small(w) => run(g, m, t, budget, strategy, class, &w).map(|(trail, gain)| Found {
            trail,
            gain: to_rational(gain, &scale),
        }),
        IntWeights::Big(w) => run(g, m, t, budget, strategy, class, &w).map(|(trail, gain)| Found {
            trail,
            gain: to_rational(gain, &scale),
        }),
    }
}

fn run<N: Exact>(
    g: &WeightedGraph,
    m: &EdgeSet,
    t: &TriangleSet,
    budget: &Budget,
    strategy: Strategy,
    class: SearchClass,
    weights: &[N],
) -> Option<(Trail, N)> {
    let max_cost = budget.max_cost();
    if max_cost == 0 || g.edge_count() == 0 {
        return None;
    }
    let mut search = Search::new(g, m, t, strategy, class, max_cost, weights);
    for start in 0..g.edge_count() {
        let e = g.edge(start);
        let origins: &[VertexId] = if e.is_loop() { &[e.u()] } else { &[e.u(), e.v()] };
        for &origin in origins {
            search.nodes.push(origin);
            let stop = search.descend(start, e.other(origin).expect("endpoint"));
            search.nodes.pop();
            if stop {
                return search.best.map(|(gain, nodes)| (trail_from(nodes), gain));
            }
        }
    }
    search.best.map(|(gain, nodes)| (trail_from(nodes), gain))
}

fn trail_from(nodes: Vec<VertexId>) -> Trail {
    Trail::from_nodes(nodes).expect("search keeps edges distinct")
}

struct Search<'a, N> {
    g: &'a WeightedGraph,
    weights: &'a [N],
    strategy: Strategy,
    class: SearchClass,
    max_cost: usize,
    in_m: Vec<bool>,
    m_degree: Vec<i32>,
    // triangles as edge-id triples, per edge id
    triangles_of: Vec<Vec<[EdgeId; 3]>>,
    max_non_m: N,
    used: Vec<bool>,
    nodes: Vec<VertexId>,
    path: Vec<EdgeId>,
    delta: Vec<i32>,
    overfull: usize,
    cost: usize,
    gain: N,
    best: Option<(N, Vec<VertexId>)>,
}

impl<'a, N: Exact> Search<'a, N> {
    fn new(
        g: &'a WeightedGraph,
        m: &EdgeSet,
        t: &TriangleSet,
        strategy: Strategy,
        class: SearchClass,
        max_cost: usize,
        weights: &'a [N],
    ) -> Self {
        let n = g.vertex_count();
        let in_m: Vec<bool> = g.edges().iter().map(|e| m.contains(e)).collect();
        let mut m_degree = vec![0i32; n];
        for e in m {
            m_degree[e.u()] += 1;
            m_degree[e.v()] += 1;
        }
        let mut triangles_of = vec![Vec::new(); g.edge_count()];
        for tri in t.iter() {
            let ids = tri.edges().map(|e| g.edge_id(&e).expect("triangle edge in graph"));
            for id in ids {
                triangles_of[id].push(ids);
            }
        }
        let max_non_m = (0..g.edge_count())
            .filter(|&i| !in_m[i])
            .map(|i| weights[i].clone())
            .max()
            .unwrap_or_else(N::zero);
        Search {
            g,
            weights,
            strategy,
            class,
            max_cost,
            in_m,
            m_degree,
            triangles_of,
            max_non_m,
            used: vec![false; g.edge_count()],
            nodes: Vec::new(),
            path: Vec::new(),
            delta: vec![0; n],
            overfull: 0,
            cost: 0,
            gain: N::zero(),
            best: None,
        }
    }

    fn bump(&mut self, v: VertexId, by: i32) {
        let before = self.m_degree[v] + self.delta[v] > 2;
        self.delta[v] += by;
        let after = self.m_degree[v] + self.delta[v] > 2;
        match (before, after) {
            (false, true) => self.overfull += 1,
            (true, false) => self.overfull -= 1,
            _ => {}
        }
    }

    fn push(&mut self, id: EdgeId, to: VertexId) {
        let e = self.g.edge(id);
        let sign = if self.in_m[id] { -1 } else { 1 };
        if e.is_loop() {
            self.bump(e.u(), 2 * sign);
        } else {
            self.bump(e.u(), sign);
            self.bump(e.v(), sign);
        }
        self.used[id] = true;
        self.path.push(id);
        self.nodes.push(to);
        self.cost += if e.is_loop() { 3 } else { 1 };
        self.gain = if self.in_m[id] {
            self.gain.clone() - self.weights[id].clone()
        } else {
            self.gain.clone() + self.weights[id].clone()
        };
    }

    fn pop(&mut self) {
        let id = self.path.pop().expect("non-empty path");
        self.nodes.pop();
        let e = self.g.edge(id);
        let sign = if self.in_m[id] { 1 } else { -1 };
        if e.is_loop() {
            self.bump(e.u(), 2 * sign);
        } else {
            self.bump(e.u(), sign);
            self.bump(e.v(), sign);
        }
        self.used[id] = false;
        self.cost -= if e.is_loop() { 3 } else { 1 };
        self.gain = if self.in_m[id] {
            self.gain.clone() + self.weights[id].clone()
        } else {
            self.gain.clone() - self.weights[id].clone()
        };
    }

    fn threshold(&self) -> N {
        match &self.best {
            Some((g, _)) => g.clone(),
            None => N::zero(),
        }
    }

    /// Adds edge `id` arriving at `to`, explores, and undoes. Returns `true`
    /// when the search is finished.
    fn descend(&mut self, id: EdgeId, to: VertexId) -> bool {
        let e = self.g.edge(id);
        let step = if e.is_loop() { 3 } else { 1 };
        if self.cost + step > self.max_cost {
            return false;
        }
        self.push(id, to);
        let done = self.visit();
        self.pop();
        done
    }

    fn visit(&mut self) -> bool {
        if self.gain > self.threshold() && self.overfull == 0 && self.is_canonical() && self.triangle_free() {
            self.best = Some((self.gain.clone(), self.nodes.clone()));
            if self.strategy == Strategy::First {
                return true;
            }
        }
        if !self.may_improve() {
            return false;
        }
        let here = *self.nodes.last().expect("non-empty");
        let last_in_m = self.in_m[*self.path.last().expect("non-empty")];
        let neighbors = self.g.neighbors(here);
        for &(next, id) in neighbors {
            if self.used[id] {
                continue;
            }
            if self.class == SearchClass::Alternating && self.in_m[id] == last_in_m {
                continue;
            }
            if self.descend(id, next) {
                return true;
            }
        }
        false
    }

    /// Upper bound on the gain of any extension, against the acceptance threshold.
    fn may_improve(&self) -> bool {
        let remaining = self.max_cost - self.cost;
        if remaining == 0 {
            return false;
        }
        let last_in_m = self.in_m[*self.path.last().expect("non-empty")];
        let additions = match self.class {
            SearchClass::All => remaining,
            // next edge must be non-M when the last one was in M
            SearchClass::Alternating if last_in_m => remaining.div_ceil(2),
            SearchClass::Alternating => remaining / 2,
        };
        let bound = self.gain.clone() + N::from_usize(additions).mul(&self.max_non_m);
        bound > self.threshold()
    }

    fn is_canonical(&self) -> bool {
        let fwd = self.path.iter();
        let rev = self.path.iter().rev();
        fwd.le(rev)
    }

    fn triangle_free(&self) -> bool {
        let present = |id: EdgeId| self.in_m[id] != self.used[id];
        self.path
            .iter()
            .filter(|&&id| !self.in_m[id])
            .all(|&id| self.triangles_of[id].iter().all(|tri| !tri.iter().all(|&x| present(x))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;
    use crate::trail::is_augmenting;

    fn budget(num: i64, den: i64) -> Budget {
        Budget::for_epsilon(&Rational::new(num, den))
    }

    #[test]
    fn single_edge() {
        let g = WeightedGraph::from_triples(2, [(0, 1, 1)]).unwrap();
        let p = enumerate_augmenting_trails(
            &g,
            &EdgeSet::new(),
            &TriangleSet::new(),
            &budget(1, 1),
            Strategy::First,
            SearchClass::Alternating,
        )
        .unwrap();
        assert_eq!(p.nodes(), &[0, 1]);
    }

    #[test]
    fn exchanges_light_edge_for_heavy_in_forbidden_triangle() {
        // weights: 01 -> 3, 12 -> 2, 02 -> 2
        let g = WeightedGraph::from_triples(3, [(0, 1, 3), (1, 2, 2), (0, 2, 2)]).unwrap();
        let t = TriangleSet::enumerate(&g);
        let m: EdgeSet = [Edge::new(1, 2), Edge::new(0, 2)].into_iter().collect();
        for strategy in [Strategy::First, Strategy::Best] {
            let found = find_augmenting_trail(&g, &m, &t, &budget(1, 1), strategy, SearchClass::Alternating).unwrap();
            assert_eq!(found.gain, Rational::from_integer(1));
            assert!(is_augmenting(&g, &found.trail, &m, &t));
            let next = m.symmetric_difference(found.trail.edges());
            assert_eq!(g.weight_of(&next), Rational::from_integer(5));
        }
    }

    #[test]
    fn optimal_solution_has_no_augmenting_trail() {
        let g = WeightedGraph::from_triples(3, [(0, 1, 3), (1, 2, 2), (0, 2, 2)]).unwrap();
        let t = TriangleSet::enumerate(&g);
        let m: EdgeSet = [Edge::new(0, 1), Edge::new(0, 2)].into_iter().collect();
        for class in [SearchClass::Alternating, SearchClass::All] {
            assert!(find_augmenting_trail(&g, &m, &t, &budget(1, 4), Strategy::Best, class).is_none());
        }
    }

    #[test]
    fn zero_weight_never_augments() {
        let g = WeightedGraph::from_triples(2, [(0, 1, 0)]).unwrap();
        assert!(find_augmenting_trail(
            &g,
            &EdgeSet::new(),
            &TriangleSet::new(),
            &budget(1, 1),
            Strategy::First,
            SearchClass::All
        )
        .is_none());
    }

    #[test]
    fn self_loop_budget_counts_three() {
        // a lone self-loop costs 1 + 2 = 3
        let g = WeightedGraph::from_triples(1, [(0, 0, 5)]).unwrap();
        let tight = Budget::from_limit(Rational::from_integer(2));
        assert!(find_augmenting_trail(
            &g,
            &EdgeSet::new(),
            &TriangleSet::new(),
            &tight,
            Strategy::First,
            SearchClass::All
        )
        .is_none());
        let ok = Budget::from_limit(Rational::from_integer(3));
        let found = find_augmenting_trail(
            &g,
            &EdgeSet::new(),
            &TriangleSet::new(),
            &ok,
            Strategy::First,
            SearchClass::All,
        )
        .unwrap();
        assert_eq!(found.trail.nodes(), &[0, 0]);
    }

    #[test]
    fn best_prefers_larger_gain() {
        let g = WeightedGraph::from_triples(4, [(0, 1, 1), (2, 3, 4)]).unwrap();
        let first = find_augmenting_trail(
            &g,
            &EdgeSet::new(),
            &TriangleSet::new(),
            &budget(1, 1),
            Strategy::First,
            SearchClass::Alternating,
        )
        .unwrap();
        let best = find_augmenting_trail(
            &g,
            &EdgeSet::new(),
            &TriangleSet::new(),
            &budget(1, 1),
            Strategy::Best,
            SearchClass::Alternating,
        )
        .unwrap();
        assert_eq!(first.trail.nodes(), &[0, 1]);
        assert_eq!(best.trail.nodes(), &[2, 3]);
        assert_eq!(best.gain, Rational::from_integer(4));
    }

    #[test]
    fn rational_weights_are_exact() {
        let g = WeightedGraph::new(
            3,
            [
                (Edge::new(0, 1), Rational::new(1, 3)),
                (Edge::new(1, 2), Rational::new(1, 6)),
            ],
        )
        .unwrap();
        let m: EdgeSet = [Edge::new(0, 1)].into_iter().collect();
        // swapping 1/3 for 1/6 loses weight; only extending helps
        let found = find_augmenting_trail(
            &g,
            &m,
            &TriangleSet::new(),
            &budget(1, 1),
            Strategy::Best,
            SearchClass::All,
        )
        .unwrap();
        assert_eq!(found.gain, Rational::new(1, 6));
    }
}
