//! Ground truth for small instances, the drop-one-edge baseline, and an
//! independent feasibility checker.

use serde::Serialize;

use crate::error::ConfigError;
use crate::graph::{Edge, EdgeSet, VertexId, WeightedGraph};
use crate::numeric::{integer_weights, Exact, IntWeights};
use crate::rational::Rational;
use crate::solver::{solve_ptas, SolveReport, SolverConfig};
use crate::triangles::{Triangle, TriangleSet};

pub const DEFAULT_EDGE_LIMIT: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("instance has {edges} edges, oracle limit is {limit}")]
pub struct OracleTooLarge {
    pub edges: usize,
    pub limit: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub solution: EdgeSet,
    pub weight: Rational,
    pub nodes_explored: u64,
}

/// Maximum-weight `T`-free 2-matching by branch and bound.
///
/// Edges are decided heaviest first. A branch is cut when the current weight
/// plus every undecided edge that still fits the degree bound cannot beat the
/// incumbent.
pub fn exact_opt(g: &WeightedGraph, t: &TriangleSet, edge_limit: usize) -> Result<OracleResult, OracleTooLarge> {
    if g.edge_count() > edge_limit {
        return Err(OracleTooLarge {
            edges: g.edge_count(),
            limit: edge_limit,
        });
    }
    let (ints, _) = integer_weights(g.weights());
    let (chosen, nodes_explored) = match ints {
        IntWeights::Small(w) => branch_and_bound(g, t, &w),
        IntWeights::Big(w) => branch_and_bound(g, t, &w),
    };
    let solution: EdgeSet = chosen.into_iter().map(|id| g.edge(id)).collect();
    Ok(OracleResult {
        weight: g.weight_of(&solution),
        solution,
        nodes_explored,
    })
}

fn branch_and_bound<N: Exact>(g: &WeightedGraph, t: &TriangleSet, weights: &[N]) -> (Vec<usize>, u64) {
    let mut order: Vec<usize> = (0..g.edge_count()).collect();
    // stable: equal weights keep canonical edge order
    order.sort_by(|&a, &b| weights[b].cmp(&weights[a]));
    let triangles_of: Vec<Vec<[usize; 3]>> = (0..g.edge_count())
        .map(|id| {
            t.containing(&g.edge(id))
                .map(|tri| tri.edges().map(|e| g.edge_id(&e).expect("triangle edge in graph")))
                .collect()
        })
        .collect();
    let mut bb = Bnb {
        g,
        weights,
        order,
        triangles_of,
        degree: vec![0; g.vertex_count()],
        chosen: vec![false; g.edge_count()],
        stack: Vec::new(),
        current: N::zero(),
        best: N::zero(),
        best_set: Vec::new(),
        nodes: 0,
    };
    bb.explore(0);
    let mut best = bb.best_set;
    best.sort_unstable();
    (best, bb.nodes)
}

struct Bnb<'a, N> {
    g: &'a WeightedGraph,
    weights: &'a [N],
    order: Vec<usize>,
    triangles_of: Vec<Vec<[usize; 3]>>,
    degree: Vec<usize>,
    chosen: Vec<bool>,
    stack: Vec<usize>,
    current: N,
    best: N,
    best_set: Vec<usize>,
    nodes: u64,
}

impl<N: Exact> Bnb<'_, N> {
    fn fits(&self, id: usize) -> bool {
        let e = self.g.edge(id);
        if e.is_loop() {
            self.degree[e.u()] == 0
        } else {
            self.degree[e.u()] < 2 && self.degree[e.v()] < 2
        }
    }

    fn closes_triangle(&self, id: usize) -> bool {
        self.triangles_of[id]
            .iter()
            .any(|tri| tri.iter().all(|&x| x == id || self.chosen[x]))
    }

    fn bound(&self, from: usize) -> N {
        let mut total = self.current.clone();
        for &id in &self.order[from..] {
            if self.fits(id) {
                total = total + self.weights[id].clone();
            }
        }
        total
    }

    fn set(&mut self, id: usize, on: bool) {
        let e = self.g.edge(id);
        let step = |d: &mut usize| if on { *d += 1 } else { *d -= 1 };
        step(&mut self.degree[e.u()]);
        step(&mut self.degree[e.v()]);
        self.chosen[id] = on;
        if on {
            self.stack.push(id);
            self.current = self.current.clone() + self.weights[id].clone();
        } else {
            self.stack.pop();
            self.current = self.current.clone() - self.weights[id].clone();
        }
    }

    fn explore(&mut self, depth: usize) {
        self.nodes += 1;
        if self.current > self.best {
            self.best = self.current.clone();
            self.best_set = self.stack.clone();
        }
        if depth == self.order.len() || self.bound(depth) <= self.best {
            return;
        }
        let id = self.order[depth];
        if self.fits(id) && !self.closes_triangle(id) {
            self.set(id, true);
            self.explore(depth + 1);
            self.set(id, false);
        }
        self.explore(depth + 1);
    }
}

/// Approximate maximum-weight 2-matching (the PTAS with no forbidden
/// triangles), then drop the lightest edge of each forbidden triangle it
/// contains.
///
/// Triangles are handled one at a time in canonical order and containment is
/// recomputed after every removal. Ties among edge weights go to the
/// canonically smallest edge.
pub fn baseline_two_thirds(g: &WeightedGraph, t: &TriangleSet, eps: &Rational) -> Result<SolveReport, ConfigError> {
    let config = SolverConfig::new(eps.clone())?;
    let mut report = solve_ptas(g, &TriangleSet::new(), &config)?;
    let mut solution = report.solution.clone();
    while let Some(tri) = t.first_contained_in(&solution) {
        let lightest = tri
            .edges()
            .into_iter()
            .min_by(|a, b| g.weight_of([a]).cmp(&g.weight_of([b])).then(a.cmp(b)))
            .expect("three edges");
        solution.remove(&lightest);
    }
    report.weight = g.weight_of(&solution);
    report.solution = solution;
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    MissingEdge { edge: Edge },
    Degree { vertex: VertexId, degree: usize },
    Triangle { triangle: Triangle },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::MissingEdge { edge } => write!(f, "edge {edge} is not in the graph"),
            Violation::Degree { vertex, degree } => write!(f, "vertex {vertex} has degree {degree}"),
            Violation::Triangle { triangle } => {
                let [a, b, c] = triangle.vertices();
                write!(f, "forbidden triangle {a} {b} {c} is contained in the solution")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Feasible { weight: Rational },
    Violation { violation: Violation },
}

impl Verdict {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Verdict::Feasible { .. })
    }
}

/// Checks membership, then degrees, then forbidden triangles, and reports the
/// first problem found.
///
/// Deliberately shares no code with the solver's incremental checks.
pub fn verify_solution(g: &WeightedGraph, t: &TriangleSet, f: &EdgeSet) -> Verdict {
    for e in f {
        if !g.contains_edge(e) {
            return Verdict::Violation {
                violation: Violation::MissingEdge { edge: *e },
            };
        }
    }
    let mut degree = vec![0usize; g.vertex_count()];
    for e in f {
        degree[e.u()] += 1;
        degree[e.v()] += 1;
    }
    if let Some((vertex, &d)) = degree.iter().enumerate().find(|(_, &d)| d > 2) {
        return Verdict::Violation {
            violation: Violation::Degree { vertex, degree: d },
        };
    }
    for tri in t.iter() {
        if tri.edges().iter().all(|e| f.contains(e)) {
            return Verdict::Violation {
                violation: Violation::Triangle { triangle: *tri },
            };
        }
    }
    Verdict::Feasible { weight: g.weight_of(f) }
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

    #[test]
    fn oracle_small_cases() {
        let k3 = complete(3);
        let opt = exact_opt(&k3, &TriangleSet::enumerate(&k3), DEFAULT_EDGE_LIMIT).unwrap();
        assert_eq!(opt.weight, Rational::from_integer(2));

        let k4 = complete(4);
        let opt = exact_opt(&k4, &TriangleSet::enumerate(&k4), DEFAULT_EDGE_LIMIT).unwrap();
        assert_eq!(opt.weight, Rational::from_integer(4));

        let lp = WeightedGraph::from_triples(1, [(0, 0, 1)]).unwrap();
        let opt = exact_opt(&lp, &TriangleSet::new(), DEFAULT_EDGE_LIMIT).unwrap();
        assert_eq!(opt.weight, Rational::one());
        assert!(opt.nodes_explored > 0);
    }

    #[test]
    fn oracle_refuses_large_instances() {
        let k9 = complete(9);
        assert_eq!(
            exact_opt(&k9, &TriangleSet::new(), 30).unwrap_err(),
            OracleTooLarge { edges: 36, limit: 30 }
        );
    }

    #[test]
    fn loop_and_edge_at_same_vertex_conflict() {
        let g = WeightedGraph::from_triples(2, [(0, 0, 2), (0, 1, 3), (1, 1, 2)]).unwrap();
        let opt = exact_opt(&g, &TriangleSet::new(), DEFAULT_EDGE_LIMIT).unwrap();
        assert_eq!(opt.weight, Rational::from_integer(4));
    }

    #[test]
    fn baseline_examples() {
        let g = WeightedGraph::from_triples(3, [(0, 1, 3), (1, 2, 2), (0, 2, 2)]).unwrap();
        let t = TriangleSet::enumerate(&g);
        let rep = baseline_two_thirds(&g, &t, &Rational::new(1, 10)).unwrap();
        assert_eq!(rep.weight, Rational::from_integer(5));

        let k3 = complete(3);
        let rep = baseline_two_thirds(&k3, &TriangleSet::enumerate(&k3), &Rational::new(1, 10)).unwrap();
        assert_eq!(rep.weight, Rational::from_integer(2));
        assert!(verify_solution(&k3, &TriangleSet::enumerate(&k3), &rep.solution).is_feasible());
    }

    #[test]
    fn verdicts() {
        let g = complete(3);
        let t = TriangleSet::enumerate(&g);
        let all: EdgeSet = g.edges().iter().copied().collect();
        assert_eq!(
            verify_solution(&g, &t, &all),
            Verdict::Violation {
                violation: Violation::Triangle {
                    triangle: Triangle::new(0, 1, 2).unwrap()
                }
            }
        );
        assert_eq!(
            verify_solution(&g, &t, &EdgeSet::new()),
            Verdict::Feasible {
                weight: Rational::zero()
            }
        );
        let lp = WeightedGraph::from_triples(2, [(0, 0, 1), (0, 1, 1)]).unwrap();
        let f: EdgeSet = lp.edges().iter().copied().collect();
        assert_eq!(
            verify_solution(&lp, &TriangleSet::new(), &f),
            Verdict::Violation {
                violation: Violation::Degree { vertex: 0, degree: 3 }
            }
        );
        let stray: EdgeSet = [Edge::new(0, 5)].into_iter().collect();
        assert!(matches!(
            verify_solution(&g, &t, &stray),
            Verdict::Violation {
                violation: Violation::MissingEdge { .. }
            }
        ));
    }
}
