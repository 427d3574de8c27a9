//! Constructive improving trails between two `T`-free 2-matchings.
//!
//! Given `T`-free 2-matchings `A1`, `A2` with `(1 - eps) w(A1) > w(A2)`,
//! [`find_witness`] builds an alternating trail `P` such that `A2 Δ P` is a
//! `T`-free 2-matching of larger weight and `|P| + 2 sl(P) <= 7/eps`.
//!
//! Without forbidden triangles the trail comes from [`base_case_trail`].
//! Otherwise one triangle is classified into one of ten cases, the instance
//! is rewritten into one with fewer forbidden triangles (or a short trail is
//! read off directly), the smaller instance is solved, and its trail is
//! lifted back. Every level re-checks its own trail with [`check_witness`].

mod base_case;
mod decompose;
mod reduction;

use serde::Serialize;

use crate::graph::{Edge, EdgeSet, WeightedGraph};
use crate::rational::Rational;
use crate::solver::check_epsilon;
use crate::trail::{gain, is_alternating, Budget, Trail};
use crate::triangles::{Triangle, TriangleSet};

pub use base_case::{base_case_trail, window_parameter};
pub use decompose::decompose_alternating_trails;
pub use reduction::{
    apply_reduction, classify_case, lift_trail, CaseTag, Classification, LiftMap, Reduction, ReductionStep,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    A1,
    A2,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::A1 => "A1",
            Side::A2 => "A2",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WitnessError {
    #[error("epsilon {0} is outside (0, 1]")]
    EpsilonOutOfRange(Rational),
    #[error("{side} uses edge {edge}, which is not in the graph")]
    NotInGraph { side: Side, edge: Edge },
    #[error("{side} is not a 2-matching")]
    NotTwoMatching { side: Side },
    #[error("{side} contains forbidden triangle {triangle:?}")]
    NotTFree { side: Side, triangle: Triangle },
    #[error("forbidden triangle {0:?} is not in the graph")]
    InvalidTriangle(Triangle),
    #[error("precondition (1 - eps) w(A1) > w(A2) fails: {lhs} <= {rhs}")]
    WeightCondition { lhs: Rational, rhs: Rational },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl WitnessError {
    /// Precondition failures, as opposed to bugs.
    pub fn is_contract(&self) -> bool {
        !matches!(self, WitnessError::Internal(_))
    }
}

#[derive(Clone, Debug)]
pub struct WitnessInput {
    pub graph: WeightedGraph,
    pub triangles: TriangleSet,
    pub a1: EdgeSet,
    pub a2: EdgeSet,
    pub epsilon: Rational,
}

impl WitnessInput {
    pub fn validate(&self) -> Result<(), WitnessError> {
        check_epsilon(&self.epsilon).map_err(|_| WitnessError::EpsilonOutOfRange(self.epsilon.clone()))?;
        check_sides(&self.graph, &self.triangles, &self.a1, &self.a2)?;
        let lhs = (Rational::one() - &self.epsilon) * self.graph.weight_of(&self.a1);
        let rhs = self.graph.weight_of(&self.a2);
        if lhs <= rhs {
            return Err(WitnessError::WeightCondition { lhs, rhs });
        }
        Ok(())
    }
}

fn check_sides(g: &WeightedGraph, t: &TriangleSet, a1: &EdgeSet, a2: &EdgeSet) -> Result<(), WitnessError> {
    if let Some(tri) = t.iter().find(|tri| tri.edges().iter().any(|e| !g.contains_edge(e))) {
        return Err(WitnessError::InvalidTriangle(*tri));
    }
    for (side, a) in [(Side::A1, a1), (Side::A2, a2)] {
        if let Some(edge) = g.missing_edge(a) {
            return Err(WitnessError::NotInGraph { side, edge });
        }
        if !a.is_two_matching() {
            return Err(WitnessError::NotTwoMatching { side });
        }
        if let Some(triangle) = t.first_contained_in(a) {
            return Err(WitnessError::NotTFree { side, triangle });
        }
    }
    Ok(())
}

/// The verifier's view of a candidate witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessCheck {
    pub in_graph: bool,
    pub alternating: bool,
    pub two_matching: bool,
    pub t_free: bool,
    /// `w(A2 Δ P) - w(A2)`; zero when the trail leaves the graph.
    pub gain: Rational,
    /// `|P| + 2 sl(P)`.
    pub cost: usize,
    pub budget: Rational,
    pub within_budget: bool,
}

impl WitnessCheck {
    pub fn passed(&self) -> bool {
        self.in_graph
            && self.alternating
            && self.two_matching
            && self.t_free
            && self.gain.is_positive()
            && self.within_budget
    }
}

/// Checks the three conclusions plus alternation, from scratch.
pub fn check_witness(
    g: &WeightedGraph,
    t: &TriangleSet,
    a1: &EdgeSet,
    a2: &EdgeSet,
    eps: &Rational,
    p: &Trail,
) -> WitnessCheck {
    let budget = Budget::for_epsilon(eps);
    let in_graph = p.edges().iter().all(|e| g.contains_edge(e));
    let next = a2.symmetric_difference(p.edges());
    WitnessCheck {
        in_graph,
        alternating: is_alternating(p, a1, a2),
        two_matching: next.is_two_matching(),
        t_free: t.is_free(&next),
        gain: if in_graph { gain(g, a2, p) } else { Rational::zero() },
        cost: p.cost(),
        within_budget: budget.admits(p),
        budget: budget.limit().clone(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub trail: Trail,
    pub gain: Rational,
    pub cost: usize,
    /// Cases applied from the top level down.
    pub trace: Vec<CaseTag>,
    /// The recursion bottomed out in the triangle-free case rather than a
    /// trail read off directly.
    pub reached_base: bool,
}

pub fn find_witness(input: &WitnessInput) -> Result<Witness, WitnessError> {
    input.validate()?;
    let mut trace = Vec::new();
    let mut reached_base = false;
    let trail = solve(
        &input.graph,
        &input.triangles,
        &input.a1,
        &input.a2,
        &input.epsilon,
        &mut trace,
        &mut reached_base,
    )?;
    let check = check_witness(
        &input.graph,
        &input.triangles,
        &input.a1,
        &input.a2,
        &input.epsilon,
        &trail,
    );
    Ok(Witness {
        gain: check.gain,
        cost: check.cost,
        trail,
        trace,
        reached_base,
    })
}

fn solve(
    g: &WeightedGraph,
    t: &TriangleSet,
    a1: &EdgeSet,
    a2: &EdgeSet,
    eps: &Rational,
    trace: &mut Vec<CaseTag>,
    reached_base: &mut bool,
) -> Result<Trail, WitnessError> {
    let trail = if t.is_empty() {
        *reached_base = true;
        base_case_trail(g, a1, a2, eps)?
    } else {
        let class = classify_case(g, t, a1, a2)?;
        trace.push(class.tag);
        match apply_reduction(&class, g, t, a1, a2)? {
            Reduction::Shortcut(p) => p,
            Reduction::Step(step) => {
                audit_step(&step, g, t, a1, a2)?;
                let inner = solve(
                    &step.graph,
                    &step.triangles,
                    &step.a1,
                    &step.a2,
                    eps,
                    trace,
                    reached_base,
                )?;
                lift_trail(&step, &inner, g)?
            }
        }
    };
    let check = check_witness(g, t, a1, a2, eps, &trail);
    if !check.passed() {
        return Err(WitnessError::Internal(format!(
            "trail {trail:?} fails verification after {:?}: {check:?}",
            trace.last()
        )));
    }
    Ok(trail)
}

/// The bookkeeping every reduction promises.
fn audit_step(
    step: &ReductionStep,
    g: &WeightedGraph,
    t: &TriangleSet,
    a1: &EdgeSet,
    a2: &EdgeSet,
) -> Result<(), WitnessError> {
    let fail = |what: &str| Err(WitnessError::Internal(format!("case {}: {what}", step.case)));
    if step.triangles.len() >= t.len() {
        return fail("forbidden family did not shrink");
    }
    if check_sides(&step.graph, &step.triangles, &step.a1, &step.a2).is_err() {
        return fail("reduced sides are not T'-free 2-matchings");
    }
    if step.graph.weight_of(&step.a1) < g.weight_of(a1) {
        return fail("w'(A1') < w(A1)");
    }
    if step.graph.weight_of(&step.a2) != g.weight_of(a2) {
        return fail("w'(A2') != w(A2)");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_witness() {
        let g = WeightedGraph::from_triples(2, [(0, 1, 1)]).unwrap();
        let input = WitnessInput {
            graph: g,
            triangles: TriangleSet::new(),
            a1: [Edge::new(0, 1)].into_iter().collect(),
            a2: EdgeSet::new(),
            epsilon: Rational::new(1, 2),
        };
        let w = find_witness(&input).unwrap();
        assert_eq!(w.trail.nodes(), &[0, 1]);
        assert!(w.reached_base);
        assert!(w.trace.is_empty());
    }

    #[test]
    fn k3_exchange() {
        // weights 01 -> 3, 12 -> 2, 02 -> 2
        let g = WeightedGraph::from_triples(3, [(0, 1, 3), (1, 2, 2), (0, 2, 2)]).unwrap();
        let t = TriangleSet::enumerate(&g);
        let a1: EdgeSet = [Edge::new(0, 1), Edge::new(0, 2)].into_iter().collect();
        let a2: EdgeSet = [Edge::new(1, 2), Edge::new(0, 2)].into_iter().collect();
        let mut input = WitnessInput {
            graph: g,
            triangles: t,
            a1,
            a2,
            epsilon: Rational::new(1, 5),
        };
        assert!(matches!(
            find_witness(&input),
            Err(WitnessError::WeightCondition { .. })
        ));
        input.epsilon = Rational::new(1, 10);
        let w = find_witness(&input).unwrap();
        assert_eq!(w.gain, Rational::one());
        assert_eq!(w.trace, vec![CaseTag::Case2]);
    }

    #[test]
    fn contract_errors() {
        let g = WeightedGraph::from_triples(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap();
        let t = TriangleSet::enumerate(&g);
        let all: EdgeSet = g.edges().iter().copied().collect();
        let input = WitnessInput {
            graph: g.clone(),
            triangles: t.clone(),
            a1: all,
            a2: EdgeSet::new(),
            epsilon: Rational::new(1, 2),
        };
        let err = find_witness(&input).unwrap_err();
        assert!(matches!(err, WitnessError::NotTFree { side: Side::A1, .. }));
        assert!(err.is_contract());
        let input = WitnessInput {
            epsilon: Rational::from_integer(2),
            ..input
        };
        assert!(matches!(find_witness(&input), Err(WitnessError::EpsilonOutOfRange(_))));
    }
}
