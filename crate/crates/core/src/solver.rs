//! The local-search PTAS.
//!
//! `solve_ptas` splits the accuracy parameter into a scaling part and a
//! search part, rounds the weights down to integers in `0..=floor(n/eps)`,
//! and runs local search on the integer instance starting from the empty
//! solution. Each accepted trail raises the integer weight by at least one,
//! so the loop stops after at most `n^2/eps` iterations.

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::ConfigError;
use crate::graph::{EdgeSet, WeightedGraph};
use crate::rational::Rational;
use crate::search::{find_augmenting_trail, SearchClass, Strategy};
use crate::trail::{Budget, Trail};
use crate::triangles::TriangleSet;

/// How `eps_total` is divided between weight scaling and local search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EpsilonSplit {
    pub scale: Rational,
    pub search: Rational,
}

impl EpsilonSplit {
    /// `eps_total / 2` each, since `(1 - e/2)^2 >= 1 - e`.
    pub fn halves(total: &Rational) -> Self {
        let half = total / &Rational::from_integer(2);
        EpsilonSplit {
            scale: half.clone(),
            search: half,
        }
    }

    /// Checks both parts lie in `(0, 1]` and `(1-a)(1-b) >= 1 - total`.
    pub fn validate(&self, total: &Rational) -> Result<(), ConfigError> {
        check_epsilon(&self.scale)?;
        check_epsilon(&self.search)?;
        let one = Rational::one();
        let product = (&one - &self.scale) * (&one - &self.search);
        if product < &one - total {
            return Err(ConfigError::BadSplit {
                scale: self.scale.clone(),
                search: self.search.clone(),
                total: total.clone(),
            });
        }
        Ok(())
    }
}

pub fn check_epsilon(eps: &Rational) -> Result<(), ConfigError> {
    if eps.is_positive() && *eps <= 1 {
        Ok(())
    } else {
        Err(ConfigError::EpsilonOutOfRange(eps.clone()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolverConfig {
    pub epsilon: Rational,
    pub strategy: Strategy,
    pub search_class: SearchClass,
    /// Overrides the `n^2/eps` iteration bound.
    pub iteration_cap: Option<u64>,
    pub split: EpsilonSplit,
}

impl SolverConfig {
    pub fn new(epsilon: Rational) -> Result<Self, ConfigError> {
        check_epsilon(&epsilon)?;
        let split = EpsilonSplit::halves(&epsilon);
        Ok(SolverConfig {
            epsilon,
            strategy: Strategy::First,
            search_class: SearchClass::Alternating,
            iteration_cap: None,
            split,
        })
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn with_search_class(mut self, class: SearchClass) -> Self {
        self.search_class = class;
        self
    }

    pub fn with_iteration_cap(mut self, cap: Option<u64>) -> Self {
        self.iteration_cap = cap;
        self
    }

    pub fn with_split(mut self, split: EpsilonSplit) -> Result<Self, ConfigError> {
        split.validate(&self.epsilon)?;
        self.split = split;
        Ok(self)
    }

    /// `7/eps` for the search part.
    pub fn budget(&self) -> Budget {
        Budget::for_epsilon(&self.split.search)
    }
}

/// The integer instance `w'(e) = floor((w(e)/W) (n/eps))`.
#[derive(Clone, Debug)]
pub struct ScaledInstance {
    pub graph: WeightedGraph,
    pub max_weight: Rational,
    pub epsilon: Rational,
    /// The `n` in the formula: the input graph's vertex count.
    pub n: usize,
}

impl ScaledInstance {
    /// `floor(n/eps)`, the largest scaled weight.
    pub fn weight_bound(&self) -> BigInt {
        scaled_bound(self.n, &self.epsilon)
    }
}

pub fn scaled_bound(n: usize, eps: &Rational) -> BigInt {
    (Rational::from_integer(n as i64) / eps).floor()
}

/// Raised when every weight is zero; any solution (including the empty one) is optimal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("all edge weights are zero")]
pub struct TrivialInstance;

pub fn scale_weights(g: &WeightedGraph, eps: &Rational) -> Result<ScaledInstance, TrivialInstance> {
    let max_weight = match g.max_weight() {
        Some(w) if w.is_positive() => w.clone(),
        _ => return Err(TrivialInstance),
    };
    let n = g.vertex_count();
    let factor = Rational::from_integer(n as i64) / eps / &max_weight;
    let scaled = g
        .iter()
        .map(|(e, w)| (e, Rational::from_integer((w * &factor).floor())));
    let graph = WeightedGraph::new(n, scaled).expect("same edges, non-negative weights");
    Ok(ScaledInstance {
        graph,
        max_weight,
        epsilon: eps.clone(),
        n,
    })
}

/// Outcome of a solver run.
#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    pub solution: EdgeSet,
    /// Weight under the input (unscaled) weights.
    pub weight: Rational,
    /// Weight under the instance the search actually ran on.
    pub search_weight: Rational,
    pub iterations: u64,
    /// `n^2/eps` when the search ran on scaled integer weights.
    pub iteration_bound: Option<Rational>,
    pub iteration_cap_hit: bool,
    /// Gain of each accepted trail, on the searched instance.
    pub gains: Vec<Rational>,
    pub trails: Vec<Trail>,
    pub n: usize,
    pub epsilon_total: Rational,
    pub epsilon_scale: Option<Rational>,
    pub epsilon_search: Rational,
    pub budget: Rational,
    pub trivial: bool,
    #[serde(skip)]
    pub elapsed: std::time::Duration,
}

/// Algorithm 1 from the empty solution, on `g` as given.
///
/// `cap` bounds the iterations; `None` runs until no augmenting trail exists.
pub fn local_search(
    g: &WeightedGraph,
    t: &TriangleSet,
    eps: &Rational,
    strategy: Strategy,
    class: SearchClass,
    cap: Option<u64>,
) -> Result<SolveReport, ConfigError> {
    check_epsilon(eps)?;
    let started = Instant::now();
    let budget = Budget::for_epsilon(eps);
    let mut solution = EdgeSet::new();
    let mut gains = Vec::new();
    let mut trails = Vec::new();
    let mut cap_hit = false;
    loop {
        if cap.is_some_and(|c| gains.len() as u64 >= c) {
            cap_hit = find_augmenting_trail(g, &solution, t, &budget, strategy, class).is_some();
            break;
        }
        let Some(found) = find_augmenting_trail(g, &solution, t, &budget, strategy, class) else {
            break;
        };
        solution = solution.symmetric_difference(found.trail.edges());
        gains.push(found.gain);
        trails.push(found.trail);
    }
    let weight = g.weight_of(&solution);
    Ok(SolveReport {
        search_weight: weight.clone(),
        weight,
        solution,
        iterations: gains.len() as u64,
        iteration_bound: None,
        iteration_cap_hit: cap_hit,
        gains,
        trails,
        n: g.vertex_count(),
        epsilon_total: eps.clone(),
        epsilon_scale: None,
        epsilon_search: eps.clone(),
        budget: budget.limit().clone(),
        trivial: false,
        elapsed: started.elapsed(),
    })
}

/// `(1 - eps_total)`-approximate `T`-free 2-matching.
pub fn solve_ptas(g: &WeightedGraph, t: &TriangleSet, config: &SolverConfig) -> Result<SolveReport, ConfigError> {
    let started = Instant::now();
    check_epsilon(&config.epsilon)?;
    config.split.validate(&config.epsilon)?;
    let scaled = match scale_weights(g, &config.split.scale) {
        Ok(s) => s,
        Err(TrivialInstance) => {
            return Ok(SolveReport {
                solution: EdgeSet::new(),
                weight: Rational::zero(),
                search_weight: Rational::zero(),
                iterations: 0,
                iteration_bound: None,
                iteration_cap_hit: false,
                gains: Vec::new(),
                trails: Vec::new(),
                n: g.vertex_count(),
                epsilon_total: config.epsilon.clone(),
                epsilon_scale: Some(config.split.scale.clone()),
                epsilon_search: config.split.search.clone(),
                budget: config.budget().limit().clone(),
                trivial: true,
                elapsed: started.elapsed(),
            })
        }
    };
    let n = g.vertex_count() as i64;
    let bound = Rational::from_integer(n * n) / &config.split.search;
    let cap = config.iteration_cap.or_else(|| bound.floor().to_u64());
    let mut report = local_search(
        &scaled.graph,
        t,
        &config.split.search,
        config.strategy,
        config.search_class,
        cap,
    )?;
    report.weight = g.weight_of(&report.solution);
    report.iteration_bound = Some(bound);
    report.epsilon_total = config.epsilon.clone();
    report.epsilon_scale = Some(config.split.scale.clone());
    report.elapsed = started.elapsed();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

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
    fn scaling_formula() {
        // n = 4, W = 10, eps = 1/2: floor((5/10) * 8) = 4
        let g = WeightedGraph::from_triples(4, [(0, 1, 5), (1, 2, 10), (2, 3, 0)]).unwrap();
        let s = scale_weights(&g, &r(1, 2)).unwrap();
        assert_eq!(s.graph.weight(&Edge::new(0, 1)), Some(&Rational::from_integer(4)));
        assert_eq!(s.graph.weight(&Edge::new(1, 2)), Some(&Rational::from_integer(8)));
        assert_eq!(s.graph.weight(&Edge::new(2, 3)), Some(&Rational::zero()));
        assert_eq!(s.weight_bound(), BigInt::from(8));
        assert_eq!(s.max_weight, Rational::from_integer(10));
    }

    #[test]
    fn all_zero_is_trivial() {
        let g = WeightedGraph::from_triples(2, [(0, 1, 0)]).unwrap();
        assert_eq!(scale_weights(&g, &r(1, 2)).unwrap_err(), TrivialInstance);
        let rep = solve_ptas(&g, &TriangleSet::new(), &SolverConfig::new(r(1, 2)).unwrap()).unwrap();
        assert!(rep.trivial);
        assert!(rep.solution.is_empty());
        assert_eq!(rep.weight, Rational::zero());
    }

    #[test]
    fn epsilon_validation() {
        assert!(SolverConfig::new(Rational::zero()).is_err());
        assert!(SolverConfig::new(r(3, 2)).is_err());
        assert!(SolverConfig::new(Rational::one()).is_ok());
        let cfg = SolverConfig::new(r(1, 2)).unwrap();
        let bad = EpsilonSplit {
            scale: r(1, 2),
            search: r(1, 2),
        };
        assert!(matches!(cfg.clone().with_split(bad), Err(ConfigError::BadSplit { .. })));
        let lopsided = EpsilonSplit {
            scale: r(1, 10),
            search: r(1, 3),
        };
        assert!(cfg.with_split(lopsided).is_ok());
    }

    #[test]
    fn local_search_single_edge() {
        let g = WeightedGraph::from_triples(2, [(0, 1, 1)]).unwrap();
        let rep = local_search(
            &g,
            &TriangleSet::new(),
            &Rational::one(),
            Strategy::First,
            SearchClass::Alternating,
            None,
        )
        .unwrap();
        assert_eq!(rep.solution.to_vec(), vec![Edge::new(0, 1)]);
        assert_eq!(rep.weight, Rational::one());
        assert_eq!(rep.iterations, 1);
    }

    #[test]
    fn local_search_unit_triangle() {
        let g = complete(3);
        let t = TriangleSet::enumerate(&g);
        let rep = local_search(
            &g,
            &t,
            &Rational::one(),
            Strategy::First,
            SearchClass::Alternating,
            None,
        )
        .unwrap();
        assert_eq!(rep.weight, Rational::from_integer(2));
    }

    #[test]
    fn local_search_unit_k4() {
        let g = complete(4);
        let t = TriangleSet::enumerate(&g);
        let rep = local_search(&g, &t, &r(1, 2), Strategy::First, SearchClass::Alternating, None).unwrap();
        assert_eq!(rep.weight, Rational::from_integer(4));
        assert!(rep.solution.is_two_matching());
        assert!(t.is_free(&rep.solution));
    }

    #[test]
    fn ptas_on_k4_and_single_edge() {
        let g = complete(4);
        let t = TriangleSet::enumerate(&g);
        let rep = solve_ptas(&g, &t, &SolverConfig::new(r(1, 2)).unwrap()).unwrap();
        assert!(rep.weight >= Rational::from_integer(2));
        // canonical enumeration reaches the optimum here
        assert_eq!(rep.weight, Rational::from_integer(4));
        assert!(rep.gains.iter().all(Rational::is_positive));

        let single = WeightedGraph::from_triples(2, [(0, 1, 7)]).unwrap();
        for eps in [r(1, 1), r(1, 3), r(1, 10)] {
            let rep = solve_ptas(&single, &TriangleSet::new(), &SolverConfig::new(eps).unwrap()).unwrap();
            assert_eq!(rep.weight, Rational::from_integer(7));
        }
    }

    #[test]
    fn iteration_cap_is_reported() {
        let g = WeightedGraph::from_triples(4, [(0, 1, 1), (2, 3, 1)]).unwrap();
        let rep = local_search(
            &g,
            &TriangleSet::new(),
            &Rational::one(),
            Strategy::First,
            SearchClass::Alternating,
            Some(1),
        )
        .unwrap();
        assert_eq!(rep.iterations, 1);
        assert!(rep.iteration_cap_hit);
    }
}
