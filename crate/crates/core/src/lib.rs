//! Weighted triangle-free 2-matching: a local-search PTAS, the constructive
//! witness behind its guarantee, and exact baselines to check it against.
//!
//! A *2-matching* is an edge set in which every vertex has degree at most two
//! (a self-loop counts twice). Given a family `T` of forbidden triangles, a
//! 2-matching is `T`-free when it contains no triangle of `T` entirely.
//!
//! ```
//! use tf2m::{solve_ptas, Rational, SolverConfig, TriangleSet, WeightedGraph};
//!
//! let g = WeightedGraph::from_triples(3, [(0, 1, 3), (1, 2, 2), (0, 2, 2)]).unwrap();
//! let t = TriangleSet::enumerate(&g);
//! let report = solve_ptas(&g, &t, &SolverConfig::new(Rational::new(1, 2)).unwrap()).unwrap();
//! assert_eq!(report.weight, Rational::from_integer(5));
//! ```

#![allow(clippy::result_large_err)]

pub mod bench;
pub mod error;
pub mod generate;
pub mod graph;
pub mod io;
pub(crate) mod numeric;
pub mod oracle;
pub mod rational;
pub mod search;
pub mod solver;
pub mod trail;
pub mod triangles;
pub mod witness;

pub use bench::{run_bench, BenchConfig, BenchRecord, BenchReport, BenchSummary};
pub use error::{ConfigError, GraphError, ParseError, ReportError};
pub use generate::{generate, GeneratorSpec, Model, SpecError, WeightDist};
pub use graph::{Edge, EdgeId, EdgeSet, VertexId, WeightedGraph};
pub use io::{ForbiddenMode, Instance};
pub use oracle::{baseline_two_thirds, exact_opt, verify_solution, OracleResult, OracleTooLarge, Verdict, Violation};
pub use rational::Rational;
pub use search::{enumerate_augmenting_trails, find_augmenting_trail, Found, SearchClass, Strategy};
pub use solver::{local_search, scale_weights, solve_ptas, EpsilonSplit, ScaledInstance, SolveReport, SolverConfig};
pub use trail::{gain, is_alternating, is_augmenting, symmetric_difference, Budget, Trail};
pub use triangles::{Triangle, TriangleSet};
pub use witness::{find_witness, CaseTag, Witness, WitnessError, WitnessInput};
