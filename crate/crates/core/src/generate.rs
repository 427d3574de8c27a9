//! Seeded random instances.
//!
//! The stream is `Pcg64` seeded with `seed_from_u64(seed)`. Every random
//! choice goes through three primitives so other implementations can
//! reproduce a corpus exactly:
//!
//! * `unit()`: `(next_u64 >> 11) / 2^53`, uniform in `[0, 1)`;
//! * `bernoulli(p)`: `unit() < p`;
//! * `below(k)`: rejection sampling on `next_u64` against the largest
//!   multiple of `k`, then `% k`.
//!
//! Draw order is fixed: vertex pairs `(a, b)` with `a < b` in lexicographic
//! order, model-specific extras, self-loops `v = 0..n` (only when
//! `loop_probability > 0`), then one weight per edge in canonical edge order.

use std::collections::BTreeSet;
use std::fmt;

use rand_core::{RngCore, SeedableRng};
use rand_pcg::Pcg64;
use serde::{Deserialize, Serialize};

use crate::graph::{Edge, WeightedGraph};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "kebab-case")]
pub enum Model {
    /// Each pair independently with probability `p`.
    Gnp { p: f64 },
    /// Uniform points in the unit square, joined when within `radius`.
    Geometric { radius: f64 },
    /// `G(n, p)` plus `overlays` random triangles.
    TriangleDense { p: f64, overlays: usize },
    /// A random Hamiltonian cycle plus `G(n, p)` noise.
    PlantedCycle { p: f64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WeightDist {
    UniformInteger {
        lo: u64,
        hi: u64,
    },
    /// `k / den` with `k` uniform in `[lo * den, hi * den]`.
    UniformRational {
        lo: u64,
        hi: u64,
        den: u64,
    },
}

impl Default for WeightDist {
    fn default() -> Self {
        WeightDist::UniformInteger { lo: 1, hi: 10 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    #[serde(flatten)]
    pub model: Model,
    pub n: usize,
    pub weights: WeightDist,
    #[serde(default)]
    pub loop_probability: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpecError {
    #[error("probability {name} = {value} is outside [0, 1]")]
    Probability { name: &'static str, value: f64 },
    #[error("radius {0} must be finite and non-negative")]
    Radius(f64),
    #[error("weight range [{lo}, {hi}] is empty")]
    WeightRange { lo: u64, hi: u64 },
    #[error("rational weights need a positive denominator")]
    Denominator,
    #[error("{model} needs at least 3 vertices, got {n}")]
    TooFewVertices { model: &'static str, n: usize },
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Model::Gnp { p } => write!(f, "gnp(p={p})"),
            Model::Geometric { radius } => write!(f, "geometric(r={radius})"),
            Model::TriangleDense { p, overlays } => write!(f, "triangle-dense(p={p},k={overlays})"),
            Model::PlantedCycle { p } => write!(f, "planted-cycle(p={p})"),
        }
    }
}

impl GeneratorSpec {
    pub fn new(model: Model, n: usize, seed: u64) -> Self {
        GeneratorSpec {
            model,
            n,
            weights: WeightDist::default(),
            loop_probability: 0.0,
            seed,
        }
    }

    pub fn with_weights(mut self, weights: WeightDist) -> Self {
        self.weights = weights;
        self
    }

    pub fn with_loops(mut self, probability: f64) -> Self {
        self.loop_probability = probability;
        self
    }

    pub fn validate(&self) -> Result<(), SpecError> {
        let prob = |name, value: f64| {
            if (0.0..=1.0).contains(&value) {
                Ok(())
            } else {
                Err(SpecError::Probability { name, value })
            }
        };
        prob("loop_probability", self.loop_probability)?;
        match &self.model {
            Model::Gnp { p } => prob("p", *p)?,
            Model::Geometric { radius } => {
                if !radius.is_finite() || *radius < 0.0 {
                    return Err(SpecError::Radius(*radius));
                }
            }
            Model::TriangleDense { p, overlays } => {
                prob("p", *p)?;
                if *overlays > 0 && self.n < 3 {
                    return Err(SpecError::TooFewVertices {
                        model: "triangle-dense",
                        n: self.n,
                    });
                }
            }
            Model::PlantedCycle { p } => {
                prob("p", *p)?;
                if self.n < 3 {
                    return Err(SpecError::TooFewVertices {
                        model: "planted-cycle",
                        n: self.n,
                    });
                }
            }
        }
        match self.weights {
            WeightDist::UniformInteger { lo, hi } | WeightDist::UniformRational { lo, hi, .. } if lo > hi => {
                Err(SpecError::WeightRange { lo, hi })
            }
            WeightDist::UniformRational { den: 0, .. } => Err(SpecError::Denominator),
            _ => Ok(()),
        }
    }
}

/// The documented random stream.
pub struct Stream(Pcg64);

impl Stream {
    pub fn new(seed: u64) -> Self {
        Stream(Pcg64::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.unit() < p
    }

    /// Uniform in `0..k`; `k` must be positive.
    pub fn below(&mut self, k: u64) -> u64 {
        assert!(k > 0, "empty range");
        let zone = u64::MAX - (u64::MAX % k);
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % k;
            }
        }
    }

    /// Uniform in `lo..=hi`.
    pub fn between(&mut self, lo: u64, hi: u64) -> u64 {
        match (hi - lo).checked_add(1) {
            Some(k) => lo + self.below(k),
            None => self.next_u64(),
        }
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<WeightedGraph, SpecError> {
    spec.validate()?;
    let n = spec.n;
    let mut rng = Stream::new(spec.seed);
    let mut edges: BTreeSet<Edge> = BTreeSet::new();
    let gnp = |rng: &mut Stream, edges: &mut BTreeSet<Edge>, p: f64| {
        for a in 0..n {
            for b in a + 1..n {
                if rng.bernoulli(p) {
                    edges.insert(Edge::new(a, b));
                }
            }
        }
    };
    match &spec.model {
        Model::Gnp { p } => gnp(&mut rng, &mut edges, *p),
        Model::Geometric { radius } => {
            let points: Vec<(f64, f64)> = (0..n).map(|_| (rng.unit(), rng.unit())).collect();
            for a in 0..n {
                for b in a + 1..n {
                    let (dx, dy) = (points[a].0 - points[b].0, points[a].1 - points[b].1);
                    if dx * dx + dy * dy <= radius * radius {
                        edges.insert(Edge::new(a, b));
                    }
                }
            }
        }
        Model::TriangleDense { p, overlays } => {
            gnp(&mut rng, &mut edges, *p);
            for _ in 0..*overlays {
                let x = rng.below(n as u64) as usize;
                let mut y = rng.below(n as u64 - 1) as usize;
                if y >= x {
                    y += 1;
                }
                let mut z = rng.below(n as u64 - 2) as usize;
                for taken in [x.min(y), x.max(y)] {
                    if z >= taken {
                        z += 1;
                    }
                }
                edges.extend([Edge::new(x, y), Edge::new(x, z), Edge::new(y, z)]);
            }
        }
        Model::PlantedCycle { p } => {
            gnp(&mut rng, &mut edges, *p);
            // Fisher-Yates from the back
            let mut order: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                let j = rng.below(i as u64 + 1) as usize;
                order.swap(i, j);
            }
            for i in 0..n {
                edges.insert(Edge::new(order[i], order[(i + 1) % n]));
            }
        }
    }
    if spec.loop_probability > 0.0 {
        for v in 0..n {
            if rng.bernoulli(spec.loop_probability) {
                edges.insert(Edge::self_loop(v));
            }
        }
    }
    let weighted: Vec<(Edge, Rational)> = edges
        .into_iter()
        .map(|e| {
            let w = match spec.weights {
                WeightDist::UniformInteger { lo, hi } => Rational::from_integer(rng.between(lo, hi)),
                WeightDist::UniformRational { lo, hi, den } => {
                    let k = rng.between(lo * den, hi * den);
                    Rational::new(k, den)
                }
            };
            (e, w)
        })
        .collect();
    Ok(WeightedGraph::new(n, weighted).expect("generated edges are valid"))
}
