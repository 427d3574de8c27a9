//! Independent reference implementations for the test suites.
//!
//! Nothing here calls into the library's checkers; everything is recomputed
//! from raw edge lists.

#![allow(dead_code)]

use std::collections::BTreeSet;

use tf2m::{Edge, EdgeSet, Rational, Triangle, TriangleSet, WeightedGraph};

/// Self-loops count twice.
pub fn brute_degree(edges: &[Edge], u: usize) -> usize {
    let mut d = 0;
    for e in edges {
        if e.u() == u {
            d += 1;
        }
        if e.v() == u {
            d += 1;
        }
    }
    d
}

pub fn brute_is_two_matching(n: usize, edges: &[Edge]) -> bool {
    (0..n).all(|u| brute_degree(edges, u) <= 2)
}

/// Every vertex triple whose three edges are present, as sorted triples.
pub fn brute_triangles(g: &WeightedGraph) -> Vec<[usize; 3]> {
    let n = g.vertex_count();
    let has = |a: usize, b: usize| g.edges().iter().any(|e| (e.u(), e.v()) == (a.min(b), a.max(b)));
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if has(a, b) && has(a, c) && has(b, c) {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

pub fn tri_edges(t: [usize; 3]) -> [Edge; 3] {
    [Edge::new(t[0], t[1]), Edge::new(t[0], t[2]), Edge::new(t[1], t[2])]
}

pub fn brute_weight(g: &WeightedGraph, edges: &[Edge]) -> Rational {
    let mut total = Rational::zero();
    for e in edges {
        let (_, w) = g.iter().find(|(x, _)| x == e).expect("edge of g");
        total += w;
    }
    total
}

pub fn forbidden_list(t: &TriangleSet) -> Vec<[usize; 3]> {
    t.iter().map(|x| x.vertices()).collect()
}

pub fn brute_feasible(g: &WeightedGraph, forbidden: &[[usize; 3]], edges: &[Edge]) -> bool {
    let in_graph = edges.iter().all(|e| g.edges().contains(e));
    let distinct = edges.iter().collect::<BTreeSet<_>>().len() == edges.len();
    in_graph
        && distinct
        && brute_is_two_matching(g.vertex_count(), edges)
        && forbidden
            .iter()
            .all(|&t| !tri_edges(t).iter().all(|e| edges.contains(e)))
}

/// Maximum over all `2^|E|` subsets.
pub fn naive_opt(g: &WeightedGraph, forbidden: &[[usize; 3]]) -> Rational {
    let edges = g.edges();
    assert!(edges.len() <= 20, "naive enumeration is exponential");
    let mut best = Rational::zero();
    let mut chosen = Vec::new();
    for mask in 0u32..(1 << edges.len()) {
        chosen.clear();
        chosen.extend((0..edges.len()).filter(|i| mask >> i & 1 == 1).map(|i| edges[i]));
        if brute_feasible(g, forbidden, &chosen) {
            let w = brute_weight(g, &chosen);
            if w > best {
                best = w;
            }
        }
    }
    best
}

fn sym_diff(m: &[Edge], p: &[Edge]) -> Vec<Edge> {
    let mut out: Vec<Edge> = m.iter().filter(|e| !p.contains(e)).copied().collect();
    out.extend(p.iter().filter(|e| !m.contains(e)));
    out
}

/// Cost `|P| + 2 sl(P)` of an edge sequence.
pub fn trail_cost(p: &[Edge]) -> usize {
    p.len() + 2 * p.iter().filter(|e| e.u() == e.v()).count()
}

/// What an exhaustive search should accept as an improving trail.
pub enum Walk<'a> {
    /// Any trail in `g`.
    All,
    /// Trails inside `A1 Δ A2` alternating between `A1 \ A2` and `A2 \ A1`.
    Alternating { a1: &'a [Edge], a2: &'a [Edge] },
}

/// Depth-first over every trail of `g` with cost at most `max_cost`; returns
/// the first one (as a node sequence) for which `m Δ P` is feasible and
/// strictly heavier than `m`.
pub fn exhaustive_improving(
    g: &WeightedGraph,
    forbidden: &[[usize; 3]],
    m: &[Edge],
    max_cost: usize,
    walk: Walk<'_>,
) -> Option<Vec<usize>> {
    let base = brute_weight(g, m);
    let allowed: Vec<Edge> = match &walk {
        Walk::All => g.edges().to_vec(),
        Walk::Alternating { a1, a2 } => sym_diff(a1, a2),
    };
    let side = |e: &Edge| match &walk {
        Walk::All => 0,
        Walk::Alternating { a1, .. } => usize::from(a1.contains(e)),
    };
    struct Dfs<'b> {
        g: &'b WeightedGraph,
        forbidden: &'b [[usize; 3]],
        m: &'b [Edge],
        base: Rational,
        allowed: Vec<Edge>,
        alternating: bool,
        max_cost: usize,
    }
    fn go(d: &Dfs<'_>, side: &dyn Fn(&Edge) -> usize, nodes: &mut Vec<usize>, path: &mut Vec<Edge>) -> bool {
        if !path.is_empty() {
            let next = sym_diff(d.m, path);
            if brute_feasible(d.g, d.forbidden, &next) && brute_weight(d.g, &next) > d.base {
                return true;
            }
        }
        let here = *nodes.last().unwrap();
        for e in &d.allowed {
            if path.contains(e) || !(e.u() == here || e.v() == here) {
                continue;
            }
            if d.alternating {
                if let Some(prev) = path.last() {
                    if side(prev) == side(e) {
                        continue;
                    }
                }
            }
            path.push(*e);
            if trail_cost(path) <= d.max_cost {
                nodes.push(if e.u() == here { e.v() } else { e.u() });
                if go(d, side, nodes, path) {
                    return true;
                }
                nodes.pop();
            }
            path.pop();
        }
        false
    }
    let dfs = Dfs {
        g,
        forbidden,
        m,
        base,
        alternating: matches!(walk, Walk::Alternating { .. }),
        allowed,
        max_cost,
    };
    for start in 0..g.vertex_count() {
        let mut nodes = vec![start];
        let mut path = Vec::new();
        if go(&dfs, &side, &mut nodes, &mut path) {
            return Some(nodes);
        }
    }
    None
}

/// `floor(w / W * n / eps)` recomputed from numerators and denominators.
pub fn scaled_weight(w: &Rational, max_w: &Rational, n: usize, eps: &Rational) -> num_bigint::BigInt {
    use num_integer::Integer;
    let num = w.numer() * max_w.denom() * n * eps.denom();
    let den = w.denom() * max_w.numer() * eps.numer();
    num.div_floor(&den)
}

/// A random `T`-free 2-matching built greedily from a shuffled edge order.
pub fn greedy_matching(g: &WeightedGraph, forbidden: &[[usize; 3]], order: &[usize]) -> Vec<Edge> {
    let mut chosen: Vec<Edge> = Vec::new();
    if g.edge_count() == 0 {
        return chosen;
    }
    for &i in order {
        let e = g.edges()[i % g.edge_count()];
        if chosen.contains(&e) {
            continue;
        }
        chosen.push(e);
        if !brute_feasible(g, forbidden, &chosen) {
            chosen.pop();
        }
    }
    chosen
}

pub fn edge_set(edges: &[Edge]) -> EdgeSet {
    edges.iter().copied().collect()
}

pub fn triangle_set(list: &[[usize; 3]]) -> TriangleSet {
    list.iter().map(|t| Triangle::new(t[0], t[1], t[2]).unwrap()).collect()
}

/// A random instance for the witness constructor: two `T`-free 2-matchings
/// with `(1 - eps) w(A1) > w(A2)`, or `None` when the draw misses the
/// precondition.
pub struct WitnessCase {
    pub graph: WeightedGraph,
    pub forbidden: Vec<[usize; 3]>,
    pub a1: Vec<Edge>,
    pub a2: Vec<Edge>,
    pub eps: Rational,
}

pub const WITNESS_EPS: [(i64, i64); 6] = [(1, 2), (1, 3), (2, 5), (1, 4), (1, 6), (1, 10)];

pub fn random_witness_case(rng: &mut tf2m::generate::Stream, n_max: usize) -> Option<WitnessCase> {
    use tf2m::{generate, GeneratorSpec, Model, WeightDist};
    let n = 3 + rng.below((n_max - 2) as u64) as usize;
    let p = [0.3, 0.5, 0.7, 0.9][rng.below(4) as usize];
    let model = if rng.bernoulli(0.5) {
        Model::Gnp { p }
    } else {
        Model::TriangleDense {
            p,
            overlays: 1 + rng.below(3) as usize,
        }
    };
    let weights = if rng.bernoulli(0.7) {
        WeightDist::UniformInteger { lo: 0, hi: 9 }
    } else {
        WeightDist::UniformRational { lo: 0, hi: 3, den: 4 }
    };
    let loops = if rng.bernoulli(0.3) { 0.25 } else { 0.0 };
    let spec = GeneratorSpec::new(model, n, rng.next_u64())
        .with_weights(weights)
        .with_loops(loops);
    let graph = generate(&spec).ok()?;
    if graph.edge_count() == 0 {
        return None;
    }
    let listed = rng.bernoulli(0.3);
    let forbidden: Vec<[usize; 3]> = brute_triangles(&graph)
        .into_iter()
        .filter(|_| !listed || rng.bernoulli(0.6))
        .collect();
    let m = graph.edge_count() as u64;
    // A1 prefers heavy edges, A2 takes a random handful
    let mut heavy: Vec<(Rational, u64, usize)> = graph
        .weights()
        .iter()
        .enumerate()
        .map(|(i, w)| (-w.clone(), rng.below(1000), i))
        .collect();
    heavy.sort();
    let order1: Vec<usize> = heavy.into_iter().map(|(_, _, i)| i).collect();
    let a1 = greedy_matching(&graph, &forbidden, &order1);
    let take = rng.below(m + 1) as usize;
    let order2: Vec<usize> = (0..take).map(|_| rng.below(m) as usize).collect();
    let a2 = greedy_matching(&graph, &forbidden, &order2);
    let (num, den) = WITNESS_EPS[rng.below(WITNESS_EPS.len() as u64) as usize];
    let eps = Rational::new(num, den);
    let lhs = (Rational::one() - &eps) * brute_weight(&graph, &a1);
    if lhs <= brute_weight(&graph, &a2) {
        return None;
    }
    Some(WitnessCase {
        graph,
        forbidden,
        a1,
        a2,
        eps,
    })
}

/// Conditions checked from scratch: `P` alternates inside `A1 Δ A2`,
/// `A2 Δ P` is a `T`-free 2-matching, it is strictly heavier, and
/// `|P| + 2 sl(P) <= 7/eps`.
pub fn check_witness_independently(case: &WitnessCase, nodes: &[usize]) -> Result<(), String> {
    let mut p = Vec::new();
    for w in nodes.windows(2) {
        let e = Edge::new(w[0], w[1]);
        if p.contains(&e) {
            return Err(format!("edge {e:?} repeats"));
        }
        p.push(e);
    }
    if p.is_empty() {
        return Err("empty trail".into());
    }
    let in_a1 = |e: &Edge| case.a1.contains(e) && !case.a2.contains(e);
    let in_a2 = |e: &Edge| case.a2.contains(e) && !case.a1.contains(e);
    if !p.iter().all(|e| in_a1(e) || in_a2(e)) {
        return Err("trail leaves A1 delta A2".into());
    }
    if p.windows(2).any(|w| in_a1(&w[0]) == in_a1(&w[1])) {
        return Err("trail does not alternate".into());
    }
    let next = sym_diff(&case.a2, &p);
    if !brute_feasible(&case.graph, &case.forbidden, &next) {
        return Err("A2 delta P is not a T-free 2-matching".into());
    }
    if brute_weight(&case.graph, &next) <= brute_weight(&case.graph, &case.a2) {
        return Err("no gain".into());
    }
    let cost = Rational::from_integer(trail_cost(&p) as i64);
    if cost * &case.eps > Rational::from_integer(7) {
        return Err(format!("cost {} exceeds 7/eps", trail_cost(&p)));
    }
    Ok(())
}

impl WitnessCase {
    pub fn input(&self) -> tf2m::WitnessInput {
        tf2m::WitnessInput {
            graph: self.graph.clone(),
            triangles: triangle_set(&self.forbidden),
            a1: edge_set(&self.a1),
            a2: edge_set(&self.a2),
            epsilon: self.eps.clone(),
        }
    }
}

/// Like [`random_witness_case`], but with the two-triangle gadget
/// `u1u2, u1u3, u2u4, u3u4` on one side and `u2u3` (plus `u1u4` half the
/// time) on the other, which is what the four-vertex reductions need.
pub fn planted_witness_case(rng: &mut tf2m::generate::Stream, n_max: usize) -> Option<WitnessCase> {
    let n = 4 + rng.below((n_max - 3) as u64) as usize;
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.below(i as u64 + 1) as usize);
    }
    let [u1, u2, u3, u4] = [perm[0], perm[1], perm[2], perm[3]];
    let cycle = [
        Edge::new(u1, u2),
        Edge::new(u1, u3),
        Edge::new(u2, u4),
        Edge::new(u3, u4),
    ];
    let mut chord = vec![Edge::new(u2, u3)];
    if rng.bernoulli(0.5) {
        chord.push(Edge::new(u1, u4));
    }
    let cycle_on_a1 = rng.bernoulli(0.5);
    let mut edges: Vec<(Edge, Rational)> = Vec::new();
    let weight = |rng: &mut tf2m::generate::Stream, heavy: bool| {
        Rational::from_integer(if heavy { 6 + rng.below(4) } else { rng.below(3) } as i64)
    };
    for e in &cycle {
        edges.push((*e, weight(rng, cycle_on_a1)));
    }
    for e in &chord {
        edges.push((*e, weight(rng, !cycle_on_a1)));
    }
    for a in 0..n {
        for b in a..n {
            let e = Edge::new(a, b);
            let p = if a == b { 0.15 } else { 0.3 };
            if !edges.iter().any(|(x, _)| *x == e) && rng.bernoulli(p) {
                edges.push((e, Rational::from_integer(rng.below(6) as i64)));
            }
        }
    }
    let graph = WeightedGraph::new(n, edges).ok()?;
    let gadget = [[u1, u2, u3], [u2, u3, u4]].map(|mut t| {
        t.sort();
        t
    });
    let listed = rng.bernoulli(0.4);
    let forbidden: Vec<[usize; 3]> = brute_triangles(&graph)
        .into_iter()
        .filter(|t| !listed || gadget.contains(t) || rng.bernoulli(0.5))
        .collect();
    let m = graph.edge_count();
    let extend = |rng: &mut tf2m::generate::Stream, seed: &[Edge]| {
        let mut order: Vec<usize> = seed.iter().map(|e| graph.edge_id(e).unwrap()).collect();
        let extra = rng.below(m as u64 + 1);
        order.extend((0..extra).map(|_| rng.below(m as u64) as usize));
        greedy_matching(&graph, &forbidden, &order)
    };
    let (s1, s2): (&[Edge], &[Edge]) = if cycle_on_a1 {
        (&cycle, &chord)
    } else {
        (&chord, &cycle)
    };
    let a1 = extend(rng, s1);
    let a2 = extend(rng, s2);
    let (num, den) = WITNESS_EPS[rng.below(WITNESS_EPS.len() as u64) as usize];
    let eps = Rational::new(num, den);
    if (Rational::one() - &eps) * brute_weight(&graph, &a1) <= brute_weight(&graph, &a2) {
        return None;
    }
    Some(WitnessCase {
        graph,
        forbidden,
        a1,
        a2,
        eps,
    })
}
