//! Case classification, instance rewriting, and trail lifting.
//!
//! Vertex labels follow the case statements: `u1` is the apex where the two
//! same-side edges of the chosen triangle meet and `u2 < u3` are the other two
//! corners. In Cases 5 and 6, `u4` is the fourth corner of the neighbouring
//! triangle on `u2 u3`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::graph::{Edge, EdgeSet, VertexId, WeightedGraph};
use crate::rational::Rational;
use crate::trail::Trail;
use crate::triangles::{Triangle, TriangleSet};

use super::WitnessError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseTag {
    Case1,
    Case2,
    Case3_1,
    Case3_2,
    Case4_1,
    Case4_2,
    Case5_1,
    Case5_2,
    Case6_1,
    Case6_2,
}

impl CaseTag {
    pub const ALL: [CaseTag; 10] = [
        CaseTag::Case1,
        CaseTag::Case2,
        CaseTag::Case3_1,
        CaseTag::Case3_2,
        CaseTag::Case4_1,
        CaseTag::Case4_2,
        CaseTag::Case5_1,
        CaseTag::Case5_2,
        CaseTag::Case6_1,
        CaseTag::Case6_2,
    ];

    pub fn label(self) -> &'static str {
        match self {
            CaseTag::Case1 => "1",
            CaseTag::Case2 => "2",
            CaseTag::Case3_1 => "3.1",
            CaseTag::Case3_2 => "3.2",
            CaseTag::Case4_1 => "4.1",
            CaseTag::Case4_2 => "4.2",
            CaseTag::Case5_1 => "5.1",
            CaseTag::Case5_2 => "5.2",
            CaseTag::Case6_1 => "6.1",
            CaseTag::Case6_2 => "6.2",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl Serialize for CaseTag {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

/// The case that applies, the triangle it applies to, and the labels
/// `[u1, u2, u3]` or `[u1, u2, u3, u4]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub tag: CaseTag,
    pub triangle: Triangle,
    pub labels: Vec<VertexId>,
}

/// How a trail of the reduced graph maps back.
///
/// Nodes go through `vertex_map` (split vertices back to their originals),
/// self-loops listed in `expansions` become the given node segment, and
/// `connectors` (the zero-weight edges joining a split pair) must never
/// appear.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LiftMap {
    pub vertex_map: BTreeMap<VertexId, VertexId>,
    pub expansions: BTreeMap<Edge, Vec<VertexId>>,
    pub connectors: Vec<Edge>,
}

impl LiftMap {
    pub fn is_identity(&self) -> bool {
        self.vertex_map.is_empty() && self.expansions.is_empty() && self.connectors.is_empty()
    }

    fn vertex(&self, v: VertexId) -> VertexId {
        self.vertex_map.get(&v).copied().unwrap_or(v)
    }
}

#[derive(Clone, Debug)]
pub struct ReductionStep {
    pub case: CaseTag,
    pub graph: WeightedGraph,
    pub triangles: TriangleSet,
    pub a1: EdgeSet,
    pub a2: EdgeSet,
    pub lift: LiftMap,
}

#[derive(Clone, Debug)]
pub enum Reduction {
    /// The case exhibits the trail directly.
    Shortcut(Trail),
    Step(Box<ReductionStep>),
}

fn e(a: VertexId, b: VertexId) -> Edge {
    Edge::new(a, b)
}

fn internal(msg: impl Into<String>) -> WitnessError {
    WitnessError::Internal(msg.into())
}

/// The corner shared by two edges of a triangle.
fn apex(x: &Edge, y: &Edge) -> VertexId {
    if y.touches(x.u()) {
        x.u()
    } else {
        x.v()
    }
}

/// `[u1, u2, u3]` with `u1` the apex of the two edges of `tri` in `side`.
fn apex_labels(tri: &Triangle, side: &EdgeSet) -> [VertexId; 3] {
    let inside: Vec<Edge> = tri.edges().into_iter().filter(|e| side.contains(e)).collect();
    let u1 = apex(&inside[0], &inside[1]);
    let mut rest = tri.vertices().into_iter().filter(|&v| v != u1);
    let u2 = rest.next().expect("three corners");
    let u3 = rest.next().expect("three corners");
    [u1, u2, u3]
}

/// Returns the first applicable case in order 1 to 6; within a case the
/// canonically smallest triangle.
pub fn classify_case(
    _g: &WeightedGraph,
    t: &TriangleSet,
    a1: &EdgeSet,
    a2: &EdgeSet,
) -> Result<Classification, WitnessError> {
    let union = a1.union(a2);
    let done = |tag, triangle: &Triangle, labels: Vec<VertexId>| {
        Ok(Classification {
            tag,
            triangle: *triangle,
            labels,
        })
    };

    if let Some(tri) = t.iter().find(|tri| !tri.is_subset_of(&union)) {
        return done(CaseTag::Case1, tri, tri.vertices().to_vec());
    }

    if let Some(tri) = t.iter().find(|tri| tri.overlap(a1) == 2 && tri.overlap(a2) == 2) {
        let common = tri
            .edges()
            .into_iter()
            .find(|x| a1.contains(x) && a2.contains(x))
            .ok_or_else(|| internal("case 2 triangle without a shared edge"))?;
        let u1 = tri.opposite(&common).expect("edge of triangle");
        let (p, q) = (common.u(), common.v());
        let (u2, u3) = if a1.contains(&e(u1, p)) { (p, q) } else { (q, p) };
        return done(CaseTag::Case2, tri, vec![u1, u2, u3]);
    }

    for (side, other, sub_one, sub_two) in [
        (a1, a2, CaseTag::Case3_1, CaseTag::Case3_2),
        (a2, a1, CaseTag::Case4_1, CaseTag::Case4_2),
    ] {
        let hit = t
            .iter()
            .find(|tri| tri.overlap(side) == 2 && t.is_free(&side.symmetric_difference(tri.edges().iter())));
        if let Some(tri) = hit {
            let [u1, u2, u3] = apex_labels(tri, side);
            let tag = if other.contains(&Edge::self_loop(u1)) {
                sub_one
            } else {
                sub_two
            };
            return done(tag, tri, vec![u1, u2, u3]);
        }
    }

    for (side, other, sub_one, sub_two) in [
        (a1, a2, CaseTag::Case5_1, CaseTag::Case5_2),
        (a2, a1, CaseTag::Case6_1, CaseTag::Case6_2),
    ] {
        if let Some(tri) = t.iter().find(|tri| tri.overlap(side) == 2) {
            let [u1, u2, u3] = apex_labels(tri, side);
            let u4 = fourth_corner(side, u1, u2)
                .ok_or_else(|| internal(format!("case {sub_one}: no second {u2}-edge on the same side")))?;
            let neighbour = Triangle::new(u2, u3, u4)
                .filter(|n| t.contains(n))
                .ok_or_else(|| internal(format!("case {sub_one}: {u2} {u3} {u4} is not forbidden")))?;
            let exclusive = |x: Edge| side.contains(&x) && !other.contains(&x);
            let shape = [e(u1, u2), e(u1, u3), e(u2, u4), e(u3, u4)].into_iter().all(exclusive)
                && other.contains(&e(u2, u3))
                && !side.contains(&e(u2, u3));
            if !shape {
                return Err(internal(format!(
                    "case {sub_one}: unexpected shape around {neighbour:?}"
                )));
            }
            let tag = if other.contains(&e(u1, u4)) { sub_one } else { sub_two };
            return done(tag, tri, vec![u1, u2, u3, u4]);
        }
    }

    Err(internal("no case applies"))
}

/// The neighbour of `u2` along `side` other than `u1`.
fn fourth_corner(side: &EdgeSet, u1: VertexId, u2: VertexId) -> Option<VertexId> {
    side.iter()
        .filter(|x| x.touches(u2) && **x != e(u1, u2))
        .find_map(|x| x.other(u2))
        .filter(|&x| x != u2)
}

fn swap(set: &EdgeSet, out: &[Edge], into: &[Edge]) -> EdgeSet {
    let mut s = set.clone();
    for x in out {
        s.remove(x);
    }
    for x in into {
        s.insert(*x);
    }
    s
}

fn path(nodes: &[VertexId]) -> Result<Trail, WitnessError> {
    Trail::from_nodes(nodes.to_vec()).map_err(|err| internal(format!("shortcut {nodes:?}: {err}")))
}

fn rebuild(
    g: &WeightedGraph,
    extra: usize,
    edit: impl FnOnce(&mut BTreeMap<Edge, Rational>),
) -> Result<WeightedGraph, WitnessError> {
    g.edited(extra, edit)
        .map_err(|err| internal(format!("rebuilding graph: {err}")))
}

/// Rewrites the instance as `class` prescribes, or returns the trail the
/// case exhibits directly.
pub fn apply_reduction(
    class: &Classification,
    g: &WeightedGraph,
    t: &TriangleSet,
    a1: &EdgeSet,
    a2: &EdgeSet,
) -> Result<Reduction, WitnessError> {
    let w = |x: Edge| g.weight(&x).cloned().unwrap_or_else(Rational::zero);
    let u = &class.labels;
    let step = |graph, triangles, a1, a2, lift| {
        Ok(Reduction::Step(Box::new(ReductionStep {
            case: class.tag,
            graph,
            triangles,
            a1,
            a2,
            lift,
        })))
    };

    match class.tag {
        CaseTag::Case1 => {
            let mut rest = t.clone();
            rest.remove(&class.triangle);
            step(g.clone(), rest, a1.clone(), a2.clone(), LiftMap::default())
        }
        CaseTag::Case2 => {
            let (u1, u2, u3) = (u[0], u[1], u[2]);
            let u1p = g.vertex_count();
            let (w12, w13) = (w(e(u1, u2)), w(e(u1, u3)));
            let graph = rebuild(g, 1, |m| {
                m.remove(&e(u1, u2));
                m.remove(&e(u1, u3));
                m.insert(e(u1p, u2), w12);
                m.insert(e(u1p, u3), w13);
                m.insert(e(u1, u1p), Rational::zero());
            })?;
            let lift = LiftMap {
                vertex_map: [(u1p, u1)].into_iter().collect(),
                connectors: vec![e(u1, u1p)],
                ..LiftMap::default()
            };
            step(
                graph,
                t.without_touching(&[e(u1, u2), e(u1, u3)]),
                swap(a1, &[e(u1, u2)], &[e(u1p, u2), e(u1, u1p)]),
                swap(a2, &[e(u1, u3)], &[e(u1p, u3), e(u1, u1p)]),
                lift,
            )
        }
        CaseTag::Case3_1 | CaseTag::Case3_2 | CaseTag::Case4_1 | CaseTag::Case4_2 => {
            let (u1, u2, u3) = (u[0], u[1], u[2]);
            let (w12, w13, w23) = (w(e(u1, u2)), w(e(u1, u3)), w(e(u2, u3)));
            let lp = Edge::self_loop(u1);
            let w11 = w(lp);
            let rest = t.without_touching(&[e(u1, u2), e(u1, u3)]);
            let arms = [e(u1, u2), e(u1, u3)];
            let expand = || LiftMap {
                expansions: [(lp, vec![u1, u2, u3, u1])].into_iter().collect(),
                ..LiftMap::default()
            };
            match class.tag {
                CaseTag::Case3_1 => {
                    if &w12 + &w13 > &w23 + &w11 {
                        return Ok(Reduction::Shortcut(path(&[u1, u1, u2, u3, u1])?));
                    }
                    let a1p = swap(a1, &arms, &[e(u2, u3), lp]);
                    step(g.clone(), rest, a1p, a2.clone(), LiftMap::default())
                }
                CaseTag::Case3_2 => {
                    let d = &(&w12 + &w13) - &w23;
                    if !d.is_negative() {
                        let graph = rebuild(g, 0, |m| {
                            m.insert(lp, d);
                        })?;
                        let a1p = swap(a1, &arms, &[e(u2, u3), lp]);
                        step(graph, rest, a1p, a2.clone(), expand())
                    } else {
                        let graph = rebuild(g, 0, |m| {
                            m.remove(&lp);
                        })?;
                        let a1p = swap(a1, &arms, &[e(u2, u3)]);
                        step(graph, rest, a1p, a2.clone(), LiftMap::default())
                    }
                }
                CaseTag::Case4_1 => {
                    if &w11 + &w23 > &w12 + &w13 {
                        return Ok(Reduction::Shortcut(path(&[u1, u1, u2, u3, u1])?));
                    }
                    let sum = &w12 + &w13;
                    let graph = rebuild(g, 0, |m| {
                        m.insert(lp, sum);
                        m.insert(e(u2, u3), Rational::zero());
                    })?;
                    let a2p = swap(a2, &arms, &[e(u2, u3), lp]);
                    step(graph, rest, a1.clone(), a2p, LiftMap::default())
                }
                _ => {
                    if w23 > &w12 + &w13 {
                        return Ok(Reduction::Shortcut(path(&[u1, u2, u3, u1])?));
                    }
                    let d = &(&w12 + &w13) - &w23;
                    let graph = rebuild(g, 0, |m| {
                        m.insert(lp, d);
                    })?;
                    let a2p = swap(a2, &arms, &[lp, e(u2, u3)]);
                    step(graph, rest, a1.clone(), a2p, expand())
                }
            }
        }
        CaseTag::Case5_1 | CaseTag::Case5_2 | CaseTag::Case6_1 | CaseTag::Case6_2 => {
            let (u1, u2, u3, u4) = (u[0], u[1], u[2], u[3]);
            let touched = [e(u1, u2), e(u1, u3), e(u2, u3), e(u2, u4), e(u3, u4)];
            let corners = [u1, u2, u3, u4];
            for tri in t.touching(&touched).iter() {
                if !tri.vertices().iter().all(|v| corners.contains(v)) {
                    return Err(internal(format!("case {}: {tri:?} leaves {corners:?}", class.tag)));
                }
            }
            let rest = t.without_touching(&touched);
            let (w12, w14, w23, w34) = (w(e(u1, u2)), w(e(u1, u4)), w(e(u2, u3)), w(e(u3, u4)));
            match class.tag {
                CaseTag::Case5_1 => {
                    if &w12 + &w34 > &w14 + &w23 {
                        return Ok(Reduction::Shortcut(path(&[u1, u2, u3, u4, u1])?));
                    }
                    let a1p = swap(a1, &[e(u1, u2), e(u3, u4)], &[e(u1, u4), e(u2, u3)]);
                    step(g.clone(), rest, a1p, a2.clone(), LiftMap::default())
                }
                CaseTag::Case6_1 => {
                    if &w14 + &w23 > &w12 + &w34 {
                        return Ok(Reduction::Shortcut(path(&[u1, u2, u3, u4, u1])?));
                    }
                    let graph = rebuild(g, 0, |m| {
                        m.insert(e(u2, u3), w12.clone());
                        m.insert(e(u1, u4), w34.clone());
                    })?;
                    let a2p = swap(a2, &[e(u1, u2), e(u3, u4)], &[e(u1, u4), e(u2, u3)]);
                    step(graph, rest, a1.clone(), a2p, LiftMap::default())
                }
                _ => {
                    let (u2p, u3p) = (g.vertex_count(), g.vertex_count() + 1);
                    let graph = rebuild(g, 2, |m| {
                        m.remove(&e(u1, u2));
                        m.remove(&e(u3, u4));
                        m.remove(&e(u2, u3));
                        m.insert(e(u1, u2p), w12);
                        m.insert(e(u3p, u4), w34);
                        m.insert(e(u2p, u3p), w23);
                        m.insert(e(u2, u2p), Rational::zero());
                        m.insert(e(u3, u3p), Rational::zero());
                    })?;
                    let joins = [e(u2, u2p), e(u3, u3p)];
                    let outer_old = [e(u1, u2), e(u3, u4)];
                    let outer_new = [e(u1, u2p), e(u3p, u4), joins[0], joins[1]];
                    let inner_new = [e(u2p, u3p), joins[0], joins[1]];
                    let lift = LiftMap {
                        vertex_map: [(u2p, u2), (u3p, u3)].into_iter().collect(),
                        connectors: joins.to_vec(),
                        ..LiftMap::default()
                    };
                    let (a1p, a2p) = if class.tag == CaseTag::Case5_2 {
                        (swap(a1, &outer_old, &outer_new), swap(a2, &[e(u2, u3)], &inner_new))
                    } else {
                        (swap(a1, &[e(u2, u3)], &inner_new), swap(a2, &outer_old, &outer_new))
                    };
                    step(graph, rest, a1p, a2p, lift)
                }
            }
        }
    }
}

/// Maps a trail of `step.graph` back to `original`.
pub fn lift_trail(step: &ReductionStep, inner: &Trail, original: &WeightedGraph) -> Result<Trail, WitnessError> {
    let lift = &step.lift;
    let mut nodes = vec![lift.vertex(inner.first())];
    for (i, x) in inner.edges().iter().enumerate() {
        if lift.connectors.contains(x) {
            return Err(internal(format!("case {}: lifted trail uses connector {x}", step.case)));
        }
        if let Some(segment) = lift.expansions.get(x) {
            nodes.extend_from_slice(&segment[1..]);
        } else {
            nodes.push(lift.vertex(inner.nodes()[i + 1]));
        }
    }
    let trail =
        Trail::from_nodes(nodes).map_err(|err| internal(format!("case {}: lift repeats an edge: {err}", step.case)))?;
    if let Some(x) = trail.edges().iter().find(|x| !original.contains_edge(x)) {
        return Err(internal(format!(
            "case {}: lifted edge {x} is not in the graph",
            step.case
        )));
    }
    Ok(trail)
}
