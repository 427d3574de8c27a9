//! The case without forbidden triangles: a short improving window inside one
//! part of the decomposition.

use num_traits::ToPrimitive;

use crate::graph::{EdgeSet, WeightedGraph};
use crate::rational::Rational;
use crate::trail::Trail;

use super::decompose::decompose_alternating_trails;
use super::WitnessError;

/// `m = ceil(1/eps)`.
pub fn window_parameter(eps: &Rational) -> usize {
    eps.recip().ceil().to_usize().expect("eps in (0, 1]")
}

/// An alternating trail `P` with `A2 Δ P` a 2-matching, positive gain and
/// `|P| <= 2m - 1`, assuming `(1 - eps) w(A1) > w(A2)`.
///
/// The trail is the first positive-gain window of the first decomposition
/// part `P*` with `w(A2 ∩ P*) < (1 - eps) w(A1 ∩ P*)`.
pub fn base_case_trail(g: &WeightedGraph, a1: &EdgeSet, a2: &EdgeSet, eps: &Rational) -> Result<Trail, WitnessError> {
    let keep = Rational::one() - eps;
    let lhs = &keep * &g.weight_of(a1);
    let rhs = g.weight_of(a2);
    if lhs <= rhs {
        return Err(WitnessError::WeightCondition { lhs, rhs });
    }
    let parts = decompose_alternating_trails(a1, a2);
    let side_weights = |p: &Trail| {
        let mut ones = Rational::zero();
        let mut twos = Rational::zero();
        for e in p.edges() {
            let w = g.weight(e).expect("edge in graph");
            if a1.contains(e) {
                ones += w;
            } else {
                twos += w;
            }
        }
        (ones, twos)
    };
    let star = parts
        .into_iter()
        .find(|p| {
            let (ones, twos) = side_weights(p);
            twos < &keep * &ones
        })
        .ok_or_else(|| WitnessError::Internal("no decomposition part beats the averaging bound".into()))?;

    let m = window_parameter(eps);
    let k = star.len();
    if k < 2 * m {
        return Ok(star);
    }

    let in_a1: Vec<bool> = star.edges().iter().map(|e| a1.contains(e)).collect();
    let nodes = star.nodes();
    let gain_of = |p: &Trail| {
        let (ones, twos) = side_weights(p);
        ones - twos
    };
    let span = 2 * m - 1;

    if star.is_closed() && in_a1[0] != in_a1[k - 1] {
        // windows of 2m-1 edges, wrapping through the closing node
        for i in (0..k).filter(|&i| !in_a1[i]) {
            let window: Vec<_> = (0..=span).map(|t| nodes[(i + t) % k]).collect();
            let p = Trail::from_nodes(window).expect("window of a trail");
            if gain_of(&p).is_positive() {
                return Ok(p);
            }
        }
    } else {
        // Windows of an infinite alternating extension of P*, cut to P*.
        // Positions outside P* continue the alternation of the nearest end.
        let k = k as isize;
        let in_a1_ext = |i: isize| {
            if i < 0 {
                in_a1[0] ^ (i.rem_euclid(2) == 1)
            } else if i >= k {
                in_a1[(k - 1) as usize] ^ ((i - (k - 1)) % 2 == 1)
            } else {
                in_a1[i as usize]
            }
        };
        let reach = span as isize - 1;
        for j in -reach..k {
            if in_a1_ext(j) || in_a1_ext(j + reach) {
                continue;
            }
            let s = j.max(0) as usize;
            let e = (j + reach).min(k - 1) as usize;
            let p = Trail::from_nodes(nodes[s..=e + 1].to_vec()).expect("subtrail");
            if gain_of(&p).is_positive() {
                return Ok(p);
            }
        }
    }
    Err(WitnessError::Internal("no window of P* has positive gain".into()))
}
