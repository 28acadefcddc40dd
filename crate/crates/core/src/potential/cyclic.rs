use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{Rational, RationalVector};

/// One observed price/bundle pair of a correspondence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplePair {
    pub p: RationalVector,
    pub q: RationalVector,
}

/// Finite sample of a correspondence, serialized as a plain list of pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CorrespondenceSample {
    pub pairs: Vec<SamplePair>,
}

impl CorrespondenceSample {
    pub fn new(pairs: Vec<SamplePair>) -> Self {
        CorrespondenceSample { pairs }
    }

    pub fn from_ints(pairs: &[(&[i64], &[i64])]) -> Self {
        CorrespondenceSample {
            pairs: pairs
                .iter()
                .map(|(p, q)| SamplePair {
                    p: RationalVector::from_ints(p),
                    q: RationalVector::from_ints(q),
                })
                .collect(),
        }
    }
}

/// Which way the sample is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// `q ∈ D(p)`: needs `Σ q_i·(p_{i+1} - p_i) >= 0` around every cycle.
    Demand,
    /// `p ∈ D⁻¹(q)`: needs `Σ p_i·(q_{i+1} - q_i) >= 0` around every cycle.
    InverseDemand,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleReport {
    pub monotone: bool,
    /// Sample indices of a violating cycle, in order; the cycle closes back to the first.
    pub witness: Option<Vec<usize>>,
    /// The (negative) sum along the witness.
    pub cycle_sum: Option<Rational>,
}

/// Exact check of cyclic monotonicity over all cycles of the sample.
///
/// Arc `i -> j` carries weight `q_i·(p_j - p_i)` (or `p_i·(q_j - q_i)` for
/// [`Direction::InverseDemand`]); the sample is cyclically monotone exactly
/// when this complete digraph has no negative cycle.
pub fn check_cyclic_monotonicity(sample: &CorrespondenceSample, direction: Direction) -> Result<CycleReport> {
    let pairs = &sample.pairs;
    let n = pairs.len();
    if let Some(first) = pairs.first() {
        let dim = first.p.dim();
        if let Some(bad) = pairs.iter().find(|s| s.p.dim() != dim || s.q.dim() != dim) {
            let found = if bad.p.dim() != dim { bad.p.dim() } else { bad.q.dim() };
            return Err(Error::UnsupportedDimension { expected: dim, found });
        }
    }
    let weight = |i: usize, j: usize| match direction {
        Direction::Demand => pairs[i].q.dot(&pairs[j].p.sub(&pairs[i].p)),
        Direction::InverseDemand => pairs[i].p.dot(&pairs[j].q.sub(&pairs[i].q)),
    };
    let w: Vec<Vec<Rational>> = (0..n).map(|i| (0..n).map(|j| weight(i, j)).collect()).collect();

    // Bellman-Ford from a virtual source joined to every node at cost 0.
    let mut dist = vec![Rational::zero(); n];
    let mut pred: Vec<Option<usize>> = vec![None; n];
    let mut relaxed = None;
    for _ in 0..n {
        relaxed = None;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let cand = &dist[i] + &w[i][j];
                if cand < dist[j] {
                    dist[j] = cand;
                    pred[j] = Some(i);
                    relaxed = Some(j);
                }
            }
        }
        if relaxed.is_none() {
            break;
        }
    }
    let Some(mut x) = relaxed else {
        return Ok(CycleReport {
            monotone: true,
            witness: None,
            cycle_sum: None,
        });
    };
    // walk back n steps to land inside the cycle
    for _ in 0..n {
        x = pred[x].expect("relaxed node has a predecessor");
    }
    let mut cycle = vec![x];
    let mut y = pred[x].expect("on the cycle");
    while y != x {
        cycle.push(y);
        y = pred[y].expect("on the cycle");
    }
    cycle.reverse();
    let sum = (0..cycle.len())
        .map(|k| w[cycle[k]][cycle[(k + 1) % cycle.len()]].clone())
        .sum();
    let start = (0..cycle.len()).min_by_key(|&k| cycle[k]).unwrap_or(0);
    cycle.rotate_left(start);
    Ok(CycleReport {
        monotone: false,
        witness: Some(cycle),
        cycle_sum: Some(sum),
    })
}
