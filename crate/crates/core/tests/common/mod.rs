//! Brute-force oracles shared by the integration tests. They use only the
//! exact number types of the crate, never its geometry or optimization code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use tropical_markets::exactmath::{IntegerVector, Rational, RationalVector};
use tropical_markets::valuation::Valuation;

pub fn r(n: i64) -> Rational {
    Rational::from(n)
}

pub fn pv(x: i64, y: i64) -> RationalVector {
    RationalVector::from_ints(&[x, y])
}

pub fn iv(x: i64, y: i64) -> IntegerVector {
    IntegerVector::new(vec![x, y])
}

pub fn five_bundle() -> Valuation {
    Valuation::from_ints(
        2,
        &[(&[0, 0], 0), (&[2, 0], 16), (&[1, 1], 24), (&[0, 2], 28), (&[2, 2], 34)],
    )
    .unwrap()
}

pub fn two_consumer_valuations() -> (Valuation, Valuation) {
    (
        Valuation::from_ints(2, &[(&[0, 0], 0), (&[1, 0], 30), (&[0, 1], 50), (&[1, 1], 60)]).unwrap(),
        Valuation::from_ints(2, &[(&[0, 0], 0), (&[1, 0], 10), (&[0, 1], 30), (&[1, 1], 70)]).unwrap(),
    )
}

/// Bundles and values as plain data.
pub fn points(v: &Valuation) -> Vec<(IntegerVector, Rational)> {
    v.entries().map(|(q, u)| (q.clone(), u.clone())).collect()
}

pub fn dot(p: &RationalVector, q: &IntegerVector) -> Rational {
    p.iter().zip(q.coords()).map(|(a, &b)| a * &Rational::from(b)).sum()
}

/// `max_q (u_q - p·q)` by direct evaluation.
pub fn indirect(v: &Valuation, p: &RationalVector) -> Rational {
    v.entries().map(|(q, u)| u - dot(p, q)).max().unwrap()
}

/// Argmax bundles of `u_q - p·q`.
pub fn demanded(v: &Valuation, p: &RationalVector) -> BTreeSet<IntegerVector> {
    let best = indirect(v, p);
    v.entries()
        .filter(|(q, u)| *u - dot(p, q) == best)
        .map(|(q, _)| q.clone())
        .collect()
}

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn det2(a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> Rational {
    a * d - b * c
}

/// Solves `[a b; c d] x = (e, f)` when the matrix is invertible.
pub fn solve2(a: &Rational, b: &Rational, c: &Rational, d: &Rational, e: &Rational, f: &Rational) -> Option<RationalVector> {
    let det = det2(a, b, c, d);
    if det.is_zero() {
        return None;
    }
    let x = det2(e, b, f, d) / &det;
    let y = det2(a, e, c, f) / &det;
    Some(RationalVector(vec![x, y]))
}

fn cross(a: &IntegerVector, b: &IntegerVector, c: &IntegerVector) -> i64 {
    let (u, w) = (b.sub(a), c.sub(a));
    u[0] * w[1] - u[1] * w[0]
}

/// Facets of the upper concave hull of a planar valuation: every plane through
/// three non-collinear lifted points with no lifted point above it.
pub fn upper_hull_planes(v: &Valuation) -> BTreeSet<(RationalVector, Rational)> {
    let pts = points(v);
    let mut out = BTreeSet::new();
    let n = pts.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (qi, qj, qk) = (&pts[i].0, &pts[j].0, &pts[k].0);
                if cross(qi, qj, qk) == 0 {
                    continue;
                }
                // slope a with a·(qj - qi) = uj - ui, a·(qk - qi) = uk - ui
                let (dj, dk) = (qj.sub(qi), qk.sub(qi));
                let a = solve2(
                    &r(dj[0]),
                    &r(dj[1]),
                    &r(dk[0]),
                    &r(dk[1]),
                    &(&pts[j].1 - &pts[i].1),
                    &(&pts[k].1 - &pts[i].1),
                )
                .unwrap();
                let c = &pts[i].1 - dot(&a, qi);
                if pts.iter().all(|(q, u)| *u <= dot(&a, q) + &c) {
                    out.insert((a, c));
                }
            }
        }
    }
    out
}

/// Points where at least three pieces of `max_q (u_q - p·q)` tie with a
/// two-dimensional set of active bundles.
pub fn price_vertices(v: &Valuation) -> BTreeSet<RationalVector> {
    let pts = points(v);
    let n = pts.len();
    let mut out = BTreeSet::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (qi, qj, qk) = (&pts[i].0, &pts[j].0, &pts[k].0);
                if cross(qi, qj, qk) == 0 {
                    continue;
                }
                // (qj - qi)·p = uj - ui and (qk - qi)·p = uk - ui
                let (dj, dk) = (qj.sub(qi), qk.sub(qi));
                let p = solve2(
                    &r(dj[0]),
                    &r(dj[1]),
                    &r(dk[0]),
                    &r(dk[1]),
                    &(&pts[j].1 - &pts[i].1),
                    &(&pts[k].1 - &pts[i].1),
                )
                .unwrap();
                let s = &pts[i].1 - dot(&p, qi);
                if s == indirect(v, &p) {
                    out.insert(p);
                }
            }
        }
    }
    out
}

/// Exact `∫ ∇f·dx` of `f = max_k(s_k·x + c_k)` along a segment, splitting at
/// every pairwise crossing and reading the winner at each midpoint.
pub fn segment_integral_oracle(pieces: &[(RationalVector, Rational)], a: &RationalVector, b: &RationalVector) -> Rational {
    let d = b.sub(a);
    let lines: Vec<(Rational, Rational)> = pieces.iter().map(|(s, c)| (s.dot(a) + c, s.dot(&d))).collect();
    let mut cuts = vec![Rational::zero(), Rational::one()];
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let db = &lines[i].1 - &lines[j].1;
            if db.is_zero() {
                continue;
            }
            let t = (&lines[j].0 - &lines[i].0) / &db;
            if t.is_positive() && t < Rational::one() {
                cuts.push(t);
            }
        }
    }
    cuts.sort();
    cuts.dedup();
    let half = Rational::frac(1, 2);
    let mut total = Rational::zero();
    for w in cuts.windows(2) {
        let mid = (&w[0] + &w[1]) * &half;
        let best = lines
            .iter()
            .max_by(|x, y| (&x.0 + &x.1 * &mid).cmp(&(&y.0 + &y.1 * &mid)))
            .unwrap();
        total += &best.1 * &(&w[1] - &w[0]);
    }
    total
}

/// Random planar valuation: the zero bundle plus up to `extra` distinct bundles
/// in `[0, side]²`, integer values in `[0, vmax]`.
pub fn random_valuation(rng: &mut ChaCha8Rng, extra: usize, side: i64, vmax: i64) -> Valuation {
    let mut bundles = BTreeSet::new();
    bundles.insert(iv(0, 0));
    let want = rng.gen_range(0..=extra);
    let mut tries = 0;
    while bundles.len() < want + 1 && tries < 200 {
        bundles.insert(iv(rng.gen_range(0..=side), rng.gen_range(0..=side)));
        tries += 1;
    }
    let entries: Vec<(IntegerVector, Rational)> =
        bundles.into_iter().map(|q| (q, r(rng.gen_range(0..=vmax)))).collect();
    Valuation::new(2, entries).unwrap()
}

/// Random rational in `[lo, hi]` with denominator up to `den`.
pub fn random_rational(rng: &mut ChaCha8Rng, lo: i64, hi: i64, den: i64) -> Rational {
    let d = rng.gen_range(1..=den);
    Rational::frac(rng.gen_range(lo * d..=hi * d), d)
}

pub fn random_point(rng: &mut ChaCha8Rng, lo: i64, hi: i64, den: i64) -> RationalVector {
    RationalVector(vec![random_rational(rng, lo, hi, den), random_rational(rng, lo, hi, den)])
}

/// Sum of a cycle `Σ q_k·(p_{k+1} - p_k)` over sample indices.
pub fn cycle_sum(pairs: &[(RationalVector, RationalVector)], cycle: &[usize]) -> Rational {
    (0..cycle.len())
        .map(|k| {
            let (i, j) = (cycle[k], cycle[(k + 1) % cycle.len()]);
            pairs[i].1.dot(&pairs[j].0.sub(&pairs[i].0))
        })
        .sum()
}

/// Whether some cycle of length at most `max_len` has a negative sum.
pub fn has_negative_cycle(pairs: &[(RationalVector, RationalVector)], max_len: usize) -> bool {
    fn extend(pairs: &[(RationalVector, RationalVector)], path: &mut Vec<usize>, max_len: usize) -> bool {
        if path.len() >= 2 && cycle_sum(pairs, path).is_negative() {
            return true;
        }
        if path.len() == max_len {
            return false;
        }
        for j in 0..pairs.len() {
            // cycles are enumerated from their smallest index
            if j <= path[0] || path.contains(&j) {
                continue;
            }
            path.push(j);
            if extend(pairs, path, max_len) {
                return true;
            }
            path.pop();
        }
        false
    }
    (0..pairs.len()).any(|i| extend(pairs, &mut vec![i], max_len))
}

/// Candidate minimizers of a two-good `Σ_i max_q (u_i(q) - p·q) + p·ω` over
/// `p ≥ 0`: all nonnegative intersections of indifference lines and axes.
pub fn arrangement_vertices(consumers: &[Valuation]) -> BTreeSet<RationalVector> {
    let mut lines: Vec<(Rational, Rational, Rational)> = vec![(r(1), r(0), r(0)), (r(0), r(1), r(0))];
    for v in consumers {
        let pts = points(v);
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                let d = pts[j].0.sub(&pts[i].0);
                lines.push((r(d[0]), r(d[1]), &pts[j].1 - &pts[i].1));
            }
        }
    }
    let mut out = BTreeSet::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let (a, b, e) = &lines[i];
            let (c, d, f) = &lines[j];
            if let Some(p) = solve2(a, b, c, d, e, f) {
                if !p[0].is_negative() && !p[1].is_negative() {
                    out.insert(p);
                }
            }
        }
    }
    out
}

pub fn aggregate_indirect_oracle(consumers: &[Valuation], endowment: &IntegerVector, p: &RationalVector) -> Rational {
    consumers.iter().map(|v| indirect(v, p)).sum::<Rational>() + dot(p, endowment)
}

/// `(min over p ≥ 0, argmin set among the candidates)`.
pub fn min_indirect_oracle(consumers: &[Valuation], endowment: &IntegerVector) -> (Rational, Vec<RationalVector>) {
    let cands = arrangement_vertices(consumers);
    let vals: Vec<(RationalVector, Rational)> = cands
        .into_iter()
        .map(|p| {
            let v = aggregate_indirect_oracle(consumers, endowment, &p);
            (p, v)
        })
        .collect();
    let best = vals.iter().map(|(_, v)| v).min().unwrap().clone();
    let arg = vals.into_iter().filter(|(_, v)| *v == best).map(|(p, _)| p).collect();
    (best, arg)
}

/// Exhaustive maximum of `Σ u_i(q_i)` over feasible allocations.
pub fn max_utility_oracle(consumers: &[Valuation], endowment: &IntegerVector) -> (Rational, Vec<Vec<IntegerVector>>) {
    let mut best: Option<Rational> = None;
    let mut arg = Vec::new();
    let mut stack: Vec<(usize, Vec<IntegerVector>, Rational)> = vec![(0, Vec::new(), Rational::zero())];
    while let Some((i, chosen, value)) = stack.pop() {
        if i == consumers.len() {
            let total = chosen.iter().fold(IntegerVector::zeros(endowment.dim()), |a, q| a.add(q));
            if !total.le(endowment) {
                continue;
            }
            match &best {
                Some(b) if value < *b => {}
                Some(b) if value == *b => arg.push(chosen),
                _ => {
                    best = Some(value);
                    arg = vec![chosen];
                }
            }
            continue;
        }
        for (q, u) in consumers[i].entries() {
            let mut next = chosen.clone();
            next.push(q.clone());
            stack.push((i + 1, next, &value + u));
        }
    }
    arg.sort();
    (best.unwrap(), arg)
}
