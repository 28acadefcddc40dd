use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{Rational, RationalVector};
use crate::valuation::{Convention, PolyhedralFunction};

/// Piecewise-linear path through `waypoints`; a closed path returns to the first one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polyline {
    pub waypoints: Vec<RationalVector>,
    pub closed: bool,
}

impl Polyline {
    pub fn open(waypoints: Vec<RationalVector>) -> Self {
        Polyline {
            waypoints,
            closed: false,
        }
    }

    pub fn closed(waypoints: Vec<RationalVector>) -> Self {
        Polyline {
            waypoints,
            closed: true,
        }
    }

    pub fn segments(&self) -> Vec<(&RationalVector, &RationalVector)> {
        let w = &self.waypoints;
        let mut out: Vec<_> = w.windows(2).map(|p| (&p[0], &p[1])).collect();
        if self.closed && w.len() >= 2 {
            out.push((&w[w.len() - 1], &w[0]));
        }
        out
    }
}

/// Exact line integral of the subgradient selection along `path`.
///
/// For a convex `V = max(...)` this is `∫ Q·dp` with `Q = -∇V`, which equals
/// `V(start) - V(end)`. For a concave `U = min(...)` it is `∫ ∇U·dq`, equal
/// to `U(end) - U(start)`. Each segment is split where the active piece
/// changes and the contributions are summed in closed form.
pub fn path_integral(f: &PolyhedralFunction, path: &Polyline) -> Result<Rational> {
    if path.waypoints.len() < 2 {
        return Err(Error::DegenerateInput("a path needs at least two waypoints".into()));
    }
    for w in &path.waypoints {
        f.check_point(w)?;
    }
    let mut total = Rational::zero();
    for (a, b) in path.segments() {
        total += segment_integral(f, a, b);
    }
    Ok(match f.convention {
        Convention::Max => -total,
        Convention::Min => total,
    })
}

/// `∫_0^1 (active slope)·(b - a) dt` along the envelope.
fn segment_integral(f: &PolyhedralFunction, a: &RationalVector, b: &RationalVector) -> Rational {
    let d = b.sub(a);
    // along the segment piece k reads alpha_k + beta_k t
    let lines: Vec<(Rational, Rational)> = f.pieces.iter().map(|p| (p.eval(a), p.slope.dot(&d))).collect();
    let upper = f.convention == Convention::Max;
    // Compare pieces for the envelope: larger value wins on the upper
    // envelope (ties by larger slope), smaller on the lower.
    let better = |x: &(Rational, Rational), y: &(Rational, Rational)| {
        if upper {
            x > y
        } else {
            x < y
        }
    };
    let at = |k: usize, t: &Rational| (&lines[k].0 + &lines[k].1 * t, lines[k].1.clone());
    let active_at = |t: &Rational| {
        (0..lines.len()).fold(0, |best, k| if better(&at(k, t), &at(best, t)) { k } else { best })
    };

    let one = Rational::one();
    let mut t = Rational::zero();
    let mut cur = active_at(&t);
    let mut total = Rational::zero();
    while t < one {
        // the next piece to overtake: earliest crossing strictly after t
        let (ac, bc) = &lines[cur];
        let mut next = one.clone();
        for (ak, bk) in &lines {
            let gain = if upper { bk - bc } else { bc - bk };
            if !gain.is_positive() {
                continue;
            }
            let s = if upper { (ac - ak) / &gain } else { (ak - ac) / &gain };
            if s > t && s < next {
                next = s;
            }
        }
        total += bc * &(&next - &t);
        t = next;
        if t < one {
            cur = active_at(&t);
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::valuation::{dualize, indirect_utility, Valuation};

    fn five_bundle() -> Valuation {
        Valuation::from_ints(
            2,
            &[(&[0, 0], 0), (&[2, 0], 16), (&[1, 1], 24), (&[0, 2], 28), (&[2, 2], 34)],
        )
        .unwrap()
    }

    fn p(x: i64, y: i64) -> RationalVector {
        RationalVector::from_ints(&[x, y])
    }

    #[test]
    fn loop_through_vertices_vanishes() {
        let v = indirect_utility(&five_bundle());
        let path = Polyline::closed(vec![p(1, 9), p(3, 7), p(10, 14), p(8, 16)]);
        assert_eq!(path_integral(&v, &path).unwrap(), Rational::zero());
    }

    #[test]
    fn open_path_gives_potential_drop() {
        let v = indirect_utility(&five_bundle());
        let path = Polyline::open(vec![p(0, 0), p(8, 16)]);
        assert_eq!(path_integral(&v, &path).unwrap(), Rational::from(34));
        let detour = Polyline::open(vec![p(0, 0), p(20, -3), p(5, 30), p(8, 16)]);
        assert_eq!(path_integral(&v, &detour).unwrap(), Rational::from(34));
    }

    #[test]
    fn concave_integral_and_domain() {
        let u = dualize(&five_bundle()).unwrap();
        let path = Polyline::open(vec![p(0, 0), p(2, 0), p(1, 1), p(0, 2), p(2, 2)]);
        assert_eq!(path_integral(&u, &path).unwrap(), Rational::from(34));
        let outside = Polyline::open(vec![p(0, 0), p(3, 3)]);
        assert!(matches!(path_integral(&u, &outside), Err(Error::DomainError(_))));
    }

    #[test]
    fn constant_potential_loop() {
        let v = indirect_utility(&Valuation::from_ints(2, &[(&[0, 0], 5)]).unwrap());
        let path = Polyline::closed(vec![p(0, 0), p(4, 1), p(-2, 7)]);
        assert_eq!(path_integral(&v, &path).unwrap(), Rational::zero());
    }
}
