use serde::{Deserialize, Serialize};

use super::lp::{simplex_solve_fast, LinearProgram, LpOutcome, Sense};
use crate::error::{Error, Result};
use crate::exactmath::{Rational, RationalVector};

/// The closed set `{ x : normal · x <= offset }`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HalfSpace {
    pub normal: RationalVector,
    pub offset: Rational,
}

impl HalfSpace {
    pub fn new(normal: RationalVector, offset: Rational) -> Result<Self> {
        if normal.is_zero() {
            return Err(Error::DegenerateInput("half-space with zero normal".into()));
        }
        Ok(HalfSpace { normal, offset })
    }

    /// `offset - normal · x`, nonnegative exactly on the half-space.
    pub fn slack(&self, x: &RationalVector) -> Rational {
        &self.offset - self.normal.dot(x)
    }

    pub fn contains(&self, x: &RationalVector) -> bool {
        !self.slack(x).is_negative()
    }

    pub fn is_tight(&self, x: &RationalVector) -> bool {
        self.slack(x).is_zero()
    }

    /// The complementary closed half-space `normal · x >= offset`.
    pub fn flipped(&self) -> HalfSpace {
        HalfSpace {
            normal: -&self.normal,
            offset: -&self.offset,
        }
    }
}

/// Intersection of finitely many half-spaces in `R^dim`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HPolyhedron {
    pub dim: usize,
    pub halfspaces: Vec<HalfSpace>,
}

impl HPolyhedron {
    pub fn whole_space(dim: usize) -> Self {
        HPolyhedron {
            dim,
            halfspaces: Vec::new(),
        }
    }

    pub fn new(dim: usize, halfspaces: Vec<HalfSpace>) -> Result<Self> {
        if let Some(h) = halfspaces.iter().find(|h| h.normal.dim() != dim) {
            return Err(Error::UnsupportedDimension {
                expected: dim,
                found: h.normal.dim(),
            });
        }
        Ok(HPolyhedron { dim, halfspaces })
    }

    /// Canonical description of the empty set: `x_1 <= 0` and `x_1 >= 1`.
    pub fn empty(dim: usize) -> Self {
        let e = RationalVector::unit(dim, 0);
        HPolyhedron {
            dim,
            halfspaces: vec![
                HalfSpace {
                    normal: e.clone(),
                    offset: Rational::zero(),
                },
                HalfSpace {
                    normal: -&e,
                    offset: -Rational::one(),
                },
            ],
        }
    }

    pub fn len(&self) -> usize {
        self.halfspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.halfspaces.is_empty()
    }

    pub fn contains(&self, x: &RationalVector) -> bool {
        self.halfspaces.iter().all(|h| h.contains(x))
    }

    pub fn push(&mut self, h: HalfSpace) {
        self.halfspaces.push(h);
    }

    pub fn intersect(&self, other: &HPolyhedron) -> HPolyhedron {
        let mut hs = self.halfspaces.clone();
        hs.extend(other.halfspaces.iter().cloned());
        HPolyhedron {
            dim: self.dim,
            halfspaces: hs,
        }
    }

    /// Program optimizing `objective` over this polyhedron (all variables free).
    pub fn program(&self, objective: RationalVector, sense: Sense) -> LinearProgram {
        let mut lp = LinearProgram::new(objective, sense);
        lp.constraints = self.halfspaces.clone();
        lp
    }

    pub fn is_feasible(&self) -> Result<bool> {
        let lp = self.program(RationalVector::zeros(self.dim), Sense::Min);
        Ok(!matches!(simplex_solve_fast(&lp)?, LpOutcome::Infeasible))
    }

    /// Whether the polyhedron has nonempty interior in `R^dim`.
    pub fn is_full_dimensional(&self) -> Result<bool> {
        // max s subject to a·x + s <= b, s <= 1
        let n = self.dim;
        let mut obj = vec![Rational::zero(); n + 1];
        obj[n] = Rational::one();
        let mut lp = LinearProgram::new(RationalVector(obj), Sense::Max);
        for h in &self.halfspaces {
            let mut a = h.normal.0.clone();
            a.push(Rational::one());
            lp.constraints.push(HalfSpace {
                normal: RationalVector(a),
                offset: h.offset.clone(),
            });
        }
        lp.constraints.push(HalfSpace {
            normal: RationalVector::unit(n + 1, n),
            offset: Rational::one(),
        });
        Ok(match simplex_solve_fast(&lp)? {
            LpOutcome::Optimal(s) => s.value.is_positive(),
            _ => false,
        })
    }
}

/// Irredundant description of the same set.
///
/// Each constraint is tested by one LP (maximize its normal over the others);
/// redundant constraints are dropped as they are found. An empty polyhedron is
/// returned in the canonical two-constraint form of [`HPolyhedron::empty`].
pub fn reduce(poly: &HPolyhedron) -> Result<HPolyhedron> {
    if poly.is_empty() {
        return Ok(poly.clone());
    }
    if !poly.is_feasible()? {
        return Ok(HPolyhedron::empty(poly.dim));
    }
    let mut kept = poly.halfspaces.clone();
    let mut i = 0;
    while i < kept.len() {
        let others = HPolyhedron {
            dim: poly.dim,
            halfspaces: kept
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, h)| h.clone())
                .collect(),
        };
        let lp = others.program(kept[i].normal.clone(), Sense::Max);
        let redundant = match simplex_solve_fast(&lp)? {
            LpOutcome::Optimal(s) => s.value <= kept[i].offset,
            LpOutcome::Unbounded => false,
            LpOutcome::Infeasible => unreachable!("subset of a feasible system"),
        };
        if redundant {
            kept.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(HPolyhedron {
        dim: poly.dim,
        halfspaces: kept,
    })
}

/// The affine function `x -> slope · x + intercept`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AffinePiece {
    pub slope: RationalVector,
    pub intercept: Rational,
}

impl AffinePiece {
    pub fn new(slope: RationalVector, intercept: Rational) -> Self {
        AffinePiece { slope, intercept }
    }

    pub fn eval(&self, x: &RationalVector) -> Rational {
        self.slope.dot(x) + &self.intercept
    }
}
