use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{Rational, RationalVector};
use crate::polyhedra::{AffinePiece, HPolyhedron};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// Pointwise maximum of the pieces (convex).
    Max,
    /// Pointwise minimum of the pieces (concave).
    Min,
}

/// Finite max or min of affine pieces, restricted to a polyhedral domain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyhedralFunction {
    pub convention: Convention,
    pub pieces: Vec<AffinePiece>,
    pub domain: HPolyhedron,
}

impl PolyhedralFunction {
    /// Builds the function after sorting and deduplicating the pieces.
    pub fn new(convention: Convention, pieces: Vec<AffinePiece>, domain: HPolyhedron) -> Result<Self> {
        let Some(first) = pieces.first() else {
            return Err(Error::DegenerateInput("polyhedral function without pieces".into()));
        };
        let n = first.slope.dim();
        if pieces.iter().any(|p| p.slope.dim() != n) || domain.dim != n {
            return Err(Error::DegenerateInput("pieces of different dimensions".into()));
        }
        let mut f = PolyhedralFunction {
            convention,
            pieces,
            domain,
        };
        f.pieces.sort();
        f.pieces.dedup();
        Ok(f)
    }

    pub fn dim(&self) -> usize {
        self.domain.dim
    }

    /// Value at `x`, or `DomainError` outside the domain.
    pub fn evaluate(&self, x: &RationalVector) -> Result<Rational> {
        self.check_point(x)?;
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn check_point(&self, x: &RationalVector) -> Result<()> {
        if x.dim() != self.dim() {
            return Err(Error::UnsupportedDimension {
                expected: self.dim(),
                found: x.dim(),
            });
        }
        if !self.domain.contains(x) {
            return Err(Error::DomainError(format!("{x} lies outside the domain")));
        }
        Ok(())
    }

    pub(crate) fn eval_unchecked(&self, x: &RationalVector) -> Rational {
        let values = self.pieces.iter().map(|p| p.eval(x));
        match self.convention {
            Convention::Max => values.max(),
            Convention::Min => values.min(),
        }
        .expect("at least one piece")
    }

    /// Indices of the pieces attaining the value at `x`.
    pub fn active_pieces(&self, x: &RationalVector) -> Result<Vec<usize>> {
        let v = self.evaluate(x)?;
        Ok((0..self.pieces.len())
            .filter(|&i| self.pieces[i].eval(x) == v)
            .collect())
    }

    /// Same function with the additive constant fixed so that it equals
    /// `value` at `x` (shifts every intercept by the same amount).
    pub fn anchored_at(&self, x: &RationalVector, value: &Rational) -> Result<Self> {
        let shift = value - self.evaluate(x)?;
        let mut f = self.clone();
        for p in &mut f.pieces {
            p.intercept += &shift;
        }
        Ok(f)
    }

    /// Keeps only the pieces attaining the value on a full-dimensional part of
    /// the domain.
    pub fn essential(&self) -> Result<Self> {
        let mut keep = Vec::new();
        for (i, p) in self.pieces.iter().enumerate() {
            let mut region = self.domain.clone();
            for (j, q) in self.pieces.iter().enumerate() {
                if i == j {
                    continue;
                }
                // Max: q·x + c_q <= p·x + c_p ; Min: the reverse.
                let (normal, offset) = match self.convention {
                    Convention::Max => (q.slope.sub(&p.slope), &p.intercept - &q.intercept),
                    Convention::Min => (p.slope.sub(&q.slope), &q.intercept - &p.intercept),
                };
                if normal.is_zero() {
                    if offset.is_negative() {
                        region = HPolyhedron::empty(self.dim());
                    }
                    continue;
                }
                region.push(crate::polyhedra::HalfSpace { normal, offset });
            }
            if region.is_full_dimensional()? {
                keep.push(p.clone());
            }
        }
        PolyhedralFunction::new(self.convention, keep, self.domain.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn piece(s: &[i64], c: i64) -> AffinePiece {
        AffinePiece::new(RationalVector::from_ints(s), c.into())
    }

    #[test]
    fn max_and_min_conventions() {
        let pieces = vec![piece(&[1], 0), piece(&[-1], 0)];
        let x = RationalVector::from_ints(&[-3]);
        let f = PolyhedralFunction::new(Convention::Max, pieces.clone(), HPolyhedron::whole_space(1)).unwrap();
        assert_eq!(f.evaluate(&x).unwrap(), Rational::from(3));
        let g = PolyhedralFunction::new(Convention::Min, pieces, HPolyhedron::whole_space(1)).unwrap();
        assert_eq!(g.evaluate(&x).unwrap(), Rational::from(-3));
        assert_eq!(f.active_pieces(&RationalVector::from_ints(&[0])).unwrap().len(), 2);
    }

    #[test]
    fn dominated_piece_is_inessential() {
        let f = PolyhedralFunction::new(
            Convention::Max,
            vec![piece(&[1], 0), piece(&[-1], 0), piece(&[0], -1)],
            HPolyhedron::whole_space(1),
        )
        .unwrap();
        assert_eq!(f.essential().unwrap().pieces.len(), 2);
    }

    #[test]
    fn anchoring_shifts_intercepts() {
        let f = PolyhedralFunction::new(Convention::Max, vec![piece(&[2], 1)], HPolyhedron::whole_space(1))
            .unwrap();
        let g = f.anchored_at(&RationalVector::from_ints(&[1]), &Rational::zero()).unwrap();
        assert_eq!(g.pieces, vec![piece(&[2], -2)]);
    }
}
