//! Upper concave hulls of lifted lattice points and facet descriptions of
//! convex hulls, by exhaustive subset enumeration.
//!
//! Both routines try every affinely independent subset of the right size,
//! so the cost is O(K^(k+2)) for K points spanning a k-dimensional affine
//! hull. Inputs are capped at [`MAX_HULL_DIM`] coordinates and
//! [`MAX_HULL_POINTS`] points.

use std::collections::BTreeSet;

use itertools::Itertools;

use super::{AffinePiece, HPolyhedron, HalfSpace};
use crate::error::{Error, Result};
use crate::exactmath::{linalg, primitive_direction_rational, IntegerVector, Rational, RationalVector};

pub const MAX_HULL_DIM: usize = 3;
pub const MAX_HULL_POINTS: usize = 64;

/// Affine hull `base + span(basis)` of a point set, `basis` in echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineHull {
    pub base: RationalVector,
    pub basis: Vec<RationalVector>,
}

impl AffineHull {
    pub fn of(points: &[RationalVector]) -> Option<AffineHull> {
        let base = points.first()?.clone();
        let dirs: Vec<RationalVector> = points.iter().map(|p| p.sub(&base)).collect();
        Some(AffineHull {
            basis: linalg::span_basis(&dirs),
            base,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Normals of hyperplanes cutting out the affine hull.
    pub fn equations(&self) -> Vec<(RationalVector, Rational)> {
        let n = self.base.dim();
        let rows: Vec<Vec<Rational>> = self.basis.iter().map(|b| b.0.clone()).collect();
        linalg::nullspace(&rows, n)
            .into_iter()
            .map(|a| {
                let b = a.dot(&self.base);
                (a, b)
            })
            .collect()
    }

    fn combine(&self, coeffs: &[Rational]) -> RationalVector {
        let n = self.base.dim();
        self.basis
            .iter()
            .zip(coeffs)
            .fold(RationalVector::zeros(n), |acc, (b, c)| acc.add_scaled(c, b))
    }
}

/// Upper concave hull of `(bundle, value)` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpperHull {
    /// Distinct affine pieces; their pointwise minimum over the convex hull of
    /// the bundles is the least concave majorant. Slopes lie in the direction
    /// space of the bundles' affine hull.
    pub pieces: Vec<AffinePiece>,
    /// For each piece, the indices of input points lying on it.
    pub supports: Vec<Vec<usize>>,
    /// Points on the majorant.
    pub hull_indices: BTreeSet<usize>,
    pub affine: AffineHull,
}

fn check_size(n: usize, k: usize) -> Result<()> {
    if n > MAX_HULL_DIM {
        return Err(Error::UnsupportedDimension {
            expected: MAX_HULL_DIM,
            found: n,
        });
    }
    if k > MAX_HULL_POINTS {
        return Err(Error::InstanceTooLarge {
            size: k as u128,
            cap: MAX_HULL_POINTS as u128,
        });
    }
    Ok(())
}

pub fn upper_concave_hull(points: &[(IntegerVector, Rational)]) -> Result<UpperHull> {
    let Some((first, _)) = points.first() else {
        return Err(Error::DegenerateInput("no points".into()));
    };
    let n = first.dim();
    if points.iter().any(|(q, _)| q.dim() != n) {
        return Err(Error::DegenerateInput("bundles of different lengths".into()));
    }
    let distinct: BTreeSet<&IntegerVector> = points.iter().map(|(q, _)| q).collect();
    if distinct.len() != points.len() {
        return Err(Error::DegenerateInput("duplicate bundle keys".into()));
    }
    check_size(n, points.len())?;

    let coords: Vec<RationalVector> = points.iter().map(|(q, _)| RationalVector::from(q)).collect();
    let affine = AffineHull::of(&coords).expect("nonempty");
    let k = affine.dim();
    // point j in intrinsic coordinates: basis_i · q_j
    let local: Vec<Vec<Rational>> = coords
        .iter()
        .map(|q| affine.basis.iter().map(|b| b.dot(q)).collect())
        .collect();

    let mut pieces: Vec<AffinePiece> = Vec::new();
    for subset in (0..points.len()).combinations(k + 1) {
        let a: Vec<Vec<Rational>> = subset
            .iter()
            .map(|&j| {
                let mut row = local[j].clone();
                row.push(Rational::one());
                row
            })
            .collect();
        let b: Vec<Rational> = subset.iter().map(|&j| points[j].1.clone()).collect();
        let Some(sol) = linalg::solve(&a, &b) else {
            continue;
        };
        let piece = AffinePiece::new(affine.combine(&sol[..k]), sol[k].clone());
        let above_all = coords
            .iter()
            .zip(points)
            .all(|(q, (_, v))| piece.eval(q) >= *v);
        if above_all && !pieces.contains(&piece) {
            pieces.push(piece);
        }
    }
    pieces.sort();

    let supports: Vec<Vec<usize>> = pieces
        .iter()
        .map(|piece| {
            (0..points.len())
                .filter(|&j| piece.eval(&coords[j]) == points[j].1)
                .collect()
        })
        .collect();
    let hull_indices = supports.iter().flatten().copied().collect();
    Ok(UpperHull {
        pieces,
        supports,
        hull_indices,
        affine,
    })
}

/// Facet description of `conv(points)`: facet inequalities within the affine
/// hull plus a pair of opposite inequalities for each affine equation.
/// Normals are scaled to primitive integer vectors.
pub fn convex_hull_hrep(points: &[RationalVector]) -> Result<HPolyhedron> {
    let Some(first) = points.first() else {
        return Err(Error::DegenerateInput("no points".into()));
    };
    let n = first.dim();
    check_size(n, points.len())?;
    let affine = AffineHull::of(points).expect("nonempty");
    let k = affine.dim();
    let mut hs: Vec<HalfSpace> = Vec::new();
    let push = |normal: RationalVector, offset: Rational, hs: &mut Vec<HalfSpace>| -> Result<()> {
        let (prim, w) = primitive_direction_rational(&normal)?;
        let h = HalfSpace {
            normal: RationalVector::from(&prim),
            offset: offset.checked_div(&w)?,
        };
        if !hs.contains(&h) {
            hs.push(h);
        }
        Ok(())
    };
    for (a, b) in affine.equations() {
        push(a.clone(), b.clone(), &mut hs)?;
        push(-&a, -b, &mut hs)?;
    }
    if k > 0 {
        let mut uniq: Vec<RationalVector> = points.to_vec();
        uniq.sort();
        uniq.dedup();
        for subset in (0..uniq.len()).combinations(k) {
            // normal = sum beta_i basis_i orthogonal to the subset's directions
            let s0 = &uniq[subset[0]];
            let rows: Vec<Vec<Rational>> = subset[1..]
                .iter()
                .map(|&j| {
                    let d = uniq[j].sub(s0);
                    affine.basis.iter().map(|b| b.dot(&d)).collect()
                })
                .collect();
            let ns = if rows.is_empty() {
                vec![RationalVector(vec![Rational::one(); 1])]
            } else {
                linalg::nullspace(&rows, k)
            };
            if ns.len() != 1 {
                continue;
            }
            let normal = affine.combine(&ns[0].0);
            if normal.is_zero() {
                continue;
            }
            let offset = normal.dot(s0);
            let side: Vec<Rational> = uniq.iter().map(|p| normal.dot(p) - &offset).collect();
            if side.iter().all(|s| !s.is_positive()) {
                push(normal, offset, &mut hs)?;
            } else if side.iter().all(|s| !s.is_negative()) {
                push(-&normal, -offset, &mut hs)?;
            }
        }
    }
    hs.sort();
    Ok(HPolyhedron { dim: n, halfspaces: hs })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(data: &[(&[i64], i64)]) -> Vec<(IntegerVector, Rational)> {
        data.iter()
            .map(|(q, v)| (IntegerVector::new(q.to_vec()), Rational::from(*v)))
            .collect()
    }

    fn piece(slope: &[i64], c: i64) -> AffinePiece {
        AffinePiece::new(RationalVector::from_ints(slope), c.into())
    }

    #[test]
    fn worked_example_hull() {
        let h = upper_concave_hull(&pts(&[
            (&[0, 0], 0),
            (&[2, 0], 16),
            (&[1, 1], 24),
            (&[0, 2], 28),
            (&[2, 2], 34),
        ]))
        .unwrap();
        let mut expected = vec![
            piece(&[1, 9], 14),
            piece(&[3, 7], 14),
            piece(&[8, 16], 0),
            piece(&[10, 14], 0),
        ];
        expected.sort();
        assert_eq!(h.pieces, expected);
        assert_eq!(h.hull_indices.len(), 5);
        assert!(h.supports.iter().all(|s| s.len() == 3));
    }

    #[test]
    fn single_point_is_constant() {
        let h = upper_concave_hull(&pts(&[(&[0, 0], 0)])).unwrap();
        assert_eq!(h.pieces, vec![piece(&[0, 0], 0)]);
        assert_eq!(h.affine.dim(), 0);
    }

    #[test]
    fn point_below_chord_is_off_hull() {
        let h = upper_concave_hull(&pts(&[(&[0], 0), (&[1], 1), (&[2], 4)])).unwrap();
        assert_eq!(h.pieces, vec![piece(&[2], 0)]);
        assert_eq!(h.hull_indices, BTreeSet::from([0, 2]));
    }

    #[test]
    fn collinear_bundles_in_the_plane() {
        let h = upper_concave_hull(&pts(&[(&[0, 0], 0), (&[1, 1], 3), (&[2, 2], 4)])).unwrap();
        // slopes restricted to the diagonal direction
        assert_eq!(h.pieces.len(), 2);
        for p in &h.pieces {
            assert_eq!(p.slope[0], p.slope[1]);
        }
    }

    #[test]
    fn limits_are_enforced() {
        assert!(matches!(
            upper_concave_hull(&pts(&[(&[0, 0, 0, 0], 0)])),
            Err(Error::UnsupportedDimension { .. })
        ));
        assert!(matches!(
            upper_concave_hull(&pts(&[(&[0], 0), (&[0], 1)])),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn square_hrep() {
        let sq: Vec<RationalVector> = [[0, 0], [2, 0], [0, 2], [2, 2], [1, 1]]
            .iter()
            .map(|p| RationalVector::from_ints(p))
            .collect();
        let h = convex_hull_hrep(&sq).unwrap();
        assert_eq!(h.len(), 4);
        assert!(sq.iter().all(|p| h.contains(p)));
        assert!(!h.contains(&RationalVector::from_ints(&[3, 1])));
    }

    #[test]
    fn segment_hrep_has_equations() {
        let seg = vec![RationalVector::from_ints(&[0, 0]), RationalVector::from_ints(&[2, 2])];
        let h = convex_hull_hrep(&seg).unwrap();
        assert!(h.contains(&RationalVector::from_ints(&[1, 1])));
        assert!(!h.contains(&RationalVector::from_ints(&[1, 0])));
        assert!(!h.contains(&RationalVector::from_ints(&[3, 3])));
    }
}
