//! Vertex/ray extraction for planar H-polyhedra.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::HPolyhedron;
use crate::error::{Error, Result};
use crate::exactmath::{linalg, primitive_direction_rational, IntegerVector, Rational, RationalVector};

/// V-description of a planar polyhedron `conv(vertices) + cone(rays) + span(lineality)`.
///
/// For pointed polyhedra the vertices run counterclockwise; when unbounded
/// the chain starts at the end of `rays[0]` and finishes at the start of
/// `rays[last]`. For polyhedra containing a line, `vertices` are base points
/// on the boundary lines (ordered by the normal coordinate) and `lineality`
/// holds the line direction; the whole plane has no base points and two
/// lineality directions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polygon {
    pub vertices: Vec<RationalVector>,
    pub rays: Vec<IntegerVector>,
    pub lineality: Vec<IntegerVector>,
}

impl Polygon {
    pub fn is_whole_plane(&self) -> bool {
        self.lineality.len() == 2
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }
}

pub(crate) fn cross(a: &RationalVector, b: &RationalVector) -> Rational {
    &a[0] * &b[1] - &a[1] * &b[0]
}

pub(crate) fn rot90(a: &RationalVector) -> RationalVector {
    RationalVector(vec![-&a[1], a[0].clone()])
}

/// Counterclockwise angular order starting from the positive x-axis.
pub(crate) fn angle_cmp(u: &RationalVector, v: &RationalVector) -> Ordering {
    let half = |w: &RationalVector| {
        if w[1].is_positive() || (w[1].is_zero() && w[0].is_positive()) {
            0
        } else {
            1
        }
    };
    half(u).cmp(&half(v)).then_with(|| {
        let c = cross(u, v);
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

pub(crate) fn primitive(v: &RationalVector) -> Result<IntegerVector> {
    Ok(primitive_direction_rational(v)?.0)
}

/// Vertices and recession rays of a planar H-polyhedron.
pub fn polygon_from_halfspaces(poly: &HPolyhedron) -> Result<Polygon> {
    if poly.dim != 2 {
        return Err(Error::UnsupportedDimension {
            expected: 2,
            found: poly.dim,
        });
    }
    if !poly.is_feasible()? {
        return Err(Error::EmptyCell);
    }
    let normals: Vec<Vec<Rational>> = poly.halfspaces.iter().map(|h| h.normal.0.clone()).collect();
    match linalg::rank(&normals) {
        0 => Ok(Polygon {
            vertices: Vec::new(),
            rays: Vec::new(),
            lineality: vec![IntegerVector::new(vec![1, 0]), IntegerVector::new(vec![0, 1])],
        }),
        1 => line_polygon(poly),
        _ => pointed_polygon(poly),
    }
}

/// All normals parallel: a line, strip or half-plane.
fn line_polygon(poly: &HPolyhedron) -> Result<Polygon> {
    let n = RationalVector::from(&primitive(&poly.halfspaces[0].normal)?);
    let nn = n.dot(&n);
    let mut lo: Option<Rational> = None;
    let mut hi: Option<Rational> = None;
    for h in &poly.halfspaces {
        // h.normal = lambda * n, so the constraint bounds t = n·x
        let lambda = if !n[0].is_zero() {
            &h.normal[0] / &n[0]
        } else {
            &h.normal[1] / &n[1]
        };
        let bound = &h.offset / &lambda;
        if lambda.is_positive() {
            if hi.as_ref().is_none_or(|b| bound < *b) {
                hi = Some(bound);
            }
        } else if lo.as_ref().is_none_or(|b| bound > *b) {
            lo = Some(bound);
        }
    }
    let base = |t: &Rational| n.scale(&(t / &nn));
    let dir = primitive(&rot90(&n))?;
    let n_int = primitive(&n)?;
    let mut vertices = Vec::new();
    let mut rays = Vec::new();
    match (&lo, &hi) {
        (Some(l), Some(h)) if l == h => vertices.push(base(l)),
        (Some(l), Some(h)) => {
            vertices.push(base(l));
            vertices.push(base(h));
        }
        (Some(l), None) => {
            vertices.push(base(l));
            rays.push(n_int);
        }
        (None, Some(h)) => {
            vertices.push(base(h));
            rays.push(-&n_int);
        }
        (None, None) => unreachable!("rank one implies a bound"),
    }
    Ok(Polygon {
        vertices,
        rays,
        lineality: vec![dir],
    })
}

fn pointed_polygon(poly: &HPolyhedron) -> Result<Polygon> {
    let hs = &poly.halfspaces;
    let mut vertices: Vec<RationalVector> = Vec::new();
    for i in 0..hs.len() {
        for j in i + 1..hs.len() {
            let a = vec![hs[i].normal.0.clone(), hs[j].normal.0.clone()];
            let Some(x) = linalg::solve(&a, &[hs[i].offset.clone(), hs[j].offset.clone()]) else {
                continue;
            };
            let x = RationalVector(x);
            if poly.contains(&x) && !vertices.contains(&x) {
                vertices.push(x);
            }
        }
    }
    let mut rays: Vec<IntegerVector> = Vec::new();
    for h in hs {
        let r = rot90(&h.normal);
        for cand in [r.clone(), -&r] {
            if hs.iter().all(|g| !g.normal.dot(&cand).is_positive()) {
                let p = primitive(&cand)?;
                if !rays.contains(&p) {
                    rays.push(p);
                }
            }
        }
    }
    if rays.is_empty() {
        if let Some(c) = RationalVector::mean(&vertices) {
            vertices.sort_by(|u, v| angle_cmp(&u.sub(&c), &v.sub(&c)));
        }
    } else {
        let rv: Vec<RationalVector> = rays.iter().map(RationalVector::from).collect();
        let b = rv.iter().skip(1).fold(rv[0].clone(), |acc, r| acc.add(r));
        vertices.sort_by_key(|u| std::cmp::Reverse(cross(&b, u)));
        if rays.len() == 2 && !cross(&b, &rv[0]).is_positive() {
            rays.swap(0, 1);
        }
    }
    Ok(Polygon {
        vertices,
        rays,
        lineality: Vec::new(),
    })
}
