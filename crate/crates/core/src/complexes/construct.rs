use super::{
    check_normal_labeling, Domain, EdgeId, GeomSpec, LabeledSubdivision, RegionId, SubdivisionBuilder,
};
use crate::error::{Error, Result};
use crate::exactmath::{IntegerVector, Rational, RationalVector};
use crate::polyhedra::{cross, rot90, HPolyhedron};
use crate::valuation::{inverse_demand_region, Valuation};

fn require_planar(v: &Valuation) -> Result<()> {
    if v.goods() != 2 {
        return Err(Error::UnsupportedDimension {
            expected: 2,
            found: v.goods(),
        });
    }
    Ok(())
}

/// Subdivision of price space into the regions where each bundle is demanded.
pub fn price_complex(v: &Valuation) -> Result<LabeledSubdivision> {
    require_planar(v)?;
    let mut cells: Vec<(IntegerVector, HPolyhedron)> = Vec::new();
    for q in v.bundles() {
        let region = match inverse_demand_region(v, q) {
            Ok(r) => r,
            Err(Error::EmptyCell) => continue,
            Err(e) => return Err(e),
        };
        if region.is_full_dimensional()? {
            cells.push((q.clone(), region));
        }
    }

    let mut b = SubdivisionBuilder::new(Domain::Plane);
    for (q, _) in &cells {
        b.add_region(RationalVector::from(q));
    }
    let mut seen: Vec<(usize, usize)> = Vec::new();
    for (i, (_, region)) in cells.iter().enumerate() {
        for (k, h) in region.halfspaces.iter().enumerate() {
            let Some((geom, mid)) = facet_geometry(region, k)? else {
                continue;
            };
            let others: Vec<usize> = (0..cells.len())
                .filter(|&j| j != i && cells[j].1.contains(&mid))
                .collect();
            let [j] = others[..] else {
                return Err(Error::InvalidComplex(format!(
                    "facet {} of region {} meets {} neighbours",
                    h.normal,
                    cells[i].0,
                    others.len()
                )));
            };
            let key = (i.min(j), i.max(j));
            if !seen.contains(&key) {
                seen.push(key);
                b.add_edge(geom, vec![i, j]);
            }
        }
    }
    b.build()
}

/// The 1-cell `{ h_k tight } ∩ region` and a point in its relative interior.
fn facet_geometry(region: &HPolyhedron, k: usize) -> Result<Option<(GeomSpec, RationalVector)>> {
    let h = &region.halfspaces[k];
    let a = &h.normal;
    let p0 = a.scale(&(&h.offset / a.dot(a)));
    let d = rot90(a);
    let mut lo: Option<Rational> = None;
    let mut hi: Option<Rational> = None;
    for (j, g) in region.halfspaces.iter().enumerate() {
        if j == k {
            continue;
        }
        let gd = g.normal.dot(&d);
        let slack = g.slack(&p0);
        if gd.is_zero() {
            if slack.is_negative() {
                return Ok(None);
            }
            continue;
        }
        let t = &slack / &gd;
        if gd.is_positive() {
            if hi.as_ref().is_none_or(|x| t < *x) {
                hi = Some(t);
            }
        } else if lo.as_ref().is_none_or(|x| t > *x) {
            lo = Some(t);
        }
    }
    let at = |t: &Rational| p0.add_scaled(t, &d);
    Ok(match (lo, hi) {
        (Some(l), Some(u)) if l >= u => None,
        (Some(l), Some(u)) => {
            let (pl, pu) = (at(&l), at(&u));
            let mid = pl.add(&pu).scale(&Rational::frac(1, 2));
            Some((GeomSpec::Segment(pl, pu), mid))
        }
        (Some(l), None) => {
            let pl = at(&l);
            Some((GeomSpec::Ray(pl.clone(), d.clone()), pl.add(&d)))
        }
        (None, Some(u)) => {
            let pu = at(&u);
            let nd = -&d;
            Some((GeomSpec::Ray(pu.clone(), nd.clone()), pu.add(&nd)))
        }
        (None, None) => Some((GeomSpec::Line(p0.clone(), d), p0)),
    })
}

/// Extreme points of a planar point set, counterclockwise (monotone chain).
fn extreme_ccw(points: &[RationalVector]) -> Vec<RationalVector> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let turn = |o: &RationalVector, a: &RationalVector, b: &RationalVector| cross(&a.sub(o), &b.sub(o));
    let mut lower: Vec<RationalVector> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && !turn(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<RationalVector> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && !turn(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Regular subdivision of `co(bundles)` induced by the concave majorant,
/// each cell labeled by the slope of its hull piece.
pub fn demand_complex(v: &Valuation) -> Result<LabeledSubdivision> {
    require_planar(v)?;
    let hull = v.hull()?;
    let bundles: Vec<RationalVector> = v.bundles().map(RationalVector::from).collect();
    let mut b = SubdivisionBuilder::new(Domain::Bounded);
    match hull.affine.dim() {
        0 => b.add_vertex(bundles[0].clone()),
        1 => {
            for support in &hull.supports {
                let pts: Vec<RationalVector> = support.iter().map(|&i| bundles[i].clone()).collect();
                let ends = extreme_ccw(&pts);
                b.add_edge(GeomSpec::Segment(ends[0].clone(), ends[1].clone()), Vec::new());
            }
        }
        _ => {
            let mut sides: Vec<((RationalVector, RationalVector), Vec<usize>)> = Vec::new();
            for (piece, support) in hull.pieces.iter().zip(&hull.supports) {
                let r = b.add_region(piece.slope.clone());
                let pts: Vec<RationalVector> = support.iter().map(|&i| bundles[i].clone()).collect();
                let poly = extreme_ccw(&pts);
                for k in 0..poly.len() {
                    let (p, q) = (&poly[k], &poly[(k + 1) % poly.len()]);
                    let key = if p < q { (p.clone(), q.clone()) } else { (q.clone(), p.clone()) };
                    match sides.iter_mut().find(|(s, _)| *s == key) {
                        Some((_, regs)) => regs.push(r),
                        None => sides.push((key, vec![r])),
                    }
                }
            }
            for ((p, q), regs) in sides {
                b.add_edge(GeomSpec::Segment(p, q), regs);
            }
        }
    }
    b.build()
}

/// Cell-wise dual: regions become vertices at their labels, vertices become
/// regions labeled by their positions, and each edge is replaced by the
/// orthogonal edge joining the labels of the regions it separates.
pub fn dualize_complex(s: &LabeledSubdivision) -> Result<LabeledSubdivision> {
    s.validate()?;
    let report = check_normal_labeling(s);
    if let Some(v) = report.violations.first() {
        let e = s.edge(v.edge);
        return Err(Error::NonConservative {
            cycle: e.regions.clone(),
        });
    }
    match s.domain {
        Domain::Plane => plane_to_bounded(s),
        Domain::Bounded => bounded_to_plane(s),
    }
}

fn plane_to_bounded(s: &LabeledSubdivision) -> Result<LabeledSubdivision> {
    let mut b = SubdivisionBuilder::new(Domain::Bounded);
    for v in &s.vertices {
        b.add_region(v.point.clone());
    }
    for r in &s.regions {
        b.add_vertex(r.label.clone());
    }
    for e in s.edge_ids() {
        let edge = s.edge(e);
        let [r1, r2] = edge.regions[..] else {
            return Err(Error::InvalidComplex(format!("edge {e} does not separate two regions")));
        };
        let geom = GeomSpec::Segment(s.region(r1).label.clone(), s.region(r2).label.clone());
        let regions = s.edge_vertices(e).iter().map(|v| v.0).collect();
        b.add_edge(geom, regions);
    }
    b.build()
}

fn bounded_to_plane(s: &LabeledSubdivision) -> Result<LabeledSubdivision> {
    let mut b = SubdivisionBuilder::new(Domain::Plane);
    for v in &s.vertices {
        b.add_region(v.point.clone());
    }
    for e in s.edge_ids() {
        let edge = s.edge(e);
        let ends: Vec<usize> = s.edge_vertices(e).iter().map(|v| v.0).collect();
        let geom = match edge.regions[..] {
            [r1, r2] => GeomSpec::Segment(s.region(r1).label.clone(), s.region(r2).label.clone()),
            [r] => GeomSpec::Ray(s.region(r).label.clone(), inward_normal(s, e, r)),
            _ => {
                return Err(Error::DegenerateInput(format!(
                    "edge {e} borders no region, so its dual line has no position"
                )))
            }
        };
        b.add_edge(geom, ends);
    }
    b.build()
}

fn inward_normal(s: &LabeledSubdivision, e: EdgeId, r: RegionId) -> RationalVector {
    let n = rot90(&s.edge_direction(e));
    let a = s.edge_anchor(e);
    if n.dot(&s.region(r).interior.sub(&a)).is_positive() {
        n
    } else {
        -&n
    }
}
