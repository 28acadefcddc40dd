use std::collections::VecDeque;

use crate::complexes::{Domain, EdgeGeometry, LabeledSubdivision, RegionId};
use crate::error::{Error, Result};
use crate::exactmath::{Rational, RationalVector};
use crate::polyhedra::{convex_hull_hrep, AffinePiece, HPolyhedron};
use crate::valuation::{Convention, PolyhedralFunction};

/// Piece of region `k`: `-label·x + c` on the plane, `label·x + c` on a bounded domain.
fn slope(s: &LabeledSubdivision, r: RegionId) -> RationalVector {
    let l = &s.region(r).label;
    match s.domain {
        Domain::Plane => -l,
        Domain::Bounded => l.clone(),
    }
}

/// Points and directions along which the pieces of two adjacent regions must agree.
struct Contact {
    points: Vec<RationalVector>,
    directions: Vec<RationalVector>,
}

/// Reconstructs the potential whose gradient pieces are the region labels.
///
/// On the plane the result is `max_k(-label_k·p + c_k)`; on a bounded domain
/// it is `min_k(label_k·q + c_k)` restricted to the convex hull of the
/// vertices. `anchor` fixes the intercept `c` of one region. Constants are
/// propagated along a breadth-first spanning tree and every adjacency, tree
/// or not, is then re-checked at every shared point.
pub fn integrate_subdivision(s: &LabeledSubdivision, anchor: (RegionId, Rational)) -> Result<PolyhedralFunction> {
    s.validate()?;
    let n = s.regions.len();
    if n == 0 {
        return Err(Error::DegenerateInput("the subdivision has no regions".into()));
    }
    let (root, c0) = anchor;
    if root.0 >= n {
        return Err(Error::InvalidComplex(format!("anchor region {root} does not exist")));
    }

    let contacts = contacts(s);
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, (i, j, _)) in contacts.iter().enumerate() {
        adj[i.0].push(k);
        adj[j.0].push(k);
    }

    let mut c: Vec<Option<Rational>> = vec![None; n];
    let mut parent: Vec<Option<RegionId>> = vec![None; n];
    c[root.0] = Some(c0);
    let mut queue = VecDeque::from([root]);
    while let Some(i) = queue.pop_front() {
        for &k in &adj[i.0] {
            let (a, b, contact) = &contacts[k];
            let j = if *a == i { *b } else { *a };
            if c[j.0].is_some() {
                continue;
            }
            let x = &contact.points[0];
            // pieces agree at x: slope_i·x + c_i = slope_j·x + c_j
            let ci = c[i.0].as_ref().expect("visited");
            c[j.0] = Some(ci + slope(s, i).sub(&slope(s, j)).dot(x));
            parent[j.0] = Some(i);
            queue.push_back(j);
        }
    }
    let Some(c) = c.into_iter().collect::<Option<Vec<Rational>>>() else {
        return Err(Error::InvalidComplex("region adjacency graph is disconnected".into()));
    };

    for (i, j, contact) in &contacts {
        let (si, sj) = (slope(s, *i), slope(s, *j));
        let consistent = contact
            .points
            .iter()
            .all(|x| si.dot(x) + &c[i.0] == sj.dot(x) + &c[j.0])
            && contact.directions.iter().all(|d| si.dot(d) == sj.dot(d));
        if !consistent {
            return Err(Error::NonConservative {
                cycle: cycle_through(&parent, *i, *j),
            });
        }
    }

    let pieces = s
        .region_ids()
        .map(|r| AffinePiece::new(slope(s, r), c[r.0].clone()))
        .collect();
    let (convention, domain) = match s.domain {
        Domain::Plane => (Convention::Max, HPolyhedron::whole_space(2)),
        Domain::Bounded => {
            let pts: Vec<RationalVector> = s.vertices.iter().map(|v| v.point.clone()).collect();
            (Convention::Min, convex_hull_hrep(&pts)?)
        }
    };
    PolyhedralFunction::new(convention, pieces, domain)
}

/// All region pairs sharing an edge or a vertex, with the shared geometry.
fn contacts(s: &LabeledSubdivision) -> Vec<(RegionId, RegionId, Contact)> {
    let mut out: Vec<(RegionId, RegionId, Contact)> = Vec::new();
    let entry = |i: RegionId, j: RegionId, out: &mut Vec<(RegionId, RegionId, Contact)>| -> usize {
        let key = (i.min(j), i.max(j));
        match out.iter().position(|(a, b, _)| (*a, *b) == key) {
            Some(k) => k,
            None => {
                out.push((
                    key.0,
                    key.1,
                    Contact {
                        points: Vec::new(),
                        directions: Vec::new(),
                    },
                ));
                out.len() - 1
            }
        }
    };
    for e in s.edge_ids() {
        let edge = s.edge(e);
        let [i, j] = edge.regions[..] else { continue };
        let k = entry(i, j, &mut out);
        let contact = &mut out[k].2;
        match &edge.geometry {
            EdgeGeometry::Segment { start, end } => {
                contact.points.push(s.vertex(*start).point.clone());
                contact.points.push(s.vertex(*end).point.clone());
            }
            EdgeGeometry::Ray { start, direction } => {
                contact.points.push(s.vertex(*start).point.clone());
                contact.directions.push(RationalVector::from(direction));
            }
            EdgeGeometry::Line { point, direction } => {
                contact.points.push(point.clone());
                contact.directions.push(RationalVector::from(direction));
            }
        }
    }
    for v in s.vertex_ids() {
        let regs = s.vertex_regions(v);
        for a in 0..regs.len() {
            for b in a + 1..regs.len() {
                let k = entry(regs[a], regs[b], &mut out);
                out[k].2.points.push(s.vertex(v).point.clone());
            }
        }
    }
    out
}

/// Tree path from `i` up to the common ancestor and back down to `j`.
fn cycle_through(parent: &[Option<RegionId>], i: RegionId, j: RegionId) -> Vec<RegionId> {
    let chain = |mut r: RegionId| {
        let mut path = vec![r];
        while let Some(p) = parent[r.0] {
            path.push(p);
            r = p;
        }
        path
    };
    let (pi, pj) = (chain(i), chain(j));
    if pi.get(1) == Some(&j) || pj.get(1) == Some(&i) {
        return vec![i, j];
    }
    let lca = *pi.iter().find(|r| pj.contains(r)).expect("common root");
    let mut cycle: Vec<RegionId> = pi.iter().take_while(|r| **r != lca).copied().collect();
    cycle.push(lca);
    let down: Vec<RegionId> = pj.iter().take_while(|r| **r != lca).copied().collect();
    cycle.extend(down.into_iter().rev());
    cycle
}
