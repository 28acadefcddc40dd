//! Normally labeled planar subdivisions: price complexes, demand complexes,
//! their duality, and the normal-labeling and balancing checks.

mod builder;
mod checks;
mod construct;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use checks::{
    check_balancing, check_normal_labeling, BalanceReport, BalanceStatus, BalanceTerm, LabelingReport,
    LabelingViolation, VertexBalance,
};
pub use construct::{demand_complex, dualize_complex, price_complex};

use crate::error::{Error, Result};
use crate::exactmath::{IntegerVector, Rational, RationalVector};
use crate::polyhedra::{HPolyhedron, HalfSpace};

macro_rules! id_type {
    ($name:ident, $prefix:literal) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(pub usize);

        impl $name {
            pub fn index(self) -> usize {
                self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, concat!($prefix, "{}"), self.0)
            }
        }
    };
}

id_type!(VertexId, "v");
id_type!(EdgeId, "e");
id_type!(RegionId, "r");

/// What the 2-cells cover: all of price space, or the convex hull of the labels' duals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    Plane,
    Bounded,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub point: RationalVector,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum EdgeGeometry {
    Segment { start: VertexId, end: VertexId },
    Ray { start: VertexId, direction: IntegerVector },
    Line { point: RationalVector, direction: IntegerVector },
}

/// Label jump across a facet: `label(to) - label(from) = weight * normal`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FacetData {
    pub weight: Rational,
    pub normal: IntegerVector,
    pub from: RegionId,
    pub to: RegionId,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub geometry: EdgeGeometry,
    /// Adjacent regions: two for interior facets, one on the boundary of a
    /// bounded domain, none when the complex has no 2-cells.
    pub regions: Vec<RegionId>,
    pub facet: Option<FacetData>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Region {
    pub label: RationalVector,
    /// Vertex chain, counterclockwise; for unbounded regions it runs from the
    /// apex of `rays[0]` to the apex of the last ray.
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    pub rays: Vec<IntegerVector>,
    /// A point in the interior.
    pub interior: RationalVector,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LabeledSubdivision {
    pub domain: Domain,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub regions: Vec<Region>,
}

impl LabeledSubdivision {
    pub fn vertex(&self, id: VertexId) -> &Vertex {
        &self.vertices[id.0]
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id.0]
    }

    pub fn region(&self, id: RegionId) -> &Region {
        &self.regions[id.0]
    }

    pub fn region_ids(&self) -> impl Iterator<Item = RegionId> {
        (0..self.regions.len()).map(RegionId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn region_by_label(&self, label: &RationalVector) -> Option<RegionId> {
        self.regions.iter().position(|r| r.label == *label).map(RegionId)
    }

    pub fn vertex_at(&self, point: &RationalVector) -> Option<VertexId> {
        self.vertices.iter().position(|v| v.point == *point).map(VertexId)
    }

    /// Interior 1-cells bounded at both ends.
    pub fn bounded_edge_count(&self) -> usize {
        self.edges
            .iter()
            .filter(|e| matches!(e.geometry, EdgeGeometry::Segment { .. }))
            .count()
    }

    /// Vertices of an edge (both ends of a segment, the apex of a ray).
    pub fn edge_vertices(&self, id: EdgeId) -> Vec<VertexId> {
        match self.edge(id).geometry {
            EdgeGeometry::Segment { start, end } => vec![start, end],
            EdgeGeometry::Ray { start, .. } => vec![start],
            EdgeGeometry::Line { .. } => Vec::new(),
        }
    }

    /// Edges having `v` as an endpoint.
    pub fn incident_edges(&self, v: VertexId) -> Vec<EdgeId> {
        self.edge_ids()
            .filter(|&e| self.edge_vertices(e).contains(&v))
            .collect()
    }

    /// Regions whose closure contains vertex `v`.
    pub fn vertex_regions(&self, v: VertexId) -> Vec<RegionId> {
        self.region_ids()
            .filter(|&r| self.region(r).vertices.contains(&v))
            .collect()
    }

    /// Direction of an edge as a rational vector.
    pub fn edge_direction(&self, id: EdgeId) -> RationalVector {
        match &self.edge(id).geometry {
            EdgeGeometry::Segment { start, end } => self.vertex(*end).point.sub(&self.vertex(*start).point),
            EdgeGeometry::Ray { direction, .. } | EdgeGeometry::Line { direction, .. } => {
                RationalVector::from(direction)
            }
        }
    }

    /// A point in the relative interior of an edge.
    pub fn edge_midpoint(&self, id: EdgeId) -> RationalVector {
        match &self.edge(id).geometry {
            EdgeGeometry::Segment { start, end } => self
                .vertex(*start)
                .point
                .add(&self.vertex(*end).point)
                .scale(&Rational::frac(1, 2)),
            EdgeGeometry::Ray { start, direction } => {
                self.vertex(*start).point.add(&RationalVector::from(direction))
            }
            EdgeGeometry::Line { point, .. } => point.clone(),
        }
    }

    /// A point on the edge's supporting line.
    pub fn edge_anchor(&self, id: EdgeId) -> RationalVector {
        match &self.edge(id).geometry {
            EdgeGeometry::Segment { start, .. } | EdgeGeometry::Ray { start, .. } => {
                self.vertex(*start).point.clone()
            }
            EdgeGeometry::Line { point, .. } => point.clone(),
        }
    }

    /// Closed half-plane description of a region, one constraint per edge.
    pub fn region_halfspaces(&self, id: RegionId) -> Result<HPolyhedron> {
        let r = self.region(id);
        let mut poly = HPolyhedron::whole_space(2);
        for &e in &r.edges {
            let d = self.edge_direction(e);
            let a = self.edge_anchor(e);
            let mut normal = RationalVector(vec![d[1].clone(), -&d[0]]);
            if normal.is_zero() {
                return Err(Error::InvalidComplex(format!("edge {e} has zero length")));
            }
            let side = normal.dot(&r.interior.sub(&a));
            if side.is_zero() {
                return Err(Error::InvalidComplex(format!(
                    "interior point of region {id} lies on edge {e}"
                )));
            }
            if side.is_positive() {
                normal = -&normal;
            }
            let offset = normal.dot(&a);
            poly.push(HalfSpace { normal, offset });
        }
        Ok(poly)
    }

    /// Regions whose closure contains `p`.
    pub fn locate(&self, p: &RationalVector) -> Result<Vec<RegionId>> {
        let mut out = Vec::new();
        for id in self.region_ids() {
            if self.region_halfspaces(id)?.contains(p) {
                out.push(id);
            }
        }
        Ok(out)
    }

    /// Structural consistency: ids in range, incidences symmetric, cells nondegenerate.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidComplex(msg));
        let nv = self.vertices.len();
        let nr = self.regions.len();
        for v in &self.vertices {
            if v.point.dim() != 2 {
                return bad(format!("vertex {} is not planar", v.point));
            }
        }
        for (i, e) in self.edges.iter().enumerate() {
            let id = EdgeId(i);
            match &e.geometry {
                EdgeGeometry::Segment { start, end } => {
                    if start.0 >= nv || end.0 >= nv || start == end {
                        return bad(format!("segment {id} has invalid endpoints"));
                    }
                }
                EdgeGeometry::Ray { start, direction } => {
                    if start.0 >= nv || direction.dim() != 2 || direction.is_zero() {
                        return bad(format!("ray {id} is malformed"));
                    }
                }
                EdgeGeometry::Line { point, direction } => {
                    if point.dim() != 2 || direction.dim() != 2 || direction.is_zero() {
                        return bad(format!("line {id} is malformed"));
                    }
                }
            }
            if e.regions.len() > 2 || e.regions.iter().any(|r| r.0 >= nr) {
                return bad(format!("edge {id} has invalid regions"));
            }
            if e.regions.len() == 2 && e.regions[0] == e.regions[1] {
                return bad(format!("edge {id} separates a region from itself"));
            }
            for r in &e.regions {
                if !self.regions[r.0].edges.contains(&id) {
                    return bad(format!("region {r} does not list its edge {id}"));
                }
            }
            match (self.domain, e.regions.len()) {
                (Domain::Plane, 2) | (Domain::Bounded, 1 | 2) => {}
                (_, 0) if nr == 0 => {}
                _ => return bad(format!("edge {id} has {} adjacent regions", e.regions.len())),
            }
            if let Some(f) = &e.facet {
                let mut pair = vec![f.from, f.to];
                pair.sort();
                let mut regs = e.regions.clone();
                regs.sort();
                if pair != regs {
                    return bad(format!("facet data of {id} names regions that do not meet there"));
                }
                if f.normal.dim() != 2 {
                    return bad(format!("facet normal of {id} is not planar"));
                }
            }
        }
        for (i, r) in self.regions.iter().enumerate() {
            let id = RegionId(i);
            if r.label.dim() != 2 || r.interior.dim() != 2 {
                return bad(format!("region {id} is not planar"));
            }
            if r.vertices.iter().any(|v| v.0 >= nv) {
                return bad(format!("region {id} names a missing vertex"));
            }
            for e in &r.edges {
                if e.0 >= self.edges.len() || !self.edges[e.0].regions.contains(&id) {
                    return bad(format!("region {id} lists edge {e} which does not border it"));
                }
            }
        }
        Ok(())
    }
}

pub(crate) use builder::{GeomSpec, SubdivisionBuilder};
