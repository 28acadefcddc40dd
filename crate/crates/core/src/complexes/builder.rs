//! Canonical assembly of subdivisions. Every construction route goes through
//! here, so two complexes describing the same cells compare equal.
//!
//! Canonical order: vertices lexicographically by point, regions by label,
//! edges by geometry (in vertex-id terms). Facet data is always derived from
//! the labels with `from` the smaller region id.

use super::{Domain, Edge, EdgeGeometry, EdgeId, FacetData, LabeledSubdivision, Region, RegionId, Vertex, VertexId};
use crate::error::{Error, Result};
use crate::exactmath::{primitive_direction_rational, IntegerVector, RationalVector};
use crate::polyhedra::{angle_cmp, cross, primitive, rot90};

#[derive(Debug, Clone)]
pub(crate) enum GeomSpec {
    Segment(RationalVector, RationalVector),
    /// Apex and direction.
    Ray(RationalVector, RationalVector),
    /// Any point and direction.
    Line(RationalVector, RationalVector),
}

pub(crate) struct SubdivisionBuilder {
    domain: Domain,
    labels: Vec<RationalVector>,
    edges: Vec<(GeomSpec, Vec<usize>)>,
    points: Vec<RationalVector>,
}

impl SubdivisionBuilder {
    pub fn new(domain: Domain) -> Self {
        SubdivisionBuilder {
            domain,
            labels: Vec::new(),
            edges: Vec::new(),
            points: Vec::new(),
        }
    }

    /// Registers a region and returns its provisional index.
    pub fn add_region(&mut self, label: RationalVector) -> usize {
        self.labels.push(label);
        self.labels.len() - 1
    }

    pub fn add_edge(&mut self, geom: GeomSpec, regions: Vec<usize>) {
        self.edges.push((geom, regions));
    }

    /// Registers a 0-cell that need not bound any edge.
    pub fn add_vertex(&mut self, point: RationalVector) {
        self.points.push(point);
    }

    pub fn build(self) -> Result<LabeledSubdivision> {
        let mut points = self.points.clone();
        for (g, _) in &self.edges {
            match g {
                GeomSpec::Segment(a, b) => {
                    points.push(a.clone());
                    points.push(b.clone());
                }
                GeomSpec::Ray(a, _) => points.push(a.clone()),
                GeomSpec::Line(..) => {}
            }
        }
        points.sort();
        points.dedup();
        let vid = |p: &RationalVector| VertexId(points.binary_search(p).expect("registered point"));

        let mut order: Vec<usize> = (0..self.labels.len()).collect();
        order.sort_by(|&a, &b| self.labels[a].cmp(&self.labels[b]));
        if order.windows(2).any(|w| self.labels[w[0]] == self.labels[w[1]]) {
            return Err(Error::InvalidComplex("two regions carry the same label".into()));
        }
        let mut rid = vec![RegionId(0); order.len()];
        for (new, &old) in order.iter().enumerate() {
            rid[old] = RegionId(new);
        }
        let labels: Vec<RationalVector> = order.iter().map(|&o| self.labels[o].clone()).collect();

        let mut edges: Vec<(EdgeGeometry, Vec<RegionId>)> = Vec::new();
        for (g, regs) in &self.edges {
            let geometry = match g {
                GeomSpec::Segment(a, b) => {
                    let (s, e) = (vid(a), vid(b));
                    if s == e {
                        return Err(Error::InvalidComplex(format!("degenerate segment at {a}")));
                    }
                    EdgeGeometry::Segment {
                        start: s.min(e),
                        end: s.max(e),
                    }
                }
                GeomSpec::Ray(a, d) => EdgeGeometry::Ray {
                    start: vid(a),
                    direction: primitive(d)?,
                },
                GeomSpec::Line(p, d) => {
                    let dir = primitive(d)?.lex_positive();
                    let a = rot90(&RationalVector::from(&dir));
                    let c = a.dot(p);
                    let point = a.scale(&(c / a.dot(&a)));
                    EdgeGeometry::Line { point, direction: dir }
                }
            };
            let mut regions: Vec<RegionId> = regs.iter().map(|&r| rid[r]).collect();
            regions.sort();
            regions.dedup();
            edges.push((geometry, regions));
        }
        edges.sort();
        edges.dedup();
        if edges.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidComplex("one edge assigned to different region pairs".into()));
        }

        let mut out_edges = Vec::with_capacity(edges.len());
        for (geometry, regions) in edges {
            let facet = if regions.len() == 2 {
                let (from, to) = (regions[0], regions[1]);
                let diff = labels[to.0].sub(&labels[from.0]);
                let (normal, weight) = primitive_direction_rational(&diff).map_err(|_| {
                    Error::InvalidComplex("adjacent regions carry equal labels".into())
                })?;
                Some(FacetData {
                    weight,
                    normal,
                    from,
                    to,
                })
            } else {
                None
            };
            out_edges.push(Edge {
                geometry,
                regions,
                facet,
            });
        }

        let mut s = LabeledSubdivision {
            domain: self.domain,
            vertices: points.into_iter().map(|point| Vertex { point }).collect(),
            edges: out_edges,
            regions: Vec::new(),
        };
        for i in 0..labels.len() {
            let region = assemble_region(&s, RegionId(i), &labels)?;
            s.regions.push(region);
        }
        Ok(s)
    }
}

fn assemble_region(s: &LabeledSubdivision, id: RegionId, labels: &[RationalVector]) -> Result<Region> {
    let label = labels[id.0].clone();
    let edges: Vec<EdgeId> = s.edge_ids().filter(|&e| s.edge(e).regions.contains(&id)).collect();
    let mut vertices: Vec<VertexId> = edges.iter().flat_map(|&e| s.edge_vertices(e)).collect();
    vertices.sort();
    vertices.dedup();
    let mut rays: Vec<IntegerVector> = Vec::new();
    let mut has_line = false;
    for &e in &edges {
        match &s.edge(e).geometry {
            EdgeGeometry::Ray { direction, .. } if !rays.contains(direction) => rays.push(direction.clone()),
            EdgeGeometry::Line { .. } => has_line = true,
            _ => {}
        }
    }
    let pt = |v: &VertexId| s.vertex(*v).point.clone();
    if rays.is_empty() {
        let c = RationalVector::mean(vertices.iter().map(|v| &s.vertex(*v).point));
        if let Some(c) = &c {
            vertices.sort_by(|a, b| angle_cmp(&pt(a).sub(c), &pt(b).sub(c)));
        }
    } else {
        let rv: Vec<RationalVector> = rays.iter().map(RationalVector::from).collect();
        let b = rv.iter().skip(1).fold(rv[0].clone(), |acc, r| acc.add(r));
        vertices.sort_by_key(|u| std::cmp::Reverse(cross(&b, &pt(u))));
        if rays.len() == 2 && !cross(&b, &rv[0]).is_positive() {
            rays.swap(0, 1);
        }
    }

    let interior = if rays.is_empty() && !has_line && vertices.len() >= 3 {
        RationalVector::mean(vertices.iter().map(|v| &s.vertex(*v).point)).expect("vertices")
    } else if edges.len() >= 2 {
        let mids: Vec<RationalVector> = edges.iter().map(|&e| s.edge_midpoint(e)).collect();
        RationalVector::mean(&mids).expect("edges")
    } else if let [e] = edges[..] {
        // half-plane: step off the line towards this region
        let m = s.edge_midpoint(e);
        match s.edge(e).regions.iter().find(|&&r| r != id) {
            Some(other) => m.add(&labels[other.0].sub(&label)),
            None => m,
        }
    } else {
        RationalVector::zeros(2)
    };
    Ok(Region {
        label,
        vertices,
        edges,
        rays,
        interior,
    })
}
