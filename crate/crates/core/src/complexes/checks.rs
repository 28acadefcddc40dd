use serde::{Deserialize, Serialize};

use super::{EdgeGeometry, EdgeId, LabeledSubdivision, VertexId};
use crate::exactmath::{primitive_direction_rational, IntegerVector, Rational, RationalVector};
use crate::polyhedra::angle_cmp;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelingViolation {
    pub edge: EdgeId,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelingReport {
    pub normally_labeled: bool,
    pub violations: Vec<LabelingViolation>,
}

/// Checks every facet: `label(to) - label(from) = weight * normal` with a
/// positive weight and a primitive normal orthogonal to the edge, oriented so
/// that it points from the `to` side towards the `from` side (labels decrease
/// in the direction of the normal's travel across the facet).
pub fn check_normal_labeling(s: &LabeledSubdivision) -> LabelingReport {
    let mut violations = Vec::new();
    for e in s.edge_ids() {
        if let Some(reason) = facet_problem(s, e) {
            violations.push(LabelingViolation { edge: e, reason });
        }
    }
    LabelingReport {
        normally_labeled: violations.is_empty(),
        violations,
    }
}

fn facet_problem(s: &LabeledSubdivision, e: EdgeId) -> Option<String> {
    let edge = s.edge(e);
    let Some(f) = &edge.facet else {
        return (edge.regions.len() == 2).then(|| "interior edge without facet data".to_string());
    };
    let mut pair = vec![f.from, f.to];
    pair.sort();
    let mut regs = edge.regions.clone();
    regs.sort();
    if pair != regs {
        return Some("facet regions do not match the edge's regions".into());
    }
    let (from, to) = (s.regions.get(f.from.0)?, s.regions.get(f.to.0)?);
    if !f.weight.is_positive() {
        return Some(format!("weight {} is not positive", f.weight));
    }
    if !f.normal.is_primitive() {
        return Some(format!("normal {} is not primitive", f.normal));
    }
    let n = RationalVector::from(&f.normal);
    let jump = to.label.sub(&from.label);
    if jump != n.scale(&f.weight) {
        return Some(format!(
            "label jump {jump} differs from weight {} times normal {}",
            f.weight, f.normal
        ));
    }
    if !n.dot(&s.edge_direction(e)).is_zero() {
        return Some(format!("normal {} is not orthogonal to the edge", f.normal));
    }
    if !n.dot(&from.interior.sub(&to.interior)).is_positive() {
        return Some(format!("normal {} has the wrong orientation", f.normal));
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BalanceStatus {
    Balanced,
    Unbalanced,
    /// Boundary vertex of a bounded complex, or a vertex lacking facet data.
    NotChecked,
}

/// One incident facet: `weight * normal`, where `normal` is the outgoing
/// primitive edge direction turned a quarter counterclockwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalanceTerm {
    pub edge: EdgeId,
    pub direction: IntegerVector,
    pub weight: Rational,
    pub normal: IntegerVector,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexBalance {
    pub vertex: VertexId,
    pub point: RationalVector,
    pub status: BalanceStatus,
    /// Counterclockwise from the positive first axis.
    pub terms: Vec<BalanceTerm>,
    pub residual: RationalVector,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalanceReport {
    pub balanced: bool,
    pub vertices: Vec<VertexBalance>,
}

impl BalanceReport {
    pub fn at(&self, point: &RationalVector) -> Option<&VertexBalance> {
        self.vertices.iter().find(|v| v.point == *point)
    }
}

/// Weighted-normal sums at every vertex. Rays count at their apex only.
pub fn check_balancing(s: &LabeledSubdivision) -> BalanceReport {
    let mut vertices = Vec::new();
    for v in s.vertex_ids() {
        let point = s.vertex(v).point.clone();
        let mut terms = Vec::new();
        let mut complete = true;
        for e in s.incident_edges(v) {
            let edge = s.edge(e);
            let out = match &edge.geometry {
                EdgeGeometry::Segment { start, end } => {
                    let other = if *start == v { *end } else { *start };
                    s.vertex(other).point.sub(&point)
                }
                EdgeGeometry::Ray { direction, .. } => RationalVector::from(direction),
                EdgeGeometry::Line { .. } => continue,
            };
            let Ok((direction, _)) = primitive_direction_rational(&out) else {
                complete = false;
                continue;
            };
            match &edge.facet {
                Some(f) if edge.regions.len() == 2 => terms.push(BalanceTerm {
                    edge: e,
                    normal: direction.rot90(),
                    direction,
                    weight: f.weight.clone(),
                }),
                _ => complete = false,
            }
        }
        terms.sort_by(|a, b| angle_cmp(&RationalVector::from(&a.direction), &RationalVector::from(&b.direction)));
        let residual = terms.iter().fold(RationalVector::zeros(2), |acc, t| {
            acc.add_scaled(&t.weight, &RationalVector::from(&t.normal))
        });
        let status = if !complete || terms.is_empty() {
            BalanceStatus::NotChecked
        } else if residual.is_zero() {
            BalanceStatus::Balanced
        } else {
            BalanceStatus::Unbalanced
        };
        vertices.push(VertexBalance {
            vertex: v,
            point,
            status,
            terms,
            residual,
        });
    }
    BalanceReport {
        balanced: vertices.iter().all(|v| v.status != BalanceStatus::Unbalanced),
        vertices,
    }
}
