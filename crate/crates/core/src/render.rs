//! SVG drawings of planar subdivisions: edges clipped to a viewport, region
//! labels, facet-weight badges and vertex markers.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::complexes::{EdgeGeometry, LabeledSubdivision};
use crate::error::{Error, Result};
use crate::exactmath::{Rational, RationalVector};

const DIGITS: u32 = 6;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RenderSpec {
    /// Lower-left corner of the viewport.
    pub min: RationalVector,
    /// Upper-right corner of the viewport.
    pub max: RationalVector,
    /// Distance from the viewport edge at which rays and lines are cut.
    pub clip_margin: Rational,
    pub width_px: u32,
    pub show_labels: bool,
    pub show_weights: bool,
    pub vertex_radius_px: u32,
}

impl RenderSpec {
    /// Viewport around all vertices and region interior points, padded by a
    /// quarter of the larger extent (at least 2 units).
    pub fn fit(s: &LabeledSubdivision) -> Result<Self> {
        let pts: Vec<&RationalVector> = s
            .vertices
            .iter()
            .map(|v| &v.point)
            .chain(s.regions.iter().map(|r| &r.interior))
            .collect();
        if pts.iter().any(|p| p.dim() != 2) {
            return Err(Error::UnsupportedDimension {
                expected: 2,
                found: pts.iter().map(|p| p.dim()).find(|&d| d != 2).unwrap_or(0),
            });
        }
        let zero = RationalVector::zeros(2);
        let first = pts.first().copied().unwrap_or(&zero);
        let (mut lo, mut hi) = (first.clone(), first.clone());
        for p in &pts {
            for k in 0..2 {
                if p[k] < lo[k] {
                    lo.0[k] = p[k].clone();
                }
                if p[k] > hi[k] {
                    hi.0[k] = p[k].clone();
                }
            }
        }
        let extent = (&hi[0] - &lo[0]).max(&hi[1] - &lo[1]);
        let pad = (extent * Rational::frac(1, 4)).max(Rational::from(2));
        let pad_vec = RationalVector(vec![pad.clone(), pad.clone()]);
        Ok(RenderSpec {
            min: lo.sub(&pad_vec),
            max: hi.add(&pad_vec),
            clip_margin: Rational::zero(),
            width_px: 480,
            show_labels: true,
            show_weights: true,
            vertex_radius_px: 3,
        })
    }

    /// Checks that the viewport is a proper box strictly containing every vertex.
    pub fn validate(&self, s: &LabeledSubdivision) -> Result<()> {
        if self.min.dim() != 2 || self.max.dim() != 2 {
            return Err(Error::UnsupportedDimension {
                expected: 2,
                found: self.min.dim().max(self.max.dim()),
            });
        }
        if (0..2).any(|k| self.min[k] >= self.max[k]) || self.clip_margin.is_negative() {
            return Err(Error::DegenerateInput("empty viewport".into()));
        }
        for v in &s.vertices {
            if (0..2).any(|k| v.point[k] <= self.min[k] || v.point[k] >= self.max[k]) {
                return Err(Error::DegenerateInput(format!(
                    "vertex {} lies outside the viewport",
                    v.point
                )));
            }
        }
        Ok(())
    }

    fn scale(&self) -> Rational {
        Rational::from(self.width_px as i64) / (&self.max[0] - &self.min[0])
    }

    fn height_px(&self) -> Rational {
        (&self.max[1] - &self.min[1]) * self.scale()
    }

    fn to_screen(&self, p: &RationalVector) -> (String, String) {
        let s = self.scale();
        let x = (&p[0] - &self.min[0]) * &s;
        let y = (&self.max[1] - &p[1]) * &s;
        (x.to_decimal_string(DIGITS), y.to_decimal_string(DIGITS))
    }

    /// Largest `t ≥ 0` keeping `a + t·d` inside the clip box.
    fn exit_time(&self, a: &RationalVector, d: &RationalVector) -> Rational {
        let mut t: Option<Rational> = None;
        for k in 0..2 {
            let bound = if d[k].is_positive() {
                &self.max[k] - &self.clip_margin
            } else if d[k].is_negative() {
                &self.min[k] + &self.clip_margin
            } else {
                continue;
            };
            let tk = (bound - &a[k]) / &d[k];
            t = Some(match t {
                Some(cur) if cur < tk => cur,
                _ => tk,
            });
        }
        t.unwrap_or_else(Rational::zero).max(Rational::zero())
    }

    fn clamp(&self, p: &RationalVector) -> RationalVector {
        let inset = (&self.max[0] - &self.min[0]) * Rational::frac(1, 20);
        RationalVector(
            (0..2)
                .map(|k| {
                    let lo = &self.min[k] + &inset;
                    let hi = &self.max[k] - &inset;
                    p[k].clone().max(lo).min(hi)
                })
                .collect(),
        )
    }
}

/// Deterministic SVG text for a planar subdivision.
pub fn render_svg(s: &LabeledSubdivision, spec: &RenderSpec) -> Result<String> {
    spec.validate(s)?;
    let mut out = String::new();
    let w = spec.width_px;
    let h = spec.height_px().to_decimal_string(DIGITS);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(out, r##"<rect x="0" y="0" width="{w}" height="{h}" fill="#ffffff"/>"##);

    let mut pieces = Vec::new();
    let _ = writeln!(out, r##"<g stroke="#1f3b73" stroke-width="1.5" fill="none">"##);
    for e in s.edge_ids() {
        let (a, b) = match &s.edge(e).geometry {
            EdgeGeometry::Segment { start, end } => (s.vertex(*start).point.clone(), s.vertex(*end).point.clone()),
            EdgeGeometry::Ray { start, direction } => {
                let a = s.vertex(*start).point.clone();
                let d = RationalVector::from(direction);
                let t = spec.exit_time(&a, &d);
                let b = a.add_scaled(&t, &d);
                (a, b)
            }
            EdgeGeometry::Line { point, direction } => {
                let d = RationalVector::from(direction);
                let nd = -&d;
                let a = point.add_scaled(&spec.exit_time(point, &nd), &nd);
                let b = point.add_scaled(&spec.exit_time(point, &d), &d);
                (a, b)
            }
        };
        let ((x1, y1), (x2, y2)) = (spec.to_screen(&a), spec.to_screen(&b));
        let _ = writeln!(out, r#"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>"#);
        pieces.push((e, a, b));
    }
    let _ = writeln!(out, "</g>");

    if spec.show_weights {
        let _ = writeln!(out, r#"<g font-family="sans-serif" font-size="11" text-anchor="middle">"#);
        for (e, a, b) in &pieces {
            let Some(f) = &s.edge(*e).facet else { continue };
            if f.weight == Rational::one() {
                continue;
            }
            let mid = a.add(b).scale(&Rational::frac(1, 2));
            let (x, y) = spec.to_screen(&mid);
            let _ = writeln!(
                out,
                r##"<circle cx="{x}" cy="{y}" r="8" fill="#ffffff" stroke="#1f3b73"/><text x="{x}" y="{y}" dy="4">{}</text>"##,
                f.weight
            );
        }
        let _ = writeln!(out, "</g>");
    }

    let _ = writeln!(out, r##"<g fill="#1f3b73">"##);
    for v in &s.vertices {
        let (x, y) = spec.to_screen(&v.point);
        let _ = writeln!(out, r#"<circle cx="{x}" cy="{y}" r="{}"/>"#, spec.vertex_radius_px);
    }
    let _ = writeln!(out, "</g>");

    if spec.show_labels {
        let _ = writeln!(
            out,
            r##"<g font-family="sans-serif" font-size="12" fill="#7a1f1f" text-anchor="middle">"##
        );
        for r in &s.regions {
            let (x, y) = spec.to_screen(&spec.clamp(&r.interior));
            let _ = writeln!(out, r#"<text x="{x}" y="{y}">{}</text>"#, r.label);
        }
        let _ = writeln!(out, "</g>");
    }
    out.push_str("</svg>\n");
    Ok(out)
}
