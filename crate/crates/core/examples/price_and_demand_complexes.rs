//! Builds the price and demand complexes and writes both as SVG files.
//!
//! Usage: `cargo run --example price_and_demand_complexes [OUT_DIR]`

use std::path::PathBuf;

use tropical_markets::complexes::{demand_complex, price_complex, EdgeGeometry};
use tropical_markets::render::{render_svg, RenderSpec};
use tropical_markets::valuation::Valuation;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let v = Valuation::from_ints(
        2,
        &[(&[0, 0], 0), (&[2, 0], 16), (&[1, 1], 24), (&[0, 2], 28), (&[2, 2], 34)],
    )?;
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| std::env::temp_dir().display().to_string()));
    for (name, s) in [("price", price_complex(&v)?), ("demand", demand_complex(&v)?)] {
        println!("{name} complex: {} regions, {} vertices, {} edges", s.regions.len(), s.vertices.len(), s.edges.len());
        for e in s.edge_ids() {
            let edge = s.edge(e);
            let shape = match &edge.geometry {
                EdgeGeometry::Segment { start, end } => format!("segment {} -> {}", s.vertex(*start).point, s.vertex(*end).point),
                EdgeGeometry::Ray { start, direction } => format!("ray from {} along {direction}", s.vertex(*start).point),
                EdgeGeometry::Line { point, direction } => format!("line through {point} along {direction}"),
            };
            let w = edge.facet.as_ref().map(|f| f.weight.to_string()).unwrap_or_default();
            println!("  {e}: {shape} weight {w}");
        }
        let path = dir.join(format!("{name}-complex.svg"));
        std::fs::write(&path, render_svg(&s, &RenderSpec::fit(&s)?)?)?;
        println!("  drawn to {}", path.display());
    }
    Ok(())
}
