//! Demand sets along a price path, and the prices at which a bundle is demanded.

use tropical_markets::exactmath::{IntegerVector, RationalVector};
use tropical_markets::polyhedra::polygon_from_halfspaces;
use tropical_markets::valuation::{demand, inverse_demand_region, Valuation};

fn main() -> tropical_markets::Result<()> {
    let v = Valuation::from_ints(
        2,
        &[(&[0, 0], 0), (&[2, 0], 16), (&[1, 1], 24), (&[0, 2], 28), (&[2, 2], 34)],
    )?;
    for (x, y) in [(0, 0), (8, 16), (9, 15), (10, 14), (11, 14), (20, 20)] {
        let p = RationalVector::from_ints(&[x, y]);
        let d = demand(&v, &p)?;
        let bundles: Vec<String> = d.bundles.iter().map(|q| q.to_string()).collect();
        println!("p = {p}: surplus {}, demand {{{}}}", d.value, bundles.join(", "));
    }
    let q = IntegerVector::new(vec![1, 1]);
    let cell = polygon_from_halfspaces(&inverse_demand_region(&v, &q)?)?;
    let corners: Vec<String> = cell.vertices.iter().map(|p| p.to_string()).collect();
    println!("{q} is demanded on the polygon with corners {}", corners.join(" "));
    Ok(())
}
