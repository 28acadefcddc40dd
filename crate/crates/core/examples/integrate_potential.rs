//! Recovers the indirect utility from the price complex and the dual from the demand complex.

use tropical_markets::complexes::{demand_complex, price_complex};
use tropical_markets::exactmath::{Rational, RationalVector};
use tropical_markets::potential::integrate_subdivision;
use tropical_markets::valuation::{dualize, indirect_utility, Valuation};

fn main() -> tropical_markets::Result<()> {
    let v = Valuation::from_ints(
        2,
        &[(&[0, 0], 0), (&[2, 0], 16), (&[1, 1], 24), (&[0, 2], 28), (&[2, 2], 34)],
    )?;
    let price = price_complex(&v)?;
    let root = price.region_by_label(&RationalVector::zeros(2)).expect("zero bundle region");
    let vf = integrate_subdivision(&price, (root, Rational::zero()))?;
    println!("V(p) = max of");
    for p in &vf.pieces {
        println!("  {} + {}·p", p.intercept, p.slope);
    }
    println!("matches indirect utility: {}", vf == indirect_utility(&v).essential()?);

    let dem = demand_complex(&v)?;
    let root = dem.region_by_label(&RationalVector::from_ints(&[8, 16])).expect("region");
    let uf = integrate_subdivision(&dem, (root, Rational::zero()))?;
    println!("U(q) = min of");
    for p in &uf.pieces {
        println!("  {} + {}·q", p.intercept, p.slope);
    }
    println!("matches the dual: {}", uf == dualize(&v)?);
    Ok(())
}
