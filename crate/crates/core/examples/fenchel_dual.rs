//! Concave dual of a five-bundle valuation, and which bundles are never demanded.

use tropical_markets::valuation::{dualize, Valuation};

fn main() -> tropical_markets::Result<()> {
    let v = Valuation::from_ints(
        2,
        &[(&[0, 0], 0), (&[2, 0], 16), (&[1, 1], 24), (&[0, 2], 28), (&[2, 2], 34)],
    )?;
    let u = dualize(&v)?;
    println!("U(q) = min of");
    for p in &u.pieces {
        println!("  {} + {}·q", p.intercept, p.slope);
    }
    for (q, value) in v.entries() {
        let hull = u.evaluate(&q.into())?;
        println!("bundle {q}: value {value}, concavified {hull}");
    }
    println!("never demanded: {:?}", v.never_demanded()?);
    Ok(())
}
