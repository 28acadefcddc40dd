//! Balancing condition at every vertex, before and after tampering with a weight.

use tropical_markets::complexes::{check_balancing, check_normal_labeling, demand_complex, BalanceReport};
use tropical_markets::exactmath::Rational;
use tropical_markets::valuation::Valuation;

fn show(report: &BalanceReport) {
    for vb in &report.vertices {
        let terms: Vec<String> = vb.terms.iter().map(|t| format!("{}·{}", t.weight, t.normal)).collect();
        println!("  {} {:?}: [{}] residual {}", vb.point, vb.status, terms.join(", "), vb.residual);
    }
}

fn main() -> tropical_markets::Result<()> {
    let v = Valuation::from_ints(
        2,
        &[(&[0, 0], 0), (&[2, 0], 16), (&[1, 1], 24), (&[0, 2], 28), (&[2, 2], 34)],
    )?;
    let mut s = demand_complex(&v)?;
    let report = check_balancing(&s);
    println!("demand complex balanced: {}", report.balanced);
    show(&report);

    let e = s.edges.iter_mut().find(|e| e.regions.len() == 2).expect("an interior edge");
    let f = e.facet.as_mut().expect("facet data");
    f.weight = &f.weight + &Rational::one();
    let report = check_balancing(&s);
    println!("after raising one weight: balanced {}", report.balanced);
    show(&report);
    println!("still normally labeled: {}", check_normal_labeling(&s).normally_labeled);
    Ok(())
}
