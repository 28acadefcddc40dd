//! Walrasian equilibrium existence test on two small economies.

use tropical_markets::equilibrium::{duality_test, economy_potential, Allocation, Certificate, Economy};
use tropical_markets::exactmath::{IntegerVector, RationalVector};
use tropical_markets::valuation::Valuation;

fn report(name: &str, e: &Economy) -> tropical_markets::Result<()> {
    let r = duality_test(e)?;
    println!("{name}: min V = {} at {} (unique {}), max U = {}, gap {}", r.min_v, r.argmin_prices, r.price_unique, r.max_u, r.gap);
    match &r.certificate {
        Certificate::Equilibrium { prices, allocation, .. } => {
            println!("  equilibrium at {prices}: {:?}", allocation.bundles)
        }
        Certificate::NonClearing { prices, demand_sets } => {
            println!("  no equilibrium; demand sets at {prices}:");
            for (i, d) in demand_sets.iter().enumerate() {
                println!("    consumer {}: {:?}", i + 1, d.bundles);
            }
        }
        Certificate::Indeterminate { size, .. } => println!("  certificate search capped at {size} selections"),
    }
    Ok(())
}

fn main() -> tropical_markets::Result<()> {
    let substitutes = Valuation::from_ints(2, &[(&[0, 0], 0), (&[1, 0], 30), (&[0, 1], 50), (&[1, 1], 60)])?;
    let complements = Valuation::from_ints(2, &[(&[0, 0], 0), (&[1, 0], 10), (&[0, 1], 30), (&[1, 1], 70)])?;
    let owner = IntegerVector::new(vec![1, 1]);
    let e = Economy::new(
        2,
        vec![substitutes, complements],
        owner.clone(),
        Some(vec![owner, IntegerVector::zeros(2)]),
    )?;
    report("substitutes and complements", &e)?;
    let a = Allocation::from_ints(&[&[0, 0], &[1, 1]]);
    println!(
        "  potential at (25,45) with the efficient allocation: {}",
        economy_potential(&e, &RationalVector::from_ints(&[25, 45]), &a)?
    );

    let single = Valuation::from_ints(
        2,
        &[(&[0, 0], 0), (&[2, 0], 16), (&[1, 1], 24), (&[0, 2], 28), (&[2, 2], 34)],
    )?;
    report("one consumer", &Economy::new(2, vec![single], IntegerVector::new(vec![2, 2]), None)?)?;
    Ok(())
}
