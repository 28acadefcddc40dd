//! Cyclic monotonicity of sampled demand, and a sample that violates it.

use tropical_markets::exactmath::RationalVector;
use tropical_markets::potential::{check_cyclic_monotonicity, CorrespondenceSample, Direction, SamplePair};
use tropical_markets::valuation::{demand, Valuation};

fn main() -> tropical_markets::Result<()> {
    let v = Valuation::from_ints(
        2,
        &[(&[0, 0], 0), (&[2, 0], 16), (&[1, 1], 24), (&[0, 2], 28), (&[2, 2], 34)],
    )?;
    let mut pairs = Vec::new();
    for x in (0..24).step_by(4) {
        for y in (0..24).step_by(4) {
            let p = RationalVector::from_ints(&[x, y]);
            for q in demand(&v, &p)?.bundles {
                pairs.push(SamplePair { p: p.clone(), q: (&q).into() });
            }
        }
    }
    let n = pairs.len();
    let report = check_cyclic_monotonicity(&CorrespondenceSample::new(pairs), Direction::Demand)?;
    println!("{n} demand samples: monotone {}", report.monotone);

    let rising = CorrespondenceSample::from_ints(&[(&[0], &[0]), (&[1], &[1])]);
    let report = check_cyclic_monotonicity(&rising, Direction::Demand)?;
    println!(
        "demand rising with its price: monotone {}, cycle {:?} sums to {}",
        report.monotone,
        report.witness.unwrap_or_default(),
        report.cycle_sum.map(|s| s.to_string()).unwrap_or_default()
    );
    Ok(())
}
