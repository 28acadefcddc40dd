//! The exact simplex solver on a small production problem with a tie.

use tropical_markets::exactmath::{Rational, RationalVector};
use tropical_markets::polyhedra::{reduce, simplex_solve, HPolyhedron, HalfSpace, LinearProgram, LpOutcome, Sense};

fn main() -> tropical_markets::Result<()> {
    let row = |a: i64, b: i64, c: i64| HalfSpace::new(RationalVector::from_ints(&[a, b]), Rational::from(c));
    let rows = vec![row(3, 2, 18)?, row(1, 2, 10)?, row(1, 0, 5)?, row(2, 2, 40)?];
    for (obj, label) in [([3, 2], "3x + 2y"), ([3, 3], "3x + 3y")] {
        let mut lp = LinearProgram::new(RationalVector::from_ints(&obj), Sense::Max).all_nonneg();
        lp.constraints = rows.clone();
        match simplex_solve(&lp)? {
            LpOutcome::Optimal(s) => println!("max {label} = {} at {} (unique {})", s.value, s.point, s.unique),
            other => println!("max {label}: {other:?}"),
        }
    }
    let third = Rational::frac(1, 3);
    println!("exact thirds: {} + {} = {}", third, third, &third + &third);
    let kept = reduce(&HPolyhedron::new(2, rows)?)?;
    println!("{} of 4 constraints are irredundant", kept.len());
    Ok(())
}
