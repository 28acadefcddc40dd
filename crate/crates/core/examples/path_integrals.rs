//! Exact line integrals of demand along closed and open price paths.

use tropical_markets::exactmath::{Rational, RationalVector};
use tropical_markets::potential::{path_integral, Polyline};
use tropical_markets::valuation::{indirect_utility, Valuation};

fn main() -> tropical_markets::Result<()> {
    let v = Valuation::from_ints(
        2,
        &[(&[0, 0], 0), (&[2, 0], 16), (&[1, 1], 24), (&[0, 2], 28), (&[2, 2], 34)],
    )?;
    let f = indirect_utility(&v);
    let p = |x: i64, y: i64| RationalVector::from_ints(&[x, y]);
    let square = Polyline::closed(vec![p(-5, -5), p(30, -5), p(30, 30), p(-5, 30)]);
    println!("around a square: {}", path_integral(&f, &square)?);
    let odd = Polyline::closed(vec![
        p(1, 9),
        RationalVector(vec![Rational::frac(17, 3), Rational::frac(-7, 2)]),
        p(12, 20),
    ]);
    println!("around a triangle: {}", path_integral(&f, &odd)?);
    for route in [vec![p(0, 0), p(8, 16)], vec![p(0, 0), p(20, -3), p(5, 30), p(8, 16)]] {
        let open = Polyline::open(route.clone());
        println!(
            "from {} to {}: {} (V difference {})",
            route[0],
            route[route.len() - 1],
            path_integral(&f, &open)?,
            f.evaluate(&route[0])? - f.evaluate(&route[route.len() - 1])?
        );
    }
    Ok(())
}
