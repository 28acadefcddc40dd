//! Simplex results against brute-force vertex enumeration on small bounded LPs.

use std::collections::BTreeSet;

use itertools::Itertools;
use proptest::prelude::*;
use tropical_markets::exactmath::{Rational, RationalVector};
use tropical_markets::polyhedra::{simplex_solve, HalfSpace, LinearProgram, LpOutcome, Sense};

/// Unique solution of a square system by Gauss-Jordan elimination.
#[allow(clippy::needless_range_loop)]
fn solve_square(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = a[col][col].recip().unwrap();
        for k in 0..n {
            a[col][k] = &a[col][k] * &inv;
        }
        b[col] = &b[col] * &inv;
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for k in 0..n {
                    let t = &f * &a[col][k];
                    a[r][k] -= &t;
                }
                let t = &f * &b[col];
                b[r] -= &t;
            }
        }
    }
    Some(b)
}

fn brute_force(rows: &[HalfSpace], obj: &RationalVector, sense: Sense) -> Option<(Rational, BTreeSet<RationalVector>)> {
    let n = obj.dim();
    let mut best: Option<(Rational, BTreeSet<RationalVector>)> = None;
    for subset in (0..rows.len()).combinations(n) {
        let a = subset.iter().map(|&i| rows[i].normal.0.clone()).collect();
        let b = subset.iter().map(|&i| rows[i].offset.clone()).collect();
        let Some(x) = solve_square(a, b) else { continue };
        let x = RationalVector(x);
        if !rows.iter().all(|h| h.contains(&x)) {
            continue;
        }
        let val = obj.dot(&x);
        let better = |v: &Rational, b: &Rational| match sense {
            Sense::Max => v > b,
            Sense::Min => v < b,
        };
        match &mut best {
            Some((bv, set)) if *bv == val => {
                set.insert(x);
            }
            Some((bv, _)) if !better(&val, bv) => {}
            _ => best = Some((val, [x].into())),
        }
    }
    best
}

fn unit(n: usize, k: usize, s: i64) -> RationalVector {
    RationalVector((0..n).map(|i| Rational::from(if i == k { s } else { 0 })).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn simplex_matches_vertex_enumeration(
        n in 2usize..=3,
        raw in prop::collection::vec((prop::collection::vec(-4i64..=4, 3), -8i64..=12), 1..6),
        c in prop::collection::vec(-5i64..=5, 3),
        maximize in any::<bool>(),
        nonneg in any::<bool>(),
    ) {
        let sense = if maximize { Sense::Max } else { Sense::Min };
        let obj = RationalVector(c[..n].iter().map(|&x| Rational::from(x)).collect());
        let mut lp = LinearProgram::new(obj.clone(), sense);
        let mut rows = Vec::new();
        for (a, b) in raw {
            let normal = RationalVector(a[..n].iter().map(|&x| Rational::from(x)).collect());
            if normal.is_zero() {
                continue;
            }
            rows.push(HalfSpace { normal, offset: Rational::from(b) });
        }
        // a box keeps every instance bounded
        for k in 0..n {
            rows.push(HalfSpace { normal: unit(n, k, 1), offset: Rational::from(20) });
            rows.push(HalfSpace { normal: unit(n, k, -1), offset: Rational::from(20) });
        }
        lp.constraints = rows.clone();
        if nonneg {
            lp = lp.all_nonneg();
            for k in 0..n {
                rows.push(HalfSpace { normal: unit(n, k, -1), offset: Rational::zero() });
            }
        }
        let got = simplex_solve(&lp).unwrap();
        match (got, brute_force(&rows, &obj, sense)) {
            (LpOutcome::Infeasible, None) => {}
            (LpOutcome::Optimal(s), Some((val, argset))) => {
                prop_assert_eq!(&s.value, &val);
                prop_assert!(rows.iter().all(|h| h.contains(&s.point)));
                prop_assert_eq!(obj.dot(&s.point), val);
                prop_assert_eq!(s.unique, argset.len() == 1);
            }
            (g, b) => prop_assert!(false, "simplex {:?} vs enumeration {:?}", g, b),
        }
    }
}

#[test]
fn unbounded_and_equality_programs() {
    let x = |a: i64, b: i64| RationalVector::from_ints(&[a, b]);
    let lp = LinearProgram::new(x(1, 1), Sense::Max).all_nonneg();
    assert_eq!(simplex_solve(&lp).unwrap(), LpOutcome::Unbounded);
    let lp = LinearProgram::new(x(1, 2), Sense::Min)
        .all_nonneg()
        .with_equality(x(1, 1), Rational::from(3));
    let s = simplex_solve(&lp).unwrap().optimal().unwrap();
    assert_eq!((s.value, s.point, s.unique), (Rational::from(3), x(3, 0), true));
}
