mod common;

use std::collections::BTreeMap;

use common::*;
use proptest::prelude::*;
use tropical_markets::complexes::{check_balancing, demand_complex, dualize_complex, price_complex, EdgeGeometry};
use tropical_markets::equilibrium::{
    duality_test, economy_potential, min_aggregate_indirect, walrasian_check, Allocation, Economy,
};
use tropical_markets::exactmath::{primitive_direction, IntegerVector, Rational, RationalVector};
use tropical_markets::polyhedra::{polygon_from_halfspaces, upper_concave_hull, HPolyhedron, HalfSpace};
use tropical_markets::potential::{path_integral, Polyline};
use tropical_markets::valuation::{conjugate, demand, dualize, indirect_utility, inverse_demand_region, Valuation};
use tropical_markets::Error;

fn valuation_from(raw: Vec<(i64, i64, i64)>, zero_value: i64) -> Valuation {
    let mut map = BTreeMap::new();
    map.insert(iv(0, 0), r(zero_value));
    for (x, y, u) in raw {
        map.entry(iv(x, y)).or_insert(r(u));
    }
    Valuation::new(2, map).unwrap()
}

prop_compose! {
    fn valuation(side: i64, max_extra: usize)(
        raw in prop::collection::vec((0..=side, 0..=side, 0i64..=50), 0..=max_extra),
        z in 0i64..=50,
    ) -> Valuation {
        valuation_from(raw, z)
    }
}

prop_compose! {
    fn rational(lo: i64, hi: i64)(d in 1i64..=4)(n in lo * d..=hi * d, d in Just(d)) -> Rational {
        Rational::frac(n, d)
    }
}

prop_compose! {
    fn point(lo: i64, hi: i64)(x in rational(lo, hi), y in rational(lo, hi)) -> RationalVector {
        RationalVector(vec![x, y])
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn primitive_direction_decomposes(x in -500i64..500, y in -500i64..500) {
        prop_assume!(x != 0 || y != 0);
        let v = iv(x, y);
        let (n, w) = primitive_direction(&v).unwrap();
        prop_assert_eq!(gcd(n[0], n[1]), 1);
        prop_assert_eq!(iv(n[0] * w as i64, n[1] * w as i64), v);
    }

    #[test]
    fn rational_field_laws(a in rational(-50, 50), b in rational(-50, 50), c in rational(-50, 50)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn hull_majorizes_exactly_off_hull(v in valuation(4, 7)) {
        let pts = points(&v);
        let h = upper_concave_hull(&pts).unwrap();
        for (i, (q, u)) in pts.iter().enumerate() {
            let x = RationalVector::from(q);
            let m = h.pieces.iter().map(|p| p.eval(&x)).min().unwrap();
            prop_assert!(&m >= u);
            prop_assert_eq!(&m == u, h.hull_indices.contains(&i));
        }
    }

    #[test]
    fn polygon_vertices_are_tight(
        rows in prop::collection::vec((-5i64..=5, -5i64..=5, -10i64..=10), 3..7)
    ) {
        let hs: Vec<HalfSpace> = rows
            .into_iter()
            .filter(|(a, b, _)| *a != 0 || *b != 0)
            .map(|(a, b, c)| HalfSpace::new(pv(a, b), r(c)).unwrap())
            .collect();
        let poly = HPolyhedron::new(2, hs.clone()).unwrap();
        prop_assume!(poly.is_feasible().unwrap());
        let g = polygon_from_halfspaces(&poly).unwrap();
        if g.lineality.is_empty() {
            for x in &g.vertices {
                prop_assert!(poly.contains(x));
                let tight = hs.iter().filter(|h| h.is_tight(x)).count();
                prop_assert!(tight >= 2);
            }
        }
    }

    #[test]
    fn biconjugation(v in valuation(4, 7)) {
        let u = dualize(&v).unwrap();
        let hull = v.hull_restriction().unwrap();
        prop_assert_eq!(&dualize(&hull).unwrap().pieces, &u.pieces);
        prop_assert_eq!(&conjugate(&indirect_utility(&hull)).unwrap().pieces, &u.pieces);
    }

    #[test]
    fn inverse_demand_membership(v in valuation(4, 7), p in point(-10, 60)) {
        let d = demand(&v, &p).unwrap();
        for q in v.bundles() {
            let inside = match inverse_demand_region(&v, q) {
                Ok(h) => h.contains(&p),
                Err(Error::EmptyCell) => false,
                Err(e) => panic!("{e}"),
            };
            prop_assert_eq!(d.contains(q), inside);
        }
    }

    #[test]
    fn young_fenchel(v in valuation(4, 7), p in point(-10, 60)) {
        let u = dualize(&v).unwrap();
        let vp = indirect(&v, &p);
        for q in demand(&v, &p).unwrap().bundles {
            prop_assert_eq!(u.evaluate(&RationalVector::from(&q)).unwrap(), &vp + &dot(&p, &q));
        }
    }

    #[test]
    fn demand_is_monotone(v in valuation(4, 7), p1 in point(-10, 60), p2 in point(-10, 60)) {
        let dp = p2.sub(&p1);
        for q1 in demand(&v, &p1).unwrap().bundles {
            for q2 in demand(&v, &p2).unwrap().bundles {
                prop_assert!(!dot(&dp, &q2.sub(&q1)).is_positive());
            }
        }
    }

    #[test]
    fn price_complex_tiles_the_plane(v in valuation(4, 7), p in point(-10, 60)) {
        let s = price_complex(&v).unwrap();
        let regions = s.locate(&p).unwrap();
        prop_assert!(!regions.is_empty());
        if regions.len() > 1 {
            // several regions only on a facet
            prop_assert!(demand(&v, &p).unwrap().bundles.len() > 1);
        }
        for k in &regions {
            prop_assert!(demand(&v, &p).unwrap().contains(
                &s.region(*k).label.to_integer_vector().unwrap()
            ));
        }
    }

    #[test]
    fn both_complexes_balance(v in valuation(4, 7)) {
        prop_assert!(check_balancing(&price_complex(&v).unwrap()).balanced);
        prop_assert!(check_balancing(&demand_complex(&v).unwrap()).balanced);
    }

    #[test]
    fn dual_edges_are_orthogonal_with_matching_weights(v in valuation(4, 7)) {
        let price = price_complex(&v).unwrap();
        let dem = demand_complex(&v).unwrap();
        prop_assert_eq!(&dualize_complex(&price).unwrap(), &dem);
        for e in price.edge_ids() {
            let edge = price.edge(e);
            let (a, b) = (edge.regions[0], edge.regions[1]);
            let jump = price.region(b).label.sub(&price.region(a).label);
            prop_assert!(price.edge_direction(e).dot(&jump).is_zero());
            let j = jump.to_integer_vector().unwrap();
            prop_assert_eq!(&edge.facet.as_ref().unwrap().weight, &r(gcd(j[0], j[1])));
        }
        for e in dem.edge_ids() {
            let edge = dem.edge(e);
            if let (EdgeGeometry::Segment { .. }, [a, b]) = (&edge.geometry, &edge.regions[..]) {
                let jump = dem.region(*b).label.sub(&dem.region(*a).label);
                prop_assert!(dem.edge_direction(e).dot(&jump).is_zero());
            }
        }
    }

    #[test]
    fn path_independence(
        v in valuation(4, 7),
        a in point(-20, 40),
        b in point(-20, 40),
        mid1 in prop::collection::vec(point(-20, 40), 0..4),
        mid2 in prop::collection::vec(point(-20, 40), 0..4),
    ) {
        let f = indirect_utility(&v);
        let route = |mid: &[RationalVector]| {
            let mut w = vec![a.clone()];
            w.extend(mid.iter().cloned());
            w.push(b.clone());
            path_integral(&f, &Polyline::open(w)).unwrap()
        };
        let (i1, i2) = (route(&mid1), route(&mid2));
        prop_assert_eq!(&i1, &i2);
        prop_assert_eq!(i1, indirect(&v, &a) - indirect(&v, &b));
    }

    #[test]
    fn concave_potential_loops_vanish(v in valuation(4, 7), ts in prop::collection::vec((0i64..=8, 0i64..=8), 2..6)) {
        // waypoints drawn inside the bundle hull as convex combinations
        let u = dualize(&v).unwrap();
        let bundles: Vec<RationalVector> = v.bundles().map(RationalVector::from).collect();
        let pts: Vec<RationalVector> = ts
            .iter()
            .map(|(i, j)| {
                let a = &bundles[(*i as usize) % bundles.len()];
                let b = &bundles[(*j as usize) % bundles.len()];
                a.add(b).scale(&Rational::frac(1, 2))
            })
            .collect();
        prop_assert!(path_integral(&u, &Polyline::closed(pts)).unwrap().is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn weak_duality_three_consumers(
        a in valuation(2, 5),
        b in valuation(2, 5),
        c in valuation(2, 5),
        wx in 0i64..=3,
        wy in 0i64..=3,
        p in point(0, 40),
    ) {
        let omega = iv(wx, wy);
        let consumers = vec![a, b, c];
        let e = Economy::new(2, consumers.clone(), omega.clone(), None).unwrap();
        let rep = duality_test(&e).unwrap();
        prop_assert!(!rep.gap.is_negative());
        // LP against the arrangement-vertex enumeration
        let (vmin, _) = min_indirect_oracle(&consumers, &omega);
        prop_assert_eq!(&min_aggregate_indirect(&e).unwrap().value, &vmin);
        for alloc in &rep.argmax_allocations {
            prop_assert!(!economy_potential(&e, &p, alloc).unwrap().is_positive());
        }
        // three-way equivalence: gap, certificate, and brute-force clearing search
        let mut found = false;
        let prices = rep.argmin_prices.clone();
        let sets: Vec<Vec<IntegerVector>> = consumers.iter().map(|v| demanded(v, &prices).into_iter().collect()).collect();
        for q0 in &sets[0] {
            for q1 in &sets[1] {
                for q2 in &sets[2] {
                    let a = Allocation::new(vec![q0.clone(), q1.clone(), q2.clone()]);
                    if !a.total(2).le(&omega) {
                        continue;
                    }
                    found |= walrasian_check(&e, &prices, &a).unwrap().equilibrium;
                }
            }
        }
        prop_assert_eq!(found, rep.exists);
        prop_assert_eq!(rep.exists, rep.gap.is_zero());
    }

    #[test]
    fn concave_monotone_grid_economies_clear(
        a in 1i64..=3,
        b in 1i64..=3,
        aff in prop::collection::vec((0i64..=9, 0i64..=9, 0i64..=20), 1..4),
        wx in 0i64..=3,
        wy in 0i64..=3,
    ) {
        // values of a nondecreasing concave function on the whole grid equal their concavification
        let mut entries = Vec::new();
        for x in 0..=a {
            for y in 0..=b {
                let u = aff.iter().map(|(s, t, c)| s * x + t * y + c).min().unwrap();
                entries.push((iv(x, y), r(u)));
            }
        }
        let v = Valuation::new(2, entries).unwrap();
        prop_assert!(v.never_demanded().unwrap().is_empty());
        let omega = iv(wx.min(a), wy.min(b));
        let e = Economy::new(2, vec![v], omega, None).unwrap();
        let rep = duality_test(&e).unwrap();
        prop_assert!(rep.gap.is_zero());
        prop_assert!(rep.exists);
    }
}
