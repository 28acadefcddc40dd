//! Finite valuations over integer bundles, their indirect utility, demand
//! correspondence and discrete Fenchel dual.

mod function;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

pub use function::{Convention, PolyhedralFunction};

use crate::error::{Error, Result};
use crate::exactmath::{IntegerVector, Rational, RationalVector};
use crate::polyhedra::{
    convex_hull_hrep, reduce, upper_concave_hull, AffinePiece, HPolyhedron, HalfSpace, UpperHull,
};

/// Bundle-to-value map with a componentwise-minimal bundle (the outside option).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ValuationDoc", into = "ValuationDoc")]
pub struct Valuation {
    goods: usize,
    entries: BTreeMap<IntegerVector, Rational>,
}

#[derive(Serialize, Deserialize)]
struct ValuationDoc {
    goods: usize,
    entries: Vec<EntryDoc>,
}

#[derive(Serialize, Deserialize)]
struct EntryDoc {
    bundle: IntegerVector,
    value: Rational,
}

impl TryFrom<ValuationDoc> for Valuation {
    type Error = Error;
    fn try_from(doc: ValuationDoc) -> Result<Self> {
        Valuation::new(doc.goods, doc.entries.into_iter().map(|e| (e.bundle, e.value)))
    }
}

impl From<Valuation> for ValuationDoc {
    fn from(v: Valuation) -> Self {
        ValuationDoc {
            goods: v.goods,
            entries: v
                .entries
                .into_iter()
                .map(|(bundle, value)| EntryDoc { bundle, value })
                .collect(),
        }
    }
}

impl Valuation {
    pub fn new(
        goods: usize,
        entries: impl IntoIterator<Item = (IntegerVector, Rational)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (q, v) in entries {
            if q.dim() != goods {
                return Err(Error::InvalidValuation(format!(
                    "bundle {q} has {} coordinates, expected {goods}",
                    q.dim()
                )));
            }
            if q.coords().iter().any(|&c| c < 0) {
                return Err(Error::InvalidValuation(format!("bundle {q} has a negative coordinate")));
            }
            if map.contains_key(&q) {
                return Err(Error::DuplicateBundle(q));
            }
            map.insert(q, v);
        }
        let Some(first) = map.keys().next() else {
            return Err(Error::InvalidValuation("no bundles".into()));
        };
        if !map.keys().all(|q| first.le(q)) {
            return Err(Error::InvalidValuation(
                "no bundle is componentwise below all others (add the zero bundle)".into(),
            ));
        }
        Ok(Valuation {
            goods,
            entries: map,
        })
    }

    /// Convenience constructor from integer data.
    pub fn from_ints(goods: usize, data: &[(&[i64], i64)]) -> Result<Self> {
        Valuation::new(
            goods,
            data.iter()
                .map(|(q, v)| (IntegerVector::new(q.to_vec()), Rational::from(*v))),
        )
    }

    pub fn goods(&self) -> usize {
        self.goods
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in lexicographic bundle order.
    pub fn entries(&self) -> impl Iterator<Item = (&IntegerVector, &Rational)> {
        self.entries.iter()
    }

    pub fn bundles(&self) -> impl Iterator<Item = &IntegerVector> {
        self.entries.keys()
    }

    pub fn value(&self, q: &IntegerVector) -> Option<&Rational> {
        self.entries.get(q)
    }

    pub fn contains(&self, q: &IntegerVector) -> bool {
        self.entries.contains_key(q)
    }

    /// The componentwise-minimal bundle.
    pub fn minimal_bundle(&self) -> &IntegerVector {
        self.entries.keys().next().expect("nonempty")
    }

    /// `U_q - p·q`.
    pub fn surplus(&self, q: &IntegerVector, p: &RationalVector) -> Result<Rational> {
        let u = self.value(q).ok_or_else(|| Error::UnknownBundle(q.clone()))?;
        Ok(u - p.dot_int(q))
    }

    pub fn hull(&self) -> Result<UpperHull> {
        let pts: Vec<(IntegerVector, Rational)> =
            self.entries.iter().map(|(q, v)| (q.clone(), v.clone())).collect();
        upper_concave_hull(&pts)
    }

    /// Bundles lying strictly below the concave majorant; these are never demanded.
    pub fn never_demanded(&self) -> Result<Vec<IntegerVector>> {
        let h = self.hull()?;
        Ok(self
            .entries
            .keys()
            .enumerate()
            .filter(|(i, _)| !h.hull_indices.contains(i))
            .map(|(_, q)| q.clone())
            .collect())
    }

    /// Restriction to the bundles on the concave majorant.
    pub fn hull_restriction(&self) -> Result<Valuation> {
        let h = self.hull()?;
        let entries = self
            .entries
            .iter()
            .enumerate()
            .filter(|(i, _)| h.hull_indices.contains(i))
            .map(|(_, (q, v))| (q.clone(), v.clone()));
        Valuation::new(self.goods, entries)
    }

    fn check_price(&self, p: &RationalVector) -> Result<()> {
        if p.dim() != self.goods {
            return Err(Error::UnsupportedDimension {
                expected: self.goods,
                found: p.dim(),
            });
        }
        Ok(())
    }
}

/// Full argmax set of `U_q - p·q` with the common optimal surplus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DemandSet {
    pub bundles: BTreeSet<IntegerVector>,
    pub value: Rational,
}

impl DemandSet {
    pub fn contains(&self, q: &IntegerVector) -> bool {
        self.bundles.contains(q)
    }

    pub fn is_single_valued(&self) -> bool {
        self.bundles.len() == 1
    }
}

/// `V(p) = max_q (U_q - p·q)` as a max of one affine piece per bundle.
pub fn indirect_utility(v: &Valuation) -> PolyhedralFunction {
    let pieces = v
        .entries()
        .map(|(q, u)| AffinePiece::new(-&RationalVector::from(q), u.clone()))
        .collect();
    PolyhedralFunction::new(Convention::Max, pieces, HPolyhedron::whole_space(v.goods()))
        .expect("valuations are nonempty")
}

pub fn demand(v: &Valuation, p: &RationalVector) -> Result<DemandSet> {
    v.check_price(p)?;
    let surpluses: Vec<(&IntegerVector, Rational)> =
        v.entries().map(|(q, u)| (q, u - p.dot_int(q))).collect();
    let best = surpluses.iter().map(|(_, s)| s).max().expect("nonempty").clone();
    Ok(DemandSet {
        bundles: surpluses
            .into_iter()
            .filter(|(_, s)| *s == best)
            .map(|(q, _)| q.clone())
            .collect(),
        value: best,
    })
}

/// Concave dual `U(q) = min_p V(p) + p·q` on `co(bundles)`.
pub fn dualize(v: &Valuation) -> Result<PolyhedralFunction> {
    let h = v.hull()?;
    let pts: Vec<RationalVector> = v.bundles().map(RationalVector::from).collect();
    let domain = convex_hull_hrep(&pts)?;
    PolyhedralFunction::new(Convention::Min, h.pieces, domain)
}

/// Fenchel dual of a convex max-of-affine function `max(-q_k·p + c_k)` with
/// integral slopes: the concave majorant of the points `(q_k, c_k)`.
pub fn conjugate(f: &PolyhedralFunction) -> Result<PolyhedralFunction> {
    if f.convention != Convention::Max {
        return Err(Error::DegenerateInput("conjugate expects a max-of-affine function".into()));
    }
    let mut entries = Vec::new();
    for p in &f.pieces {
        let q = (-&p.slope)
            .to_integer_vector()
            .ok_or_else(|| Error::DegenerateInput(format!("non-integral slope {}", p.slope)))?;
        entries.push((q, p.intercept.clone()));
    }
    let n = f.dim();
    let pts: Vec<(IntegerVector, Rational)> = entries.clone();
    let h = upper_concave_hull(&pts)?;
    let coords: Vec<RationalVector> = entries.iter().map(|(q, _)| RationalVector::from(q)).collect();
    let domain = convex_hull_hrep(&coords)?;
    debug_assert_eq!(domain.dim, n);
    PolyhedralFunction::new(Convention::Min, h.pieces, domain)
}

/// Prices at which `q` is demanded, intersected with `ℝⁿ`.
pub fn inverse_demand_region(v: &Valuation, q: &IntegerVector) -> Result<HPolyhedron> {
    inverse_demand_region_in(v, q, &HPolyhedron::whole_space(v.goods()))
}

/// Prices in `domain` at which `q` is demanded, as a reduced H-description.
pub fn inverse_demand_region_in(
    v: &Valuation,
    q: &IntegerVector,
    domain: &HPolyhedron,
) -> Result<HPolyhedron> {
    let uq = v.value(q).ok_or_else(|| Error::UnknownBundle(q.clone()))?;
    let mut region = domain.clone();
    for (r, ur) in v.entries() {
        if r == q {
            continue;
        }
        // U_r - p·r <= U_q - p·q
        region.push(HalfSpace {
            normal: RationalVector::from(&q.sub(r)),
            offset: uq - ur,
        });
    }
    if !region.is_feasible()? {
        return Err(Error::EmptyCell);
    }
    reduce(&region)
}

/// Monotonicity self-test: `(q2 - q1)·(p2 - p1) <= 0` for every pair of
/// samples and every pair of demanded bundles.
pub fn check_monotone(v: &Valuation, samples: &[RationalVector]) -> Result<bool> {
    let sets = samples
        .iter()
        .map(|p| demand(v, p))
        .collect::<Result<Vec<_>>>()?;
    for i in 0..samples.len() {
        for j in i + 1..samples.len() {
            let dp = samples[j].sub(&samples[i]);
            for q1 in &sets[i].bundles {
                for q2 in &sets[j].bundles {
                    if dp.dot_int(&q2.sub(q1)).is_positive() {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn five_bundle() -> Valuation {
        Valuation::from_ints(
            2,
            &[(&[0, 0], 0), (&[2, 0], 16), (&[1, 1], 24), (&[0, 2], 28), (&[2, 2], 34)],
        )
        .unwrap()
    }

    fn p(x: i64, y: i64) -> RationalVector {
        RationalVector::from_ints(&[x, y])
    }

    fn bundles(list: &[[i64; 2]]) -> BTreeSet<IntegerVector> {
        list.iter().map(|q| IntegerVector::new(q.to_vec())).collect()
    }

    #[test]
    fn indirect_utility_values() {
        let f = indirect_utility(&five_bundle());
        assert_eq!(f.pieces.len(), 5);
        assert_eq!(f.evaluate(&p(0, 0)).unwrap(), Rational::from(34));
        assert_eq!(f.evaluate(&p(8, 16)).unwrap(), Rational::zero());
    }

    #[test]
    fn demand_at_listed_prices() {
        let v = five_bundle();
        assert_eq!(demand(&v, &p(8, 16)).unwrap().bundles, bundles(&[[0, 0], [2, 0], [1, 1]]));
        assert_eq!(demand(&v, &p(9, 15)).unwrap().bundles, bundles(&[[0, 0], [1, 1]]));
        assert_eq!(demand(&v, &p(0, 0)).unwrap().bundles, bundles(&[[2, 2]]));
    }

    #[test]
    fn dual_value_at_centre() {
        let u = dualize(&five_bundle()).unwrap();
        assert_eq!(u.pieces.len(), 4);
        assert_eq!(u.evaluate(&p(1, 1)).unwrap(), Rational::from(24));
        assert!(matches!(u.evaluate(&p(3, 0)), Err(Error::DomainError(_))));
    }

    #[test]
    fn single_bundle_dual_is_constant() {
        let v = Valuation::from_ints(2, &[(&[0, 0], 0)]).unwrap();
        let u = dualize(&v).unwrap();
        assert_eq!(u.pieces, vec![AffinePiece::new(p(0, 0), Rational::zero())]);
        assert!(u.domain.contains(&p(0, 0)));
        assert!(!u.domain.contains(&p(0, 1)));
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(
            Valuation::from_ints(1, &[(&[0], 0), (&[0], 1)]),
            Err(Error::DuplicateBundle(_))
        ));
        assert!(matches!(
            Valuation::from_ints(2, &[(&[1, 0], 0), (&[0, 1], 1)]),
            Err(Error::InvalidValuation(_))
        ));
        assert!(matches!(
            Valuation::from_ints(2, &[(&[0], 0)]),
            Err(Error::InvalidValuation(_))
        ));
    }

    #[test]
    fn dominated_bundle_region_is_empty() {
        let v = Valuation::from_ints(1, &[(&[0], 0), (&[1], 1), (&[2], 4)]).unwrap();
        assert_eq!(
            inverse_demand_region(&v, &IntegerVector::new(vec![1])),
            Err(Error::EmptyCell)
        );
        assert_eq!(v.never_demanded().unwrap(), vec![IntegerVector::new(vec![1])]);
        assert!(matches!(
            inverse_demand_region(&v, &IntegerVector::new(vec![5])),
            Err(Error::UnknownBundle(_))
        ));
    }

    #[test]
    fn zero_bundle_region() {
        let r = inverse_demand_region(&five_bundle(), &IntegerVector::new(vec![0, 0])).unwrap();
        assert_eq!(r.len(), 3);
        assert!(r.contains(&p(8, 16)) && r.contains(&p(10, 14)) && r.contains(&p(100, 100)));
        assert!(!r.contains(&p(9, 14)));
    }

    #[test]
    fn conjugate_matches_dualize() {
        let v = five_bundle();
        assert_eq!(conjugate(&indirect_utility(&v)).unwrap(), dualize(&v).unwrap());
    }

    #[test]
    fn json_roundtrip() {
        let v = five_bundle();
        let s = serde_json::to_string(&v).unwrap();
        assert!(s.starts_with(r#"{"goods":2,"entries":[{"bundle":[0,0],"value":"0"}"#));
        let back: Valuation = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
        let dup = r#"{"goods":1,"entries":[{"bundle":[0],"value":"0"},{"bundle":[0],"value":"1"}]}"#;
        assert!(serde_json::from_str::<Valuation>(dup).is_err());
    }

    #[test]
    fn monotone_on_grid() {
        let samples: Vec<RationalVector> = (0..5).flat_map(|i| (0..5).map(move |j| p(4 * i, 4 * j))).collect();
        assert!(check_monotone(&five_bundle(), &samples).unwrap());
        assert!(check_monotone(&five_bundle(), &samples[..1]).unwrap());
    }
}
