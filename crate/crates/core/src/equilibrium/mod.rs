//! Quasi-linear exchange economies with indivisible goods: aggregate indirect
//! utility, aggregate utility over feasible allocations, and the duality test
//! for existence of Walrasian equilibrium.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{IntegerVector, Rational, RationalVector};
use crate::polyhedra::{simplex_solve, HalfSpace, LinearProgram, LpOutcome, Sense};
use crate::valuation::{demand, DemandSet, Valuation};

/// Default bound on the number of candidate allocations (or demand selections) enumerated.
pub const DEFAULT_ENUMERATION_CAP: u128 = 1_000_000;

/// Consumers with quasi-linear preferences sharing a total endowment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "EconomyDoc", into = "EconomyDoc")]
pub struct Economy {
    goods: usize,
    consumers: Vec<Valuation>,
    endowment: IntegerVector,
    ownership: Option<Vec<IntegerVector>>,
}

#[derive(Serialize, Deserialize)]
struct EconomyDoc {
    goods: usize,
    endowment: IntegerVector,
    consumers: Vec<Valuation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ownership: Option<Vec<IntegerVector>>,
}

impl TryFrom<EconomyDoc> for Economy {
    type Error = Error;
    fn try_from(d: EconomyDoc) -> Result<Self> {
        Economy::new(d.goods, d.consumers, d.endowment, d.ownership)
    }
}

impl From<Economy> for EconomyDoc {
    fn from(e: Economy) -> Self {
        EconomyDoc {
            goods: e.goods,
            endowment: e.endowment,
            consumers: e.consumers,
            ownership: e.ownership,
        }
    }
}

impl Economy {
    pub fn new(
        goods: usize,
        consumers: Vec<Valuation>,
        endowment: IntegerVector,
        ownership: Option<Vec<IntegerVector>>,
    ) -> Result<Self> {
        if consumers.is_empty() {
            return Err(Error::InvalidEconomy("no consumers".into()));
        }
        if endowment.dim() != goods {
            return Err(Error::UnsupportedDimension {
                expected: goods,
                found: endowment.dim(),
            });
        }
        if endowment.coords().iter().any(|&w| w < 0) {
            return Err(Error::InvalidEconomy("endowment has a negative coordinate".into()));
        }
        let zero = IntegerVector::zeros(goods);
        for (i, v) in consumers.iter().enumerate() {
            if v.goods() != goods {
                return Err(Error::UnsupportedDimension {
                    expected: goods,
                    found: v.goods(),
                });
            }
            if !v.contains(&zero) {
                return Err(Error::InvalidEconomy(format!("consumer {i} has no zero bundle")));
            }
        }
        if let Some(own) = &ownership {
            if own.len() != consumers.len() {
                return Err(Error::InvalidEconomy(format!(
                    "ownership lists {} consumers, economy has {}",
                    own.len(),
                    consumers.len()
                )));
            }
            if own.iter().any(|w| w.dim() != goods || w.coords().iter().any(|&x| x < 0)) {
                return Err(Error::InvalidEconomy("ownership shares must be nonnegative bundles".into()));
            }
            let total = own.iter().fold(zero.clone(), |acc, w| acc.add(w));
            if total != endowment {
                return Err(Error::InvalidEconomy(format!(
                    "ownership sums to {total}, endowment is {endowment}"
                )));
            }
        }
        Ok(Economy {
            goods,
            consumers,
            endowment,
            ownership,
        })
    }

    pub fn goods(&self) -> usize {
        self.goods
    }

    pub fn consumers(&self) -> &[Valuation] {
        &self.consumers
    }

    pub fn endowment(&self) -> &IntegerVector {
        &self.endowment
    }

    pub fn ownership(&self) -> Option<&[IntegerVector]> {
        self.ownership.as_deref()
    }

    /// Number of points in the product of the consumers' bundle supports.
    pub fn allocation_count(&self) -> u128 {
        self.consumers
            .iter()
            .map(|v| v.len() as u128)
            .fold(1u128, |a, b| a.saturating_mul(b))
    }

    fn check_prices(&self, p: &RationalVector) -> Result<()> {
        if p.dim() != self.goods {
            return Err(Error::UnsupportedDimension {
                expected: self.goods,
                found: p.dim(),
            });
        }
        if p.iter().any(|x| x.is_negative()) {
            return Err(Error::DomainError(format!("prices {p} have a negative coordinate")));
        }
        Ok(())
    }

    fn check_allocation(&self, a: &Allocation) -> Result<()> {
        if a.bundles.len() != self.consumers.len() {
            return Err(Error::DomainError(format!(
                "allocation has {} bundles for {} consumers",
                a.bundles.len(),
                self.consumers.len()
            )));
        }
        for (i, (q, v)) in a.bundles.iter().zip(&self.consumers).enumerate() {
            if !v.contains(q) {
                return Err(Error::DomainError(format!("bundle {q} is not available to consumer {i}")));
            }
        }
        if !a.total(self.goods).le(&self.endowment) {
            return Err(Error::DomainError(format!(
                "allocation uses {} but the endowment is {}",
                a.total(self.goods),
                self.endowment
            )));
        }
        Ok(())
    }
}

/// One bundle per consumer.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Allocation {
    pub bundles: Vec<IntegerVector>,
}

impl Allocation {
    pub fn new(bundles: Vec<IntegerVector>) -> Self {
        Allocation { bundles }
    }

    pub fn from_ints(bundles: &[&[i64]]) -> Self {
        Allocation {
            bundles: bundles.iter().map(|q| IntegerVector::new(q.to_vec())).collect(),
        }
    }

    pub fn total(&self, goods: usize) -> IntegerVector {
        self.bundles.iter().fold(IntegerVector::zeros(goods), |acc, q| acc.add(q))
    }
}

/// `V(p, ω) = Σ_i max_q (u_i(q) - p·q) + p·ω`.
pub fn aggregate_indirect(e: &Economy, p: &RationalVector) -> Result<Rational> {
    e.check_prices(p)?;
    let mut total = p.dot_int(&e.endowment);
    for v in &e.consumers {
        total += demand(v, p)?.value;
    }
    Ok(total)
}

/// `U(a) = Σ_i u_i(a_i)`.
pub fn aggregate_utility(e: &Economy, a: &Allocation) -> Result<Rational> {
    e.check_allocation(a)?;
    Ok(a.bundles
        .iter()
        .zip(&e.consumers)
        .map(|(q, v)| v.value(q).expect("checked").clone())
        .sum())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PriceMinimum {
    pub value: Rational,
    pub prices: RationalVector,
    pub unique: bool,
}

/// Minimizes `V(p, ω)` over `p ≥ 0` through its epigraph LP in `(p, t)`:
/// minimize `Σ t_i + p·ω` with `t_i + q·p ≥ u_i(q)` for every bundle of every consumer.
pub fn min_aggregate_indirect(e: &Economy) -> Result<PriceMinimum> {
    let l = e.goods;
    let n = e.consumers.len();
    let mut objective: Vec<Rational> = e.endowment.coords().iter().map(|&w| Rational::from(w)).collect();
    objective.extend((0..n).map(|_| Rational::one()));
    let mut lp = LinearProgram::new(RationalVector(objective), Sense::Min);
    for (i, v) in e.consumers.iter().enumerate() {
        for (q, u) in v.entries() {
            let mut row: Vec<Rational> = q.coords().iter().map(|&x| Rational::from(-x)).collect();
            row.extend((0..n).map(|k| if k == i { -Rational::one() } else { Rational::zero() }));
            lp.constraints.push(HalfSpace {
                normal: RationalVector(row),
                offset: -u,
            });
        }
    }
    for flag in lp.nonneg.iter_mut().take(l) {
        *flag = true;
    }
    match simplex_solve(&lp)? {
        LpOutcome::Optimal(s) => Ok(PriceMinimum {
            value: s.value,
            prices: RationalVector(s.point.0[..l].to_vec()),
            unique: s.unique,
        }),
        other => Err(Error::DegenerateInput(format!("price program ended {other:?}"))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UtilityMaximum {
    pub value: Rational,
    /// Every maximizing allocation, in lexicographic order.
    pub allocations: Vec<Allocation>,
}

pub fn max_aggregate_utility(e: &Economy) -> Result<UtilityMaximum> {
    max_aggregate_utility_capped(e, DEFAULT_ENUMERATION_CAP)
}

/// Exhaustive search over the product of bundle supports, keeping feasible points.
pub fn max_aggregate_utility_capped(e: &Economy, cap: u128) -> Result<UtilityMaximum> {
    let size = e.allocation_count();
    if size > cap {
        return Err(Error::InstanceTooLarge { size, cap });
    }
    let mut best: Option<Rational> = None;
    let mut argmax = Vec::new();
    let supports: Vec<Vec<(&IntegerVector, &Rational)>> =
        e.consumers.iter().map(|v| v.entries().collect()).collect();
    for choice in supports.iter().map(|s| s.iter()).multi_cartesian_product() {
        let total = choice
            .iter()
            .fold(IntegerVector::zeros(e.goods), |acc, (q, _)| acc.add(q));
        if !total.le(&e.endowment) {
            continue;
        }
        let value: Rational = choice.iter().map(|(_, u)| (*u).clone()).sum();
        let alloc = || Allocation::new(choice.iter().map(|(q, _)| (*q).clone()).collect());
        match &best {
            Some(b) if value < *b => {}
            Some(b) if value == *b => argmax.push(alloc()),
            _ => {
                best = Some(value);
                argmax = vec![alloc()];
            }
        }
    }
    Ok(UtilityMaximum {
        value: best.expect("the all-zero allocation is feasible"),
        allocations: argmax,
    })
}

/// Per-consumer evidence for or against optimality at given prices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Receipt {
    pub consumer: usize,
    pub bundle: IntegerVector,
    pub value: Rational,
    pub surplus: Rational,
    pub best_surplus: Rational,
    pub optimal: bool,
    /// `p·(q_i - ω_i)`, present when ownership shares are known.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transfer: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalrasianCheck {
    pub equilibrium: bool,
    /// Every good with a positive price is fully allocated.
    pub market_clears: bool,
    pub receipts: Vec<Receipt>,
}

/// Whether `(p, a)` is a Walrasian equilibrium: every consumer's bundle
/// maximizes surplus at `p`, and no good with a positive price is left over.
pub fn walrasian_check(e: &Economy, p: &RationalVector, a: &Allocation) -> Result<WalrasianCheck> {
    e.check_prices(p)?;
    e.check_allocation(a)?;
    let mut receipts = Vec::with_capacity(a.bundles.len());
    for (i, (q, v)) in a.bundles.iter().zip(&e.consumers).enumerate() {
        let surplus = v.surplus(q, p)?;
        let best = demand(v, p)?.value;
        receipts.push(Receipt {
            consumer: i,
            bundle: q.clone(),
            value: v.value(q).expect("checked").clone(),
            optimal: surplus == best,
            surplus,
            best_surplus: best,
            transfer: e.ownership.as_ref().map(|own| p.dot_int(&q.sub(&own[i]))),
        });
    }
    let left = e.endowment.sub(&a.total(e.goods));
    let market_clears = p.dot_int(&left).is_zero();
    Ok(WalrasianCheck {
        equilibrium: market_clears && receipts.iter().all(|r| r.optimal),
        market_clears,
        receipts,
    })
}

/// `Y(p, a) = U(a) - V(p, ω)`; never positive, zero exactly at equilibrium.
pub fn economy_potential(e: &Economy, p: &RationalVector, a: &Allocation) -> Result<Rational> {
    e.check_prices(p)?;
    Ok(aggregate_utility(e, a)? - aggregate_indirect(e, p)?)
}

/// Result of searching the product of demand sets for a clearing selection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SelectionSearch {
    Found { allocation: Allocation, searched: u128 },
    NoneClears { searched: u128 },
    Capped { size: u128, cap: u128 },
}

/// Looks for one demanded bundle per consumer at `p` that is feasible and clears
/// every positively priced good. Selections are tried in lexicographic order.
pub fn find_clearing_selection(e: &Economy, p: &RationalVector, cap: u128) -> Result<SelectionSearch> {
    e.check_prices(p)?;
    let sets = demand_sets(e, p)?;
    let size = sets
        .iter()
        .map(|d| d.bundles.len() as u128)
        .fold(1u128, |a, b| a.saturating_mul(b));
    if size > cap {
        return Ok(SelectionSearch::Capped { size, cap });
    }
    let mut searched = 0u128;
    for choice in sets.iter().map(|d| d.bundles.iter()).multi_cartesian_product() {
        searched += 1;
        let total = choice.iter().fold(IntegerVector::zeros(e.goods), |acc, q| acc.add(q));
        if !total.le(&e.endowment) {
            continue;
        }
        if p.dot_int(&e.endowment.sub(&total)).is_zero() {
            return Ok(SelectionSearch::Found {
                allocation: Allocation::new(choice.into_iter().cloned().collect()),
                searched,
            });
        }
    }
    Ok(SelectionSearch::NoneClears { searched })
}

pub fn demand_sets(e: &Economy, p: &RationalVector) -> Result<Vec<DemandSet>> {
    e.consumers.iter().map(|v| demand(v, p)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// A Walrasian equilibrium at the minimizing prices.
    Equilibrium {
        prices: RationalVector,
        allocation: Allocation,
        receipts: Vec<Receipt>,
    },
    /// Demand sets at the minimizing prices; no selection from them clears the market.
    NonClearing {
        prices: RationalVector,
        demand_sets: Vec<DemandSet>,
    },
    /// The gap is zero but the selection search hit its cap.
    Indeterminate {
        prices: RationalVector,
        demand_sets: Vec<DemandSet>,
        size: u128,
        cap: u128,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquilibriumReport {
    pub min_v: Rational,
    pub argmin_prices: RationalVector,
    pub price_unique: bool,
    pub max_u: Rational,
    pub argmax_allocations: Vec<Allocation>,
    pub gap: Rational,
    pub exists: bool,
    pub certificate: Certificate,
}

pub fn duality_test(e: &Economy) -> Result<EquilibriumReport> {
    duality_test_capped(e, DEFAULT_ENUMERATION_CAP)
}

/// Equilibrium exists exactly when `min_{p ≥ 0} V(p, ω)` equals `max_a U(a)`.
/// The certificate is searched for separately and never changes the verdict.
pub fn duality_test_capped(e: &Economy, cap: u128) -> Result<EquilibriumReport> {
    let umax = max_aggregate_utility_capped(e, cap)?;
    let vmin = min_aggregate_indirect(e)?;
    let gap = &vmin.value - &umax.value;
    let exists = gap.is_zero();
    let p = vmin.prices.clone();
    let certificate = if exists {
        match find_clearing_selection(e, &p, cap)? {
            SelectionSearch::Found { allocation, .. } => {
                let check = walrasian_check(e, &p, &allocation)?;
                Certificate::Equilibrium {
                    prices: p,
                    allocation,
                    receipts: check.receipts,
                }
            }
            SelectionSearch::Capped { size, cap } => Certificate::Indeterminate {
                demand_sets: demand_sets(e, &p)?,
                prices: p,
                size,
                cap,
            },
            SelectionSearch::NoneClears { .. } => {
                return Err(Error::DegenerateInput(
                    "zero duality gap without a clearing selection at the minimizing prices".into(),
                ))
            }
        }
    } else {
        Certificate::NonClearing {
            demand_sets: demand_sets(e, &p)?,
            prices: p,
        }
    };
    Ok(EquilibriumReport {
        min_v: vmin.value,
        argmin_prices: vmin.prices,
        price_unique: vmin.unique,
        max_u: umax.value,
        argmax_allocations: umax.allocations,
        gap,
        exists,
        certificate,
    })
}
