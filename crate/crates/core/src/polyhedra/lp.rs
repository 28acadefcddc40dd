//! Two-phase dense tableau simplex over exact rationals with Bland's rule.

use serde::{Deserialize, Serialize};

use super::HalfSpace;
use crate::exactmath::{Rational, RationalVector};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Min,
    Max,
}

/// Optimize `objective · x` subject to `constraints` (each `a·x ≤ b`),
/// `equalities` (each `a·x = b`) and per-variable nonnegativity flags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearProgram {
    pub objective: RationalVector,
    pub sense: Sense,
    pub constraints: Vec<HalfSpace>,
    pub equalities: Vec<(RationalVector, Rational)>,
    pub nonneg: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LpSolution {
    pub value: Rational,
    pub point: RationalVector,
    /// No other feasible point attains `value`.
    pub unique: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn optimal(self) -> Option<LpSolution> {
        match self {
            LpOutcome::Optimal(s) => Some(s),
            _ => None,
        }
    }
}

impl LinearProgram {
    /// Program over `objective.dim()` free variables with no constraints.
    pub fn new(objective: RationalVector, sense: Sense) -> Self {
        let n = objective.dim();
        LinearProgram {
            objective,
            sense,
            constraints: Vec::new(),
            equalities: Vec::new(),
            nonneg: vec![false; n],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.dim()
    }

    pub fn with_constraint(mut self, h: HalfSpace) -> Self {
        self.constraints.push(h);
        self
    }

    pub fn with_equality(mut self, a: RationalVector, b: Rational) -> Self {
        self.equalities.push((a, b));
        self
    }

    pub fn all_nonneg(mut self) -> Self {
        self.nonneg = vec![true; self.num_vars()];
        self
    }

    fn check(&self) -> Result<()> {
        let n = self.num_vars();
        let bad = self.nonneg.len() != n
            || self.constraints.iter().any(|h| h.normal.dim() != n)
            || self.equalities.iter().any(|(a, _)| a.dim() != n);
        if bad {
            return Err(Error::DegenerateInput(
                "linear program rows disagree with the number of variables".into(),
            ));
        }
        Ok(())
    }
}

/// Solves `lp` exactly and reports whether the optimum is attained at a single point.
pub fn simplex_solve(lp: &LinearProgram) -> Result<LpOutcome> {
    solve(lp, true)
}

/// As [`simplex_solve`] but skips the uniqueness probe (`unique` is then `false`
/// unless the reduced costs already certify it).
pub fn simplex_solve_fast(lp: &LinearProgram) -> Result<LpOutcome> {
    solve(lp, false)
}

fn solve(lp: &LinearProgram, probe: bool) -> Result<LpOutcome> {
    lp.check()?;
    let mut t = Tableau::build(lp);
    if !t.phase_one() {
        return Ok(LpOutcome::Infeasible);
    }
    let sign = match lp.sense {
        Sense::Min => Rational::one(),
        Sense::Max => -Rational::one(),
    };
    let costs: Vec<Rational> = (0..t.ncols)
        .map(|c| match t.origin[c] {
            Column::Plus(j) => &sign * &lp.objective[j],
            Column::Minus(j) => -(&sign * &lp.objective[j]),
            _ => Rational::zero(),
        })
        .collect();
    if !t.optimize(&costs) {
        return Ok(LpOutcome::Unbounded);
    }
    let point = t.point(lp.num_vars());
    let value = lp.objective.dot(&point);
    let mut unique = t.strictly_optimal();
    if !unique && probe {
        unique = face_is_point(lp, &value)?;
    }
    Ok(LpOutcome::Optimal(LpSolution {
        value,
        point,
        unique,
    }))
}

/// Optimal face is a single point iff every coordinate has equal min and max over it.
fn face_is_point(lp: &LinearProgram, value: &Rational) -> Result<bool> {
    let n = lp.num_vars();
    let mut face = lp.clone();
    face.equalities.push((lp.objective.clone(), value.clone()));
    for j in 0..n {
        let mut lo_hi = Vec::with_capacity(2);
        for sense in [Sense::Min, Sense::Max] {
            face.objective = RationalVector::unit(n, j);
            face.sense = sense;
            match solve(&face, false)? {
                LpOutcome::Optimal(s) => lo_hi.push(s.value),
                _ => return Ok(false),
            }
        }
        if lo_hi[0] != lo_hi[1] {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Column {
    Plus(usize),
    Minus(usize),
    Slack,
    Artificial,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    origin: Vec<Column>,
    ncols: usize,
    /// Reduced costs of the current objective.
    z: Vec<Rational>,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Tableau {
        let n = lp.num_vars();
        let mut origin = Vec::new();
        let mut var_cols: Vec<(usize, Option<usize>)> = Vec::with_capacity(n);
        for j in 0..n {
            let p = origin.len();
            origin.push(Column::Plus(j));
            let m = if lp.nonneg[j] {
                None
            } else {
                origin.push(Column::Minus(j));
                Some(p + 1)
            };
            var_cols.push((p, m));
        }
        let slack0 = origin.len();
        origin.extend(std::iter::repeat_n(Column::Slack, lp.constraints.len()));
        let nrows = lp.constraints.len() + lp.equalities.len();
        let art0 = origin.len();
        origin.extend(std::iter::repeat_n(Column::Artificial, nrows));
        let ncols = origin.len();

        let mut rows = Vec::with_capacity(nrows);
        let mut rhs = Vec::with_capacity(nrows);
        let all_rows = lp
            .constraints
            .iter()
            .map(|h| (&h.normal, &h.offset))
            .chain(lp.equalities.iter().map(|(a, b)| (a, b)));
        for (i, (a, b)) in all_rows.enumerate() {
            let mut row = vec![Rational::zero(); ncols];
            for (j, &(p, m)) in var_cols.iter().enumerate() {
                row[p] = a[j].clone();
                if let Some(m) = m {
                    row[m] = -&a[j];
                }
            }
            if i < lp.constraints.len() {
                row[slack0 + i] = Rational::one();
            }
            let mut b = b.clone();
            if b.is_negative() {
                for x in row.iter_mut() {
                    *x = -&*x;
                }
                b = -b;
            }
            row[art0 + i] = Rational::one();
            rows.push(row);
            rhs.push(b);
        }
        let basis = (art0..art0 + nrows).collect();
        Tableau {
            rows,
            rhs,
            basis,
            origin,
            ncols,
            z: Vec::new(),
        }
    }

    fn allowed(&self, c: usize) -> bool {
        self.origin[c] != Column::Artificial
    }

    fn set_objective(&mut self, costs: &[Rational]) {
        let mut z = costs.to_vec();
        for (r, &b) in self.basis.iter().enumerate() {
            if costs[b].is_zero() {
                continue;
            }
            for (c, zc) in z.iter_mut().enumerate() {
                let d = &costs[b] * &self.rows[r][c];
                *zc -= &d;
            }
        }
        self.z = z;
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip().expect("pivot on zero entry");
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        self.rhs[r] *= &inv;
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (x, p) in self.rows[i].iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &(&f * p);
                }
            }
            self.rhs[i] -= &(&f * &prhs);
        }
        if !self.z.is_empty() && !self.z[c].is_zero() {
            let f = self.z[c].clone();
            for (x, p) in self.z.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &(&f * p);
                }
            }
        }
        self.basis[r] = c;
    }

    /// Minimizes the current objective; `false` when unbounded.
    fn run(&mut self, include_artificial: bool) -> bool {
        loop {
            let entering = (0..self.ncols)
                .find(|&c| (include_artificial || self.allowed(c)) && self.z[c].is_negative());
            let Some(c) = entering else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[r] / a;
                let better = match &best {
                    None => true,
                    Some((br, bv)) => ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br]),
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }

    fn phase_one(&mut self) -> bool {
        let costs: Vec<Rational> = self
            .origin
            .iter()
            .map(|o| match o {
                Column::Artificial => Rational::one(),
                _ => Rational::zero(),
            })
            .collect();
        self.set_objective(&costs);
        self.run(true);
        let infeasibility: Rational = self
            .basis
            .iter()
            .zip(&self.rhs)
            .filter(|(b, _)| self.origin[**b] == Column::Artificial)
            .map(|(_, v)| v.clone())
            .sum();
        if infeasibility.is_positive() {
            return false;
        }
        // Drive zero-level artificials out of the basis or drop redundant rows.
        let mut r = 0;
        while r < self.rows.len() {
            if self.origin[self.basis[r]] != Column::Artificial {
                r += 1;
                continue;
            }
            match (0..self.ncols).find(|&c| self.allowed(c) && !self.rows[r][c].is_zero()) {
                Some(c) => {
                    self.pivot(r, c);
                    r += 1;
                }
                None => {
                    self.rows.remove(r);
                    self.rhs.remove(r);
                    self.basis.remove(r);
                }
            }
        }
        true
    }

    fn optimize(&mut self, costs: &[Rational]) -> bool {
        self.set_objective(costs);
        self.run(false)
    }

    /// All nonbasic reduced costs strictly positive.
    fn strictly_optimal(&self) -> bool {
        (0..self.ncols)
            .filter(|c| self.allowed(*c) && !self.basis.contains(c))
            .all(|c| self.z[c].is_positive())
    }

    fn point(&self, n: usize) -> RationalVector {
        let mut x = vec![Rational::zero(); n];
        for (r, &b) in self.basis.iter().enumerate() {
            match self.origin[b] {
                Column::Plus(j) => x[j] += &self.rhs[r],
                Column::Minus(j) => x[j] -= &self.rhs[r],
                _ => {}
            }
        }
        RationalVector(x)
    }
}
