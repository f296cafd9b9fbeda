//! Exact linear programming over rationals: a dense two-phase simplex with
//! Bland's rule. All variables are implicitly non-negative.

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Lt,
    Eq,
    Ge,
    Gt,
}

impl Relation {
    pub fn is_strict(self) -> bool {
        matches!(self, Relation::Lt | Relation::Gt)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<(usize, Rational)>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// Variables `x_0 .. x_{n-1} ≥ 0` subject to linear constraints, some of them
/// strict.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LinearProblem {
    num_vars: usize,
    constraints: Vec<Constraint>,
}

impl LinearProblem {
    pub fn new(num_vars: usize) -> Self {
        LinearProblem {
            num_vars,
            constraints: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn add_var(&mut self) -> usize {
        self.num_vars += 1;
        self.num_vars - 1
    }

    pub fn add(&mut self, coeffs: Vec<(usize, Rational)>, relation: Relation, rhs: Rational) {
        debug_assert!(coeffs.iter().all(|(v, _)| *v < self.num_vars));
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }

    /// Checks a point exactly, strictness included.
    pub fn satisfied_by(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars
            && x.iter().all(|v| !v.is_negative())
            && self.constraints.iter().all(|c| {
                let lhs: Rational = c.coeffs.iter().map(|(v, a)| a * &x[*v]).sum();
                match c.relation {
                    Relation::Le => lhs <= c.rhs,
                    Relation::Lt => lhs < c.rhs,
                    Relation::Eq => lhs == c.rhs,
                    Relation::Ge => lhs >= c.rhs,
                    Relation::Gt => lhs > c.rhs,
                }
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal {
        value: Rational,
        point: Vec<Rational>,
    },
}

struct Tableau {
    rows: Vec<Vec<Rational>>, // last column is the right-hand side
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn rhs(&self, r: usize) -> &Rational {
        &self.rows[r][self.cols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = Rational::one() / &self.rows[r][c];
        for v in self.rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes `cost · x` over the columns marked `allowed`. Returns false
    /// when unbounded.
    fn optimize(&mut self, cost: &[Rational], allowed: &[bool]) -> bool {
        loop {
            let entering = (0..self.cols).find(|&j| {
                if !allowed[j] || self.basis.contains(&j) {
                    return false;
                }
                let z: Rational = self
                    .basis
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !self.rows[*i][j].is_zero())
                    .map(|(i, &b)| &cost[b] * &self.rows[i][j])
                    .sum();
                cost[j] > z
            });
            let Some(j) = entering else { return true };
            let mut best: Option<(Rational, usize)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][j];
                if a.is_positive() {
                    let ratio = self.rhs(i) / a;
                    let better = match &best {
                        None => true,
                        Some((r, bi)) => {
                            ratio < *r || (ratio == *r && self.basis[i] < self.basis[*bi])
                        }
                    };
                    if better {
                        best = Some((ratio, i));
                    }
                }
            }
            match best {
                None => return false,
                Some((_, i)) => self.pivot(i, j),
            }
        }
    }
}

/// Maximizes `objective · x`. Strict constraints are relaxed to their
/// closures; use [`lp_feasible`] when strictness matters.
pub fn lp_maximize(problem: &LinearProblem, objective: &[(usize, Rational)]) -> LpOutcome {
    let n = problem.num_vars;
    // Standard form columns: originals, one slack per inequality, one
    // artificial per row.
    let m = problem.constraints.len();
    let slacks: Vec<Option<usize>> = {
        let mut next = n;
        problem
            .constraints
            .iter()
            .map(|c| {
                if c.relation == Relation::Eq {
                    None
                } else {
                    next += 1;
                    Some(next - 1)
                }
            })
            .collect()
    };
    let structural = n + slacks.iter().flatten().count();
    let cols = structural + m;
    let mut rows = Vec::with_capacity(m);
    for (i, c) in problem.constraints.iter().enumerate() {
        let mut row = vec![Rational::zero(); cols + 1];
        for (v, a) in &c.coeffs {
            row[*v] += a;
        }
        if let Some(s) = slacks[i] {
            row[s] = match c.relation {
                Relation::Le | Relation::Lt => Rational::one(),
                _ => -Rational::one(),
            };
        }
        row[cols] = c.rhs.clone();
        if row[cols].is_negative() {
            for v in row.iter_mut() {
                *v = -&*v;
            }
        }
        row[structural + i] = Rational::one();
        rows.push(row);
    }
    let mut t = Tableau {
        rows,
        basis: (structural..cols).collect(),
        cols,
    };
    // Phase 1: drive the artificials to zero.
    let mut cost1 = vec![Rational::zero(); cols];
    for c in cost1.iter_mut().skip(structural) {
        *c = -Rational::one();
    }
    t.optimize(&cost1, &vec![true; cols]);
    let infeasible = t
        .basis
        .iter()
        .enumerate()
        .any(|(i, &b)| b >= structural && !t.rhs(i).is_zero());
    if infeasible {
        return LpOutcome::Infeasible;
    }
    // Pivot remaining (zero-level) artificials out, dropping redundant rows.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= structural {
            match (0..structural).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => {
                    t.pivot(i, j);
                    i += 1;
                }
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                }
            }
        } else {
            i += 1;
        }
    }
    // Phase 2.
    let mut cost2 = vec![Rational::zero(); cols];
    for (v, a) in objective {
        cost2[*v] += a;
    }
    let allowed: Vec<bool> = (0..cols).map(|j| j < structural).collect();
    if !t.optimize(&cost2, &allowed) {
        return LpOutcome::Unbounded;
    }
    let mut point = vec![Rational::zero(); n];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < n {
            point[b] = t.rhs(i).clone();
        }
    }
    let value = objective.iter().map(|(v, a)| a * &point[*v]).sum();
    LpOutcome::Optimal { value, point }
}

/// Exact feasibility with strict constraints. Strict rows share a slack
/// `0 ≤ t ≤ 1` (`a·x + t ≤ b` for `<`, `a·x − t ≥ b` for `>`); the system is
/// strictly feasible iff the maximal `t` is positive.
pub fn lp_feasible(problem: &LinearProblem) -> Option<Vec<Rational>> {
    let n = problem.num_vars;
    if !problem.constraints.iter().any(|c| c.relation.is_strict()) {
        return match lp_maximize(problem, &[]) {
            LpOutcome::Optimal { point, .. } => Some(point),
            _ => None,
        };
    }
    let mut relaxed = LinearProblem::new(n + 1);
    let t = n;
    for c in &problem.constraints {
        let mut coeffs = c.coeffs.clone();
        let relation = match c.relation {
            Relation::Lt => {
                coeffs.push((t, Rational::one()));
                Relation::Le
            }
            Relation::Gt => {
                coeffs.push((t, -Rational::one()));
                Relation::Ge
            }
            r => r,
        };
        relaxed.add(coeffs, relation, c.rhs.clone());
    }
    relaxed.add(vec![(t, Rational::one())], Relation::Le, Rational::one());
    match lp_maximize(&relaxed, &[(t, Rational::one())]) {
        LpOutcome::Optimal { value, mut point } if value.is_positive() => {
            point.truncate(n);
            debug_assert!(problem.satisfied_by(&point));
            Some(point)
        }
        _ => None,
    }
}
