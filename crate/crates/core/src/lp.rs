//! Dense two-phase simplex with Bland's anti-cycling rule.
//!
//! The measure-optimization problems here have a handful of variables and
//! at most a few thousand constraints, so a full tableau is adequate.

use crate::error::{BoundError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

/// maximize cᵀx subject to the rows, x ≥ 0.
#[derive(Debug, Clone, Default)]
pub struct LinearProgram {
    objective: Vec<f64>,
    rows: Vec<(Vec<f64>, Relation, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub value: f64,
    pub pivots: usize,
}

const PIVOT_EPS: f64 = 1e-11;
const MAX_PIVOTS: usize = 200_000;

impl LinearProgram {
    pub fn maximize(objective: Vec<f64>) -> Self {
        Self {
            objective,
            rows: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn add_row(&mut self, coeffs: Vec<f64>, rel: Relation, rhs: f64) {
        assert_eq!(coeffs.len(), self.objective.len(), "row width");
        self.rows.push((coeffs, rel, rhs));
    }

    pub fn solve(&self) -> Result<LpSolution> {
        Tableau::build(self).run()
    }
}

struct Tableau {
    /// rows 0..m are constraints, row m is the objective (reduced costs)
    t: Vec<Vec<f64>>,
    basis: Vec<usize>,
    n_orig: usize,
    n_total: usize,
    artificial: Vec<bool>,
    objective: Vec<f64>,
    pivots: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let n = lp.num_vars();
        let m = lp.num_rows();
        let mut rows: Vec<(Vec<f64>, Relation, f64)> = lp
            .rows
            .iter()
            .map(|(a, rel, b)| {
                if *b < 0.0 {
                    let flipped = match rel {
                        Relation::Le => Relation::Ge,
                        Relation::Ge => Relation::Le,
                        Relation::Eq => Relation::Eq,
                    };
                    (a.iter().map(|x| -x).collect(), flipped, -b)
                } else {
                    (a.clone(), *rel, *b)
                }
            })
            .collect();

        let n_slack = rows.iter().filter(|r| r.1 != Relation::Eq).count();
        let n_art = rows.iter().filter(|r| r.1 != Relation::Le).count();
        let n_total = n + n_slack + n_art;
        let mut t = vec![vec![0.0; n_total + 1]; m + 1];
        let mut basis = vec![0; m];
        let mut artificial = vec![false; n_total];
        let (mut next_slack, mut next_art) = (n, n + n_slack);
        for (i, (a, rel, b)) in rows.drain(..).enumerate() {
            t[i][..n].copy_from_slice(&a);
            t[i][n_total] = b;
            match rel {
                Relation::Le => {
                    t[i][next_slack] = 1.0;
                    basis[i] = next_slack;
                    next_slack += 1;
                }
                Relation::Ge => {
                    t[i][next_slack] = -1.0;
                    next_slack += 1;
                    t[i][next_art] = 1.0;
                    artificial[next_art] = true;
                    basis[i] = next_art;
                    next_art += 1;
                }
                Relation::Eq => {
                    t[i][next_art] = 1.0;
                    artificial[next_art] = true;
                    basis[i] = next_art;
                    next_art += 1;
                }
            }
        }
        Self {
            t,
            basis,
            n_orig: n,
            n_total,
            artificial,
            objective: lp.objective.clone(),
            pivots: 0,
        }
    }

    fn m(&self) -> usize {
        self.basis.len()
    }

    /// Objective row for maximizing `cost`: z_j − c_j in basis-reduced form.
    fn set_objective(&mut self, cost: &[f64]) {
        let m = self.m();
        let mut obj = vec![0.0; self.n_total + 1];
        for (j, &c) in cost.iter().enumerate() {
            obj[j] = -c;
        }
        for i in 0..m {
            let cb = cost[self.basis[i]];
            if cb != 0.0 {
                for (o, x) in obj.iter_mut().zip(&self.t[i]) {
                    *o += cb * x;
                }
            }
        }
        self.t[m] = obj;
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.t[row][col];
        for x in &mut self.t[row] {
            *x /= p;
        }
        let pivot_row = self.t[row].clone();
        for (i, r) in self.t.iter_mut().enumerate() {
            if i == row {
                continue;
            }
            let f = r[col];
            if f != 0.0 {
                for (x, y) in r.iter_mut().zip(&pivot_row) {
                    *x -= f * y;
                }
                r[col] = 0.0;
            }
        }
        self.basis[row] = col;
        self.pivots += 1;
    }

    /// Primal simplex with Bland's rule over the allowed columns.
    fn optimize(&mut self, allowed: &[bool]) -> Result<()> {
        let m = self.m();
        loop {
            if self.pivots > MAX_PIVOTS {
                return Err(BoundError::Internal("simplex pivot budget exhausted".into()));
            }
            let obj = &self.t[m];
            let Some(col) = (0..self.n_total).find(|&j| allowed[j] && obj[j] < -PIVOT_EPS) else {
                return Ok(());
            };
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..m {
                let a = self.t[i][col];
                if a > PIVOT_EPS {
                    let ratio = self.t[i][self.n_total] / a;
                    leave = match leave {
                        None => Some((i, ratio)),
                        Some((li, lr)) => {
                            if ratio < lr - 1e-14 || (ratio <= lr + 1e-14 && self.basis[i] < self.basis[li]) {
                                Some((i, ratio))
                            } else {
                                Some((li, lr))
                            }
                        }
                    };
                }
            }
            let Some((row, _)) = leave else {
                return Err(BoundError::Internal("linear program is unbounded".into()));
            };
            self.pivot(row, col);
        }
    }

    fn run(mut self) -> Result<LpSolution> {
        let m = self.m();
        if self.artificial.iter().any(|&a| a) {
            let cost: Vec<f64> = self.artificial.iter().map(|&a| if a { -1.0 } else { 0.0 }).collect();
            self.set_objective(&cost);
            let all = vec![true; self.n_total];
            self.optimize(&all)?;
            let infeas = -self.t[m][self.n_total];
            if infeas.abs() > 1e-9 {
                return Err(BoundError::Internal(format!(
                    "linear program is infeasible (phase one residual {infeas:e})"
                )));
            }
            // drive zero-level artificials out of the basis
            for i in 0..m {
                if self.artificial[self.basis[i]] {
                    if let Some(col) = (0..self.n_total).find(|&j| !self.artificial[j] && self.t[i][j].abs() > 1e-9) {
                        self.pivot(i, col);
                    }
                }
            }
        }
        let mut cost = vec![0.0; self.n_total];
        cost[..self.n_orig].copy_from_slice(&self.objective);
        self.set_objective(&cost);
        let allowed: Vec<bool> = self.artificial.iter().map(|a| !a).collect();
        self.optimize(&allowed)?;

        let mut x = vec![0.0; self.n_orig];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.n_orig {
                x[b] = self.t[i][self.n_total];
            }
        }
        let value = self.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
        Ok(LpSolution {
            x,
            value,
            pivots: self.pivots,
        })
    }
}
