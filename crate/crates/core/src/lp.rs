//! Dense two-phase simplex for the small linear programs used across the crate.
//!
//! Problems here have at most a few hundred rows and a handful of structural
//! variables, so a full tableau is the simplest thing that is fast enough.
//! Pricing is Dantzig's rule with a switch to Bland's rule after a run of
//! degenerate pivots, which rules out cycling.

use thiserror::Error;

const PIVOT_EPS: f64 = 1e-11;
const FEAS_EPS: f64 = 1e-9;
const DEGENERATE_RUN: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("simplex iteration limit reached")]
    IterationLimit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone)]
struct Row {
    coeffs: Vec<f64>,
    rel: Relation,
    rhs: f64,
}

/// A linear program over `n` variables. Variables are nonnegative unless
/// marked free.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    sense: Sense,
    objective: Vec<f64>,
    free: Vec<bool>,
    rows: Vec<Row>,
}

/// Optimal primal point, objective value and row duals.
///
/// `duals[i]` is the sensitivity of the optimal value to the right-hand side
/// of row `i`, in the sense of the original (min or max) problem.
#[derive(Debug, Clone)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub value: f64,
    pub duals: Vec<f64>,
}

impl LinearProgram {
    pub fn minimize(objective: Vec<f64>) -> Self {
        Self::new(Sense::Minimize, objective)
    }

    pub fn maximize(objective: Vec<f64>) -> Self {
        Self::new(Sense::Maximize, objective)
    }

    fn new(sense: Sense, objective: Vec<f64>) -> Self {
        let n = objective.len();
        Self {
            sense,
            objective,
            free: vec![false; n],
            rows: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn set_free(&mut self, var: usize) {
        self.free[var] = true;
    }

    pub fn set_free_range(&mut self, vars: std::ops::Range<usize>) {
        for v in vars {
            self.free[v] = true;
        }
    }

    pub fn add_row(&mut self, coeffs: Vec<f64>, rel: Relation, rhs: f64) {
        assert_eq!(coeffs.len(), self.objective.len(), "row width mismatch");
        self.rows.push(Row { coeffs, rel, rhs });
    }

    /// Sparse form of [`add_row`](Self::add_row).
    pub fn add_sparse_row(&mut self, entries: &[(usize, f64)], rel: Relation, rhs: f64) {
        let mut coeffs = vec![0.0; self.objective.len()];
        for &(j, v) in entries {
            coeffs[j] += v;
        }
        self.add_row(coeffs, rel, rhs);
    }

    pub fn solve(&self) -> Result<LpSolution, LpError> {
        Tableau::build(self).run(self)
    }
}

struct Tableau {
    m: usize,
    ncols: usize,
    // (m + 1) x (ncols + 1), row-major; row m holds reduced costs, column
    // ncols holds the right-hand side.
    t: Vec<f64>,
    basis: Vec<usize>,
    artificial_start: usize,
    // column that started out as the identity column of each row
    identity: Vec<usize>,
    // +1 or -1 depending on whether the row was negated to make rhs >= 0
    row_sign: Vec<f64>,
    // standard-form column(s) for each structural variable: (plus, minus)
    var_cols: Vec<(usize, Option<usize>)>,
    cost: Vec<f64>,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let n = lp.objective.len();
        let m = lp.rows.len();

        let mut var_cols = Vec::with_capacity(n);
        let mut col = 0;
        for j in 0..n {
            if lp.free[j] {
                var_cols.push((col, Some(col + 1)));
                col += 2;
            } else {
                var_cols.push((col, None));
                col += 1;
            }
        }
        let structural = col;
        let slack_count = lp.rows.iter().filter(|r| r.rel != Relation::Eq).count();
        let mut row_sign = vec![1.0; m];
        let mut needs_artificial = vec![false; m];
        for (i, row) in lp.rows.iter().enumerate() {
            if row.rhs < 0.0 {
                row_sign[i] = -1.0;
            }
            // a slack can start basic only for <= rows with nonnegative rhs
            // (or >= rows that were negated)
            let slack_positive = match row.rel {
                Relation::Le => row_sign[i] > 0.0,
                Relation::Ge => row_sign[i] < 0.0,
                Relation::Eq => false,
            };
            needs_artificial[i] = !slack_positive;
        }
        let artificial_start = structural + slack_count;
        let artificial_count = needs_artificial.iter().filter(|&&a| a).count();
        let ncols = artificial_start + artificial_count;
        let w = ncols + 1;

        let mut t = vec![0.0; (m + 1) * w];
        let mut basis = vec![0; m];
        let mut identity = vec![0; m];
        let mut next_slack = structural;
        let mut next_art = artificial_start;
        for (i, row) in lp.rows.iter().enumerate() {
            let s = row_sign[i];
            let r = &mut t[i * w..(i + 1) * w];
            for j in 0..n {
                let a = s * row.coeffs[j];
                let (p, neg) = var_cols[j];
                r[p] = a;
                if let Some(q) = neg {
                    r[q] = -a;
                }
            }
            match row.rel {
                Relation::Le | Relation::Ge => {
                    let sign = if row.rel == Relation::Le { 1.0 } else { -1.0 };
                    r[next_slack] = s * sign;
                    if !needs_artificial[i] {
                        basis[i] = next_slack;
                        identity[i] = next_slack;
                    }
                    next_slack += 1;
                }
                Relation::Eq => {}
            }
            if needs_artificial[i] {
                r[next_art] = 1.0;
                basis[i] = next_art;
                identity[i] = next_art;
                next_art += 1;
            }
            r[ncols] = s * row.rhs;
        }

        let sense = if lp.sense == Sense::Maximize { -1.0 } else { 1.0 };
        let mut cost = vec![0.0; ncols];
        for j in 0..n {
            let c = sense * lp.objective[j];
            let (p, neg) = var_cols[j];
            cost[p] = c;
            if let Some(q) = neg {
                cost[q] = -c;
            }
        }

        Self {
            m,
            ncols,
            t,
            basis,
            artificial_start,
            identity,
            row_sign,
            var_cols,
            cost,
        }
    }

    #[inline]
    fn w(&self) -> usize {
        self.ncols + 1
    }

    #[inline]
    fn at(&self, r: usize, c: usize) -> f64 {
        self.t[r * self.w() + c]
    }

    fn pivot(&mut self, pr: usize, pc: usize) {
        let w = self.w();
        let inv = 1.0 / self.t[pr * w + pc];
        for c in 0..w {
            self.t[pr * w + c] *= inv;
        }
        self.t[pr * w + pc] = 1.0;
        let (before, rest) = self.t.split_at_mut(pr * w);
        let (prow, after) = rest.split_at_mut(w);
        let eliminate = |row: &mut [f64]| {
            let f = row[pc];
            if f != 0.0 {
                for c in 0..w {
                    row[c] -= f * prow[c];
                }
                row[pc] = 0.0;
            }
        };
        for row in before.chunks_mut(w) {
            eliminate(row);
        }
        for row in after.chunks_mut(w) {
            eliminate(row);
        }
        self.basis[pr] = pc;
    }

    fn set_costs(&mut self, cost: &[f64]) {
        let w = self.w();
        let m = self.m;
        for c in 0..w {
            let mut d = if c < self.ncols { cost[c] } else { 0.0 };
            for r in 0..m {
                let cb = cost[self.basis[r]];
                if cb != 0.0 {
                    d -= cb * self.t[r * w + c];
                }
            }
            self.t[m * w + c] = d;
        }
    }

    /// Runs simplex iterations on the current cost row; columns at or beyond
    /// `col_limit` may not enter.
    fn iterate(&mut self, col_limit: usize) -> Result<(), LpError> {
        let m = self.m;
        let w = self.w();
        let max_iter = 50 * (m + self.ncols) + 1000;
        let mut degenerate = 0;
        for _ in 0..max_iter {
            let bland = degenerate >= DEGENERATE_RUN;
            let mut enter = None;
            let mut best = -PIVOT_EPS.max(1e-10);
            for c in 0..col_limit {
                let d = self.t[m * w + c];
                if bland {
                    if d < -1e-10 {
                        enter = Some(c);
                        break;
                    }
                } else if d < best {
                    best = d;
                    enter = Some(c);
                }
            }
            let Some(pc) = enter else {
                return Ok(());
            };
            let mut leave: Option<(usize, f64)> = None;
            for r in 0..m {
                let a = self.t[r * w + pc];
                if a > PIVOT_EPS {
                    let ratio = self.t[r * w + self.ncols] / a;
                    match leave {
                        None => leave = Some((r, ratio)),
                        Some((lr, lratio)) => {
                            if ratio < lratio - 1e-12
                                || (ratio <= lratio + 1e-12 && self.basis[r] < self.basis[lr])
                            {
                                leave = Some((r, ratio));
                            }
                        }
                    }
                }
            }
            let Some((pr, ratio)) = leave else {
                return Err(LpError::Unbounded);
            };
            if ratio.abs() < 1e-12 {
                degenerate += 1;
            } else {
                degenerate = 0;
            }
            self.pivot(pr, pc);
        }
        Err(LpError::IterationLimit)
    }

    fn run(mut self, lp: &LinearProgram) -> Result<LpSolution, LpError> {
        let w = self.w();
        let m = self.m;

        if self.artificial_start < self.ncols {
            let mut phase1 = vec![0.0; self.ncols];
            for c in phase1.iter_mut().skip(self.artificial_start) {
                *c = 1.0;
            }
            self.set_costs(&phase1);
            self.iterate(self.ncols)?;
            let infeas = -self.at(m, self.ncols);
            let scale = 1.0
                + lp.rows
                    .iter()
                    .map(|r| r.rhs.abs())
                    .fold(0.0_f64, f64::max);
            if infeas > FEAS_EPS * scale {
                return Err(LpError::Infeasible);
            }
            // drive zero-level artificials out of the basis where possible
            for r in 0..m {
                if self.basis[r] >= self.artificial_start {
                    let mut best: Option<(usize, f64)> = None;
                    for c in 0..self.artificial_start {
                        let a = self.t[r * w + c].abs();
                        if a > 1e-9 && best.is_none_or(|(_, b)| a > b) {
                            best = Some((c, a));
                        }
                    }
                    if let Some((c, _)) = best {
                        self.pivot(r, c);
                    }
                }
            }
        }

        let cost = self.cost.clone();
        self.set_costs(&cost);
        self.iterate(self.artificial_start)?;

        let mut col_value = vec![0.0; self.ncols];
        for r in 0..m {
            col_value[self.basis[r]] = self.at(r, self.ncols);
        }
        let x: Vec<f64> = self
            .var_cols
            .iter()
            .map(|&(p, neg)| col_value[p] - neg.map_or(0.0, |q| col_value[q]))
            .collect();
        let sense = if lp.sense == Sense::Maximize { -1.0 } else { 1.0 };
        let value: f64 = x.iter().zip(&lp.objective).map(|(a, b)| a * b).sum();
        // reduced cost of an identity column is -pi_i (its cost is zero)
        let duals = (0..m)
            .map(|i| {
                let pi = -self.at(m, self.identity[i]);
                sense * pi * self.row_sign[i]
            })
            .collect();
        Ok(LpSolution { x, value, duals })
    }
}
