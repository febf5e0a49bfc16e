//! Dense bounded-variable revised simplex.
//!
//! Each row gets a slack whose bounds encode the row relation, so the
//! working system is `[A | I] (x, s) = b` with bounds on every column.
//! Rows whose initial slack value falls outside its bounds receive an
//! artificial column; phase one drives the artificials to zero, after which
//! they are fixed at `[0, 0]` and phase two runs on the real costs.
//!
//! The explicit basis inverse is updated with a product-form step each
//! pivot and rebuilt by Gauss-Jordan elimination every `REFACTOR_EVERY`
//! iterations.

use super::{audit, LinearProgram, LpError, LpSolution, LpStatus, Relation, Sense, FEAS_TOL, OPT_TOL};

const PIVOT_TOL: f64 = 1e-9;
const SINGULAR_TOL: f64 = 1e-12;
const STALL_EPS: f64 = 1e-12;
const RATIO_TIE: f64 = 1e-12;
const REFACTOR_EVERY: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum VarState {
    Basic,
    AtLower,
    AtUpper,
    /// Nonbasic free column sitting at zero.
    FreeZero,
}

enum PhaseOutcome {
    Optimal,
    Unbounded,
}

struct Simplex {
    m: usize,
    /// Sparse columns: (row, value).
    cols: Vec<Vec<(usize, f64)>>,
    lower: Vec<f64>,
    upper: Vec<f64>,
    x: Vec<f64>,
    state: Vec<VarState>,
    /// Column index basic in each row.
    basis: Vec<usize>,
    /// Row-major `m x m` basis inverse.
    binv: Vec<f64>,
    rhs: Vec<f64>,
    iterations: usize,
    max_iterations: usize,
    stall_window: usize,
}

/// Solves `lp` to optimality, or certifies infeasibility or unboundedness.
pub fn solve_lp(lp: &LinearProgram) -> Result<LpSolution, LpError> {
    lp.validate()?;
    let sign = match lp.sense {
        Sense::Minimize => 1.0,
        Sense::Maximize => -1.0,
    };
    let n = lp.num_vars;
    let m = lp.constraints.len();

    let mut cols: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    for (i, row) in lp.constraints.iter().enumerate() {
        for (j, &a) in row.coeffs.iter().enumerate() {
            if a != 0.0 {
                cols[j].push((i, a));
            }
        }
    }
    let mut lower: Vec<f64> = lp.var_bounds.iter().map(|b| b.lower).collect();
    let mut upper: Vec<f64> = lp.var_bounds.iter().map(|b| b.upper).collect();
    let mut x = Vec::with_capacity(n + 2 * m);
    let mut state = Vec::with_capacity(n + 2 * m);
    for j in 0..n {
        let (v, s) = if lower[j].is_finite() {
            (lower[j], VarState::AtLower)
        } else if upper[j].is_finite() {
            (upper[j], VarState::AtUpper)
        } else {
            (0.0, VarState::FreeZero)
        };
        x.push(v);
        state.push(s);
    }

    let rhs: Vec<f64> = lp.constraints.iter().map(|c| c.rhs).collect();
    let mut residual = rhs.clone();
    for (j, col) in cols.iter().enumerate() {
        for &(i, a) in col {
            residual[i] -= a * x[j];
        }
    }

    let mut basis = vec![usize::MAX; m];
    let mut binv = vec![0.0; m * m];
    let mut artificials = Vec::new();
    for (i, row) in lp.constraints.iter().enumerate() {
        let (lo, hi) = match row.relation {
            Relation::LessEq => (0.0, f64::INFINITY),
            Relation::GreaterEq => (f64::NEG_INFINITY, 0.0),
            Relation::Equal => (0.0, 0.0),
        };
        let slack = cols.len();
        cols.push(vec![(i, 1.0)]);
        lower.push(lo);
        upper.push(hi);
        let r = residual[i];
        if r >= lo && r <= hi {
            x.push(r);
            state.push(VarState::Basic);
            basis[i] = slack;
            binv[i * m + i] = 1.0;
        } else {
            let (clip, s) = if r < lo { (lo, VarState::AtLower) } else { (hi, VarState::AtUpper) };
            x.push(clip);
            state.push(s);
            artificials.push((i, r - clip));
        }
    }
    for &(i, gap) in &artificials {
        let sigma = if gap > 0.0 { 1.0 } else { -1.0 };
        let art = cols.len();
        cols.push(vec![(i, sigma)]);
        lower.push(0.0);
        upper.push(f64::INFINITY);
        x.push(gap.abs());
        state.push(VarState::Basic);
        basis[i] = art;
        binv[i * m + i] = sigma;
    }

    let ncols = cols.len();
    let mut sx = Simplex {
        m,
        cols,
        lower,
        upper,
        x,
        state,
        basis,
        binv,
        rhs,
        iterations: 0,
        max_iterations: 1000 + 50 * (m + ncols),
        stall_window: n.max(1),
    };

    let first_artificial = n + m;
    if !artificials.is_empty() {
        let mut phase_one = vec![0.0; ncols];
        for c in phase_one.iter_mut().skip(first_artificial) {
            *c = 1.0;
        }
        // phase one is bounded below by zero, so it can only end Optimal
        let _ = sx.optimize(&phase_one)?;
        sx.refactor()?;
        let infeasibility: f64 = (first_artificial..ncols).map(|j| sx.x[j].max(0.0)).sum();
        if infeasibility > FEAS_TOL {
            return Ok(finish(lp, &sx, LpStatus::Infeasible, Vec::new(), sign));
        }
        for j in first_artificial..ncols {
            sx.upper[j] = 0.0;
            if sx.state[j] != VarState::Basic {
                sx.x[j] = 0.0;
                sx.state[j] = VarState::AtLower;
            }
        }
        sx.refactor()?;
    }

    let mut cost = vec![0.0; ncols];
    for (c, &o) in cost.iter_mut().zip(&lp.objective) {
        *c = sign * o;
    }
    let outcome = sx.optimize(&cost)?;
    sx.refactor()?;
    let duals: Vec<f64> = sx.prices(&cost).into_iter().map(|y| sign * y).collect();
    let status = match outcome {
        PhaseOutcome::Optimal => LpStatus::Optimal,
        PhaseOutcome::Unbounded => LpStatus::Unbounded,
    };
    let sol = finish(lp, &sx, status, duals, sign);
    if sol.status == LpStatus::Optimal {
        let viol = lp.max_violation(&sol.x);
        if viol > FEAS_TOL {
            return Err(LpError::Numerical(format!("final primal violation {viol:e} exceeds tolerance")));
        }
        audit::record(lp, &sol);
    }
    Ok(sol)
}

fn finish(lp: &LinearProgram, sx: &Simplex, status: LpStatus, duals: Vec<f64>, sign: f64) -> LpSolution {
    let x = sx.x[..lp.num_vars].to_vec();
    let objective_value = match status {
        LpStatus::Optimal => lp.objective_value(&x),
        LpStatus::Infeasible => sign * f64::INFINITY,
        LpStatus::Unbounded => -sign * f64::INFINITY,
    };
    LpSolution { status, x, objective_value, iteration_count: sx.iterations, duals }
}

impl Simplex {
    fn objective(&self, cost: &[f64]) -> f64 {
        cost.iter().zip(&self.x).map(|(c, v)| c * v).sum()
    }

    /// Simplex multipliers `y' = c_B' B^-1`.
    fn prices(&self, cost: &[f64]) -> Vec<f64> {
        let m = self.m;
        let mut y = vec![0.0; m];
        for r in 0..m {
            let cb = cost[self.basis[r]];
            if cb != 0.0 {
                let row = &self.binv[r * m..(r + 1) * m];
                for (yk, &b) in y.iter_mut().zip(row) {
                    *yk += cb * b;
                }
            }
        }
        y
    }

    /// `B^-1 a_j`.
    fn ftran(&self, j: usize) -> Vec<f64> {
        let m = self.m;
        let mut alpha = vec![0.0; m];
        for (r, out) in alpha.iter_mut().enumerate() {
            let row = &self.binv[r * m..(r + 1) * m];
            *out = self.cols[j].iter().map(|&(k, a)| row[k] * a).sum();
        }
        alpha
    }

    fn reduced_cost(&self, cost: &[f64], y: &[f64], j: usize) -> f64 {
        cost[j] - self.cols[j].iter().map(|&(k, a)| y[k] * a).sum::<f64>()
    }

    /// Rebuilds the basis inverse from scratch and recomputes basic values.
    fn refactor(&mut self) -> Result<(), LpError> {
        let m = self.m;
        if m == 0 {
            return Ok(());
        }
        // [B | I] -> [I | B^-1]
        let w = 2 * m;
        let mut aug = vec![0.0; m * w];
        for (r, &j) in self.basis.iter().enumerate() {
            for &(k, a) in &self.cols[j] {
                aug[k * w + r] = a;
            }
        }
        for r in 0..m {
            aug[r * w + m + r] = 1.0;
        }
        for c in 0..m {
            let pivot_row =
                (c..m).max_by(|&a, &b| aug[a * w + c].abs().total_cmp(&aug[b * w + c].abs())).expect("non-empty range");
            let pivot = aug[pivot_row * w + c];
            if pivot.abs() < SINGULAR_TOL {
                return Err(LpError::Numerical("singular basis during refactorization".into()));
            }
            if pivot_row != c {
                for k in 0..w {
                    aug.swap(c * w + k, pivot_row * w + k);
                }
            }
            let inv = 1.0 / pivot;
            for k in 0..w {
                aug[c * w + k] *= inv;
            }
            for r in 0..m {
                if r == c {
                    continue;
                }
                let f = aug[r * w + c];
                if f != 0.0 {
                    for k in 0..w {
                        aug[r * w + k] -= f * aug[c * w + k];
                    }
                }
            }
        }
        for r in 0..m {
            self.binv[r * m..(r + 1) * m].copy_from_slice(&aug[r * w + m..(r + 1) * w]);
        }
        self.recompute_basics();
        Ok(())
    }

    fn recompute_basics(&mut self) {
        let m = self.m;
        let mut resid = self.rhs.clone();
        for (j, col) in self.cols.iter().enumerate() {
            if self.state[j] == VarState::Basic {
                continue;
            }
            let v = self.x[j];
            if v != 0.0 {
                for &(k, a) in col {
                    resid[k] -= a * v;
                }
            }
        }
        for r in 0..m {
            let row = &self.binv[r * m..(r + 1) * m];
            self.x[self.basis[r]] = row.iter().zip(&resid).map(|(b, v)| b * v).sum();
        }
    }

    fn pivot(&mut self, row: usize, alpha: &[f64]) {
        let m = self.m;
        let inv = 1.0 / alpha[row];
        for k in 0..m {
            self.binv[row * m + k] *= inv;
        }
        let pivot_row: Vec<f64> = self.binv[row * m..(row + 1) * m].to_vec();
        for (r, &a) in alpha.iter().enumerate() {
            if r == row || a == 0.0 {
                continue;
            }
            for (b, &p) in self.binv[r * m..(r + 1) * m].iter_mut().zip(&pivot_row) {
                *b -= a * p;
            }
        }
    }

    fn optimize(&mut self, cost: &[f64]) -> Result<PhaseOutcome, LpError> {
        let ncols = self.cols.len();
        let mut since_refactor = 0;
        let mut stall = 0;
        let mut bland = false;
        loop {
            if since_refactor >= REFACTOR_EVERY {
                self.refactor()?;
                since_refactor = 0;
            }
            if self.iterations >= self.max_iterations {
                return Err(LpError::IterationLimit(self.max_iterations));
            }

            let y = self.prices(cost);
            let mut entering: Option<(usize, f64)> = None;
            for j in 0..ncols {
                let st = self.state[j];
                if st == VarState::Basic || self.lower[j] == self.upper[j] {
                    continue;
                }
                let d = self.reduced_cost(cost, &y, j);
                let eligible = (d < -OPT_TOL && st != VarState::AtUpper) || (d > OPT_TOL && st != VarState::AtLower);
                if !eligible {
                    continue;
                }
                if bland {
                    entering = Some((j, d));
                    break;
                }
                if entering.is_none_or(|(_, best)| d.abs() > best.abs()) {
                    entering = Some((j, d));
                }
            }
            let Some((j, d)) = entering else {
                return Ok(PhaseOutcome::Optimal);
            };
            let dir = if d < 0.0 { 1.0 } else { -1.0 };
            let alpha = self.ftran(j);

            // Minimum ratio; ties go to the lowest column index.
            let mut step = f64::INFINITY;
            let mut leave: Option<(usize, bool)> = None;
            let mut leave_var = usize::MAX;
            if self.lower[j].is_finite() && self.upper[j].is_finite() {
                step = self.upper[j] - self.lower[j];
                leave_var = j;
            }
            for (r, &a) in alpha.iter().enumerate() {
                let rate = -dir * a;
                let b = self.basis[r];
                let (ratio, to_upper) = if rate < -PIVOT_TOL && self.lower[b].is_finite() {
                    ((self.x[b] - self.lower[b]).max(0.0) / -rate, false)
                } else if rate > PIVOT_TOL && self.upper[b].is_finite() {
                    ((self.upper[b] - self.x[b]).max(0.0) / rate, true)
                } else {
                    continue;
                };
                let tie = RATIO_TIE * (1.0 + ratio.abs());
                if ratio < step - tie || (ratio <= step + tie && b < leave_var) {
                    step = ratio;
                    leave = Some((r, to_upper));
                    leave_var = b;
                }
            }
            if step.is_infinite() {
                return Ok(PhaseOutcome::Unbounded);
            }

            let before = self.objective(cost);
            self.x[j] += dir * step;
            for (r, &a) in alpha.iter().enumerate() {
                let b = self.basis[r];
                self.x[b] -= dir * step * a;
            }
            match leave {
                None => {
                    if dir > 0.0 {
                        self.x[j] = self.upper[j];
                        self.state[j] = VarState::AtUpper;
                    } else {
                        self.x[j] = self.lower[j];
                        self.state[j] = VarState::AtLower;
                    }
                }
                Some((r, to_upper)) => {
                    let b = self.basis[r];
                    if to_upper {
                        self.x[b] = self.upper[b];
                        self.state[b] = VarState::AtUpper;
                    } else {
                        self.x[b] = self.lower[b];
                        self.state[b] = VarState::AtLower;
                    }
                    self.basis[r] = j;
                    self.state[j] = VarState::Basic;
                    self.pivot(r, &alpha);
                    since_refactor += 1;
                }
            }
            self.iterations += 1;

            let improvement = before - self.objective(cost);
            if improvement >= STALL_EPS {
                stall = 0;
                bland = false;
            } else {
                stall += 1;
                if stall >= self.stall_window {
                    bland = true;
                }
            }
        }
    }
}
