//! Self-contained bounded-variable primal simplex returning primal and dual
//! solutions. Used by the affine-hull LP, the per-row and per-variable
//! oracle LPs, and feasibility phase-1 solves.
//!
//! The implementation is the classic two-phase method with a dense basis
//! inverse maintained by product-form updates and periodic refactorization.
//! Pricing is Dantzig by default and falls back to Bland's rule once a
//! degeneracy threshold is hit, so every solve terminates. All tie-breaks
//! go to the lowest index: identical inputs produce identical bases.

use std::time::Instant;

use crate::linalg::Matrix;
use crate::model::{ObjectiveSense, Polyhedron, Sense};
use crate::Error;

const DUAL_TOL: f64 = 1e-9;
const PIVOT_TOL: f64 = 1e-9;
const ZERO_STEP: f64 = 1e-12;
const REFACTOR_EVERY: usize = 128;

/// Resource limits for one LP solve.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub max_iters: usize,
    pub max_seconds: f64,
}

impl Default for Limits {
    fn default() -> Self {
        // 5-minute ceiling per preprocessing LP
        Limits {
            max_iters: 1_000_000,
            max_seconds: 300.0,
        }
    }
}

impl Limits {
    pub fn seconds(max_seconds: f64) -> Self {
        Limits {
            max_seconds,
            ..Limits::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
    IterationLimit,
    TimeLimit,
}

/// Column-oriented LP: `sense { c^T x }` subject to row constraints and
/// variable bounds (`±inf` allowed).
#[derive(Clone, Debug)]
pub struct LpProblem {
    pub ncols: usize,
    pub nrows: usize,
    /// Sparse column entries `(row, value)`.
    pub cols: Vec<Vec<(usize, f64)>>,
    pub row_sense: Vec<Sense>,
    pub rhs: Vec<f64>,
    pub col_lower: Vec<f64>,
    pub col_upper: Vec<f64>,
    pub objective: Vec<f64>,
    pub sense: ObjectiveSense,
}

impl LpProblem {
    pub fn new(ncols: usize, nrows: usize) -> Self {
        LpProblem {
            ncols,
            nrows,
            cols: vec![Vec::new(); ncols],
            row_sense: vec![Sense::Le; nrows],
            rhs: vec![0.0; nrows],
            col_lower: vec![0.0; ncols],
            col_upper: vec![f64::INFINITY; ncols],
            objective: vec![0.0; ncols],
            sense: ObjectiveSense::Min,
        }
    }
}

/// Solve outcome; `x`/`y`/`obj` are meaningful only when `status` is
/// `Optimal`. Duals follow the convention that a max problem over
/// `Ax <= b` has `y >= 0` on its `<=` rows.
#[derive(Clone, Debug)]
pub struct LpSolution {
    pub status: LpStatus,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub obj: f64,
    pub iterations: usize,
}

impl LpSolution {
    fn failed(status: LpStatus, ncols: usize, nrows: usize, iterations: usize) -> Self {
        LpSolution {
            status,
            x: vec![0.0; ncols],
            y: vec![0.0; nrows],
            obj: f64::NAN,
            iterations,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum VStat {
    Basic,
    AtLo,
    AtUp,
    Free,
}

enum StepOutcome {
    Done,
    Unbounded,
    IterationLimit,
    TimeLimit,
}

struct Solver {
    m: usize,
    ntot: usize,
    cols: Vec<Vec<(usize, f64)>>,
    lo: Vec<f64>,
    up: Vec<f64>,
    rhs: Vec<f64>,
    stat: Vec<VStat>,
    basis: Vec<usize>,
    binv: Vec<f64>,
    xb: Vec<f64>,
    iters: usize,
    degen: usize,
    bland: bool,
    bland_threshold: usize,
    since_refactor: usize,
    started: Instant,
    limits: Limits,
}

impl Solver {
    fn nb_value(&self, j: usize) -> f64 {
        match self.stat[j] {
            VStat::AtLo => self.lo[j],
            VStat::AtUp => self.up[j],
            VStat::Free => 0.0,
            VStat::Basic => unreachable!("basic variable has no nonbasic value"),
        }
    }

    fn value(&self, j: usize) -> f64 {
        if self.stat[j] == VStat::Basic {
            let r = self.basis.iter().position(|&b| b == j).unwrap();
            self.xb[r]
        } else {
            self.nb_value(j)
        }
    }

    fn compute_y(&self, cost: &[f64]) -> Vec<f64> {
        let m = self.m;
        let mut y = vec![0.0; m];
        for (i, &b) in self.basis.iter().enumerate() {
            let c = cost[b];
            if c == 0.0 {
                continue;
            }
            let row = &self.binv[i * m..(i + 1) * m];
            for (yr, br) in y.iter_mut().zip(row) {
                *yr += c * br;
            }
        }
        y
    }

    fn reduced_cost(&self, j: usize, cost: &[f64], y: &[f64]) -> f64 {
        let mut d = cost[j];
        for &(r, v) in &self.cols[j] {
            d -= y[r] * v;
        }
        d
    }

    fn ftran(&self, j: usize) -> Vec<f64> {
        let m = self.m;
        let mut w = vec![0.0; m];
        for &(r, v) in &self.cols[j] {
            for i in 0..m {
                w[i] += self.binv[i * m + r] * v;
            }
        }
        w
    }

    /// Entering-variable selection. Returns `(column, direction)`.
    fn price(&self, cost: &[f64], y: &[f64]) -> Option<(usize, f64)> {
        let mut best: Option<(usize, f64, f64)> = None;
        for j in 0..self.ntot {
            if self.stat[j] == VStat::Basic || self.lo[j] == self.up[j] {
                continue;
            }
            let d = self.reduced_cost(j, cost, y);
            let dir = match self.stat[j] {
                VStat::AtLo => {
                    if d < -DUAL_TOL {
                        1.0
                    } else {
                        continue;
                    }
                }
                VStat::AtUp => {
                    if d > DUAL_TOL {
                        -1.0
                    } else {
                        continue;
                    }
                }
                VStat::Free => {
                    if d < -DUAL_TOL {
                        1.0
                    } else if d > DUAL_TOL {
                        -1.0
                    } else {
                        continue;
                    }
                }
                VStat::Basic => unreachable!(),
            };
            if self.bland {
                return Some((j, dir));
            }
            match best {
                Some((_, _, score)) if d.abs() <= score => {}
                _ => best = Some((j, dir, d.abs())),
            }
        }
        best.map(|(j, dir, _)| (j, dir))
    }

    /// Ratio test. Returns the step length, and the blocking row with the
    /// bound the leaving variable hits, or `None` in the row slot for a
    /// bound flip of the entering variable.
    fn ratio(&self, j: usize, dir: f64, w: &[f64]) -> Option<(f64, Option<(usize, bool)>)> {
        let mut t_best = if self.stat[j] == VStat::Free {
            f64::INFINITY
        } else {
            self.up[j] - self.lo[j]
        };
        let mut block: Option<(usize, bool, f64)> = None; // row, to_upper, |pivot|
        for i in 0..self.m {
            let rate = -dir * w[i];
            let (room, to_up) = if rate > PIVOT_TOL {
                let b = self.basis[i];
                if !self.up[b].is_finite() {
                    continue;
                }
                ((self.up[b] - self.xb[i]).max(0.0), true)
            } else if rate < -PIVOT_TOL {
                let b = self.basis[i];
                if !self.lo[b].is_finite() {
                    continue;
                }
                ((self.lo[b] - self.xb[i]).min(0.0), false)
            } else {
                continue;
            };
            let t = room / rate;
            if t < t_best - ZERO_STEP
                || (t <= t_best + ZERO_STEP
                    && better_block(&block, w[i], self.bland, self.basis[i], &self.basis))
            {
                t_best = t.min(t_best);
                block = Some((i, to_up, w[i].abs()));
            }
        }
        if t_best.is_infinite() {
            return None;
        }
        match block {
            Some((row, to_up, _)) => {
                // recompute the blocking step against the chosen row only
                let rate = -dir * w[row];
                let room = if to_up {
                    (self.up[self.basis[row]] - self.xb[row]).max(0.0)
                } else {
                    (self.lo[self.basis[row]] - self.xb[row]).min(0.0)
                };
                Some(((room / rate).max(0.0), Some((row, to_up))))
            }
            None => Some((t_best.max(0.0), None)),
        }
    }

    fn apply_flip(&mut self, j: usize, dir: f64, w: &[f64], t: f64) {
        for i in 0..self.m {
            self.xb[i] -= dir * t * w[i];
        }
        self.stat[j] = match self.stat[j] {
            VStat::AtLo => VStat::AtUp,
            VStat::AtUp => VStat::AtLo,
            other => other,
        };
    }

    fn apply_pivot(&mut self, j: usize, dir: f64, w: &[f64], t: f64, row: usize, to_up: bool) {
        let m = self.m;
        let entering_value = if self.stat[j] == VStat::Free {
            dir * t
        } else {
            self.nb_value(j) + dir * t
        };
        for i in 0..m {
            self.xb[i] -= dir * t * w[i];
        }
        let leaving = self.basis[row];
        self.stat[leaving] = if to_up { VStat::AtUp } else { VStat::AtLo };
        self.basis[row] = j;
        self.stat[j] = VStat::Basic;
        self.xb[row] = entering_value;
        // product-form update of the basis inverse
        let piv = w[row];
        let pivot_row: Vec<f64> = self.binv[row * m..(row + 1) * m].to_vec();
        for i in 0..m {
            if i == row {
                continue;
            }
            let f = w[i] / piv;
            if f == 0.0 {
                continue;
            }
            for r in 0..m {
                self.binv[i * m + r] -= f * pivot_row[r];
            }
        }
        for r in 0..m {
            self.binv[row * m + r] = pivot_row[r] / piv;
        }
        self.since_refactor += 1;
        if self.since_refactor >= REFACTOR_EVERY {
            self.refactorize();
        }
    }

    fn refactorize(&mut self) {
        let m = self.m;
        if m == 0 {
            return;
        }
        let mut b = Matrix::zeros(m, m);
        for (i, &v) in self.basis.iter().enumerate() {
            for &(r, val) in &self.cols[v] {
                b.set(r, i, val);
            }
        }
        if let Some(inv) = crate::linalg::solve_dense(&b, &Matrix::identity(m)) {
            for i in 0..m {
                for r in 0..m {
                    self.binv[i * m + r] = inv.get(i, r);
                }
            }
            // recompute basic values from scratch
            let mut resid = self.rhs.clone();
            for j in 0..self.ntot {
                if self.stat[j] == VStat::Basic {
                    continue;
                }
                let v = self.nb_value(j);
                if v == 0.0 {
                    continue;
                }
                for &(r, val) in &self.cols[j] {
                    resid[r] -= val * v;
                }
            }
            for i in 0..m {
                let mut s = 0.0;
                for r in 0..m {
                    s += self.binv[i * m + r] * resid[r];
                }
                self.xb[i] = s;
            }
        }
        self.since_refactor = 0;
    }

    fn run_phase(&mut self, cost: &[f64]) -> StepOutcome {
        loop {
            if self.iters >= self.limits.max_iters {
                return StepOutcome::IterationLimit;
            }
            if self.iters.is_multiple_of(64)
                && self.started.elapsed().as_secs_f64() > self.limits.max_seconds
            {
                return StepOutcome::TimeLimit;
            }
            let y = self.compute_y(cost);
            let Some((j, dir)) = self.price(cost, &y) else {
                return StepOutcome::Done;
            };
            let w = self.ftran(j);
            let Some((t, block)) = self.ratio(j, dir, &w) else {
                return StepOutcome::Unbounded;
            };
            self.iters += 1;
            if t <= ZERO_STEP {
                self.degen += 1;
                if self.degen > self.bland_threshold {
                    self.bland = true;
                }
            } else {
                self.degen = 0;
            }
            match block {
                None => self.apply_flip(j, dir, &w, t),
                Some((row, to_up)) => self.apply_pivot(j, dir, &w, t, row, to_up),
            }
        }
    }
}

fn better_block(
    current: &Option<(usize, bool, f64)>,
    w_i: f64,
    bland: bool,
    candidate_var: usize,
    basis: &[usize],
) -> bool {
    match current {
        None => true,
        Some((row, _, best_abs)) => {
            if bland {
                candidate_var < basis[*row]
            } else {
                w_i.abs() > *best_abs
            }
        }
    }
}

/// Two-phase bounded-variable primal simplex.
pub fn solve(p: &LpProblem, limits: &Limits) -> LpSolution {
    debug_assert_eq!(p.cols.len(), p.ncols);
    debug_assert_eq!(p.rhs.len(), p.nrows);
    let m = p.nrows;
    let nstruct = p.ncols;
    let internal_obj: Vec<f64> = match p.sense {
        ObjectiveSense::Min => p.objective.clone(),
        ObjectiveSense::Max => p.objective.iter().map(|c| -c).collect(),
    };

    // structural columns + one slack per row
    let mut cols = p.cols.clone();
    let mut lo = p.col_lower.clone();
    let mut up = p.col_upper.clone();
    for (i, sense) in p.row_sense.iter().enumerate() {
        cols.push(vec![(i, 1.0)]);
        match sense {
            Sense::Le => {
                lo.push(0.0);
                up.push(f64::INFINITY);
            }
            Sense::Ge => {
                lo.push(f64::NEG_INFINITY);
                up.push(0.0);
            }
            Sense::Eq => {
                lo.push(0.0);
                up.push(0.0);
            }
        }
    }

    let mut stat = Vec::with_capacity(nstruct + m);
    for j in 0..nstruct + m {
        if lo[j] > up[j] {
            return LpSolution::failed(LpStatus::Infeasible, nstruct, m, 0);
        }
        stat.push(if lo[j].is_finite() {
            VStat::AtLo
        } else if up[j].is_finite() {
            VStat::AtUp
        } else {
            VStat::Free
        });
    }

    // residual once every column sits at its starting value
    let mut resid = p.rhs.clone();
    for j in 0..nstruct + m {
        let v = match stat[j] {
            VStat::AtLo => lo[j],
            VStat::AtUp => up[j],
            _ => 0.0,
        };
        if v == 0.0 {
            continue;
        }
        for &(r, val) in &cols[j] {
            resid[r] -= val * v;
        }
    }

    // choose per row: slack basic when its bounds admit the residual,
    // otherwise an artificial carrying the residual
    let mut basis = Vec::with_capacity(m);
    let mut xb = Vec::with_capacity(m);
    let mut artificials = Vec::new();
    for i in 0..m {
        let s = nstruct + i;
        let rho = resid[i] + match stat[s] {
            VStat::AtLo => lo[s],
            VStat::AtUp => up[s],
            _ => 0.0,
        };
        if rho >= lo[s] - 1e-12 && rho <= up[s] + 1e-12 {
            stat[s] = VStat::Basic;
            basis.push(s);
            xb.push(rho.clamp(lo[s], up[s]));
        } else {
            let a = cols.len();
            let sign = if rho >= 0.0 { 1.0 } else { -1.0 };
            cols.push(vec![(i, sign)]);
            lo.push(0.0);
            up.push(f64::INFINITY);
            stat.push(VStat::Basic);
            basis.push(a);
            xb.push(rho.abs());
            artificials.push(a);
        }
    }

    let ntot = cols.len();
    let mut solver = Solver {
        m,
        ntot,
        cols,
        lo,
        up,
        rhs: p.rhs.clone(),
        stat,
        basis,
        binv: {
            let mut id = vec![0.0; m * m];
            for i in 0..m {
                id[i * m + i] = 1.0;
            }
            id
        },
        xb,
        iters: 0,
        degen: 0,
        bland: false,
        bland_threshold: 50 * (m + nstruct),
        since_refactor: 0,
        started: Instant::now(),
        limits: *limits,
    };
    // artificial columns may carry -1 coefficients, so the starting basis
    // matrix is not the identity in general
    solver.refactorize();

    let mut cost2 = internal_obj;
    cost2.resize(ntot, 0.0);

    if !artificials.is_empty() {
        let mut cost1 = vec![0.0; ntot];
        for &a in &artificials {
            cost1[a] = 1.0;
        }
        match solver.run_phase(&cost1) {
            StepOutcome::Done => {}
            StepOutcome::IterationLimit => {
                return LpSolution::failed(LpStatus::IterationLimit, nstruct, m, solver.iters)
            }
            StepOutcome::TimeLimit => {
                return LpSolution::failed(LpStatus::TimeLimit, nstruct, m, solver.iters)
            }
            StepOutcome::Unbounded => unreachable!("phase 1 is bounded below"),
        }
        let infeas: f64 = artificials.iter().map(|&a| solver.value(a)).sum();
        let scale = 1.0 + p.rhs.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        if infeas > 1e-7 * scale {
            return LpSolution::failed(LpStatus::Infeasible, nstruct, m, solver.iters);
        }
        // drive artificials out of the basis where a pivot column exists
        for r in 0..m {
            if !artificials.contains(&solver.basis[r]) {
                continue;
            }
            let mut entering = None;
            for j in 0..ntot {
                if solver.stat[j] == VStat::Basic || artificials.contains(&j) {
                    continue;
                }
                let w = solver.ftran(j);
                if w[r].abs() > 1e-7 {
                    entering = Some((j, w));
                    break;
                }
            }
            if let Some((j, _)) = entering {
                // a zero-length pivot: the entering column replaces the
                // artificial at its current nonbasic value
                let art = solver.basis[r];
                solver.basis[r] = j;
                solver.stat[j] = VStat::Basic;
                solver.stat[art] = VStat::AtLo;
                solver.refactorize();
            }
        }
        // freeze artificials at zero for phase 2
        for &a in &artificials {
            solver.lo[a] = 0.0;
            solver.up[a] = 0.0;
        }
        solver.bland = false;
        solver.degen = 0;
    }

    let status = match solver.run_phase(&cost2) {
        StepOutcome::Done => LpStatus::Optimal,
        StepOutcome::Unbounded => {
            return LpSolution::failed(LpStatus::Unbounded, nstruct, m, solver.iters)
        }
        StepOutcome::IterationLimit => {
            return LpSolution::failed(LpStatus::IterationLimit, nstruct, m, solver.iters)
        }
        StepOutcome::TimeLimit => {
            return LpSolution::failed(LpStatus::TimeLimit, nstruct, m, solver.iters)
        }
    };

    solver.refactorize();
    let mut x = vec![0.0; nstruct];
    for (j, xj) in x.iter_mut().enumerate() {
        *xj = solver.value(j);
    }
    let y_internal = solver.compute_y(&cost2);
    let y = match p.sense {
        ObjectiveSense::Min => y_internal,
        ObjectiveSense::Max => y_internal.iter().map(|v| -v).collect(),
    };
    let obj = p
        .objective
        .iter()
        .zip(&x)
        .map(|(c, v)| c * v)
        .sum::<f64>();
    LpSolution {
        status,
        x,
        y,
        obj,
        iterations: solver.iters,
    }
}

/// Phase-1 solve over a polyhedron: some point of `P`, or `None` when `P`
/// is verifiably empty. Resource limits surface as errors so callers can
/// downgrade to a no-reduction outcome.
pub fn find_feasible_point(p: &Polyhedron, limits: &Limits) -> Result<Option<Vec<f64>>, Error> {
    let n = p.nvars;
    let m_in = p.num_ineqs();
    let m_eq = p.num_eqs();
    let mut lp = LpProblem::new(n, m_in + m_eq);
    lp.col_lower = vec![f64::NEG_INFINITY; n];
    lp.col_upper = vec![f64::INFINITY; n];
    for j in 0..n {
        let mut col = Vec::new();
        for i in 0..m_in {
            let v = p.a_in.get(i, j);
            if v != 0.0 {
                col.push((i, v));
            }
        }
        for i in 0..m_eq {
            let v = p.a_eq.get(i, j);
            if v != 0.0 {
                col.push((m_in + i, v));
            }
        }
        lp.cols[j] = col;
    }
    for i in 0..m_in {
        lp.row_sense[i] = Sense::Le;
        lp.rhs[i] = p.b_in[i];
    }
    for i in 0..m_eq {
        lp.row_sense[m_in + i] = Sense::Eq;
        lp.rhs[m_in + i] = p.b_eq[i];
    }
    let sol = solve(&lp, limits);
    match sol.status {
        LpStatus::Optimal => Ok(Some(sol.x)),
        LpStatus::Infeasible => Ok(None),
        LpStatus::TimeLimit | LpStatus::IterationLimit => Err(Error::LpTimeLimit),
        LpStatus::Unbounded => unreachable!("feasibility phase has a constant objective"),
    }
}

/// Residual-based feasibility check used in tests and assertions.
pub fn primal_feasible(p: &LpProblem, x: &[f64], tol: f64) -> bool {
    if x.len() != p.ncols {
        return false;
    }
    for j in 0..p.ncols {
        if x[j] < p.col_lower[j] - tol || x[j] > p.col_upper[j] + tol {
            return false;
        }
    }
    let mut act = vec![0.0; p.nrows];
    for (j, col) in p.cols.iter().enumerate() {
        for &(r, v) in col {
            act[r] += v * x[j];
        }
    }
    act.iter()
        .zip(&p.rhs)
        .zip(&p.row_sense)
        .all(|((a, b), s)| match s {
            Sense::Le => *a <= *b + tol,
            Sense::Ge => *a >= *b - tol,
            Sense::Eq => (*a - *b).abs() <= tol,
        })
}
