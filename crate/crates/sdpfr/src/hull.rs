//! Affine hull of a polyhedron via implicit-equality detection.
//!
//! The workhorse is a single LP whose optimal solution has maximum support
//! among the dual certificates of `max {0 | x in P}`: an inequality row is
//! an implicit equality exactly when its certificate component hits 1.
//! A per-row LP method is provided as an independent oracle for tests.

use crate::linalg::{self, Matrix};
use crate::model::Polyhedron;
use crate::par;
use crate::simplex::{self, Limits, LpProblem, LpStatus};
use crate::{Error, ObjectiveSense, Sense};

/// Rows with slack above this at the reference point are excluded from the
/// detection LP up front.
pub const PREFILTER_SLACK_TOL: f64 = 1e-7;
/// A certificate component counts as 1 when it exceeds `1 - U_ROUND_TOL`.
pub const U_ROUND_TOL: f64 = 1e-6;

/// Implicit-equality detection result. `ambiguous` lists rows whose
/// certificate component landed strictly between the decision thresholds;
/// they are treated as non-implicit but surfaced for diagnostics.
#[derive(Clone, Debug)]
pub struct ImplicitEqualities {
    pub rows: Vec<usize>,
    pub ambiguous: Vec<usize>,
}

/// The affine hull `{x | A_full x = b_full}` of a polyhedron, together with
/// the lifted matrix `U` whose columns are the rows `(-b_i, a_i)` of a
/// maximal independent subsystem, so that `aff P = {x | U^T [1; x] = 0}`.
#[derive(Clone, Debug)]
pub struct AffineHull {
    pub implicit_rows: Vec<usize>,
    pub a_eq_full: Matrix,
    pub b_eq_full: Vec<f64>,
    /// Affine dimension of the hull.
    pub dim: usize,
    pub u: Matrix,
}

impl AffineHull {
    /// True when `c^T x = delta` holds identically on the hull.
    pub fn implies_equality(&self, c: &[f64], delta: f64) -> bool {
        linalg::in_affine_row_space(
            &self.a_eq_full,
            &self.b_eq_full,
            c,
            delta,
            linalg::DEFAULT_RANK_TOL,
        )
    }
}

/// Detects all implicit equalities of a nonempty polyhedron with one LP.
/// `prefilter_point` must be feasible when given; otherwise one is computed.
pub fn implicit_equalities(
    p: &Polyhedron,
    prefilter_point: Option<&[f64]>,
    limits: &Limits,
) -> Result<Vec<usize>, Error> {
    implicit_equalities_full(p, prefilter_point, limits).map(|r| r.rows)
}

/// As `implicit_equalities`, but also reports ambiguous certificate rows.
pub fn implicit_equalities_full(
    p: &Polyhedron,
    prefilter_point: Option<&[f64]>,
    limits: &Limits,
) -> Result<ImplicitEqualities, Error> {
    let owned_point;
    let point: &[f64] = match prefilter_point {
        Some(x) => x,
        None => {
            owned_point =
                simplex::find_feasible_point(p, limits)?.ok_or(Error::EmptyPolyhedron)?;
            &owned_point
        }
    };
    debug_assert!(p.contains(point, 1e-6), "prefilter point must be feasible");

    let n = p.nvars;
    let m_in = p.num_ineqs();
    let m_eq = p.num_eqs();
    // rows that are strictly slack at the reference point cannot be implicit
    let candidates: Vec<usize> = (0..m_in)
        .filter(|&i| p.slack(i, point) <= PREFILTER_SLACK_TOL)
        .collect();
    let k = candidates.len();
    if k == 0 {
        return Ok(ImplicitEqualities {
            rows: Vec::new(),
            ambiguous: Vec::new(),
        });
    }

    // max 1^T u  s.t. (u + v)^T [A_in b_in] + w^T [A_eq b_eq] = 0,
    //               0 <= u <= 1, v >= 0, w free
    // columns: u block | v block | w block; rows: n coefficient rows + rhs row
    let mut lp = LpProblem::new(2 * k + m_eq, n + 1);
    for (t, &row) in candidates.iter().enumerate() {
        let mut col = Vec::new();
        for j in 0..n {
            let v = p.a_in.get(row, j);
            if v != 0.0 {
                col.push((j, v));
            }
        }
        if p.b_in[row] != 0.0 {
            col.push((n, p.b_in[row]));
        }
        lp.cols[t] = col.clone();
        lp.cols[k + t] = col;
        lp.col_upper[t] = 1.0;
        lp.objective[t] = 1.0;
    }
    for i in 0..m_eq {
        let mut col = Vec::new();
        for j in 0..n {
            let v = p.a_eq.get(i, j);
            if v != 0.0 {
                col.push((j, v));
            }
        }
        if p.b_eq[i] != 0.0 {
            col.push((n, p.b_eq[i]));
        }
        lp.cols[2 * k + i] = col;
        lp.col_lower[2 * k + i] = f64::NEG_INFINITY;
    }
    for r in 0..n + 1 {
        lp.row_sense[r] = Sense::Eq;
    }
    lp.sense = ObjectiveSense::Max;

    let sol = simplex::solve(&lp, limits);
    match sol.status {
        LpStatus::Optimal => {}
        LpStatus::TimeLimit | LpStatus::IterationLimit => return Err(Error::LpTimeLimit),
        other => {
            return Err(Error::InvalidProgram(format!(
                "implicit-equality LP ended with {other:?}"
            )))
        }
    }

    let mut rows = Vec::new();
    let mut ambiguous = Vec::new();
    for (t, &row) in candidates.iter().enumerate() {
        let u = sol.x[t];
        if u >= 1.0 - U_ROUND_TOL {
            rows.push(row);
        } else if u > U_ROUND_TOL {
            ambiguous.push(row);
        }
    }
    Ok(ImplicitEqualities { rows, ambiguous })
}

/// Independent oracle: solves `max {b_i - a_i^T x | x in P}` for every row
/// and keeps the rows whose maximum slack is zero.
pub fn fukuda_oracle(p: &Polyhedron, limits: &Limits) -> Result<Vec<usize>, Error> {
    let m_in = p.num_ineqs();
    let verdicts = par::map_indices(m_in, |i| row_is_implicit(p, i, limits));
    let mut rows = Vec::new();
    for (i, v) in verdicts.into_iter().enumerate() {
        if v? {
            rows.push(i);
        }
    }
    Ok(rows)
}

fn row_is_implicit(p: &Polyhedron, row: usize, limits: &Limits) -> Result<bool, Error> {
    let n = p.nvars;
    let m_in = p.num_ineqs();
    let m_eq = p.num_eqs();
    let mut lp = LpProblem::new(n, m_in + m_eq);
    lp.col_lower = vec![f64::NEG_INFINITY; n];
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
        // maximize the slack b_row - a_row^T x
        lp.objective[j] = -p.a_in.get(row, j);
    }
    for i in 0..m_in {
        lp.rhs[i] = p.b_in[i];
    }
    for i in 0..m_eq {
        lp.row_sense[m_in + i] = Sense::Eq;
        lp.rhs[m_in + i] = p.b_eq[i];
    }
    lp.sense = ObjectiveSense::Max;
    let sol = simplex::solve(&lp, limits);
    match sol.status {
        LpStatus::Optimal => Ok(p.b_in[row] + sol.obj <= PREFILTER_SLACK_TOL),
        LpStatus::Unbounded => Ok(false),
        LpStatus::TimeLimit | LpStatus::IterationLimit => Err(Error::LpTimeLimit),
        LpStatus::Infeasible => Err(Error::EmptyPolyhedron),
    }
}

/// Stacks the equality subsystem with the implicit inequality rows and
/// extracts a full-column-rank lifted matrix `U`.
pub fn build_affine_hull(p: &Polyhedron, implicit: &[usize]) -> AffineHull {
    let n = p.nvars;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut rhs: Vec<f64> = Vec::new();
    for i in 0..p.num_eqs() {
        rows.push(p.a_eq.row(i).to_vec());
        rhs.push(p.b_eq[i]);
    }
    for &i in implicit {
        rows.push(p.a_in.row(i).to_vec());
        rhs.push(p.b_in[i]);
    }
    let a_full = if rows.is_empty() {
        Matrix::zeros(0, n)
    } else {
        Matrix::from_rows(&rows)
    };
    // candidate U columns (-b_i, a_i); a maximal independent subset in
    // input order keeps U full column rank
    let cols: Vec<Vec<f64>> = rows
        .iter()
        .zip(&rhs)
        .map(|(a, &b)| {
            let mut c = Vec::with_capacity(n + 1);
            c.push(-b);
            c.extend_from_slice(a);
            c
        })
        .collect();
    let candidates = Matrix::from_columns(n + 1, &cols);
    let elim = linalg::row_reduce(&candidates, linalg::DEFAULT_RANK_TOL);
    let u = candidates.select_columns(&elim.pivot_columns);
    debug_assert!(elim.rank <= n, "hull rank exceeds variable count");
    AffineHull {
        implicit_rows: implicit.to_vec(),
        a_eq_full: a_full,
        b_eq_full: rhs,
        dim: n - elim.rank,
        u,
    }
}

/// Convenience: feasibility check, implicit-equality LP and hull assembly.
pub fn affine_hull(p: &Polyhedron, limits: &Limits) -> Result<AffineHull, Error> {
    let point = simplex::find_feasible_point(p, limits)?.ok_or(Error::EmptyPolyhedron)?;
    let implicit = implicit_equalities(p, Some(&point), limits)?;
    Ok(build_affine_hull(p, &implicit))
}

/// Variables forced to 0 (`I+`) or to 1 (`I-`) everywhere on the hull.
/// An affine function vanishing on `P` vanishes on `aff P`, so row-space
/// membership of `(e_i, 0)` and `(e_i, 1)` decides both sets.
pub fn detect_fixed_variables(h: &AffineHull) -> (Vec<usize>, Vec<usize>) {
    let n = h.a_eq_full.ncols();
    let stacked = h.a_eq_full.hstack_col(&h.b_eq_full);
    let elim = linalg::row_reduce(&stacked, linalg::DEFAULT_RANK_TOL);
    let mut fixed_zero = Vec::new();
    let mut fixed_one = Vec::new();
    for i in 0..n {
        for (target, bucket) in [(0.0, &mut fixed_zero), (1.0, &mut fixed_one)] {
            let mut t = vec![0.0; n + 1];
            t[i] = 1.0;
            t[n] = target;
            linalg::reduce_against_rref(&elim, &mut t);
            if t.iter().all(|v| v.abs() <= 1e-8) {
                bucket.push(i);
            }
        }
    }
    (fixed_zero, fixed_one)
}
