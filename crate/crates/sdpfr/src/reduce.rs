//! The reduction engines: affine reduction from the affine hull, partial
//! reduction over the diagonal and diagonally-dominant dual cones, and the
//! sieve presolve, plus the generic one-step reformulation `Y = V R V^T`.

use std::time::Instant;

use crate::hull::{self, AffineHull};
use crate::linalg::{self, Matrix, PsdClass};
use crate::model::{
    ConSense, Coord, ExposingVector, FacialRangeVector, Method, MixedBinaryProgram, Polyhedron,
    ReductionReport, ReductionStatus, SdpProblem, SymMatrix,
};
use crate::simplex::{self, Limits, LpProblem, LpStatus};
use crate::{Error, ObjectiveSense, Sense};

/// A constraint matrix vanishing below this absolute tolerance is treated
/// as zero when deciding drops and infeasibility flags.
pub const DROP_TOL: f64 = 1e-10;

/// Tolerances and limits shared by the engines.
#[derive(Clone, Copy, Debug)]
pub struct FrConfig {
    pub limits: Limits,
    pub tol_rank: f64,
    pub tol_feas: f64,
}

impl Default for FrConfig {
    fn default() -> Self {
        FrConfig {
            limits: Limits::default(),
            tol_rank: linalg::DEFAULT_RANK_TOL,
            tol_feas: 1e-8,
        }
    }
}

/// Outcome of the substitution `Y = V R V^T` applied to every constraint.
#[derive(Clone, Debug)]
pub struct ReducedSdp {
    pub problem: SdpProblem,
    pub range_vector: FacialRangeVector,
    /// Tags of constraints whose reduced matrix vanished benignly.
    pub dropped_constraints: Vec<String>,
    /// Set when a vanished matrix pairs with an unsatisfiable sense/rhs.
    pub infeasibility_flag: bool,
}

impl ReducedSdp {
    fn unchanged(sdp: &SdpProblem) -> Self {
        ReducedSdp {
            problem: sdp.clone(),
            range_vector: FacialRangeVector::identity(sdp.order),
            dropped_constraints: Vec::new(),
            infeasibility_flag: false,
        }
    }
}

/// One engine run: the exposing vector it found, the reduced problem, and
/// the reduction report.
#[derive(Clone, Debug)]
pub struct FrOutcome {
    pub exposing: ExposingVector,
    pub reduced: ReducedSdp,
    pub report: ReductionReport,
}

/// Sieve run: one exposing vector per deleted block, in detection order.
#[derive(Clone, Debug)]
pub struct SieveOutcome {
    pub exposing: Vec<ExposingVector>,
    pub reduced: ReducedSdp,
    pub report: ReductionReport,
}

/// Maps every constraint and the objective through `M -> V^T M V`.
/// Vanished matrices are dropped when their sense/rhs pair stays valid,
/// and flag infeasibility otherwise.
pub fn reformulate(sdp: &SdpProblem, v: &FacialRangeVector) -> Result<ReducedSdp, Error> {
    if v.matrix().nrows() != sdp.order {
        return Err(Error::DimensionMismatch {
            expected: sdp.order,
            got: v.matrix().nrows(),
        });
    }
    let vm = v.matrix();
    let r = v.reduced_order();
    let mut problem = SdpProblem::new(r);
    problem.index_map = reduced_index_map(sdp, vm);
    let mut dropped = Vec::new();
    let mut infeasible = false;
    for c in &sdp.constraints {
        let m = c.matrix.congruence(vm);
        if m.is_zero(DROP_TOL) {
            let benign = match c.sense {
                ConSense::Le => c.rhs >= -DROP_TOL,
                ConSense::Eq => c.rhs.abs() <= DROP_TOL,
            };
            if benign {
                dropped.push(c.tag.clone());
                continue;
            }
            infeasible = true;
        }
        problem.push(m, c.sense, c.rhs, &c.tag);
    }
    problem.objective = sdp.objective.as_ref().map(|o| o.congruence(vm));
    Ok(ReducedSdp {
        problem,
        range_vector: v.clone(),
        dropped_constraints: dropped,
        infeasibility_flag: infeasible,
    })
}

fn reduced_index_map(sdp: &SdpProblem, vm: &Matrix) -> Vec<Coord> {
    (0..vm.ncols())
        .map(|k| {
            let col = vm.column(k);
            let nonzeros: Vec<usize> = (0..vm.nrows()).filter(|&i| col[i] != 0.0).collect();
            match nonzeros.as_slice() {
                [single] if col[*single] == 1.0 => sdp.index_map[*single],
                _ => Coord::Basis(k),
            }
        })
        .collect()
}

enum HullAttempt {
    Ok(Box<AffineHull>),
    Empty,
    TimedOut,
}

fn try_hull(p: &Polyhedron, limits: &Limits) -> Result<HullAttempt, Error> {
    match simplex::find_feasible_point(p, limits) {
        Ok(Some(point)) => match hull::implicit_equalities(p, Some(&point), limits) {
            Ok(implicit) => Ok(HullAttempt::Ok(Box::new(hull::build_affine_hull(
                p, &implicit,
            )))),
            Err(Error::LpTimeLimit) => Ok(HullAttempt::TimedOut),
            Err(e) => Err(e),
        },
        Ok(None) => Ok(HullAttempt::Empty),
        Err(Error::LpTimeLimit) => Ok(HullAttempt::TimedOut),
        Err(e) => Err(e),
    }
}

fn bail(method: Method, sdp: &SdpProblem, status: ReductionStatus, t0: Instant) -> FrOutcome {
    let mut report = ReductionReport::no_change(method, sdp.order, status);
    report.prep_seconds = t0.elapsed().as_secs_f64();
    FrOutcome {
        exposing: ExposingVector::zero(sdp.order),
        reduced: ReducedSdp::unchanged(sdp),
        report,
    }
}

/// Affine reduction: exposes with `W = U U^T` from the affine hull of `P`
/// and substitutes onto the null space of `U^T`. A single step; reduces the
/// order from `n+1` to `dim(aff P) + 1`.
pub fn affine_fr(program: &MixedBinaryProgram, sdp: &SdpProblem, cfg: &FrConfig) -> FrOutcome {
    let t0 = Instant::now();
    let p = program.to_polyhedron();
    affine_fr_on(&p, sdp, cfg, t0)
}

/// As `affine_fr` over an explicitly given inequality system.
pub fn affine_fr_on(p: &Polyhedron, sdp: &SdpProblem, cfg: &FrConfig, t0: Instant) -> FrOutcome {
    let h = match try_hull(p, &cfg.limits) {
        Ok(HullAttempt::Ok(h)) => *h,
        Ok(HullAttempt::Empty) => {
            return bail(Method::Affine, sdp, ReductionStatus::InfeasibleDetected, t0)
        }
        Ok(HullAttempt::TimedOut) => {
            return bail(Method::Affine, sdp, ReductionStatus::LpTimeLimit, t0)
        }
        Err(e) => panic!("affine reduction failed: {e}"),
    };
    let exposing = ExposingVector::from_factor(h.u.clone(), cfg.tol_rank)
        .expect("hull factor has independent columns");
    let v_mat = linalg::null_space_basis(&h.u.transpose(), cfg.tol_rank);
    let v = FacialRangeVector::new(v_mat, &exposing)
        .expect("null-space basis complements the exposing vector");
    let reduced = reformulate(sdp, &v).expect("orders match");
    let (zeros, ones) = hull::detect_fixed_variables(&h);
    let reduced_order = v.reduced_order();
    let report = ReductionReport {
        method: Method::Affine,
        original_order: sdp.order,
        reduced_order,
        ratio: reduced_order as f64 / sdp.order as f64,
        implicit_equalities: h.implicit_rows.clone(),
        fixed_zero: zeros,
        fixed_one: ones,
        prep_seconds: t0.elapsed().as_secs_f64(),
        status: if reduced_order < sdp.order {
            ReductionStatus::Reduced
        } else {
            ReductionStatus::NoReduction
        },
    };
    FrOutcome {
        exposing,
        reduced,
        report,
    }
}

/// Partial reduction over the diagonal dual cone: removes the rows/columns
/// of binary variables fixed at zero on `P`. Terminates in one step.
pub fn pfr_d(program: &MixedBinaryProgram, sdp: &SdpProblem, cfg: &FrConfig) -> FrOutcome {
    let t0 = Instant::now();
    let p = program.to_polyhedron();
    pfr_d_on(program, &p, sdp, cfg, t0)
}

pub fn pfr_d_on(
    program: &MixedBinaryProgram,
    p: &Polyhedron,
    sdp: &SdpProblem,
    cfg: &FrConfig,
    t0: Instant,
) -> FrOutcome {
    let h = match try_hull(p, &cfg.limits) {
        Ok(HullAttempt::Ok(h)) => *h,
        Ok(HullAttempt::Empty) => {
            return bail(Method::PfrD, sdp, ReductionStatus::InfeasibleDetected, t0)
        }
        Ok(HullAttempt::TimedOut) => {
            return bail(Method::PfrD, sdp, ReductionStatus::LpTimeLimit, t0)
        }
        Err(e) => panic!("partial reduction failed: {e}"),
    };
    let (zeros, _ones) = hull::detect_fixed_variables(&h);
    // only binary variables carry the diagonal certificate
    let zeros_b: Vec<usize> = zeros
        .into_iter()
        .filter(|&i| program.is_binary(i))
        .collect();
    let order = sdp.order;
    if zeros_b.is_empty() {
        let mut out = bail(Method::PfrD, sdp, ReductionStatus::NoReduction, t0);
        out.report.implicit_equalities = h.implicit_rows;
        return out;
    }
    let u_cols: Vec<Vec<f64>> = zeros_b
        .iter()
        .map(|&i| {
            let mut c = vec![0.0; order];
            c[i + 1] = 1.0;
            c
        })
        .collect();
    let exposing = ExposingVector::from_factor(Matrix::from_columns(order, &u_cols), cfg.tol_rank)
        .expect("unit columns are independent");
    let keep: Vec<usize> = (0..order)
        .filter(|&c| c == 0 || !zeros_b.contains(&(c - 1)))
        .collect();
    let v = FacialRangeVector::selection(order, &keep);
    let reduced = reformulate(sdp, &v).expect("orders match");
    let reduced_order = v.reduced_order();
    let report = ReductionReport {
        method: Method::PfrD,
        original_order: order,
        reduced_order,
        ratio: reduced_order as f64 / order as f64,
        implicit_equalities: h.implicit_rows.clone(),
        fixed_zero: zeros_b,
        fixed_one: Vec::new(),
        prep_seconds: t0.elapsed().as_secs_f64(),
        status: ReductionStatus::Reduced,
    };
    FrOutcome {
        exposing,
        reduced,
        report,
    }
}

/// Partial reduction over the diagonally-dominant dual cone: removes binary
/// variables fixed at zero or one on `P`. The exposing vector couples the
/// fixed-at-one block with the homogenization row. Terminates in one step.
pub fn pfr_dd(program: &MixedBinaryProgram, sdp: &SdpProblem, cfg: &FrConfig) -> FrOutcome {
    let t0 = Instant::now();
    let p = program.to_polyhedron();
    pfr_dd_on(program, &p, sdp, cfg, t0)
}

pub fn pfr_dd_on(
    program: &MixedBinaryProgram,
    p: &Polyhedron,
    sdp: &SdpProblem,
    cfg: &FrConfig,
    t0: Instant,
) -> FrOutcome {
    let h = match try_hull(p, &cfg.limits) {
        Ok(HullAttempt::Ok(h)) => *h,
        Ok(HullAttempt::Empty) => {
            return bail(Method::PfrDd, sdp, ReductionStatus::InfeasibleDetected, t0)
        }
        Ok(HullAttempt::TimedOut) => {
            return bail(Method::PfrDd, sdp, ReductionStatus::LpTimeLimit, t0)
        }
        Err(e) => panic!("partial reduction failed: {e}"),
    };
    let (zeros, ones) = hull::detect_fixed_variables(&h);
    let zeros_b: Vec<usize> = zeros
        .into_iter()
        .filter(|&i| program.is_binary(i))
        .collect();
    let ones_b: Vec<usize> = ones
        .into_iter()
        .filter(|&i| program.is_binary(i))
        .collect();
    let order = sdp.order;
    if zeros_b.is_empty() && ones_b.is_empty() {
        let mut out = bail(Method::PfrDd, sdp, ReductionStatus::NoReduction, t0);
        out.report.implicit_equalities = h.implicit_rows;
        return out;
    }
    // factor columns: (-e_0 + e_{i+1}) per fixed-at-one i, e_{i+1} per
    // fixed-at-zero i; the permuted block form has rank p + q
    let mut u_cols: Vec<Vec<f64>> = Vec::with_capacity(ones_b.len() + zeros_b.len());
    for &i in &ones_b {
        let mut c = vec![0.0; order];
        c[0] = -1.0;
        c[i + 1] = 1.0;
        u_cols.push(c);
    }
    for &i in &zeros_b {
        let mut c = vec![0.0; order];
        c[i + 1] = 1.0;
        u_cols.push(c);
    }
    let exposing = ExposingVector::from_factor(Matrix::from_columns(order, &u_cols), cfg.tol_rank)
        .expect("block factor has independent columns");
    // range vector: the all-ones column over {0} u ones, then the identity
    // on surviving coordinates
    let mut v_cols: Vec<Vec<f64>> = Vec::new();
    let mut lead = vec![0.0; order];
    lead[0] = 1.0;
    for &i in &ones_b {
        lead[i + 1] = 1.0;
    }
    v_cols.push(lead);
    for c in 1..order {
        let var = c - 1;
        if !zeros_b.contains(&var) && !ones_b.contains(&var) {
            let mut col = vec![0.0; order];
            col[c] = 1.0;
            v_cols.push(col);
        }
    }
    let v = FacialRangeVector::new(Matrix::from_columns(order, &v_cols), &exposing)
        .expect("range vector complements the block exposing vector");
    let reduced = reformulate(sdp, &v).expect("orders match");
    let reduced_order = v.reduced_order();
    let report = ReductionReport {
        method: Method::PfrDd,
        original_order: order,
        reduced_order,
        ratio: reduced_order as f64 / order as f64,
        implicit_equalities: h.implicit_rows.clone(),
        fixed_zero: zeros_b,
        fixed_one: ones_b,
        prep_seconds: t0.elapsed().as_secs_f64(),
        status: ReductionStatus::Reduced,
    };
    FrOutcome {
        exposing,
        reduced,
        report,
    }
}

/// Sieve presolve: repeatedly looks for a zero-rhs constraint whose nonzero
/// support forms a positive definite principal block, and deletes that
/// block's rows and columns everywhere. Constraints are scanned in input
/// order and the first match is applied.
pub fn sieve(sdp: &SdpProblem, cfg: &FrConfig) -> SieveOutcome {
    let t0 = Instant::now();
    let order = sdp.order;
    let mut kept: Vec<usize> = (0..order).collect();
    let mut work = sdp.clone();
    let mut exposing: Vec<ExposingVector> = Vec::new();
    loop {
        let mut found: Option<(usize, Vec<usize>)> = None;
        for (ci, c) in work.constraints.iter().enumerate() {
            if c.rhs.abs() > 1e-12 {
                continue;
            }
            let mut support: Vec<usize> = Vec::new();
            for &(i, j, _) in c.matrix.entries() {
                if !support.contains(&i) {
                    support.push(i);
                }
                if !support.contains(&j) {
                    support.push(j);
                }
            }
            if support.is_empty() {
                continue;
            }
            support.sort_unstable();
            let d = principal_submatrix(&c.matrix, &support);
            if linalg::psd_factor(&d, cfg.tol_rank).class == PsdClass::PositiveDefinite {
                found = Some((ci, support));
                break;
            }
        }
        let Some((ci, support)) = found else { break };
        let d = principal_submatrix(&work.constraints[ci].matrix, &support);
        let l = linalg::cholesky(&d, cfg.tol_rank).expect("block verified positive definite");
        let k = support.len();
        let mut u = Matrix::zeros(order, k);
        for (local, &cur) in support.iter().enumerate() {
            for col in 0..k {
                u.set(kept[cur], col, l.get(local, col));
            }
        }
        exposing.push(
            ExposingVector::from_factor(u, cfg.tol_rank)
                .expect("Cholesky factor has independent columns"),
        );
        let keep_local: Vec<usize> = (0..work.order)
            .filter(|c| !support.contains(c))
            .collect();
        kept = keep_local.iter().map(|&c| kept[c]).collect();
        work = restrict(&work, &keep_local);
    }
    let v = FacialRangeVector::selection(order, &kept);
    let reduced = reformulate(sdp, &v).expect("orders match");
    let reduced_order = kept.len();
    let report = ReductionReport {
        method: Method::Sieve,
        original_order: order,
        reduced_order,
        ratio: reduced_order as f64 / order as f64,
        implicit_equalities: Vec::new(),
        fixed_zero: Vec::new(),
        fixed_one: Vec::new(),
        prep_seconds: t0.elapsed().as_secs_f64(),
        status: if reduced_order < order {
            ReductionStatus::Reduced
        } else {
            ReductionStatus::NoReduction
        },
    };
    SieveOutcome {
        exposing,
        reduced,
        report,
    }
}

fn principal_submatrix(m: &SymMatrix, support: &[usize]) -> Matrix {
    let k = support.len();
    let mut d = Matrix::zeros(k, k);
    for (a, &i) in support.iter().enumerate() {
        for (b, &j) in support.iter().enumerate() {
            d.set(a, b, m.get(i, j));
        }
    }
    d
}

fn restrict(sdp: &SdpProblem, keep: &[usize]) -> SdpProblem {
    let mut pos = vec![None; sdp.order];
    for (new, &old) in keep.iter().enumerate() {
        pos[old] = Some(new);
    }
    let remap = |m: &SymMatrix| {
        let entries: Vec<(usize, usize, f64)> = m
            .entries()
            .iter()
            .filter_map(|&(i, j, v)| match (pos[i], pos[j]) {
                (Some(a), Some(b)) => Some((a, b, v)),
                _ => None,
            })
            .collect();
        SymMatrix::from_entries(keep.len(), &entries)
    };
    let mut out = SdpProblem::new(keep.len());
    out.index_map = keep.iter().map(|&i| sdp.index_map[i]).collect();
    for c in &sdp.constraints {
        out.push(remap(&c.matrix), c.sense, c.rhs, &c.tag);
    }
    out.objective = sdp.objective.as_ref().map(&remap);
    out
}

/// Which separation cone a certificate is checked against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertCone {
    /// Diagonal matrices with nonnegative diagonal.
    Diagonal,
    /// Diagonally dominant symmetric matrices.
    DiagonallyDominant,
}

/// Test-side helper: decides whether `w` is a valid separation certificate
/// for the lifted system of `p` over the given cone, by recovering the
/// multipliers from the matrix shape and solving an LP feasibility problem.
pub fn verify_sep_membership(
    w: &SymMatrix,
    p: &Polyhedron,
    cone: CertCone,
    limits: &Limits,
) -> bool {
    let n = p.nvars;
    if w.order() != n + 1 {
        return false;
    }
    let tol = 1e-9;
    // the certificate shape forces zeros off the diagonal of the lower block
    for &(i, j, v) in w.entries() {
        if i >= 1 && j > i && v.abs() > tol {
            return false;
        }
    }
    let head = w.get(0, 0);
    let diag: Vec<f64> = (0..n).map(|i| w.get(i + 1, i + 1)).collect();
    let border: Vec<f64> = (0..n).map(|i| w.get(0, i + 1)).collect();
    match cone {
        CertCone::Diagonal => {
            if head.abs() > tol || border.iter().any(|v| v.abs() > tol) {
                return false;
            }
            if diag.iter().any(|&v| v < -tol) {
                return false;
            }
            multiplier_exists(p, &diag, 0.0, limits)
        }
        CertCone::DiagonallyDominant => {
            let target: Vec<f64> = diag
                .iter()
                .zip(&border)
                .map(|(z, g)| z + 2.0 * g)
                .collect();
            let border_sum: f64 = border.iter().map(|g| g.abs()).sum();
            if head < border_sum - tol {
                return false;
            }
            if diag.iter().zip(&border).any(|(z, g)| *z < g.abs() - tol) {
                return false;
            }
            multiplier_exists(p, &target, -head, limits)
        }
    }
}

/// LP feasibility: exists `y >= 0` (and free multipliers on equality rows)
/// with `A^T y = target` and `b^T y = rhs_value`.
fn multiplier_exists(p: &Polyhedron, target: &[f64], rhs_value: f64, limits: &Limits) -> bool {
    let n = p.nvars;
    let m_in = p.num_ineqs();
    let m_eq = p.num_eqs();
    let mut lp = LpProblem::new(m_in + m_eq, n + 1);
    for t in 0..m_in {
        let mut col = Vec::new();
        for j in 0..n {
            let v = p.a_in.get(t, j);
            if v != 0.0 {
                col.push((j, v));
            }
        }
        if p.b_in[t] != 0.0 {
            col.push((n, p.b_in[t]));
        }
        lp.cols[t] = col;
    }
    for t in 0..m_eq {
        let mut col = Vec::new();
        for j in 0..n {
            let v = p.a_eq.get(t, j);
            if v != 0.0 {
                col.push((j, v));
            }
        }
        if p.b_eq[t] != 0.0 {
            col.push((n, p.b_eq[t]));
        }
        lp.cols[m_in + t] = col;
        lp.col_lower[m_in + t] = f64::NEG_INFINITY;
    }
    for r in 0..n {
        lp.row_sense[r] = Sense::Eq;
        lp.rhs[r] = target[r];
    }
    lp.row_sense[n] = Sense::Eq;
    lp.rhs[n] = rhs_value;
    lp.sense = ObjectiveSense::Min;
    simplex::solve(&lp, limits).status == LpStatus::Optimal
}
