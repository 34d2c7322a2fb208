//! Brute-force ground truth at desk scale: feasible-set enumeration,
//! exposing-vector validation, Slater certificates for reduced problems,
//! and a seeded random-instance generator.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{self, Matrix, PsdClass};
use crate::model::{MixedBinaryProgram, Row, SymMatrix};
use crate::par;
use crate::reduce::ReducedSdp;
use crate::simplex::{self, Limits, LpProblem, LpStatus};
use crate::{ObjectiveSense, Sense};

/// Default cap on the number of 0/1 patterns visited.
pub const DEFAULT_ENUM_LIMIT: usize = 1 << 20;

const PATTERN_CHUNK: usize = 1 << 12;

/// All feasible points found by exhaustive 0/1 assignment of the binary
/// variables. For mixed programs each stored point carries an LP witness in
/// the continuous coordinates. `complete` is false when the pattern limit
/// was hit before the search space was exhausted.
#[derive(Clone, Debug)]
pub struct EnumeratedFeasibleSet {
    pub points: Vec<Vec<f64>>,
    pub complete: bool,
}

impl EnumeratedFeasibleSet {
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }
}

/// Enumerates the binary feasible set of a normalized program, visiting at
/// most `limit` patterns. Pattern chunks are evaluated in parallel and
/// merged in pattern order, so the result is deterministic.
pub fn enumerate_f(program: &MixedBinaryProgram, limit: usize) -> EnumeratedFeasibleSet {
    assert!(program.is_normalized(), "normalize() the program first");
    let k = program.binary_set.len();
    assert!(k < usize::BITS as usize, "too many binary variables");
    let total: usize = 1 << k;
    let visit = total.min(limit);
    let chunks = visit.div_ceil(PATTERN_CHUNK);
    let found = par::map_indices(chunks, |chunk| {
        let lo = chunk * PATTERN_CHUNK;
        let hi = ((chunk + 1) * PATTERN_CHUNK).min(visit);
        let mut local = Vec::new();
        for pattern in lo..hi {
            if let Some(x) = witness_for_pattern(program, pattern) {
                local.push(x);
            }
        }
        local
    });
    EnumeratedFeasibleSet {
        points: found.into_iter().flatten().collect(),
        complete: visit == total,
    }
}

/// Fixes the binary variables according to `pattern` and finds a feasible
/// completion, directly for pure-binary programs and by a phase-1 LP over
/// the continuous block otherwise.
fn witness_for_pattern(program: &MixedBinaryProgram, pattern: usize) -> Option<Vec<f64>> {
    let n = program.nvars;
    let mut x = vec![f64::NAN; n];
    for (bit, &var) in program.binary_set.iter().enumerate() {
        let v = if pattern >> bit & 1 == 1 { 1.0 } else { 0.0 };
        if v < program.lower[var] || v > program.upper[var] {
            return None;
        }
        x[var] = v;
    }
    if program.is_pure_binary() {
        return program.satisfies(&x, 1e-9).then_some(x);
    }

    let cont: Vec<usize> = (0..n).filter(|&i| !program.is_binary(i)).collect();
    let mut lp = LpProblem::new(cont.len(), program.rows.len());
    for (cj, &var) in cont.iter().enumerate() {
        lp.col_lower[cj] = program.lower[var];
        lp.col_upper[cj] = program.upper[var];
    }
    for (ri, row) in program.rows.iter().enumerate() {
        lp.row_sense[ri] = row.sense;
        let mut rhs = row.rhs;
        for &(var, coef) in &row.coeffs {
            match cont.binary_search(&var) {
                Ok(cj) => lp.cols[cj].push((ri, coef)),
                Err(_) => rhs -= coef * x[var],
            }
        }
        lp.rhs[ri] = rhs;
    }
    let sol = simplex::solve(&lp, &Limits::default());
    if sol.status != LpStatus::Optimal {
        return None;
    }
    for (cj, &var) in cont.iter().enumerate() {
        x[var] = sol.x[cj];
    }
    debug_assert!(program.satisfies(&x, 1e-6));
    Some(x)
}

/// True iff `|[1;x]^T W [1;x]| <= tol` for every enumerated point.
pub fn check_exposing(w: &SymMatrix, f: &EnumeratedFeasibleSet, tol: f64) -> bool {
    max_lift_residual(w, f) <= tol
}

/// Largest `|[1;x]^T W [1;x]|` over the enumerated points.
pub fn max_lift_residual(w: &SymMatrix, f: &EnumeratedFeasibleSet) -> f64 {
    f.points
        .iter()
        .map(|x| {
            let mut lifted = Vec::with_capacity(x.len() + 1);
            lifted.push(1.0);
            lifted.extend_from_slice(x);
            w.quad_form(&lifted).abs()
        })
        .fold(0.0, f64::max)
}

/// Outcome of the Slater-restoration certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlaterOutcome {
    Restored,
    NotCertified,
}

/// Certificate with the evidence attached: the average reduced lift and the
/// pivots of its factorization.
#[derive(Clone, Debug)]
pub struct SlaterCertificate {
    pub outcome: SlaterOutcome,
    pub min_pivot: f64,
}

/// Lifts every enumerated point into the reduced coordinates through the
/// normal equations of `V`, averages, and checks the average for positive
/// definiteness. Rank-deficient averages leave the certificate undecided.
pub fn slater_certificate(
    reduced: &ReducedSdp,
    f: &EnumeratedFeasibleSet,
) -> SlaterCertificate {
    if !f.complete || f.is_empty() {
        return SlaterCertificate {
            outcome: SlaterOutcome::NotCertified,
            min_pivot: 0.0,
        };
    }
    let v = reduced.range_vector.matrix();
    let r = v.ncols();
    if r == 0 {
        return SlaterCertificate {
            outcome: SlaterOutcome::NotCertified,
            min_pivot: 0.0,
        };
    }
    let gram = v.transpose().matmul(v);
    let Some(gram_inv) = linalg::solve_dense(&gram, &Matrix::identity(r)) else {
        return SlaterCertificate {
            outcome: SlaterOutcome::NotCertified,
            min_pivot: 0.0,
        };
    };
    let mut avg = Matrix::zeros(r, r);
    for x in &f.points {
        let mut lifted = Vec::with_capacity(x.len() + 1);
        lifted.push(1.0);
        lifted.extend_from_slice(x);
        // R_x = G^-1 V^T Y V G^-1 with Y = lifted lifted^T
        let vt_l = v.transpose().matvec(&lifted);
        let h = gram_inv.matvec(&vt_l);
        for i in 0..r {
            for j in 0..r {
                avg.set(i, j, avg.get(i, j) + h[i] * h[j]);
            }
        }
    }
    let scale = 1.0 / f.len() as f64;
    let mut avg_scaled = Matrix::zeros(r, r);
    for i in 0..r {
        for j in 0..r {
            avg_scaled.set(i, j, avg.get(i, j) * scale);
        }
    }
    let rep = linalg::psd_factor(&avg_scaled, 1e-9);
    let min_pivot = rep.pivots.iter().copied().fold(f64::INFINITY, f64::min);
    if rep.class == PsdClass::PositiveDefinite {
        SlaterCertificate {
            outcome: SlaterOutcome::Restored,
            min_pivot,
        }
    } else {
        SlaterCertificate {
            outcome: SlaterOutcome::NotCertified,
            min_pivot: if rep.pivots.is_empty() { 0.0 } else { min_pivot },
        }
    }
}

/// Deterministic random mixed-binary instance anchored at a feasible 0/1
/// point: integer coefficients in [-3, 3], and a configurable fraction of
/// rows made tight at the anchor to induce implicit equalities.
pub fn gen_random(nvars: usize, nrows: usize, seed: u64) -> MixedBinaryProgram {
    gen_random_with(nvars, nrows, 0.3, seed)
}

pub fn gen_random_with(
    nvars: usize,
    nrows: usize,
    tight_fraction: f64,
    seed: u64,
) -> MixedBinaryProgram {
    assert!(nvars <= 24, "generator is desk-scale only");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let anchor: Vec<f64> = (0..nvars)
        .map(|_| if rng.random_range(0..2) == 1 { 1.0 } else { 0.0 })
        .collect();
    let mut rows = Vec::with_capacity(nrows);
    for _ in 0..nrows {
        let coeffs: Vec<(usize, f64)> = (0..nvars)
            .map(|j| (j, rng.random_range(-3i32..=3) as f64))
            .filter(|&(_, v)| v != 0.0)
            .collect();
        let activity: f64 = coeffs.iter().map(|&(j, v)| v * anchor[j]).sum();
        let slack = if rng.random_range(0.0..1.0) < tight_fraction {
            0.0
        } else {
            rng.random_range(1i32..=3) as f64
        };
        rows.push(Row::new(coeffs, Sense::Le, activity + slack));
    }
    let mut program = MixedBinaryProgram::binary(nvars, rows, &format!("rand-{seed}"));
    program.objective = (0..nvars)
        .map(|_| rng.random_range(-3i32..=3) as f64)
        .collect();
    program.objective_sense = ObjectiveSense::Min;
    program
        .normalize()
        .expect("generated programs are well formed")
}
