//! Dense linear-algebra kernels: rank / null-space computations via Gaussian
//! elimination, affine row-space membership, and a pivoted symmetric
//! factorization for positive-(semi)definiteness tests.
//!
//! Everything here is deterministic for a fixed input: pivot choices break
//! ties by lowest index and no randomized or threaded code paths exist.

/// Default relative tolerance for rank decisions.
pub const DEFAULT_RANK_TOL: f64 = 1e-9;

/// Dense row-major matrix of `f64`.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    nrows: usize,
    ncols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Matrix {
            nrows,
            ncols,
            data: vec![0.0; nrows * ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            assert_eq!(r.len(), ncols, "ragged rows");
            data.extend_from_slice(r);
        }
        Matrix { nrows, ncols, data }
    }

    /// Builds a matrix from its columns.
    pub fn from_columns(nrows: usize, cols: &[Vec<f64>]) -> Self {
        let ncols = cols.len();
        let mut m = Matrix::zeros(nrows, ncols);
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), nrows, "ragged columns");
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        debug_assert!(i < self.nrows && j < self.ncols);
        self.data[i * self.ncols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        debug_assert!(i < self.nrows && j < self.ncols);
        self.data[i * self.ncols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.nrows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn matmul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.ncols, rhs.nrows, "inner dimensions must agree");
        let mut out = Matrix::zeros(self.nrows, rhs.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..rhs.ncols {
                    out.data[i * rhs.ncols + j] += a * rhs.get(k, j);
                }
            }
        }
        out
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(self.ncols, x.len());
        (0..self.nrows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Keeps the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.nrows, cols.len());
        for (jj, &j) in cols.iter().enumerate() {
            for i in 0..self.nrows {
                out.set(i, jj, self.get(i, j));
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.ncols, other.ncols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            nrows: self.nrows + other.nrows,
            ncols: self.ncols,
            data,
        }
    }

    /// Appends a column on the right.
    pub fn hstack_col(&self, col: &[f64]) -> Matrix {
        assert_eq!(self.nrows, col.len());
        let mut out = Matrix::zeros(self.nrows, self.ncols + 1);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                out.set(i, j, self.get(i, j));
            }
            out.set(i, self.ncols, col[i]);
        }
        out
    }
}

/// Outcome of `row_reduce`: rank, pivot columns and the reduced matrix.
#[derive(Clone, Debug)]
pub struct EliminationResult {
    pub rank: usize,
    pub pivot_columns: Vec<usize>,
    pub rref: Matrix,
    pub tolerance_used: f64,
}

/// Gauss-Jordan elimination with partial pivoting to reduced row-echelon
/// form. Entries below `tol * max|M|` are treated as zero.
pub fn row_reduce(m: &Matrix, tol: f64) -> EliminationResult {
    let mut rref = m.clone();
    let (nr, nc) = (rref.nrows, rref.ncols);
    let thresh = tol * rref.max_abs().max(1.0);
    let mut pivot_columns = Vec::new();
    let mut r = 0usize;
    for c in 0..nc {
        if r == nr {
            break;
        }
        // partial pivoting: largest magnitude wins, lowest row on ties
        let mut best = r;
        for i in r + 1..nr {
            if rref.get(i, c).abs() > rref.get(best, c).abs() {
                best = i;
            }
        }
        if rref.get(best, c).abs() <= thresh {
            continue;
        }
        if best != r {
            for j in 0..nc {
                let tmp = rref.get(r, j);
                rref.set(r, j, rref.get(best, j));
                rref.set(best, j, tmp);
            }
        }
        let piv = rref.get(r, c);
        for j in 0..nc {
            rref.set(r, j, rref.get(r, j) / piv);
        }
        rref.set(r, c, 1.0);
        for i in 0..nr {
            if i == r {
                continue;
            }
            let f = rref.get(i, c);
            if f == 0.0 {
                continue;
            }
            for j in 0..nc {
                let v = rref.get(i, j) - f * rref.get(r, j);
                rref.set(i, j, v);
            }
            rref.set(i, c, 0.0);
        }
        pivot_columns.push(c);
        r += 1;
    }
    EliminationResult {
        rank: pivot_columns.len(),
        pivot_columns,
        rref,
        tolerance_used: thresh,
    }
}

/// Basis for the null space of `M`, one column per free variable of the
/// RREF, in ascending free-column order. `M * B = 0` up to roundoff.
pub fn null_space_basis(m: &Matrix, tol: f64) -> Matrix {
    let elim = row_reduce(m, tol);
    let nc = m.ncols;
    let is_pivot: Vec<bool> = {
        let mut f = vec![false; nc];
        for &c in &elim.pivot_columns {
            f[c] = true;
        }
        f
    };
    let free_cols: Vec<usize> = (0..nc).filter(|&c| !is_pivot[c]).collect();
    let mut basis = Matrix::zeros(nc, free_cols.len());
    for (k, &fc) in free_cols.iter().enumerate() {
        basis.set(fc, k, 1.0);
        for (prow, &pcol) in elim.pivot_columns.iter().enumerate() {
            basis.set(pcol, k, -elim.rref.get(prow, fc));
        }
    }
    basis
}

/// Tests whether the valid equality `c^T x = delta` is a linear combination
/// of the rows `(a_i, b_i)` of the equality system `A x = b`, i.e. whether
/// it holds identically on the affine set the system defines.
pub fn in_affine_row_space(
    a_eq: &Matrix,
    b_eq: &[f64],
    c: &[f64],
    delta: f64,
    tol: f64,
) -> bool {
    assert_eq!(a_eq.nrows, b_eq.len());
    assert_eq!(a_eq.ncols, c.len());
    let stacked = a_eq.hstack_col(b_eq);
    let elim = row_reduce(&stacked, tol);
    let mut target: Vec<f64> = c.to_vec();
    target.push(delta);
    reduce_against_rref(&elim, &mut target);
    let scale = 1.0 + c.iter().fold(delta.abs(), |acc, v| acc.max(v.abs()));
    let thresh = tol.max(1e-12) * scale * 10.0;
    target.iter().all(|v| v.abs() <= thresh)
}

/// Subtracts the projection of `target` onto the RREF rows in place.
pub(crate) fn reduce_against_rref(elim: &EliminationResult, target: &mut [f64]) {
    for (prow, &pcol) in elim.pivot_columns.iter().enumerate() {
        let f = target[pcol];
        if f == 0.0 {
            continue;
        }
        let row = elim.rref.row(prow);
        for (t, r) in target.iter_mut().zip(row) {
            *t -= f * r;
        }
        target[pcol] = 0.0;
    }
}

/// Classification returned by the pivoted symmetric factorization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PsdClass {
    PositiveDefinite,
    PositiveSemidefinite,
    Indefinite,
}

/// Pivoted symmetric factorization report: classification, the diagonal
/// pivots in elimination order, and the numerical rank.
#[derive(Clone, Debug)]
pub struct PsdReport {
    pub class: PsdClass,
    pub pivots: Vec<f64>,
    pub rank: usize,
}

/// Diagonal-pivoted symmetric elimination. Positive definite iff all n
/// pivots exceed `tol` (relative to the matrix scale); positive
/// semidefinite iff elimination stops early with a negligible remainder.
pub fn psd_factor(m: &Matrix, tol: f64) -> PsdReport {
    assert_eq!(m.nrows, m.ncols, "symmetric input required");
    let n = m.nrows;
    let mut w = m.clone();
    let thresh = tol * w.max_abs().max(1.0);
    let mut active: Vec<usize> = (0..n).collect();
    let mut pivots = Vec::new();
    while !active.is_empty() {
        let mut best = 0usize;
        for (k, &i) in active.iter().enumerate() {
            if w.get(i, i) > w.get(active[best], active[best]) {
                best = k;
            }
        }
        let p = active[best];
        let d = w.get(p, p);
        if d <= thresh {
            // no usable pivot left: decide PSD vs indefinite from remainder
            let mut max_rem = 0.0f64;
            let mut min_diag = 0.0f64;
            for &i in &active {
                min_diag = min_diag.min(w.get(i, i));
                for &j in &active {
                    max_rem = max_rem.max(w.get(i, j).abs());
                }
            }
            let class = if min_diag < -thresh || max_rem > thresh.max(tol) * 10.0 {
                PsdClass::Indefinite
            } else {
                PsdClass::PositiveSemidefinite
            };
            let rank = pivots.len();
            return PsdReport {
                class,
                pivots,
                rank,
            };
        }
        active.remove(best);
        for &i in &active {
            let f = w.get(i, p) / d;
            if f == 0.0 {
                continue;
            }
            for &j in &active {
                let v = w.get(i, j) - f * w.get(p, j);
                w.set(i, j, v);
            }
        }
        pivots.push(d);
    }
    let rank = pivots.len();
    PsdReport {
        class: PsdClass::PositiveDefinite,
        pivots,
        rank,
    }
}

/// Solves `A X = B` for square `A` by Gauss-Jordan with partial pivoting.
/// Returns `None` when `A` is numerically singular.
pub fn solve_dense(a: &Matrix, b: &Matrix) -> Option<Matrix> {
    assert_eq!(a.nrows, a.ncols);
    assert_eq!(a.nrows, b.nrows);
    let n = a.nrows;
    let mut work = a.clone();
    let mut rhs = b.clone();
    let thresh = 1e-12 * work.max_abs().max(1.0);
    for c in 0..n {
        let mut best = c;
        for i in c + 1..n {
            if work.get(i, c).abs() > work.get(best, c).abs() {
                best = i;
            }
        }
        if work.get(best, c).abs() <= thresh {
            return None;
        }
        if best != c {
            for j in 0..n {
                let t = work.get(c, j);
                work.set(c, j, work.get(best, j));
                work.set(best, j, t);
            }
            for j in 0..rhs.ncols() {
                let t = rhs.get(c, j);
                rhs.set(c, j, rhs.get(best, j));
                rhs.set(best, j, t);
            }
        }
        let piv = work.get(c, c);
        for j in 0..n {
            work.set(c, j, work.get(c, j) / piv);
        }
        for j in 0..rhs.ncols() {
            rhs.set(c, j, rhs.get(c, j) / piv);
        }
        for i in 0..n {
            if i == c {
                continue;
            }
            let f = work.get(i, c);
            if f == 0.0 {
                continue;
            }
            for j in 0..n {
                let v = work.get(i, j) - f * work.get(c, j);
                work.set(i, j, v);
            }
            for j in 0..rhs.ncols() {
                let v = rhs.get(i, j) - f * rhs.get(c, j);
                rhs.set(i, j, v);
            }
        }
    }
    Some(rhs)
}

/// Cholesky factor of a positive definite matrix: `M = L L^T` with `L`
/// lower triangular. Returns `None` when a pivot is not strictly positive.
pub fn cholesky(m: &Matrix, tol: f64) -> Option<Matrix> {
    assert_eq!(m.nrows, m.ncols);
    let n = m.nrows;
    let thresh = tol * m.max_abs().max(1.0);
    let mut l = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let mut s = m.get(i, j);
            for k in 0..j {
                s -= l.get(i, k) * l.get(j, k);
            }
            if i == j {
                if s <= thresh {
                    return None;
                }
                l.set(i, j, s.sqrt());
            } else {
                l.set(i, j, s / l.get(j, j));
            }
        }
    }
    Some(l)
}
