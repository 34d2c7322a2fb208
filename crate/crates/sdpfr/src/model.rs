//! Shared problem representations: mixed-binary programs, their polyhedral
//! relaxations, symmetric-matrix problems, exposing / facial range vectors
//! and reduction reports.
//!
//! All values are immutable once constructed; nothing here holds shared
//! mutable state.

use serde::Serialize;

use crate::linalg::{self, Matrix};
use crate::Error;

/// Row sense of a linear constraint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

/// Optimization direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ObjectiveSense {
    Min,
    Max,
}

/// One linear row `coeffs . x (sense) rhs` with a sparse coefficient vector.
#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub coeffs: Vec<(usize, f64)>,
    pub sense: Sense,
    pub rhs: f64,
}

impl Row {
    pub fn new(coeffs: Vec<(usize, f64)>, sense: Sense, rhs: f64) -> Self {
        Row { coeffs, sense, rhs }
    }

    pub fn activity(&self, x: &[f64]) -> f64 {
        self.coeffs.iter().map(|&(j, v)| v * x[j]).sum()
    }

    pub fn dense_coeffs(&self, nvars: usize) -> Vec<f64> {
        let mut a = vec![0.0; nvars];
        for &(j, v) in &self.coeffs {
            a[j] += v;
        }
        a
    }
}

/// A mixed-binary linear program. Variable indices are 0-based; `binary_set`
/// is sorted and indexes into `0..nvars`.
#[derive(Clone, Debug, PartialEq)]
pub struct MixedBinaryProgram {
    pub nvars: usize,
    pub objective_sense: ObjectiveSense,
    pub objective: Vec<f64>,
    /// Constant term of the objective (carried through eliminations).
    pub objective_offset: f64,
    /// True when normalization flipped a max objective to min.
    pub objective_negated: bool,
    pub rows: Vec<Row>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub binary_set: Vec<usize>,
    pub name: String,
}

impl MixedBinaryProgram {
    /// A program with free continuous variables, zero objective and no rows.
    pub fn new(nvars: usize, name: &str) -> Self {
        MixedBinaryProgram {
            nvars,
            objective_sense: ObjectiveSense::Min,
            objective: vec![0.0; nvars],
            objective_offset: 0.0,
            objective_negated: false,
            rows: Vec::new(),
            lower: vec![f64::NEG_INFINITY; nvars],
            upper: vec![f64::INFINITY; nvars],
            binary_set: Vec::new(),
            name: name.to_string(),
        }
    }

    /// Convenience constructor for a pure-binary program over `nvars`
    /// variables with the given inequality/equality rows.
    pub fn binary(nvars: usize, rows: Vec<Row>, name: &str) -> Self {
        let mut p = Self::new(nvars, name);
        p.rows = rows;
        p.binary_set = (0..nvars).collect();
        p
    }

    pub fn is_binary(&self, var: usize) -> bool {
        self.binary_set.binary_search(&var).is_ok()
    }

    pub fn is_pure_binary(&self) -> bool {
        self.binary_set.len() == self.nvars
    }

    fn validate(&self) -> Result<(), Error> {
        if self.objective.len() != self.nvars
            || self.lower.len() != self.nvars
            || self.upper.len() != self.nvars
        {
            return Err(Error::InvalidProgram("vector length mismatch".into()));
        }
        for &b in &self.binary_set {
            if b >= self.nvars {
                return Err(Error::InvalidProgram(format!(
                    "binary index {b} out of range"
                )));
            }
        }
        if self.binary_set.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidProgram("binary set not sorted".into()));
        }
        for (k, row) in self.rows.iter().enumerate() {
            for &(j, v) in &row.coeffs {
                if j >= self.nvars {
                    return Err(Error::InvalidProgram(format!(
                        "row {k} references variable {j} out of range"
                    )));
                }
                if v.is_nan() {
                    return Err(Error::InvalidProgram(format!("NaN coefficient in row {k}")));
                }
            }
            if row.rhs.is_nan() {
                return Err(Error::InvalidProgram(format!("NaN rhs in row {k}")));
            }
        }
        if self.objective.iter().any(|v| v.is_nan()) {
            return Err(Error::InvalidProgram("NaN objective coefficient".into()));
        }
        Ok(())
    }

    /// Rewrites the program into the canonical form the reduction machinery
    /// expects: binary bounds clamped to `[0,1]`, `>=` rows flipped to `<=`,
    /// and a min objective (recording the sign flip).
    pub fn normalize(&self) -> Result<MixedBinaryProgram, Error> {
        self.validate()?;
        let mut out = self.clone();
        for &b in &self.binary_set {
            out.lower[b] = out.lower[b].max(0.0);
            out.upper[b] = out.upper[b].min(1.0);
        }
        for i in 0..out.nvars {
            if out.lower[i] > out.upper[i] {
                return Err(Error::InconsistentBounds {
                    var: i,
                    lower: out.lower[i],
                    upper: out.upper[i],
                });
            }
        }
        for row in &mut out.rows {
            if row.sense == Sense::Ge {
                for c in &mut row.coeffs {
                    c.1 = -c.1;
                }
                row.rhs = -row.rhs;
                row.sense = Sense::Le;
            }
        }
        if out.objective_sense == ObjectiveSense::Max {
            for c in &mut out.objective {
                *c = -*c;
            }
            out.objective_offset = -out.objective_offset;
            out.objective_sense = ObjectiveSense::Min;
            out.objective_negated = !out.objective_negated;
        }
        Ok(out)
    }

    pub fn is_normalized(&self) -> bool {
        self.objective_sense == ObjectiveSense::Min
            && self.rows.iter().all(|r| r.sense != Sense::Ge)
            && self
                .binary_set
                .iter()
                .all(|&b| self.lower[b] >= 0.0 && self.upper[b] <= 1.0)
    }

    /// Canonical inequality system for the continuous relaxation: all `<=`
    /// rows plus one inequality per finite bound; equality rows are kept
    /// separately.
    pub fn to_polyhedron(&self) -> Polyhedron {
        assert!(self.is_normalized(), "normalize() the program first");
        let n = self.nvars;
        let mut a_rows: Vec<Vec<f64>> = Vec::new();
        let mut b_in = Vec::new();
        let mut origin = Vec::new();
        let mut eq_rows: Vec<Vec<f64>> = Vec::new();
        let mut b_eq = Vec::new();
        let mut eq_origin = Vec::new();
        for (k, row) in self.rows.iter().enumerate() {
            match row.sense {
                Sense::Le => {
                    a_rows.push(row.dense_coeffs(n));
                    b_in.push(row.rhs);
                    origin.push(RowOrigin::Constraint(k));
                }
                Sense::Eq => {
                    eq_rows.push(row.dense_coeffs(n));
                    b_eq.push(row.rhs);
                    eq_origin.push(k);
                }
                Sense::Ge => unreachable!("normalized programs have no >= rows"),
            }
        }
        for i in 0..n {
            if self.upper[i].is_finite() {
                let mut a = vec![0.0; n];
                a[i] = 1.0;
                a_rows.push(a);
                b_in.push(self.upper[i]);
                origin.push(RowOrigin::UpperBound(i));
            }
            if self.lower[i].is_finite() {
                let mut a = vec![0.0; n];
                a[i] = -1.0;
                a_rows.push(a);
                b_in.push(-self.lower[i]);
                origin.push(RowOrigin::LowerBound(i));
            }
        }
        Polyhedron {
            nvars: n,
            a_in: if a_rows.is_empty() {
                Matrix::zeros(0, n)
            } else {
                Matrix::from_rows(&a_rows)
            },
            b_in,
            a_eq: if eq_rows.is_empty() {
                Matrix::zeros(0, n)
            } else {
                Matrix::from_rows(&eq_rows)
            },
            b_eq,
            row_origin: origin,
            eq_origin,
        }
    }

    /// Substitutes `x_i = 0` for `i` in `zeros` and `x_i = 1` for `i` in
    /// `ones`, producing the program over the surviving variables.
    pub fn eliminate_fixed(&self, zeros: &[usize], ones: &[usize]) -> MixedBinaryProgram {
        let n = self.nvars;
        let mut fixed = vec![None::<f64>; n];
        for &i in zeros {
            fixed[i] = Some(0.0);
        }
        for &i in ones {
            fixed[i] = Some(1.0);
        }
        let keep: Vec<usize> = (0..n).filter(|&i| fixed[i].is_none()).collect();
        let mut new_index = vec![usize::MAX; n];
        for (k, &i) in keep.iter().enumerate() {
            new_index[i] = k;
        }
        let mut out = MixedBinaryProgram::new(keep.len(), &self.name);
        out.objective_sense = self.objective_sense;
        out.objective_negated = self.objective_negated;
        out.objective_offset = self.objective_offset
            + (0..n)
                .filter_map(|i| fixed[i].map(|v| v * self.objective[i]))
                .sum::<f64>();
        out.objective = keep.iter().map(|&i| self.objective[i]).collect();
        out.lower = keep.iter().map(|&i| self.lower[i]).collect();
        out.upper = keep.iter().map(|&i| self.upper[i]).collect();
        out.binary_set = self
            .binary_set
            .iter()
            .filter(|&&b| fixed[b].is_none())
            .map(|&b| new_index[b])
            .collect();
        out.rows = self
            .rows
            .iter()
            .map(|row| {
                let mut rhs = row.rhs;
                let mut coeffs = Vec::new();
                for &(j, v) in &row.coeffs {
                    match fixed[j] {
                        Some(val) => rhs -= v * val,
                        None => coeffs.push((new_index[j], v)),
                    }
                }
                Row::new(coeffs, row.sense, rhs)
            })
            .collect();
        out
    }

    /// Checks a point against rows and bounds of the continuous relaxation.
    pub fn satisfies(&self, x: &[f64], tol: f64) -> bool {
        if x.len() != self.nvars {
            return false;
        }
        for i in 0..self.nvars {
            if x[i] < self.lower[i] - tol || x[i] > self.upper[i] + tol {
                return false;
            }
        }
        self.rows.iter().all(|row| {
            let act = row.activity(x);
            match row.sense {
                Sense::Le => act <= row.rhs + tol,
                Sense::Ge => act >= row.rhs - tol,
                Sense::Eq => (act - row.rhs).abs() <= tol,
            }
        })
    }
}

/// Where a polyhedron inequality row came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowOrigin {
    Constraint(usize),
    UpperBound(usize),
    LowerBound(usize),
}

impl RowOrigin {
    pub fn tag(&self) -> String {
        match self {
            RowOrigin::Constraint(k) => format!("row:{k}"),
            RowOrigin::UpperBound(i) => format!("ub:{i}"),
            RowOrigin::LowerBound(i) => format!("lb:{i}"),
        }
    }
}

/// Inequality system `A_in x <= b_in` plus the equality subsystem
/// `A_eq x = b_eq`; together they describe the continuous relaxation.
#[derive(Clone, Debug)]
pub struct Polyhedron {
    pub nvars: usize,
    pub a_in: Matrix,
    pub b_in: Vec<f64>,
    pub a_eq: Matrix,
    pub b_eq: Vec<f64>,
    /// Origin tag per `a_in` row.
    pub row_origin: Vec<RowOrigin>,
    /// Source program row per `a_eq` row.
    pub eq_origin: Vec<usize>,
}

impl Polyhedron {
    pub fn num_ineqs(&self) -> usize {
        self.b_in.len()
    }

    pub fn num_eqs(&self) -> usize {
        self.b_eq.len()
    }

    /// Builds a polyhedron from raw `<=` rows only (no bounds, no equalities).
    pub fn from_ineq_rows(nvars: usize, rows: &[(Vec<f64>, f64)]) -> Polyhedron {
        assert!(
            rows.iter()
                .all(|(a, b)| b.is_finite() && a.len() == nvars && a.iter().all(|v| v.is_finite())),
            "rows must be finite and of width nvars"
        );
        let a: Vec<Vec<f64>> = rows.iter().map(|(r, _)| r.clone()).collect();
        let b: Vec<f64> = rows.iter().map(|&(_, v)| v).collect();
        let origin = (0..rows.len()).map(RowOrigin::Constraint).collect();
        Polyhedron {
            nvars,
            a_in: Matrix::from_rows(&a),
            b_in: b,
            a_eq: Matrix::zeros(0, nvars),
            b_eq: Vec::new(),
            row_origin: origin,
            eq_origin: Vec::new(),
        }
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        let act_in = self.a_in.matvec(x);
        if act_in
            .iter()
            .zip(&self.b_in)
            .any(|(a, b)| *a > *b + tol)
        {
            return false;
        }
        let act_eq = self.a_eq.matvec(x);
        act_eq
            .iter()
            .zip(&self.b_eq)
            .all(|(a, b)| (a - b).abs() <= tol)
    }

    pub fn slack(&self, row: usize, x: &[f64]) -> f64 {
        self.b_in[row]
            - self
                .a_in
                .row(row)
                .iter()
                .zip(x)
                .map(|(a, b)| a * b)
                .sum::<f64>()
    }
}

/// Symmetric matrix stored as an upper-triangle coordinate list
/// (`i <= j`, sorted, no duplicates, no explicit zeros).
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix {
    order: usize,
    entries: Vec<(usize, usize, f64)>,
}

impl SymMatrix {
    pub fn zero(order: usize) -> Self {
        SymMatrix {
            order,
            entries: Vec::new(),
        }
    }

    /// Builds from raw upper-triangle coordinates; merges duplicates and
    /// drops explicit zeros.
    pub fn from_entries(order: usize, entries: &[(usize, usize, f64)]) -> Self {
        let mut norm: Vec<(usize, usize, f64)> = entries
            .iter()
            .map(|&(i, j, v)| if i <= j { (i, j, v) } else { (j, i, v) })
            .collect();
        norm.sort_by_key(|&(i, j, _)| (i, j));
        let mut merged: Vec<(usize, usize, f64)> = Vec::with_capacity(norm.len());
        for (i, j, v) in norm {
            assert!(j < order, "entry ({i},{j}) out of range for order {order}");
            match merged.last_mut() {
                Some(last) if last.0 == i && last.1 == j => last.2 += v,
                _ => merged.push((i, j, v)),
            }
        }
        merged.retain(|&(_, _, v)| v != 0.0);
        SymMatrix {
            order,
            entries: merged,
        }
    }

    pub fn from_dense(m: &Matrix, zero_tol: f64) -> Self {
        assert_eq!(m.nrows(), m.ncols());
        let order = m.nrows();
        let mut entries = Vec::new();
        for i in 0..order {
            for j in i..order {
                let v = if i == j {
                    m.get(i, j)
                } else {
                    0.5 * (m.get(i, j) + m.get(j, i))
                };
                if v.abs() > zero_tol {
                    entries.push((i, j, v));
                }
            }
        }
        SymMatrix { order, entries }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entries(&self) -> &[(usize, usize, f64)] {
        &self.entries
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.entries.iter().all(|&(_, _, v)| v.abs() <= tol)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |acc, &(_, _, v)| acc.max(v.abs()))
    }

    /// Symmetric lookup: `get(i, j) == get(j, i)`.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        let key = if i <= j { (i, j) } else { (j, i) };
        match self
            .entries
            .binary_search_by_key(&key, |&(a, b, _)| (a, b))
        {
            Ok(pos) => self.entries[pos].2,
            Err(_) => 0.0,
        }
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.order, self.order);
        for &(i, j, v) in &self.entries {
            m.set(i, j, v);
            if i != j {
                m.set(j, i, v);
            }
        }
        m
    }

    /// Frobenius inner product with the rank-one lift of `x`.
    pub fn quad_form(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.order);
        self.entries
            .iter()
            .map(|&(i, j, v)| {
                let term = v * x[i] * x[j];
                if i == j {
                    term
                } else {
                    2.0 * term
                }
            })
            .sum()
    }

    /// Frobenius inner product with a dense symmetric matrix.
    pub fn inner(&self, y: &Matrix) -> f64 {
        self.entries
            .iter()
            .map(|&(i, j, v)| {
                if i == j {
                    v * y.get(i, i)
                } else {
                    v * (y.get(i, j) + y.get(j, i))
                }
            })
            .sum()
    }

    /// Congruence transform `V^T M V`, returned in coordinate form.
    pub fn congruence(&self, v: &Matrix) -> SymMatrix {
        assert_eq!(v.nrows(), self.order, "dimension mismatch");
        let r = v.ncols();
        let mut dense = Matrix::zeros(r, r);
        for &(i, j, val) in &self.entries {
            let ri = v.row(i);
            let rj = v.row(j);
            for a in 0..r {
                for b in 0..r {
                    let add = if i == j {
                        val * ri[a] * ri[b]
                    } else {
                        val * (ri[a] * rj[b] + rj[a] * ri[b])
                    };
                    dense.set(a, b, dense.get(a, b) + add);
                }
            }
        }
        SymMatrix::from_dense(&dense, 1e-14)
    }

    /// PSD classification via the pivoted symmetric factorization.
    pub fn psd_class(&self, tol: f64) -> linalg::PsdClass {
        linalg::psd_factor(&self.to_dense(), tol).class
    }
}

/// Constraint sense inside an SDP problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConSense {
    Le,
    Eq,
}

/// One linear constraint `<matrix, Y> (sense) rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct SdpConstraint {
    pub matrix: SymMatrix,
    pub sense: ConSense,
    pub rhs: f64,
    pub tag: String,
}

/// What a matrix coordinate of an `SdpProblem` refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coord {
    /// The homogenization coordinate (row 0 of a lifted problem).
    Hom,
    /// An original variable (0-based).
    Var(usize),
    /// An abstract basis column of a reduced problem.
    Basis(usize),
}

/// Feasibility/optimization model over symmetric matrices of one order.
#[derive(Clone, Debug)]
pub struct SdpProblem {
    pub order: usize,
    pub constraints: Vec<SdpConstraint>,
    pub objective: Option<SymMatrix>,
    pub index_map: Vec<Coord>,
}

impl SdpProblem {
    pub fn new(order: usize) -> Self {
        let mut index_map = Vec::with_capacity(order);
        if order > 0 {
            index_map.push(Coord::Hom);
            for i in 0..order - 1 {
                index_map.push(Coord::Var(i));
            }
        }
        SdpProblem {
            order,
            constraints: Vec::new(),
            objective: None,
            index_map,
        }
    }

    pub fn push(&mut self, matrix: SymMatrix, sense: ConSense, rhs: f64, tag: &str) {
        debug_assert_eq!(matrix.order(), self.order);
        self.constraints.push(SdpConstraint {
            matrix,
            sense,
            rhs,
            tag: tag.to_string(),
        });
    }

    /// Checks a dense symmetric `Y` against every constraint.
    pub fn is_feasible_point(&self, y: &Matrix, tol: f64) -> bool {
        self.constraints.iter().all(|c| {
            let val = c.matrix.inner(y);
            match c.sense {
                ConSense::Le => val <= c.rhs + tol,
                ConSense::Eq => (val - c.rhs).abs() <= tol,
            }
        })
    }
}

/// A PSD matrix `W = U U^T` whose trace pairing vanishes on the feasible
/// lifts; its null space defines the face used for the reduction step.
#[derive(Clone, Debug)]
pub struct ExposingVector {
    factor_u: Matrix,
    product_w: SymMatrix,
    rank: usize,
}

impl ExposingVector {
    /// Builds `W = U U^T` from a factor with full column rank.
    pub fn from_factor(u: Matrix, tol: f64) -> Result<Self, Error> {
        let rank = linalg::row_reduce(&u, tol).rank;
        if rank != u.ncols() {
            return Err(Error::InvalidProgram(format!(
                "exposing factor has rank {rank} < {} columns",
                u.ncols()
            )));
        }
        let w_dense = u.matmul(&u.transpose());
        let product_w = SymMatrix::from_dense(&w_dense, 0.0);
        Ok(ExposingVector {
            rank: u.ncols(),
            factor_u: u,
            product_w,
        })
    }

    pub fn zero(order: usize) -> Self {
        ExposingVector {
            factor_u: Matrix::zeros(order, 0),
            product_w: SymMatrix::zero(order),
            rank: 0,
        }
    }

    pub fn order(&self) -> usize {
        self.factor_u.nrows()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn factor(&self) -> &Matrix {
        &self.factor_u
    }

    pub fn matrix(&self) -> &SymMatrix {
        &self.product_w
    }
}

/// Basis of the null space of an exposing vector: the columns of `V` carry
/// the substitution `Y = V R V^T`.
#[derive(Clone, Debug)]
pub struct FacialRangeVector {
    v: Matrix,
}

impl FacialRangeVector {
    /// Validates that the columns of `v` are independent, annihilate `w`,
    /// and complement its rank.
    pub fn new(v: Matrix, w: &ExposingVector) -> Result<Self, Error> {
        let n = w.order();
        if v.nrows() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: v.nrows(),
            });
        }
        let rank = linalg::row_reduce(&v, linalg::DEFAULT_RANK_TOL).rank;
        if rank != v.ncols() {
            return Err(Error::InvalidProgram(
                "facial range vector columns are dependent".into(),
            ));
        }
        if v.ncols() + w.rank() != n {
            return Err(Error::InvalidProgram(format!(
                "facial range vector of width {} does not complement rank {}",
                v.ncols(),
                w.rank()
            )));
        }
        let prod = w.matrix().to_dense().matmul(&v);
        if prod.max_abs() > 1e-10 * (1.0 + w.matrix().max_abs()) {
            return Err(Error::InvalidProgram(
                "facial range vector does not annihilate W".into(),
            ));
        }
        Ok(FacialRangeVector { v })
    }

    pub fn identity(order: usize) -> Self {
        FacialRangeVector {
            v: Matrix::identity(order),
        }
    }

    /// Selection of the listed coordinates (columns of the identity).
    pub fn selection(order: usize, keep: &[usize]) -> Self {
        let mut v = Matrix::zeros(order, keep.len());
        for (k, &i) in keep.iter().enumerate() {
            v.set(i, k, 1.0);
        }
        FacialRangeVector { v }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.v
    }

    pub fn reduced_order(&self) -> usize {
        self.v.ncols()
    }
}

/// Reduction method identifiers, as they appear in reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Affine,
    PfrD,
    PfrDd,
    Sieve,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Affine => "affine",
            Method::PfrD => "pfr_d",
            Method::PfrDd => "pfr_dd",
            Method::Sieve => "sieve",
        }
    }
}

/// Terminal state of one reduction run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionStatus {
    Reduced,
    NoReduction,
    InfeasibleDetected,
    LpTimeLimit,
}

impl ReductionStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            ReductionStatus::Reduced => "reduced",
            ReductionStatus::NoReduction => "no_reduction",
            ReductionStatus::InfeasibleDetected => "infeasible_detected",
            ReductionStatus::LpTimeLimit => "lp_time_limit",
        }
    }
}

/// Summary of one reduction run: method, sizes, detected index sets and
/// preprocessing time.
#[derive(Clone, Debug, Serialize)]
pub struct ReductionReport {
    pub method: Method,
    pub original_order: usize,
    pub reduced_order: usize,
    pub ratio: f64,
    pub implicit_equalities: Vec<usize>,
    pub fixed_zero: Vec<usize>,
    pub fixed_one: Vec<usize>,
    pub prep_seconds: f64,
    pub status: ReductionStatus,
}

impl ReductionReport {
    pub fn no_change(method: Method, order: usize, status: ReductionStatus) -> Self {
        ReductionReport {
            method,
            original_order: order,
            reduced_order: order,
            ratio: 1.0,
            implicit_equalities: Vec::new(),
            fixed_zero: Vec::new(),
            fixed_one: Vec::new(),
            prep_seconds: 0.0,
            status,
        }
    }
}
