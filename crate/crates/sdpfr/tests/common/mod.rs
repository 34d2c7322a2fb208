//! Shared test oracles. Everything here is deliberately brute force and
//! independent of the library's solution paths: the vertex enumerator uses
//! its own Gaussian elimination, and the SDPA reader is a from-scratch
//! parser used only to audit writer output.

#![allow(dead_code)]
#![allow(clippy::needless_range_loop)]

use sdpfr::model::{ConSense, MixedBinaryProgram, Row, SdpProblem, SymMatrix};
use sdpfr::{Matrix, Polyhedron, Sense};

/// Example program: {2x1 + x2 <= 2, x1 + 2x2 <= 2, x1 + x2 >= 1, x3 <= 0}
/// over the binary box, with feasible set {(1,0,0), (0,1,0)}.
pub fn triangle_program() -> MixedBinaryProgram {
    MixedBinaryProgram::binary(
        3,
        vec![
            Row::new(vec![(0, 2.0), (1, 1.0)], Sense::Le, 2.0),
            Row::new(vec![(0, 1.0), (1, 2.0)], Sense::Le, 2.0),
            Row::new(vec![(0, 1.0), (1, 1.0)], Sense::Ge, 1.0),
            Row::new(vec![(2, 1.0)], Sense::Le, 0.0),
        ],
        "triangle",
    )
    .normalize()
    .unwrap()
}

/// The segment program whose equality system is already the affine hull of
/// its feasible set: {x1 + x2 = 1, x3 = 0} over the binary box.
pub fn segment_program() -> MixedBinaryProgram {
    MixedBinaryProgram::binary(
        3,
        vec![
            Row::new(vec![(0, 1.0), (1, 1.0)], Sense::Eq, 1.0),
            Row::new(vec![(2, 1.0)], Sense::Eq, 0.0),
        ],
        "segment",
    )
    .normalize()
    .unwrap()
}

/// The raw five-row point system {x1 + x2 = 1, x1 = 0, x2 >= 0} written as
/// inequalities, whose only point is (0, 1).
pub fn point_polyhedron() -> Polyhedron {
    Polyhedron::from_ineq_rows(
        2,
        &[
            (vec![1.0, 1.0], 1.0),
            (vec![-1.0, -1.0], -1.0),
            (vec![1.0, 0.0], 0.0),
            (vec![-1.0, 0.0], 0.0),
            (vec![0.0, -1.0], 0.0),
        ],
    )
}

pub fn point_program() -> MixedBinaryProgram {
    MixedBinaryProgram::binary(2, vec![], "fixed-point")
}

/// Solves a square system with partial pivoting. Self-contained so the
/// vertex oracle shares no code with the library kernels.
pub fn gauss_solve(a: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let n = b.len();
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r = row.clone();
            r.push(rhs);
            r
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).max_by(|&i, &j| m[i][c].abs().total_cmp(&m[j][c].abs()))?;
        if m[piv][c].abs() < 1e-11 {
            return None;
        }
        m.swap(c, piv);
        let d = m[c][c];
        for j in c..=n {
            m[c][j] /= d;
        }
        for i in 0..n {
            if i != c && m[i][c] != 0.0 {
                let f = m[i][c];
                for j in c..=n {
                    m[i][j] -= f * m[c][j];
                }
            }
        }
    }
    Some((0..n).map(|i| m[i][n]).collect())
}

/// All vertices of the polyhedron, by exhaustive enumeration of row
/// n-subsets. Equality rows participate in every subset.
pub fn enumerate_vertices(p: &Polyhedron) -> Vec<Vec<f64>> {
    let n = p.nvars;
    let m_eq = p.num_eqs();
    let mut rows: Vec<(Vec<f64>, f64)> = Vec::new();
    for i in 0..m_eq {
        rows.push((p.a_eq.row(i).to_vec(), p.b_eq[i]));
    }
    let fixed = rows.len().min(n);
    for i in 0..p.num_ineqs() {
        rows.push((p.a_in.row(i).to_vec(), p.b_in[i]));
    }
    let mut vertices: Vec<Vec<f64>> = Vec::new();
    let mut subset: Vec<usize> = Vec::new();
    pick_subsets(fixed, rows.len(), n, &mut subset, &mut |chosen| {
        let a: Vec<Vec<f64>> = chosen.iter().map(|&i| rows[i].0.clone()).collect();
        let b: Vec<f64> = chosen.iter().map(|&i| rows[i].1).collect();
        if let Some(x) = gauss_solve(&a, &b) {
            if p.contains(&x, 1e-7) && !vertices.iter().any(|v| max_diff(v, &x) < 1e-7) {
                vertices.push(x);
            }
        }
    });
    vertices
}

fn pick_subsets(
    fixed: usize,
    total: usize,
    size: usize,
    acc: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    // the first `fixed` rows (equalities) are always in
    fn rec(
        start: usize,
        total: usize,
        size: usize,
        acc: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]),
    ) {
        if acc.len() == size {
            visit(acc);
            return;
        }
        let need = size - acc.len();
        for i in start..total {
            if total - i < need {
                break;
            }
            acc.push(i);
            rec(i + 1, total, size, acc, visit);
            acc.pop();
        }
    }
    if fixed > size {
        return;
    }
    acc.clear();
    acc.extend(0..fixed);
    rec(fixed, total, size, acc, visit);
}

pub fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Affine dimension of a point set: rank of the lifted point matrix minus 1.
pub fn affine_dim(points: &[Vec<f64>]) -> Option<usize> {
    if points.is_empty() {
        return None;
    }
    let lifted: Vec<Vec<f64>> = points
        .iter()
        .map(|x| {
            let mut r = vec![1.0];
            r.extend_from_slice(x);
            r
        })
        .collect();
    Some(sdpfr::linalg::row_reduce(&Matrix::from_rows(&lifted), 1e-9).rank - 1)
}

/// Rank-one lift [1; x][1; x]^T as a dense matrix.
pub fn lift_point(x: &[f64]) -> Matrix {
    let mut t = vec![1.0];
    t.extend_from_slice(x);
    let order = t.len();
    let mut y = Matrix::zeros(order, order);
    for i in 0..order {
        for j in 0..order {
            y.set(i, j, t[i] * t[j]);
        }
    }
    y
}

/// A parsed SDPA sparse file: header data plus raw entries.
#[derive(Debug, PartialEq)]
pub struct SdpaFile {
    pub m_dim: usize,
    pub n_block: usize,
    pub block_sizes: Vec<i64>,
    pub rhs: Vec<f64>,
    /// (constraint, block, i, j, value) with the file's 1-based indices.
    pub entries: Vec<(usize, usize, usize, usize, f64)>,
}

/// From-scratch reader for auditing `write_sdpa` output.
pub fn parse_sdpa(text: &str) -> SdpaFile {
    let mut lines = text.lines();
    let m_dim: usize = lines.next().unwrap().trim().parse().unwrap();
    let n_block: usize = lines.next().unwrap().trim().parse().unwrap();
    let block_sizes: Vec<i64> = lines
        .next()
        .unwrap()
        .split_whitespace()
        .map(|t| t.parse().unwrap())
        .collect();
    let rhs: Vec<f64> = lines
        .next()
        .unwrap()
        .split_whitespace()
        .map(|t| t.parse().unwrap())
        .collect();
    let mut entries = Vec::new();
    for line in lines {
        if line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split_whitespace().collect();
        entries.push((
            f[0].parse().unwrap(),
            f[1].parse().unwrap(),
            f[2].parse().unwrap(),
            f[3].parse().unwrap(),
            f[4].parse().unwrap(),
        ));
    }
    SdpaFile {
        m_dim,
        n_block,
        block_sizes,
        rhs,
        entries,
    }
}

/// Reconstructs the dense-block constraint list from a parsed SDPA file.
pub fn sdpa_constraints(file: &SdpaFile) -> Vec<SymMatrix> {
    let order = file.block_sizes[0] as usize;
    (1..=file.m_dim)
        .map(|cons| {
            let entries: Vec<(usize, usize, f64)> = file
                .entries
                .iter()
                .filter(|&&(c, blk, _, _, _)| c == cons && blk == 1)
                .map(|&(_, _, i, j, v)| (i - 1, j - 1, v))
                .collect();
            SymMatrix::from_entries(order, &entries)
        })
        .collect()
}

/// Solves the entries of a matrix variable pinned by equality constraints
/// plus antiparallel inequality pairs; `None` unless unique.
pub fn pin_by_equalities(sdp: &SdpProblem) -> Option<Matrix> {
    let r = sdp.order;
    let unknowns = r * (r + 1) / 2;
    let index = |i: usize, j: usize| -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        i * (2 * r + 1 - i) / 2 + (j - i)
    };
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut rhs: Vec<f64> = Vec::new();
    let mut push_eq = |m: &SymMatrix, b: f64| {
        let mut row = vec![0.0; unknowns];
        for &(i, j, v) in m.entries() {
            row[index(i, j)] += if i == j { v } else { 2.0 * v };
        }
        rows.push(row);
        rhs.push(b);
    };
    for c in &sdp.constraints {
        if c.sense == ConSense::Eq {
            push_eq(&c.matrix, c.rhs);
        }
    }
    let les: Vec<_> = sdp
        .constraints
        .iter()
        .filter(|c| c.sense == ConSense::Le)
        .collect();
    for (a, ca) in les.iter().enumerate() {
        for cb in les.iter().skip(a + 1) {
            if ca.rhs + cb.rhs != 0.0 {
                continue;
            }
            let merged: Vec<(usize, usize, f64)> = ca
                .matrix
                .entries()
                .iter()
                .chain(cb.matrix.entries())
                .copied()
                .collect();
            if SymMatrix::from_entries(r, &merged).is_zero(1e-12) {
                push_eq(&ca.matrix, ca.rhs);
            }
        }
    }
    if rows.is_empty() {
        return None;
    }
    let a = Matrix::from_rows(&rows);
    if sdpfr::linalg::row_reduce(&a, 1e-12).rank < unknowns {
        return None;
    }
    let at = a.transpose();
    let gram = at.matmul(&a);
    let mut atb = Matrix::zeros(unknowns, 1);
    for (i, v) in at.matvec(&rhs).iter().enumerate() {
        atb.set(i, 0, *v);
    }
    let sol = sdpfr::linalg::solve_dense(&gram, &atb)?;
    let mut out = Matrix::zeros(r, r);
    for i in 0..r {
        for j in 0..r {
            out.set(i, j, sol.get(index(i, j), 0));
        }
    }
    Some(out)
}

/// Assignment-polytope instance of order `k` with variables shuffled by the
/// seed and a few loose valid cuts appended: the equality system forces the
/// affine hull of the feasible permutation points, so it already matches
/// the hull of the relaxed polytope.
pub fn assignment_program(k: usize, seed: u64) -> MixedBinaryProgram {
    let n = k * k;
    let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1);
    let mut next = move || {
        // xorshift64*
        state ^= state >> 12;
        state ^= state << 25;
        state ^= state >> 27;
        state = state.wrapping_mul(0x2545f4914f6cdd1d);
        state
    };
    // seeded variable shuffle
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = (next() % (i as u64 + 1)) as usize;
        perm.swap(i, j);
    }
    let var = |r: usize, c: usize| perm[r * k + c];
    let mut rows = Vec::new();
    for r in 0..k {
        let coeffs: Vec<(usize, f64)> = (0..k).map(|c| (var(r, c), 1.0)).collect();
        rows.push(Row::new(coeffs, Sense::Eq, 1.0));
    }
    for c in 0..k {
        let coeffs: Vec<(usize, f64)> = (0..k).map(|r| (var(r, c), 1.0)).collect();
        rows.push(Row::new(coeffs, Sense::Eq, 1.0));
    }
    // permutation points, for computing safe cut offsets
    let points = permutation_points(k, &var);
    let cuts = (next() % 4) as usize;
    for _ in 0..cuts {
        let a: Vec<f64> = (0..n).map(|_| (next() % 5) as f64 - 2.0).collect();
        let worst = points
            .iter()
            .map(|x| a.iter().zip(x).map(|(ai, xi)| ai * xi).sum::<f64>())
            .fold(f64::NEG_INFINITY, f64::max);
        let slack = 1.0 + (next() % 2) as f64;
        let coeffs: Vec<(usize, f64)> = a
            .iter()
            .enumerate()
            .filter(|&(_, v)| *v != 0.0)
            .map(|(j, &v)| (j, v))
            .collect();
        rows.push(Row::new(coeffs, Sense::Le, worst + slack));
    }
    MixedBinaryProgram::binary(n, rows, &format!("assign{k}-{seed}"))
        .normalize()
        .unwrap()
}

fn permutation_points(k: usize, var: &impl Fn(usize, usize) -> usize) -> Vec<Vec<f64>> {
    let mut cols: Vec<usize> = (0..k).collect();
    let mut out = Vec::new();
    permute(&mut cols, 0, &mut |assignment| {
        let mut x = vec![0.0; k * k];
        for (r, &c) in assignment.iter().enumerate() {
            x[var(r, c)] = 1.0;
        }
        out.push(x);
    });
    out
}

fn permute(items: &mut [usize], at: usize, visit: &mut impl FnMut(&[usize])) {
    if at == items.len() {
        visit(items);
        return;
    }
    for i in at..items.len() {
        items.swap(at, i);
        permute(items, at + 1, visit);
        items.swap(at, i);
    }
}
