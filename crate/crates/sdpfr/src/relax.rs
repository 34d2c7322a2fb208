//! SDP relaxation builders: the rank-one lift with arrow constraints
//! (Shor form) and the stronger column-lift form that forces every matrix
//! column into the conic hull of the polyhedron.

use crate::model::{
    ConSense, MixedBinaryProgram, Polyhedron, SdpProblem, SymMatrix,
};
use crate::Error;

/// Arrow constraints of a lifted problem: `Y_00 = 1` plus
/// `Y_ii = Y_0i` for every binary row index.
#[derive(Clone, Debug)]
pub struct ArrowSpec {
    pub order: usize,
    /// Matrix row indices (1-based within the lift) carrying a binary link.
    pub binary_rows: Vec<usize>,
}

impl ArrowSpec {
    pub fn for_program(program: &MixedBinaryProgram) -> Self {
        ArrowSpec {
            order: program.nvars + 1,
            binary_rows: program.binary_set.iter().map(|&i| i + 1).collect(),
        }
    }

    /// Emits the homogenization constraint followed by one arrow row per
    /// binary variable.
    pub fn emit(&self, sdp: &mut SdpProblem) {
        sdp.push(
            SymMatrix::from_entries(self.order, &[(0, 0, 1.0)]),
            ConSense::Eq,
            1.0,
            "homog",
        );
        for &r in &self.binary_rows {
            let m = SymMatrix::from_entries(self.order, &[(r, r, 1.0), (0, r, -0.5)]);
            sdp.push(m, ConSense::Eq, 0.0, &format!("arrow:{}", r - 1));
        }
    }
}

/// Lifts an affine row `a^T x (<=|=) b` to `<[-b, a/2; a/2, O], Y> (<=|=) 0`.
fn lift_row(order: usize, a: &[f64], b: f64) -> SymMatrix {
    let mut entries = Vec::with_capacity(a.len() + 1);
    if b != 0.0 {
        entries.push((0, 0, -b));
    }
    for (j, &v) in a.iter().enumerate() {
        if v != 0.0 {
            entries.push((0, j + 1, 0.5 * v));
        }
    }
    SymMatrix::from_entries(order, &entries)
}

/// Rank-one lift with arrow constraints. One `<=` constraint per polyhedron
/// inequality row (bounds included) and one `=` constraint per equality row,
/// so the lifted system mirrors the inequality description of `P` literally.
pub fn build_shor(program: &MixedBinaryProgram) -> SdpProblem {
    assert!(program.is_normalized(), "normalize() the program first");
    let p = program.to_polyhedron();
    build_shor_from(program, &p)
}

/// As `build_shor`, reusing an already-built polyhedron.
pub fn build_shor_from(program: &MixedBinaryProgram, p: &Polyhedron) -> SdpProblem {
    let order = program.nvars + 1;
    let mut sdp = SdpProblem::new(order);
    ArrowSpec::for_program(program).emit(&mut sdp);
    for i in 0..p.num_ineqs() {
        let m = lift_row(order, p.a_in.row(i), p.b_in[i]);
        sdp.push(m, ConSense::Le, 0.0, &p.row_origin[i].tag());
    }
    for i in 0..p.num_eqs() {
        let m = lift_row(order, p.a_eq.row(i), p.b_eq[i]);
        sdp.push(m, ConSense::Eq, 0.0, &format!("eqrow:{}", p.eq_origin[i]));
    }
    sdp.objective = Some(lift_objective(order, &program.objective));
    sdp
}

fn lift_objective(order: usize, c: &[f64]) -> SymMatrix {
    let entries: Vec<(usize, usize, f64)> = c
        .iter()
        .enumerate()
        .filter(|&(_, v)| *v != 0.0)
        .map(|(j, &v)| (0, j + 1, 0.5 * v))
        .collect();
    SymMatrix::from_entries(order, &entries)
}

/// Column-lift relaxation for pure-binary programs: besides the arrow
/// constraints, every column `Y e_i` and difference `Y (e_0 - e_i)` must lie
/// in the homogenization cone `Q = {(t, z) | A z <= t b, A_eq z = t b_eq, t >= 0}`.
pub fn build_ls(program: &MixedBinaryProgram) -> Result<SdpProblem, Error> {
    assert!(program.is_normalized(), "normalize() the program first");
    if !program.is_pure_binary() {
        return Err(Error::NotPureBinary);
    }
    let p = program.to_polyhedron();
    let n = program.nvars;
    let order = n + 1;
    let mut sdp = SdpProblem::new(order);
    ArrowSpec::for_program(program).emit(&mut sdp);

    // membership of Y w in Q expressed through <sym(c w^T), Y> for the
    // lifted functionals c = (-b_k, a_k) and c = -e_0 (the t >= 0 ray)
    for i in 1..=n {
        for (w, label) in [(col_vector(order, i), "col"), (e0_minus(order, i), "dif")] {
            let t_row = sym_outer(order, &neg_e0(order), &w);
            sdp.push(t_row, ConSense::Le, 0.0, &format!("ls-{label}-t:{}", i - 1));
            for k in 0..p.num_ineqs() {
                let c = lifted_functional(order, p.a_in.row(k), p.b_in[k]);
                let m = sym_outer(order, &c, &w);
                sdp.push(
                    m,
                    ConSense::Le,
                    0.0,
                    &format!("ls-{label}:{}:{}", i - 1, p.row_origin[k].tag()),
                );
            }
            for k in 0..p.num_eqs() {
                let c = lifted_functional(order, p.a_eq.row(k), p.b_eq[k]);
                let m = sym_outer(order, &c, &w);
                sdp.push(
                    m,
                    ConSense::Eq,
                    0.0,
                    &format!("ls-{label}:{}:eqrow:{}", i - 1, p.eq_origin[k]),
                );
            }
        }
    }
    sdp.objective = Some(lift_objective(order, &program.objective));
    Ok(sdp)
}

fn col_vector(order: usize, i: usize) -> Vec<f64> {
    let mut v = vec![0.0; order];
    v[i] = 1.0;
    v
}

fn e0_minus(order: usize, i: usize) -> Vec<f64> {
    let mut v = vec![0.0; order];
    v[0] = 1.0;
    v[i] = -1.0;
    v
}

fn neg_e0(order: usize) -> Vec<f64> {
    let mut v = vec![0.0; order];
    v[0] = -1.0;
    v
}

fn lifted_functional(order: usize, a: &[f64], b: f64) -> Vec<f64> {
    let mut c = vec![0.0; order];
    c[0] = -b;
    c[1..].copy_from_slice(a);
    c
}

/// Symmetrized outer product `(c w^T + w c^T) / 2`, so that
/// `<sym_outer(c, w), Y> = c^T Y w` for symmetric `Y`.
fn sym_outer(order: usize, c: &[f64], w: &[f64]) -> SymMatrix {
    let mut entries = Vec::new();
    for i in 0..order {
        for j in i..order {
            let v = if i == j {
                c[i] * w[i]
            } else {
                0.5 * (c[i] * w[j] + c[j] * w[i])
            };
            if v != 0.0 {
                entries.push((i, j, v));
            }
        }
    }
    SymMatrix::from_entries(order, &entries)
}
