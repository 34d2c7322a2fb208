//! Property tests for the structural invariants of the value types and the
//! dense kernels.

use proptest::prelude::*;

use sdpfr::linalg::{null_space_basis, psd_factor, row_reduce, PsdClass};
use sdpfr::model::{MixedBinaryProgram, Row, SymMatrix};
use sdpfr::{Matrix, Sense};

struct Lcg(u64);

impl Lcg {
    fn next_int(&mut self, lo: i64, hi: i64) -> i64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        lo + ((self.0 >> 33) % (hi - lo + 1) as u64) as i64
    }
}

#[test]
fn rank_nullity_at_scale() {
    // 200 random matrices up to 20x20
    let mut rng = Lcg(0xfeed);
    for _ in 0..200 {
        let r = rng.next_int(1, 20) as usize;
        let c = rng.next_int(1, 20) as usize;
        let rows: Vec<Vec<f64>> = (0..r)
            .map(|_| (0..c).map(|_| rng.next_int(-5, 5) as f64).collect())
            .collect();
        let m = Matrix::from_rows(&rows);
        let rank = row_reduce(&m, 1e-9).rank;
        let basis = null_space_basis(&m, 1e-9);
        assert_eq!(rank + basis.ncols(), c);
        if basis.ncols() > 0 {
            let residual = m.matmul(&basis).max_abs();
            assert!(residual <= 1e-10 * (1.0 + m.max_abs()), "residual {residual:e}");
        }
    }
}

fn small_matrix() -> impl Strategy<Value = Matrix> {
    (1usize..8, 1usize..8)
        .prop_flat_map(|(r, c)| {
            proptest::collection::vec(
                proptest::collection::vec(-4.0f64..4.0, c),
                r,
            )
        })
        .prop_map(|rows| Matrix::from_rows(&rows))
}

proptest! {
    #[test]
    fn sym_matrix_lookup_is_symmetric(
        entries in proptest::collection::vec((0usize..6, 0usize..6, -5.0f64..5.0), 0..12)
    ) {
        let m = SymMatrix::from_entries(6, &entries);
        for i in 0..6 {
            for j in 0..6 {
                prop_assert_eq!(m.get(i, j), m.get(j, i));
            }
        }
    }

    #[test]
    fn rank_plus_nullity_is_column_count(m in small_matrix()) {
        let rank = row_reduce(&m, 1e-9).rank;
        let basis = null_space_basis(&m, 1e-9);
        prop_assert_eq!(rank + basis.ncols(), m.ncols());
        // and the basis actually annihilates the matrix
        if basis.ncols() > 0 {
            let prod = m.matmul(&basis);
            prop_assert!(prod.max_abs() <= 1e-10 * (1.0 + m.max_abs()));
        }
    }

    #[test]
    fn gram_matrices_are_never_indefinite(u in small_matrix()) {
        let w = u.matmul(&u.transpose());
        let rep = psd_factor(&w, 1e-9);
        prop_assert!(rep.class != PsdClass::Indefinite);
    }

    #[test]
    fn normalize_is_idempotent(
        nvars in 1usize..6,
        rhs in proptest::collection::vec(-4.0f64..4.0, 0..5),
        flip in proptest::bool::ANY,
    ) {
        let rows: Vec<Row> = rhs
            .iter()
            .enumerate()
            .map(|(k, &b)| {
                let sense = match k % 3 {
                    0 => Sense::Le,
                    1 => Sense::Ge,
                    _ => Sense::Eq,
                };
                Row::new(vec![(k % nvars, 1.0 + k as f64)], sense, b)
            })
            .collect();
        let mut program = MixedBinaryProgram::binary(nvars, rows, "prop");
        if flip {
            program.objective_sense = sdpfr::ObjectiveSense::Max;
            program.objective = (0..nvars).map(|j| j as f64 - 1.0).collect();
        }
        let once = program.normalize().unwrap();
        let twice = once.normalize().unwrap();
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn congruence_matches_dense_arithmetic(
        entries in proptest::collection::vec((0usize..5, 0usize..5, -3.0f64..3.0), 1..10),
        cols in proptest::collection::vec(proptest::collection::vec(-2.0f64..2.0, 5), 1..4),
    ) {
        let m = SymMatrix::from_entries(5, &entries);
        let v = Matrix::from_columns(5, &cols);
        let fast = m.congruence(&v).to_dense();
        let slow = v.transpose().matmul(&m.to_dense()).matmul(&v);
        for i in 0..v.ncols() {
            for j in 0..v.ncols() {
                prop_assert!((fast.get(i, j) - slow.get(i, j)).abs() <= 1e-9);
            }
        }
    }
}
