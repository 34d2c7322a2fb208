//! Facial-reduction preprocessing for SDP relaxations of mixed-binary
//! linear programs.
//!
//! The pipeline reads a mixed-binary program, lifts it to an SDP relaxation
//! (Shor or Lovász–Schrijver), and shrinks the matrix variable by one
//! facial-reduction step driven by polyhedral structure:
//!
//! * affine reduction from the affine hull of the constraint polyhedron,
//! * partial reduction over the diagonal and diagonally-dominant dual cones,
//! * the sieve presolve that deletes positive-definite zero-rhs blocks.
//!
//! Reduced problems are emitted in SDPA sparse format together with a JSON
//! report of sizes, index sets and timings. A brute-force verification
//! oracle (feasible-set enumeration, exposing-vector checks, Slater
//! certificates) backs the whole construction at desk scale.
//!
//! ```
//! use sdpfr::{MixedBinaryProgram, Row, Sense};
//! use sdpfr::reduce::{affine_fr, FrConfig};
//!
//! // two binaries tied together: x1 + x2 = 1 over the binary box
//! let program = MixedBinaryProgram::binary(
//!     2,
//!     vec![Row::new(vec![(0, 1.0), (1, 1.0)], Sense::Eq, 1.0)],
//!     "pair",
//! )
//! .normalize()
//! .unwrap();
//! let sdp = sdpfr::relax::build_shor(&program);
//! let out = affine_fr(&program, &sdp, &FrConfig::default());
//! assert_eq!(out.report.original_order, 3);
//! assert_eq!(out.report.reduced_order, 2);
//! assert_eq!(out.exposing.rank(), 1);
//! ```

#![allow(clippy::needless_range_loop)]

use thiserror::Error as ThisError;

pub mod hull;
pub mod io;
pub mod linalg;
pub mod model;
pub mod oracle;
mod par;
pub mod reduce;
pub mod relax;
pub mod simplex;

pub use linalg::{Matrix, PsdClass};
pub use model::{
    ConSense, ExposingVector, FacialRangeVector, Method, MixedBinaryProgram, ObjectiveSense,
    Polyhedron, ReductionReport, ReductionStatus, Row, SdpProblem, Sense, SymMatrix,
};

/// Crate-wide error type.
#[derive(Debug, ThisError)]
pub enum Error {
    #[error("inconsistent bounds on variable {var}: [{lower}, {upper}]")]
    InconsistentBounds { var: usize, lower: f64, upper: f64 },
    #[error("invalid program: {0}")]
    InvalidProgram(String),
    #[error("operation requires a pure-binary program")]
    NotPureBinary,
    #[error("unsupported instance: {0}")]
    UnsupportedInstance(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("the polyhedron is empty")]
    EmptyPolyhedron,
    #[error("LP hit the preprocessing time limit")]
    LpTimeLimit,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
