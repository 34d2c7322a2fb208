//! SDPA sparse (.dat-s) writer.
//!
//! Layout: line 1 the constraint count, line 2 the block count (always 2),
//! line 3 the block sizes `N -K` where block 1 is the dense matrix block of
//! order N and block 2 a diagonal block with one nonnegative slack per `<=`
//! constraint (turning it into an equality), line 4 the rhs vector, then
//! one entry per line as `cons block i j value` with 1-based indices,
//! `i <= j`, the objective as constraint 0, and entries ordered by
//! (constraint, block, i, j). Reals carry 17 significant digits so the
//! output is byte-stable and parses back exactly.

use std::path::Path;

use crate::model::{ConSense, SdpProblem};
use crate::Error;

fn fmt_real(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn format_sdpa(sdp: &SdpProblem) -> String {
    let m = sdp.constraints.len();
    let slack_count = sdp
        .constraints
        .iter()
        .filter(|c| c.sense == ConSense::Le)
        .count();
    let mut out = String::new();
    out.push_str(&format!("{m}\n"));
    out.push_str("2\n");
    out.push_str(&format!("{} -{slack_count}\n", sdp.order));
    let rhs_line: Vec<String> = sdp.constraints.iter().map(|c| fmt_real(c.rhs)).collect();
    out.push_str(&rhs_line.join(" "));
    out.push('\n');
    if let Some(obj) = &sdp.objective {
        for &(i, j, v) in obj.entries() {
            out.push_str(&format!("0 1 {} {} {}\n", i + 1, j + 1, fmt_real(v)));
        }
    }
    let mut slack_seen = 0usize;
    for (ci, c) in sdp.constraints.iter().enumerate() {
        let cons = ci + 1;
        for &(i, j, v) in c.matrix.entries() {
            out.push_str(&format!("{cons} 1 {} {} {}\n", i + 1, j + 1, fmt_real(v)));
        }
        if c.sense == ConSense::Le {
            slack_seen += 1;
            out.push_str(&format!(
                "{cons} 2 {slack_seen} {slack_seen} {}\n",
                fmt_real(1.0)
            ));
        }
    }
    out
}

pub fn write_sdpa(sdp: &SdpProblem, path: &Path) -> Result<(), Error> {
    super::write_atomic(path, &format_sdpa(sdp)).map_err(Error::Io)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::SymMatrix;

    #[test]
    fn order_two_single_equality() {
        let mut sdp = SdpProblem::new(2);
        sdp.push(
            SymMatrix::from_entries(2, &[(0, 0, 1.0)]),
            ConSense::Eq,
            1.0,
            "homog",
        );
        let text = format_sdpa(&sdp);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[0], "1");
        assert_eq!(lines[1], "2");
        assert_eq!(lines[2], "2 -0");
        assert_eq!(lines[3], fmt_real(1.0));
        assert_eq!(lines[4], format!("1 1 1 1 {}", fmt_real(1.0)));
    }

    #[test]
    fn le_constraint_gets_slack_entry() {
        let mut sdp = SdpProblem::new(2);
        sdp.push(
            SymMatrix::from_entries(2, &[(0, 1, 0.5)]),
            ConSense::Le,
            0.0,
            "row",
        );
        let text = format_sdpa(&sdp);
        assert!(text.lines().any(|l| l == format!("1 2 1 1 {}", fmt_real(1.0))));
        assert!(text.contains(&format!("1 1 1 2 {}", fmt_real(0.5))));
    }

    #[test]
    fn output_is_stable_across_runs() {
        let mut sdp = SdpProblem::new(3);
        sdp.push(
            SymMatrix::from_entries(3, &[(0, 0, 1.0), (1, 2, -0.25)]),
            ConSense::Eq,
            1.0,
            "a",
        );
        sdp.push(
            SymMatrix::from_entries(3, &[(2, 2, 3.0)]),
            ConSense::Le,
            0.0,
            "b",
        );
        sdp.objective = Some(SymMatrix::from_entries(3, &[(0, 1, 0.5)]));
        assert_eq!(format_sdpa(&sdp), format_sdpa(&sdp));
    }
}
