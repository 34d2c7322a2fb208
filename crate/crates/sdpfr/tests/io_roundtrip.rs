//! I/O fidelity: MPS round trips preserve the feasible set, SDPA output
//! reparses bit-exactly, batch runs match single runs, and the CLI driver
//! produces its artifacts end to end.

mod common;

use std::path::Path;

use sdpfr::io::cli::{self, CliConfig, Command, MethodSel};
use sdpfr::io::{mps, report, sdpa};
use sdpfr::model::Method;
use sdpfr::oracle;
use sdpfr::reduce::{self, FrConfig};
use sdpfr::relax;

#[test]
fn mps_round_trip_preserves_feasible_set() {
    for seed in 0..25u64 {
        let program = oracle::gen_random_with(2 + (seed % 5) as usize, (seed % 7) as usize, 0.4, 8000 + seed);
        let text = mps::format_mps(&program);
        let back = mps::parse_mps(&text, &program.name)
            .unwrap()
            .normalize()
            .unwrap();
        assert_eq!(program.nvars, back.nvars);
        assert_eq!(program.binary_set, back.binary_set);
        let f1 = oracle::enumerate_f(&program, oracle::DEFAULT_ENUM_LIMIT);
        let f2 = oracle::enumerate_f(&back, oracle::DEFAULT_ENUM_LIMIT);
        assert_eq!(f1.points, f2.points, "seed {seed}: feasible sets differ");
    }
}

#[test]
fn sdpa_output_reparses_bit_exactly() {
    for seed in [0u64, 3, 11] {
        let program = oracle::gen_random(4, 6, 9000 + seed);
        let sdp = relax::build_shor(&program);
        let text = sdpa::format_sdpa(&sdp);
        let parsed = common::parse_sdpa(&text);
        assert_eq!(parsed.m_dim, sdp.constraints.len());
        assert_eq!(parsed.n_block, 2);
        assert_eq!(parsed.block_sizes[0], sdp.order as i64);
        let expected_slacks = sdp
            .constraints
            .iter()
            .filter(|c| c.sense == sdpfr::ConSense::Le)
            .count() as i64;
        assert_eq!(parsed.block_sizes[1], -expected_slacks);
        // rhs and every constraint matrix survive the text round trip with
        // no loss at all
        for (c, r) in sdp.constraints.iter().zip(&parsed.rhs) {
            assert_eq!(c.rhs, *r);
        }
        let matrices = common::sdpa_constraints(&parsed);
        for (c, m) in sdp.constraints.iter().zip(&matrices) {
            assert_eq!(c.matrix.entries(), m.entries(), "seed {seed}");
        }
    }
}

#[test]
fn batch_reports_match_single_runs() {
    let fr = FrConfig::default();
    let programs: Vec<_> = (0..6).map(|k| oracle::gen_random(5, 6, 9500 + k)).collect();
    let rows = cli::bench_batch(&programs, &fr);
    for (mi, method) in [Method::Affine, Method::PfrD, Method::PfrDd, Method::Sieve]
        .iter()
        .enumerate()
    {
        let mut reduced = 0;
        let mut ratio = 0.0;
        for p in &programs {
            let sdp = relax::build_shor(p);
            let rep = cli::run_method(*method, p, &sdp, &fr).0;
            if rep.reduced_order < rep.original_order {
                reduced += 1;
            }
            ratio += rep.ratio;
        }
        assert_eq!(rows[mi].reduced_instances, reduced);
        assert!((rows[mi].average_ratio - ratio / programs.len() as f64).abs() < 1e-12);
    }
}

#[test]
fn report_json_round_trips_methods() {
    let program = common::triangle_program();
    let sdp = relax::build_shor(&program);
    let fr = FrConfig::default();
    let reports = vec![
        reduce::affine_fr(&program, &sdp, &fr).report,
        reduce::pfr_d(&program, &sdp, &fr).report,
        reduce::pfr_dd(&program, &sdp, &fr).report,
        reduce::sieve(&sdp, &fr).report,
    ];
    let text = report::format_report(&program.name, &reports);
    let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
    let entries = parsed["reports"].as_array().unwrap();
    assert_eq!(entries.len(), 4);
    assert_eq!(entries[0]["method"], "affine");
    assert_eq!(entries[0]["original_order"], 4);
    assert_eq!(entries[0]["reduced_order"], 3);
    assert_eq!(entries[0]["ratio"], 0.75);
    assert_eq!(entries[1]["method"], "pfr_d");
    assert_eq!(entries[1]["reduced_order"], 3);
    assert_eq!(entries[2]["method"], "pfr_dd");
    assert_eq!(entries[2]["reduced_order"], 3);
    assert_eq!(entries[3]["method"], "sieve");
    assert_eq!(entries[3]["reduced_order"], 4);
    assert_eq!(entries[3]["status"], "no_reduction");
}

#[test]
fn cli_reduce_writes_artifacts() {
    let dir = std::env::temp_dir().join(format!("sdpfr-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut cfg = CliConfig::new(Command::Reduce);
    cfg.input_path = Some(
        Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("tests/fixtures/example1.mps"),
    );
    cfg.method = MethodSel::All;
    cfg.output_path = Some(dir.join("out.dat-s"));
    cfg.report_path = Some(dir.join("report.json"));
    assert_eq!(cli::run_cli(&cfg), 0);
    for tag in ["affine", "pfr_d", "pfr_dd", "sieve"] {
        let path = dir.join(format!("out.{tag}.dat-s"));
        assert!(path.is_file(), "missing {path:?}");
    }
    let report_text = std::fs::read_to_string(dir.join("report.json")).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(&report_text).unwrap();
    let entries = parsed["reports"].as_array().unwrap();
    // r_A = 3, r_P = 3 (x3 fixed at zero), r_P+ = 3, r_S = 4
    assert_eq!(entries[0]["reduced_order"], 3);
    assert_eq!(entries[1]["reduced_order"], 3);
    assert_eq!(entries[2]["reduced_order"], 3);
    assert_eq!(entries[3]["reduced_order"], 4);
    // the written SDPA artifacts are stable across a rerun
    let first = std::fs::read_to_string(dir.join("out.affine.dat-s")).unwrap();
    assert_eq!(cli::run_cli(&cfg), 0);
    let second = std::fs::read_to_string(dir.join("out.affine.dat-s")).unwrap();
    assert_eq!(first, second);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn cli_missing_input_is_an_error() {
    let cfg = CliConfig::new(Command::Reduce);
    assert_eq!(cli::run_cli(&cfg), 2);
}
