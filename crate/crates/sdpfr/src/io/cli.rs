//! Command-line driver: `reduce`, `hull`, `verify` and `bench`.

use std::path::{Path, PathBuf};
use std::time::Instant;

use crate::hull;
use crate::io::{mps, report, sdpa};
use crate::linalg;
use crate::model::{Method, MixedBinaryProgram, ReductionReport, ReductionStatus, SdpProblem};
use crate::oracle::{self, SlaterOutcome};
use crate::par;
use crate::reduce::{self, FrConfig};
use crate::simplex::Limits;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Reduce,
    Hull,
    Verify,
    Bench,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodSel {
    One(Method),
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelaxKind {
    Shor,
    Ls,
}

/// Parsed command-line configuration.
#[derive(Clone, Debug)]
pub struct CliConfig {
    pub command: Command,
    pub method: MethodSel,
    pub relaxation: RelaxKind,
    pub input_path: Option<PathBuf>,
    pub output_path: Option<PathBuf>,
    pub report_path: Option<PathBuf>,
    pub lp_time_limit_seconds: f64,
    pub tol_rank: f64,
    pub tol_feas: f64,
    pub seed: u64,
    /// Batch size for `verify` and generated `bench` runs.
    pub instances: usize,
    /// Directory of .mps files for `bench` on real instances.
    pub mps_dir: Option<PathBuf>,
    /// Worker threads for batch commands; 0 keeps the default.
    pub jobs: usize,
}

impl CliConfig {
    pub fn new(command: Command) -> Self {
        CliConfig {
            command,
            method: MethodSel::All,
            relaxation: RelaxKind::Shor,
            input_path: None,
            output_path: None,
            report_path: None,
            lp_time_limit_seconds: 300.0,
            tol_rank: linalg::DEFAULT_RANK_TOL,
            tol_feas: 1e-8,
            seed: 0,
            instances: 50,
            mps_dir: None,
            jobs: 0,
        }
    }

    fn fr_config(&self) -> FrConfig {
        FrConfig {
            limits: Limits::seconds(self.lp_time_limit_seconds),
            tol_rank: self.tol_rank,
            tol_feas: self.tol_feas,
        }
    }
}

/// Runs one command; returns the process exit code
/// (0 ok, 1 verification failure, 2 error).
pub fn run_cli(cfg: &CliConfig) -> i32 {
    match dispatch(cfg) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn dispatch(cfg: &CliConfig) -> Result<bool, Error> {
    match cfg.command {
        Command::Reduce => run_reduce(cfg).map(|_| true),
        Command::Hull => run_hull(cfg).map(|_| true),
        Command::Verify => {
            let failures = run_verification(cfg.instances, cfg.seed, &cfg.fr_config());
            for f in &failures {
                eprintln!("FAIL {f}");
            }
            println!(
                "verify: {} instances, {}",
                cfg.instances,
                if failures.is_empty() {
                    "all checks passed".to_string()
                } else {
                    format!("{} failures", failures.len())
                }
            );
            Ok(failures.is_empty())
        }
        Command::Bench => run_bench(cfg).map(|_| true),
    }
}

fn require_input(cfg: &CliConfig) -> Result<&Path, Error> {
    cfg.input_path
        .as_deref()
        .ok_or_else(|| Error::InvalidProgram("an input path is required".into()))
}

fn load_program(cfg: &CliConfig) -> Result<MixedBinaryProgram, Error> {
    mps::read_mps(require_input(cfg)?)?.normalize()
}

fn build_relaxation(cfg: &CliConfig, program: &MixedBinaryProgram) -> Result<SdpProblem, Error> {
    match cfg.relaxation {
        RelaxKind::Shor => Ok(crate::relax::build_shor(program)),
        RelaxKind::Ls => crate::relax::build_ls(program),
    }
}

fn methods_of(sel: MethodSel) -> Vec<Method> {
    match sel {
        MethodSel::One(m) => vec![m],
        MethodSel::All => vec![Method::Affine, Method::PfrD, Method::PfrDd, Method::Sieve],
    }
}

/// Runs one engine and returns its report plus the reduced problem.
pub fn run_method(
    method: Method,
    program: &MixedBinaryProgram,
    sdp: &SdpProblem,
    fr: &FrConfig,
) -> (ReductionReport, SdpProblem) {
    match method {
        Method::Affine => {
            let out = reduce::affine_fr(program, sdp, fr);
            (out.report, out.reduced.problem)
        }
        Method::PfrD => {
            let out = reduce::pfr_d(program, sdp, fr);
            (out.report, out.reduced.problem)
        }
        Method::PfrDd => {
            let out = reduce::pfr_dd(program, sdp, fr);
            (out.report, out.reduced.problem)
        }
        Method::Sieve => {
            let out = reduce::sieve(sdp, fr);
            (out.report, out.reduced.problem)
        }
    }
}

fn run_reduce(cfg: &CliConfig) -> Result<(), Error> {
    let program = load_program(cfg)?;
    let sdp = build_relaxation(cfg, &program)?;
    let fr = cfg.fr_config();
    let methods = methods_of(cfg.method);
    let mut reports = Vec::new();
    for &method in &methods {
        let (report, reduced) = run_method(method, &program, &sdp, &fr);
        println!(
            "{}: {} -> {} (ratio {:.3}, {})",
            method.as_str(),
            report.original_order,
            report.reduced_order,
            report.ratio,
            report.status.as_str()
        );
        if let Some(out) = &cfg.output_path {
            let path = if methods.len() == 1 {
                out.clone()
            } else {
                tagged_path(out, method.as_str())
            };
            sdpa::write_sdpa(&reduced, &path)?;
        }
        reports.push(report);
    }
    if let Some(rp) = &cfg.report_path {
        report::write_report(&program.name, &reports, rp)?;
    }
    Ok(())
}

fn tagged_path(path: &Path, tag: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let ext = path
        .extension()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = if ext.is_empty() {
        format!("{stem}.{tag}")
    } else {
        format!("{stem}.{tag}.{ext}")
    };
    path.with_file_name(name)
}

fn run_hull(cfg: &CliConfig) -> Result<(), Error> {
    let program = load_program(cfg)?;
    let p = program.to_polyhedron();
    let limits = Limits::seconds(cfg.lp_time_limit_seconds);
    let point = crate::simplex::find_feasible_point(&p, &limits)?.ok_or(Error::EmptyPolyhedron)?;
    let detected = hull::implicit_equalities_full(&p, Some(&point), &limits)?;
    for &row in &detected.ambiguous {
        eprintln!(
            "warning: row {row} ({}) has an ambiguous certificate value",
            p.row_origin[row].tag()
        );
    }
    let h = hull::build_affine_hull(&p, &detected.rows);
    println!("dim {}", h.dim);
    println!("implicit equalities: {}", detected.rows.len());
    for &row in &detected.rows {
        let coeffs: Vec<String> = (0..p.nvars)
            .filter(|&j| p.a_in.get(row, j) != 0.0)
            .map(|j| format!("{:+} x{}", p.a_in.get(row, j), j))
            .collect();
        println!(
            "  [{}] {} = {}",
            p.row_origin[row].tag(),
            coeffs.join(" "),
            p.b_in[row] + 0.0
        );
    }
    for i in 0..p.num_eqs() {
        println!("  [eqrow:{}] declared equality", p.eq_origin[i]);
    }
    let (zeros, ones) = hull::detect_fixed_variables(&h);
    println!("fixed at 0: {zeros:?}");
    println!("fixed at 1: {ones:?}");
    Ok(())
}

/// Seeded verification batch; returns human-readable failure labels, empty
/// when everything holds.
pub fn run_verification(count: usize, seed: u64, fr: &FrConfig) -> Vec<String> {
    let results = par::map_indices(count, |k| {
        let s = seed.wrapping_add(k as u64);
        verify_one(s, fr).err()
    });
    results.into_iter().flatten().collect()
}

fn verify_one(seed: u64, fr: &FrConfig) -> Result<(), String> {
    let nvars = 2 + (seed % 7) as usize; // 2..=8
    let nrows = (seed % 11) as usize; // 0..=10
    let tight = (seed % 5) as f64 / 5.0;
    let program = oracle::gen_random_with(nvars, nrows, tight, seed);
    let fail = |msg: &str| Err(format!("seed {seed}: {msg}"));

    let f = oracle::enumerate_f(&program, oracle::DEFAULT_ENUM_LIMIT);
    if !f.complete {
        return fail("enumeration incomplete");
    }
    let sdp = crate::relax::build_shor(&program);
    let affine = reduce::affine_fr(&program, &sdp, fr);
    let d = reduce::pfr_d(&program, &sdp, fr);
    let dd = reduce::pfr_dd(&program, &sdp, fr);
    let sv = reduce::sieve(&sdp, fr);

    let n1 = sdp.order;
    let (ra, rp, rpp, rs) = (
        affine.report.reduced_order,
        d.report.reduced_order,
        dd.report.reduced_order,
        sv.report.reduced_order,
    );
    if !(ra <= rpp && rpp <= rp && rp <= rs && rs == n1) {
        return fail(&format!("size ordering violated: {ra} {rpp} {rp} {rs}"));
    }
    if sv.report.status != ReductionStatus::NoReduction {
        return fail("sieve reduced a lifted system");
    }
    for (label, w) in [
        ("affine", affine.exposing.matrix()),
        ("pfr_d", d.exposing.matrix()),
        ("pfr_dd", dd.exposing.matrix()),
    ] {
        if !oracle::check_exposing(w, &f, 1e-9) {
            return fail(&format!("{label} exposing vector not valid"));
        }
    }
    // rank of the block exposing vector equals the fixed-variable count
    let rank = linalg::row_reduce(&dd.exposing.matrix().to_dense(), fr.tol_rank).rank;
    if rank != dd.report.fixed_zero.len() + dd.report.fixed_one.len() {
        return fail("block exposing vector rank mismatch");
    }
    // one-step termination of both partial engines
    let elim_d = program.eliminate_fixed(&d.report.fixed_zero, &[]);
    let again_d = reduce::pfr_d(&elim_d, &crate::relax::build_shor(&elim_d), fr);
    if again_d.exposing.rank() != 0 {
        return fail("pfr_d reduced twice");
    }
    let elim_dd = program.eliminate_fixed(&dd.report.fixed_zero, &dd.report.fixed_one);
    let again_dd = reduce::pfr_dd(&elim_dd, &crate::relax::build_shor(&elim_dd), fr);
    if again_dd.exposing.rank() != 0 {
        return fail("pfr_dd reduced twice");
    }
    // Slater restoration when the hull already matches the feasible points
    if !f.is_empty() {
        let cert = oracle::slater_certificate(&affine.reduced, &f);
        let aff_rank_points = affine_rank(&f.points);
        if aff_rank_points == affine.report.reduced_order
            && cert.outcome != SlaterOutcome::Restored
        {
            return fail("Slater certificate missing on matched hull");
        }
    }
    Ok(())
}

/// Number of affinely independent points (rank of lifted point matrix).
pub fn affine_rank(points: &[Vec<f64>]) -> usize {
    if points.is_empty() {
        return 0;
    }
    let lifted: Vec<Vec<f64>> = points
        .iter()
        .map(|x| {
            let mut r = Vec::with_capacity(x.len() + 1);
            r.push(1.0);
            r.extend_from_slice(x);
            r
        })
        .collect();
    let m = linalg::Matrix::from_rows(&lifted);
    linalg::row_reduce(&m, linalg::DEFAULT_RANK_TOL).rank
}

/// Per-method aggregate of a bench batch.
#[derive(Clone, Debug)]
pub struct BenchRow {
    pub method: Method,
    pub reduced_instances: usize,
    pub average_ratio: f64,
}

pub fn format_bench_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from("method,reduced_instances,average_ratio\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{:.4}\n",
            r.method.as_str(),
            r.reduced_instances,
            r.average_ratio
        ));
    }
    out
}

/// Runs all four engines on every instance and aggregates the reduction
/// counts and average ratios per method.
pub fn bench_batch(programs: &[MixedBinaryProgram], fr: &FrConfig) -> Vec<BenchRow> {
    let methods = [Method::Affine, Method::PfrD, Method::PfrDd, Method::Sieve];
    let per_instance = par::map_indices(programs.len(), |i| {
        let program = &programs[i];
        let sdp = crate::relax::build_shor(program);
        methods.map(|m| run_method(m, program, &sdp, fr).0)
    });
    methods
        .iter()
        .enumerate()
        .map(|(mi, &method)| {
            let mut reduced = 0usize;
            let mut ratio_sum = 0.0;
            for inst in &per_instance {
                let rep = &inst[mi];
                if rep.reduced_order < rep.original_order {
                    reduced += 1;
                }
                ratio_sum += rep.ratio;
            }
            BenchRow {
                method,
                reduced_instances: reduced,
                average_ratio: if per_instance.is_empty() {
                    1.0
                } else {
                    ratio_sum / per_instance.len() as f64
                },
            }
        })
        .collect()
}

fn run_bench(cfg: &CliConfig) -> Result<(), Error> {
    let start = Instant::now();
    let programs: Vec<MixedBinaryProgram> = match &cfg.mps_dir {
        Some(dir) => {
            let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|e| e == "mps"))
                .collect();
            paths.sort();
            paths
                .iter()
                .map(|p| mps::read_mps(p)?.normalize())
                .collect::<Result<_, _>>()?
        }
        None => (0..cfg.instances)
            .map(|k| {
                let s = cfg.seed.wrapping_add(k as u64);
                oracle::gen_random_with(2 + (s % 9) as usize, (s % 13) as usize, 0.4, s)
            })
            .collect(),
    };
    let rows = with_pool(cfg.jobs, || bench_batch(&programs, &cfg.fr_config()));
    let csv = format_bench_csv(&rows);
    match &cfg.output_path {
        Some(p) => super::write_atomic(p, &csv)?,
        None => print!("{csv}"),
    }
    eprintln!(
        "bench: {} instances in {:.2}s",
        programs.len(),
        start.elapsed().as_secs_f64()
    );
    Ok(())
}

#[cfg(feature = "parallel")]
fn with_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    if jobs == 0 {
        return f();
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool")
        .install(f)
}

#[cfg(not(feature = "parallel"))]
fn with_pool<T: Send>(_jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    f()
}
