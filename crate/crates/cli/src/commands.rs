use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use trisub::bounds::{
    asymptotic_size, best_corner, certified_upper_size, markov_tail, zero_square_center, ModelParams,
};
use trisub::exact::{verify_witness, SolveBudget, SolveResult, Solver, Variant};
use trisub::gen::{plant_special_corner, EntryDistribution, Seed};
use trisub::heur::{corner_then_extend, greedy_lower_bound, PipelineOptions};
use trisub::matcore::{format_matrix, format_selection, parse_matrix, CornerShape};

use crate::config::{SolverKind, SweepConfig};
use crate::sweep::{run_and_write, summarize, SweepRecord};
use crate::table::format_table;
use crate::verify::{format_report, run_verify, MAX_VERIFY_DIM};
use crate::CliError;

fn input<E: std::fmt::Display>(context: impl std::fmt::Display) -> impl FnOnce(E) -> CliError {
    move |e| CliError::Input(format!("{context}: {e}"))
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub variant: Variant,
    pub budget: SolveBudget,
    pub solver: SolverKind,
    pub restarts: usize,
    pub seed: u64,
    pub require_optimal: bool,
}

pub fn cmd_solve(path: &Path, opts: &SolveOptions, out: &mut dyn Write) -> Result<(), CliError> {
    let text = fs::read_to_string(path).map_err(input(path.display()))?;
    let m = parse_matrix(&text).map_err(input(path.display()))?;
    if !opts.solver.supports(opts.variant) {
        return Err(CliError::Input(format!("solver {} does not support variant {}", opts.solver, opts.variant)));
    }
    if opts.restarts == 0 {
        return Err(CliError::Input("restarts must be at least 1".into()));
    }
    let seed = Seed::new(opts.seed);
    let r: SolveResult = match opts.solver {
        SolverKind::Exact => Solver::new(opts.variant).budget(opts.budget).solve(&m),
        SolverKind::Greedy => greedy_lower_bound(&m, opts.variant, opts.restarts, &seed).expect("restarts >= 1"),
        SolverKind::CornerThenExtend => {
            corner_then_extend(&m, opts.variant, &PipelineOptions::new(opts.restarts), &seed).expect("supported")
        }
    };
    let verified = r.witness.size() == r.value && verify_witness(&m, &r.witness, opts.variant);
    let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
    writeln!(out, "variant: {}", opts.variant)?;
    writeln!(out, "solver: {}", opts.solver)?;
    writeln!(out, "size: {}x{}", m.rows(), m.cols())?;
    writeln!(out, "value: {}", r.value)?;
    writeln!(out, "optimal: {}", r.optimal)?;
    writeln!(out, "rows: {}", join(&r.witness.rows))?;
    writeln!(out, "cols: {}", join(&r.witness.cols))?;
    writeln!(out, "nodes: {}", r.nodes_expanded)?;
    writeln!(out, "millis: {}", r.elapsed_millis)?;
    writeln!(out, "verified: {verified}")?;
    if !verified {
        return Err(CliError::Invariant("the witness does not verify".into()));
    }
    if opts.require_optimal && !r.optimal {
        return Err(CliError::NotOptimal(r.value));
    }
    Ok(())
}

pub fn cmd_bounds(
    n: u64,
    p0: f64,
    delta: f64,
    m_min: Option<u64>,
    m_max: Option<u64>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let params = ModelParams::new(n, p0).map_err(input("bounds"))?;
    let certified = certified_upper_size(n, p0, delta).map_err(input("bounds"))?;
    let log_n = params.log_q_n();
    let centre = zero_square_center(n as f64, p0).map(|s| format!("{s:.5}")).unwrap_or_else(|_| "-".into());
    let summary = vec![vec![
        n.to_string(),
        p0.to_string(),
        delta.to_string(),
        format!("{log_n:.5}"),
        format!("{:.5}", asymptotic_size(params)),
        format!("{:.5}", 2.0 * log_n),
        centre,
        certified.to_string(),
    ]];
    let header = ["n", "p0", "delta", "log_Q_n", "asymptotic", "two_log_Q_n", "zero_square_centre", "certified"];
    out.write_all(format_table(&header, &summary).as_bytes())?;

    let lo = m_min.unwrap_or(1).max(1);
    let hi = m_max.unwrap_or(certified + 2).min(n);
    if lo > hi {
        return Ok(());
    }
    let mut profile = Vec::new();
    for m in lo..=hi {
        let (ell, e) = best_corner(n, m, p0).map_err(input("bounds"))?.expect("m <= n");
        let tail = markov_tail(n, m, p0).map_err(input("bounds"))?;
        profile.push(vec![m.to_string(), ell.to_string(), format!("{:.4}", e.log10()), format!("{tail:.6e}")]);
    }
    writeln!(out)?;
    out.write_all(format_table(&["m", "ell_star", "log10_expected", "markov_tail"], &profile).as_bytes())?;
    Ok(())
}

pub fn cmd_verify(max_dim: usize, samples: usize, seed: u64, out: &mut dyn Write) -> Result<(), CliError> {
    if max_dim == 0 || max_dim > MAX_VERIFY_DIM {
        return Err(CliError::Input(format!("max-dim must lie in 1..={MAX_VERIFY_DIM}")));
    }
    let report = run_verify(max_dim, samples, seed);
    out.write_all(format_report(&report).as_bytes())?;
    if report.passed() {
        Ok(())
    } else {
        Err(CliError::Invariant(format!("{} check(s) failed", report.failures.len().max(1))))
    }
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_plant(
    n: usize,
    k: usize,
    ell: Option<usize>,
    p0: f64,
    seed: u64,
    matrix_out: &Path,
    witness_out: Option<&Path>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let shape = CornerShape::new(k, ell.unwrap_or(k)).map_err(input("plant"))?;
    let dist = EntryDistribution::binary(p0).map_err(input("plant"))?;
    let (m, w) = plant_special_corner(n, n, shape, &dist, &Seed::new(seed)).map_err(input("plant"))?;
    let witness_path: PathBuf = witness_out.map(Path::to_path_buf).unwrap_or_else(|| {
        let mut p = matrix_out.as_os_str().to_owned();
        p.push(".witness");
        p.into()
    });
    fs::write(matrix_out, format_matrix(&m))?;
    fs::write(&witness_path, format_selection(&w))?;
    writeln!(out, "planted special {shape}-corner in a {n}x{n} matrix")?;
    writeln!(out, "matrix: {}", matrix_out.display())?;
    writeln!(out, "witness: {}", witness_path.display())?;
    Ok(())
}

/// Sandwich check across the five variants of each cell, for exact
/// optimal results only.
fn check_sweep(records: &[SweepRecord]) -> Result<(), CliError> {
    let mut cells: Vec<&SweepRecord> = records.iter().filter(|r| r.optimal).collect();
    cells.sort_by_key(|r| (r.n, r.replicate, r.variant));
    for group in cells.chunk_by(|a, b| (a.n, a.replicate) == (b.n, b.replicate)) {
        if group.len() != Variant::ALL.len() {
            continue;
        }
        let v: Vec<usize> = group.iter().map(|r| r.value).collect();
        let [t, s, p, ps, z] = [v[0], v[1], v[2], v[3], v[4]];
        if !(s <= t && t <= p && s <= ps && ps <= p && t >= z && z >= p / 2) {
            return Err(CliError::Invariant(format!("sandwich violated in cell {}", group[0].seed)));
        }
    }
    Ok(())
}

pub fn cmd_sweep(path: &Path, workers: Option<usize>, out: &mut dyn Write) -> Result<(), CliError> {
    let text = fs::read_to_string(path).map_err(input(path.display()))?;
    let mut cfg = SweepConfig::parse(&text).map_err(input(path.display()))?;
    if let Some(w) = workers {
        cfg.workers = w;
    }
    let records = run_and_write(&cfg)?;
    if cfg.solver == SolverKind::Exact {
        check_sweep(&records)?;
    }
    let rows: Vec<Vec<String>> = summarize(&records)
        .iter()
        .map(|s| {
            vec![
                s.n.to_string(),
                s.variant.to_string(),
                s.count.to_string(),
                format!("{:.3}", s.mean_value),
                format!("{:.4}", s.mean_ratio),
                format!("{:.2}", s.fraction_optimal),
            ]
        })
        .collect();
    out.write_all(
        format_table(&["n", "variant", "count", "mean_value", "mean_ratio", "optimal"], &rows).as_bytes(),
    )?;
    writeln!(out, "wrote {} records to {}", records.len(), cfg.output_path.display())?;
    writeln!(out, "summary: {}", cfg.summary_path().display())?;
    Ok(())
}
