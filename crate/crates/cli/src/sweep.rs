//! Monte Carlo sweeps over `(n, replicate)` cells.
//!
//! Cell `(i, r)` (index of `n` in `n_values`, replicate) owns the substream
//! `master:i.r`. Its matrix is drawn from child `0`; the randomized solver
//! for the `v`-th configured variant draws from child `1 + v`. Cells are
//! independent, so the worker count never changes the output.

use std::fmt::Write as _;
use std::fs;
use std::io;

use serde_json::json;
use trisub::bounds::log_q;
use trisub::exact::{SolveResult, Solver, Variant};
use trisub::gen::{sample_matrix, Seed};
use trisub::heur::{corner_then_extend, greedy_lower_bound, PipelineOptions};
use trisub::par::Exec;

use crate::config::{SolverKind, SweepConfig};

pub const CSV_HEADER: &str = "n,p0,variant,replicate,seed,value,ratio,optimal,solver,nodes,millis";

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRecord {
    pub n: usize,
    pub p0: f64,
    pub variant: Variant,
    pub replicate: usize,
    /// Substream label of the cell, `master:i.r`.
    pub seed: String,
    pub value: usize,
    /// `value / log_Q n`.
    pub ratio: f64,
    pub optimal: bool,
    pub solver: SolverKind,
    pub nodes: u64,
    pub elapsed_millis: u64,
}

impl SweepRecord {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{:.12},{},{},{},{}",
            self.n,
            self.p0,
            self.variant,
            self.replicate,
            self.seed,
            self.value,
            self.ratio,
            self.optimal,
            self.solver,
            self.nodes,
            self.elapsed_millis
        )
    }
}

/// Solves one matrix with the configured solver.
pub fn run_solver(
    cfg: &SweepConfig,
    m: &trisub::matcore::BoolMatrix,
    variant: Variant,
    seed: &Seed,
) -> SolveResult {
    match cfg.solver {
        SolverKind::Exact => Solver::new(variant).budget(cfg.budget).solve(m),
        SolverKind::Greedy => greedy_lower_bound(m, variant, cfg.restarts, seed).expect("restarts >= 1"),
        SolverKind::CornerThenExtend => {
            corner_then_extend(m, variant, &PipelineOptions::new(cfg.restarts), seed).expect("variant validated")
        }
    }
}

/// All records, sorted by `(n, variant, replicate)`.
pub fn run_sweep(cfg: &SweepConfig) -> Vec<SweepRecord> {
    let dist = cfg.distribution();
    let q = 1.0 / cfg.p0;
    let cells: Vec<(usize, usize)> =
        (0..cfg.n_values.len()).flat_map(|i| (0..cfg.replicates).map(move |r| (i, r))).collect();
    let per_cell = Exec::from_workers(cfg.workers).map_slice(&cells, |&(i, r)| {
        let n = cfg.n_values[i];
        let cell = Seed::with_stream(cfg.master_seed, &[i as u64, r as u64]);
        let m = sample_matrix(n, n, &dist, &cell.child(0)).expect("n >= 2");
        let log_n = log_q(n as f64, q).expect("n >= 2 and p0 < 1");
        cfg.variants
            .iter()
            .enumerate()
            .map(|(v, &variant)| {
                let res = run_solver(cfg, &m, variant, &cell.child(1 + v as u64));
                SweepRecord {
                    n,
                    p0: cfg.p0,
                    variant,
                    replicate: r,
                    seed: cell.to_string(),
                    value: res.value,
                    ratio: res.value as f64 / log_n,
                    optimal: res.optimal,
                    solver: cfg.solver,
                    nodes: res.nodes_expanded,
                    elapsed_millis: if cfg.timing { res.elapsed_millis } else { 0 },
                }
            })
            .collect::<Vec<_>>()
    });
    let mut records: Vec<SweepRecord> = per_cell.into_iter().flatten().collect();
    records.sort_by_key(|r| (r.n, r.variant, r.replicate));
    records
}

pub fn to_csv(records: &[SweepRecord]) -> String {
    let mut out = String::with_capacity(64 * (records.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in records {
        writeln!(out, "{}", r.csv_line()).unwrap();
    }
    out
}

/// Per-`(n, variant)` statistics for the JSON sidecar.
#[derive(Clone, Debug, PartialEq)]
pub struct CellSummary {
    pub n: usize,
    pub variant: Variant,
    pub count: usize,
    pub mean_value: f64,
    pub mean_ratio: f64,
    pub min_ratio: f64,
    pub max_ratio: f64,
    pub fraction_optimal: f64,
    pub mean_nodes: f64,
}

pub fn summarize(records: &[SweepRecord]) -> Vec<CellSummary> {
    let mut out: Vec<CellSummary> = Vec::new();
    for group in records.chunk_by(|a, b| (a.n, a.variant) == (b.n, b.variant)) {
        let k = group.len() as f64;
        out.push(CellSummary {
            n: group[0].n,
            variant: group[0].variant,
            count: group.len(),
            mean_value: group.iter().map(|r| r.value as f64).sum::<f64>() / k,
            mean_ratio: group.iter().map(|r| r.ratio).sum::<f64>() / k,
            min_ratio: group.iter().map(|r| r.ratio).fold(f64::INFINITY, f64::min),
            max_ratio: group.iter().map(|r| r.ratio).fold(f64::NEG_INFINITY, f64::max),
            fraction_optimal: group.iter().filter(|r| r.optimal).count() as f64 / k,
            mean_nodes: group.iter().map(|r| r.nodes as f64).sum::<f64>() / k,
        });
    }
    out
}

pub fn summary_json(cfg: &SweepConfig, records: &[SweepRecord]) -> String {
    let cells: Vec<_> = summarize(records)
        .into_iter()
        .map(|s| {
            json!({
                "n": s.n,
                "variant": s.variant.token(),
                "count": s.count,
                "mean_value": s.mean_value,
                "mean_ratio": s.mean_ratio,
                "min_ratio": s.min_ratio,
                "max_ratio": s.max_ratio,
                "fraction_optimal": s.fraction_optimal,
                "mean_nodes": s.mean_nodes,
            })
        })
        .collect();
    let doc = json!({
        "p0": cfg.p0,
        "solver": cfg.solver.name(),
        "master_seed": cfg.master_seed,
        "replicates": cfg.replicates,
        "cells": cells,
    });
    serde_json::to_string_pretty(&doc).expect("plain values") + "\n"
}

/// Runs the sweep and writes the CSV and its JSON summary.
pub fn run_and_write(cfg: &SweepConfig) -> io::Result<Vec<SweepRecord>> {
    let records = run_sweep(cfg);
    if let Some(dir) = cfg.output_path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(&cfg.output_path, to_csv(&records))?;
    fs::write(cfg.summary_path(), summary_json(cfg, &records))?;
    Ok(records)
}
