//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::fs;
use std::time::{Duration, Instant};

use rand::Rng;
use trisub::bounds::{certified_upper_size, markov_tail};
use trisub::exact::{brute_force_oracle, solve, verify_witness, SolveBudget, Variant};
use trisub::gen::{plant_special_corner, plant_special_triangular, sample_matrix, EntryDistribution, Seed};
use trisub::heur::{corner_then_extend, ll2_extend_with, ExtendOptions, ExtendOrder, PipelineOptions, Scan};
use trisub::matcore::{nu, nu0, nu1, BoolMatrix, CornerShape};
use trisub::mc::value_histogram;
use trisub::par::Exec;
use trisub_cli::commands::cmd_sweep;
use trisub_cli::config::SweepConfig;
use trisub_cli::sweep::run_sweep;
use trisub_cli::verify::{exact_solver, format_report, run_verify_with};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    ensure(start.elapsed() < limit, || format!("took {:.1?}, limit {limit:?}", start.elapsed()))
}

/// Solver agrees with the oracle on every variant and every witness verifies.
fn oracle_agrees(m: &BoolMatrix) -> Result<(), String> {
    for v in Variant::ALL {
        let r = solve(m, v, SolveBudget::unlimited());
        let want = brute_force_oracle(m, v).map_err(|e| e.to_string())?;
        ensure(r.value == want && r.optimal, || format!("{v}: {} vs oracle {want} on {m:?}", r.value))?;
        ensure(verify_witness(m, &r.witness, v) && r.witness.size() == r.value, || format!("{v}: bad witness"))?;
    }
    Ok(())
}

fn exhaustive_3x3() -> Outcome {
    let start = Instant::now();
    let report = run_verify_with(3, 0, 0, exact_solver);
    ensure(report.passed(), || format_report(&report))?;
    within(Duration::from_secs(60), start)?;
    Ok(format!("{}/{} matrices, 5 variants each", report.exhaustive_ok, report.exhaustive_total))
}

fn sampled_5x5() -> Outcome {
    let start = Instant::now();
    let mut dists = Vec::new();
    for p0 in [0.3, 0.5, 0.7] {
        dists.push((EntryDistribution::binary(p0).unwrap(), 500));
    }
    dists.push((EntryDistribution::superboolean(0.4, 0.4).unwrap(), 200));
    let mut total = 0;
    for (d, (dist, count)) in dists.iter().enumerate() {
        for i in 0..*count {
            let m = sample_matrix(5, 5, dist, &Seed::with_stream(2, &[d as u64, i as u64])).unwrap();
            oracle_agrees(&m)?;
            total += 1;
        }
    }
    within(Duration::from_secs(300), start)?;
    Ok(format!("{total} matrices, 0 mismatches"))
}

fn nu_formulas() -> Outcome {
    let mut checked = 0;
    let mut boundary = 0;
    for k in 1..=50usize {
        for ell in 1..=k {
            let shape = CornerShape::new(k, ell).unwrap();
            let (mut zeros, mut ones) = (0u64, 0u64);
            for i in 0..ell {
                for j in 0..ell {
                    if i + ell < j + k {
                        zeros += 1;
                    } else if i + ell == j + k {
                        ones += 1;
                    }
                }
            }
            ensure(nu0(shape) == zeros && nu1(shape) == ones && nu(shape) == zeros + ones, || {
                format!("({k},{ell}): formulas {} {} vs counts {zeros} {ones}", nu0(shape), nu1(shape))
            })?;
            checked += 1;
            if ell == k.div_ceil(2) {
                boundary += 1;
            }
        }
    }
    Ok(format!("{checked} shapes, {boundary} at ell = ceil(k/2)"))
}

fn inequality_suite() -> Outcome {
    let root = Seed::new(4);
    for i in 0..1000u64 {
        let s = root.child(i);
        let mut rng = s.child(0).rng();
        let (rows, cols) = (rng.random_range(1..=12), rng.random_range(1..=12));
        let p0 = rng.random_range(0.15..0.85);
        let dist = if rng.random_bool(0.25) {
            EntryDistribution::superboolean(p0, 0.8 * (1.0 - p0)).unwrap()
        } else {
            EntryDistribution::binary(p0).unwrap()
        };
        let m = sample_matrix(rows, cols, &dist, &s.child(1)).unwrap();
        let [t, ts, tp, tps, z] = Variant::ALL.map(|v| {
            let r = solve(&m, v, SolveBudget::unlimited());
            assert!(r.optimal);
            r.value
        });
        ensure(ts <= t && t <= tp && ts <= tps && tps <= tp && t >= z && z >= tp / 2, || {
            format!("matrix {i}: T={t} Ts={ts} Tp={tp} Tps={tps} S={z}")
        })?;
    }
    Ok("1000 matrices, 0 violations".into())
}

fn planted_recovery() -> Outcome {
    let dist = EntryDistribution::binary(0.5).unwrap();
    let opts = PipelineOptions::new(16);
    let mut least = usize::MAX;
    for s in 0..100u64 {
        let seed = Seed::with_stream(5, &[s]);
        let (m, planted) = plant_special_triangular(40, 40, 8, &dist, &seed.child(0)).unwrap();
        debug_assert!(verify_witness(&m, &planted, Variant::PermutedSpecial));
        let r = corner_then_extend(&m, Variant::PermutedSpecial, &opts, &seed.child(1)).unwrap();
        ensure(r.value >= 8, || format!("seed {s}: value {}", r.value))?;
        ensure(verify_witness(&m, &r.witness, Variant::PermutedSpecial), || format!("seed {s}: bad witness"))?;
        least = least.min(r.value);
    }
    Ok(format!("100/100 runs reach 8, smallest value {least}"))
}

fn markov_validity() -> Outcome {
    let dist = EntryDistribution::binary(0.5).unwrap();
    let mut detail = Vec::new();
    for (n, budget) in [(16usize, SolveBudget::unlimited()), (32, SolveBudget::nodes(200_000))] {
        let h = value_histogram(n, n, &dist, Variant::Permuted, 10_000, budget, &Seed::new(6 + n as u64), Exec::default())
            .map_err(|e| e.to_string())?;
        let top = h.max().unwrap_or(0) + 2;
        let mut tightest = 0.0f64;
        for m in 1..=top.min(n) {
            let bound = markov_tail(n as u64, m as u64, 0.5).map_err(|e| e.to_string())?;
            let emp = h.tail(m);
            let sigma = h.tail_std_error(m);
            ensure(emp <= bound + 3.0 * sigma, || format!("n={n} m={m}: empirical {emp} > bound {bound} + 3*{sigma}"))?;
            if bound > 0.0 && bound < 1.0 {
                tightest = tightest.max(emp / bound);
            }
        }
        detail.push(format!("n={n} m=1..{} max {} unproven {} worst empirical/bound ratio {tightest:.3} where bound < 1", top.min(n), top - 2, h.unproven));
    }
    Ok(detail.join("; "))
}

fn mean_and_se(xs: &[usize]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<usize>() as f64 / n;
    let var = xs.iter().map(|&x| (x as f64 - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

fn geometric_tries() -> Outcome {
    let shape = CornerShape::new(12, 8).unwrap();
    let dist = EntryDistribution::binary(0.5).unwrap();
    let trials = 400;
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); 4];
    let mut cols: Vec<Vec<usize>> = vec![Vec::new(); 4];
    for t in 0..trials {
        let seed = Seed::with_stream(7, &[t]);
        let (m, corner) = plant_special_corner(400, 400, shape, &dist, &seed.child(0)).unwrap();
        let opts = ExtendOptions { scan: Scan::Random(seed.child(1)), order: ExtendOrder::RowsThenColumns };
        let (w, trace) = ll2_extend_with(&m, &corner, shape, &opts).map_err(|e| format!("trial {t}: {e}"))?;
        ensure(verify_witness(&m, &w, Variant::PermutedSpecial), || format!("trial {t}: bad extension"))?;
        for r in 1..=4 {
            rows[r - 1].push(trace.row_tries(r).unwrap());
            cols[r - 1].push(trace.column_tries(r).unwrap());
        }
    }
    let mut detail = Vec::new();
    for (kind, data) in [("row", &rows), ("col", &cols)] {
        for (i, xs) in data.iter().enumerate() {
            let r = i + 1;
            let want = (1u32 << r) as f64;
            let (mean, se) = mean_and_se(xs);
            ensure((mean - want).abs() <= 3.0 * se, || format!("{kind} step {r}: mean {mean:.3} vs {want} (se {se:.3})"))?;
            detail.push(format!("{kind}{r} {mean:.2}±{se:.2}"));
        }
    }
    Ok(format!("{trials} trials: {}", detail.join(" ")))
}

fn trend() -> Outcome {
    let start = Instant::now();
    let cfg = SweepConfig::parse(
        "n_values = 32, 64, 128, 256\np0 = 0.5\nreplicates = 50\nvariants = ps\nsolver = greedy\nmaster_seed = 8\noutput_path = unused.csv\n",
    )
    .map_err(|e| e.to_string())?;
    let records = run_sweep(&cfg);
    let means: Vec<f64> = records.chunk_by(|a, b| a.n == b.n).map(|g| g.iter().map(|r| r.ratio).sum::<f64>() / g.len() as f64).collect();
    let limit = 2.0 + 2f64.sqrt();
    ensure(means.len() == 4, || format!("{} cells", means.len()))?;
    ensure(means.windows(2).all(|w| w[0] <= w[1]), || format!("not nondecreasing: {means:?}"))?;
    ensure(means.iter().all(|&r| (1.5..=limit).contains(&r)), || format!("out of [1.5, {limit}]: {means:?}"))?;
    let cert = certified_upper_size(256, 0.5, 0.01).map_err(|e| e.to_string())? as f64 / 8.0;
    ensure((limit..=limit + 2.5).contains(&cert), || format!("certified ratio {cert}"))?;
    within(Duration::from_secs(900), start)?;
    let shown: Vec<String> = means.iter().map(|r| format!("{r:.3}")).collect();
    Ok(format!("greedy ratios {} ; certified ratio at 256 = {cert:.3}", shown.join(" ")))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let bodies = [
        "n_values = 8, 12\np0 = 0.5\nreplicates = 6\nmaster_seed = 9\n",
        "n_values = 24, 40\np0 = 0.5\nreplicates = 6\nsolver = corner-then-extend\nrestarts = 4\nmaster_seed = 9\n",
        "n_values = 16, 32\np0 = 0.4\np1 = 0.5\nextra_symbol_probs = 0.1\nreplicates = 6\nsolver = greedy\nmaster_seed = 9\n",
    ];
    for (c, body) in bodies.iter().enumerate() {
        let mut outputs = Vec::new();
        for (run, workers) in [(0, 1), (1, 8), (2, 1)] {
            let csv = dir.path().join(format!("c{c}r{run}.csv"));
            let cfg = dir.path().join(format!("c{c}r{run}.cfg"));
            fs::write(&cfg, format!("{body}output_path = {}\n", csv.display())).map_err(|e| e.to_string())?;
            cmd_sweep(&cfg, Some(workers), &mut Vec::new()).map_err(|e| e.to_string())?;
            let json = csv.with_extension("summary.json");
            outputs.push((fs::read(&csv).map_err(|e| e.to_string())?, fs::read(json).map_err(|e| e.to_string())?));
        }
        ensure(outputs.windows(2).all(|w| w[0] == w[1]), || format!("config {c}: outputs differ"))?;
    }
    Ok(format!("{} configs x 3 runs (workers 1, 8, 1) byte-identical", bodies.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("exhaustive 3x3 oracle equivalence", exhaustive_3x3),
        ("sampled 5x5 oracle equivalence", sampled_5x5),
        ("nu closed forms", nu_formulas),
        ("inequality suite", inequality_suite),
        ("planted recovery", planted_recovery),
        ("Markov bound validity", markov_validity),
        ("geometric extension statistics", geometric_tries),
        ("ratio trend", trend),
        ("sweep determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {} {name} ({secs:.1}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name} ({secs:.1}s): {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
