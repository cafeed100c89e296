//! Oracle harness: exhaustive over binary 3×3 matrices, then random
//! matrices up to `max_dim × max_dim` including a third symbol.

use std::sync::Arc;

use rand::Rng;
use trisub::exact::{brute_force_oracle, solve, verify_witness, SolveBudget, SolveResult, Variant};
use trisub::gen::{sample_matrix, EntryDistribution, Seed};
use trisub::matcore::{Alphabet, BoolMatrix};

/// Largest side for which the sampled tier is allowed.
pub const MAX_VERIFY_DIM: usize = 6;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub exhaustive_ok: usize,
    pub exhaustive_total: usize,
    pub sampled_ok: usize,
    pub sampled_total: usize,
    /// First few failure descriptions.
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.exhaustive_ok == self.exhaustive_total && self.sampled_ok == self.sampled_total
    }

    fn fail(&mut self, msg: String) {
        if self.failures.len() < 10 {
            self.failures.push(msg);
        }
    }
}

pub fn exact_solver(m: &BoolMatrix, v: Variant) -> SolveResult {
    solve(m, v, SolveBudget::unlimited())
}

/// Checks one matrix against the oracle and the witness checker; returns the
/// values in [`Variant::ALL`] order.
fn check_matrix<F>(m: &BoolMatrix, solver: &F) -> Result<[usize; 5], String>
where
    F: Fn(&BoolMatrix, Variant) -> SolveResult,
{
    let mut out = [0; 5];
    for (i, v) in Variant::ALL.into_iter().enumerate() {
        let r = solver(m, v);
        let want = brute_force_oracle(m, v).map_err(|e| e.to_string())?;
        if r.value != want {
            return Err(format!("{v}: solver {} vs oracle {want} on {m:?}", r.value));
        }
        if r.witness.size() != r.value || !verify_witness(m, &r.witness, v) {
            return Err(format!("{v}: witness {:?} does not verify on {m:?}", r.witness));
        }
        out[i] = r.value;
    }
    Ok(out)
}

fn invariants(vals: [usize; 5]) -> Result<(), String> {
    let [t, s, p, ps, z] = vals;
    if !(s <= t && t <= p && s <= ps && ps <= p && t >= z && z >= p / 2) {
        return Err(format!("sandwich violated: T={t} Ts={s} Tp={p} Tps={ps} S={z}"));
    }
    Ok(())
}

/// Runs both tiers with the given solver, so that a faulty solver can be
/// injected in tests.
pub fn run_verify_with<F>(max_dim: usize, samples: usize, seed: u64, solver: F) -> VerifyReport
where
    F: Fn(&BoolMatrix, Variant) -> SolveResult,
{
    let mut report = VerifyReport::default();
    for code in 0u32..512 {
        let rows: Vec<Vec<u8>> = (0..3).map(|i| (0..3).map(|j| (code >> (3 * i + j) & 1) as u8).collect()).collect();
        let m = BoolMatrix::from_bits(&rows);
        report.exhaustive_total += 1;
        match check_matrix(&m, &solver).and_then(invariants) {
            Ok(()) => report.exhaustive_ok += 1,
            Err(e) => report.fail(e),
        }
    }

    let root = Seed::new(seed);
    let alphabet = Arc::new(Alphabet::superboolean());
    for i in 0..samples {
        let s = root.child(i as u64);
        let mut rng = s.child(0).rng();
        let rows = rng.random_range(1..=max_dim);
        let cols = rng.random_range(1..=max_dim);
        let p0 = [0.3, 0.5, 0.7][rng.random_range(0..3)];
        let extra = if rng.random_bool(0.5) { 0.0 } else { 0.2 * (1.0 - p0) };
        let dist = EntryDistribution::new(alphabet.clone(), vec![p0, 1.0 - p0 - extra, extra]).expect("valid");
        let m = sample_matrix(rows, cols, &dist, &s.child(1)).expect("positive dims");
        report.sampled_total += 1;
        let outcome = check_matrix(&m, &solver).and_then(|vals| {
            invariants(vals)?;
            let t = check_matrix(&m.transpose(), &solver)?;
            if t[2..] != vals[2..] {
                return Err(format!("transpose changed permuted values on {m:?}"));
            }
            let mut rp: Vec<usize> = (0..rows).collect();
            let mut cp: Vec<usize> = (0..cols).collect();
            rp.rotate_left(rng.random_range(0..rows));
            cp.reverse();
            let p = check_matrix(&m.permuted(&rp, &cp), &solver)?;
            if p[2..] != vals[2..] {
                return Err(format!("permutation changed permuted values on {m:?}"));
            }
            Ok(())
        });
        match outcome {
            Ok(()) => report.sampled_ok += 1,
            Err(e) => report.fail(e),
        }
    }
    report
}

pub fn run_verify(max_dim: usize, samples: usize, seed: u64) -> VerifyReport {
    run_verify_with(max_dim, samples, seed, exact_solver)
}

pub fn format_report(r: &VerifyReport) -> String {
    let mut out = format!(
        "{}/{} exhaustive {}\n{}/{} sampled {}\n",
        r.exhaustive_ok,
        r.exhaustive_total,
        if r.exhaustive_ok == r.exhaustive_total { "ok" } else { "FAILED" },
        r.sampled_ok,
        r.sampled_total,
        if r.sampled_ok == r.sampled_total { "ok" } else { "FAILED" },
    );
    for f in &r.failures {
        out.push_str("  ");
        out.push_str(f);
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_solver_passes() {
        let r = run_verify(4, 30, 1);
        assert!(r.passed(), "{}", format_report(&r));
        assert!(format_report(&r).starts_with("512/512 exhaustive ok\n30/30 sampled ok"));
    }

    #[test]
    fn injected_bug_is_caught() {
        let off_by_one = |m: &BoolMatrix, v: Variant| {
            let mut r = exact_solver(m, v);
            if v == Variant::ZeroSquare && r.value > 1 {
                r.value -= 1;
                r.witness.rows.pop();
                r.witness.cols.pop();
            }
            r
        };
        let r = run_verify_with(4, 10, 1, off_by_one);
        assert!(!r.passed());
        assert!(r.exhaustive_ok < 512);
        assert!(!r.failures.is_empty());
    }
}
