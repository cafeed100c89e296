//! Monte Carlo estimates over independent random matrices.

use crate::exact::{SolveBudget, Solver, Variant};
use crate::gen::{sample_matrix, EntryDistribution, GenError, Seed};
use crate::par::Exec;

/// Counts of observed values. Values from budget-limited solves are lower
/// bounds, so tail estimates built from them can only be too small.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValueHistogram {
    counts: Vec<u64>,
    samples: u64,
    /// Samples whose solve was not proven optimal.
    pub unproven: u64,
}

impl ValueHistogram {
    pub fn add(&mut self, value: usize, optimal: bool) {
        if self.counts.len() <= value {
            self.counts.resize(value + 1, 0);
        }
        self.counts[value] += 1;
        self.samples += 1;
        self.unproven += u64::from(!optimal);
    }

    pub fn samples(&self) -> u64 {
        self.samples
    }

    pub fn count(&self, value: usize) -> u64 {
        self.counts.get(value).copied().unwrap_or(0)
    }

    pub fn max(&self) -> Option<usize> {
        self.counts.iter().rposition(|&c| c > 0)
    }

    pub fn mean(&self) -> f64 {
        let total: u64 = self.counts.iter().enumerate().map(|(v, &c)| v as u64 * c).sum();
        total as f64 / self.samples as f64
    }

    /// Empirical `P(value ≥ m)`.
    pub fn tail(&self, m: usize) -> f64 {
        let hits: u64 = self.counts.iter().skip(m).sum();
        hits as f64 / self.samples as f64
    }

    /// Binomial standard error of [`tail`](Self::tail).
    pub fn tail_std_error(&self, m: usize) -> f64 {
        let p = self.tail(m);
        (p * (1.0 - p) / self.samples as f64).sqrt()
    }
}

/// Solves `samples` independent `rows×cols` matrices; matrix `i` comes from
/// `seed.child(i)`. The histogram does not depend on `exec`.
#[allow(clippy::too_many_arguments)]
pub fn value_histogram(
    rows: usize,
    cols: usize,
    dist: &EntryDistribution,
    variant: Variant,
    samples: usize,
    budget: SolveBudget,
    seed: &Seed,
    exec: Exec,
) -> Result<ValueHistogram, GenError> {
    let solver = Solver::new(variant).budget(budget);
    let results = exec.map_range(samples, |i| {
        let m = sample_matrix(rows, cols, dist, &seed.child(i as u64))?;
        let r = solver.solve(&m);
        Ok((r.value, r.optimal))
    });
    let mut h = ValueHistogram::default();
    for r in results {
        let (value, optimal) = r?;
        h.add(value, optimal);
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn histogram_stats() {
        let mut h = ValueHistogram::default();
        for (v, opt) in [(2, true), (3, true), (3, false), (5, true)] {
            h.add(v, opt);
        }
        assert_eq!(h.samples(), 4);
        assert_eq!(h.max(), Some(5));
        assert_eq!(h.count(3), 2);
        assert_eq!(h.tail(3), 0.75);
        assert_eq!(h.tail(0), 1.0);
        assert_eq!(h.tail(6), 0.0);
        assert_eq!(h.mean(), 13.0 / 4.0);
        assert_eq!(h.unproven, 1);
        assert!((h.tail_std_error(3) - (0.75f64 * 0.25 / 4.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn exec_does_not_change_histogram() {
        let d = EntryDistribution::binary(0.5).unwrap();
        let run = |exec| value_histogram(10, 10, &d, Variant::Permuted, 64, SolveBudget::unlimited(), &Seed::new(5), exec).unwrap();
        let a = run(Exec::Sequential);
        assert_eq!(a, run(Exec::Threads(3)));
        assert_eq!(a.samples(), 64);
        assert_eq!(a.unproven, 0);
    }
}
