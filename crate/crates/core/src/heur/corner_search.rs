use std::time::Instant;

use rand_chacha::ChaCha8Rng;

use super::extend::{ll2_extend_with, ExtendError, ExtendOptions};
use super::greedy::{pick_best, slack_for};
use super::HeurError;
use crate::bits::{self, RowMasks};
use crate::exact::{SolveResult, Variant};
use crate::gen::Seed;
use crate::matcore::{extract, is_special_corner, BoolMatrix, CornerShape, Selection};
use crate::par::Exec;

/// Randomized greedy search for a special `(k, ℓ)`-corner.
///
/// Corner rows are chosen top to bottom. With `e = k − ℓ` the first
/// `min(e, ℓ)` rows must vanish on every corner column; row `i ≥ e` also
/// fixes corner column `i − e` to one of its ones among the still usable
/// columns. The last `min(e, ℓ)` corner columns are taken from whatever
/// remains usable at the end. Restart `i` uses `seed.child(i)`; the first
/// restart that succeeds wins.
pub fn corner_seed_search(m: &BoolMatrix, shape: CornerShape, restarts: usize, seed: &Seed) -> Option<Selection> {
    corner_seed_search_exec(m, shape, restarts, seed, Exec::Sequential)
}

pub fn corner_seed_search_exec(
    m: &BoolMatrix,
    shape: CornerShape,
    restarts: usize,
    seed: &Seed,
    exec: Exec,
) -> Option<Selection> {
    if shape.ell() > m.rows().min(m.cols()) {
        return None;
    }
    let masks = RowMasks::new(m);
    let runs = exec.map_range(restarts, |i| corner_run(&masks, shape, slack_for(i), &mut seed.child(i as u64).rng()).0);
    let found = runs.into_iter().flatten().next()?;
    let block = extract(m, &found).expect("indices in range");
    debug_assert!(is_special_corner(&block, shape.k()).unwrap_or(false));
    is_special_corner(&block, shape.k()).unwrap_or(false).then_some(found)
}

fn corner_run(masks: &RowMasks, shape: CornerShape, slack: u32, rng: &mut ChaCha8Rng) -> (Option<Selection>, u64) {
    let (k, ell) = (shape.k(), shape.ell());
    let e = k - ell;
    let trailing = e.min(ell);
    let mut nodes = 0;
    let mut used = vec![false; masks.rows];
    let mut usable = masks.full();
    let mut next = vec![0u64; masks.words];
    let mut rows = Vec::with_capacity(ell);
    let mut lead_cols = Vec::with_capacity(ell - trailing);
    for i in 0..ell {
        let needs_one = i >= e;
        // columns still to be placed after this row: later ones plus the trailing block
        let need_after = (ell - (i + 1).max(e)) + trailing;
        let free = (0..masks.rows).filter(|&r| !used[r]);
        let chosen = pick_best(free, rng, &mut nodes, slack, |r| {
            if needs_one && !bits::intersects(&usable, masks.one(r)) {
                return None;
            }
            let z = bits::and_count(&usable, masks.zero(r));
            (z as usize >= need_after).then_some(z)
        });
        let Some(r) = chosen else { return (None, nodes) };
        if needs_one {
            lead_cols.push(bits::first_and(&usable, masks.one(r)).expect("admissible"));
        }
        bits::and_into(&mut next, &usable, masks.zero(r));
        std::mem::swap(&mut usable, &mut next);
        used[r] = true;
        rows.push(r);
    }
    let cols = lead_cols.into_iter().chain(bits::iter(&usable).take(trailing)).collect();
    (Some(Selection::new(rows, cols)), nodes)
}

/// Parameters of [`corner_then_extend`].
#[derive(Clone, Debug)]
pub struct PipelineOptions {
    /// Restarts of the corner search at each size.
    pub restarts: usize,
    /// `e = k − ℓ` for each `k`; `None` picks `min(⌊log_Q n⌋ − 2, ⌊(k − 1)/2⌋)`.
    pub extension: Option<usize>,
    pub extend: ExtendOptions,
    pub exec: Exec,
}

impl PipelineOptions {
    pub fn new(restarts: usize) -> Self {
        PipelineOptions { restarts, extension: None, extend: ExtendOptions::default(), exec: Exec::Sequential }
    }
}

/// Corner first, then extension: for `k = 1, 2, …` find a special
/// `(k, k − e)`-corner greedily and extend it by `e` rows and columns, trying
/// the corners of successive restarts until one extends. Stops at the first
/// `k` where no corner extends and returns the largest witness found. Only the permuted variants are supported (a special
/// triangular witness is also triangular).
pub fn corner_then_extend(
    m: &BoolMatrix,
    variant: Variant,
    options: &PipelineOptions,
    seed: &Seed,
) -> Result<SolveResult, HeurError> {
    if !matches!(variant, Variant::Permuted | Variant::PermutedSpecial) {
        return Err(HeurError::UnsupportedVariant(variant));
    }
    if options.restarts == 0 {
        return Err(HeurError::NoRestarts);
    }
    let start = Instant::now();
    let n = m.rows().min(m.cols());
    let p0 = zero_fraction(m);
    let auto_e = if p0 > 0.0 && p0 < 1.0 {
        ((n as f64).ln() / (1.0 / p0).ln()).floor() as usize
    } else {
        0
    }
    .saturating_sub(2);
    let masks = RowMasks::new(m);
    let mut best = Selection::empty();
    let mut nodes = 0u64;
    for k in 1..=n {
        let e = options.extension.unwrap_or(auto_e).min((k - 1) / 2);
        let shape = CornerShape::new(k, k - e).expect("1 <= k - e <= k");
        let stage = seed.child(k as u64);
        let runs = options
            .exec
            .map_range(options.restarts, |i| corner_run(&masks, shape, slack_for(i), &mut stage.child(0).child(i as u64).rng()));
        nodes += runs.iter().map(|r| r.1).sum::<u64>();
        let mut extend = options.extend.clone();
        if let super::Scan::Random(s) = &extend.scan {
            extend.scan = super::Scan::Random(s.child(k as u64));
        }
        let mut grown = None;
        for corner in runs.into_iter().filter_map(|r| r.0) {
            match ll2_extend_with(m, &corner, shape, &extend) {
                Ok((sel, trace)) => {
                    nodes += trace.tries_per_step.iter().sum::<usize>() as u64;
                    grown = Some(sel);
                    break;
                }
                Err(ExtendError::NoExtension { trace }) => {
                    nodes += trace.tries_per_step.iter().sum::<usize>() as u64;
                }
                Err(e) => unreachable!("{e}"),
            }
        }
        match grown {
            Some(sel) => best = sel,
            None => break,
        }
    }
    debug_assert!(crate::exact::verify_witness(m, &best, variant));
    Ok(SolveResult {
        value: best.size(),
        optimal: best.size() == n,
        witness: best,
        nodes_expanded: nodes,
        elapsed_millis: start.elapsed().as_millis() as u64,
    })
}

fn zero_fraction(m: &BoolMatrix) -> f64 {
    let zero = m.alphabet().zero();
    m.entries().iter().filter(|&&s| s == zero).count() as f64 / m.entries().len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{solve, verify_witness, SolveBudget};
    use crate::gen::{plant_special_corner, sample_matrix, EntryDistribution};
    use crate::heur::greedy_lower_bound;

    fn shape(k: usize, l: usize) -> CornerShape {
        CornerShape::new(k, l).unwrap()
    }

    #[test]
    fn full_shape_matches_permuted_special_greedy() {
        let d = EntryDistribution::binary(0.5).unwrap();
        for s in 0..20 {
            let m = sample_matrix(20, 20, &d, &Seed::new(s)).unwrap();
            let g = greedy_lower_bound(&m, Variant::PermutedSpecial, 8, &Seed::new(s)).unwrap().value;
            let found = corner_seed_search(&m, shape(g, g), 8, &Seed::new(s)).unwrap();
            assert!(verify_witness(&m, &found, Variant::PermutedSpecial));
            let exact = solve(&m, Variant::PermutedSpecial, SolveBudget::unlimited()).value;
            assert!(corner_seed_search(&m, shape(exact + 1, exact + 1), 8, &Seed::new(s)).is_none());
        }
    }

    #[test]
    fn planted_corners_are_found() {
        let d = EntryDistribution::binary(0.5).unwrap();
        for (k, l) in [(12, 8), (12, 10)] {
            let sh = shape(k, l);
            let mut hits = 0;
            for s in 0..100 {
                let (m, _) = plant_special_corner(40, 40, sh, &d, &Seed::new(s)).unwrap();
                if let Some(w) = corner_seed_search(&m, sh, 10, &Seed::new(s).child(9)) {
                    assert!(is_special_corner(&extract(&m, &w).unwrap(), k).unwrap());
                    hits += 1;
                }
            }
            assert!(hits >= 95, "{sh}: {hits}");
        }
    }

    #[test]
    fn too_large_shapes() {
        let m = BoolMatrix::identity(3);
        assert_eq!(corner_seed_search(&m, shape(5, 4), 3, &Seed::new(0)), None);
        assert_eq!(corner_seed_search(&m, shape(3, 3), 0, &Seed::new(0)), None);
        assert!(corner_seed_search(&m, shape(3, 3), 1, &Seed::new(0)).is_some());
    }

    #[test]
    fn pipeline() {
        let d = EntryDistribution::binary(0.5).unwrap();
        for s in 0..10 {
            let m = sample_matrix(40, 40, &d, &Seed::new(s)).unwrap();
            let r = corner_then_extend(&m, Variant::PermutedSpecial, &PipelineOptions::new(8), &Seed::new(s)).unwrap();
            assert!(verify_witness(&m, &r.witness, Variant::PermutedSpecial));
            assert!(verify_witness(&m, &r.witness, Variant::Permuted));
            assert!(r.value >= 6, "{}", r.value);
        }
        let m = BoolMatrix::identity(4);
        assert_eq!(
            corner_then_extend(&m, Variant::Triangular, &PipelineOptions::new(1), &Seed::new(0)),
            Err(HeurError::UnsupportedVariant(Variant::Triangular))
        );
    }
}
