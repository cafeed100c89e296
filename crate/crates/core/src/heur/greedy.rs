use std::time::Instant;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::HeurError;
use crate::bits::{self, RowMasks};
use crate::exact::{SolveResult, Variant};
use crate::gen::Seed;
use crate::matcore::{BoolMatrix, Selection};
use crate::par::Exec;

/// Multi-start randomized greedy. Each restart grows one witness pair by
/// pair: among the rows that can be appended, it takes one that keeps the
/// most columns usable for later pairs, breaking ties at random. Later
/// restarts also admit rows a little below the best score. Restart `i`
/// draws from `seed.child(i)`, so the result does not depend on scheduling.
pub fn greedy_lower_bound(
    m: &BoolMatrix,
    variant: Variant,
    restarts: usize,
    seed: &Seed,
) -> Result<SolveResult, HeurError> {
    greedy_lower_bound_exec(m, variant, restarts, seed, Exec::Sequential)
}

/// [`greedy_lower_bound`] with restarts distributed by `exec`. The best value
/// wins; ties go to the lowest restart index.
pub fn greedy_lower_bound_exec(
    m: &BoolMatrix,
    variant: Variant,
    restarts: usize,
    seed: &Seed,
    exec: Exec,
) -> Result<SolveResult, HeurError> {
    if restarts == 0 {
        return Err(HeurError::NoRestarts);
    }
    let start = Instant::now();
    let masks = RowMasks::new(m);
    let runs = exec.map_range(restarts, |i| run(&masks, variant, slack_for(i), &mut seed.child(i as u64).rng()));
    let nodes = runs.iter().map(|r| r.1).sum();
    let mut best = Selection::empty();
    for (sel, _) in runs {
        if sel.size() > best.size() {
            best = sel;
        }
    }
    debug_assert!(crate::exact::verify_witness(m, &best, variant));
    Ok(SolveResult {
        value: best.size(),
        optimal: best.size() == m.rows().min(m.cols()),
        witness: best,
        nodes_expanded: nodes,
        elapsed_millis: start.elapsed().as_millis() as u64,
    })
}

/// Score slack for restart `i`: restart 0 is purely greedy, later restarts
/// also accept rows slightly below the best score.
pub(super) fn slack_for(restart: usize) -> u32 {
    [0, 1, 1, 2, 2, 3][restart % 6]
}

/// Uniform choice among admissible rows scoring at least `max − slack`;
/// `None` when no row is admissible.
pub(super) fn pick_best<F>(
    candidates: impl Iterator<Item = usize>,
    rng: &mut ChaCha8Rng,
    nodes: &mut u64,
    slack: u32,
    mut score: F,
) -> Option<usize>
where
    F: FnMut(usize) -> Option<u32>,
{
    let mut scored: Vec<(usize, u32)> = Vec::new();
    for r in candidates {
        *nodes += 1;
        if let Some(s) = score(r) {
            scored.push((r, s));
        }
    }
    let max = scored.iter().map(|x| x.1).max()?;
    let floor = max.saturating_sub(slack);
    let pool: Vec<usize> = scored.into_iter().filter(|x| x.1 >= floor).map(|x| x.0).collect();
    Some(pool[rng.random_range(0..pool.len())])
}

fn run(masks: &RowMasks, variant: Variant, slack: u32, rng: &mut ChaCha8Rng) -> (Selection, u64) {
    let mut nodes = 0u64;
    let mut used = vec![false; masks.rows];
    let mut usable = masks.full();
    let mut next = vec![0u64; masks.words];
    let mut rows = Vec::new();
    let mut cols = Vec::new();

    if variant == Variant::ZeroSquare {
        let mut best = Selection::empty();
        loop {
            let have = bits::count(&usable) as usize;
            if have <= rows.len() {
                break;
            }
            let free = (0..masks.rows).filter(|&r| !used[r]);
            let Some(r) = pick_best(free, rng, &mut nodes, slack, |r| Some(bits::and_count(&usable, masks.zero(r))))
            else {
                break;
            };
            used[r] = true;
            rows.push(r);
            bits::and_into(&mut next, &usable, masks.zero(r));
            std::mem::swap(&mut usable, &mut next);
            let size = rows.len().min(bits::count(&usable) as usize);
            if size > best.size() {
                let mut rs = rows[..size].to_vec();
                rs.sort_unstable();
                best = Selection::new(rs, bits::iter(&usable).take(size).collect());
            }
        }
        return (best, nodes);
    }

    let ordered = variant.order_preserving();
    let mut floor = 0usize;
    loop {
        if bits::count(&usable) == 0 {
            break;
        }
        let free = (floor..masks.rows).filter(|&r| !used[r]);
        let total_rows = masks.rows;
        let chosen = pick_best(free, rng, &mut nodes, slack, |r| {
            let zero = masks.zero(r);
            match variant {
                Variant::PermutedSpecial => {
                    bits::intersects(&usable, masks.one(r)).then(|| bits::and_count(&usable, zero))
                }
                Variant::Permuted => {
                    let z = bits::and_count(&usable, zero);
                    Some(if z < bits::count(&usable) { z } else { z - 1 })
                }
                Variant::Special | Variant::Triangular => {
                    let c = if variant == Variant::Special {
                        bits::first_and(&usable, masks.one(r))?
                    } else {
                        bits::first(&usable)?
                    };
                    let mut after = vec![0u64; masks.words];
                    bits::and_into(&mut after, &usable, zero);
                    bits::clear_through(&mut after, c);
                    Some(bits::count(&after).min((total_rows - r - 1) as u32))
                }
                Variant::ZeroSquare => unreachable!(),
            }
        });
        let Some(r) = chosen else { break };
        let zero = masks.zero(r);
        let c = match variant {
            Variant::PermutedSpecial => bits::first_and(&usable, masks.one(r)).expect("admissible"),
            Variant::Permuted => {
                let free_col = usable.iter().zip(zero).enumerate().find_map(|(w, (&u, &z))| {
                    let x = u & !z;
                    (x != 0).then(|| w * 64 + x.trailing_zeros() as usize)
                });
                free_col.unwrap_or_else(|| bits::first(&usable).expect("nonempty"))
            }
            Variant::Special => bits::first_and(&usable, masks.one(r)).expect("admissible"),
            _ => bits::first(&usable).expect("nonempty"),
        };
        bits::and_into(&mut next, &usable, zero);
        if ordered {
            bits::clear_through(&mut next, c);
            floor = r + 1;
        } else {
            bits::remove(&mut next, c);
        }
        std::mem::swap(&mut usable, &mut next);
        used[r] = true;
        rows.push(r);
        cols.push(c);
    }
    (Selection::new(rows, cols), nodes)
}
